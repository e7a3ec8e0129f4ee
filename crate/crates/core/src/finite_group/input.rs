//! JSON group input.
//!
//! ```json
//! { "dimension": 3,
//!   "generators": [
//!     { "name": "r", "cycles": "(1 2 3)" },
//!     { "name": "s", "signed_permutation": [1, -3, 2] },
//!     { "name": "m", "matrix": [[1,0,0],[0,0,-1],[0,1,0]] } ] }
//! ```
//!
//! Positions are 1-based. In a signed permutation, entry `i` is the image of
//! `e_i`, negative when the basis vector changes sign.

use serde::Deserialize;

use super::element::GroupElement;
use super::group::FiniteMatrixGroup;
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, ExactMatrix, ExactScalar};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub dimension: usize,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    pub permutation: Option<Vec<u32>>,
    #[serde(default)]
    pub signed_permutation: Option<Vec<i64>>,
    #[serde(default)]
    pub cycles: Option<String>,
    /// 1-based coordinates negated by a diagonal sign matrix.
    #[serde(default)]
    pub negate: Option<Vec<usize>>,
}

fn scalar_from_json(v: &serde_json::Value) -> Result<ExactScalar> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(ExactScalar::int)
            .ok_or_else(|| Error::Parse(format!("matrix entry {n} is not an integer"))),
        serde_json::Value::String(s) => parse_rational(s)
            .map(ExactScalar::from_rational)
            .ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))),
        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
    }
}

/// Parses cycle notation such as `(1 2 3)(4 5)` on `n` points.
pub fn parse_cycles(s: &str, n: usize) -> Result<Vec<u32>> {
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut seen = vec![false; n];
    let body = s.trim();
    if body.is_empty() || body == "()" {
        return Ok(images);
    }
    for part in body.split(')') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let inner = part
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("bad cycle notation {s:?}")))?;
        let pts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&p| p >= 1 && p <= n)
                    .ok_or_else(|| Error::Parse(format!("bad point {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        for (k, &p) in pts.iter().enumerate() {
            if seen[p - 1] {
                return Err(Error::Parse(format!("point {p} repeated in {s:?}")));
            }
            seen[p - 1] = true;
            images[p - 1] = (pts[(k + 1) % pts.len()] - 1) as u32;
        }
    }
    Ok(images)
}

impl GeneratorSpec {
    pub fn to_element(&self, n: usize) -> Result<GroupElement> {
        let given = [
            self.matrix.is_some(),
            self.permutation.is_some(),
            self.signed_permutation.is_some(),
            self.cycles.is_some(),
            self.negate.is_some(),
        ]
        .iter()
        .filter(|x| **x)
        .count();
        if given != 1 {
            return Err(Error::Parse("each generator needs exactly one of matrix, permutation, signed_permutation, cycles, negate".into()));
        }
        let el = if let Some(rows) = &self.matrix {
            let data = rows
                .iter()
                .map(|r| r.iter().map(scalar_from_json).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let cols = data.first().map_or(0, Vec::len);
            if data.len() != n || data.iter().any(|r| r.len() != cols) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix generator must be {n}x{n}"
                )));
            }
            GroupElement::matrix(ExactMatrix::new(
                n,
                cols,
                data.into_iter().flatten().collect(),
            )?)?
        } else if let Some(p) = &self.permutation {
            if p.contains(&0) {
                return Err(Error::Parse("permutation images are 1-based".into()));
            }
            GroupElement::permutation(p.iter().map(|x| x - 1).collect())?
        } else if let Some(p) = &self.signed_permutation {
            if p.contains(&0) {
                return Err(Error::Parse(
                    "signed permutation images are 1-based and nonzero".into(),
                ));
            }
            GroupElement::signed_permutation(
                p.iter().map(|x| (x.unsigned_abs() - 1) as u32).collect(),
                p.iter().map(|x| x.signum() as i8).collect(),
            )?
        } else if let Some(c) = &self.cycles {
            GroupElement::permutation(parse_cycles(c, n)?)?
        } else {
            let neg = self.negate.as_ref().unwrap();
            if neg.iter().any(|&p| p == 0 || p > n) {
                return Err(Error::Parse(format!(
                    "negated coordinate out of range 1..={n}"
                )));
            }
            GroupElement::sign_diagonal(n, neg)
        };
        if el.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator {} acts on {} points, expected {n}",
                self.name.as_deref().unwrap_or("?"),
                el.dim()
            )));
        }
        Ok(el)
    }
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self, default_cap: usize) -> Result<FiniteMatrixGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_element(self.dimension))
            .collect::<Result<Vec<_>>>()?;
        FiniteMatrixGroup::generate(self.dimension, gens, self.cap.unwrap_or(default_cap))
    }
}
