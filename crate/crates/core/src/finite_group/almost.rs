use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::group::FiniteMatrixGroup;
use crate::error::{Error, Result};
use crate::exactnum::ExactScalar;

/// How elements of the two subgroups are compared.
#[derive(Clone, Debug)]
pub enum AmbientClassInvariant {
    /// Conjugacy classes of an enumerated ambient group.
    FiniteAmbient(FiniteMatrixGroup),
    /// Characteristic polynomial, i.e. conjugacy in `O(n)`.
    OrthogonalAmbient,
}

impl AmbientClassInvariant {
    pub fn mode_name(&self) -> &'static str {
        match self {
            AmbientClassInvariant::FiniteAmbient(_) => "finite_ambient",
            AmbientClassInvariant::OrthogonalAmbient => "orthogonal_ambient",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InvariantValue {
    Class(usize),
    CharPoly(Vec<ExactScalar>),
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Class(c) => write!(f, "class {c}"),
            InvariantValue::CharPoly(p) => {
                let terms: Vec<String> = p
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| match k {
                        0 => format!("{c}"),
                        1 => format!("({c})x"),
                        _ => format!("({c})x^{k}"),
                    })
                    .collect();
                write!(f, "{}", terms.join(" + "))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRow {
    pub invariant: String,
    pub count_h1: usize,
    pub count_h2: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostConjugacy {
    pub almost_conjugate: bool,
    pub mode: &'static str,
    pub witness: Vec<WitnessRow>,
}

pub fn is_almost_conjugate(
    inv: &AmbientClassInvariant,
    h1: &FiniteMatrixGroup,
    h2: &FiniteMatrixGroup,
) -> Result<AlmostConjugacy> {
    if h1.dim() != h2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "subgroups act in dimensions {} and {}",
            h1.dim(),
            h2.dim()
        )));
    }
    let values = |h: &FiniteMatrixGroup| -> Result<Vec<InvariantValue>> {
        match inv {
            AmbientClassInvariant::FiniteAmbient(g) => {
                if g.dim() != h.dim() {
                    return Err(Error::DimensionMismatch(
                        "ambient and subgroup dimensions differ".into(),
                    ));
                }
                let cls = g.class_index();
                Ok(g.embed(h)?
                    .into_iter()
                    .map(|i| InvariantValue::Class(cls[i]))
                    .collect())
            }
            AmbientClassInvariant::OrthogonalAmbient => h
                .elements()
                .iter()
                .map(|e| e.char_poly().map(InvariantValue::CharPoly))
                .collect(),
        }
    };
    let v1 = values(h1)?;
    let v2 = values(h2)?;

    let mut rows: Vec<(InvariantValue, usize, usize)> = Vec::new();
    let mut slot: HashMap<InvariantValue, usize> = HashMap::new();
    for (which, vals) in [(0, v1), (1, v2)] {
        for v in vals {
            let i = *slot.entry(v.clone()).or_insert_with(|| {
                rows.push((v, 0, 0));
                rows.len() - 1
            });
            if which == 0 {
                rows[i].1 += 1;
            } else {
                rows[i].2 += 1;
            }
        }
    }
    Ok(AlmostConjugacy {
        almost_conjugate: rows.iter().all(|r| r.1 == r.2),
        mode: inv.mode_name(),
        witness: rows
            .into_iter()
            .map(|(v, a, b)| WitnessRow {
                invariant: v.to_string(),
                count_h1: a,
                count_h2: b,
            })
            .collect(),
    })
}
