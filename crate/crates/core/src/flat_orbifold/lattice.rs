use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, ExactMatrix, ExactScalar};

pub type RatMatrix = Vec<Vec<BigRational>>;

pub const DEFAULT_VECTOR_BUDGET: usize = 5_000_000;

/// A full-rank lattice, described by its Gram matrix and optionally a basis
/// (columns are basis vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: RatMatrix,
    basis: Option<RatMatrix>,
}

fn to_exact(m: &RatMatrix) -> ExactMatrix {
    let n = m.len();
    let c = m.first().map_or(0, Vec::len);
    ExactMatrix::new(
        n,
        c,
        m.iter()
            .flatten()
            .cloned()
            .map(ExactScalar::from_rational)
            .collect(),
    )
    .expect("rectangular")
}

fn from_exact(m: &ExactMatrix) -> RatMatrix {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.as_rational().expect("rational entry").clone())
                .collect()
        })
        .collect()
}

pub fn rat_transpose(m: &RatMatrix) -> RatMatrix {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    (0..c)
        .map(|j| (0..r).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn rat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let c = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..c)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn rat_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    to_exact(m).inverse().map(|x| from_exact(&x))
}

/// `xᵀ G x` for an integer vector.
pub fn quadratic_form(g: &RatMatrix, x: &[i64]) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        for j in 0..x.len() {
            if x[j] != 0 {
                acc += &g[i][j] * BigRational::from_integer(BigInt::from(x[i] * x[j]));
            }
        }
    }
    acc
}

impl Lattice {
    pub fn from_gram(gram: RatMatrix) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "Gram matrix must be square".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidParameter(
                        "Gram matrix must be symmetric".into(),
                    ));
                }
            }
        }
        // positive definite: all pivots of the LDLᵀ factorisation positive
        let (d, _) = ldl(&gram).ok_or_else(|| {
            Error::InvalidParameter("Gram matrix is not positive definite".into())
        })?;
        if d.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidParameter(
                "Gram matrix is not positive definite".into(),
            ));
        }
        Ok(Lattice { gram, basis: None })
    }

    pub fn from_basis(basis: RatMatrix) -> Result<Self> {
        let n = basis.len();
        if basis.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("basis must be square".into()));
        }
        if rat_inverse(&basis).is_none() {
            return Err(Error::SingularBasis);
        }
        let gram = rat_mul(&rat_transpose(&basis), &basis);
        let mut l = Self::from_gram(gram)?;
        l.basis = Some(basis);
        Ok(l)
    }

    pub fn from_int_gram(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_gram(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// `Z^n`.
    pub fn standard(n: usize) -> Self {
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Lattice {
            basis: Some(Lattice::id(n)),
            gram,
        }
    }

    fn id(n: usize) -> RatMatrix {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn basis(&self) -> Option<&RatMatrix> {
        self.basis.as_ref()
    }

    pub fn determinant(&self) -> BigRational {
        let (d, _) = ldl(&self.gram).expect("positive definite");
        d.iter().fold(BigRational::one(), |a, b| a * b)
    }

    /// Dual lattice, coordinates taken in the dual basis.
    pub fn dual(&self) -> Result<Lattice> {
        let gi = rat_inverse(&self.gram).ok_or(Error::SingularBasis)?;
        let basis = match &self.basis {
            Some(b) => Some(rat_inverse(&rat_transpose(b)).ok_or(Error::SingularBasis)?),
            None => None,
        };
        Ok(Lattice { gram: gi, basis })
    }

    /// Orthogonal sum with a second lattice.
    pub fn orthogonal_sum(&self, other: &Lattice) -> Lattice {
        let (n, m) = (self.rank(), other.rank());
        let block = |a: &RatMatrix, b: &RatMatrix| -> RatMatrix {
            let mut out = vec![vec![BigRational::zero(); n + m]; n + m];
            for i in 0..n {
                for j in 0..n {
                    out[i][j] = a[i][j].clone();
                }
            }
            for i in 0..m {
                for j in 0..m {
                    out[n + i][n + j] = b[i][j].clone();
                }
            }
            out
        };
        let basis = match (&self.basis, &other.basis) {
            (Some(a), Some(b)) => Some(block(a, b)),
            _ => None,
        };
        Lattice {
            gram: block(&self.gram, &other.gram),
            basis,
        }
    }

    pub fn norm(&self, x: &[i64]) -> BigRational {
        quadratic_form(&self.gram, x)
    }

    /// Every lattice vector (integer coordinates) with `‖v‖² ≤ mu_max`, grouped by
    /// exact squared norm. Vectors within a norm are in lexicographic order.
    pub fn vectors_of_norm(
        &self,
        mu_max: &BigRational,
        budget: usize,
    ) -> Result<BTreeMap<BigRational, Vec<Vec<i64>>>> {
        let mut out: BTreeMap<BigRational, Vec<Vec<i64>>> = BTreeMap::new();
        let mut count = 0usize;
        short_vectors(&self.gram, mu_max, |x| {
            count += 1;
            if count > budget {
                return Err(Error::BudgetExceeded {
                    budget: budget as u64,
                });
            }
            out.entry(self.norm(x)).or_default().push(x.to_vec());
            Ok(())
        })?;
        for v in out.values_mut() {
            v.sort();
        }
        Ok(out)
    }

    /// Number of vectors of each squared norm up to `mu_max`.
    pub fn theta_series(&self, mu_max: &BigRational) -> Result<BTreeMap<BigRational, u64>> {
        Ok(self
            .vectors_of_norm(mu_max, DEFAULT_VECTOR_BUDGET)?
            .into_iter()
            .map(|(k, v)| (k, v.len() as u64))
            .collect())
    }
}

/// `G = Lᵀ D L` with `L` unit upper triangular: returns the pivots `D` and the
/// strictly upper part of `L`.
fn ldl(g: &RatMatrix) -> Option<(Vec<BigRational>, RatMatrix)> {
    let n = g.len();
    let mut d = vec![BigRational::zero(); n];
    let mut q = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut di = g[i][i].clone();
        for k in 0..i {
            di -= &d[k] * &q[k][i] * &q[k][i];
        }
        if di.is_zero() {
            return None;
        }
        for j in i + 1..n {
            let mut s = g[i][j].clone();
            for k in 0..i {
                s -= &d[k] * &q[k][i] * &q[k][j];
            }
            q[i][j] = s / &di;
        }
        d[i] = di;
    }
    Some((d, q))
}

fn floor_rat(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// Calls `visit` on every integer `x` with `xᵀ G x ≤ bound`. Bounds are exact:
/// for each coordinate the admissible values form an interval around a
/// rational centre, found by testing integers outward from it.
pub fn short_vectors(
    g: &RatMatrix,
    bound: &BigRational,
    mut visit: impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    let n = g.len();
    if bound.is_negative() {
        return Ok(());
    }
    let (d, q) = ldl(g).ok_or_else(|| Error::InvalidParameter("Gram matrix is singular".into()))?;
    let mut x = vec![0i64; n];
    if n == 0 {
        return visit(&x);
    }
    fn rec(
        i: usize,
        rest: &BigRational,
        x: &mut Vec<i64>,
        d: &[BigRational],
        q: &RatMatrix,
        visit: &mut dyn FnMut(&[i64]) -> Result<()>,
    ) -> Result<()> {
        let n = x.len();
        let mut c = BigRational::zero();
        for j in i + 1..n {
            if x[j] != 0 {
                c += &q[i][j] * BigRational::from_integer(x[j].into());
            }
        }
        let cost = |v: i64| -> BigRational {
            let t = BigRational::from_integer(v.into()) + &c;
            &d[i] * &t * &t
        };
        let centre = -c.clone();
        let f: i64 = i64::try_from(floor_rat(&centre))
            .map_err(|_| Error::InvalidParameter("coordinate overflow".into()))?;
        let ok = |v: i64| cost(v) <= *rest;
        let (lo, hi) = if ok(f) {
            let mut lo = f;
            while ok(lo - 1) {
                lo -= 1;
            }
            let mut hi = f;
            while ok(hi + 1) {
                hi += 1;
            }
            (lo, hi)
        } else if ok(f + 1) {
            let mut hi = f + 1;
            while ok(hi + 1) {
                hi += 1;
            }
            (f + 1, hi)
        } else {
            return Ok(());
        };
        for v in lo..=hi {
            x[i] = v;
            let r = rest - cost(v);
            if i == 0 {
                visit(x)?;
            } else {
                rec(i - 1, &r, x, d, q, visit)?;
            }
        }
        x[i] = 0;
        Ok(())
    }
    rec(n - 1, bound, &mut x, &d, &q, &mut visit)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    rank: usize,
    #[serde(default)]
    gram: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    basis: Option<Vec<Vec<serde_json::Value>>>,
    /// Multiplies the Gram matrix (and the basis by its square root, so only
    /// allowed without a basis).
    #[serde(default)]
    scale: Option<serde_json::Value>,
    #[serde(default)]
    #[allow(dead_code)]
    provenance: Option<String>,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|x| BigRational::from_integer(x.into()))
            .ok_or_else(|| {
                Error::Parse(format!("{n} is not an integer; write rationals as \"p/q\""))
            }),
        serde_json::Value::String(s) => {
            parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
        }
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

fn rat_rows(rows: &[Vec<serde_json::Value>], n: usize) -> Result<RatMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {n}x{n} matrix"
        )));
    }
    rows.iter()
        .map(|r| r.iter().map(rational_from_json).collect())
        .collect()
}

/// Serializable form, rationals as strings.
#[derive(Serialize)]
pub struct LatticeRecord {
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
}

impl Lattice {
    /// `{"rank": 2, "gram": [[2, "1/2"], ["1/2", 1]], "basis": …}`; a basis alone
    /// is also accepted, and when both are present they must agree.
    pub fn from_json(text: &str) -> Result<Self> {
        let f: LatticeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(f)
    }

    fn from_file(f: LatticeFile) -> Result<Self> {
        let mut gram = f.gram.as_ref().map(|g| rat_rows(g, f.rank)).transpose()?;
        if let Some(sc) = &f.scale {
            let sc = rational_from_json(sc)?;
            if f.basis.is_some() || !sc.is_positive() {
                return Err(Error::Parse(
                    "scale needs a Gram-only lattice and a positive factor".into(),
                ));
            }
            gram = gram.map(|g| {
                g.into_iter()
                    .map(|r| r.into_iter().map(|x| x * &sc).collect())
                    .collect()
            });
        }
        let basis = f.basis.as_ref().map(|b| rat_rows(b, f.rank)).transpose()?;
        match (gram, basis) {
            (Some(g), Some(b)) => {
                let l = Lattice::from_basis(b)?;
                if l.gram != g {
                    return Err(Error::InvalidParameter(
                        "Gram matrix disagrees with basisᵀ·basis".into(),
                    ));
                }
                Ok(l)
            }
            (Some(g), None) => Lattice::from_gram(g),
            (None, Some(b)) => Lattice::from_basis(b),
            (None, None) => Err(Error::Parse("lattice needs a gram or basis".into())),
        }
    }

    pub fn record(&self) -> LatticeRecord {
        LatticeRecord {
            rank: self.rank(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    #[allow(dead_code)]
    name: Option<String>,
    #[allow(dead_code)]
    provenance: Option<String>,
    lattices: Vec<LatticeFile>,
}

/// Squared-norm bound up to which a lattice pair's tori must agree at load.
pub const PAIR_CHECK_BOUND: i64 = 20;

/// Two lattices whose flat tori share every eigenvalue `μ ≤` [`PAIR_CHECK_BOUND`].
#[derive(Clone, Debug)]
pub struct IsospectralPair {
    pub first: Lattice,
    pub second: Lattice,
    /// Torus spectrum (dual theta series) shared by both, up to the bound.
    pub shared_theta: BTreeMap<BigRational, u64>,
}

impl IsospectralPair {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: PairFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let [a, b]: [LatticeFile; 2] = f
            .lattices
            .try_into()
            .map_err(|_| Error::Parse("a lattice pair has exactly two lattices".into()))?;
        Self::new(Lattice::from_file(a)?, Lattice::from_file(b)?)
    }

    pub fn new(first: Lattice, second: Lattice) -> Result<Self> {
        if first.rank() != second.rank() {
            return Err(Error::DimensionMismatch(
                "lattices of different rank".into(),
            ));
        }
        let bound = BigRational::from_integer(PAIR_CHECK_BOUND.into());
        let t1 = first.dual()?.theta_series(&bound)?;
        let t2 = second.dual()?.theta_series(&bound)?;
        if t1 != t2 {
            let mu = t1
                .keys()
                .chain(t2.keys())
                .filter(|k| t1.get(*k) != t2.get(*k))
                .min()
                .cloned()
                .expect("maps differ");
            return Err(Error::InvalidParameter(format!(
                "tori are not isospectral: μ = {} has multiplicities {} and {}",
                format_rational(&mu),
                t1.get(&mu).copied().unwrap_or(0),
                t2.get(&mu).copied().unwrap_or(0)
            )));
        }
        Ok(IsospectralPair {
            first,
            second,
            shared_theta: t1,
        })
    }

    /// The shipped quaternary pair.
    pub fn builtin() -> Result<Self> {
        Self::from_json(include_str!("../../data/lattices/quaternary_pair.json"))
    }
}
