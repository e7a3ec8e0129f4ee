//! Finite groups of affine maps of a torus `R^n / Z^n`, in lattice coordinates.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::lattice::{short_vectors, RatMatrix};
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, ExactScalar};
use crate::finite_group::{FiniteMatrixGroup, GroupElement};

/// `x ↦ Bx + t (mod Z^n)` with `B` integral, stored row-major, and `t ∈ [0,1)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusMap {
    n: usize,
    linear: Vec<i64>,
    shift: Vec<BigRational>,
}

pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl TorusMap {
    pub fn new(linear: Vec<Vec<i64>>, shift: Vec<BigRational>) -> Result<Self> {
        let n = linear.len();
        if linear.iter().any(|r| r.len() != n) || shift.len() != n {
            return Err(Error::DimensionMismatch(
                "affine map shapes disagree".into(),
            ));
        }
        let m = TorusMap {
            n,
            linear: linear.into_iter().flatten().collect(),
            shift: shift.iter().map(frac).collect(),
        };
        let det = m.linear_exact().inverse();
        match det {
            Some(inv) if inv.is_integral() => Ok(m),
            _ => Err(Error::InvalidParameter(
                "linear part must be unimodular".into(),
            )),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut linear = vec![0; n * n];
        for i in 0..n {
            linear[i * n + i] = 1;
        }
        TorusMap {
            n,
            linear,
            shift: vec![BigRational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn linear(&self, i: usize, j: usize) -> i64 {
        self.linear[i * self.n + j]
    }

    pub fn linear_rows(&self) -> Vec<Vec<i64>> {
        self.linear
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn shift(&self) -> &[BigRational] {
        &self.shift
    }

    pub fn linear_exact(&self) -> ExactMatrix {
        ExactMatrix::new(
            self.n,
            self.n,
            self.linear.iter().map(|&x| ExactScalar::int(x)).collect(),
        )
        .expect("square")
    }

    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| {
                let mut acc = self.shift[i].clone();
                for j in 0..self.n {
                    let b = self.linear(i, j);
                    if b != 0 {
                        acc += &x[j] * BigRational::from_integer(b.into());
                    }
                }
                acc
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n;
        let mut linear = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.linear(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    linear[i * n + j] += a * other.linear(k, j);
                }
            }
        }
        let shift = self.apply(&other.shift).iter().map(frac).collect();
        TorusMap { n, linear, shift }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.linear_exact().inverse().expect("unimodular");
        let n = self.n;
        let linear: Vec<i64> = inv
            .entries()
            .iter()
            .map(|x| {
                x.as_integer()
                    .and_then(|v| v.to_i64())
                    .expect("integral inverse")
            })
            .collect();
        let mut m = TorusMap {
            n,
            linear,
            shift: vec![BigRational::zero(); n],
        };
        let back = m.apply(&self.shift);
        m.shift = back.iter().map(|x| frac(&-x)).collect();
        m
    }

    pub fn preserves_gram(&self, g: &RatMatrix) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    for l in 0..n {
                        let (a, b) = (self.linear(k, i), self.linear(l, j));
                        if a != 0 && b != 0 {
                            acc += &g[k][l] * BigRational::from_integer((a * b).into());
                        }
                    }
                }
                if acc != g[i][j] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        *self == TorusMap::identity(self.n)
    }
}

impl fmt::Display for TorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || self.linear(i, j) == 0))
            && (0..n).all(|i| self.linear(i, i).abs() == 1);
        let lin = if diagonal {
            let neg: Vec<String> = (0..n)
                .filter(|&i| self.linear(i, i) < 0)
                .map(|i| (i + 1).to_string())
                .collect();
            if neg.is_empty() {
                "I".to_string()
            } else {
                format!("a{}", neg.join(if n > 9 { "," } else { "" }))
            }
        } else {
            let rows: Vec<String> = self
                .linear_rows()
                .iter()
                .map(|r| {
                    format!(
                        "[{}]",
                        r.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect();
            format!("[{}]", rows.join(","))
        };
        if self.shift.iter().all(Zero::is_zero) {
            write!(f, "{lin}")
        } else {
            let t: Vec<String> = self.shift.iter().map(|x| x.to_string()).collect();
            write!(f, "{lin}+({})", t.join(","))
        }
    }
}

/// A finite group of torus maps, enumerated breadth-first from its generators.
#[derive(Clone, Debug)]
pub struct TorusGroup {
    n: usize,
    elements: Vec<TorusMap>,
    index: HashMap<TorusMap, usize>,
    generators: Vec<usize>,
}

impl TorusGroup {
    pub fn generate(n: usize, gens: &[TorusMap], cap: usize) -> Result<Self> {
        if gens.iter().any(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch(
                "torus maps of different dimensions".into(),
            ));
        }
        let id = TorusMap::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let x = elements[i].compose(s);
                if index.contains_key(&x) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge {
                        cap,
                        partial: elements.len(),
                    });
                }
                index.insert(x.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(x);
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(TorusGroup {
            n,
            elements,
            index,
            generators,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[TorusMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &TorusMap {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &TorusMap) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Left-regular permutation representation. Element `j` of the returned
    /// group corresponds to torus element `map[j]`.
    pub fn regular_representation(&self) -> Result<(FiniteMatrixGroup, Vec<usize>)> {
        let perms = self
            .generators
            .iter()
            .map(|&s| {
                let images = self
                    .elements
                    .iter()
                    .map(|e| self.index[&self.elements[s].compose(e)] as u32)
                    .collect();
                GroupElement::permutation(images)
            })
            .collect::<Result<Vec<_>>>()?;
        let n = self.order();
        let g = FiniteMatrixGroup::generate(n, perms, n)?;
        let map = g
            .elements()
            .iter()
            .map(|p| match p {
                GroupElement::Permutation(p) => p[0] as usize,
                _ => unreachable!("regular representation is by permutations"),
            })
            .collect();
        Ok((g, map))
    }
}

/// Multiplicity of each `μ ≤ mu_max` as an eigenvalue of `H \ (R^n/Λ)`:
/// the average over `h = (B, t) ∈ H` of `Σ e^{2πi⟨v,t⟩}` over dual vectors
/// `v` of squared norm `μ` with `Bᵀv = v`. Dual vectors are in dual-basis
/// coordinates, so `dual_gram = G⁻¹`.
pub fn averaged_multiplicities(
    dual_gram: &RatMatrix,
    maps: &[TorusMap],
    mu_max: &BigRational,
    budget: usize,
) -> Result<BTreeMap<BigRational, u64>> {
    if maps.is_empty() {
        return Err(Error::InvalidParameter(
            "averaging over an empty set of maps".into(),
        ));
    }
    let n = dual_gram.len();
    let mut sums: BTreeMap<BigRational, Vec<ExactScalar>> = BTreeMap::new();
    let mut count = 0usize;
    short_vectors(dual_gram, mu_max, |y| {
        count += 1;
        if count > budget {
            return Err(Error::BudgetExceeded {
                budget: budget as u64,
            });
        }
        let mu = super::lattice::quadratic_form(dual_gram, y);
        let slot = sums
            .entry(mu)
            .or_insert_with(|| vec![ExactScalar::zero(); 1]);
        for m in maps {
            // Bᵀ y = y
            let fixed = (0..n).all(|j| (0..n).map(|i| m.linear(i, j) * y[i]).sum::<i64>() == y[j]);
            if !fixed {
                continue;
            }
            let phase = (0..n).fold(BigRational::zero(), |acc, i| {
                acc + &m.shift()[i] * BigRational::from_integer(y[i].into())
            });
            let phase = frac(&phase);
            let den = phase.denom().to_u32().ok_or_else(|| {
                Error::InvalidParameter("translation denominator too large".into())
            })?;
            let num = phase.numer().to_i64().expect("numerator below denominator");
            slot[0] = slot[0].add(&ExactScalar::zeta(den, num));
        }
        Ok(())
    })?;
    let order = BigInt::from(maps.len());
    let mut out = BTreeMap::new();
    for (mu, s) in sums {
        let total = s[0].as_integer().ok_or_else(|| {
            Error::InternalConsistency(format!(
                "character sum at μ = {mu} is not an integer: {}",
                s[0]
            ))
        })?;
        let (q, r) = total.div_rem(&order);
        if !r.is_zero() || q < BigInt::zero() {
            return Err(Error::InternalConsistency(format!(
                "multiplicity at μ = {mu} is {total}/{order}, not a nonnegative integer"
            )));
        }
        let q = q.to_u64().expect("fits");
        if q > 0 {
            out.insert(mu, q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn composition_and_inverse() {
        let g = TorusMap::new(vec![vec![0, -1], vec![1, 0]], vec![q(1, 2), q(0, 1)]).unwrap();
        let gi = g.inverse();
        assert!(g.compose(&gi).is_identity());
        let grp = TorusGroup::generate(2, &[g], 100).unwrap();
        assert_eq!(grp.order(), 4);
        let (p, map) = grp.regular_representation().unwrap();
        assert_eq!(p.order(), 4);
        let mut seen = map.clone();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3]);
    }

    #[test]
    fn circle_reflection_spectrum() {
        // Z \ R with x ↦ -x: cosine modes only
        let refl = TorusMap::new(vec![vec![-1]], vec![q(0, 1)]).unwrap();
        let g = vec![vec![q(1, 1)]];
        let m =
            averaged_multiplicities(&g, &[TorusMap::identity(1), refl], &q(9, 1), 1000).unwrap();
        assert_eq!(m.values().copied().collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        // free half-turn: the circle of half length
        let half = TorusMap::new(vec![vec![1]], vec![q(1, 2)]).unwrap();
        let m =
            averaged_multiplicities(&g, &[TorusMap::identity(1), half], &q(9, 1), 1000).unwrap();
        assert_eq!(
            m.keys().cloned().collect::<Vec<_>>(),
            vec![q(0, 1), q(4, 1)]
        );
        assert_eq!(m[&q(4, 1)], 2);
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(TorusMap::new(vec![vec![2]], vec![q(0, 1)]).is_err());
    }
}
