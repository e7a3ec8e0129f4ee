use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::lattice::{rat_inverse, RatMatrix};
use super::torus::{frac, TorusMap};
use crate::error::{Error, Result};
use crate::exactnum::{smith_normal_form, ClosedForm, IntMatrix};

/// Common fixed set of torus maps: a disjoint union of parallel subtori.
///
/// Solving `(B_k − I)x ≡ −t_k (mod Z^n)` for all maps at once with
/// `U·A·V = D` (Smith form) and `x = Vz`: the first `r` coordinates of `z`
/// are pinned to `(c_i + k_i)/d_i`, `0 ≤ k_i < d_i`, and the rest are free.
#[derive(Clone, Debug)]
pub struct AffineFixedSet {
    n: usize,
    /// `None` when empty.
    data: Option<FixedData>,
}

#[derive(Clone, Debug)]
struct FixedData {
    v: RatMatrix,
    v_inv: RatMatrix,
    rank: usize,
    factors: Vec<u64>,
    c: Vec<BigRational>,
    sub_gram: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatFixedSet {
    pub dimension: usize,
    pub components: usize,
    /// Volume of one component subtorus (a count of 1 for points).
    pub component_volume: ClosedForm,
}

fn int_to_rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

impl AffineFixedSet {
    pub fn of(maps: &[TorusMap], gram: &RatMatrix) -> Result<Self> {
        let n = gram.len();
        if maps.iter().any(|m| m.dim() != n) {
            return Err(Error::DimensionMismatch(
                "torus maps and lattice disagree".into(),
            ));
        }
        // stacked system A x ≡ rhs
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut rhs: Vec<BigRational> = Vec::new();
        for m in maps {
            for i in 0..n {
                rows.push((0..n).map(|j| m.linear(i, j) - (i == j) as i64).collect());
                rhs.push(-m.shift()[i].clone());
            }
        }
        let (a, nrows) = if rows.is_empty() {
            (IntMatrix::zeros(0, n), 0)
        } else {
            let k = rows.len();
            (IntMatrix::from_rows(&rows), k)
        };
        let s = smith_normal_form(&a);
        let rank = s.rank();
        // c = U · rhs
        let c: Vec<BigRational> = (0..nrows)
            .map(|i| {
                (0..nrows).fold(BigRational::zero(), |acc, k| {
                    acc + int_to_rat(s.u.get(i, k)) * &rhs[k]
                })
            })
            .collect();
        if c[rank..].iter().any(|x| !x.is_integer()) {
            return Ok(AffineFixedSet { n, data: None });
        }
        let v: RatMatrix = (0..n)
            .map(|i| (0..n).map(|j| int_to_rat(s.v.get(i, j))).collect())
            .collect();
        let v_inv = rat_inverse(&v).ok_or(Error::SingularBasis)?;
        let factors = (0..rank)
            .map(|i| {
                s.d.get(i, i)
                    .to_u64()
                    .ok_or_else(|| Error::InvalidParameter("huge invariant factor".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        // kernel lattice W = V[:, rank..], Gram Wᵀ G W
        let dim = n - rank;
        let mut sub_gram = vec![vec![BigRational::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = BigRational::zero();
                for i in 0..n {
                    for j in 0..n {
                        acc += &v[i][rank + a] * &gram[i][j] * &v[j][rank + b];
                    }
                }
                sub_gram[a][b] = acc;
            }
        }
        Ok(AffineFixedSet {
            n,
            data: Some(FixedData {
                v,
                v_inv,
                rank,
                factors,
                c: c[..rank].to_vec(),
                sub_gram,
            }),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_none()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.data.as_ref().map(|d| self.n - d.rank)
    }

    pub fn raw_components(&self) -> usize {
        self.data
            .as_ref()
            .map_or(0, |d| d.factors.iter().product::<u64>() as usize)
    }

    /// Gram matrix of the lattice of one component subtorus.
    pub fn sub_gram(&self) -> Option<&RatMatrix> {
        self.data.as_ref().map(|d| &d.sub_gram)
    }

    pub fn component_volume(&self) -> Option<ClosedForm> {
        let d = self.data.as_ref()?;
        let g = &d.sub_gram;
        if g.is_empty() {
            return Some(ClosedForm::int(1));
        }
        let det = super::lattice::Lattice::from_gram(g.clone())
            .ok()?
            .determinant();
        Some(ClosedForm::sqrt_rational(&det))
    }

    pub fn summary(&self) -> Option<FlatFixedSet> {
        Some(FlatFixedSet {
            dimension: self.dimension()?,
            components: self.raw_components(),
            component_volume: self.component_volume()?,
        })
    }

    fn label_to_point(&self, label: &[u64]) -> Vec<BigRational> {
        let d = self.data.as_ref().expect("nonempty");
        let mut z = vec![BigRational::zero(); self.n];
        for i in 0..d.rank {
            z[i] = (&d.c[i] + BigRational::from_integer(label[i].into()))
                / BigRational::from_integer(d.factors[i].into());
        }
        (0..self.n)
            .map(|i| (0..self.n).fold(BigRational::zero(), |acc, j| acc + &d.v[i][j] * &z[j]))
            .collect()
    }

    /// One point on each component, in label order.
    pub fn component_points(&self) -> Vec<Vec<BigRational>> {
        let Some(d) = &self.data else { return vec![] };
        let mut labels: Vec<Vec<u64>> = vec![vec![]];
        for &f in &d.factors {
            labels = labels
                .into_iter()
                .flat_map(|l| {
                    (0..f).map(move |k| {
                        let mut m = l.clone();
                        m.push(k);
                        m
                    })
                })
                .collect();
        }
        labels.iter().map(|l| self.label_to_point(l)).collect()
    }

    /// Index (in [`Self::component_points`] order) of the component through `x`,
    /// or `None` if `x` is not a fixed point.
    pub fn component_of(&self, x: &[BigRational]) -> Option<usize> {
        let d = self.data.as_ref()?;
        let z: Vec<BigRational> = (0..self.n)
            .map(|i| (0..self.n).fold(BigRational::zero(), |acc, j| acc + &d.v_inv[i][j] * &x[j]))
            .collect();
        let mut idx = 0usize;
        for i in 0..d.rank {
            let f = BigRational::from_integer(d.factors[i].into());
            let k = &z[i] * &f - &d.c[i];
            if !k.is_integer() {
                return None;
            }
            let k = k.to_integer().mod_floor_u64(d.factors[i]);
            idx = idx * d.factors[i] as usize + k as usize;
        }
        Some(idx)
    }

    /// Action of a map preserving the fixed set on the component through
    /// `base`, written on the component subtorus in the basis `V[:, r..]`.
    pub fn restrict(&self, m: &TorusMap, base: &[BigRational]) -> Result<TorusMap> {
        let d = self
            .data
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("empty fixed set".into()))?;
        let n = self.n;
        let r = d.rank;
        let y: Vec<BigRational> = m.apply(base).iter().zip(base).map(|(a, b)| a - b).collect();
        let w: Vec<BigRational> = (0..n)
            .map(|i| (0..n).fold(BigRational::zero(), |acc, j| acc + &d.v_inv[i][j] * &y[j]))
            .collect();
        if w[..r].iter().any(|x| !x.is_integer()) {
            return Err(Error::InvalidParameter(
                "map does not preserve this component".into(),
            ));
        }
        // V⁻¹ B V, lower-right block
        let b: RatMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(m.linear(i, j).into()))
                    .collect()
            })
            .collect();
        let vbv = super::lattice::rat_mul(&super::lattice::rat_mul(&d.v_inv, &b), &d.v);
        for i in 0..r {
            for j in r..n {
                if !vbv[i][j].is_zero() {
                    return Err(Error::InternalConsistency(
                        "map does not preserve the fixed directions".into(),
                    ));
                }
            }
        }
        let lin = (r..n)
            .map(|i| {
                (r..n)
                    .map(|j| {
                        vbv[i][j].to_integer().to_i64().ok_or_else(|| {
                            Error::InternalConsistency("non-integral restriction".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TorusMap::new(lin, w[r..].iter().map(frac).collect())
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        let m = BigInt::from(m);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("reduced")
    }
}

/// Checks `Bx + t ≡ x (mod Z^n)`.
pub fn is_fixed_point(m: &TorusMap, x: &[BigRational]) -> bool {
    m.apply(x).iter().zip(x).all(|(a, b)| (a - b).is_integer())
}
