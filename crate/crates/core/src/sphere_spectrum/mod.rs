//! Spectra of round-sphere quotients by finite orthogonal groups, counted
//! through invariant harmonic polynomials.

mod segment;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

pub use segment::SpectrumSegment;

use crate::error::{Error, Result};
use crate::exactnum::series::{invert_unit_series, invert_unit_series_int};
use crate::exactnum::{ClosedForm, ExactMatrix, ExactScalar};
use crate::finite_group::{generate_group, FiniteMatrixGroup, GroupElement};
use crate::orthogonal_action::{FixedSetKind, SectorDescriptor};

/// Dimensions of `G`-invariant harmonic polynomials of degree `0..=k_max` on `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicMultiplicityTable {
    pub n: usize,
    pub dims: Vec<u64>,
}

/// Eigenvalue of degree-`k` harmonics on the unit sphere `S^{n-1}`.
pub fn sphere_eigenvalue(k: usize, n: usize) -> i64 {
    (k * (k + n) - 2 * k) as i64
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64().ok_or_else(|| {
        Error::InternalConsistency(format!("{what} = {x} is not a nonnegative machine integer"))
    })
}

/// Turns per-degree polynomial counts `c_k` into harmonic counts `c_k − c_{k−2}`.
fn harmonic_from_poly_counts(c: &[BigInt]) -> Result<Vec<u64>> {
    (0..c.len())
        .map(|k| {
            let h = if k >= 2 {
                &c[k] - &c[k - 2]
            } else {
                c[k].clone()
            };
            to_u64(&h, &format!("harmonic dimension in degree {k}"))
        })
        .collect()
}

/// Molien averaging over all elements, grouped by `det(I − tg)`.
pub fn harmonic_table(g: &FiniteMatrixGroup, k_max: usize) -> Result<HarmonicMultiplicityTable> {
    let mut polys: HashMap<Vec<ExactScalar>, u64> = HashMap::new();
    for e in g.elements() {
        *polys.entry(e.det_one_minus_t()?).or_insert(0) += 1;
    }
    // deterministic summation order
    let mut polys: Vec<(Vec<ExactScalar>, u64)> = polys.into_iter().collect();
    polys.sort_by_key(|(p, _)| p.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let mut int_sum = vec![BigInt::zero(); k_max + 1];
    let mut exact_sum = vec![ExactScalar::zero(); k_max + 1];
    for (p, count) in &polys {
        let ints: Option<Vec<BigInt>> = p.iter().map(ExactScalar::as_integer).collect();
        match ints {
            Some(d) => {
                let s = invert_unit_series_int(&d, k_max);
                for (k, c) in s.coeffs().iter().enumerate() {
                    int_sum[k] += c * BigInt::from(*count);
                }
            }
            None => {
                let s = invert_unit_series(p, k_max)?;
                let cnt = ExactScalar::int(*count as i64);
                for (k, c) in s.coeffs().iter().enumerate() {
                    exact_sum[k] = exact_sum[k].add(&c.mul(&cnt));
                }
            }
        }
    }
    let order = BigInt::from(g.order());
    let mut c = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let extra = exact_sum[k].as_integer().ok_or_else(|| {
            Error::InternalConsistency(format!(
                "Molien sum in degree {k} is not an integer: {}",
                exact_sum[k]
            ))
        })?;
        let total = &int_sum[k] + extra;
        let (q, r) = total.div_rem(&order);
        if !r.is_zero() {
            return Err(Error::InternalConsistency(format!(
                "Molien sum {total} in degree {k} not divisible by |G| = {order}"
            )));
        }
        c.push(q);
    }
    Ok(HarmonicMultiplicityTable {
        n: g.dim(),
        dims: harmonic_from_poly_counts(&c)?,
    })
}

pub fn harmonic_invariant_dim(g: &FiniteMatrixGroup, k: usize) -> Result<u64> {
    Ok(harmonic_table(g, k)?.dims[k])
}

fn segment_from_table(t: &HarmonicMultiplicityTable, k_max: usize) -> Result<SpectrumSegment> {
    if t.n == 0 {
        return Err(Error::InvalidParameter("the sphere in R^0 is empty".into()));
    }
    let entries = t
        .dims
        .iter()
        .enumerate()
        .map(|(k, &m)| (ClosedForm::int(sphere_eigenvalue(k, t.n)), m));
    let cutoff = ClosedForm::int(sphere_eigenvalue(k_max, t.n).max(0));
    Ok(SpectrumSegment::new(entries, cutoff))
}

/// Spectrum of `G \ S^{n−1}` for harmonic degrees `0..=k_max`.
pub fn quotient_sphere_spectrum(g: &FiniteMatrixGroup, k_max: usize) -> Result<SpectrumSegment> {
    segment_from_table(&harmonic_table(g, k_max)?, k_max)
}

/// Invariant harmonic counts for the rotation `z_j ↦ ζ_q^{s_j} z_j` on `C^m`,
/// by counting monomials `z^a z̄^b` with `Σ s_j(a_j − b_j) ≡ 0 (mod q)`.
pub fn lens_harmonic_table(
    q: i64,
    weights: &[i64],
    k_max: usize,
) -> Result<HarmonicMultiplicityTable> {
    if q <= 0 {
        return Err(Error::InvalidParameter(format!(
            "lens order must be positive, got {q}"
        )));
    }
    if weights.is_empty() {
        return Err(Error::InvalidParameter(
            "lens spaces need at least one weight".into(),
        ));
    }
    let q = q as usize;
    // cnt[d][r]: monomials of degree d with residue r
    let mut cnt = vec![vec![BigInt::zero(); q]; k_max + 1];
    cnt[0][0] = BigInt::from(1);
    for &s in weights {
        for sign in [1i64, -1] {
            let shift = (sign * s).rem_euclid(q as i64) as usize;
            for d in 1..=k_max {
                for r in 0..q {
                    let prev = cnt[d - 1][(r + q - shift) % q].clone();
                    cnt[d][r] += prev;
                }
            }
        }
    }
    let c: Vec<BigInt> = cnt.iter().map(|row| row[0].clone()).collect();
    Ok(HarmonicMultiplicityTable {
        n: 2 * weights.len(),
        dims: harmonic_from_poly_counts(&c)?,
    })
}

pub fn lens_space_spectrum(q: i64, weights: &[i64], k_max: usize) -> Result<SpectrumSegment> {
    segment_from_table(&lens_harmonic_table(q, weights, k_max)?, k_max)
}

/// The cyclic group generated by the block rotation `diag(R(2πs_j/q))` on `R^{2m}`.
pub fn lens_rotation_group(q: i64, weights: &[i64]) -> Result<FiniteMatrixGroup> {
    if q <= 0 {
        return Err(Error::InvalidParameter(format!(
            "lens order must be positive, got {q}"
        )));
    }
    let n = 2 * weights.len();
    let order = q as u32;
    let mut m = ExactMatrix::zeros(n, n);
    for (j, &s) in weights.iter().enumerate() {
        let (c, si) = (
            ExactScalar::cos_2pi(s, order),
            ExactScalar::sin_2pi(s, order),
        );
        m.set(2 * j, 2 * j, c.clone());
        m.set(2 * j, 2 * j + 1, si.neg());
        m.set(2 * j + 1, 2 * j, si);
        m.set(2 * j + 1, 2 * j + 1, c);
    }
    generate_group(n, vec![GroupElement::matrix(m)?], q as usize)
}

/// Spectrum of one sphere-type sector: the quotient of its fixed sphere by
/// the induced centralizer action.
pub fn sector_spectrum(s: &SectorDescriptor, k_max: usize) -> Result<SpectrumSegment> {
    match s.fixed_set.kind {
        FixedSetKind::Sphere { .. } => quotient_sphere_spectrum(&s.restricted, k_max),
        FixedSetKind::Empty => Err(Error::UnsupportedSector("empty fixed set".into())),
        FixedSetKind::Stiefel { n, k } => Err(Error::UnsupportedSector(format!(
            "frame space V({n},{k}) has no spectrum support"
        ))),
        FixedSetKind::Flat { .. } => Err(Error::UnsupportedSector(
            "flat sectors are handled by the flat orbifold code".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::constructions::sign_generators;

    fn trivial(n: usize) -> FiniteMatrixGroup {
        generate_group(n, vec![], 1).unwrap()
    }

    #[test]
    fn round_two_sphere() {
        let s = quotient_sphere_spectrum(&trivial(3), 2).unwrap();
        let e: Vec<(ClosedForm, u64)> = [(0, 1), (2, 3), (6, 5)]
            .iter()
            .map(|&(l, m)| (ClosedForm::int(l), m))
            .collect();
        assert_eq!(s.entries(), &e[..]);
        assert_eq!(harmonic_invariant_dim(&trivial(3), 1).unwrap(), 3);
        // Σ_{k ≤ K} (2k+1) = (K+1)²
        let t = harmonic_table(&trivial(3), 12).unwrap();
        assert_eq!(t.dims.iter().sum::<u64>(), 13 * 13);
    }

    #[test]
    fn small_circle_quotients() {
        let flips = generate_group(2, sign_generators(2, &[&[1], &[2]]), 10).unwrap();
        assert_eq!(harmonic_invariant_dim(&flips, 2).unwrap(), 1);
        let anti = generate_group(2, sign_generators(2, &[&[1, 2]]), 10).unwrap();
        assert_eq!(harmonic_invariant_dim(&anti, 2).unwrap(), 2);
    }

    #[test]
    fn zero_sphere() {
        let s = quotient_sphere_spectrum(&trivial(1), 4).unwrap();
        assert_eq!(s.entries(), &[(ClosedForm::int(0), 2)]);
        let flip = generate_group(1, sign_generators(1, &[&[1]]), 10).unwrap();
        assert_eq!(
            quotient_sphere_spectrum(&flip, 4).unwrap().entries(),
            &[(ClosedForm::int(0), 1)]
        );
    }

    #[test]
    fn lens_examples() {
        let round = lens_space_spectrum(1, &[1, 1], 6).unwrap();
        assert_eq!(round, quotient_sphere_spectrum(&trivial(4), 6).unwrap());
        let t = lens_harmonic_table(2, &[1, 1], 5).unwrap();
        assert_eq!(t.dims, vec![1, 0, 9, 0, 25, 0]);
        for (q, w) in [(4, vec![1, 1]), (5, vec![1, 2]), (6, vec![1, 3])] {
            let g = lens_rotation_group(q, &w).unwrap();
            assert_eq!(g.order(), q as usize);
            assert_eq!(
                harmonic_table(&g, 8).unwrap(),
                lens_harmonic_table(q, &w, 8).unwrap()
            );
        }
        assert!(lens_space_spectrum(0, &[1], 3).is_err());
    }
}
