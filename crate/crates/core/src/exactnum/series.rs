use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::ExactMatrix;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Truncated power series `Σ_{k ≤ k_max} c_k t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

/// Integer-coefficient series, e.g. the trace series of a rational orthogonal matrix.
pub type IntegerSeries = Series<BigInt>;

impl<T: Clone> Series<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series carries at least the degree-0 term"
        );
        Series { coeffs }
    }

    pub fn k_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`; `None` beyond the truncation degree.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
}

impl Series<ExactScalar> {
    pub fn to_integer(&self) -> Option<IntegerSeries> {
        self.coeffs
            .iter()
            .map(ExactScalar::as_integer)
            .collect::<Option<Vec<_>>>()
            .map(Series::from_coeffs)
    }
}

/// Inverts `d(t) = Σ d_i t^i` with `d_0 = 1` up to degree `k_max`.
pub fn invert_unit_series(d: &[ExactScalar], k_max: usize) -> Result<Series<ExactScalar>> {
    if d.first().is_none_or(|c| !c.is_one()) {
        return Err(Error::InvalidParameter(
            "series inverse needs constant term 1".into(),
        ));
    }
    let mut h: Vec<ExactScalar> = Vec::with_capacity(k_max + 1);
    h.push(ExactScalar::one());
    for k in 1..=k_max {
        let mut acc = ExactScalar::zero();
        for i in 1..=k.min(d.len() - 1) {
            if !d[i].is_zero() {
                acc = acc.sub(&d[i].mul(&h[k - i]));
            }
        }
        h.push(acc);
    }
    Ok(Series::from_coeffs(h))
}

/// Integer specialisation of [`invert_unit_series`].
pub fn invert_unit_series_int(d: &[BigInt], k_max: usize) -> IntegerSeries {
    let mut h: Vec<BigInt> = Vec::with_capacity(k_max + 1);
    h.push(BigInt::from(1));
    for k in 1..=k_max {
        let mut acc = BigInt::zero();
        for i in 1..=k.min(d.len() - 1) {
            if !d[i].is_zero() {
                acc -= &d[i] * &h[k - i];
            }
        }
        h.push(acc);
    }
    Series::from_coeffs(h)
}

/// Traces of `M` acting on homogeneous polynomials of degree `0..=k_max`,
/// read off from `1 / det(I - tM)`.
pub fn sym_power_trace_series(m: &ExactMatrix, k_max: usize) -> Result<Series<ExactScalar>> {
    let d = m.det_one_minus_t()?;
    invert_unit_series(&d, k_max)
}
