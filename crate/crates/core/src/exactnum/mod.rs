//! Exact arithmetic over `Z`, `Q` and cyclotomic fields.

pub mod cyclotomic;
pub mod matrix;
pub mod scalar;
pub mod series;
pub mod snf;
pub mod symbolic;

pub use cyclotomic::Cyclotomic;
pub use matrix::ExactMatrix;
pub use scalar::{format_rational, parse_rational, ExactScalar};
pub use series::{sym_power_trace_series, IntegerSeries, Series};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use symbolic::ClosedForm;

use crate::error::{Error, Result};

fn stacked_fixed_system(dim: usize, mats: &[ExactMatrix]) -> Result<ExactMatrix> {
    let id = ExactMatrix::identity(dim);
    let blocks = mats
        .iter()
        .map(|m| {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "expected {dim}x{dim}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            m.sub(&id)
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::stack(&blocks, dim)
}

/// Dimension of the common `+1` eigenspace of `mats` acting on `R^dim`.
pub fn fixed_subspace_dim(dim: usize, mats: &[ExactMatrix]) -> Result<usize> {
    let sys = stacked_fixed_system(dim, mats)?;
    Ok(dim - sys.rank())
}

/// Basis of the common `+1` eigenspace, in the free-coordinate normal form of
/// [`ExactMatrix::nullspace`].
pub fn fixed_subspace_basis(dim: usize, mats: &[ExactMatrix]) -> Result<Vec<Vec<ExactScalar>>> {
    let sys = stacked_fixed_system(dim, mats)?;
    if sys.rows() == 0 {
        return Ok((0..dim)
            .map(|i| {
                let mut v = vec![ExactScalar::zero(); dim];
                v[i] = ExactScalar::one();
                v
            })
            .collect());
    }
    Ok(sys.nullspace())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_dims_of_sign_matrices() {
        let id = ExactMatrix::identity(6);
        assert_eq!(fixed_subspace_dim(6, &[id]).unwrap(), 6);
        let a12 = ExactMatrix::sign_diagonal(6, &[1, 2]);
        let a13 = ExactMatrix::sign_diagonal(6, &[1, 3]);
        assert_eq!(
            fixed_subspace_dim(6, std::slice::from_ref(&a12)).unwrap(),
            4
        );
        assert_eq!(
            fixed_subspace_dim(6, &[a12.clone(), a13.clone()]).unwrap(),
            3
        );
        assert_eq!(fixed_subspace_basis(6, &[a12, a13]).unwrap().len(), 3);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = ExactMatrix::identity(3);
        assert!(matches!(
            fixed_subspace_dim(4, &[a]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(fixed_subspace_dim(0, &[]).unwrap(), 0);
        assert_eq!(fixed_subspace_dim(3, &[]).unwrap(), 3);
    }
}
