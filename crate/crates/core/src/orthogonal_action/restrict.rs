use crate::error::{Error, Result};
use crate::exactnum::{fixed_subspace_basis, ExactMatrix, ExactScalar};
use crate::finite_group::{FiniteMatrixGroup, GroupElement};

/// Common `+1` eigenspace of a set of group elements, with the coordinates
/// used to express restricted maps.
#[derive(Clone, Debug)]
pub struct FixedSubspace {
    ambient: usize,
    basis: Vec<Vec<ExactScalar>>,
    /// Coordinates on which the basis is invertible, and that inverse.
    coords: Vec<usize>,
    coord_inverse: ExactMatrix,
    /// Set when the basis consists of standard unit vectors.
    unit_coords: Option<Vec<usize>>,
}

impl FixedSubspace {
    pub fn of(group: &FiniteMatrixGroup, images: &[usize]) -> Result<Self> {
        let n = group.dim();
        let mut signs: Option<Vec<i8>> = Some(vec![1; n]);
        for &i in images {
            match (group.element(i).diagonal_signs(), signs.as_mut()) {
                (Some(s), Some(acc)) => acc.iter_mut().zip(s).for_each(|(a, b)| *a = (*a).min(b)),
                _ => signs = None,
            }
        }
        if let Some(s) = signs {
            let coords: Vec<usize> = (0..n).filter(|&i| s[i] == 1).collect();
            return Ok(Self::from_unit_coords(n, coords));
        }
        let mats: Vec<ExactMatrix> = images
            .iter()
            .map(|&i| group.element(i).to_matrix())
            .collect();
        Self::from_basis(n, fixed_subspace_basis(n, &mats)?)
    }

    pub fn from_unit_coords(ambient: usize, coords: Vec<usize>) -> Self {
        let basis = coords
            .iter()
            .map(|&c| {
                let mut v = vec![ExactScalar::zero(); ambient];
                v[c] = ExactScalar::one();
                v
            })
            .collect();
        FixedSubspace {
            ambient,
            basis,
            coord_inverse: ExactMatrix::identity(coords.len()),
            unit_coords: Some(coords.clone()),
            coords,
        }
    }

    pub fn from_basis(ambient: usize, basis: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let d = basis.len();
        if basis.iter().any(|b| b.len() != ambient) {
            return Err(Error::DimensionMismatch(
                "basis vectors have the wrong length".into(),
            ));
        }
        let bt = ExactMatrix::new(d, ambient, basis.iter().flatten().cloned().collect())?;
        let (_, coords) = bt.rref();
        if coords.len() != d {
            return Err(Error::SingularBasis);
        }
        let mut sub = ExactMatrix::zeros(d, d);
        for (i, &c) in coords.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                sub.set(i, j, b[c].clone());
            }
        }
        let coord_inverse = sub.inverse().ok_or(Error::SingularBasis)?;
        Ok(FixedSubspace {
            ambient,
            basis,
            coords,
            coord_inverse,
            unit_coords: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<ExactScalar>] {
        &self.basis
    }

    pub fn unit_coords(&self) -> Option<&[usize]> {
        self.unit_coords.as_deref()
    }

    /// Matrix of `g` on the subspace, in the basis [`Self::basis`]. Fails when
    /// `g` does not preserve the subspace.
    pub fn restrict(&self, g: &GroupElement) -> Result<GroupElement> {
        let d = self.dim();
        if let (Some(uc), Some((images, signs))) = (&self.unit_coords, signed_parts(g)) {
            let mut pos = vec![usize::MAX; self.ambient];
            for (k, &c) in uc.iter().enumerate() {
                pos[c] = k;
            }
            let mut ri = Vec::with_capacity(d);
            let mut rs = Vec::with_capacity(d);
            for &c in uc {
                let t = pos[images[c] as usize];
                if t == usize::MAX {
                    return Err(Error::InvalidParameter(
                        "element does not preserve the fixed subspace".into(),
                    ));
                }
                ri.push(t as u32);
                rs.push(signs[c]);
            }
            return GroupElement::signed_permutation(ri, rs);
        }
        let images: Vec<Vec<ExactScalar>> = self.basis.iter().map(|b| g.apply(b)).collect();
        let mut rhs = ExactMatrix::zeros(d, d);
        for (j, v) in images.iter().enumerate() {
            for (i, &c) in self.coords.iter().enumerate() {
                rhs.set(i, j, v[c].clone());
            }
        }
        let r = self.coord_inverse.mul(&rhs)?;
        // verify g·b_j = Σ r_ij b_i on every coordinate
        for (j, v) in images.iter().enumerate() {
            for c in 0..self.ambient {
                let mut acc = ExactScalar::zero();
                for i in 0..d {
                    acc = acc.add(&r.get(i, j).mul(&self.basis[i][c]));
                }
                if acc != v[c] {
                    return Err(Error::InvalidParameter(
                        "element does not preserve the fixed subspace".into(),
                    ));
                }
            }
        }
        GroupElement::from_matrix_compact(r)
    }

    /// Whether `g` restricts to the identity.
    pub fn fixes_pointwise(&self, g: &GroupElement) -> bool {
        self.basis.iter().all(|b| &g.apply(b) == b)
    }
}

fn signed_parts(g: &GroupElement) -> Option<(Vec<u32>, Vec<i8>)> {
    match g {
        GroupElement::Permutation(p) => Some((p.clone(), vec![1; p.len()])),
        GroupElement::SignedPermutation { images, signs } => Some((images.clone(), signs.clone())),
        GroupElement::Matrix(_) => None,
    }
}

/// Elements of `centralizer` acting as the identity on `fixed`.
pub fn effective_kernel(
    centralizer: &FiniteMatrixGroup,
    fixed: &FixedSubspace,
) -> Result<FiniteMatrixGroup> {
    let gens = centralizer.generators();
    for g in gens {
        fixed.restrict(g)?;
    }
    let kernel: Vec<usize> = (0..centralizer.order())
        .filter(|&i| fixed.fixes_pointwise(centralizer.element(i)))
        .collect();
    let mut gens_k = Vec::new();
    let mut h = centralizer.subgroup_generated_by(&[]);
    for &i in &kernel {
        if !h.contains(centralizer.element(i)) {
            gens_k.push(i);
            h = centralizer.subgroup_generated_by(&gens_k);
        }
    }
    Ok(h)
}

/// The faithful group induced by `centralizer` on `fixed`, i.e. the quotient
/// by the effective kernel, as maps of the subspace.
pub fn restricted_action(
    centralizer: &FiniteMatrixGroup,
    fixed: &FixedSubspace,
) -> Result<FiniteMatrixGroup> {
    let gens = centralizer
        .generators()
        .iter()
        .map(|g| fixed.restrict(g))
        .collect::<Result<Vec<_>>>()?;
    FiniteMatrixGroup::generate(fixed.dim(), gens, centralizer.order().max(1))
}
