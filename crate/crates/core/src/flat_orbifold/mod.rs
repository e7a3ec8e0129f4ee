//! Flat orbifolds `H \ (R^n / Λ)` for finite groups `H` of torus maps, their
//! spectra by twisted theta sums, and their Γ-sectors.

mod fixed;
pub mod fixtures;
mod lattice;
mod torus;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub use fixed::{is_fixed_point, AffineFixedSet, FlatFixedSet};
pub use lattice::{
    quadratic_form, rat_inverse, rat_mul, rat_transpose, short_vectors, IsospectralPair, Lattice,
    LatticeRecord, RatMatrix, DEFAULT_VECTOR_BUDGET, PAIR_CHECK_BOUND,
};
pub use torus::{averaged_multiplicities, frac, TorusGroup, TorusMap};

use crate::error::{Error, Result};
use crate::exactnum::ClosedForm;
use crate::finite_group::FiniteMatrixGroup;
use crate::gamma_hom::{hom_classes, GroupPresentation, HomClass};
use crate::sphere_spectrum::SpectrumSegment;

pub const DEFAULT_TORUS_GROUP_CAP: usize = 100_000;

/// Flat eigenvalues are stored as `μ = |v|²`; the Laplace eigenvalue is `4π²μ`.
pub fn laplace_eigenvalues(s: &SpectrumSegment) -> SpectrumSegment {
    let f = ClosedForm::monomial(BigRational::from_integer(4.into()), 1, 2);
    SpectrumSegment::new(
        s.entries().iter().map(|(l, m)| (l.mul(&f), *m)),
        s.cutoff().mul(&f),
    )
}

fn segment_from_map(m: BTreeMap<BigRational, u64>, mu_max: &BigRational) -> SpectrumSegment {
    SpectrumSegment::new(
        m.into_iter().map(|(mu, k)| (ClosedForm::rational(mu), k)),
        ClosedForm::rational(mu_max.clone()),
    )
}

/// `H \ (R^n / Λ)` in lattice coordinates.
#[derive(Clone, Debug)]
pub struct FlatOrbifold {
    lattice: Lattice,
    group: TorusGroup,
}

impl FlatOrbifold {
    pub fn new(lattice: Lattice, generators: &[TorusMap], cap: usize) -> Result<Self> {
        let n = lattice.rank();
        for g in generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "map on R^{} for a rank {n} lattice",
                    g.dim()
                )));
            }
            if !g.preserves_gram(lattice.gram()) {
                return Err(Error::InvalidParameter(format!(
                    "{g} is not an isometry of the lattice"
                )));
            }
        }
        let group = TorusGroup::generate(n, generators, cap)?;
        Ok(FlatOrbifold { lattice, group })
    }

    pub fn torus(lattice: Lattice) -> Self {
        let n = lattice.rank();
        FlatOrbifold {
            lattice,
            group: TorusGroup::generate(n, &[], 1).expect("trivial group"),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn group(&self) -> &TorusGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.lattice.rank()
    }

    /// Multiplicity `d_μ` of every `μ ≤ mu_max`.
    pub fn multiplicities(
        &self,
        mu_max: &BigRational,
        budget: usize,
    ) -> Result<BTreeMap<BigRational, u64>> {
        let dual = rat_inverse(self.lattice.gram()).ok_or(Error::SingularBasis)?;
        averaged_multiplicities(&dual, self.group.elements(), mu_max, budget)
    }

    pub fn spectrum(&self, mu_max: &BigRational, budget: usize) -> Result<SpectrumSegment> {
        Ok(segment_from_map(
            self.multiplicities(mu_max, budget)?,
            mu_max,
        ))
    }

    /// Γ-sectors with nonempty fixed set, trivial class first.
    pub fn sectors(&self, gamma: &GroupPresentation, budget: u64) -> Result<Vec<FlatSector>> {
        let (reg, map) = self.group.regular_representation()?;
        let mut out = Vec::new();
        for class in hom_classes(gamma, &reg, budget)? {
            if let Some(s) = self.sector(&reg, &map, class)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    fn sector(
        &self,
        reg: &FiniteMatrixGroup,
        map: &[usize],
        class: HomClass,
    ) -> Result<Option<FlatSector>> {
        let images: Vec<TorusMap> = class
            .representative
            .images
            .iter()
            .map(|&i| self.group.element(map[i]).clone())
            .collect();
        let fixed = AffineFixedSet::of(&images, self.lattice.gram())?;
        if fixed.is_empty() {
            return Ok(None);
        }
        let centralizer: Vec<TorusMap> = reg
            .centralizer_indices(&class.representative.images)
            .into_iter()
            .map(|i| self.group.element(map[i]).clone())
            .collect();
        let points = fixed.component_points();
        // centralizer orbits on the raw components
        let mut orbit_of = vec![usize::MAX; points.len()];
        let mut components = Vec::new();
        for start in 0..points.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut stabilizer = Vec::new();
            for c in &centralizer {
                let j = fixed
                    .component_of(&c.apply(&points[start]))
                    .ok_or_else(|| {
                        Error::InternalConsistency(format!(
                            "{c} moves a fixed point off the fixed set"
                        ))
                    })?;
                members.insert(j);
                if j == start {
                    stabilizer.push(fixed.restrict(c, &points[start])?);
                }
            }
            for &j in &members {
                orbit_of[j] = components.len();
            }
            let action: BTreeSet<TorusMap> = stabilizer.iter().cloned().collect();
            components.push(FlatComponent {
                base_point: points[start].clone(),
                raw_components: members.len(),
                action: action.into_iter().collect(),
                stabilizer,
            });
        }
        Ok(Some(FlatSector {
            is_nontwisted: class.representative.is_trivial(),
            images,
            hom_class: class,
            sub_gram: fixed.sub_gram().cloned().unwrap_or_default(),
            fixed,
            components,
        }))
    }
}

/// One Γ-sector of a flat orbifold: a disjoint union of flat orbifolds.
#[derive(Clone, Debug)]
pub struct FlatSector {
    pub hom_class: HomClass,
    /// Images of the Γ generators.
    pub images: Vec<TorusMap>,
    pub fixed: AffineFixedSet,
    /// Gram matrix of each raw component subtorus.
    pub sub_gram: RatMatrix,
    pub is_nontwisted: bool,
    components: Vec<FlatComponent>,
}

/// A centralizer orbit of fixed-set components, with the action induced on
/// one of them.
#[derive(Clone, Debug)]
pub struct FlatComponent {
    pub base_point: Vec<BigRational>,
    pub raw_components: usize,
    /// Distinct induced maps: the effective action on the subtorus.
    pub action: Vec<TorusMap>,
    /// Induced maps of every stabilizer element, repeats included.
    stabilizer: Vec<TorusMap>,
}

impl FlatSector {
    pub fn components(&self) -> &[FlatComponent] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn dimension(&self) -> usize {
        self.fixed.dimension().unwrap_or(0)
    }

    pub fn summary(&self) -> Option<FlatFixedSet> {
        self.fixed.summary()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|m| m.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    /// Union of the component spectra, in `μ`.
    pub fn spectrum(&self, mu_max: &BigRational, budget: usize) -> Result<SpectrumSegment> {
        let mut total = SpectrumSegment::empty(ClosedForm::rational(mu_max.clone()));
        for c in &self.components {
            total = total.union(&c.spectrum(&self.sub_gram, mu_max, budget)?);
        }
        Ok(total)
    }
}

impl FlatComponent {
    pub fn spectrum(
        &self,
        sub_gram: &RatMatrix,
        mu_max: &BigRational,
        budget: usize,
    ) -> Result<SpectrumSegment> {
        let cutoff = ClosedForm::rational(mu_max.clone());
        if sub_gram.is_empty() {
            return Ok(SpectrumSegment::new([(ClosedForm::zero(), 1)], cutoff));
        }
        let dual = rat_inverse(sub_gram).ok_or(Error::SingularBasis)?;
        Ok(segment_from_map(
            averaged_multiplicities(&dual, &self.stabilizer, mu_max, budget)?,
            mu_max,
        ))
    }

    pub fn acts_trivially(&self) -> bool {
        self.action.iter().all(TorusMap::is_identity)
    }
}

pub fn total_flat_components(sectors: &[FlatSector]) -> usize {
    sectors.iter().map(FlatSector::component_count).sum()
}

/// Boundary behaviour of a flat circle orbifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CircleKind {
    /// `R / ℓZ`: eigenvalues `(2πk/ℓ)²` with multiplicity 2 for `k ≥ 1`.
    Circle,
    /// The segment `[0, ℓ/2]` with mirror ends: cosine modes only.
    Reflection,
}

/// Spectrum of a circle (or mirrored segment) of length `length`, for modes
/// `k ≤ k_max`. Eigenvalues are exact multiples of `π²`.
pub fn circle_spectrum(
    length: &ClosedForm,
    kind: CircleKind,
    k_max: u64,
) -> Result<SpectrumSegment> {
    if !length.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "circle length {length} must be positive"
        )));
    }
    let inv = length
        .inv_monomial()
        .ok_or_else(|| Error::InvalidParameter(format!("length {length} is not a monomial")))?;
    let base = inv.mul(&inv).mul(&ClosedForm::monomial(
        BigRational::from_integer(4.into()),
        1,
        2,
    ));
    let lambda = |k: u64| base.scale(&BigRational::from_integer((k * k).into()));
    let entries = (0..=k_max).map(|k| {
        let m = match (kind, k) {
            (_, 0) | (CircleKind::Reflection, _) => 1,
            (CircleKind::Circle, _) => 2,
        };
        (lambda(k), m)
    });
    Ok(SpectrumSegment::new(entries, lambda(k_max)))
}

/// First eigenvalue (in increasing order) at which two segments differ, with
/// the two multiplicities, looking only below both cutoffs.
pub fn first_disagreement(
    a: &SpectrumSegment,
    b: &SpectrumSegment,
) -> Option<(ClosedForm, u64, u64)> {
    let cutoff = if a.cutoff() < b.cutoff() {
        a.cutoff()
    } else {
        b.cutoff()
    };
    let keys: BTreeSet<&ClosedForm> = a
        .entries()
        .iter()
        .chain(b.entries())
        .map(|(l, _)| l)
        .filter(|l| *l <= cutoff)
        .collect();
    keys.into_iter().find_map(|l| {
        let (ma, mb) = (a.multiplicity(l), b.multiplicity(l));
        (ma != mb).then(|| (l.clone(), ma, mb))
    })
}

/// Lift of a lattice map to `Λ ⊕ Ze` fixing `e`, and the reflection in `e`.
pub fn reflection_in_extra_axis(n: usize) -> TorusMap {
    let mut lin = vec![vec![0i64; n + 1]; n + 1];
    for (i, row) in lin.iter_mut().enumerate() {
        row[i] = if i == n { -1 } else { 1 };
    }
    TorusMap::new(lin, vec![BigRational::zero(); n + 1]).expect("unimodular")
}

/// `Z₂ \ (R^{n+1} / (L ⊕ Ze))` with `|e| = 1` and the generator reflecting `e`.
pub fn mirrored_product(l: &Lattice) -> Result<FlatOrbifold> {
    let total = l.orthogonal_sum(&Lattice::standard(1));
    FlatOrbifold::new(total, &[reflection_in_extra_axis(l.rank())], 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_hom::parse_gamma;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn mirrored_circle_sectors() {
        let o = mirrored_product(&Lattice::standard(1)).unwrap();
        assert_eq!(o.group().order(), 2);
        let s = o.sectors(&parse_gamma("Z").unwrap(), 1000).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s[0].is_nontwisted);
        assert_eq!(s[1].fixed.raw_components(), 2);
        assert_eq!(s[1].component_count(), 2);
        // two unit circles
        let e: Vec<(ClosedForm, u64)> = [(0, 2), (1, 4), (4, 4)]
            .iter()
            .map(|&(l, m)| (ClosedForm::int(l), m))
            .collect();
        assert_eq!(s[1].spectrum(&q(4), 1000).unwrap().entries(), &e[..]);
    }

    #[test]
    fn klein_bottle_has_no_twisted_sector() {
        // glide reflection: (x, y) ↦ (x + 1/2, -y)
        let g = TorusMap::new(
            vec![vec![1, 0], vec![0, -1]],
            vec![BigRational::new(1.into(), 2.into()), q(0)],
        )
        .unwrap();
        let o = FlatOrbifold::new(Lattice::standard(2), &[g], 10).unwrap();
        let s = o.sectors(&parse_gamma("Z").unwrap(), 1000).unwrap();
        assert_eq!(s.len(), 1);
        // the Klein bottle still has the constant function once
        assert_eq!(
            o.spectrum(&q(1), 1000)
                .unwrap()
                .multiplicity(&ClosedForm::zero()),
            1
        );
    }

    #[test]
    fn shipped_pair_extends_to_isospectral_orbifolds() {
        let pair = IsospectralPair::builtin().unwrap();
        assert!(pair.shared_theta.len() > 10);
        let bound = q(PAIR_CHECK_BOUND);
        let o1 = mirrored_product(&pair.first).unwrap();
        let o2 = mirrored_product(&pair.second).unwrap();
        let d1 = o1.multiplicities(&bound, DEFAULT_VECTOR_BUDGET).unwrap();
        assert_eq!(
            d1,
            o2.multiplicities(&bound, DEFAULT_VECTOR_BUDGET).unwrap()
        );
        let s = o1.sectors(&parse_gamma("Z").unwrap(), 1000).unwrap();
        assert_eq!(s.len(), 2);
        let twisted = &s[1];
        assert_eq!(twisted.dimension(), 4);
        let heights: Vec<BigRational> = twisted
            .components()
            .iter()
            .map(|c| frac(&c.base_point[4]))
            .collect();
        assert_eq!(heights, vec![q(0), BigRational::new(1.into(), 2.into())]);
        assert!(twisted
            .components()
            .iter()
            .all(FlatComponent::acts_trivially));
    }

    #[test]
    fn circle_lengths() {
        let two = ClosedForm::int(2);
        let s = circle_spectrum(&two, CircleKind::Circle, 2).unwrap();
        assert_eq!(s.entries()[1], (ClosedForm::pi_power(2), 2));
        let r = circle_spectrum(&two, CircleKind::Reflection, 2).unwrap();
        assert_eq!(r.total_multiplicity(), 3);
        assert_eq!(
            first_disagreement(&s, &r),
            Some((ClosedForm::pi_power(2), 2, 1))
        );
    }

    #[test]
    fn laplace_scaling() {
        let t = FlatOrbifold::torus(Lattice::standard(1));
        let s = laplace_eigenvalues(&t.spectrum(&q(1), 100).unwrap());
        assert_eq!(s.entries()[1].0, ClosedForm::monomial(q(4), 1, 2));
    }
}
