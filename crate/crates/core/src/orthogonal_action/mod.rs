//! Fixed sets of linear actions on round spheres and frame spaces, and the
//! per-class sector data built from them.

mod restrict;

use std::collections::BTreeMap;

use serde::Serialize;

pub use restrict::{effective_kernel, restricted_action, FixedSubspace};

use crate::error::{Error, Result};
use crate::exactnum::ExactScalar;
use crate::finite_group::{FiniteMatrixGroup, GroupElement};
use crate::gamma_hom::{hom_classes, GroupPresentation, HomClass, Homomorphism};

/// `G ⊂ O(n)` acting on the unit sphere `S^{n-1}`.
#[derive(Clone, Debug)]
pub struct SphereAction {
    pub group: FiniteMatrixGroup,
}

/// A group of diagonal ±1 matrices acting on orthonormal `k`-frames in `R^n`.
#[derive(Clone, Debug)]
pub struct StiefelAction {
    pub group: FiniteMatrixGroup,
    pub k: usize,
}

impl SphereAction {
    pub fn new(group: FiniteMatrixGroup) -> Result<Self> {
        for g in group.elements() {
            if let GroupElement::Matrix(m) = g {
                if !m.is_orthogonal() {
                    return Err(Error::InvalidParameter(format!("{g} is not orthogonal")));
                }
            }
        }
        Ok(SphereAction { group })
    }

    pub fn n(&self) -> usize {
        self.group.dim()
    }
}

impl StiefelAction {
    pub fn new(group: FiniteMatrixGroup, k: usize) -> Result<Self> {
        if k > group.dim() {
            return Err(Error::InvalidParameter(format!(
                "frame size {k} exceeds dimension {}",
                group.dim()
            )));
        }
        if group
            .elements()
            .iter()
            .any(|g| g.diagonal_signs().is_none())
        {
            return Err(Error::NonDiagonal);
        }
        Ok(StiefelAction { group, k })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedSetKind {
    Empty,
    /// Unit sphere `S^dim`.
    Sphere {
        dim: usize,
    },
    /// Orthonormal `k`-frames in an `n`-dimensional subspace.
    Stiefel {
        n: usize,
        k: usize,
    },
    /// Flat sector; produced by the flat-orbifold code.
    Flat {
        dim: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedSetDescriptor {
    pub kind: FixedSetKind,
    pub manifold_dimension: Option<usize>,
    /// Components of the fixed set itself, before dividing by the centralizer.
    pub raw_components: usize,
    /// Components of the sector, i.e. centralizer orbits of raw components.
    pub component_count: usize,
    pub flags: Vec<String>,
}

impl FixedSetDescriptor {
    pub fn empty() -> Self {
        FixedSetDescriptor {
            kind: FixedSetKind::Empty,
            manifold_dimension: None,
            raw_components: 0,
            component_count: 0,
            flags: vec![],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.kind == FixedSetKind::Empty
    }
}

/// Which model space a sector computation runs on.
pub trait LinearAction {
    fn group(&self) -> &FiniteMatrixGroup;
    /// Fixed set of a homomorphism with the given images, whose common fixed
    /// subspace and induced centralizer action are supplied.
    fn fixed_set_from(
        &self,
        fixed: &FixedSubspace,
        restricted: &FiniteMatrixGroup,
    ) -> Result<FixedSetDescriptor>;
}

fn has_orientation_reversal(restricted: &FiniteMatrixGroup) -> Result<bool> {
    for g in restricted.elements() {
        let d = match g.diagonal_signs() {
            Some(s) => s.iter().filter(|&&x| x < 0).count() % 2 == 1,
            None => {
                let cp = g.char_poly()?;
                let n = g.dim();
                // det g = (-1)^n · cp(0)
                let det = if n % 2 == 0 {
                    cp[0].clone()
                } else {
                    cp[0].neg()
                };
                det == ExactScalar::int(-1)
            }
        };
        if d {
            return Ok(true);
        }
    }
    Ok(false)
}

impl LinearAction for SphereAction {
    fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    fn fixed_set_from(
        &self,
        fixed: &FixedSubspace,
        restricted: &FiniteMatrixGroup,
    ) -> Result<FixedSetDescriptor> {
        let d = fixed.dim();
        if d == 0 {
            return Ok(FixedSetDescriptor::empty());
        }
        let (raw, comps, flags) = if d == 1 {
            // two antipodal points; merged when the centralizer swaps them
            let swapped = restricted.order() > 1;
            (
                2,
                if swapped { 1 } else { 2 },
                vec!["zero-dimensional sphere".to_string()],
            )
        } else {
            (1, 1, vec![])
        };
        Ok(FixedSetDescriptor {
            kind: FixedSetKind::Sphere { dim: d - 1 },
            manifold_dimension: Some(d - 1),
            raw_components: raw,
            component_count: comps,
            flags,
        })
    }
}

impl LinearAction for StiefelAction {
    fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    fn fixed_set_from(
        &self,
        fixed: &FixedSubspace,
        restricted: &FiniteMatrixGroup,
    ) -> Result<FixedSetDescriptor> {
        let (n, k) = (fixed.dim(), self.k);
        if n < k {
            return Ok(FixedSetDescriptor::empty());
        }
        let dim = n * k - k * (k + 1) / 2;
        let (raw, comps, flags) = if n == k && k > 0 {
            let joined = has_orientation_reversal(restricted)?;
            (
                2,
                if joined { 1 } else { 2 },
                vec![format!(
                    "full frames V({k},{k}) have two components; counted up to the centralizer"
                )],
            )
        } else {
            (1, 1, vec![])
        };
        Ok(FixedSetDescriptor {
            kind: FixedSetKind::Stiefel { n, k },
            manifold_dimension: Some(dim),
            raw_components: raw,
            component_count: comps,
            flags,
        })
    }
}

fn fixed_set_for<A: LinearAction>(action: &A, hom: &Homomorphism) -> Result<FixedSetDescriptor> {
    let g = action.group();
    let fixed = FixedSubspace::of(g, &hom.images)?;
    let images: Vec<GroupElement> = hom.image_elements(g).into_iter().cloned().collect();
    let c = g.centralizer(&images)?;
    let r = restricted_action(&c, &fixed)?;
    action.fixed_set_from(&fixed, &r)
}

pub fn sphere_fixed_set(action: &SphereAction, hom: &Homomorphism) -> Result<FixedSetDescriptor> {
    fixed_set_for(action, hom)
}

pub fn stiefel_fixed_set(action: &StiefelAction, hom: &Homomorphism) -> Result<FixedSetDescriptor> {
    fixed_set_for(action, hom)
}

/// One Γ-sector.
#[derive(Clone, Debug)]
pub struct SectorDescriptor {
    pub hom_class: HomClass,
    pub fixed_set: FixedSetDescriptor,
    pub fixed_subspace: FixedSubspace,
    pub centralizer: FiniteMatrixGroup,
    pub effective_kernel: FiniteMatrixGroup,
    /// The centralizer acting on the fixed subspace, kernel divided out.
    pub restricted: FiniteMatrixGroup,
    pub is_nontwisted: bool,
}

impl SectorDescriptor {
    pub fn components(&self) -> usize {
        self.fixed_set.component_count
    }

    /// Short label of the representative, e.g. `(a12, I)`.
    pub fn label(&self, g: &FiniteMatrixGroup) -> String {
        let parts: Vec<String> = self
            .hom_class
            .representative
            .images
            .iter()
            .map(|&i| g.element(i).to_string())
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Sectors with nonempty fixed set, in representative order. The trivial
/// class comes first.
pub fn sector_list<A: LinearAction>(
    action: &A,
    gamma: &GroupPresentation,
    budget: u64,
) -> Result<Vec<SectorDescriptor>> {
    let g = action.group();
    let mut out = Vec::new();
    for class in hom_classes(gamma, g, budget)? {
        let fixed = FixedSubspace::of(g, &class.representative.images)?;
        let images: Vec<GroupElement> = class
            .representative
            .image_elements(g)
            .into_iter()
            .cloned()
            .collect();
        let centralizer = g.centralizer(&images)?;
        let restricted = restricted_action(&centralizer, &fixed)?;
        let fixed_set = action.fixed_set_from(&fixed, &restricted)?;
        if fixed_set.is_empty() {
            continue;
        }
        let effective_kernel = effective_kernel(&centralizer, &fixed)?;
        if effective_kernel.order() * restricted.order() != centralizer.order() {
            return Err(Error::InternalConsistency(format!(
                "kernel {} times image {} differs from centralizer {}",
                effective_kernel.order(),
                restricted.order(),
                centralizer.order()
            )));
        }
        out.push(SectorDescriptor {
            is_nontwisted: class.representative.is_trivial(),
            hom_class: class,
            fixed_set,
            fixed_subspace: fixed,
            centralizer,
            effective_kernel,
            restricted,
        });
    }
    Ok(out)
}

pub fn total_components(sectors: &[SectorDescriptor]) -> usize {
    sectors.iter().map(SectorDescriptor::components).sum()
}

/// Invariant used to group sectors into isometry types.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IsometryKey {
    pub kind: FixedSetKind,
    pub components: usize,
    pub kernel_order: usize,
    pub restricted_order: usize,
    /// Canonical form of the induced action: sorted sign vectors up to
    /// coordinate permutation when diagonal, otherwise sorted characteristic
    /// polynomials.
    pub action: Vec<String>,
    /// Whether `action` is a complete isometry invariant (signed-coordinate search).
    pub exact: bool,
}

const PERMUTATION_SEARCH_LIMIT: usize = 8;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

pub fn isometry_key(s: &SectorDescriptor) -> Result<IsometryKey> {
    let r = &s.restricted;
    let d = r.dim();
    let signs: Option<Vec<Vec<i8>>> = r.elements().iter().map(|g| g.diagonal_signs()).collect();
    let (action, exact) = match signs {
        Some(v) if d <= PERMUTATION_SEARCH_LIMIT => {
            let mut best: Option<Vec<Vec<i8>>> = None;
            for p in permutations(d) {
                let mut img: Vec<Vec<i8>> = v
                    .iter()
                    .map(|s| p.iter().map(|&i| s[i]).collect())
                    .collect();
                img.sort();
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
            let strings = best
                .unwrap_or_default()
                .iter()
                .map(|s| s.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect())
                .collect();
            (strings, true)
        }
        _ => {
            let mut polys = r
                .elements()
                .iter()
                .map(|g| {
                    g.char_poly().map(|c| {
                        c.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            polys.sort();
            (polys, false)
        }
    };
    Ok(IsometryKey {
        kind: s.fixed_set.kind.clone(),
        components: s.components(),
        kernel_order: s.effective_kernel.order(),
        restricted_order: r.order(),
        action,
        exact,
    })
}

/// Groups sector indices by [`isometry_key`], in order of first appearance.
pub fn isometry_groups(sectors: &[SectorDescriptor]) -> Result<Vec<(IsometryKey, Vec<usize>)>> {
    let mut order: Vec<IsometryKey> = Vec::new();
    let mut groups: BTreeMap<IsometryKey, Vec<usize>> = BTreeMap::new();
    for (i, s) in sectors.iter().enumerate() {
        let k = isometry_key(s)?;
        if !groups.contains_key(&k) {
            order.push(k.clone());
        }
        groups.entry(k).or_default().push(i);
    }
    Ok(order
        .into_iter()
        .map(|k| {
            let v = groups.remove(&k).unwrap();
            (k, v)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{constructions::sign_generators, generate_group};
    use crate::gamma_hom::{builtin_gamma, GammaKind, DEFAULT_HOM_BUDGET};

    fn k(which: u8) -> FiniteMatrixGroup {
        let gens = if which == 1 {
            sign_generators(6, &[&[1, 2], &[1, 3], &[1, 4, 5, 6]])
        } else {
            sign_generators(6, &[&[1, 2], &[3, 4], &[5, 6]])
        };
        generate_group(6, gens, 100).unwrap()
    }

    fn hom_to(g: &FiniteMatrixGroup, neg: &[usize]) -> Homomorphism {
        Homomorphism {
            images: vec![g.index_of(&GroupElement::sign_diagonal(6, neg)).unwrap()],
        }
    }

    #[test]
    fn sphere_fixed_sets() {
        let a = SphereAction::new(k(1)).unwrap();
        let f = sphere_fixed_set(&a, &hom_to(&a.group, &[1, 4, 5, 6])).unwrap();
        assert_eq!(
            (f.kind.clone(), f.component_count),
            (FixedSetKind::Sphere { dim: 1 }, 1)
        );
        assert!(sphere_fixed_set(&a, &hom_to(&a.group, &[1, 2, 3, 4, 5, 6]))
            .unwrap()
            .is_empty());
        let f = sphere_fixed_set(&a, &hom_to(&a.group, &[])).unwrap();
        assert_eq!(f.kind, FixedSetKind::Sphere { dim: 5 });
    }

    #[test]
    fn stiefel_fixed_sets() {
        let a = StiefelAction::new(k(1), 3).unwrap();
        let f = stiefel_fixed_set(&a, &hom_to(&a.group, &[1, 2])).unwrap();
        assert_eq!((f.manifold_dimension, f.component_count), (Some(6), 1));
        assert!(stiefel_fixed_set(&a, &hom_to(&a.group, &[1, 4, 5, 6]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn stiefel_component_totals() {
        for l in 1..=3usize {
            let gamma = builtin_gamma(GammaKind::FreeAbelian(l)).unwrap();
            let s1 = sector_list(
                &StiefelAction::new(k(1), 3).unwrap(),
                &gamma,
                DEFAULT_HOM_BUDGET,
            )
            .unwrap();
            let s2 = sector_list(
                &StiefelAction::new(k(2), 3).unwrap(),
                &gamma,
                DEFAULT_HOM_BUDGET,
            )
            .unwrap();
            assert_eq!(total_components(&s1), 4usize.pow(l as u32));
            assert_eq!(total_components(&s2), 3 * 2usize.pow(l as u32) - 2);
            assert_eq!(s1.iter().filter(|s| s.is_nontwisted).count(), 1);
        }
    }

    #[test]
    fn isometric_copies_for_z2() {
        let gamma = builtin_gamma(GammaKind::FreeAbelian(2)).unwrap();
        let s = sector_list(
            &StiefelAction::new(k(1), 3).unwrap(),
            &gamma,
            DEFAULT_HOM_BUDGET,
        )
        .unwrap();
        let sizes: Vec<usize> = isometry_groups(&s)
            .unwrap()
            .iter()
            .map(|(_, v)| v.len())
            .collect();
        assert_eq!(sizes, vec![1, 9, 6]);
    }

    #[test]
    fn effective_kernels_on_the_sphere() {
        let gamma = builtin_gamma(GammaKind::FreeAbelian(1)).unwrap();
        let s = sector_list(
            &SphereAction::new(k(2)).unwrap(),
            &gamma,
            DEFAULT_HOM_BUDGET,
        )
        .unwrap();
        let g = k(2);
        let a1234 = s.iter().find(|x| x.label(&g) == "(a1234)").unwrap();
        assert_eq!(a1234.effective_kernel.order(), 4);
        let s = sector_list(
            &SphereAction::new(k(1)).unwrap(),
            &gamma,
            DEFAULT_HOM_BUDGET,
        )
        .unwrap();
        let a12 = s.iter().find(|x| x.label(&k(1)) == "(a12)").unwrap();
        assert_eq!(a12.effective_kernel.order(), 2);
        assert!(s[0].is_nontwisted && s[0].effective_kernel.order() == 1);
    }

    #[test]
    fn rejects_non_diagonal_frames() {
        let g =
            generate_group(2, vec![GroupElement::permutation(vec![1, 0]).unwrap()], 10).unwrap();
        assert!(matches!(StiefelAction::new(g, 1), Err(Error::NonDiagonal)));
    }
}
