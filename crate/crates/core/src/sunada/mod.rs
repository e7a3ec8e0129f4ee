//! Sunada-type checks: almost conjugacy of subgroups, bijections of sectors
//! certifying Γ-isospectrality, and singular strata of diagonal biquotients.

mod biquotient;

pub use biquotient::{biquotient_lowest_stratum, StratumWitness};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_group::{
    is_almost_conjugate, AlmostConjugacy, AmbientClassInvariant, FiniteMatrixGroup,
};
use crate::gamma_hom::GroupPresentation;
use crate::orthogonal_action::{sector_list, FixedSetKind, LinearAction, SectorDescriptor};

#[derive(Clone, Debug)]
pub struct SunadaTriple {
    pub ambient: AmbientClassInvariant,
    pub h1: FiniteMatrixGroup,
    pub h2: FiniteMatrixGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct SunadaReport {
    pub almost_conjugate: AlmostConjugacy,
    /// `Some` when conjugacy could be decided: in a finite ambient group, or
    /// in `O(n)` for groups of diagonal sign matrices.
    pub conjugate: Option<bool>,
}

impl SunadaReport {
    /// Almost conjugate but not conjugate: the quotients are isospectral and
    /// possibly not isometric.
    pub fn is_proper_pair(&self) -> bool {
        self.almost_conjugate.almost_conjugate && self.conjugate == Some(false)
    }
}

fn sign_masks(h: &FiniteMatrixGroup) -> Option<Vec<u64>> {
    if h.dim() > 64 {
        return None;
    }
    h.elements()
        .iter()
        .map(|g| {
            g.diagonal_signs().map(|s| {
                s.iter()
                    .enumerate()
                    .filter(|(_, &x)| x < 0)
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
        })
        .collect()
}

/// Coordinate permutation `σ` with `σ H₁ σ⁻¹ = H₂` for groups of diagonal sign
/// matrices. Conjugacy of such groups in `O(n)` (or `SO(n)`) reduces to this.
pub fn diagonal_conjugator(
    h1: &FiniteMatrixGroup,
    h2: &FiniteMatrixGroup,
) -> Option<Option<Vec<usize>>> {
    let (a, b) = (sign_masks(h1)?, sign_masks(h2)?);
    let n = h1.dim();
    if n != h2.dim() || a.len() != b.len() {
        return Some(None);
    }
    let column = |set: &[u64], i: usize| set.iter().map(|m| m >> i & 1).collect::<Vec<_>>();
    // projections onto chosen coordinates must agree as multisets of rows
    fn project(set: &[u64], coords: &[usize]) -> Vec<u64> {
        let mut v: Vec<u64> = set
            .iter()
            .map(|m| {
                coords
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &c)| acc | (m >> c & 1) << k)
            })
            .collect();
        v.sort_unstable();
        v
    }
    fn rec(a: &[u64], b: &[u64], n: usize, chosen: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = chosen.len();
        if k == n {
            return true;
        }
        let left: Vec<usize> = (0..=k).collect();
        for j in 0..n {
            if used[j] {
                continue;
            }
            chosen.push(j);
            if project(a, &left) == project(b, chosen) {
                used[j] = true;
                if rec(a, b, n, chosen, used) {
                    return true;
                }
                used[j] = false;
            }
            chosen.pop();
        }
        false
    }
    // quick reject on column weights
    let mut wa: Vec<usize> = (0..n)
        .map(|i| column(&a, i).iter().sum::<u64>() as usize)
        .collect();
    let mut wb: Vec<usize> = (0..n)
        .map(|i| column(&b, i).iter().sum::<u64>() as usize)
        .collect();
    wa.sort_unstable();
    wb.sort_unstable();
    if wa != wb {
        return Some(None);
    }
    let mut chosen = Vec::new();
    let mut used = vec![false; n];
    Some(rec(&a, &b, n, &mut chosen, &mut used).then_some(chosen))
}

pub fn check_sunada(t: &SunadaTriple) -> Result<SunadaReport> {
    let almost = is_almost_conjugate(&t.ambient, &t.h1, &t.h2)?;
    let conjugate = match &t.ambient {
        AmbientClassInvariant::FiniteAmbient(g) => Some(g.find_conjugator(&t.h1, &t.h2)?.is_some()),
        AmbientClassInvariant::OrthogonalAmbient => {
            diagonal_conjugator(&t.h1, &t.h2).map(|c| c.is_some())
        }
    };
    Ok(SunadaReport {
        almost_conjugate: almost,
        conjugate,
    })
}

/// Fixed-set invariants used to bucket sectors before matching.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FixedSetMatch {
    pub kind: FixedSetKind,
    pub components: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub class1: String,
    pub class2: String,
    pub fixed: FixedSetMatch,
    /// Induced centralizer actions on the common fixed subspace.
    pub centralizers: AlmostConjugacy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum CertificateStatus {
    Certified,
    Failed(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaCertificate {
    pub gamma: String,
    pub pairing: Vec<PairRecord>,
    pub unmatched_first: Vec<String>,
    pub unmatched_second: Vec<String>,
    pub status: CertificateStatus,
    pub notes: Vec<String>,
}

impl GammaCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertificateStatus::Certified
    }
}

fn key(s: &SectorDescriptor) -> FixedSetMatch {
    FixedSetMatch {
        kind: s.fixed_set.kind.clone(),
        components: s.components(),
    }
}

/// Tries to pair the Γ-sectors of two actions on the same model space so that
/// fixed sets agree and the induced centralizer actions are almost conjugate.
pub fn certify_gamma_isospectral<A: LinearAction>(
    a1: &A,
    a2: &A,
    gamma: &GroupPresentation,
    budget: u64,
) -> Result<GammaCertificate> {
    if a1.group().dim() != a2.group().dim() {
        return Err(Error::DimensionMismatch(
            "the two actions live on different model spaces".into(),
        ));
    }
    let s1 = sector_list(a1, gamma, budget)?;
    let s2 = sector_list(a2, gamma, budget)?;
    let labels1: Vec<String> = s1.iter().map(|s| s.label(a1.group())).collect();
    let labels2: Vec<String> = s2.iter().map(|s| s.label(a2.group())).collect();

    let mut buckets: BTreeMap<FixedSetMatch, Vec<usize>> = BTreeMap::new();
    for (j, s) in s2.iter().enumerate() {
        buckets.entry(key(s)).or_default().push(j);
    }
    let mut used = vec![false; s2.len()];
    let mut pairing = Vec::new();
    let mut unmatched_first = Vec::new();
    let mut mismatch: Option<String> = None;
    for (i, s) in s1.iter().enumerate() {
        let candidates = buckets.get(&key(s)).cloned().unwrap_or_default();
        let mut found = None;
        let mut any_free = false;
        for j in candidates.into_iter().filter(|&j| !used[j]) {
            any_free = true;
            if s.restricted.dim() != s2[j].restricted.dim() {
                continue;
            }
            let ac = is_almost_conjugate(
                &AmbientClassInvariant::OrthogonalAmbient,
                &s.restricted,
                &s2[j].restricted,
            )?;
            if ac.almost_conjugate {
                found = Some((j, ac));
                break;
            }
        }
        match found {
            Some((j, ac)) => {
                used[j] = true;
                pairing.push(PairRecord {
                    class1: labels1[i].clone(),
                    class2: labels2[j].clone(),
                    fixed: key(s),
                    centralizers: ac,
                });
            }
            None => {
                if any_free && mismatch.is_none() {
                    mismatch = Some(format!(
                        "centralizer mismatch: no sector with the fixed set of {} has an almost conjugate centralizer action",
                        labels1[i]
                    ));
                }
                unmatched_first.push(labels1[i].clone());
            }
        }
    }
    let unmatched_second: Vec<String> = (0..s2.len())
        .filter(|&j| !used[j])
        .map(|j| labels2[j].clone())
        .collect();
    let status = if let Some(m) = mismatch {
        CertificateStatus::Failed(m)
    } else if let Some(u) = unmatched_first.first().or(unmatched_second.first()) {
        CertificateStatus::Failed(format!("unmatched class {u}"))
    } else {
        CertificateStatus::Certified
    };
    let mut notes = vec![
        "isometry groups of fixed sets are replaced by restricted orthogonal groups; this can only be stricter".to_string(),
    ];
    if status != CertificateStatus::Certified {
        notes.push(
            "a failed certificate does not show that the quotients are not isospectral".into(),
        );
    }
    Ok(GammaCertificate {
        gamma: gamma.to_string(),
        pairing,
        unmatched_first,
        unmatched_second,
        status,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::constructions::sign_generators;
    use crate::finite_group::constructions::{block_sum, diagonal_copies};
    use crate::finite_group::{generate_group, GroupElement};
    use crate::gamma_hom::parse_gamma;
    use crate::orthogonal_action::{SphereAction, StiefelAction};

    fn group(n: usize, gens: &[&[usize]]) -> FiniteMatrixGroup {
        generate_group(n, sign_generators(n, gens), 1 << 12).unwrap()
    }

    fn k1() -> FiniteMatrixGroup {
        group(6, &[&[1, 2], &[1, 3], &[1, 4, 5, 6]])
    }

    fn k2() -> FiniteMatrixGroup {
        group(6, &[&[1, 2], &[3, 4], &[5, 6]])
    }

    #[test]
    fn almost_but_not_conjugate() {
        let t = SunadaTriple {
            ambient: AmbientClassInvariant::OrthogonalAmbient,
            h1: k1(),
            h2: k2(),
        };
        let r = check_sunada(&t).unwrap();
        assert!(r.is_proper_pair());
    }

    #[test]
    fn permuted_copy_is_conjugate() {
        let h = group(5, &[&[1, 2], &[2, 3, 4]]);
        let p = group(5, &[&[4, 5], &[1, 3, 5]]);
        let sigma = diagonal_conjugator(&h, &p).unwrap().unwrap();
        // every element of h lands in p under the permutation
        let pm = sign_masks(&p).unwrap();
        for m in sign_masks(&h).unwrap() {
            let img = (0..5)
                .filter(|&i| m >> i & 1 == 1)
                .fold(0u64, |acc, i| acc | 1 << sigma[i]);
            assert!(pm.contains(&img));
        }
        let t = SunadaTriple {
            ambient: AmbientClassInvariant::OrthogonalAmbient,
            h1: h,
            h2: p,
        };
        assert_eq!(check_sunada(&t).unwrap().conjugate, Some(true));
    }

    #[test]
    fn finite_ambient_conjugacy() {
        // two reflections inside the symmetric group on three letters
        let s3 = generate_group(
            3,
            vec![
                GroupElement::permutation(vec![1, 0, 2]).unwrap(),
                GroupElement::permutation(vec![0, 2, 1]).unwrap(),
            ],
            10,
        )
        .unwrap();
        let a = generate_group(
            3,
            vec![GroupElement::permutation(vec![1, 0, 2]).unwrap()],
            10,
        )
        .unwrap();
        let b = generate_group(
            3,
            vec![GroupElement::permutation(vec![2, 1, 0]).unwrap()],
            10,
        )
        .unwrap();
        let r = check_sunada(&SunadaTriple {
            ambient: AmbientClassInvariant::FiniteAmbient(s3),
            h1: a,
            h2: b,
        })
        .unwrap();
        assert!(r.almost_conjugate.almost_conjugate);
        assert_eq!(r.conjugate, Some(true));
    }

    #[test]
    fn sphere_pair_is_not_certified() {
        let (a1, a2) = (
            SphereAction::new(k1()).unwrap(),
            SphereAction::new(k2()).unwrap(),
        );
        let gamma = parse_gamma("Z").unwrap();
        let c = certify_gamma_isospectral(&a1, &a2, &gamma, 100_000).unwrap();
        match &c.status {
            CertificateStatus::Failed(why) => {
                assert!(why.starts_with("centralizer mismatch"), "{why}")
            }
            s => panic!("{s:?}"),
        }
        assert!(c.notes.iter().any(|n| n.contains("does not show")));
        let same = certify_gamma_isospectral(&a1, &a1, &gamma, 100_000).unwrap();
        assert!(same.is_certified());
        assert_eq!(same.pairing.len(), 7);
    }

    fn frame_group(k: &[&[usize]]) -> FiniteMatrixGroup {
        let id3 = GroupElement::sign_diagonal(3, &[]);
        let mut gens = sign_generators(15, &[&[1, 2], &[2, 3]]);
        for g in diagonal_copies(&sign_generators(6, k), 2) {
            gens.push(block_sum(&id3, &g));
        }
        generate_group(15, gens, 1 << 10).unwrap()
    }

    #[test]
    fn frame_pair_certifies() {
        let g1 = frame_group(&[&[1, 2], &[1, 3], &[1, 4, 5, 6]]);
        let g2 = frame_group(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!((g1.order(), g2.order()), (32, 32));
        let t = SunadaTriple {
            ambient: AmbientClassInvariant::OrthogonalAmbient,
            h1: g1.clone(),
            h2: g2.clone(),
        };
        assert!(check_sunada(&t).unwrap().is_proper_pair());
        let (a1, a2) = (
            StiefelAction::new(g1, 12).unwrap(),
            StiefelAction::new(g2, 12).unwrap(),
        );
        for (name, classes) in [("Z", 4), ("Z^2", 16)] {
            let c =
                certify_gamma_isospectral(&a1, &a2, &parse_gamma(name).unwrap(), 1 << 20).unwrap();
            assert!(c.is_certified(), "{name}: {:?}", c.status);
            assert_eq!(c.pairing.len(), classes);
            assert!(c.pairing.iter().all(|p| p.class1 == p.class2));
        }
    }
}
