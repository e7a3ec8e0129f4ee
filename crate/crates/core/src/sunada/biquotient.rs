//! Singular strata of `L \ SO(N) / R` for groups `L`, `R` of diagonal sign
//! matrices, acting by `x ↦ a x b⁻¹`.
//!
//! The isotropy of `x` is the graph of `b ↦ x b x⁻¹` on some `B ≤ R`. Such a
//! graph of an injective `φ: B → L` fixes a point iff `B` and `φ(B)` carry the
//! same coordinate characters with the same multiplicities `m_χ`. Its fixed
//! set is then a coset of the common centralizer `S(∏ O(m_χ))`, of dimension
//! `Σ m_χ(m_χ − 1)/2`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_group::FiniteMatrixGroup;
use crate::sectors::LowestStratum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumWitness {
    pub lowest: LowestStratum,
    /// Generators of `B ≤ R` and their images in `L`, as negated coordinates
    /// (1-based).
    pub right: Vec<Vec<usize>>,
    pub left: Vec<Vec<usize>>,
    /// Order of the generic isotropy group.
    pub generic_isotropy: usize,
    /// Graph subgroups tried.
    pub examined: u64,
}

fn masks(g: &FiniteMatrixGroup) -> Result<Vec<u64>> {
    if g.dim() > 64 {
        return Err(Error::InvalidParameter(
            "biquotient strata need at most 64 coordinates".into(),
        ));
    }
    g.elements()
        .iter()
        .map(|e| {
            e.diagonal_signs()
                .map(|s| {
                    s.iter()
                        .enumerate()
                        .filter(|(_, &x)| x < 0)
                        .fold(0u64, |m, (i, _)| m | 1 << i)
                })
                .ok_or(Error::NonDiagonal)
        })
        .collect()
}

fn span(basis: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &b in basis {
        let more: Vec<u64> = out.iter().map(|x| x ^ b).collect();
        out.extend(more);
    }
    out
}

fn coords(m: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Character multiplicities: coordinate `i` ↦ the bit pattern of the basis at `i`.
fn characters(basis: &[u64], n: usize) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for i in 0..n {
        let key = basis
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, b)| acc | (b >> i & 1) << k);
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

/// Subgroups of an elementary abelian 2-group, one reduced basis each.
fn subgroup_bases(elems: &[u64]) -> Vec<Vec<u64>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = vec![vec![]];
    while let Some(b) = stack.pop() {
        let mut s = span(&b);
        s.sort_unstable();
        if !seen.insert(s.clone()) {
            continue;
        }
        out.push(b.clone());
        for &e in elems {
            if !s.contains(&e) {
                let mut nb = b.clone();
                nb.push(e);
                stack.push(nb);
            }
        }
    }
    out
}

/// Minimum dimension of a fixed set of a non-generic isotropy group.
pub fn biquotient_lowest_stratum(
    left: &FiniteMatrixGroup,
    right: &FiniteMatrixGroup,
    budget: u64,
) -> Result<StratumWitness> {
    let n = left.dim();
    if right.dim() != n {
        return Err(Error::DimensionMismatch(
            "left and right groups act in different dimensions".into(),
        ));
    }
    let (l, r) = (masks(left)?, masks(right)?);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // generic isotropy: pairs (a, a) with a central in SO(N), i.e. ±I
    let central = |m: u64| m == 0 || m == full;
    let generic = if l.contains(&full) && r.contains(&full) {
        2
    } else {
        1
    };

    let mut best: Option<(usize, Vec<u64>, Vec<u64>)> = None;
    let mut examined = 0u64;
    for basis in subgroup_bases(&r) {
        if basis.is_empty() {
            continue;
        }
        let target = characters(&basis, n);
        let sub = span(&basis);
        // images of the basis, chosen one at a time; traces must agree on the partial span
        let mut stack: Vec<Vec<u64>> = vec![vec![]];
        while let Some(img) = stack.pop() {
            examined += 1;
            if examined > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            let k = img.len();
            if k == basis.len() {
                if characters(&img, n) != target {
                    continue;
                }
                // skip graphs inside the generic isotropy
                if sub.iter().all(|&b| central(b)) && basis == img {
                    continue;
                }
                let dim: usize = target.values().map(|m| m * (m - 1) / 2).sum();
                if best.as_ref().is_none_or(|(d, _, _)| dim < *d) {
                    best = Some((dim, basis.clone(), img));
                }
                continue;
            }
            let partial = span(&img);
            let bsub = span(&basis[..=k]);
            for &a in &l {
                if partial.contains(&a) {
                    continue;
                }
                // elements b + b_k ↦ φ(b) + a need equal numbers of negated coordinates
                let ok = partial
                    .iter()
                    .zip(&bsub[partial.len()..])
                    .all(|(p, b)| (p ^ a).count_ones() == b.count_ones());
                if ok {
                    let mut next = img.clone();
                    next.push(a);
                    stack.push(next);
                }
            }
        }
    }
    let (lowest, right_gens, left_gens) = match best {
        Some((d, b, a)) => (LowestStratum::Dimension(d), b, a),
        None => (LowestStratum::Manifold, vec![], vec![]),
    };
    Ok(StratumWitness {
        lowest,
        right: right_gens.iter().map(|&m| coords(m, n)).collect(),
        left: left_gens.iter().map(|&m| coords(m, n)).collect(),
        generic_isotropy: generic,
        examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::constructions::{diagonal_copies, sign_generators};
    use crate::finite_group::generate_group;

    fn doubled(gens: &[&[usize]]) -> FiniteMatrixGroup {
        generate_group(12, diagonal_copies(&sign_generators(6, gens), 2), 1 << 10).unwrap()
    }

    #[test]
    fn doubled_pair_strata() {
        let k1 = doubled(&[&[1, 2], &[1, 3], &[1, 4, 5, 6]]);
        let k2 = doubled(&[&[1, 2], &[3, 4], &[5, 6]]);
        let w1 = biquotient_lowest_stratum(&k1, &k1, 1 << 24).unwrap();
        let w2 = biquotient_lowest_stratum(&k2, &k1, 1 << 24).unwrap();
        assert_eq!(w1.lowest, LowestStratum::Dimension(18));
        assert_eq!(w2.lowest, LowestStratum::Dimension(34));
        assert_eq!((w1.generic_isotropy, w2.generic_isotropy), (2, 2));
        assert_eq!(w1.right.len(), 3);
    }

    #[test]
    fn free_action_is_a_manifold() {
        // a single sign change on the right has no matching left partner
        let l = generate_group(4, vec![], 4).unwrap();
        let r = generate_group(4, sign_generators(4, &[&[1, 2]]), 4).unwrap();
        assert_eq!(
            biquotient_lowest_stratum(&l, &r, 1000).unwrap().lowest,
            LowestStratum::Manifold
        );
        assert!(matches!(
            biquotient_lowest_stratum(&r, &r, 0),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn single_involution_stratum() {
        // x a12 x⁻¹ = a12 on SO(4): centralizer SO(2)×SO(2), dimension 2
        let r = generate_group(4, sign_generators(4, &[&[1, 2]]), 4).unwrap();
        assert_eq!(
            biquotient_lowest_stratum(&r, &r, 1000).unwrap().lowest,
            LowestStratum::Dimension(2)
        );
    }
}
