//! Randomized checks against brute-force oracles.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use gamma_sectors::exactnum::{smith_normal_form, ExactScalar, IntMatrix};
use gamma_sectors::finite_group::{generate_group, FiniteMatrixGroup, GroupElement};
use gamma_sectors::flat_orbifold::{is_fixed_point, AffineFixedSet, Lattice, TorusMap};
use gamma_sectors::sphere_spectrum::{harmonic_table, lens_harmonic_table, lens_rotation_group};

const GROUP_CAP: usize = 384;

fn signed_perm(n: usize) -> impl Strategy<Value = GroupElement> {
    (
        Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(prop::bool::ANY, n),
    )
        .prop_map(|(p, s)| {
            GroupElement::signed_permutation(p, s.iter().map(|&b| if b { -1 } else { 1 }).collect())
                .unwrap()
        })
}

/// A subgroup of the signed permutation group on `n ≤ 8` letters, falling
/// back to the cyclic group of the first generator when the span is large.
fn signed_subgroup() -> impl Strategy<Value = FiniteMatrixGroup> {
    (1usize..=8)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(signed_perm(n), 1..=3)))
        .prop_map(
            |(n, gens)| match generate_group(n, gens.clone(), GROUP_CAP) {
                Ok(g) => g,
                Err(_) => generate_group(n, vec![gens[0].clone()], GROUP_CAP).unwrap(),
            },
        )
}

/// Monomial matrix as (target row, sign) per column.
fn monomial(g: &GroupElement) -> Vec<(usize, i64)> {
    let m = g.to_matrix();
    (0..m.cols())
        .map(|j| {
            let i = (0..m.rows()).find(|&i| !m.get(i, j).is_zero()).unwrap();
            (i, m.get(i, j).as_integer().unwrap().try_into().unwrap())
        })
        .collect()
}

fn exponents(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=k)
        .flat_map(|a| {
            exponents(n - 1, k - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

/// Invariant polynomials of degree `k`, averaging traces on monomials.
fn invariant_count(g: &FiniteMatrixGroup, k: usize) -> i64 {
    let monos = exponents(g.dim(), k);
    let total: i64 = g
        .elements()
        .iter()
        .map(|e| {
            let m = monomial(e);
            monos
                .iter()
                .map(|a| {
                    let mut image = vec![0; a.len()];
                    let mut sign = 1;
                    for (j, &aj) in a.iter().enumerate() {
                        image[m[j].0] += aj;
                        if aj % 2 == 1 {
                            sign *= m[j].1;
                        }
                    }
                    if &image == a {
                        sign
                    } else {
                        0
                    }
                })
                .sum::<i64>()
        })
        .sum();
    assert_eq!(total % g.order() as i64, 0);
    total / g.order() as i64
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn molien_counts_are_nonnegative_integers(g in signed_subgroup()) {
        let t = harmonic_table(&g, 8).unwrap();
        prop_assert_eq!(t.dims.len(), 9);
        prop_assert_eq!(t.dims[0], 1);
        let c: Vec<i64> = (0..=4).map(|k| invariant_count(&g, k)).collect();
        for k in 0..=4 {
            let h = c[k] - if k >= 2 { c[k - 2] } else { 0 };
            prop_assert_eq!(t.dims[k] as i64, h, "degree {}", k);
        }
    }

    #[test]
    fn orbit_stabilizer(g in signed_subgroup()) {
        let n = g.dim();
        let v: Vec<ExactScalar> = (0..n).map(|i| ExactScalar::int(1 + (i as i64 % 3))).collect();
        let orbit: HashSet<Vec<ExactScalar>> = g.elements().iter().map(|e| e.apply(&v)).collect();
        let stab = g.elements().iter().filter(|e| e.apply(&v) == v).count();
        prop_assert_eq!(orbit.len() * stab, g.order());

        let classes = g.conjugacy_classes();
        prop_assert_eq!(classes.iter().map(|c| c.members.len()).sum::<usize>(), g.order());
        for c in classes {
            let cent = g.centralizer_indices(&[c.representative_index]).len();
            prop_assert_eq!(c.members.len() * cent, g.order());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn lens_counts_match_molien(q in 1i64..=12, weights in proptest::collection::vec(0i64..12, 1..=3)) {
        let weights: Vec<i64> = weights.iter().map(|w| w % q).collect();
        let direct = lens_harmonic_table(q, &weights, 12).unwrap();
        let g = lens_rotation_group(q, &weights).unwrap();
        let molien = harmonic_table(&g, 12).unwrap();
        prop_assert_eq!(direct.dims, molien.dims);
    }
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_reconstructs(rows in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r)
    })) {
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(int_rows(&s.u.mul(&a).mul(&s.v)), int_rows(&s.d));
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        let d = int_rows(&s.d);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let ok = if i == j { !x.is_negative() } else { x.is_zero() };
                prop_assert!(ok, "entry ({}, {}) = {}", i, j, x);
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides, "{} does not divide {}", w[0], w[1]);
        }
    }
}

fn torus_map() -> impl Strategy<Value = TorusMap> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                signed_perm(n),
                proptest::collection::vec(0i64..4, n),
                1i64..=4,
            )
        })
        .prop_map(|(g, shift, den)| {
            let n = g.dim();
            let m = monomial(&g);
            let mut lin = vec![vec![0i64; n]; n];
            for (j, &(i, s)) in m.iter().enumerate() {
                lin[i][j] = s;
            }
            let shift = shift
                .iter()
                .map(|&s| BigRational::new(s.into(), den.into()))
                .collect();
            TorusMap::new(lin, shift).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn affine_fixed_points(m in torus_map()) {
        let n = m.dim();
        let f = AffineFixedSet::of(std::slice::from_ref(&m), Lattice::standard(n).gram()).unwrap();
        let points = f.component_points();
        prop_assert_eq!(points.len(), f.raw_components());
        for (i, p) in points.iter().enumerate() {
            prop_assert!(is_fixed_point(&m, p));
            prop_assert_eq!(f.component_of(p), Some(i));
        }
        // substitute every point of a grid fine enough to hold all isolated fixed points
        let grid = 24i64;
        let mut hit: HashMap<usize, usize> = HashMap::new();
        let total = (grid as usize).pow(n as u32);
        for idx in 0..total {
            let x: Vec<BigRational> = (0..n)
                .map(|i| BigRational::new(((idx / (grid as usize).pow(i as u32)) % grid as usize).into(), grid.into()))
                .collect();
            let fixed = is_fixed_point(&m, &x);
            let comp = f.component_of(&x);
            prop_assert_eq!(fixed, comp.is_some());
            if let Some(c) = comp {
                *hit.entry(c).or_default() += 1;
            }
        }
        prop_assert_eq!(hit.len(), f.raw_components());
        if f.dimension() == Some(0) {
            prop_assert!(hit.values().all(|&c| c == 1));
        }
    }
}
