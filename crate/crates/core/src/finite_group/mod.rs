//! Finite groups of exact orthogonal matrices and (signed) permutations.

mod almost;
pub mod constructions;
mod element;
mod group;
pub mod input;

pub use almost::{
    is_almost_conjugate, AlmostConjugacy, AmbientClassInvariant, InvariantValue, WitnessRow,
};
pub use element::GroupElement;
pub use group::{generate_group, ConjugacyClass, FiniteMatrixGroup, DEFAULT_GROUP_CAP};
pub use input::{GeneratorSpec, GroupSpec};

#[cfg(test)]
mod tests {
    use super::constructions::*;
    use super::*;

    fn k1() -> FiniteMatrixGroup {
        let g = sign_generators(6, &[&[1, 2], &[1, 3], &[1, 4, 5, 6]]);
        generate_group(6, g, DEFAULT_GROUP_CAP).unwrap()
    }

    fn k2() -> FiniteMatrixGroup {
        let g = sign_generators(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        generate_group(6, g, DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn k1_elements() {
        let g = k1();
        assert_eq!(g.order(), 8);
        assert_eq!(g.conjugacy_classes().len(), 8);
        let names: std::collections::BTreeSet<String> =
            g.elements().iter().map(|e| e.to_string()).collect();
        let expect = [
            "I", "a123456", "a12", "a13", "a23", "a1456", "a2456", "a3456",
        ];
        assert_eq!(names, expect.iter().map(|s| s.to_string()).collect());
        let a12 = GroupElement::sign_diagonal(6, &[1, 2]);
        assert_eq!(g.centralizer(&[a12]).unwrap().order(), 8);
    }

    #[test]
    fn heisenberg_mod_three() {
        let h = generate_group(27, heisenberg_regular(3).unwrap(), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(h.order(), 27);
        assert!(!h.is_abelian());
        assert_eq!(h.conjugacy_classes().len(), 11);
        // the commutator of the generators is central
        let (x, y) = (
            h.index_of(&h.generators()[0]).unwrap(),
            h.index_of(&h.generators()[1]).unwrap(),
        );
        let z = h.mul(h.mul(x, y), h.mul(h.inv(x), h.inv(y)));
        assert_ne!(z, 0);
        assert_eq!(h.centralizer(&[h.element(z).clone()]).unwrap().order(), 27);

        let e = generate_group(
            27,
            elementary_abelian_regular(3).unwrap(),
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        assert_eq!(e.order(), 27);
        assert_eq!(e.conjugacy_classes().len(), 27);
    }

    #[test]
    fn product_action_orders() {
        let f = vec![
            heisenberg_regular(3).unwrap(),
            vec![GroupElement::permutation(vec![1, 2, 0]).unwrap()],
        ];
        let g = generate_group(81, product_action(&f).unwrap(), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 81);
    }

    #[test]
    fn almost_conjugacy_verdicts() {
        let inv = AmbientClassInvariant::OrthogonalAmbient;
        let r = is_almost_conjugate(&inv, &k1(), &k2()).unwrap();
        assert!(r.almost_conjugate);
        assert_eq!(r.mode, "orthogonal_ambient");
        assert!(
            is_almost_conjugate(&inv, &k1(), &k1())
                .unwrap()
                .almost_conjugate
        );

        let h1 = generate_group(6, sign_generators(6, &[&[1, 2]]), 10).unwrap();
        let h2 = generate_group(6, sign_generators(6, &[&[1, 4, 5, 6]]), 10).unwrap();
        assert!(
            !is_almost_conjugate(&inv, &h1, &h2)
                .unwrap()
                .almost_conjugate
        );

        let h3 = generate_group(5, vec![], 10).unwrap();
        assert!(is_almost_conjugate(&inv, &h1, &h3).is_err());
    }

    #[test]
    fn conjugate_subgroups_are_almost_conjugate_in_finite_mode() {
        let r = GroupElement::permutation(vec![1, 2, 0, 3]).unwrap();
        let s = GroupElement::permutation(vec![1, 0, 2, 3]).unwrap();
        let t = GroupElement::permutation(vec![0, 1, 3, 2]).unwrap();
        let s4 = generate_group(4, vec![r, s, t], 100).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.conjugacy_classes().len(), 5);
        let a = s4.subgroup_generated_by(&[s4
            .index_of(&GroupElement::permutation(vec![1, 0, 2, 3]).unwrap())
            .unwrap()]);
        let b = s4.subgroup_generated_by(&[s4
            .index_of(&GroupElement::permutation(vec![0, 1, 3, 2]).unwrap())
            .unwrap()]);
        assert!(s4.find_conjugator(&a, &b).unwrap().is_some());
        let inv = AmbientClassInvariant::FiniteAmbient(s4.clone());
        assert!(is_almost_conjugate(&inv, &a, &b).unwrap().almost_conjugate);
        // a transposition and a double transposition generate non-almost-conjugate Z2's
        let c = s4.subgroup_generated_by(&[s4
            .index_of(&GroupElement::permutation(vec![1, 0, 3, 2]).unwrap())
            .unwrap()]);
        assert!(!is_almost_conjugate(&inv, &a, &c).unwrap().almost_conjugate);
    }
}
