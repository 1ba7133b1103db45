mod common;

use common::*;
use fabf::stallings::{is_injective, is_surjective};
use fabf::{SubgroupGraph, Word};
use proptest::prelude::*;
use rand::Rng;

fn is_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| p[0] != -p[1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_group_laws(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let (a, b, c) = (random_word(&mut r, n, 8), random_word(&mut r, n, 8), random_word(&mut r, n, 8));
        prop_assert!(is_reduced(&a.mul(&b)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        prop_assert_eq!(a.pow(-2), a.inverse().mul(&a.inverse()));
    }

    #[test]
    fn abelianization_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_word(&mut r, 3, 8), random_word(&mut r, 3, 8));
        let s: Vec<_> = a.abelianize(3).unwrap().iter().zip(b.abelianize(3).unwrap()).map(|(x, y)| x + y).collect();
        prop_assert_eq!(a.mul(&b).abelianize(3).unwrap(), s);
    }

    #[test]
    fn substitution_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_free_endo(&mut r, 3, 4);
        let (a, b) = (random_word(&mut r, 3, 6), random_word(&mut r, 3, 6));
        prop_assert_eq!(phi.apply(&a.mul(&b)).unwrap(), phi.apply(&a).unwrap().mul(&phi.apply(&b).unwrap()));
        prop_assert_eq!(phi.apply(&a.inverse()).unwrap(), phi.apply(&a).unwrap().inverse());
    }

    #[test]
    fn primitive_root_recovers_powers(seed in any::<u64>(), k in 1i64..=4) {
        let mut r = rng(seed);
        let w = random_word(&mut r, 2, 6);
        let (root, e) = w.pow(k).primitive_root();
        prop_assert_eq!(root.pow(e as i64), w.pow(k));
    }

    #[test]
    fn subgroup_graph_membership(seed in any::<u64>()) {
        let mut r = rng(seed);
        let gens: Vec<Word> = (0..3).map(|_| random_word(&mut r, 2, 5)).collect();
        let g = SubgroupGraph::build_and_fold(2, &gens);
        for w in &gens {
            prop_assert!(g.member(w));
        }
        let mut prod = Word::identity();
        for _ in 0..4 {
            let i = r.gen_range(0..gens.len());
            prod = prod.mul(&if r.gen_bool(0.5) { gens[i].clone() } else { gens[i].inverse() });
        }
        prop_assert!(g.member(&prod));
        for b in g.basis() {
            prop_assert!(g.member(&b));
        }
        prop_assert_eq!(g.basis().len(), g.rank());
    }

    #[test]
    fn nielsen_products_are_automorphisms(seed in any::<u64>(), n in 2usize..=3, depth in 0usize..=6) {
        let mut r = rng(seed);
        let phi = random_nielsen(&mut r, n, depth);
        prop_assert!(is_injective(&phi));
        prop_assert!(is_surjective(&phi));
    }
}

#[test]
fn non_surjective_examples() {
    let sq = fabf::FreeEndo::new(2, vec![word(&[1, 1]), word(&[2])]).unwrap();
    assert!(is_injective(&sq));
    assert!(!is_surjective(&sq));
    let collapse = fabf::FreeEndo::new(2, vec![word(&[1]), word(&[1])]).unwrap();
    assert!(!is_injective(&collapse));
}

#[test]
fn index_of_even_length_subgroup() {
    // words of even length in F_2
    let g = SubgroupGraph::build_and_fold(2, &[word(&[1, 1]), word(&[1, 2]), word(&[1, -2])]);
    assert_eq!(g.index(), Some(2));
    assert_eq!(g.rank(), 3);
    assert!(!g.member(&word(&[1])));
}
