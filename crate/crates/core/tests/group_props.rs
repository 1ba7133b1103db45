mod common;

use common::*;
use fabf::format::parse_element;
use fabf::{eval_word, Element, EvalMethod};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_laws(seed in any::<u64>(), n in 2usize..=3, m in 1usize..=3) {
        let mut r = rng(seed);
        let (g, _) = random_group(&mut r, n, m);
        let (a, b, c) = (random_element(&mut r, &g, 5, 3), random_element(&mut r, &g, 5, 3), random_element(&mut r, &g, 5, 3));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.mul(&a.inv()).unwrap().is_identity());
        prop_assert!(a.inv().mul(&a).unwrap().is_identity());
        prop_assert_eq!(a.mul(&Element::identity(&g)).unwrap(), a.clone());
        let conj = b.inv().mul(&a).unwrap().mul(&b).unwrap();
        prop_assert_eq!(a.conj(&b).unwrap(), conj);
    }

    #[test]
    fn matches_rewriting_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g, action) = random_group(&mut r, 2, 2);
        let rw = Rewriter::new(&action, 2);
        let (a, b) = (random_element(&mut r, &g, 6, 3), random_element(&mut r, &g, 6, 3));
        let mut toks = Rewriter::tokens(&a);
        toks.extend(Rewriter::tokens(&b));
        prop_assert_eq!(a.mul(&b).unwrap().to_string(), rw.render(&rw.normalize(toks)));
    }

    #[test]
    fn evaluation_methods_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g, _) = random_group(&mut r, 3, 2);
        let gs: Vec<Element> = (0..3).map(|_| random_element(&mut r, &g, 3, 2)).collect();
        let w = random_word(&mut r, 3, 10);
        prop_assert_eq!(
            eval_word(&w, &gs, EvalMethod::Iterated).unwrap(),
            eval_word(&w, &gs, EvalMethod::BlockFormula).unwrap()
        );
    }
}

#[test]
fn jump_rule_examples() {
    let g = group_from(&[vec![vec![1, 1], vec![0, 1]], ident(2)]);
    assert_eq!(parse_element(&g, "t[1,0] x1").unwrap().to_string(), "x1 t[1,1]");
    assert_eq!(parse_element(&g, "x1 t[0,1] x1^-1").unwrap().to_string(), "t[0,1]");
    let h = parse_element(&g, "x1 t[1,0]").unwrap();
    assert_eq!(h.pow(2).to_string(), "x1^2 t[2,1]");
    assert_eq!(h.pow(0).to_string(), "t[0,0]");
    assert_eq!(h.inv().to_string(), "x1^-1 t[-1,1]");
}
