mod common;

use common::*;
use fabf::format::{
    format_assignment, format_group, format_hom, parse_assignment, parse_element, parse_group, parse_hom,
};
use fabf::{FabfError, Hom};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn elements_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(1..=3);
        let (g, _) = random_group(&mut r, 3, m);
        let e = random_element(&mut r, &g, 8, 20);
        prop_assert_eq!(parse_element(&g, &e.to_string()).unwrap(), e);
    }

    #[test]
    fn groups_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(1..=3);
        let (g, _) = random_group(&mut r, 2, m);
        prop_assert_eq!(parse_group(&format_group(&g)).unwrap(), g);
    }

    #[test]
    fn homs_and_assignments_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g, _) = random_group(&mut r, 2, 2);
        let h = random_type_i_endo(&mut r, &g);
        let text = format_hom(&Hom::TypeI(h.clone()));
        let Hom::TypeI(back) = parse_hom(&text, &g, &g).unwrap() else {
            return Err(TestCaseError::fail("type changed"));
        };
        prop_assert_eq!(back.verified().unwrap(), h.clone());
        let asg = h.to_assignment().unwrap();
        let again = parse_assignment(&format_assignment(&asg), &g, &g).unwrap();
        prop_assert_eq!(again, asg);
    }
}

#[test]
fn errors_carry_positions() {
    let bad = "group\nn 2\nm 1\nA1: 2\nA2: 1\n";
    assert_eq!(parse_group(bad).unwrap_err().to_string(), "A1 not unimodular (det 2)");
    let g = group_from(&[ident(1), ident(1)]);
    let err = parse_element(&g, "x1 t[1,").unwrap_err();
    assert!(matches!(err, FabfError::Parse { .. }), "{err:?}");
    assert!(parse_element(&g, "x3").is_err());
}
