mod common;

use common::*;
use fabf::{affine_orbit, fixed_space, matrix_orbit, AffineMap, LogSet};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_iteration(seed in any::<u64>(), d in 1usize..=3, planted in any::<bool>()) {
        let mut r = rng(seed);
        let q = random_int_matrix(&mut r, d, d, 3);
        let x = bv(&random_vec(&mut r, d, 3));
        let y = if planted {
            (0..r.gen_range(0..12)).fold(x.clone(), |y, _| q.left_apply(&y))
        } else {
            bv(&random_vec(&mut r, d, 3))
        };
        let got = matrix_orbit(&x, &q, &y).unwrap();
        let hits = brute_orbit(&x, &q, &y, 120);
        let predicted: Vec<u64> = (0..=120).filter(|&k| got.contains(k)).collect();
        prop_assert_eq!(predicted, hits);
        if planted {
            prop_assert!(!got.is_empty());
        }
    }

    #[test]
    fn translations_are_singletons(b in prop::collection::vec(-3i64..=3, 1..=3), k in 0u64..50) {
        prop_assume!(b.iter().any(|&c| c != 0));
        let d = b.len();
        let theta = AffineMap::new(fabf::Matrix::identity(d), bv(&b)).unwrap();
        let x = vec![BigInt::from(0); d];
        let y: Vec<BigInt> = b.iter().map(|&c| BigInt::from(c) * k).collect();
        prop_assert_eq!(affine_orbit(&x, &theta, &y).unwrap(), LogSet::AP { k0: k, p: 0 });
    }

    #[test]
    fn fixed_space_rows_are_fixed(seed in any::<u64>(), m in 1usize..=3) {
        let mut r = rng(seed);
        let tuple: Vec<_> = (0..2).map(|_| to_big(&if r.gen_bool(0.5) { signed_permutation(&mut r, m) } else { ident(m) })).collect();
        let f = fixed_space(&tuple).unwrap();
        for row in f.row_vecs() {
            for a in &tuple {
                prop_assert_eq!(a.transpose().left_apply(&row), row.clone());
            }
        }
    }
}

#[test]
fn worked_examples() {
    let rot = bm(&[vec![0, 1], vec![-1, 0]]);
    let got = matrix_orbit(&bv(&[1, 0]), &rot, &bv(&[0, -1])).unwrap();
    assert_eq!(got, LogSet::AP { k0: 3, p: 4 });
    assert_eq!(got.to_string(), "AP k0=3 p=4");
    assert_eq!(matrix_orbit(&bv(&[1]), &bm(&[vec![2]]), &bv(&[1 << 20])).unwrap(), LogSet::AP { k0: 20, p: 0 });
    let g1 = vec![to_big(&vec![vec![1, 1], vec![0, 1]]), to_big(&ident(2))];
    assert_eq!(fixed_space(&g1).unwrap(), bm(&[vec![1, 0]]));
    assert_eq!(fixed_space(&[bm(&[vec![-1]]), bm(&[vec![1]])]).unwrap().rows(), 0);
}
