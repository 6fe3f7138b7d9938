use booklie_core::classify::{
    classify, is_coboundary, swap_e1_e2, tangent_bialgebra, ClassLetter, Classification,
};
use booklie_core::rmatrix::LieAlgebra3;
use booklie_core::sample::random_rational;
use booklie_core::{PLParams, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn every_row_at_ten_random_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for letter in ClassLetter::ALL {
        for _ in 0..10 {
            let [l, a, w] = [(); 3].map(|_| random_rational(&mut rng));
            let params = letter.representative(&l, &a, &w);
            let got = classify(&params);
            assert_eq!(got.letter(), Some(letter), "{params}: {got:?}");
            let Classification::Class(label) = got else {
                unreachable!()
            };
            assert_eq!(label.coboundary, letter.is_coboundary());
            if matches!(letter, ClassLetter::C | ClassLetter::D) {
                assert_eq!(label.lambda, Some(l.clone()));
            }
            if matches!(letter, ClassLetter::E | ClassLetter::F) {
                assert_eq!(label.lambda, Some(l));
            }
        }
    }
}

#[test]
fn worked_examples() {
    let mut v = [0, 2, 0, 0, 0, 0].map(Rational::from_int);
    v[5] = Rational::frac(1, 2);
    let d = classify(&PLParams::numeric(v));
    let Classification::Class(d) = d else {
        panic!("{d:?}")
    };
    assert_eq!(
        (d.letter, d.lambda, d.alpha),
        (
            ClassLetter::D,
            Some(Rational::from_int(2)),
            Some(Rational::frac(-1, 2))
        )
    );
    let i = classify(&PLParams::numeric([
        Rational::zero(),
        Rational::zero(),
        Rational::frac(-1, 2),
        Rational::from_int(-3),
        Rational::zero(),
        Rational::zero(),
    ]));
    let Classification::Class(i) = i else {
        panic!("{i:?}")
    };
    assert_eq!(
        (i.letter, i.alpha),
        (ClassLetter::I, Some(Rational::from_int(3)))
    );
    assert_eq!(
        classify(&PLParams::from_ints([1, 0, 0, 0, 0, 0])).letter(),
        Some(ClassLetter::B)
    );
    assert_eq!(classify(&PLParams::zero()), Classification::Trivial);
}

fn sparse_params() -> impl Strategy<Value = [Rational; 6]> {
    prop::array::uniform6(prop_oneof![
        3 => Just(0i64),
        1 => -3i64..=3,
    ])
    .prop_map(|v| v.map(Rational::from_int))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn coboundary_iff_a_or_b(v in sparse_params()) {
        let params = PLParams::numeric(v.clone());
        let letter = classify(&params).letter();
        let nonzero = v.iter().any(|r| !r.is_zero());
        prop_assert_eq!(
            matches!(letter, Some(ClassLetter::A | ClassLetter::B)),
            nonzero && is_coboundary(&params)
        );
    }

    #[test]
    fn swap_invariance(v in sparse_params()) {
        let direct = classify(&PLParams::numeric(v.clone())).letter();
        let swapped = classify(&PLParams::numeric(swap_e1_e2(&v))).letter();
        prop_assert_eq!(direct, swapped);
        prop_assert_eq!(swap_e1_e2(&swap_e1_e2(&v)), v);
    }
}

#[test]
fn duals_of_table_rows_are_lie_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for letter in ClassLetter::ALL {
        for _ in 0..5 {
            let [l, a, w] = [(); 3].map(|_| random_rational(&mut rng));
            let tb = tangent_bialgebra(&letter.representative(&l, &a, &w)).unwrap();
            let dual: &LieAlgebra3 = &tb.dual;
            assert!(
                dual.is_antisymmetric() && dual.satisfies_jacobi(),
                "{letter:?}"
            );
        }
    }
    // random parameters outside the table are also cocycles
    for _ in 0..5 {
        let v = [(); 6].map(|_| {
            if rng.gen_bool(0.5) {
                random_rational(&mut rng)
            } else {
                Rational::zero()
            }
        });
        assert!(tangent_bialgebra(&PLParams::numeric(v)).is_ok());
    }
}
