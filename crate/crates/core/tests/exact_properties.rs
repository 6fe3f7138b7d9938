use std::collections::BTreeMap;

use booklie_core::exact::{Monomial, Poly, PolyMatrix, Rational, Symbol, Var};
use booklie_core::hopf::coproduct;
use booklie_core::sample::random_rational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const VARS: [Symbol; 4] = [Symbol::X, Symbol::Y, Symbol::Z, Symbol::B];

fn term() -> impl Strategy<Value = Poly> {
    (-6i64..=6, 1i64..=4, -2i32..=2, 0i32..=2, 0i32..=2, 0i32..=1).prop_map(|(n, d, x, y, z, b)| {
        let m = Monomial::from_pairs([
            (Var::from(Symbol::X), x),
            (Var::from(Symbol::Y), y),
            (Var::from(Symbol::Z), z),
            (Var::from(Symbol::B), b),
        ])
        .unwrap();
        Poly::term(Rational::frac(n, d), m)
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(term(), 0..5).prop_map(|ts| ts.into_iter().sum())
}

fn point(seed: u64) -> BTreeMap<Var, Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    VARS.iter()
        .map(|&s| (Var::from(s), random_rational(&mut rng)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn mixed_partials_commute(p in poly()) {
        for v in VARS {
            for w in VARS {
                let (v, w) = (Var::from(v), Var::from(w));
                prop_assert_eq!(p.partial(v).partial(w), p.partial(w).partial(v));
            }
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), seed in 0u64..1000) {
        let pt = point(seed);
        let (ep, eq) = (p.eval(&pt).unwrap(), q.eval(&pt).unwrap());
        prop_assert_eq!((&p * &q).eval(&pt).unwrap(), &ep * &eq);
        prop_assert_eq!((&p + &q).eval(&pt).unwrap(), &ep + &eq);
    }

    #[test]
    fn coproduct_is_multiplicative(p in poly(), q in poly()) {
        let lhs = coproduct(&(&p * &q));
        let rhs = coproduct(&p).poly() * coproduct(&q).poly();
        prop_assert_eq!(lhs.poly(), &rhs);
    }
}

#[test]
fn evaluation_at_hundred_points() {
    let p = Poly::parse("X^-1*Y*Z + b*X^2 - 3/2*Y").unwrap();
    let q = Poly::parse("Z^2 - X*Y + 7").unwrap();
    for seed in 0..100 {
        let pt = point(seed);
        assert_eq!(
            (&p * &q).eval(&pt).unwrap(),
            &p.eval(&pt).unwrap() * &q.eval(&pt).unwrap()
        );
    }
}

#[test]
fn kronecker_mixed_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut random = || PolyMatrix::from_fn(3, 3, |_, _| Poly::constant(random_rational(&mut rng)));
    for _ in 0..10 {
        let (a, b, c, d) = (random(), random(), random(), random());
        let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
        assert_eq!(lhs, rhs);
    }
}
