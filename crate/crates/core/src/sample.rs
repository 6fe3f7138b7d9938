//! Random sampling used by the evaluation-based checks.

use alloc::collections::BTreeMap;

use rand::Rng;

use crate::exact::{Rational, Var};

/// A random nonzero rational `n/d` with `n ∈ [−50, 50] \ {0}` and
/// `d ∈ [1, 10]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut n = 0i64;
    while n == 0 {
        n = rng.gen_range(-50..=50);
    }
    let d = rng.gen_range(1..=10);
    Rational::frac(n, d)
}

/// Assigns a random nonzero rational to each variable.
pub fn random_point<R: Rng + ?Sized>(
    rng: &mut R,
    vars: impl IntoIterator<Item = Var>,
) -> BTreeMap<Var, Rational> {
    vars.into_iter()
        .map(|v| (v, random_rational(rng)))
        .collect()
}

/// A uniform `f64` in `[lo, hi)`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}
