//! Coproduct, counit and antipode of the coordinate algebra of the book
//! group, and the product Poisson bracket on its tensor powers.
//!
//! Tensor factors are realized by variable copies: `X_1, Y_1, Z_1` live in the
//! first factor, `X_2, …` in the second, and so on.

use core::fmt;

use alloc::vec::Vec;

use crate::bracket::{Chart, PLParams, PoissonStructure};
use crate::exact::{AlgebraError, Poly, Symbol, Var};

/// A polynomial on the `factors`-fold product of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    factors: u8,
    poly: Poly,
}

impl TensorPoly {
    pub fn new(factors: u8, poly: Poly) -> Self {
        TensorPoly { factors, poly }
    }

    /// `p` placed in tensor factor `copy` of a `factors`-fold product.
    pub fn embed(p: &Poly, copy: u8, factors: u8) -> Self {
        assert!((1..=factors).contains(&copy), "factor {copy} out of range");
        let poly = p
            .rename(|v| {
                if is_group_coordinate(v) {
                    v.with_copy(copy)
                } else {
                    v
                }
            })
            .expect("renaming preserves exponents");
        TensorPoly { factors, poly }
    }

    pub fn factors(&self) -> u8 {
        self.factors
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Multiplication map: identifies all factors back into a single copy.
    pub fn multiply_out(&self) -> Poly {
        self.poly
            .rename(|v| {
                if v.symbol.is_coordinate() {
                    v.with_copy(0)
                } else {
                    v
                }
            })
            .expect("renaming preserves exponents")
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

fn is_group_coordinate(v: Var) -> bool {
    matches!(v.symbol, Symbol::X | Symbol::Y | Symbol::Z)
}

fn gen(s: Symbol, copy: u8) -> Poly {
    Poly::var(Var::copy_of(s, copy))
}

/// Image of a generator under the coproduct, with the two output factors at
/// copies `left` and `left + 1`.
fn coproduct_image(s: Symbol, left: u8) -> Poly {
    let right = left + 1;
    let x1 = gen(Symbol::X, left);
    match s {
        Symbol::X => &x1 * &gen(Symbol::X, right),
        Symbol::Y | Symbol::Z => &(&x1 * &gen(s, right)) + &gen(s, left),
        _ => unreachable!("not a group coordinate"),
    }
}

/// Applies the coproduct to tensor factor `factor`, shifting the later
/// factors up by one.
pub fn coproduct_at(t: &TensorPoly, factor: u8) -> TensorPoly {
    assert!(
        (1..=t.factors).contains(&factor),
        "factor {factor} out of range"
    );
    let poly = t
        .poly
        .substitute(|v| {
            if !is_group_coordinate(v) || v.copy < factor {
                None
            } else if v.copy == factor {
                Some(coproduct_image(v.symbol, factor))
            } else {
                Some(Poly::var(v.with_copy(v.copy + 1)))
            }
        })
        .expect("coproduct of X is a monomial");
    TensorPoly::new(t.factors + 1, poly)
}

/// The coproduct `Δ`, pulling back the group multiplication.
pub fn coproduct(p: &Poly) -> TensorPoly {
    coproduct_at(&TensorPoly::embed(p, 1, 1), 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nesting {
    /// `(Δ ⊗ id ⊗ … ⊗ id) ∘ … ∘ Δ`
    Left,
    /// `(id ⊗ … ⊗ id ⊗ Δ) ∘ … ∘ Δ`
    Right,
}

/// The `n`-fold coproduct with left nesting.
pub fn iterated_coproduct(p: &Poly, n: u8) -> TensorPoly {
    iterated_coproduct_nested(p, n, Nesting::Left)
}

pub fn iterated_coproduct_nested(p: &Poly, n: u8, nesting: Nesting) -> TensorPoly {
    assert!(n >= 2, "iterated coproduct needs at least two factors");
    let mut t = coproduct(p);
    while t.factors < n {
        let at = match nesting {
            Nesting::Left => 1,
            Nesting::Right => t.factors,
        };
        t = coproduct_at(&t, at);
    }
    t
}

/// Product Poisson bracket: each factor carries `s`, cross-factor brackets
/// vanish.
pub fn tensor_bracket(s: &PoissonStructure, p: &TensorPoly, q: &TensorPoly) -> TensorPoly {
    let factors = p.factors.max(q.factors);
    let poly = (1..=factors)
        .map(|k| s.bracket_in_copy(&p.poly, &q.poly, k))
        .sum();
    TensorPoly::new(factors, poly)
}

/// `{Δwᵢ, Δwⱼ} − Δ{wᵢ, wⱼ}` for the generator pairs `(X,Y), (X,Z), (Y,Z)`.
pub fn poisson_map_residual(params: &PLParams) -> Vec<TensorPoly> {
    poisson_map_residual_for(&PoissonStructure::from_params(params, Chart::Group))
}

/// As [`poisson_map_residual`] for an arbitrary group-chart structure.
pub fn poisson_map_residual_for(s: &PoissonStructure) -> Vec<TensorPoly> {
    assert_eq!(s.chart(), Chart::Group, "coproduct acts on the group chart");
    let w = [Symbol::X, Symbol::Y, Symbol::Z].map(|g| gen(g, 0));
    [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| {
            let lhs = tensor_bracket(s, &coproduct(&w[i]), &coproduct(&w[j]));
            let rhs = coproduct(&s.bracket_in_copy(&w[i], &w[j], 0));
            TensorPoly::new(2, lhs.poly - rhs.poly)
        })
        .collect()
}

/// `(Δ ⊗ id)Δ(w) − (id ⊗ Δ)Δ(w)` for `w = X, Y, Z`.
pub fn coassociativity_residual() -> Vec<TensorPoly> {
    [Symbol::X, Symbol::Y, Symbol::Z]
        .into_iter()
        .map(|g| {
            let d = coproduct(&gen(g, 0));
            let left = coproduct_at(&d, 1);
            let right = coproduct_at(&d, 2);
            TensorPoly::new(3, left.poly - right.poly)
        })
        .collect()
}

/// Evaluation at the identity element `X = 1, Y = Z = 0`.
pub fn counit(p: &Poly) -> Poly {
    p.substitute(|v| {
        if !is_group_coordinate(v) {
            return None;
        }
        Some(match v.symbol {
            Symbol::X => Poly::one(),
            _ => Poly::zero(),
        })
    })
    .expect("X maps to a unit")
}

/// Pullback of group inversion: `X ↦ X⁻¹, Y ↦ −Y X⁻¹, Z ↦ −Z X⁻¹`.
pub fn antipode(p: &Poly) -> Result<Poly, AlgebraError> {
    p.substitute(|v| {
        if !is_group_coordinate(v) {
            return None;
        }
        let x_inv = Poly::var_pow(Var::copy_of(Symbol::X, v.copy), -1).expect("X is invertible");
        Some(match v.symbol {
            Symbol::X => x_inv,
            _ => -&(&Poly::var(v) * &x_inv),
        })
    })
}

/// Applies `f` to the variables of tensor factor `factor` only.
fn apply_in_factor(
    t: &TensorPoly,
    factor: u8,
    f: impl Fn(&Poly) -> Poly,
) -> Result<Poly, AlgebraError> {
    t.poly.substitute(|v| {
        if is_group_coordinate(v) && v.copy == factor {
            let image = f(&Poly::var(v.with_copy(0)));
            Some(
                image
                    .rename(|w| {
                        if w.symbol.is_coordinate() {
                            w.with_copy(factor)
                        } else {
                            w
                        }
                    })
                    .expect("renaming preserves exponents"),
            )
        } else {
            None
        }
    })
}

/// Residuals of the Hopf axioms on the generators: for each `w ∈ {X, Y, Z}`,
/// `m(S⊗id)Δw − ε(w)`, `m(id⊗S)Δw − ε(w)`, `(ε⊗id)Δw − w` and
/// `(id⊗ε)Δw − w`.
pub fn hopf_axiom_residuals() -> Result<Vec<Poly>, AlgebraError> {
    let mut out = Vec::new();
    for g in [Symbol::X, Symbol::Y, Symbol::Z] {
        let w = gen(g, 0);
        let d = coproduct(&w);
        let eps = counit(&w);
        for factor in [1, 2] {
            let s = TensorPoly::new(
                2,
                apply_in_factor(&d, factor, |p| {
                    antipode(p).expect("generators have antipodes")
                })?,
            );
            out.push(s.multiply_out() - eps.clone());
        }
        for factor in [1, 2] {
            let e = TensorPoly::new(2, apply_in_factor(&d, factor, counit)?);
            out.push(e.multiply_out() - w.clone());
        }
    }
    Ok(out)
}
