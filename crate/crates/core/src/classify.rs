//! The nine inequivalent classes of Poisson–Lie structures on the book group,
//! coboundary detection, and the tangent Lie bialgebra.

use core::fmt;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bracket::{Chart, PLParams, Param, PoissonStructure};
use crate::exact::{Poly, Rational};
use crate::rmatrix::{LieAlgebra3, SkewBivector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl ClassLetter {
    pub const ALL: [ClassLetter; 9] = [
        ClassLetter::A,
        ClassLetter::B,
        ClassLetter::C,
        ClassLetter::D,
        ClassLetter::E,
        ClassLetter::F,
        ClassLetter::G,
        ClassLetter::H,
        ClassLetter::I,
    ];

    /// Order in which family shapes are tried.
    pub const MATCH_ORDER: [ClassLetter; 9] = [
        ClassLetter::A,
        ClassLetter::B,
        ClassLetter::C,
        ClassLetter::G,
        ClassLetter::F,
        ClassLetter::D,
        ClassLetter::H,
        ClassLetter::E,
        ClassLetter::I,
    ];

    pub fn is_coboundary(self) -> bool {
        matches!(self, ClassLetter::A | ClassLetter::B)
    }

    /// Representative parameters with `λ`, `α`, `ω` substituted; `λ` must be
    /// nonzero when the row uses it.
    pub fn representative(self, lambda: &Rational, alpha: &Rational, omega: &Rational) -> PLParams {
        let z = Rational::zero();
        let half = Rational::frac(1, 2);
        let neg_half = Rational::frac(-1, 2);
        let lam2 = lambda * &half;
        let v = match self {
            ClassLetter::A => [
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                Rational::from_int(-1),
            ],
            ClassLetter::B => [
                z.clone(),
                z.clone(),
                z.clone(),
                Rational::from_int(-1),
                z.clone(),
                z.clone(),
            ],
            ClassLetter::C => [
                z.clone(),
                lambda.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
            ],
            ClassLetter::D => [
                z.clone(),
                lambda.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                -alpha,
            ],
            ClassLetter::E => [z.clone(), z.clone(), lam2.clone(), z.clone(), lam2, -omega],
            ClassLetter::F => [
                z.clone(),
                z.clone(),
                lam2.clone(),
                z.clone(),
                lam2,
                z.clone(),
            ],
            ClassLetter::G => [
                z.clone(),
                z.clone(),
                neg_half,
                z.clone(),
                z.clone(),
                z.clone(),
            ],
            ClassLetter::H => [z.clone(), z.clone(), neg_half, z.clone(), z.clone(), -omega],
            ClassLetter::I => [z.clone(), z.clone(), neg_half, -alpha, z.clone(), z.clone()],
        };
        PLParams::numeric(v)
    }
}

impl fmt::Display for ClassLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A class together with its free parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLabel {
    pub letter: ClassLetter,
    /// Essential parameter.
    pub lambda: Option<Rational>,
    /// Rescalable to any nonzero value.
    pub alpha: Option<Rational>,
    /// Rescalable within its sign.
    pub omega: Option<Rational>,
    pub coboundary: bool,
    /// Normalizations applied to reach the table shape.
    pub notes: Vec<String>,
}

impl ClassLabel {
    fn new(letter: ClassLetter) -> Self {
        ClassLabel {
            letter,
            lambda: None,
            alpha: None,
            omega: None,
            coboundary: letter.is_coboundary(),
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// The zero bracket.
    Trivial,
    Class(ClassLabel),
    Unresolved {
        diagnostic: String,
    },
}

impl Classification {
    pub fn letter(&self) -> Option<ClassLetter> {
        match self {
            Classification::Class(l) => Some(l.letter),
            _ => None,
        }
    }
}

/// Image of the parameters under the automorphism exchanging `e₁` and `e₂`
/// (equivalently `Y ↔ Z`).
pub fn swap_e1_e2(v: &[Rational; 6]) -> [Rational; 6] {
    let [a, b, c, d, e, f] = v;
    [d.clone(), -b, -e, a.clone(), -c, -f]
}

fn nz(v: &[Rational; 6], p: Param) -> bool {
    !v[p as usize].is_zero()
}

fn only(v: &[Rational; 6], allowed: &[Param]) -> bool {
    Param::ALL.iter().all(|p| allowed.contains(p) || !nz(v, *p))
}

fn match_shape(letter: ClassLetter, v: &[Rational; 6]) -> Option<ClassLabel> {
    use Param::*;
    let get = |p: Param| v[p as usize].clone();
    let mut label = ClassLabel::new(letter);
    let rescaled_c = |label: &mut ClassLabel| {
        if get(C) != Rational::frac(-1, 2) {
            label.notes.push(format!("c = {} rescaled to -1/2", get(C)));
        }
    };
    match letter {
        ClassLetter::A => {
            if !(only(v, &[F]) && nz(v, F)) {
                return None;
            }
            if get(F) != Rational::from_int(-1) {
                label.notes.push(format!("f = {} rescaled to -1", get(F)));
            }
        }
        ClassLetter::B => {
            if !(only(v, &[A, D, F]) && (nz(v, A) || nz(v, D))) {
                return None;
            }
            if nz(v, A) {
                label.notes.push(String::from(
                    "a ≠ 0 moved into d by an automorphism of span(e1, e2)",
                ));
            }
            if nz(v, F) {
                label
                    .notes
                    .push(String::from("f removed by the shift e3 → e3 + k·e2"));
            }
            if !(get(A).is_zero() && get(F).is_zero() && get(D) == Rational::from_int(-1)) {
                label.notes.push(String::from("normalized to d = -1"));
            }
        }
        ClassLetter::C => {
            if !(only(v, &[B]) && nz(v, B)) {
                return None;
            }
            label.lambda = Some(get(B));
        }
        ClassLetter::D => {
            if !(only(v, &[B, F]) && nz(v, B) && nz(v, F)) {
                return None;
            }
            label.lambda = Some(get(B));
            label.alpha = Some(-get(F));
        }
        ClassLetter::E | ClassLetter::F => {
            let want_f = letter == ClassLetter::E;
            if !(only(v, &[C, E, F]) && nz(v, C) && get(C) == get(E) && nz(v, F) == want_f) {
                return None;
            }
            label.lambda = Some(&get(C) * &Rational::from_int(2));
            if want_f {
                label.omega = Some(-get(F));
            }
        }
        ClassLetter::G => {
            if !(only(v, &[C]) && nz(v, C)) {
                return None;
            }
            rescaled_c(&mut label);
        }
        ClassLetter::H => {
            if !(only(v, &[C, F]) && nz(v, C) && nz(v, F)) {
                return None;
            }
            rescaled_c(&mut label);
            label.omega = Some(-get(F));
        }
        ClassLetter::I => {
            if !(only(v, &[C, D]) && nz(v, C) && nz(v, D)) {
                return None;
            }
            rescaled_c(&mut label);
            label.alpha = Some(-get(D));
        }
    }
    Some(label)
}

fn match_any(v: &[Rational; 6]) -> Option<ClassLabel> {
    ClassLetter::MATCH_ORDER
        .iter()
        .find_map(|&l| match_shape(l, v))
}

/// Matches numeric parameters against the nine families, trying the
/// parameters as given first and their `e₁ ↔ e₂` image second.
pub fn classify(params: &PLParams) -> Classification {
    let Some(v) = params.values() else {
        return Classification::Unresolved {
            diagnostic: String::from("classification needs numeric parameters"),
        };
    };
    if v.iter().all(Rational::is_zero) {
        return Classification::Trivial;
    }
    if let Some(label) = match_any(v) {
        return Classification::Class(label);
    }
    if let Some(mut label) = match_any(&swap_e1_e2(v)) {
        label.notes.insert(
            0,
            String::from("applied the e1 <-> e2 automorphism (a <-> d)"),
        );
        return Classification::Class(label);
    }
    Classification::Unresolved {
        diagnostic: format!(
            "{params} matches no family shape, directly or after the e1 <-> e2 automorphism"
        ),
    }
}

/// The r-matrix of a coboundary structure: `(r¹², r¹³, r²³) = (−f, a, d)`,
/// present iff `b = c = e = 0`.
pub fn coboundary_r_matrix(params: &PLParams) -> Option<SkewBivector> {
    let k = params.coefficients();
    if !(k[1].is_zero() && k[2].is_zero() && k[4].is_zero()) {
        return None;
    }
    let [a, _, _, d, _, f] = k;
    Some(SkewBivector::new(-f, a, d))
}

pub fn is_coboundary(params: &PLParams) -> bool {
    coboundary_r_matrix(params).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BialgebraError {
    /// The linearized bracket violates Jacobi; residual components attached.
    DualJacobi([Poly; 3]),
    /// The cocommutator is not a 1-cocycle; first offending component.
    Cocycle {
        generators: (usize, usize),
        component: (usize, usize),
        residual: Poly,
    },
}

impl fmt::Display for BialgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BialgebraError::DualJacobi(r) => {
                write!(
                    f,
                    "dual bracket fails Jacobi: ({}, {}, {})",
                    r[0], r[1], r[2]
                )
            }
            BialgebraError::Cocycle {
                generators,
                component,
                residual,
            } => write!(
                f,
                "cocycle condition fails for (e{}, e{}) at component {:?}: {residual}",
                generators.0 + 1,
                generators.1 + 1,
                component
            ),
        }
    }
}

/// The book algebra together with the dual algebra read off the
/// linearized bracket, with the dual basis identified as
/// `e₁* ↔ y, e₂* ↔ z, e₃* ↔ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentBialgebra {
    pub algebra: LieAlgebra3,
    pub dual: LieAlgebra3,
}

/// Local-chart index of each dual basis vector.
const DUAL_TO_LOCAL: [usize; 3] = [1, 2, 0];

pub fn tangent_bialgebra(params: &PLParams) -> Result<TangentBialgebra, BialgebraError> {
    let lin = PoissonStructure::from_params(params, Chart::Local)
        .linearize()
        .expect("local chart");
    let c = lin.structure_constants();
    let dual = LieAlgebra3::from_constants(core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            core::array::from_fn(|k| {
                c[DUAL_TO_LOCAL[i]][DUAL_TO_LOCAL[j]][DUAL_TO_LOCAL[k]].clone()
            })
        })
    }));
    check_bialgebra(LieAlgebra3::book(), dual)
}

/// Checks Jacobi for the dual and the 1-cocycle condition
/// `δ[eₐ,e_b] = eₐ·δ(e_b) − e_b·δ(eₐ)` for `δ(eᵢ) = Σ f^{jk}_i e_j⊗e_k`.
pub fn check_bialgebra(
    algebra: LieAlgebra3,
    dual: LieAlgebra3,
) -> Result<TangentBialgebra, BialgebraError> {
    let jac = dual.jacobi_residual();
    if !jac.iter().all(Poly::is_zero) {
        return Err(BialgebraError::DualJacobi(jac));
    }
    let c = |i: usize, j: usize, k: usize| algebra.constant(i, j, k);
    let f = |j: usize, k: usize, i: usize| dual.constant(j, k, i);
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        for j in 0..3 {
            for k in 0..3 {
                let mut res = Poly::zero();
                for i in 0..3 {
                    res += &(c(a, b, i) * f(j, k, i));
                }
                for l in 0..3 {
                    res -= &(c(a, l, j) * f(l, k, b));
                    res -= &(c(a, l, k) * f(j, l, b));
                    res += &(c(b, l, j) * f(l, k, a));
                    res += &(c(b, l, k) * f(j, l, a));
                }
                if !res.is_zero() {
                    return Err(BialgebraError::Cocycle {
                        generators: (a, b),
                        component: (j, k),
                        residual: res,
                    });
                }
            }
        }
    }
    Ok(TangentBialgebra { algebra, dual })
}
