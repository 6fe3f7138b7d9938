//! Lie-algebra and r-matrix layer: structure constants of the book algebra,
//! Schouten bracket, Sklyanin bracket of a constant r-matrix, and the 9×9
//! r̂-matrix of the generic family with its Yang–Baxter checks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;

use crate::bracket::{Chart, PLParams, PoissonStructure};
use crate::exact::{Poly, PolyMatrix, Rational, Symbol, Var};
use crate::sample::random_rational;

/// A three-dimensional Lie algebra given by `[eᵢ, eⱼ] = Σₖ c[i][j][k] eₖ`.
/// Structure constants may depend polynomially on parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra3 {
    constants: [[[Poly; 3]; 3]; 3],
}

impl LieAlgebra3 {
    pub fn from_constants(constants: [[[Poly; 3]; 3]; 3]) -> Self {
        LieAlgebra3 { constants }
    }

    /// Builds the algebra from the three brackets `[e₁,e₂], [e₁,e₃], [e₂,e₃]`.
    pub fn from_brackets(brackets: [[i64; 3]; 3]) -> Self {
        let mut constants: [[[Poly; 3]; 3]; 3] = Default::default();
        for (n, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            for k in 0..3 {
                constants[i][j][k] = Poly::int(brackets[n][k]);
                constants[j][i][k] = Poly::int(-brackets[n][k]);
            }
        }
        LieAlgebra3 { constants }
    }

    /// `[e₁,e₃] = e₁`, `[e₂,e₃] = e₂`, `[e₁,e₂] = 0`.
    pub fn book() -> Self {
        LieAlgebra3::from_brackets([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    }

    /// `[e₃,e₁] = 2e₁`, `[e₃,e₂] = −2e₂`, `[e₁,e₂] = e₃` in the basis
    /// `(J₊, J₋, J₃)`.
    pub fn sl2() -> Self {
        LieAlgebra3::from_brackets([[0, 0, 1], [-2, 0, 0], [0, 2, 0]])
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.constants[i][j][k]
    }

    pub fn constants(&self) -> &[[[Poly; 3]; 3]; 3] {
        &self.constants
    }

    /// Matrix of `ad(eᵢ)`: column `j` holds the components of `[eᵢ, eⱼ]`.
    pub fn adjoint(&self, i: usize) -> PolyMatrix {
        PolyMatrix::from_fn(3, 3, |k, j| self.constants[i][j][k].clone())
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| (0..3).all(|k| self.constants[i][j][k] == -&self.constants[j][i][k]))
        })
    }

    /// Components of `[[e₁,e₂],e₃] + [[e₂,e₃],e₁] + [[e₃,e₁],e₂]`.
    pub fn jacobi_residual(&self) -> [Poly; 3] {
        let c = &self.constants;
        core::array::from_fn(|n| {
            let mut acc = Poly::zero();
            for (a, b, d) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                for m in 0..3 {
                    acc += &(&c[a][b][m] * &c[m][d][n]);
                }
            }
            acc
        })
    }

    pub fn satisfies_jacobi(&self) -> bool {
        self.jacobi_residual().iter().all(Poly::is_zero)
    }

    /// Killing form `K(eᵢ, eⱼ) = tr(ad eᵢ ad eⱼ)`.
    pub fn killing_form(&self) -> PolyMatrix {
        let c = &self.constants;
        PolyMatrix::from_fn(3, 3, |i, j| {
            let mut acc = Poly::zero();
            for k in 0..3 {
                for l in 0..3 {
                    acc += &(&c[i][l][k] * &c[j][k][l]);
                }
            }
            acc
        })
    }

    /// Trace of `ad(eᵢ)`.
    pub fn adjoint_trace(&self, i: usize) -> Poly {
        (0..3).map(|k| self.constants[i][k][k].clone()).sum()
    }
}

/// `r = r¹² e₁∧e₂ + r¹³ e₁∧e₃ + r²³ e₂∧e₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewBivector {
    /// `[r¹², r¹³, r²³]`
    pub upper: [Poly; 3],
}

impl SkewBivector {
    pub fn new(r12: Poly, r13: Poly, r23: Poly) -> Self {
        SkewBivector {
            upper: [r12, r13, r23],
        }
    }

    pub fn from_rationals(r: [Rational; 3]) -> Self {
        SkewBivector {
            upper: r.map(Poly::constant),
        }
    }

    pub fn from_ints(r: [i64; 3]) -> Self {
        SkewBivector {
            upper: r.map(Poly::int),
        }
    }

    pub fn symbolic() -> Self {
        SkewBivector {
            upper: [Symbol::R12, Symbol::R13, Symbol::R23].map(Poly::var),
        }
    }

    /// The full antisymmetric tensor `r^{ij}`.
    pub fn tensor(&self) -> [[Poly; 3]; 3] {
        let mut t: [[Poly; 3]; 3] = Default::default();
        for (n, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            t[i][j] = self.upper[n].clone();
            t[j][i] = -&self.upper[n];
        }
        t
    }
}

/// The coefficient of `e₁∧e₂∧e₃`, where
/// `e₁∧e₂∧e₃ = Σ_σ sgn(σ) e_σ₁⊗e_σ₂⊗e_σ₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivector(pub Poly);

impl Trivector {
    pub fn tensor(&self) -> [[[Poly; 3]; 3]; 3] {
        let mut t: [[[Poly; 3]; 3]; 3] = Default::default();
        for (i, j, k, s) in PERMUTATIONS {
            t[i][j][k] = self.0.scale(&Rational::from_int(s));
        }
        t
    }
}

const PERMUTATIONS: [(usize, usize, usize, i64); 6] = [
    (0, 1, 2, 1),
    (1, 2, 0, 1),
    (2, 0, 1, 1),
    (1, 0, 2, -1),
    (0, 2, 1, -1),
    (2, 1, 0, -1),
];

/// Full tensor `[[r,r]]^{ijk} = Σ_{l,m} r^{il} c^j_{lm} r^{mk} + cyclic`.
pub fn schouten_tensor(r: &SkewBivector, g: &LieAlgebra3) -> [[[Poly; 3]; 3]; 3] {
    let rt = r.tensor();
    let term = |i: usize, j: usize, k: usize| -> Poly {
        let mut acc = Poly::zero();
        for l in 0..3 {
            for m in 0..3 {
                let c = g.constant(l, m, j);
                if c.is_zero() || rt[i][l].is_zero() || rt[m][k].is_zero() {
                    continue;
                }
                acc += &(&(&rt[i][l] * c) * &rt[m][k]);
            }
        }
        acc
    };
    core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            core::array::from_fn(|k| term(i, j, k) + term(j, k, i) + term(k, i, j))
        })
    })
}

/// `[[r, r]]` projected onto `Λ³`: the antisymmetrization of
/// [`schouten_tensor`], read off at index `(1,2,3)`.
pub fn schouten_bracket(r: &SkewBivector, g: &LieAlgebra3) -> Trivector {
    let t = schouten_tensor(r, g);
    let sum: Poly = PERMUTATIONS
        .iter()
        .map(|&(i, j, k, s)| t[i][j][k].scale(&Rational::from_int(s)))
        .sum();
    Trivector(sum.scale(&Rational::frac(1, 6)))
}

/// Components of `ad(eₐ)·t` acting on all three tensor slots, for
/// `a = 1, 2, 3`, each flattened as `27` entries in `(i,j,k)` order.
pub fn mcybe_residual(t: &Trivector, g: &LieAlgebra3) -> Vec<Vec<Poly>> {
    let tt = t.tensor();
    (0..3)
        .map(|a| {
            let mut out = Vec::with_capacity(27);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let mut acc = Poly::zero();
                        for l in 0..3 {
                            acc += &(g.constant(a, l, i) * &tt[l][j][k]);
                            acc += &(g.constant(a, l, j) * &tt[i][l][k]);
                            acc += &(g.constant(a, l, k) * &tt[i][j][l]);
                        }
                        out.push(acc);
                    }
                }
            }
            out
        })
        .collect()
}

/// Sklyanin bracket of a constant r-matrix on the local chart, built from
/// the left- and right-invariant vector fields of the book group.
pub fn sklyanin_bracket(r: &SkewBivector) -> PoissonStructure {
    let rt = r.tensor();
    let [x, y, z] = [Symbol::LocalX, Symbol::LocalY, Symbol::LocalZ].map(Var::new);
    let u = Poly::var(Symbol::U);
    let left = |f: &Poly| -> [Poly; 3] { [&u * &f.partial(y), &u * &f.partial(z), f.partial(x)] };
    let right = |f: &Poly| -> [Poly; 3] {
        let (fy, fz) = (f.partial(y), f.partial(z));
        let r3 = &(&f.partial(x) - &(&Poly::var(y) * &fy)) - &(&Poly::var(z) * &fz);
        [fy, fz, r3]
    };
    let bracket = |f: &Poly, g: &Poly| -> Poly {
        let (lf, lg, rf, rg) = (left(f), left(g), right(f), right(g));
        let mut acc = Poly::zero();
        for a in 0..3 {
            for b in 0..3 {
                if rt[a][b].is_zero() {
                    continue;
                }
                let w = &(&lf[a] * &lg[b]) - &(&rf[a] * &rg[b]);
                acc += &(&rt[a][b] * &w);
            }
        }
        acc
    };
    let [px, py, pz] = [x, y, z].map(Poly::var);
    PoissonStructure::from_table(
        Chart::Local,
        [bracket(&px, &py), bracket(&px, &pz), bracket(&py, &pz)],
    )
}

/// Family coefficients of the coboundary bracket:
/// `(a, b, c, d, e, f) = (r¹³, 0, 0, r²³, 0, −r¹²)`.
pub fn coboundary_coefficients(r: &SkewBivector) -> [Poly; 6] {
    let [r12, r13, r23] = r.upper.clone();
    [r13, Poly::zero(), Poly::zero(), r23, Poly::zero(), -r12]
}

/// [`coboundary_coefficients`] for a numeric r-matrix.
pub fn coboundary_params(r: &SkewBivector) -> Option<PLParams> {
    let k = coboundary_coefficients(r);
    let mut vals: [Rational; 6] = Default::default();
    for (v, p) in vals.iter_mut().zip(&k) {
        *v = if p.is_zero() {
            Rational::zero()
        } else {
            p.as_constant()?
        };
    }
    Some(PLParams::numeric(vals))
}

/// The 9×9 r̂-matrix of the generic family.
pub fn rhat_matrix(params: &PLParams) -> PolyMatrix {
    rhat_from_coefficients(&params.coefficients())
}

pub fn rhat_from_coefficients(k: &[Poly; 6]) -> PolyMatrix {
    // entries are (coefficient index, sign); index 6 marks an empty slot
    const O: (usize, i64) = (6, 0);
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    const F: usize = 5;
    #[rustfmt::skip]
    let layout: [[(usize, i64); 9]; 9] = [
        [O, (E, -2), (D, 1), (E, 2), O, O, (D, -1), O, O],
        [(C, 1), (B, 1), (A, 1), O, (E, 1), O, O, (D, -1), (F, 1)],
        [O, O, O, O, O, (E, 1), O, (E, -1), O],
        [(C, -1), (B, 1), O, (B, -2), (E, -1), (D, 1), (A, -1), O, (F, -1)],
        [O, (C, -2), O, (C, 2), O, (A, 1), O, (A, -1), O],
        [O, O, (C, -1), O, O, (B, -1), (C, 1), (B, 1), O],
        [O, O, (B, 1), O, O, (E, 1), (B, -1), (E, -1), O],
        [O, O, (C, -1), O, O, O, (C, 1), O, O],
        [O; 9],
    ];
    PolyMatrix::from_fn(9, 9, |i, j| {
        let (idx, s) = layout[i][j];
        if s == 0 {
            Poly::zero()
        } else {
            k[idx].scale(&Rational::from_int(s))
        }
    })
}

/// `R = 1 + r̂` on the stratum `b = c = e = 0`.
pub fn quantum_r(params: &PLParams) -> PolyMatrix {
    let mut k = params.coefficients();
    for i in [1, 2, 4] {
        k[i] = Poly::zero();
    }
    let r = rhat_from_coefficients(&k);
    PolyMatrix::identity(9).add(&r).expect("both 9×9")
}

/// The group element `M = [[X,0,Y],[0,X,Z],[0,0,1]]`.
pub fn group_element() -> PolyMatrix {
    let [x, y, z] = [Symbol::X, Symbol::Y, Symbol::Z].map(Poly::var);
    PolyMatrix::from_rows(alloc::vec![
        alloc::vec![x.clone(), Poly::zero(), y],
        alloc::vec![Poly::zero(), x, z],
        alloc::vec![Poly::zero(), Poly::zero(), Poly::one()],
    ])
    .expect("rectangular")
}

/// `{M ⊗, M}`: the entry at row `3i + j`, column `3k + l` is `{M_ik, M_jl}`.
pub fn tensor_bracket_matrix(s: &PoissonStructure) -> PolyMatrix {
    let m = group_element();
    PolyMatrix::from_fn(9, 9, |row, col| {
        let (i, j, k, l) = (row / 3, row % 3, col / 3, col % 3);
        s.bracket(&m[(i, k)], &m[(j, l)]).expect("group chart")
    })
}

/// Conjugation by `Q ⊗ Q`, where `Q` exchanges the first two basis vectors
/// of `C³`. `rhat_matrix` is written in this relabeled basis relative to
/// the group element `M`; in the basis of `M` itself the identity
/// `{M ⊗, M} = [M ⊗ M, r̂]` needs this relabeling.
pub fn swap_first_two(r: &PolyMatrix) -> PolyMatrix {
    let q = |k: usize| {
        let (i, j) = (k / 3, k % 3);
        let s = |n: usize| [1, 0, 2][n];
        3 * s(i) + s(j)
    };
    PolyMatrix::from_fn(9, 9, |i, j| r[(q(i), q(j))].clone())
}

/// `{M ⊗, M} − [M ⊗ M, r̂']` with `r̂' = (Q⊗Q) r̂ (Q⊗Q)`.
pub fn rhat_form_residual(params: &PLParams) -> PolyMatrix {
    let s = PoissonStructure::from_params(params, Chart::Group);
    rhat_form_residual_with(&s, &rhat_matrix(params))
}

/// As [`rhat_form_residual`] for a given structure and candidate r̂ in the
/// relabeled basis.
pub fn rhat_form_residual_with(s: &PoissonStructure, rhat: &PolyMatrix) -> PolyMatrix {
    let m = group_element();
    let mm = m.kron(&m);
    let rhs = mm.commutator(&swap_first_two(rhat)).expect("both 9×9");
    tensor_bracket_matrix(s).sub(&rhs).expect("both 9×9")
}

/// `r̂₁₂ = r̂ ⊗ I₃`, `r̂₁₃`, `r̂₂₃ = I₃ ⊗ r̂` on `(C³)^{⊗3}`.
pub fn legs(r: &PolyMatrix) -> [PolyMatrix; 3] {
    let i3 = PolyMatrix::identity(3);
    let r12 = r.kron(&i3);
    let r23 = i3.kron(r);
    let r13 = PolyMatrix::from_fn(27, 27, |row, col| {
        let (i, j, k) = (row / 9, (row / 3) % 3, row % 3);
        let (p, q, s) = (col / 9, (col / 3) % 3, col % 3);
        if j == q {
            r[(3 * i + k, 3 * p + s)].clone()
        } else {
            Poly::zero()
        }
    });
    [r12, r13, r23]
}

/// Symbolic products are abandoned above this many estimated terms.
pub const SYMBOLIC_TERM_BUDGET: usize = 1_000_000;

/// `[r₁₂,r₁₃] + [r₁₂,r₂₃] + [r₁₃,r₂₃]`.
pub fn cybe_of(r: &PolyMatrix) -> PolyMatrix {
    let [r12, r13, r23] = legs(r);
    let c = |a: &PolyMatrix, b: &PolyMatrix| a.commutator(b).expect("27×27");
    c(&r12, &r13)
        .add(&c(&r12, &r23))
        .and_then(|m| m.add(&c(&r13, &r23)))
        .expect("27×27")
}

/// `R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂`.
pub fn qybe_of(r: &PolyMatrix) -> PolyMatrix {
    let [r12, r13, r23] = legs(r);
    let prod = |a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix| {
        a.mul(b).and_then(|ab| ab.mul(c)).expect("27×27")
    };
    prod(&r12, &r13, &r23)
        .sub(&prod(&r23, &r13, &r12))
        .expect("27×27")
}

/// Outcome of a Yang–Baxter check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YbeResidual {
    Symbolic(PolyMatrix),
    /// Exact residuals at random rational parameter points, used when the
    /// symbolic product would exceed [`SYMBOLIC_TERM_BUDGET`].
    Sampled(Vec<PolyMatrix>),
}

impl YbeResidual {
    pub fn is_zero(&self) -> bool {
        match self {
            YbeResidual::Symbolic(m) => m.is_zero(),
            YbeResidual::Sampled(ms) => ms.iter().all(PolyMatrix::is_zero),
        }
    }

    pub fn first_nonzero(&self) -> Option<alloc::string::String> {
        use alloc::string::ToString;
        let show = |m: &PolyMatrix| {
            m.first_nonzero()
                .map(|((i, j), p)| alloc::format!("({i},{j}): {p}"))
        };
        match self {
            YbeResidual::Symbolic(m) => show(m),
            YbeResidual::Sampled(ms) => ms.iter().find_map(show).map(|s| s.to_string()),
        }
    }
}

fn estimated_terms(r: &PolyMatrix, factors: u32) -> usize {
    let max_terms = r.entries().iter().map(Poly::num_terms).max().unwrap_or(0);
    // each 27×27 leg has 3·nnz entries; a product row touches at most that many
    let nnz = 3 * r.nnz();
    nnz.saturating_mul(max_terms.saturating_pow(factors))
        .saturating_mul(27)
}

fn ybe_residual(
    r: &PolyMatrix,
    factors: u32,
    eval: impl Fn(&PolyMatrix) -> PolyMatrix,
    rng: &mut impl Rng,
) -> YbeResidual {
    if estimated_terms(r, factors) <= SYMBOLIC_TERM_BUDGET {
        return YbeResidual::Symbolic(eval(r));
    }
    let vars: Vec<Var> = r
        .entries()
        .iter()
        .flat_map(|p| p.variables())
        .collect::<alloc::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    YbeResidual::Sampled(
        (0..20)
            .map(|_| {
                let point: BTreeMap<Var, Rational> =
                    vars.iter().map(|&v| (v, random_rational(rng))).collect();
                eval(&r.eval(&point).expect("parameters are not inverted"))
            })
            .collect(),
    )
}

pub fn cybe_residual(params: &PLParams, rng: &mut impl Rng) -> YbeResidual {
    ybe_residual(&rhat_matrix(params), 2, cybe_of, rng)
}

pub fn qybe_residual(params: &PLParams, rng: &mut impl Rng) -> YbeResidual {
    ybe_residual(&quantum_r(params), 3, qybe_of, rng)
}

/// `Σ_{α<β} r^{αβ}(ρ(e_α)⊗ρ(e_β) − ρ(e_β)⊗ρ(e_α))` in the adjoint
/// representation of `g`.
pub fn representation_image(r: &SkewBivector, g: &LieAlgebra3) -> PolyMatrix {
    let rho: Vec<PolyMatrix> = (0..3).map(|i| g.adjoint(i)).collect();
    let mut acc = PolyMatrix::zeros(9, 9);
    for (n, (a, b)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        let coeff = &r.upper[n];
        if coeff.is_zero() {
            continue;
        }
        let w = rho[a]
            .kron(&rho[b])
            .sub(&rho[b].kron(&rho[a]))
            .expect("9×9");
        acc = acc.add(&w.map(|p| p * coeff)).expect("9×9");
    }
    acc
}

/// r̂ on the coboundary stratum, moved to the basis of `M`, minus the
/// adjoint image of `r` under `(a, d, f) = (r¹³, r²³, −r¹²)`.
pub fn representation_residual(r: &SkewBivector) -> PolyMatrix {
    let rhat = rhat_from_coefficients(&coboundary_coefficients(r));
    swap_first_two(&rhat)
        .sub(&representation_image(r, &LieAlgebra3::book()))
        .expect("9×9")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::Param;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn book_algebra() {
        let g = LieAlgebra3::book();
        assert!(g.is_antisymmetric());
        assert!(g.satisfies_jacobi());
        assert_eq!(
            g.adjoint(0),
            PolyMatrix::from_ints(&[[0, 0, 1], [0, 0, 0], [0, 0, 0]])
        );
        assert_eq!(
            g.adjoint(1),
            PolyMatrix::from_ints(&[[0, 0, 0], [0, 0, 1], [0, 0, 0]])
        );
        assert_eq!(
            g.adjoint(2),
            PolyMatrix::from_ints(&[[-1, 0, 0], [0, -1, 0], [0, 0, 0]])
        );
        assert_eq!(g.adjoint_trace(2), Poly::int(-2));
        // ad is a representation: [ad e₁, ad e₃] = ad [e₁, e₃] = ad e₁
        assert_eq!(
            g.adjoint(0).commutator(&g.adjoint(2)).unwrap(),
            g.adjoint(0)
        );
    }

    #[test]
    fn sl2_killing_form_is_nondegenerate() {
        let k = LieAlgebra3::sl2().killing_form();
        assert_eq!(k.determinant().unwrap(), Poly::int(-128));
        let kb = LieAlgebra3::book().killing_form();
        assert_eq!(kb[(2, 2)], Poly::int(2));
        assert!(kb.determinant().unwrap().is_zero());
    }

    #[test]
    fn schouten_vanishes_on_book_algebra() {
        let g = LieAlgebra3::book();
        let t = schouten_tensor(&SkewBivector::symbolic(), &g);
        assert!(t.iter().flatten().flatten().all(Poly::is_zero));
        let s = schouten_bracket(&SkewBivector::symbolic(), &g);
        assert!(s.0.is_zero());
        assert!(mcybe_residual(&s, &g).iter().flatten().all(Poly::is_zero));
        // independent route: the adjoint image of r solves the CYBE
        let image = representation_image(&SkewBivector::symbolic(), &g);
        assert!(cybe_of(&image).is_zero());
    }

    #[test]
    fn schouten_on_sl2_is_nonzero() {
        // r = J₊∧J₋ gives a nonzero ad-invariant trivector
        let g = LieAlgebra3::sl2();
        let s = schouten_bracket(&SkewBivector::from_ints([1, 0, 0]), &g);
        assert!(!s.0.is_zero());
        assert!(mcybe_residual(&s, &g).iter().flatten().all(Poly::is_zero));
    }

    #[test]
    fn volume_trivector_is_not_invariant() {
        let g = LieAlgebra3::book();
        let t = Trivector(Poly::one());
        let res = mcybe_residual(&t, &g);
        assert!(res[0].iter().all(Poly::is_zero));
        assert!(res[1].iter().all(Poly::is_zero));
        let expected = Trivector(Poly::int(-2)).tensor();
        let flat: Vec<Poly> = expected.into_iter().flatten().flatten().collect();
        assert_eq!(res[2], flat);
        assert!(mcybe_residual(&Trivector(Poly::zero()), &g)
            .iter()
            .flatten()
            .all(Poly::is_zero));
    }

    #[test]
    fn sklyanin_bracket_matches_coboundary_family() {
        let r = SkewBivector::symbolic();
        let s = sklyanin_bracket(&r);
        assert_eq!(s.table()[0], p("r13 - r13*u"));
        assert_eq!(s.table()[2], p("-r12 + r12*u^2 - r23*y + r13*z"));
        assert!(s.jacobi_residual().iter().all(Poly::is_zero));
        let family =
            PoissonStructure::from_coefficients(&coboundary_coefficients(&r), Chart::Local);
        assert_eq!(s, family);
        assert_eq!(
            s.to_chart(Chart::Group).unwrap(),
            PoissonStructure::from_coefficients(&coboundary_coefficients(&r), Chart::Group)
        );
        assert!(sklyanin_bracket(&SkewBivector::from_ints([0, 0, 0]))
            .table()
            .iter()
            .all(Poly::is_zero));
    }

    #[test]
    fn coboundary_params_examples() {
        let a = coboundary_params(&SkewBivector::from_ints([1, 0, 0])).unwrap();
        assert_eq!(a, PLParams::from_ints([0, 0, 0, 0, 0, -1]));
        let b = coboundary_params(&SkewBivector::from_ints([0, 0, -1])).unwrap();
        assert_eq!(b, PLParams::from_ints([0, 0, 0, -1, 0, 0]));
        assert_eq!(
            coboundary_params(&SkewBivector::from_ints([0, 0, 0])).unwrap(),
            PLParams::zero()
        );
        assert!(coboundary_params(&SkewBivector::symbolic()).is_none());
    }

    #[test]
    fn rhat_entries() {
        let r = rhat_matrix(&PLParams::symbolic());
        assert_eq!(r[(1, 0)], p("c"));
        assert_eq!(r[(1, 1)], p("b"));
        assert_eq!(r[(1, 8)], p("f"));
        assert_eq!(r[(3, 3)], p("-2*b"));
        assert!(rhat_matrix(&PLParams::zero()).is_zero());
        let cob = rhat_matrix(&PLParams::symbolic_with_zeros(&[
            Param::B,
            Param::C,
            Param::E,
        ]));
        assert!(cob.mul(&cob).unwrap().is_zero());
        assert!(!r.mul(&r).unwrap().is_zero());
    }

    #[test]
    fn quantum_r_closed_form() {
        let r = quantum_r(&PLParams::symbolic());
        assert_eq!(r[(0, 2)], p("d"));
        assert_eq!(r[(3, 8)], p("-f"));
        assert_eq!(r[(4, 7)], p("-a"));
        assert_eq!(r.nnz(), 9 + 10);
        // upper triangular
        assert!((0..9).all(|i| (0..i).all(|j| r[(i, j)].is_zero())));
    }

    #[test]
    fn rhat_form_identity() {
        assert!(rhat_form_residual(&PLParams::symbolic()).is_zero());
        assert!(rhat_form_residual(&PLParams::from_ints([0, 1, 0, 0, 0, 0])).is_zero());
        // without the basis relabeling the identity fails
        let s = PoissonStructure::from_params(&PLParams::symbolic(), Chart::Group);
        let m = group_element();
        let naive = tensor_bracket_matrix(&s)
            .sub(
                &m.kron(&m)
                    .commutator(&rhat_matrix(&PLParams::symbolic()))
                    .unwrap(),
            )
            .unwrap();
        assert!(!naive.is_zero());
    }

    #[test]
    fn corrupted_rhat_breaks_the_identity() {
        let params = PLParams::symbolic();
        let s = PoissonStructure::from_params(&params, Chart::Group);
        let mut r = rhat_matrix(&params);
        r[(1, 2)] = -&r[(1, 2)];
        assert!(!rhat_form_residual_with(&s, &r).is_zero());
    }

    #[test]
    fn fundamental_representation() {
        assert!(representation_residual(&SkewBivector::symbolic()).is_zero());
    }

    #[test]
    fn yang_baxter() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cob = PLParams::symbolic_with_zeros(&[Param::B, Param::C, Param::E]);
        assert!(cybe_residual(&cob, &mut rng).is_zero());
        assert!(qybe_residual(&cob, &mut rng).is_zero());
        assert!(qybe_residual(&PLParams::symbolic(), &mut rng).is_zero());
        assert!(cybe_residual(&PLParams::zero(), &mut rng).is_zero());
        assert!(qybe_residual(&PLParams::zero(), &mut rng).is_zero());
    }

    #[test]
    fn cybe_obstruction_is_c_times_e() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let res = cybe_residual(&PLParams::symbolic(), &mut rng);
        let YbeResidual::Symbolic(m) = res else {
            panic!("expected symbolic residual")
        };
        let ce = p("c*e");
        assert!(m
            .entries()
            .iter()
            .all(|e| e.is_zero() || *e == ce || *e == -&ce));
        assert!(!m.is_zero());
        assert!(cybe_residual(&PLParams::from_ints([0, 1, 0, 0, 0, 0]), &mut rng).is_zero());
        assert!(!cybe_residual(&PLParams::from_ints([0, 1, 1, 0, 1, 0]), &mut rng).is_zero());
    }

    #[test]
    fn legs_of_identity() {
        let [a, b, c] = legs(&PolyMatrix::identity(9));
        for m in [a, b, c] {
            assert_eq!(m, PolyMatrix::identity(27));
        }
    }
}
