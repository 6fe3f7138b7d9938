//! The verification suite behind `booklie verify` and `booklie qcheck`.

use std::fmt::Display;
use std::time::Instant;

use booklie_core::bracket::casimir;
use booklie_core::charts::NumericBracket;
use booklie_core::charts::{
    casimir_relation, named_bracket_error, random_deformation, sl2_limit_error, NamedId,
    NamedStructure,
};
use booklie_core::classify::{classify, tangent_bialgebra, ClassLetter};
use booklie_core::dynamics::{
    deformed_vector_field, hamiltonian_flow, involution_check, lv_vector_field, LVHamiltonian,
    ZTerm,
};
use booklie_core::hopf::{
    coassociativity_residual, hopf_axiom_residuals, poisson_map_residual_for,
};
use booklie_core::qalgebra::{
    classical_limit_check, coaction_covariance, confluence_check, q_casimir_centrality,
    q_homomorphism_residual, MatrixOrdering, NCPoly, QCoproduct,
};
use booklie_core::rmatrix::{
    coboundary_coefficients, cybe_residual, mcybe_residual, qybe_residual, representation_residual,
    rhat_form_residual, rhat_form_residual_with, rhat_matrix, schouten_bracket, sklyanin_bracket,
    LieAlgebra3, SkewBivector,
};
use booklie_core::sample::{random_rational, uniform};
use booklie_core::{Chart, PLParams, Param, PoissonStructure, Poly, PolyMatrix, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::report::{CheckResult, ReportInput, Status, VerificationReport};

/// Debug switches that feed a deliberately wrong input to one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CorruptTarget {
    /// Adds `X·Y²` to `{X, Y}`.
    Jacobi,
    /// Uses the constant bracket `{X, Y} = 1`, which is Poisson but not multiplicative.
    PoissonMap,
    /// Adds `Y` to the Casimir.
    Casimir,
    /// Flips the sign of one entry of r̂.
    Rhat,
    /// Uses `Δ(Ŷ) = Ŷ⊗X̂ + 1⊗Ŷ`.
    Qcoproduct,
}

impl CorruptTarget {
    pub const ALL: [CorruptTarget; 5] = [
        CorruptTarget::Jacobi,
        CorruptTarget::PoissonMap,
        CorruptTarget::Casimir,
        CorruptTarget::Rhat,
        CorruptTarget::Qcoproduct,
    ];

    /// The check this switch is meant to break.
    pub fn check_name(self) -> &'static str {
        match self {
            CorruptTarget::Jacobi => "bracket.jacobi",
            CorruptTarget::PoissonMap => "hopf.poisson-map",
            CorruptTarget::Casimir => "bracket.casimir",
            CorruptTarget::Rhat => "rmatrix.rhat-form",
            CorruptTarget::Qcoproduct => "qalgebra.homomorphism",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CorruptTarget::Jacobi => "jacobi",
            CorruptTarget::PoissonMap => "poisson-map",
            CorruptTarget::Casimir => "casimir",
            CorruptTarget::Rhat => "rhat",
            CorruptTarget::Qcoproduct => "qcoproduct",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Group names (`rmatrix`) or full check names (`rmatrix.qybe`).
    pub only: Vec<String>,
    pub corrupt: Vec<CorruptTarget>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check or group {0:?}")]
pub struct UnknownCheck(pub String);

struct Ctx {
    seed: u64,
    corrupt: Vec<CorruptTarget>,
}

impl Ctx {
    fn corrupted(&self, t: CorruptTarget) -> bool {
        self.corrupt.contains(&t)
    }

    /// A generator private to one check, so filtering never shifts the
    /// random draws of another.
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }
}

struct Outcome {
    passed: bool,
    residual: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, residual: impl Into<String>) -> Self {
        Outcome {
            passed,
            residual: residual.into(),
            notes: Vec::new(),
        }
    }

    fn zero_polys<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Self {
        match polys.into_iter().find(|p| !p.is_zero()) {
            None => Outcome::new(true, "0"),
            Some(p) => Outcome::new(false, truncate(p)),
        }
    }

    fn zero_matrix(m: &PolyMatrix) -> Self {
        match m.first_nonzero() {
            None => Outcome::new(true, "0"),
            Some(((i, j), p)) => Outcome::new(false, format!("({i},{j}): {}", truncate(p))),
        }
    }

    fn zero_nc<W: booklie_core::qalgebra::Word>(items: &[NCPoly<W>]) -> Self {
        match items.iter().position(|p| !p.is_zero()) {
            None => Outcome::new(true, "0"),
            Some(k) => Outcome::new(false, format!("[{k}] {}", truncate(&items[k]))),
        }
    }

    fn below(err: f64, tol: f64) -> Self {
        Outcome::new(err < tol, format!("{err:.3e} (tol {tol:.0e})"))
    }

    fn with_note(mut self, note: String) -> Self {
        self.notes.push(note);
        self
    }
}

fn truncate(x: &impl Display) -> String {
    let s = x.to_string();
    match s.char_indices().nth(160) {
        Some((i, _)) => format!("{}…", &s[..i]),
        None => s,
    }
}

struct Check {
    name: &'static str,
    run: fn(&Ctx) -> Outcome,
}

impl Check {
    fn group(&self) -> &'static str {
        self.name.split('.').next().expect("names are group.check")
    }
}

const CHECKS: &[Check] = &[
    Check {
        name: "bracket.jacobi",
        run: bracket_jacobi,
    },
    Check {
        name: "bracket.casimir",
        run: bracket_casimir,
    },
    Check {
        name: "bracket.linearization",
        run: bracket_linearization,
    },
    Check {
        name: "hopf.poisson-map",
        run: hopf_poisson_map,
    },
    Check {
        name: "hopf.coassociativity",
        run: |_| Outcome::zero_polys(coassociativity_residual().iter().map(|t| t.poly())),
    },
    Check {
        name: "hopf.antipode",
        run: hopf_antipode,
    },
    Check {
        name: "rmatrix.mcybe",
        run: rmatrix_mcybe,
    },
    Check {
        name: "rmatrix.sklyanin",
        run: rmatrix_sklyanin,
    },
    Check {
        name: "rmatrix.rhat-form",
        run: rmatrix_rhat_form,
    },
    Check {
        name: "rmatrix.rhat-square",
        run: rmatrix_rhat_square,
    },
    Check {
        name: "rmatrix.cybe-coboundary",
        run: rmatrix_cybe_coboundary,
    },
    Check {
        name: "rmatrix.qybe",
        run: rmatrix_qybe,
    },
    Check {
        name: "rmatrix.cybe-obstruction",
        run: rmatrix_cybe_obstruction,
    },
    Check {
        name: "rmatrix.representation",
        run: |_| Outcome::zero_matrix(&representation_residual(&SkewBivector::symbolic())),
    },
    Check {
        name: "classify.table",
        run: classify_table,
    },
    Check {
        name: "classify.bialgebra",
        run: classify_bialgebra,
    },
    Check {
        name: "charts.closed-forms",
        run: charts_closed_forms,
    },
    Check {
        name: "charts.casimir",
        run: charts_casimir,
    },
    Check {
        name: "charts.sl2-limit",
        run: charts_sl2_limit,
    },
    Check {
        name: "dynamics.field-oracle",
        run: dynamics_field_oracle,
    },
    Check {
        name: "dynamics.involution",
        run: dynamics_involution,
    },
    Check {
        name: "qalgebra.confluence",
        run: qalgebra_confluence,
    },
    Check {
        name: "qalgebra.homomorphism",
        run: qalgebra_homomorphism,
    },
    Check {
        name: "qalgebra.casimir",
        run: |_| Outcome::zero_nc(&q_casimir_centrality()),
    },
    Check {
        name: "qalgebra.coaction",
        run: qalgebra_coaction,
    },
    Check {
        name: "qalgebra.classical-limit",
        run: qalgebra_classical_limit,
    },
];

/// Names of every check, in suite order.
pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.name)
}

pub fn run_suite(opts: &SuiteOptions) -> Result<VerificationReport, UnknownCheck> {
    for f in &opts.only {
        if !CHECKS.iter().any(|c| c.name == f || c.group() == f) {
            return Err(UnknownCheck(f.clone()));
        }
    }
    let ctx = Ctx {
        seed: opts.seed,
        corrupt: opts.corrupt.clone(),
    };
    let mut report = VerificationReport::new(ReportInput {
        seed: opts.seed,
        only: opts.only.clone(),
        corrupt: opts.corrupt.iter().map(|t| t.name().to_string()).collect(),
    });
    let selected = CHECKS.iter().filter(|c| {
        opts.only.is_empty() || opts.only.iter().any(|f| c.name == f || c.group() == f)
    });
    for check in selected {
        let start = Instant::now();
        let outcome = (check.run)(&ctx);
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        report.checks.push(CheckResult {
            name: check.name.to_string(),
            group: check.group().to_string(),
            status: if outcome.passed {
                Status::Pass
            } else {
                Status::Fail
            },
            residual: outcome.residual,
            wall_ms,
        });
        report.notes.extend(outcome.notes);
    }
    Ok(report)
}

fn generic_group() -> PoissonStructure {
    PoissonStructure::from_params(&PLParams::symbolic(), Chart::Group)
}

fn coboundary_stratum() -> PLParams {
    PLParams::symbolic_with_zeros(&[Param::B, Param::C, Param::E])
}

fn bracket_jacobi(ctx: &Ctx) -> Outcome {
    if ctx.corrupted(CorruptTarget::Jacobi) {
        let mut table = generic_group().table().clone();
        table[0] += &Poly::parse("X*Y^2").expect("valid literal");
        let s = PoissonStructure::from_table(Chart::Group, table);
        return Outcome::zero_polys(&s.jacobi_residual());
    }
    let group = generic_group().jacobi_residual();
    let local =
        PoissonStructure::from_params(&PLParams::symbolic(), Chart::Local).jacobi_residual();
    Outcome::zero_polys(group.iter().chain(&local))
}

fn bracket_casimir(ctx: &Ctx) -> Outcome {
    let s = generic_group();
    let mut c = casimir(&PLParams::symbolic())
        .to_laurent()
        .expect("X is invertible");
    if ctx.corrupted(CorruptTarget::Casimir) {
        c += &Poly::var(booklie_core::Symbol::Y);
    }
    let residuals: Vec<Poly> = ["X", "Y", "Z"]
        .iter()
        .map(|w| {
            s.bracket(&c, &Poly::parse(w).expect("generator"))
                .expect("same chart")
        })
        .collect();
    Outcome::zero_polys(&residuals)
}

fn bracket_linearization(_: &Ctx) -> Outcome {
    let local = PoissonStructure::from_params(&PLParams::symbolic(), Chart::Local);
    match local.linearize() {
        Ok(lin) => {
            let g = LieAlgebra3::from_constants(lin.structure_constants());
            let jac = g.jacobi_residual();
            Outcome::zero_polys(lin.constants.iter().chain(&jac))
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn hopf_poisson_map(ctx: &Ctx) -> Outcome {
    let s = if ctx.corrupted(CorruptTarget::PoissonMap) {
        PoissonStructure::from_table(Chart::Group, [Poly::one(), Poly::zero(), Poly::zero()])
    } else {
        generic_group()
    };
    Outcome::zero_polys(poisson_map_residual_for(&s).iter().map(|t| t.poly()))
}

fn hopf_antipode(_: &Ctx) -> Outcome {
    match hopf_axiom_residuals() {
        Ok(r) => Outcome::zero_polys(&r),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn rmatrix_mcybe(_: &Ctx) -> Outcome {
    let g = LieAlgebra3::book();
    let t = schouten_bracket(&SkewBivector::symbolic(), &g);
    let res = mcybe_residual(&t, &g);
    let out = Outcome::zero_polys(res.iter().flatten());
    if out.passed {
        let sl2 = LieAlgebra3::sl2();
        let control = schouten_bracket(&SkewBivector::from_ints([1, 0, 0]), &sl2);
        let invariant = mcybe_residual(&control, &sl2)
            .iter()
            .flatten()
            .all(Poly::is_zero);
        return Outcome::new(
            invariant && !control.0.is_zero(),
            format!(
                "0 ([[r,r]] = {}; sl(2) control [[r,r]] = {})",
                t.0, control.0
            ),
        );
    }
    out
}

fn rmatrix_sklyanin(_: &Ctx) -> Outcome {
    let r = SkewBivector::symbolic();
    let s = sklyanin_bracket(&r);
    let family = PoissonStructure::from_coefficients(&coboundary_coefficients(&r), Chart::Local);
    let diff: Vec<Poly> = (0..3).map(|k| &s.table()[k] - &family.table()[k]).collect();
    Outcome::zero_polys(diff.iter().chain(&s.jacobi_residual()))
}

fn rmatrix_rhat_form(ctx: &Ctx) -> Outcome {
    let params = PLParams::symbolic();
    if ctx.corrupted(CorruptTarget::Rhat) {
        let mut r = rhat_matrix(&params);
        r[(1, 2)] = -&r[(1, 2)];
        return Outcome::zero_matrix(&rhat_form_residual_with(&generic_group(), &r));
    }
    Outcome::zero_matrix(&rhat_form_residual(&params))
}

fn rmatrix_rhat_square(_: &Ctx) -> Outcome {
    let r = rhat_matrix(&coboundary_stratum());
    match r.mul(&r) {
        Ok(sq) => Outcome::zero_matrix(&sq),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn ybe_outcome(res: &booklie_core::rmatrix::YbeResidual) -> Outcome {
    match res.first_nonzero() {
        None => Outcome::new(true, "0"),
        Some(s) => Outcome::new(false, truncate(&s)),
    }
}

fn rmatrix_cybe_coboundary(ctx: &Ctx) -> Outcome {
    ybe_outcome(&cybe_residual(&coboundary_stratum(), &mut ctx.rng(1)))
}

fn rmatrix_qybe(ctx: &Ctx) -> Outcome {
    ybe_outcome(&qybe_residual(&coboundary_stratum(), &mut ctx.rng(2)))
}

/// `b = 1` with the other five parameters random nonzero rationals: the
/// residual must be nonzero at every draw.
fn rmatrix_cybe_obstruction(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(3);
    for draw in 0..20 {
        let mut v: [Rational; 6] = std::array::from_fn(|_| random_rational(&mut rng));
        v[1] = Rational::one();
        let params = PLParams::numeric(v);
        if cybe_residual(&params, &mut rng).is_zero() {
            return Outcome::new(false, format!("draw {draw}: residual vanishes at {params}"));
        }
    }
    Outcome::new(true, "nonzero at 20/20 draws")
}

fn classify_table(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(4);
    for letter in ClassLetter::ALL {
        for _ in 0..10 {
            let [l, a, w] = [(); 3].map(|_| random_rational(&mut rng));
            let params = letter.representative(&l, &a, &w);
            let got = classify(&params);
            if got.letter() != Some(letter) {
                return Outcome::new(
                    false,
                    format!("{params} classified as {got:?}, expected {letter:?}"),
                );
            }
        }
    }
    Outcome::new(true, "90/90 instances")
}

fn classify_bialgebra(_: &Ctx) -> Outcome {
    match tangent_bialgebra(&PLParams::symbolic()) {
        Ok(_) => Outcome::new(true, "0"),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn charts_closed_forms(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(5);
    let mut worst: f64 = 0.0;
    for id in NamedId::ALL {
        let t = random_deformation(&mut rng);
        let s = NamedStructure::new(id, t, 1.0).expect("nonzero deformation");
        worst = worst.max(named_bracket_error(&s, &mut rng, 100));
    }
    Outcome::below(worst, 1e-9)
}

fn charts_casimir(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(6);
    let mut worst: f64 = 0.0;
    for id in [NamedId::Sl2Standard, NamedId::Sl2Nonstandard] {
        let t = random_deformation(&mut rng);
        let s = NamedStructure::new(id, t, 1.0).expect("nonzero deformation");
        let expected = if id == NamedId::Sl2Standard {
            (2.0 * t, 1.0 / t)
        } else {
            (-2.0 * t, 0.0)
        };
        match casimir_relation(&s, &mut rng, 100, 1e-10) {
            Ok(rel) => {
                let err = (rel.k1 - expected.0)
                    .abs()
                    .max((rel.k0 - expected.1).abs())
                    .max(rel.max_residual);
                worst = worst.max(err);
            }
            Err(e) => return Outcome::new(false, format!("{}: {e}", id.name())),
        }
    }
    Outcome::below(worst, 1e-10)
}

fn charts_sl2_limit(ctx: &Ctx) -> Outcome {
    match sl2_limit_error(1e-4, &mut ctx.rng(7), 100) {
        Ok(err) => Outcome::below(err, 1e-6),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn random_state(rng: &mut ChaCha8Rng) -> ([f64; 6], LVHamiltonian, [f64; 3]) {
    let k = std::array::from_fn(|_| uniform(rng, -2.0, 2.0));
    let h = LVHamiltonian::new(
        std::array::from_fn(|_| uniform(rng, -2.0, 2.0)),
        std::array::from_fn(|_| uniform(rng, -2.0, 2.0)),
    );
    (k, h, std::array::from_fn(|_| uniform(rng, 0.2, 3.0)))
}

fn relative_gap(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3)
        .map(|i| (a[i] - b[i]).abs() / (1.0 + b[i].abs()))
        .fold(0.0, f64::max)
}

/// Max relative gap between `field` and the bracket-driven flow over 100 random states.
pub fn field_oracle_gap(seed: u64, z_term: ZTerm) -> (f64, f64) {
    let mut rng = Ctx {
        seed,
        corrupt: Vec::new(),
    }
    .rng(8);
    let (mut lv, mut deformed) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (k, h, w) = random_state(&mut rng);
        let oracle = hamiltonian_flow(&NumericBracket::new(k), &h, w).expect("positive state");
        let field = deformed_vector_field(k, &h, w, z_term).expect("positive state");
        deformed = deformed.max(relative_gap(field, oracle));
        let lv_k = [0.0, k[1], 0.0, 0.0, 0.0, 0.0];
        let lv_oracle =
            hamiltonian_flow(&NumericBracket::new(lv_k), &h, w).expect("positive state");
        lv = lv.max(relative_gap(
            lv_vector_field(k[1], &h, w).expect("positive state"),
            lv_oracle,
        ));
    }
    (lv, deformed)
}

fn dynamics_field_oracle(ctx: &Ctx) -> Outcome {
    let (lv, corrected) = field_oracle_gap(ctx.seed, ZTerm::Corrected);
    let (_, uncorrected) = field_oracle_gap(ctx.seed, ZTerm::Uncorrected);
    let out = Outcome::below(lv.max(corrected), 1e-10);
    if uncorrected < 1e-10 {
        return out;
    }
    out.with_note(format!(
        "the uncorrected last term of Ż, −eY[2(α1Y+β1)+(α2Y+β2)], disagrees with the bracket-driven flow \
         (max relative gap {uncorrected:.3e}); the bracket gives −eY[2(α1X+β1)+(α2Y+β2)], which is used for integration"
    ))
}

fn dynamics_involution(ctx: &Ctx) -> Outcome {
    let mut rng = ctx.rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let (k, h, _) = random_state(&mut rng);
        worst = worst.max(involution_check(k, &h, &mut rng, 100));
    }
    Outcome::below(worst, 1e-9)
}

fn qalgebra_confluence(ctx: &Ctx) -> Outcome {
    match confluence_check(6, 1000, &mut ctx.rng(10)) {
        Ok(n) => Outcome::new(true, format!("0 ({n} words)")),
        Err(f) => Outcome::new(false, format!("{:?}: {} vs {}", f.word, f.left, f.right)),
    }
}

fn qalgebra_homomorphism(ctx: &Ctx) -> Outcome {
    let delta = if ctx.corrupted(CorruptTarget::Qcoproduct) {
        QCoproduct::corrupted()
    } else {
        QCoproduct::standard()
    };
    Outcome::zero_nc(&q_homomorphism_residual(&delta))
}

fn qalgebra_coaction(_: &Ctx) -> Outcome {
    let y_first = coaction_covariance(MatrixOrdering::YFirst);
    let z_first = coaction_covariance(MatrixOrdering::ZFirst);
    let out = Outcome::zero_nc(std::slice::from_ref(&y_first));
    if z_first.is_zero() {
        return out;
    }
    out.with_note(format!(
        "coaction covariance holds with Ŷ in the first row of the quantum matrix; \
         with Ẑ first the residual is {}",
        truncate(&z_first)
    ))
}

fn qalgebra_classical_limit(_: &Ctx) -> Outcome {
    let checks = classical_limit_check();
    match checks.iter().find(|c| !c.holds()) {
        None => Outcome::new(true, "0"),
        Some(c) => Outcome::new(
            false,
            format!(
                "pair {:?}: order 0 {}, order 1 {} vs {}",
                c.pair, c.zeroth_order, c.first_order, c.expected
            ),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_grouped() {
        let names: Vec<_> = check_names().collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(names.iter().all(|n| n.contains('.')));
        for t in CorruptTarget::ALL {
            assert!(names.contains(&t.check_name()));
        }
    }

    #[test]
    fn filtering() {
        let r = run_suite(&SuiteOptions {
            only: vec!["qalgebra".into()],
            ..Default::default()
        })
        .unwrap();
        assert!(r.checks.iter().all(|c| c.group == "qalgebra"));
        assert!(r.all_passed());
        assert_eq!(
            run_suite(&SuiteOptions {
                only: vec!["nope".into()],
                ..Default::default()
            }),
            Err(UnknownCheck("nope".into()))
        );
    }
}
