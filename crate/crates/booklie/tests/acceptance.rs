//! Acceptance gate. Runs each criterion at its pinned tolerance and prints
//! one PASS/FAIL line per criterion. Criteria run sequentially so the
//! runtime budgets are measured without contention.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use booklie::suite::{field_oracle_gap, CorruptTarget};
use booklie_core::bracket::casimir;
use booklie_core::charts::{
    casimir_relation, named_bracket_error, random_deformation, sl2_limit_error, NamedId,
    NamedStructure,
};
use booklie_core::classify::{classify, is_coboundary, swap_e1_e2, ClassLetter};
use booklie_core::dynamics::{
    simulate, DynamicsError, FieldChoice, IntegratorOptions, LVHamiltonian, State, Trajectory,
    ZTerm,
};
use booklie_core::hopf::poisson_map_residual;
use booklie_core::qalgebra::{
    classical_limit_check, coaction_covariance, confluence_check, q_casimir_centrality,
    q_homomorphism_residual, MatrixOrdering, QCoproduct,
};
use booklie_core::rmatrix::{
    coboundary_coefficients, cybe_residual, mcybe_residual, qybe_residual, rhat_form_residual,
    rhat_matrix, schouten_bracket, sklyanin_bracket, LieAlgebra3, SkewBivector,
};
use booklie_core::sample::random_rational;
use booklie_core::{Chart, PLParams, Param, PoissonStructure, Poly, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Sub {
    label: String,
    ok: bool,
}

fn sub(label: impl Into<String>, ok: bool) -> Sub {
    Sub {
        label: label.into(),
        ok,
    }
}

struct Criterion {
    id: u8,
    title: &'static str,
    budget: Duration,
    run: fn() -> Vec<Sub>,
    /// For a criterion known to be unattainable: whether the observed
    /// failure has exactly the analysed shape.
    known_failure: Option<fn(&[Sub]) -> bool>,
}

fn all_zero<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> bool {
    polys.into_iter().all(Poly::is_zero)
}

fn bracket_identities() -> Vec<Sub> {
    let params = PLParams::symbolic();
    let s = PoissonStructure::from_params(&params, Chart::Group);
    vec![
        sub(
            "jacobi residual is the zero polynomial",
            all_zero(&s.jacobi_residual()),
        ),
        sub(
            "poisson-map residual is the zero polynomial",
            poisson_map_residual(&params).iter().all(|t| t.is_zero()),
        ),
    ]
}

fn casimir_centrality() -> Vec<Sub> {
    let params = PLParams::symbolic();
    let s = PoissonStructure::from_params(&params, Chart::Group);
    let c = casimir(&params).to_laurent().expect("X is invertible");
    ["X", "Y", "Z"]
        .iter()
        .map(|w| {
            let r = s
                .bracket(&c, &Poly::parse(w).expect("generator"))
                .expect("same chart");
            sub(format!("{{C, {w}}} = 0"), r.is_zero())
        })
        .collect()
}

fn r_matrix_layer() -> Vec<Sub> {
    let g = LieAlgebra3::book();
    let r = SkewBivector::symbolic();
    let mcybe = mcybe_residual(&schouten_bracket(&r, &g), &g);

    let skl = sklyanin_bracket(&r);
    let family = PoissonStructure::from_coefficients(&coboundary_coefficients(&r), Chart::Local);
    let expected = [
        r.upper[1].clone(),
        Poly::zero(),
        Poly::zero(),
        r.upper[2].clone(),
        Poly::zero(),
        -&r.upper[0],
    ];
    let sklyanin_family = (0..3).all(|k| skl.table()[k] == family.table()[k])
        && coboundary_coefficients(&r) == expected;

    let rhat_form = rhat_form_residual(&PLParams::symbolic());
    let stratum = PLParams::symbolic_with_zeros(&[Param::B, Param::C, Param::E]);
    let rh = rhat_matrix(&stratum);
    let square = rh.mul(&rh).expect("square matrices");

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut obstructed = 0;
    for _ in 0..20 {
        let mut v: [Rational; 6] = std::array::from_fn(|_| random_rational(&mut rng));
        v[1] = Rational::one();
        if !cybe_residual(&PLParams::numeric(v), &mut rng).is_zero() {
            obstructed += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    vec![
        sub(
            "mCYBE residual of [[r,r]] vanishes",
            all_zero(mcybe.iter().flatten()),
        ),
        sub(
            "Sklyanin bracket equals the (r13, 0, 0, r23, 0, -r12) family",
            sklyanin_family,
        ),
        sub(
            format!(
                "r-hat form residual is the zero {}x{} matrix",
                rhat_form.rows(),
                rhat_form.cols()
            ),
            rhat_form.rows() == 9 && rhat_form.cols() == 9 && rhat_form.first_nonzero().is_none(),
        ),
        sub(
            "r-hat squared vanishes for b = c = e = 0",
            square.first_nonzero().is_none(),
        ),
        sub(
            "QYBE residual of I + r-hat vanishes for b = c = e = 0",
            qybe_residual(&stratum, &mut rng).is_zero(),
        ),
        sub(
            format!("CYBE residual nonzero at {obstructed}/20 rational points with b = 1"),
            obstructed == 20,
        ),
    ]
}

fn classification() -> Vec<Sub> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut letters, mut flags, mut total) = (0, 0, 0);
    for letter in ClassLetter::ALL {
        for _ in 0..10 {
            let [l, a, w] = [(); 3].map(|_| random_rational(&mut rng));
            let params = letter.representative(&l, &a, &w);
            total += 1;
            letters += usize::from(classify(&params).letter() == Some(letter));
            flags += usize::from(
                is_coboundary(&params) == matches!(letter, ClassLetter::A | ClassLetter::B),
            );
        }
    }
    let mut swapped_ok = true;
    for _ in 0..10 {
        let [l, a, w] = [(); 3].map(|_| random_rational(&mut rng));
        let b = ClassLetter::B.representative(&l, &a, &w);
        let swapped = PLParams::numeric(swap_e1_e2(b.values().expect("numeric")));
        swapped_ok &=
            is_coboundary(&swapped) && classify(&swapped).letter() == Some(ClassLetter::B);
    }
    vec![
        sub(
            format!("{letters}/{total} instances classify to their row"),
            letters == total,
        ),
        sub(
            format!("coboundary flag matches A/B membership at {flags}/{total}"),
            flags == total,
        ),
        sub("swapped B instances are coboundary", swapped_ok),
    ]
}

fn charts() -> Vec<Sub> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for id in NamedId::ALL {
        let t = random_deformation(&mut rng);
        let s = NamedStructure::new(id, t, 1.0).expect("nonzero deformation");
        worst = worst.max(named_bracket_error(&s, &mut rng, 100));
    }
    let mut casimir_err: f64 = 0.0;
    for t in [0.5, -1.3, 2.0] {
        for (id, k1, k0) in [
            (NamedId::Sl2Standard, 2.0 * t, 1.0 / t),
            (NamedId::Sl2Nonstandard, -2.0 * t, 0.0),
        ] {
            let s = NamedStructure::new(id, t, 1.0).expect("nonzero deformation");
            casimir_err = match casimir_relation(&s, &mut rng, 100, 1e-10) {
                Ok(rel) => casimir_err
                    .max((rel.k1 - k1).abs())
                    .max((rel.k0 - k0).abs())
                    .max(rel.max_residual),
                Err(_) => f64::INFINITY,
            };
        }
    }
    let limit = sl2_limit_error(1e-4, &mut rng, 100).unwrap_or(f64::INFINITY);
    vec![
        sub(
            format!("closed forms of all 9 structures at 100 points: {worst:.2e} < 1e-9"),
            worst < 1e-9,
        ),
        sub(
            format!("Casimir affine relations: {casimir_err:.2e} < 1e-10"),
            casimir_err < 1e-10,
        ),
        sub(
            format!("eta = 1e-4 limit of sl2-standard: {limit:.2e} < 1e-6"),
            limit < 1e-6,
        ),
    ]
}

fn pinned_run(
    k: [f64; 6],
    beta: [f64; 3],
    t_end: f64,
    field: FieldChoice,
) -> Result<Trajectory, DynamicsError> {
    let h = LVHamiltonian::new([1.0; 3], beta);
    let opts = IntegratorOptions {
        rtol: 1e-10,
        ..IntegratorOptions::for_hamiltonian(&h)
    };
    simulate(
        k,
        &h,
        State {
            t: 0.0,
            w: [1.0, 2.0, 3.0],
        },
        t_end,
        opts,
        field,
    )
}

fn run_label(name: &str, r: &Result<Trajectory, DynamicsError>) -> Sub {
    match r {
        Ok(t) => {
            let (dh, dc) = (t.max_rel_h(), t.max_rel_casimir());
            sub(
                format!("{name}: drift H {dh:.2e}, C {dc:.2e} (tol 1e-8)"),
                dh < 1e-8 && dc < 1e-8,
            )
        }
        Err(e) => sub(format!("{name}: {e}"), false),
    }
}

const LV: [f64; 6] = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0];
const DEFORMED: [f64; 6] = [1.0; 6];

fn dynamics() -> Vec<Sub> {
    let mut out = Vec::new();
    for (name, k, t_end) in [
        ("LV run, beta = (1,1,1)", LV, 20.0),
        ("deformed run, all parameters 1", DEFORMED, 5.0),
    ] {
        let started = Instant::now();
        let r = pinned_run(k, [1.0; 3], t_end, FieldChoice::Explicit);
        let mut s = run_label(name, &r);
        let fast = started.elapsed() < Duration::from_secs(5);
        s.label
            .push_str(&format!(" [{:?}, budget 5 s]", started.elapsed()));
        s.ok &= fast;
        out.push(s);
    }
    let (lv, uncorrected) = field_oracle_gap(0, ZTerm::Uncorrected);
    out.push(sub(
        format!("LV field vs bracket flow at 100 states: {lv:.2e} < 1e-10"),
        lv < 1e-10,
    ));
    out.push(sub(
        format!(
            "uncorrected deformed field vs bracket flow at 100 states: {uncorrected:.2e} < 1e-10"
        ),
        uncorrected < 1e-10,
    ));
    out
}

/// The pinned runs leave the positive octant before `t_end`, under both the
/// written field and the bracket flow; the written deformed field carries a
/// wrong Ż term whose corrected form matches the bracket flow. With
/// `β = (-1,-1,-1)` the same runs conserve `H` and `C`.
fn dynamics_failure_is_the_analysed_one(subs: &[Sub]) -> bool {
    let exits_early =
        |k: [f64; 6], t_end: f64, field: FieldChoice| match pinned_run(k, [1.0; 3], t_end, field) {
            Err(DynamicsError::DomainExit { last } | DynamicsError::StepUnderflow { last }) => {
                last.t < t_end
            }
            _ => false,
        };
    let conserves = |k: [f64; 6], t_end: f64| {
        let r = pinned_run(k, [-1.0; 3], t_end, FieldChoice::Bracket);
        let s = run_label("", &r);
        println!("    info: same run with beta = (-1,-1,-1){}", s.label);
        s.ok
    };
    let (_, corrected) = field_oracle_gap(0, ZTerm::Corrected);
    println!("    info: corrected deformed field vs bracket flow: {corrected:.2e}");
    let runs_exit = [(LV, 20.0), (DEFORMED, 5.0)].into_iter().all(|(k, t)| {
        exits_early(k, t, FieldChoice::Explicit) && exits_early(k, t, FieldChoice::Bracket)
    });
    let only_expected = !subs[0].ok && !subs[1].ok && subs[2].ok && !subs[3].ok;
    only_expected
        && runs_exit
        && corrected < 1e-10
        && conserves(LV, 20.0)
        && conserves(DEFORMED, 5.0)
}

fn quantum_layer() -> Vec<Sub> {
    let confluence = confluence_check(6, 0, &mut ChaCha8Rng::seed_from_u64(10));
    vec![
        sub(
            format!(
                "rewriting confluent on all words up to length 6 ({:?} words)",
                confluence.as_ref().ok()
            ),
            confluence.is_ok(),
        ),
        sub(
            "coproduct respects the three relations exactly",
            q_homomorphism_residual(&QCoproduct::standard())
                .iter()
                .all(|p| p.is_zero()),
        ),
        sub(
            "quantum Casimir commutes with X, Y, Z",
            q_casimir_centrality().iter().all(|p| p.is_zero()),
        ),
        sub(
            "coaction covariance with Y in the first row",
            coaction_covariance(MatrixOrdering::YFirst).is_zero(),
        ),
        sub(
            "classical limit reproduces the Lotka-Volterra brackets",
            classical_limit_check().iter().all(|c| c.holds()),
        ),
    ]
}

fn failing_checks(args: &[&str]) -> (Option<i32>, Vec<String>) {
    let out = Command::new(env!("CARGO_BIN_EXE_booklie"))
        .args(args)
        .args(["--json", "-"])
        .output()
        .expect("binary runs");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    let failed = report["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .filter(|c| c["status"] != "PASS")
        .map(|c| c["name"].as_str().expect("name").to_owned())
        .collect();
    (out.status.code(), failed)
}

fn negative_controls() -> Vec<Sub> {
    let (code, failed) = failing_checks(&["verify"]);
    let mut out = vec![sub(
        format!("clean suite: exit {code:?}, failures {failed:?}"),
        code == Some(0) && failed.is_empty(),
    )];
    for target in CorruptTarget::ALL {
        let (code, failed) = failing_checks(&["verify", "--corrupt", target.name()]);
        out.push(sub(
            format!(
                "--corrupt {}: exit {code:?}, failures {failed:?}",
                target.name()
            ),
            code == Some(1) && failed == [target.check_name()],
        ));
    }
    out
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "bracket and Poisson-map identities",
        budget: Duration::from_secs(5),
        run: bracket_identities,
        known_failure: None,
    },
    Criterion {
        id: 2,
        title: "Casimir centrality",
        budget: Duration::from_secs(2),
        run: casimir_centrality,
        known_failure: None,
    },
    Criterion {
        id: 3,
        title: "r-matrix layer",
        budget: Duration::from_secs(60),
        run: r_matrix_layer,
        known_failure: None,
    },
    Criterion {
        id: 4,
        title: "classification",
        budget: Duration::from_secs(1),
        run: classification,
        known_failure: None,
    },
    Criterion {
        id: 5,
        title: "charts",
        budget: Duration::from_secs(10),
        run: charts,
        known_failure: None,
    },
    Criterion {
        id: 6,
        title: "dynamics",
        budget: Duration::from_secs(15),
        run: dynamics,
        known_failure: Some(dynamics_failure_is_the_analysed_one),
    },
    Criterion {
        id: 7,
        title: "quantum layer",
        budget: Duration::from_secs(10),
        run: quantum_layer,
        known_failure: None,
    },
    Criterion {
        id: 8,
        title: "negative controls",
        budget: Duration::from_secs(60),
        run: negative_controls,
        known_failure: None,
    },
];

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for c in CRITERIA {
        let started = Instant::now();
        let subs = (c.run)();
        let elapsed = started.elapsed();
        let ok = subs.iter().all(|s| s.ok) && elapsed < c.budget;
        println!(
            "criterion {} ({}): {} [{:.3} s, budget {} s]",
            c.id,
            c.title,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        for s in &subs {
            println!("    {} {}", if s.ok { "ok  " } else { "FAIL" }, s.label);
        }
        if ok {
            passed += 1;
            continue;
        }
        match c.known_failure {
            Some(analysed) if analysed(&subs) => {
                println!("    failure matches the recorded analysis")
            }
            _ => unexpected.push(c.id),
        }
    }
    println!("{passed}/{} criteria passed", CRITERIA.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
