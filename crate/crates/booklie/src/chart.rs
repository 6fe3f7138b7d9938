//! `booklie chart`: a named structure in its coordinate chart, with optional
//! numerical checks.

use booklie_core::charts::{
    casimir_relation, deformed_coproduct_check, named_bracket_error, numeric_jacobi,
    round_trip_error, sl2_limit_error, ChartError, CoordinateChart, NamedId, NamedStructure,
    NumericBracket,
};
use booklie_core::sample::uniform;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::Status;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartCheck {
    pub name: &'static str,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
}

impl ChartCheck {
    fn new(name: &'static str, residual: f64, tolerance: f64) -> Self {
        let status = if residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        ChartCheck {
            name,
            status,
            residual,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartReport {
    pub id: &'static str,
    pub chart: &'static str,
    pub deformation: f64,
    pub coupling: f64,
    /// `(a, b, c, d, e, f)` bound by the structure.
    pub params: [f64; 6],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub casimir_relation: Option<(f64, f64)>,
    pub checks: Vec<ChartCheck>,
}

impl ChartReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChartUsage {
    #[error("{0} needs --{1}")]
    MissingDeformation(&'static str, &'static str),
    #[error("{0} takes --{1}, not --{2}")]
    WrongDeformation(&'static str, &'static str, &'static str),
    #[error(transparent)]
    Chart(#[from] ChartError),
}

/// Validates the id and picks `η` or `φ` according to the structure's chart.
pub fn resolve(
    id: &str,
    eta: Option<f64>,
    phi: Option<f64>,
    coupling: f64,
) -> Result<NamedStructure, ChartUsage> {
    let id: NamedId = id.parse()?;
    let (want, other, given, unwanted) = if id.uses_nonstandard_chart() {
        ("phi", "eta", phi, eta)
    } else {
        ("eta", "phi", eta, phi)
    };
    if unwanted.is_some() {
        return Err(ChartUsage::WrongDeformation(id.name(), want, other));
    }
    let t = given.ok_or(ChartUsage::MissingDeformation(id.name(), want))?;
    Ok(NamedStructure::new(id, t, coupling)?)
}

pub fn chart_report(s: &NamedStructure, check: bool, points: usize, seed: u64) -> ChartReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ChartReport {
        id: s.id.name(),
        chart: match s.chart {
            CoordinateChart::Standard { .. } => "standard",
            CoordinateChart::Nonstandard { .. } => "nonstandard",
            CoordinateChart::Local => "local",
        },
        deformation: s.deformation(),
        coupling: s.coupling,
        params: s.bindings(),
        casimir_relation: None,
        checks: Vec::new(),
    };
    if !check {
        return report;
    }
    report.checks.push(ChartCheck::new(
        "closed-form",
        named_bracket_error(s, &mut rng, points),
        1e-9,
    ));
    if let Ok(rel) = casimir_relation(s, &mut rng, points, f64::INFINITY) {
        report.casimir_relation = Some((rel.k1, rel.k0));
        report
            .checks
            .push(ChartCheck::new("casimir-relation", rel.max_residual, 1e-10));
    }
    let worst = deformed_coproduct_check(&s.chart, &mut rng, points);
    report.checks.push(ChartCheck::new(
        "coproduct",
        worst.into_iter().fold(0.0, f64::max),
        1e-8,
    ));
    report.checks.push(ChartCheck::new(
        "round-trip",
        round_trip_error(&s.chart, &mut rng, points),
        1e-12,
    ));
    let bracket = NumericBracket::new(s.bindings());
    let mut jac: f64 = 0.0;
    for _ in 0..points {
        let q = std::array::from_fn(|_| uniform(&mut rng, -1.0, 1.0));
        match numeric_jacobi(&bracket, &s.chart, q, 1e-5) {
            Ok(j) => jac = jac.max(j.abs()),
            Err(_) => jac = f64::INFINITY,
        }
    }
    report.checks.push(ChartCheck::new("jacobi", jac, 1e-6));
    if s.id == NamedId::Sl2Standard {
        let err = sl2_limit_error(1e-4, &mut rng, points).unwrap_or(f64::INFINITY);
        report.checks.push(ChartCheck::new("sl2-limit", err, 1e-6));
    }
    report
}
