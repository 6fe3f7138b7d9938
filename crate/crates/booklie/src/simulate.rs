//! Trajectory output (CSV, gnuplot, JSON summaries) and parameter sweeps.

use std::fmt::Write as _;
use std::num::NonZeroUsize;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use booklie_core::dynamics::{simulate, DynamicsError, Trajectory};
use booklie_core::Param;
use serde::Serialize;

use crate::config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum SimulateError {
    #[error("parameters must be numeric to simulate")]
    SymbolicParams,
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const CSV_HEADER: &str = "t,X,Y,Z,H,C,relH,relC";

pub fn trajectory_csv(t: &Trajectory) -> String {
    let mut out = String::with_capacity(64 * t.samples.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in &t.samples {
        let [x, y, z] = s.state.w;
        let row = [s.state.t, x, y, z, s.h, s.casimir, s.rel_h, s.rel_casimir].map(fmt_f64);
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn gnuplot_script(csv: &Path) -> String {
    let csv = csv.display();
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set multiplot layout 2,1\n\
         set xlabel 't'\n\
         plot '{csv}' using 1:2 with lines, '' using 1:3 with lines, '' using 1:4 with lines\n\
         set logscale y\n\
         set ylabel 'relative drift'\n\
         plot '{csv}' using 1:(abs($7)+1e-300) with lines title 'relH', '' using 1:(abs($8)+1e-300) with lines title 'relC'\n\
         unset multiplot\n"
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub params: String,
    pub steps: usize,
    pub rejections: usize,
    pub evaluations: usize,
    pub rtol: f64,
    pub atol: f64,
    pub t_final: f64,
    pub final_state: [f64; 3],
    pub max_rel_h: f64,
    pub max_rel_casimir: f64,
}

impl RunSummary {
    pub fn new(params: String, t: &Trajectory) -> Self {
        let last = t.last();
        RunSummary {
            params,
            steps: t.steps,
            rejections: t.rejections,
            evaluations: t.evaluations,
            rtol: t.options.rtol,
            atol: t.options.atol,
            t_final: last.state.t,
            final_state: last.state.w,
            max_rel_h: t.max_rel_h(),
            max_rel_casimir: t.max_rel_casimir(),
        }
    }
}

pub fn run(config: &RunConfig) -> Result<Trajectory, SimulateError> {
    let k = config
        .params
        .to_f64()
        .ok_or(SimulateError::SymbolicParams)?;
    let h = config.hamiltonian.hamiltonian();
    let ic = &config.integration;
    Ok(simulate(
        k,
        &h,
        ic.initial_state(),
        ic.t_end,
        ic.options(&h),
        ic.field.into(),
    )?)
}

/// One parameter and the values it takes across a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: Param,
    pub values: Vec<f64>,
}

impl std::str::FromStr for Sweep {
    type Err = String;

    /// `b=0.5,1,2`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, values) = s.split_once('=').ok_or("expected NAME=v1,v2,...")?;
        let param = Param::ALL
            .into_iter()
            .find(|p| p.name() == name.trim())
            .ok_or_else(|| format!("unknown parameter {name:?}"))?;
        let values = values
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err("sweep needs at least one value".into());
        }
        Ok(Sweep { param, values })
    }
}

/// Worker count: `BOOKLIE_THREADS` if set and positive, else the available
/// parallelism.
pub fn thread_count(jobs: usize) -> usize {
    let cap = std::env::var("BOOKLIE_THREADS")
        .ok()
        .and_then(|v| v.parse::<NonZeroUsize>().ok())
        .or_else(|| std::thread::available_parallelism().ok())
        .map_or(1, NonZeroUsize::get);
    cap.min(jobs).max(1)
}

/// Runs every sweep point; results come back in sweep order regardless of
/// scheduling.
pub fn run_sweep(
    base: &RunConfig,
    sweep: &Sweep,
) -> Vec<(RunConfig, Result<Trajectory, SimulateError>)> {
    let configs: Vec<RunConfig> = sweep
        .values
        .iter()
        .map(|&v| {
            let mut c = base.clone();
            let mut entries = c.params.entries().clone();
            entries[sweep.param as usize] = crate::params::ParamEntry::Value(
                booklie_core::Rational::from_f64(v).expect("finite sweep value"),
            );
            c.params = Vec::from(entries).try_into().expect("six entries");
            c
        })
        .collect();
    let slots: Vec<Mutex<Option<Result<Trajectory, SimulateError>>>> =
        configs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..thread_count(configs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = configs.get(i) else { break };
                *slots[i].lock().expect("no poisoned slots") = Some(run(c));
            });
        }
    });
    configs
        .into_iter()
        .zip(slots)
        .map(|(c, s)| {
            (
                c,
                s.into_inner()
                    .expect("no poisoned slots")
                    .expect("every slot filled"),
            )
        })
        .collect()
}

/// A table of sweep results, one line per point.
pub fn sweep_table(results: &[(RunConfig, Result<Trajectory, SimulateError>)]) -> String {
    let mut out = String::from("params,steps,t_final,max_relH,max_relC,status\n");
    for (c, r) in results {
        let _ = match r {
            Ok(t) => writeln!(
                out,
                "\"{}\",{},{},{},{},ok",
                c.params,
                t.steps,
                fmt_f64(t.last().state.t),
                fmt_f64(t.max_rel_h()),
                fmt_f64(t.max_rel_casimir())
            ),
            Err(e) => writeln!(out, "\"{}\",,,,,\"{e}\"", c.params),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn sweep_parsing() {
        let s: Sweep = "b=0.5, 1,2".parse().unwrap();
        assert_eq!((s.param, s.values), (Param::B, vec![0.5, 1.0, 2.0]));
        assert!("q=1".parse::<Sweep>().is_err());
        assert!("b".parse::<Sweep>().is_err());
    }

    #[test]
    fn default_demo_conserves() {
        let t = run(&RunConfig::default()).unwrap();
        let csv = trajectory_csv(&t);
        assert!(csv.starts_with(CSV_HEADER));
        assert!(t.max_rel_h() < 1e-8 && t.max_rel_casimir() < 1e-8);
    }

    #[test]
    fn sweep_keeps_order() {
        let mut base = RunConfig::default();
        base.integration.t_end = 1.0;
        let sweep: Sweep = "b=2,1,0.5".parse().unwrap();
        let results = run_sweep(&base, &sweep);
        let names: Vec<String> = results.iter().map(|(c, _)| c.params.to_string()).collect();
        assert_eq!(names, ["0,2,0,0,0,0", "0,1,0,0,0,0", "0,1/2,0,0,0,0"]);
        assert!(results.iter().all(|(_, r)| r.is_ok()));
    }
}
