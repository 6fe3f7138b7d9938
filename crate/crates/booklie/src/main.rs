use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use booklie::chart::{chart_report, resolve};
use booklie::config::{CommandKind, FieldKind, RunConfig};
use booklie::exit;
use booklie::params::ParamSpec;
use booklie::report::VerificationReport;
use booklie::simulate::{
    self, gnuplot_script, run_sweep, sweep_table, trajectory_csv, RunSummary, Sweep,
};
use booklie::suite::{run_suite, CorruptTarget, SuiteOptions};
use booklie_core::classify::{classify, coboundary_r_matrix, Classification};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "booklie",
    version,
    about = "Poisson–Lie structures on the book group: verification, classification, charts and dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Classify a parameter vector (a,b,c,d,e,f).
    Classify(ClassifyArgs),
    /// Inspect a named structure in its coordinate chart.
    Chart(ChartArgs),
    /// Integrate the Lotka–Volterra flow or its deformation.
    Simulate(SimulateArgs),
    /// Check the identities of the quantum book group.
    Qcheck(QcheckArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Restrict to a group (bracket, hopf, rmatrix, classify, charts, dynamics, qalgebra) or a single check.
    #[arg(long)]
    only: Vec<String>,
    /// Feed a deliberately wrong input to one check.
    #[arg(long, value_enum)]
    corrupt: Vec<CorruptTarget>,
    /// Write the JSON report here (`-` for stdout instead of the table).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Comma-separated a,b,c,d,e,f; integers, decimals or fractions.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<ParamSpec>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ChartArgs {
    #[arg(long)]
    id: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    coupling: Option<f64>,
    /// Run the numerical checks.
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    params: Option<ParamSpec>,
    /// Linear coefficients of H, as a1,a2,a3.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_triple)]
    alpha: Option<[f64; 3]>,
    /// Logarithmic coefficients of H, as b1,b2,b3.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_triple)]
    beta: Option<[f64; 3]>,
    #[arg(long, value_parser = parse_triple)]
    s0: Option<[f64; 3]>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    rtol: Option<f64>,
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long, value_enum)]
    field: Option<FieldKind>,
    /// Trajectory CSV (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Gnuplot script plotting the CSV.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
    /// Run summary as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Sweep one parameter, e.g. `b=0.5,1,2`; runs in parallel, capped by BOOKLIE_THREADS.
    #[arg(long)]
    sweep: Option<Sweep>,
    /// Directory for per-run CSVs of a sweep.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct QcheckArgs {
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    v.try_into()
        .map_err(|v: Vec<f64>| format!("expected 3 comma-separated numbers, got {}", v.len()))
}

enum Failure {
    Usage(String),
    Run(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Run(e)
    }
}

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn load_config(path: &Option<PathBuf>, kind: CommandKind) -> Result<RunConfig, Failure> {
    let mut c = match path {
        Some(p) => RunConfig::load(p).map_err(usage)?,
        None => RunConfig::default(),
    };
    c.command = Some(kind);
    Ok(c)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn print(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .context("writing to stdout")?;
    Ok(())
}

fn emit_report(report: &VerificationReport, json: &Option<PathBuf>) -> Result<i32, Failure> {
    match json.as_deref() {
        Some(p) if p == Path::new("-") => print(&format!("{}\n", report.to_json()))?,
        Some(p) => {
            write_file(p, &report.to_json())?;
            print(&report.table())?;
        }
        None => print(&report.table())?,
    }
    Ok(if report.all_passed() {
        exit::OK
    } else {
        exit::FAILURE
    })
}

fn verify(args: VerifyArgs) -> Result<i32, Failure> {
    let config = load_config(&args.config, CommandKind::Verify)?;
    let opts = SuiteOptions {
        seed: args.seed.unwrap_or(config.seed),
        only: args.only,
        corrupt: args.corrupt,
    };
    let report = run_suite(&opts).map_err(usage)?;
    emit_report(&report, &args.json)
}

fn qcheck(args: QcheckArgs) -> Result<i32, Failure> {
    let report = run_suite(&SuiteOptions {
        only: vec!["qalgebra".into()],
        ..Default::default()
    })
    .map_err(usage)?;
    emit_report(&report, &args.json)
}

#[derive(Serialize)]
struct ClassifyOutput {
    class: Option<String>,
    coboundary: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<String>,
    /// `[r12, r13, r23]` for coboundary structures.
    #[serde(skip_serializing_if = "Option::is_none")]
    r_matrix: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostic: Option<String>,
}

fn classify_cmd(args: ClassifyArgs) -> Result<i32, Failure> {
    let config = load_config(&args.config, CommandKind::Classify)?;
    if args.params.is_none() && args.config.is_none() {
        return Err(usage("classify needs --params a,b,c,d,e,f (or --config)"));
    }
    let spec = args.params.unwrap_or(config.params);
    let params = spec.to_params().map_err(usage)?;
    if !params.is_numeric() {
        return Err(usage("classify needs numeric parameters"));
    }
    let r_matrix = coboundary_r_matrix(&params).map(|r| r.upper.map(|p| p.to_string()));
    let coboundary = r_matrix.is_some();
    let mut out = ClassifyOutput {
        class: None,
        coboundary,
        lambda: None,
        alpha: None,
        omega: None,
        r_matrix,
        notes: Vec::new(),
        diagnostic: None,
    };
    let code = match classify(&params) {
        Classification::Trivial => {
            out.class = Some("trivial".into());
            exit::OK
        }
        Classification::Class(label) => {
            out.class = Some(format!("{:?}", label.letter));
            out.lambda = label.lambda.map(|r| r.to_string());
            out.alpha = label.alpha.map(|r| r.to_string());
            out.omega = label.omega.map(|r| r.to_string());
            out.notes = label.notes;
            exit::OK
        }
        Classification::Unresolved { diagnostic } => {
            out.diagnostic = Some(diagnostic);
            exit::FAILURE
        }
    };
    print(&format!(
        "{}\n",
        serde_json::to_string(&out).context("serializing")?
    ))?;
    Ok(code)
}

fn chart_cmd(args: ChartArgs) -> Result<i32, Failure> {
    let config = load_config(&args.config, CommandKind::Chart)?;
    let id = args
        .id
        .or(config.chart.id)
        .ok_or_else(|| usage("chart needs --id"))?;
    let s = resolve(
        &id,
        args.eta.or(config.chart.eta),
        args.phi.or(config.chart.phi),
        args.coupling.or(config.chart.coupling).unwrap_or(1.0),
    )
    .map_err(usage)?;
    let report = chart_report(
        &s,
        args.check,
        args.points,
        args.seed.unwrap_or(config.seed),
    );
    print(&format!(
        "{}\n",
        serde_json::to_string_pretty(&report).context("serializing")?
    ))?;
    Ok(if report.all_passed() {
        exit::OK
    } else {
        exit::FAILURE
    })
}

fn simulate_cmd(args: SimulateArgs) -> Result<i32, Failure> {
    let mut c = load_config(&args.config, CommandKind::Simulate)?;
    if let Some(p) = args.params {
        c.params = p;
    }
    if let Some(a) = args.alpha {
        c.hamiltonian.alpha = a;
    }
    if let Some(b) = args.beta {
        c.hamiltonian.beta = b;
    }
    let ic = &mut c.integration;
    ic.s0 = args.s0.unwrap_or(ic.s0);
    ic.t_end = args.t_end.unwrap_or(ic.t_end);
    ic.rtol = args.rtol.unwrap_or(ic.rtol);
    ic.atol = args.atol.unwrap_or(ic.atol);
    ic.max_steps = args.max_steps.unwrap_or(ic.max_steps);
    ic.field = args.field.unwrap_or(ic.field);
    c.output.csv = args.out.or(c.output.csv);
    c.output.gnuplot = args.gnuplot.or(c.output.gnuplot);
    c.output.json = args.json.or(c.output.json);
    if c.params.to_f64().is_none() {
        return Err(usage("simulate needs numeric parameters"));
    }
    if !(c.integration.rtol > 0.0 && c.integration.atol > 0.0) {
        return Err(usage("--rtol and --atol must be positive"));
    }

    if let Some(sweep) = args.sweep {
        let results = run_sweep(&c, &sweep);
        if let Some(dir) = &args.out_dir {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (i, (_, r)) in results.iter().enumerate() {
                if let Ok(t) = r {
                    write_file(&dir.join(format!("run_{i}.csv")), &trajectory_csv(t))?;
                }
            }
        }
        print(&sweep_table(&results))?;
        return Ok(if results.iter().all(|(_, r)| r.is_ok()) {
            exit::OK
        } else {
            exit::FAILURE
        });
    }

    let t = match simulate::run(&c) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("simulation failed: {e}");
            return Ok(exit::FAILURE);
        }
    };
    let csv = trajectory_csv(&t);
    match &c.output.csv {
        Some(p) => write_file(p, &csv)?,
        None => print(&csv)?,
    }
    if let Some(g) = &c.output.gnuplot {
        let data = c
            .output
            .csv
            .clone()
            .unwrap_or_else(|| PathBuf::from("trajectory.csv"));
        write_file(g, &gnuplot_script(&data))?;
    }
    if let Some(j) = &c.output.json {
        let summary = RunSummary::new(c.params.to_string(), &t);
        write_file(
            j,
            &serde_json::to_string_pretty(&summary).context("serializing")?,
        )?;
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Chart(a) => chart_cmd(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Qcheck(a) => qcheck(a),
    };
    let code = match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            exit::USAGE
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e:#}");
            exit::FAILURE
        }
    };
    ExitCode::from(code as u8)
}
