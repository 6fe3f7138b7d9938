//! Run configuration shared by all subcommands; loadable from JSON and
//! overridden by command-line flags.

use std::path::{Path, PathBuf};

use booklie_core::dynamics::{FieldChoice, IntegratorOptions, LVHamiltonian, State};
use serde::{Deserialize, Serialize};

use crate::params::ParamSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Verify,
    Classify,
    Chart,
    Simulate,
    Qcheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HamiltonianConfig {
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
}

impl Default for HamiltonianConfig {
    fn default() -> Self {
        HamiltonianConfig {
            alpha: [1.0; 3],
            beta: [-1.0; 3],
        }
    }
}

impl HamiltonianConfig {
    pub fn hamiltonian(&self) -> LVHamiltonian {
        LVHamiltonian::new(self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    /// The written-out vector field.
    Explicit,
    /// The flow computed from the bracket matrix and the gradient of H.
    Bracket,
}

impl From<FieldKind> for FieldChoice {
    fn from(f: FieldKind) -> Self {
        match f {
            FieldKind::Explicit => FieldChoice::Explicit,
            FieldKind::Bracket => FieldChoice::Bracket,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegrationConfig {
    pub s0: [f64; 3],
    pub t_end: f64,
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub field: FieldKind,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        let d = IntegratorOptions::default();
        IntegrationConfig {
            s0: [1.0, 2.0, 3.0],
            t_end: 20.0,
            rtol: d.rtol,
            atol: d.atol,
            max_steps: d.max_steps,
            field: FieldKind::Explicit,
        }
    }
}

impl IntegrationConfig {
    pub fn options(&self, h: &LVHamiltonian) -> IntegratorOptions {
        IntegratorOptions {
            rtol: self.rtol,
            atol: self.atol,
            max_steps: self.max_steps,
            ..IntegratorOptions::for_hamiltonian(h)
        }
    }

    pub fn initial_state(&self) -> State {
        State::new(0.0, self.s0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChartConfig {
    pub id: Option<String>,
    pub eta: Option<f64>,
    pub phi: Option<f64>,
    pub coupling: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub seed: u64,
    pub params: ParamSpec,
    pub hamiltonian: HamiltonianConfig,
    pub chart: ChartConfig,
    pub integration: IntegrationConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: None,
            seed: 0,
            params: ParamSpec::from_ints([0, 1, 0, 0, 0, 0]),
            hamiltonian: HamiltonianConfig::default(),
            chart: ChartConfig::default(),
            integration: IntegrationConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.into(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| ConfigError::Json {
            path: path.into(),
            source,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut c = RunConfig {
            command: Some(CommandKind::Simulate),
            seed: 7,
            params: "1/3,1,0,0.1,0,-2".parse().unwrap(),
            ..Default::default()
        };
        c.hamiltonian.beta = [0.1, 1.0 / 3.0, -2.5e-7];
        c.chart.id = Some("sl2-standard".into());
        c.chart.eta = Some(0.3);
        c.output.csv = Some("out.csv".into());
        let back: RunConfig = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn partial_json_uses_defaults() {
        let c: RunConfig =
            serde_json::from_str(r#"{"seed": 3, "params": [0, 2, 0, 0, 0, "1/4"]}"#).unwrap();
        assert_eq!(c.seed, 3);
        assert_eq!(c.integration, IntegrationConfig::default());
        assert!(serde_json::from_str::<RunConfig>(r#"{"sed": 3}"#).is_err());
    }
}
