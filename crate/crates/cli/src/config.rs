//! Declarative run configuration: a TOML file with nested sections, every
//! field overridable and echoed verbatim into the run manifest.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Physics-named scenarios (figure numbers live in the help text only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// Long-time |c| and bound-state residue across the detuning sweep.
    SteadyState,
    /// Energy spectrum of the atom-environment system below the band edge.
    Spectrum,
    /// Precision versus encoding time with the fringe-minima envelope.
    PrecisionEvolution,
    /// Minimal precision versus atom number at fixed encoding time.
    ScalingVsN,
    /// Numerical optimum of the Markovian amplitude against its closed form.
    MarkovianCheck,
    /// Large-detuning plateau and decay rate against the bound state.
    AsymptoteCheck,
}

impl Scenario {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::SteadyState => "steady-state",
            Scenario::Spectrum => "spectrum",
            Scenario::PrecisionEvolution => "precision-evolution",
            Scenario::ScalingVsN => "scaling-vs-n",
            Scenario::MarkovianCheck => "markovian-check",
            Scenario::AsymptoteCheck => "asymptote-check",
        }
    }

    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "steady-state" => Ok(Scenario::SteadyState),
            "spectrum" => Ok(Scenario::Spectrum),
            "precision-evolution" => Ok(Scenario::PrecisionEvolution),
            "scaling-vs-n" => Ok(Scenario::ScalingVsN),
            "markovian-check" => Ok(Scenario::MarkovianCheck),
            "asymptote-check" => Ok(Scenario::AsymptoteCheck),
            other => Err(CliError::Config(format!(
                "scenario: unknown name `{other}` (expected steady-state | spectrum | \
                 precision-evolution | scaling-vs-n | markovian-check | asymptote-check)"
            ))),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A sweep grid: either explicit values or an inclusive range.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Explicit(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl Grid {
    pub fn values(&self, field: &str) -> Result<Vec<f64>, CliError> {
        match self {
            Grid::Explicit(v) => {
                if v.is_empty() {
                    return Err(CliError::Config(format!("{field}: empty")));
                }
                Ok(v.clone())
            }
            Grid::Range { start, stop, step } => {
                if !(*step > 0.0) {
                    return Err(CliError::Config(format!("{field}.step: must be positive")));
                }
                if stop < start {
                    return Err(CliError::Config(format!("{field}: stop below start")));
                }
                let count = ((stop - start) / step).round() as usize + 1;
                Ok((0..count)
                    .map(|k| start + k as f64 * step)
                    .filter(|v| *v <= stop + 1e-9 * step)
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalSection {
    /// Band edge, units gamma0.
    #[serde(default = "default_omega_c")]
    pub omega_c: f64,
    /// Detuning sweep (omega0 = omega_c + delta per point).
    #[serde(default)]
    pub delta_grid: Option<Grid>,
    /// Fixed coupling override; when absent beta is recomputed per point.
    #[serde(default)]
    pub beta: Option<f64>,
    /// Carrier frequency for the Markovian scenario, units gamma0.
    #[serde(default = "default_markovian_omega0")]
    pub omega0: f64,
    /// Markovian decay-rate sweep.
    #[serde(default)]
    pub gamma_grid: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSection {
    #[serde(default = "default_n")]
    pub n: u32,
    #[serde(default = "default_t_total")]
    pub t_total: f64,
    #[serde(default = "default_input_state")]
    pub input_state: String,
    /// Atom-number sweep for the scaling scenario.
    #[serde(default)]
    pub n_grid: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsSection {
    /// Trajectory step, units 1/gamma0.
    #[serde(default = "default_h")]
    pub h: f64,
    /// Trajectory length (also the fixed encoding time of the scaling scenario).
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    /// omega0 finite-difference step for the precision derivative.
    #[serde(default = "default_h_omega")]
    pub h_omega: f64,
    /// Worker threads; 0 picks the machine default.
    #[serde(default)]
    pub parallel_workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_directory")]
    pub directory: PathBuf,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    #[serde(default = "PhysicalSection::default_section")]
    pub physical: PhysicalSection,
    #[serde(default = "ProbeSection::default_section")]
    pub probe: ProbeSection,
    #[serde(default = "NumericsSection::default_section")]
    pub numerics: NumericsSection,
    #[serde(default = "OutputSection::default_section")]
    pub output: OutputSection,
}

fn default_omega_c() -> f64 {
    100.0
}
fn default_markovian_omega0() -> f64 {
    500.0
}
fn default_n() -> u32 {
    10
}
fn default_t_total() -> f64 {
    1.0
}
fn default_input_state() -> String {
    "ghz".to_string()
}
fn default_h() -> f64 {
    1e-4
}
fn default_t_max() -> f64 {
    10.0
}
fn default_h_omega() -> f64 {
    1e-4
}
fn default_directory() -> PathBuf {
    PathBuf::from("out")
}
fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

impl PhysicalSection {
    fn default_section() -> Self {
        PhysicalSection {
            omega_c: default_omega_c(),
            delta_grid: None,
            beta: None,
            omega0: default_markovian_omega0(),
            gamma_grid: None,
        }
    }
}

impl ProbeSection {
    fn default_section() -> Self {
        ProbeSection {
            n: default_n(),
            t_total: default_t_total(),
            input_state: default_input_state(),
            n_grid: None,
        }
    }
}

impl NumericsSection {
    fn default_section() -> Self {
        NumericsSection {
            h: default_h(),
            t_max: default_t_max(),
            h_omega: default_h_omega(),
            parallel_workers: 0,
        }
    }
}

impl OutputSection {
    fn default_section() -> Self {
        OutputSection {
            directory: default_directory(),
            format: default_format(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| CliError::Config(format!("config parse: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Detuning sweep resolved against the scenario default.
    pub fn delta_values(&self) -> Result<Vec<f64>, CliError> {
        match (&self.physical.delta_grid, self.scenario) {
            (Some(grid), _) => grid.values("physical.delta_grid"),
            (None, Scenario::SteadyState) => Ok(range(-80.0, 30.0, 1.0)),
            (None, Scenario::Spectrum) => Ok(range(-80.0, -0.5, 0.5)),
            (None, Scenario::PrecisionEvolution) => Ok(vec![-40.0, -20.0, -5.0, 5.0, 20.0]),
            (None, Scenario::ScalingVsN) => Ok(vec![-40.0, -20.0, -10.0]),
            (None, Scenario::AsymptoteCheck) => Ok(vec![-500.0, 500.0]),
            (None, Scenario::MarkovianCheck) => Ok(vec![]),
        }
    }

    pub fn gamma_values(&self) -> Vec<f64> {
        self.physical
            .gamma_grid
            .clone()
            .unwrap_or_else(|| vec![0.5, 1.0, 2.0])
    }

    pub fn n_values(&self) -> Vec<u32> {
        self.probe.n_grid.clone().unwrap_or_else(|| match self.scenario {
            Scenario::ScalingVsN => (2..=14).collect(),
            _ => vec![2, 5, 10],
        })
    }

    pub fn input_state(&self) -> Result<metrol_core::InputState, CliError> {
        match self.probe.input_state.as_str() {
            "ghz" => Ok(metrol_core::InputState::Ghz),
            "uncorrelated" => Ok(metrol_core::InputState::Uncorrelated),
            other => Err(CliError::Config(format!(
                "probe.input_state: unknown value `{other}` (expected ghz | uncorrelated)"
            ))),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.physical.omega_c > 0.0) {
            return Err(CliError::Config(
                "physical.omega_c: must be positive".to_string(),
            ));
        }
        if let Some(beta) = self.physical.beta {
            if !(beta > 0.0) {
                return Err(CliError::Config(
                    "physical.beta: must be positive".to_string(),
                ));
            }
        }
        if let Some(grid) = &self.physical.gamma_grid {
            if grid.is_empty() {
                return Err(CliError::Config("physical.gamma_grid: empty".to_string()));
            }
            if grid.iter().any(|g| !(*g > 0.0)) {
                return Err(CliError::Config(
                    "physical.gamma_grid: rates must be positive".to_string(),
                ));
            }
        }
        // resolves grids so empty explicit lists surface their field name
        self.delta_values().map(|_| ())?;
        if let Some(grid) = &self.probe.n_grid {
            if grid.is_empty() {
                return Err(CliError::Config("probe.n_grid: empty".to_string()));
            }
            if grid.contains(&0) {
                return Err(CliError::Config(
                    "probe.n_grid: atom counts must be at least 1".to_string(),
                ));
            }
        }
        if self.probe.n == 0 {
            return Err(CliError::Config("probe.n: must be at least 1".to_string()));
        }
        if !(self.probe.t_total > 0.0) {
            return Err(CliError::Config(
                "probe.t_total: must be positive".to_string(),
            ));
        }
        self.input_state().map(|_| ())?;
        if !(self.numerics.h > 0.0) {
            return Err(CliError::Config("numerics.h: must be positive".to_string()));
        }
        if !(self.numerics.t_max > 0.0) {
            return Err(CliError::Config(
                "numerics.t_max: must be positive".to_string(),
            ));
        }
        if !(self.numerics.h_omega > 0.0) {
            return Err(CliError::Config(
                "numerics.h_omega: must be positive".to_string(),
            ));
        }
        if self.output.directory.as_os_str().is_empty() {
            return Err(CliError::Config(
                "output.directory: must not be empty".to_string(),
            ));
        }
        Ok(())
    }
}

fn range(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step).round() as usize + 1;
    (0..count).map(|k| start + k as f64 * step).collect()
}
