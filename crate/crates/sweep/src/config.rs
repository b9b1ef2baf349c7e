//! JSON sweep configuration: parsing, dot-path overrides, defaults and
//! validation.

use std::path::{Path, PathBuf};

use dicke_core::rectify::default_delta_grid;
use dicke_core::{Bath, BiasSpec, ReservoirParams, SystemParams};
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Result, SweepError};

pub const SCHEMA_VERSION: u32 = 1;

/// Points and upper end (as a multiple of `t0`) of the bias grid used when a
/// rect-max config gives none.
pub const DEFAULT_DELTA_POINTS: usize = 40;
pub const DEFAULT_DELTA_FRACTION: f64 = 1.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    DickeFlow,
    OscillatorFlow,
    AnalyticFlow,
    Rectification,
    RectMax,
    ModesScan,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::DickeFlow => "dicke-flow",
            Mode::OscillatorFlow => "oscillator-flow",
            Mode::AnalyticFlow => "analytic-flow",
            Mode::Rectification => "rectification",
            Mode::RectMax => "rect-max",
            Mode::ModesScan => "modes-scan",
        }
    }

    /// Whether rows are indexed by the qubit number.
    pub fn uses_qubits(self) -> bool {
        matches!(self, Mode::DickeFlow | Mode::Rectification | Mode::RectMax)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    JsonLines,
}

/// A float axis, either listed or as `points` evenly spaced values from
/// `start` to `stop` inclusive.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Range { start: f64, stop: f64, points: usize },
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::List(v) => v.clone(),
            Grid::Range { start, points: 1, .. } => vec![*start],
            Grid::Range {
                start,
                stop,
                points,
            } => {
                let last = (*points - 1) as f64;
                (0..*points)
                    .map(|i| start + (stop - start) * i as f64 / last)
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default = "default_schema")]
    schema_version: u32,
    mode: Option<Mode>,
    #[serde(default)]
    model: RawModel,
    #[serde(default)]
    reservoirs: RawReservoirs,
    #[serde(default)]
    sweep: RawSweep,
    #[serde(default)]
    output: RawOutput,
    #[serde(default)]
    threads: Option<usize>,
    #[serde(default)]
    convergence_check: bool,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    omega_a: Option<f64>,
    epsilon: Option<f64>,
    n_fock: Option<usize>,
    n_fock_b: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReservoir {
    alpha: Option<f64>,
    omega_c: Option<f64>,
    temperature: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReservoirs {
    #[serde(default)]
    q: RawReservoir,
    #[serde(default)]
    r: RawReservoir,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    lambda: Option<Grid>,
    gamma: Option<Grid>,
    n_qubits: Option<Vec<usize>>,
    delta_t: Option<Grid>,
    t0: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<PathBuf>,
    #[serde(default)]
    format: Format,
}

/// Model parameters shared by every row; the swept ones live on the axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelDefaults {
    pub omega_a: f64,
    pub epsilon: f64,
    pub n_fock: usize,
    pub n_fock_b: usize,
}

impl Default for ModelDefaults {
    fn default() -> Self {
        Self {
            omega_a: 1.0,
            epsilon: 0.8,
            n_fock: 30,
            n_fock_b: 30,
        }
    }
}

impl ModelDefaults {
    pub fn system(&self, n_qubits: usize, gamma: f64, lambda: f64) -> SystemParams {
        SystemParams {
            omega_a: self.omega_a,
            epsilon: self.epsilon,
            lambda,
            gamma,
            n_qubits,
            n_fock: self.n_fock,
            n_fock_b: self.n_fock_b,
        }
    }
}

/// A validated configuration with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: Mode,
    pub model: ModelDefaults,
    pub res_q: ReservoirParams,
    pub res_r: ReservoirParams,
    pub lambda: Vec<f64>,
    pub gamma: Vec<f64>,
    pub n_qubits: Vec<usize>,
    pub delta_t: Vec<f64>,
    pub t0: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
    pub convergence_check: bool,
}

pub fn load_config(path: &Path, overrides: &[String]) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| SweepError::io(path, e))?;
    parse_config(&text, overrides)
}

pub fn parse_config(text: &str, overrides: &[String]) -> Result<SweepConfig> {
    let mut doc: Value = serde_json::from_str(text).map_err(|e| {
        SweepError::config(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    for ov in overrides {
        apply_override(&mut doc, ov)?;
    }
    let raw: RawConfig = serde_path_to_error::deserialize(doc)
        .map_err(|e| SweepError::config(format!("{}: {}", e.path(), e.inner())))?;
    resolve(raw)
}

/// Applies `key.sub=value`. The value is read as JSON when it parses and as a
/// bare string otherwise; missing intermediate objects are created.
pub fn apply_override(doc: &mut Value, spec: &str) -> Result<()> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| SweepError::config(format!("override {spec:?} is not key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(SweepError::config(format!("override key {key:?} is malformed")));
    }
    let mut node = doc;
    for part in &parts[..parts.len() - 1] {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| SweepError::config(format!("override {key:?}: {part} is not an object")))?;
        node = obj
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    let obj = node
        .as_object_mut()
        .ok_or_else(|| SweepError::config(format!("override {key:?} does not reach an object")))?;
    obj.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

fn reservoir(raw: &RawReservoir, label: Bath, default_t: f64, field: &str) -> Result<ReservoirParams> {
    let res = ReservoirParams::new(
        label,
        raw.alpha.unwrap_or(0.001),
        raw.omega_c.unwrap_or(20.0),
        raw.temperature.unwrap_or(default_t),
    );
    res.validate()
        .map_err(|e| SweepError::config(format!("reservoirs.{field}: {e}")))?;
    Ok(res)
}

fn axis(grid: Option<Grid>, default: Vec<f64>, field: &str) -> Result<Vec<f64>> {
    if let Some(Grid::Range { points: 0, .. }) = grid {
        return Err(SweepError::config(format!("sweep.{field}: points must be >= 1")));
    }
    let values = grid.map(|g| g.values()).unwrap_or(default);
    if values.is_empty() {
        return Err(SweepError::config(format!("sweep.{field}: grid is empty")));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(SweepError::config(format!("sweep.{field}: non-finite value {bad}")));
    }
    Ok(values)
}

fn resolve(raw: RawConfig) -> Result<SweepConfig> {
    if raw.schema_version != SCHEMA_VERSION {
        return Err(SweepError::config(format!(
            "schema_version: unsupported version {}, expected {SCHEMA_VERSION}",
            raw.schema_version
        )));
    }
    let mode = raw
        .mode
        .ok_or_else(|| SweepError::config("mode: missing required field"))?;

    let defaults = ModelDefaults::default();
    let model = ModelDefaults {
        omega_a: raw.model.omega_a.unwrap_or(defaults.omega_a),
        epsilon: raw.model.epsilon.unwrap_or(defaults.epsilon),
        n_fock: raw.model.n_fock.unwrap_or(defaults.n_fock),
        n_fock_b: raw.model.n_fock_b.unwrap_or(defaults.n_fock_b),
    };
    let res_q = reservoir(&raw.reservoirs.q, Bath::Q, 0.6, "q")?;
    let res_r = reservoir(&raw.reservoirs.r, Bath::R, 1.2, "r")?;

    let lambda = axis(raw.sweep.lambda, vec![0.0], "lambda")?;
    let gamma = axis(raw.sweep.gamma, vec![0.0], "gamma")?;
    let n_qubits = raw.sweep.n_qubits.unwrap_or_else(|| vec![1]);
    if n_qubits.is_empty() {
        return Err(SweepError::config("sweep.n_qubits: list is empty"));
    }
    let t0 = raw.sweep.t0.unwrap_or(model.omega_a);
    let delta_t = axis(
        raw.sweep.delta_t,
        default_delta_grid(t0, DEFAULT_DELTA_POINTS, DEFAULT_DELTA_FRACTION),
        "delta_t",
    )?;

    if mode == Mode::AnalyticFlow {
        if let Some(g) = gamma.iter().find(|&&g| g != 0.0 && g != 1.0) {
            return Err(SweepError::config(format!(
                "sweep.gamma: analytic-flow has closed forms only at 0 and 1, got {g}"
            )));
        }
    }
    if matches!(mode, Mode::Rectification | Mode::RectMax) {
        for &d in &delta_t {
            BiasSpec::new(t0, d).map_err(|e| SweepError::config(format!("sweep.delta_t: {e}")))?;
        }
    }
    if raw.threads == Some(0) {
        return Err(SweepError::config("threads: must be >= 1"));
    }

    // Every axis value must give a valid system on its own.
    let qubits: &[usize] = if mode.uses_qubits() { &n_qubits } else { &[1] };
    for &n in qubits {
        for &g in &gamma {
            for &l in &lambda {
                model.system(n, g, l).validate().map_err(|e| {
                    let field = match &e {
                        dicke_core::Error::InvalidParameter { field, .. } => match *field {
                            "lambda" | "gamma" | "n_qubits" => format!("sweep.{field}"),
                            other => format!("model.{other}"),
                        },
                        _ => "model".to_string(),
                    };
                    SweepError::config(format!("{field}: {e}"))
                })?;
            }
        }
    }
    if mode == Mode::OscillatorFlow && model.n_fock_b < 1 {
        return Err(SweepError::config("model.n_fock_b: must be >= 1"));
    }

    Ok(SweepConfig {
        mode,
        model,
        res_q,
        res_r,
        lambda,
        gamma,
        n_qubits,
        delta_t,
        t0,
        output: raw.output.path,
        format: raw.output.format,
        threads: raw.threads,
        convergence_check: raw.convergence_check,
    })
}
