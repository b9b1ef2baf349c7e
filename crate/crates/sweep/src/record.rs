//! Row schema per mode and the flat cell values written to disk.

use crate::config::Mode;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn opt(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }

    /// CSV text: shortest round-trip decimal, empty for missing or NaN.
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Float(x) if x.is_nan() => String::new(),
            Cell::Float(x) => format!("{x:?}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) if s.is_empty() => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// One output row, cells in the order of [`columns`] for its mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub cells: Vec<Cell>,
    pub warned: bool,
    pub failed: bool,
}

pub fn columns(mode: Mode) -> &'static [&'static str] {
    match mode {
        Mode::DickeFlow => &[
            "n_qubits",
            "gamma",
            "lambda",
            "n_fock",
            "j_q",
            "j_r",
            "residual",
            "tail_mass",
            "mean_photon",
            "mean_excitation",
            "warning",
            "error",
        ],
        Mode::OscillatorFlow => &[
            "gamma",
            "lambda",
            "n_fock",
            "n_fock_b",
            "j_q",
            "j_r",
            "residual",
            "tail_mass",
            "mean_photon",
            "mean_excitation",
            "lambda_plus",
            "lambda_minus",
            "stable",
            "warning",
            "error",
        ],
        Mode::AnalyticFlow => &[
            "gamma",
            "lambda",
            "j_q",
            "freq_high",
            "freq_low",
            "beta_eff_high",
            "beta_eff_low",
            "stable",
            "warning",
            "error",
        ],
        Mode::Rectification => &[
            "n_qubits",
            "gamma",
            "lambda",
            "t0",
            "delta_t",
            "j_forward",
            "j_backward",
            "rectification",
            "degenerate",
            "warning",
            "error",
        ],
        Mode::RectMax => &[
            "n_qubits",
            "gamma",
            "lambda",
            "t0",
            "rectification_max",
            "delta_t_argmax",
            "warning",
            "error",
        ],
        Mode::ModesScan => &["gamma", "lambda", "lambda_plus", "lambda_minus", "stable"],
    }
}
