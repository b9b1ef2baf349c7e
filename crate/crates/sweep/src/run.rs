//! Grid expansion, per-point evaluation and the ordered parallel driver.

use dicke_core::thermolimit::{effective_temperatures, limit_modes_gamma0, limit_modes_gamma1};
use dicke_core::{
    dynamical_eigenmodes, max_rectification, rectification_factor, solve_dicke_flow,
    solve_oscillator_flow, BiasSpec, Error as CoreError, FlowResult,
};
use rayon::prelude::*;

use crate::config::{Mode, SweepConfig};
use crate::error::{Result, SweepError};
use crate::output::RecordSink;
use crate::record::{Cell, Record};

/// Points evaluated in parallel before their rows are written.
const CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub n_qubits: usize,
    pub gamma: f64,
    pub lambda: f64,
    pub delta_t: Option<f64>,
}

/// The Cartesian product of the mode's axes, outermost first:
/// `n_qubits`, `gamma`, `lambda`, `delta_t`.
pub fn grid_points(cfg: &SweepConfig) -> Vec<Point> {
    let qubits: &[usize] = if cfg.mode.uses_qubits() { &cfg.n_qubits } else { &[1] };
    let biases: Vec<Option<f64>> = if cfg.mode == Mode::Rectification {
        cfg.delta_t.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let mut points = Vec::new();
    for &n_qubits in qubits {
        for &gamma in &cfg.gamma {
            for &lambda in &cfg.lambda {
                for &delta_t in &biases {
                    points.push(Point {
                        n_qubits,
                        gamma,
                        lambda,
                        delta_t,
                    });
                }
            }
        }
    }
    points
}

fn warnings_text(flow: &FlowResult) -> String {
    flow.warnings
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn record(cells: Vec<Cell>, warning: String, error: Option<String>) -> Record {
    let warned = !warning.is_empty();
    let failed = error.is_some();
    let mut cells = cells;
    cells.push(Cell::Text(warning));
    cells.push(Cell::Text(error.unwrap_or_default()));
    Record {
        cells,
        warned,
        failed,
    }
}

fn pad(mut cells: Vec<Cell>, width: usize) -> Vec<Cell> {
    cells.resize(width, Cell::Empty);
    cells
}

/// Evaluates one grid point. Solver failures become an error row rather than
/// aborting the sweep.
pub fn evaluate(cfg: &SweepConfig, pt: &Point) -> Record {
    let p = cfg.model.system(pt.n_qubits, pt.gamma, pt.lambda);
    match cfg.mode {
        Mode::DickeFlow => {
            let head = vec![
                Cell::Int(pt.n_qubits as u64),
                Cell::Float(pt.gamma),
                Cell::Float(pt.lambda),
                Cell::Int(p.n_fock as u64),
            ];
            match solve_dicke_flow(&p, &cfg.res_q, &cfg.res_r) {
                Ok(flow) => {
                    let d = flow.diagnostics;
                    let mut cells = head;
                    cells.extend([
                        Cell::Float(flow.current_q),
                        Cell::Float(flow.current_r),
                        Cell::Float(flow.residual),
                        Cell::opt(d.map(|d| d.tail_mass)),
                        Cell::opt(d.map(|d| d.mean_photon)),
                        Cell::opt(d.map(|d| d.mean_excitation)),
                    ]);
                    record(cells, warnings_text(&flow), None)
                }
                Err(e) => record(pad(head, 10), String::new(), Some(e.to_string())),
            }
        }
        Mode::OscillatorFlow => {
            let modes = dynamical_eigenmodes(&p);
            let head = vec![
                Cell::Float(pt.gamma),
                Cell::Float(pt.lambda),
                Cell::Int(p.n_fock as u64),
                Cell::Int(p.n_fock_b as u64),
            ];
            let tail = [
                Cell::Float(modes.lambda_plus),
                Cell::Float(modes.lambda_minus),
                Cell::Bool(modes.stable),
            ];
            if !modes.stable {
                let mut cells = pad(head, 10);
                cells.extend(tail);
                return record(cells, "unstable: spectrum unbounded below".into(), None);
            }
            match solve_oscillator_flow(&p, &cfg.res_q, &cfg.res_r) {
                Ok(flow) => {
                    let d = flow.diagnostics;
                    let mut cells = head;
                    cells.extend([
                        Cell::Float(flow.current_q),
                        Cell::Float(flow.current_r),
                        Cell::Float(flow.residual),
                        Cell::opt(d.map(|d| d.tail_mass)),
                        Cell::opt(d.map(|d| d.mean_photon)),
                        Cell::opt(d.map(|d| d.mean_excitation)),
                    ]);
                    cells.extend(tail);
                    record(cells, warnings_text(&flow), None)
                }
                Err(e) => {
                    let mut cells = pad(head, 10);
                    cells.extend(tail);
                    record(cells, String::new(), Some(e.to_string()))
                }
            }
        }
        Mode::AnalyticFlow => {
            let head = vec![Cell::Float(pt.gamma), Cell::Float(pt.lambda)];
            let modes = if pt.gamma == 0.0 {
                limit_modes_gamma0(&p)
            } else {
                limit_modes_gamma1(&p)
            };
            match modes {
                Ok(m) => {
                    let state = effective_temperatures(&m, &cfg.res_q, &cfg.res_r);
                    let j: f64 = dicke_core::thermolimit::current_channels(&m, &cfg.res_q, &cfg.res_r)
                        .iter()
                        .sum();
                    let mut cells = head;
                    cells.extend([
                        Cell::Float(j),
                        Cell::Float(m.freq_high),
                        Cell::Float(m.freq_low),
                        Cell::Float(state.beta_eff_high),
                        Cell::Float(state.beta_eff_low),
                        Cell::Bool(true),
                    ]);
                    record(cells, String::new(), None)
                }
                Err(CoreError::Unstable(msg)) => {
                    let mut cells = pad(head, 7);
                    cells.push(Cell::Bool(false));
                    record(cells, format!("unstable: {msg}"), None)
                }
                Err(e) => record(pad(head, 8), String::new(), Some(e.to_string())),
            }
        }
        Mode::Rectification => {
            let delta_t = pt.delta_t.expect("rectification points carry a bias");
            let head = vec![
                Cell::Int(pt.n_qubits as u64),
                Cell::Float(pt.gamma),
                Cell::Float(pt.lambda),
                Cell::Float(cfg.t0),
                Cell::Float(delta_t),
            ];
            let result = BiasSpec::new(cfg.t0, delta_t)
                .and_then(|bias| rectification_factor(&p, &bias, &cfg.res_q, &cfg.res_r));
            match result {
                Ok(r) => {
                    let anomaly = !r.degenerate && !(r.forward >= 0.0 && r.backward <= 0.0);
                    let mut cells = head;
                    cells.extend([
                        Cell::Float(r.forward),
                        Cell::Float(r.backward),
                        Cell::Float(r.factor),
                        Cell::Bool(r.degenerate),
                    ]);
                    let warning = if anomaly {
                        "anomaly: forward and backward flows share a sign".to_string()
                    } else {
                        String::new()
                    };
                    record(cells, warning, None)
                }
                Err(e) => record(pad(head, 9), String::new(), Some(e.to_string())),
            }
        }
        Mode::RectMax => {
            let head = vec![
                Cell::Int(pt.n_qubits as u64),
                Cell::Float(pt.gamma),
                Cell::Float(pt.lambda),
                Cell::Float(cfg.t0),
            ];
            match max_rectification(&p, cfg.t0, &cfg.delta_t, &cfg.res_q, &cfg.res_r) {
                Ok(m) => {
                    let mut cells = head;
                    cells.extend([Cell::Float(m.factor), Cell::Float(m.delta_t)]);
                    record(cells, String::new(), None)
                }
                Err(e) => record(pad(head, 6), String::new(), Some(e.to_string())),
            }
        }
        Mode::ModesScan => {
            let m = dynamical_eigenmodes(&p);
            Record {
                cells: vec![
                    Cell::Float(pt.gamma),
                    Cell::Float(pt.lambda),
                    Cell::Float(m.lambda_plus),
                    Cell::Float(m.lambda_minus),
                    Cell::Bool(m.stable),
                ],
                warned: false,
                failed: false,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub rows: usize,
    pub warnings: usize,
    pub errors: usize,
}

pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| SweepError::config(format!("threads: {e}")))
}

/// Evaluates every grid point and streams the rows to `sink` in grid order.
///
/// Rows with solver errors are written and counted; the caller decides what
/// exit status they imply.
pub fn run_sweep(cfg: &SweepConfig, sink: &mut dyn RecordSink) -> Result<SweepSummary> {
    let pool = thread_pool(cfg.threads)?;
    let points = grid_points(cfg);
    let mut summary = SweepSummary::default();
    sink.begin(cfg.mode)?;
    for chunk in points.chunks(CHUNK) {
        let rows: Vec<Record> = pool.install(|| chunk.par_iter().map(|pt| evaluate(cfg, pt)).collect());
        for row in &rows {
            sink.write(row)?;
            summary.rows += 1;
            summary.warnings += row.warned as usize;
            summary.errors += row.failed as usize;
        }
    }
    sink.finish()?;
    Ok(summary)
}
