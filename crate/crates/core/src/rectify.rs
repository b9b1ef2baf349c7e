//! Thermal rectification factor of the finite-size Dicke model.

use crate::dissipation::{solve_dicke_flow, ReservoirParams};
use crate::error::{invalid, Error, Result};
use crate::spectra::SystemParams;

/// Both flows below this magnitude count as zero flow.
pub const FLOW_FLOOR: f64 = 1e-15;

/// Mean temperature and bias: `T_r = t0 + delta_t/2`, `T_q = t0 - delta_t/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasSpec {
    pub t0: f64,
    pub delta_t: f64,
}

impl BiasSpec {
    pub fn new(t0: f64, delta_t: f64) -> Result<Self> {
        let b = Self { t0, delta_t };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0.is_finite() && self.t0 > 0.0) {
            return Err(invalid("t0", format!("must be > 0, got {}", self.t0)));
        }
        if !(self.delta_t >= 0.0 && self.delta_t < 2.0 * self.t0) {
            return Err(invalid(
                "delta_t",
                format!(
                    "must lie in [0, 2*t0) = [0, {}), got {}",
                    2.0 * self.t0,
                    self.delta_t
                ),
            ));
        }
        Ok(())
    }

    /// `(T_r, T_q)` for the forward bias.
    pub fn temperatures(&self) -> (f64, f64) {
        (self.t0 + 0.5 * self.delta_t, self.t0 - 0.5 * self.delta_t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectResult {
    /// `J_q` with the photon bath hot.
    pub forward: f64,
    /// `J_q` with the temperatures swapped.
    pub backward: f64,
    pub factor: f64,
    pub degenerate: bool,
}

/// `R = |J(dT) + J(-dT)| / max(|J(dT)|, |J(-dT)|)`.
pub fn rectification_from_flows(forward: f64, backward: f64) -> RectResult {
    let denom = forward.abs().max(backward.abs());
    if denom < FLOW_FLOOR {
        return RectResult {
            forward,
            backward,
            factor: 0.0,
            degenerate: true,
        };
    }
    RectResult {
        forward,
        backward,
        factor: (forward + backward).abs() / denom,
        degenerate: false,
    }
}

pub fn rectification_factor(
    p: &SystemParams,
    bias: &BiasSpec,
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> Result<RectResult> {
    bias.validate()?;
    let (hot, cold) = bias.temperatures();
    let forward = solve_dicke_flow(p, &res_q.with_temperature(cold), &res_r.with_temperature(hot))?;
    if bias.delta_t == 0.0 {
        return Ok(rectification_from_flows(forward.current_q, -forward.current_q));
    }
    let backward = solve_dicke_flow(p, &res_q.with_temperature(hot), &res_r.with_temperature(cold))?;
    Ok(rectification_from_flows(forward.current_q, backward.current_q))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectMax {
    pub factor: f64,
    pub delta_t: f64,
}

/// Largest rectification factor over a grid of biases; ties go to the smaller
/// bias.
pub fn max_rectification(
    p: &SystemParams,
    t0: f64,
    delta_grid: &[f64],
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> Result<RectMax> {
    if delta_grid.is_empty() {
        return Err(Error::InvalidParameter {
            field: "delta_t",
            reason: "bias grid is empty".into(),
        });
    }
    let mut best: Option<RectMax> = None;
    for &delta_t in delta_grid {
        let r = rectification_factor(p, &BiasSpec::new(t0, delta_t)?, res_q, res_r)?;
        let candidate = RectMax {
            factor: r.factor,
            delta_t,
        };
        best = Some(match best {
            None => candidate,
            Some(b) if candidate.factor > b.factor => candidate,
            Some(b) if candidate.factor == b.factor && candidate.delta_t < b.delta_t => candidate,
            Some(b) => b,
        });
    }
    Ok(best.expect("non-empty grid"))
}

/// `points` uniform biases on `(0, max_fraction * t0]`; the default sweep uses
/// 40 points with `max_fraction = 1.9`.
pub fn default_delta_grid(t0: f64, points: usize, max_fraction: f64) -> Vec<f64> {
    let top = max_fraction * t0;
    (1..=points).map(|i| top * i as f64 / points as f64).collect()
}
