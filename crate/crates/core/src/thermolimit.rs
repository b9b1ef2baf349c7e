//! Closed-form thermodynamic-limit solutions of the two-coupled-oscillator
//! model at `gamma = 0` (rotating coupling only) and `gamma = 1` (standard
//! Dicke coupling).
//!
//! In both limits the Hamiltonian separates into two independent normal
//! modes. Each mode exchanges quanta with both baths, relaxes to a geometric
//! distribution at an effective temperature set by the ratio of its total
//! up and down rates, and carries one cotunneling channel of heat.

use crate::dissipation::ReservoirParams;
use crate::error::{Error, Result};
use crate::spectra::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Gamma0,
    Gamma1,
}

/// Normal-mode frequencies and mixing angle of one solvable limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitModes {
    pub which: LimitKind,
    pub freq_high: f64,
    pub freq_low: f64,
    /// Mixing angle in `[0, pi)`; zero when the high mode is the bare photon.
    pub angle: f64,
    pub omega_a: f64,
    pub epsilon: f64,
}

impl LimitModes {
    fn half_angle_weights(&self) -> (f64, f64) {
        let half = 0.5 * self.angle;
        (half.cos().powi(2), half.sin().powi(2))
    }
}

/// Bogoliubov modes of the rotating-coupling model:
/// `freq = (w + e)/2 +- sqrt((w - e)^2/4 + lambda^2)`, `tan(angle) = 2 lambda / (w - e)`.
pub fn limit_modes_gamma0(p: &SystemParams) -> Result<LimitModes> {
    p.validate()?;
    let mean = 0.5 * (p.omega_a + p.epsilon);
    let half_split = 0.5 * (p.omega_a - p.epsilon);
    let root = (half_split * half_split + p.lambda * p.lambda).sqrt();
    let freq_low = mean - root;
    if !(freq_low > 0.0) {
        return Err(Error::Unstable(format!(
            "rotating-coupling low mode {freq_low} <= 0 at lambda={}",
            p.lambda
        )));
    }
    Ok(LimitModes {
        which: LimitKind::Gamma0,
        freq_high: mean + root,
        freq_low,
        angle: (2.0 * p.lambda).atan2(p.omega_a - p.epsilon),
        omega_a: p.omega_a,
        epsilon: p.epsilon,
    })
}

/// Normal modes of the standard Dicke coupling in the thermodynamic limit:
/// `freq^2 = [w^2 + e^2 +- sqrt((e^2 - w^2)^2 + 16 lambda^2 w e)] / 2`.
///
/// The angle rotates the position quadratures, `tan(angle) = 4 lambda sqrt(w e) / (w^2 - e^2)`,
/// so that `angle -> 0` when the high mode is the bare photon.
pub fn limit_modes_gamma1(p: &SystemParams) -> Result<LimitModes> {
    p.validate()?;
    let critical = p.critical_lambda_gamma1();
    if p.lambda >= critical {
        return Err(Error::Unstable(format!(
            "lambda={} at or beyond the critical coupling {critical}",
            p.lambda
        )));
    }
    let (w2, e2) = (p.omega_a * p.omega_a, p.epsilon * p.epsilon);
    let mixing = 4.0 * p.lambda * (p.omega_a * p.epsilon).sqrt();
    let root = ((e2 - w2).powi(2) + mixing * mixing).sqrt();
    let low_sq = 0.5 * (w2 + e2 - root);
    if !(low_sq > 0.0) {
        return Err(Error::Unstable(format!(
            "low mode frequency squared {low_sq} <= 0 at lambda={}",
            p.lambda
        )));
    }
    Ok(LimitModes {
        which: LimitKind::Gamma1,
        freq_high: (0.5 * (w2 + e2 + root)).sqrt(),
        freq_low: low_sq.sqrt(),
        angle: mixing.atan2(w2 - e2),
        omega_a: p.omega_a,
        epsilon: p.epsilon,
    })
}

/// Per-quantum rates of one normal mode: a transition `m -> m+1` occurs at
/// `(m+1) * up` and `m -> m-1` at `m * down`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeRates {
    pub r_up: f64,
    pub r_down: f64,
    pub q_up: f64,
    pub q_down: f64,
}

impl ModeRates {
    pub fn total_up(&self) -> f64 {
        self.r_up + self.q_up
    }

    pub fn total_down(&self) -> f64 {
        self.r_down + self.q_down
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRates {
    pub high: ModeRates,
    pub low: ModeRates,
}

/// Bath weights `(r_high, r_low, q_high, q_low)` of the two normal modes.
fn bath_weights(modes: &LimitModes) -> (f64, f64, f64, f64) {
    let (c2, s2) = modes.half_angle_weights();
    match modes.which {
        LimitKind::Gamma0 => (c2, s2, s2, c2),
        LimitKind::Gamma1 => {
            let (w, e) = (modes.omega_a, modes.epsilon);
            let (hi, lo) = (modes.freq_high, modes.freq_low);
            (c2 * w / hi, s2 * w / lo, s2 * e / hi, c2 * e / lo)
        }
    }
}

pub fn limit_rates(
    modes: &LimitModes,
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> LimitRates {
    let (r_hi, r_lo, q_hi, q_lo) = bath_weights(modes);
    let mode = |freq: f64, wr: f64, wq: f64| ModeRates {
        r_up: res_r.absorption_factor(freq) * wr,
        r_down: res_r.emission_factor(freq) * wr,
        q_up: res_q.absorption_factor(freq) * wq,
        q_down: res_q.emission_factor(freq) * wq,
    };
    LimitRates {
        high: mode(modes.freq_high, r_hi, q_hi),
        low: mode(modes.freq_low, r_lo, q_lo),
    }
}

/// Effective inverse temperatures and occupations of the two normal modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveThermalState {
    pub beta_eff_high: f64,
    pub beta_eff_low: f64,
    pub occ_high: f64,
    pub occ_low: f64,
}

/// `exp(-beta_eff * freq) = total up / total down` for each mode.
pub fn effective_temperatures(
    modes: &LimitModes,
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> EffectiveThermalState {
    let rates = limit_rates(modes, res_q, res_r);
    let solve = |r: &ModeRates, freq: f64| {
        let (up, down) = (r.total_up(), r.total_down());
        let beta = (down / up).ln() / freq;
        // n = 1 / (down/up - 1) without forming the ratio
        let occ = up / (down - up);
        (beta, occ)
    };
    let (beta_eff_high, occ_high) = solve(&rates.high, modes.freq_high);
    let (beta_eff_low, occ_low) = solve(&rates.low, modes.freq_low);
    EffectiveThermalState {
        beta_eff_high,
        beta_eff_low,
        occ_high,
        occ_low,
    }
}

/// `(1 + n_q) n_mode - n_q (1 + n_mode)` for one channel.
fn channel_bracket(res_q: &ReservoirParams, freq: f64, occ_mode: f64) -> f64 {
    let n_q = 1.0 / (freq / res_q.temperature).exp_m1();
    (1.0 + n_q) * occ_mode - n_q * (1.0 + occ_mode)
}

/// Heat flow into the q bath through the high and low mode, in that order.
pub fn current_channels(
    modes: &LimitModes,
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> [f64; 2] {
    let state = effective_temperatures(modes, res_q, res_r);
    let (c2, s2) = modes.half_angle_weights();
    let (hi, lo) = (modes.freq_high, modes.freq_low);
    let bracket_hi = channel_bracket(res_q, hi, state.occ_high);
    let bracket_lo = channel_bracket(res_q, lo, state.occ_low);
    let (g_hi, g_lo) = (
        crate::dissipation::spectral_density(res_q, hi),
        crate::dissipation::spectral_density(res_q, lo),
    );
    match modes.which {
        LimitKind::Gamma0 => [hi * s2 * g_hi * bracket_hi, lo * c2 * g_lo * bracket_lo],
        LimitKind::Gamma1 => {
            let e = modes.epsilon;
            [e * s2 * g_hi * bracket_hi, e * c2 * g_lo * bracket_lo]
        }
    }
}

/// Analytic steady-state heat flow into the q bath at `gamma = 0`.
pub fn analytic_current_gamma0(
    p: &SystemParams,
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> Result<f64> {
    res_q.validate()?;
    res_r.validate()?;
    let modes = limit_modes_gamma0(p)?;
    Ok(current_channels(&modes, res_q, res_r).iter().sum())
}

/// Analytic steady-state heat flow into the q bath at `gamma = 1`.
pub fn analytic_current_gamma1(
    p: &SystemParams,
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> Result<f64> {
    res_q.validate()?;
    res_r.validate()?;
    let modes = limit_modes_gamma1(p)?;
    Ok(current_channels(&modes, res_q, res_r).iter().sum())
}
