//! Steady-state quantum heat transport in the nonequilibrium anisotropic Dicke model.
//!
//! The crate is organised bottom-up:
//!
//! * [`operators`] builds truncated bosonic and collective-spin matrices.
//! * [`spectra`] assembles the anisotropic Dicke and two-coupled-oscillator
//!   Hamiltonians, diagonalises them, and computes the Bogoliubov normal modes.
//! * [`dissipation`] implements the dressed-state master equation in the
//!   population (secular) sector: Ohmic rates, steady state, heat currents.
//! * [`thermolimit`] holds the closed-form thermodynamic-limit solutions at
//!   `gamma = 0` and `gamma = 1`, used as independent oracles.
//! * [`rectify`] computes the thermal rectification factor.
//!
//! Units: `hbar = k_B = 1`, frequencies and temperatures in units of the photon
//! frequency unless stated otherwise.

pub mod dissipation;
pub mod error;
pub mod operators;
pub mod rectify;
pub mod spectra;
pub mod thermolimit;

pub use dissipation::{
    bose_occupation, build_rates, heat_current, solve_dicke_flow, solve_oscillator_flow,
    spectral_density, steady_state, Bath, Diagnostics, FlowResult, FlowWarning, ReservoirParams,
    TransitionEntry, TransitionTable,
};
pub use error::{Error, Result};
pub use operators::{BasisIndex, BasisTag, OperatorMatrix, Slot};
pub use rectify::{max_rectification, rectification_factor, BiasSpec, RectMax, RectResult};
pub use spectra::{
    build_dicke_hamiltonian, build_two_oscillator_hamiltonian, dynamical_eigenmodes,
    eigendecompose, EigenSolution, NormalModes, SystemParams,
};
pub use thermolimit::{
    analytic_current_gamma0, analytic_current_gamma1, effective_temperatures, limit_modes_gamma0,
    limit_modes_gamma1, limit_rates, EffectiveThermalState, LimitKind, LimitModes, LimitRates,
    ModeRates,
};
