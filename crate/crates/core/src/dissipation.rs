//! Dressed-state master equation in the population sector.
//!
//! Each bath couples through a system operator `A_mu`; in the eigenbasis of
//! the full system Hamiltonian it drives incoherent jumps between levels at
//!
//! ```text
//! up   (j -> k):  gamma_mu(D) n_mu(D)       |<k|A_mu|j>|^2
//! down (k -> j):  gamma_mu(D) [1 + n_mu(D)] |<k|A_mu|j>|^2,   D = E_k - E_j
//! ```
//!
//! with an Ohmic spectral function and Bose occupation. Coherences decay in
//! the secular limit, so the steady state is the null vector of a classical
//! rate matrix over level populations.

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::operators::{collective_spin, embed, fock_annihilation, photon_tail_projector, Slot};
use crate::spectra::{
    build_dicke_hamiltonian, build_two_oscillator_hamiltonian, dynamical_eigenmodes,
    eigendecompose, EigenSolution, SystemParams,
};

/// Gaps at or below this (in units of the photon frequency) are treated as
/// degenerate and get the zero-frequency limit of the rates.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Squared matrix elements below this are dropped from transition tables.
pub const MATRIX_ELEMENT_CUTOFF: f64 = 1e-14;

/// Slightly negative populations down to this floor are clamped to zero.
pub const POPULATION_FLOOR: f64 = -1e-12;

/// Population on the top two truncated levels above which a result carries a
/// truncation warning.
pub const TAIL_WARNING: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bath {
    /// Reservoir attached to the qubits (or HP boson).
    Q,
    /// Reservoir attached to the photon.
    R,
}

/// Ohmic bosonic reservoir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirParams {
    pub label: Bath,
    pub alpha: f64,
    pub omega_c: f64,
    pub temperature: f64,
}

impl ReservoirParams {
    pub fn new(label: Bath, alpha: f64, omega_c: f64, temperature: f64) -> Self {
        Self {
            label,
            alpha,
            omega_c,
            temperature,
        }
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        Self {
            temperature,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(invalid("alpha", format!("must be > 0, got {}", self.alpha)));
        }
        if !(self.omega_c.is_finite() && self.omega_c > 0.0) {
            return Err(invalid("omega_c", format!("must be > 0, got {}", self.omega_c)));
        }
        if !(self.temperature.is_finite() && self.temperature > 0.0) {
            return Err(invalid(
                "temperature",
                format!("must be > 0, got {}", self.temperature),
            ));
        }
        Ok(())
    }

    /// `gamma(D) n(D)` for `D > 0`, or its `D -> 0` limit `alpha T`.
    pub fn absorption_factor(&self, gap: f64) -> f64 {
        if gap <= 0.0 {
            return self.alpha * self.temperature;
        }
        spectral_density(self, gap) / (gap / self.temperature).exp_m1()
    }

    /// `gamma(D) [1 + n(D)]` for `D > 0`, or its `D -> 0` limit `alpha T`.
    pub fn emission_factor(&self, gap: f64) -> f64 {
        if gap <= 0.0 {
            return self.alpha * self.temperature;
        }
        let x = gap / self.temperature;
        // 1 + n = 1 / (1 - e^{-x})
        spectral_density(self, gap) / -(-x).exp_m1()
    }
}

/// Ohmic spectral function `alpha * omega * exp(-|omega| / omega_c)`.
///
/// Odd in `omega`, so that `gamma(-w) n(-w) = gamma(w) [1 + n(w)]`.
pub fn spectral_density(res: &ReservoirParams, omega: f64) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    res.alpha * omega * (-omega.abs() / res.omega_c).exp()
}

/// Bose-Einstein occupation `1 / (exp(D / T) - 1)`.
pub fn bose_occupation(res: &ReservoirParams, gap: f64) -> Result<f64> {
    if !(gap > 0.0) {
        return Err(Error::Domain(format!(
            "Bose occupation needs a positive gap, got {gap}"
        )));
    }
    Ok(1.0 / (gap / res.temperature).exp_m1())
}

/// One dressed-state transition `j -> k` (`k > j`) induced by a single bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionEntry {
    pub k: usize,
    pub j: usize,
    pub bath: Bath,
    pub gap: f64,
    pub rate_up: f64,
    pub rate_down: f64,
    pub matrix_element_sq: f64,
    /// Gap fell below the degeneracy tolerance; both rates use the
    /// zero-frequency limit.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable {
    pub bath: Bath,
    pub n_levels: usize,
    pub entries: Vec<TransitionEntry>,
}

/// Rates of every dressed-state transition driven by `coupling_op`.
pub fn build_rates(
    eig: &EigenSolution,
    coupling_op: &crate::operators::OperatorMatrix,
    res: &ReservoirParams,
    degeneracy_tol: f64,
) -> Result<TransitionTable> {
    res.validate()?;
    let msq = eig.matrix_elements_sq(coupling_op)?;
    let n = eig.len();
    let mut entries = Vec::new();
    for k in 0..n {
        for j in 0..k {
            let m2 = msq[(k, j)];
            if m2 < MATRIX_ELEMENT_CUTOFF {
                continue;
            }
            let gap = eig.energies[k] - eig.energies[j];
            let degenerate = gap <= degeneracy_tol;
            let (up, down) = if degenerate {
                let limit = res.alpha * res.temperature;
                (limit, limit)
            } else {
                (res.absorption_factor(gap), res.emission_factor(gap))
            };
            entries.push(TransitionEntry {
                k,
                j,
                bath: res.label,
                gap,
                rate_up: up * m2,
                rate_down: down * m2,
                matrix_element_sq: m2,
                degenerate,
            });
        }
    }
    Ok(TransitionTable {
        bath: res.label,
        n_levels: n,
        entries,
    })
}

/// Expectation values in the steady state, used to judge truncation and
/// Holstein-Primakoff validity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    /// Population on the top two photon (and, for the two-oscillator model,
    /// HP-boson) levels.
    pub tail_mass: f64,
    pub mean_photon: f64,
    /// `<J_z> + N_s/2` for the Dicke model, `<b^dag b>` for two oscillators.
    pub mean_excitation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlowWarning {
    /// Steady-state weight on the truncation edge exceeds [`TAIL_WARNING`].
    Truncation { tail_mass: f64 },
}

impl std::fmt::Display for FlowWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FlowWarning::Truncation { tail_mass } => {
                write!(f, "truncation: tail mass {tail_mass:e}")
            }
        }
    }
}

/// Steady state of the population rate equation and the resulting heat
/// currents. Positive currents flow from the system into the reservoir.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    pub populations: Vec<f64>,
    pub current_q: f64,
    pub current_r: f64,
    /// `max_k |(W P)_k|` of the un-modified rate matrix.
    pub residual: f64,
    pub diagnostics: Option<Diagnostics>,
    pub warnings: Vec<FlowWarning>,
}

/// `J = sum_{k>n} D_kn (down_kn P_k - up_kn P_n)` for one bath.
pub fn heat_current(table: &TransitionTable, populations: &[f64]) -> f64 {
    table
        .entries
        .iter()
        .map(|e| e.gap * (e.rate_down * populations[e.k] - e.rate_up * populations[e.j]))
        .sum()
}

/// Solves `W P = 0`, `sum P = 1` for the combined rate matrix of all tables.
///
/// The balance row of the highest level is replaced by the normalisation
/// constraint; one step of iterative refinement follows the LU solve.
pub fn steady_state(tables: &[TransitionTable], n_levels: usize) -> Result<FlowResult> {
    if tables.is_empty() {
        return Err(Error::Shape("steady state needs at least one table".into()));
    }
    if n_levels == 0 {
        return Err(Error::Shape("steady state needs at least one level".into()));
    }
    let mut w = DMatrix::<f64>::zeros(n_levels, n_levels);
    let mut components = DisjointSet::new(n_levels);
    for table in tables {
        for e in &table.entries {
            if e.k >= n_levels || e.j >= n_levels {
                return Err(Error::Shape(format!(
                    "transition {} -> {} outside {n_levels} levels",
                    e.j, e.k
                )));
            }
            w[(e.j, e.k)] += e.rate_down;
            w[(e.k, e.j)] += e.rate_up;
            if e.rate_down > 0.0 || e.rate_up > 0.0 {
                components.union(e.k, e.j);
            }
        }
    }
    for col in 0..n_levels {
        let outflow: f64 = (0..n_levels).filter(|&r| r != col).map(|r| w[(r, col)]).sum();
        w[(col, col)] = -outflow;
    }

    let groups = components.groups();
    if groups.len() > 1 {
        let summary = groups
            .iter()
            .take(6)
            .map(|g| {
                let shown: Vec<String> = g.iter().take(4).map(|i| i.to_string()).collect();
                let more = if g.len() > 4 { ",..." } else { "" };
                format!("{{{}{}}} ({} levels)", shown.join(","), more, g.len())
            })
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::NonUniqueSteadyState {
            n_components: groups.len(),
            summary,
        });
    }

    let last = n_levels - 1;
    let mut system = w.clone();
    for c in 0..n_levels {
        system[(last, c)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(n_levels);
    rhs[last] = 1.0;

    let lu = system.clone().lu();
    let mut p = lu
        .solve(&rhs)
        .ok_or_else(|| Error::SingularSystem("rate matrix with normalisation row is singular".into()))?;
    let correction = lu
        .solve(&(&rhs - &system * &p))
        .ok_or_else(|| Error::SingularSystem("refinement solve failed".into()))?;
    p += correction;

    if let Some((level, &value)) = p
        .iter()
        .enumerate()
        .find(|(_, x)| !x.is_finite() || **x < POPULATION_FLOOR)
    {
        return Err(Error::NegativePopulation { level, value });
    }
    if p.iter().any(|&x| x < 0.0) {
        p.iter_mut().for_each(|x| *x = x.max(0.0));
        let total: f64 = p.iter().sum();
        p /= total;
    }

    let residual = (&w * &p).amax();
    let populations: Vec<f64> = p.iter().copied().collect();
    let mut current_q = 0.0;
    let mut current_r = 0.0;
    for table in tables {
        let j = heat_current(table, &populations);
        match table.bath {
            Bath::Q => current_q += j,
            Bath::R => current_r += j,
        }
    }
    Ok(FlowResult {
        populations,
        current_q,
        current_r,
        residual,
        diagnostics: None,
        warnings: Vec::new(),
    })
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Members of every component, components ordered by smallest member.
    fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = self.find(i);
            by_root[r].push(i);
        }
        by_root.into_iter().filter(|g| !g.is_empty()).collect()
    }
}

fn check_labels(res_q: &ReservoirParams, res_r: &ReservoirParams) -> Result<()> {
    if res_q.label != Bath::Q {
        return Err(invalid("label", "first reservoir must be the q bath"));
    }
    if res_r.label != Bath::R {
        return Err(invalid("label", "second reservoir must be the r bath"));
    }
    res_q.validate()?;
    res_r.validate()
}

fn expectation(eig: &EigenSolution, populations: &[f64], diagonal: &[f64]) -> Result<f64> {
    Ok(eig
        .diagonal_expectations(diagonal)?
        .iter()
        .zip(populations)
        .map(|(o, p)| o * p)
        .sum())
}

fn attach_warnings(flow: &mut FlowResult) {
    if let Some(d) = flow.diagnostics {
        if d.tail_mass > TAIL_WARNING {
            flow.warnings.push(FlowWarning::Truncation {
                tail_mass: d.tail_mass,
            });
        }
    }
}

/// Full pipeline for the finite-size anisotropic Dicke model with
/// `A_q = 2 J_x / sqrt(N_s)` and `A_r = a + a^dag`.
pub fn solve_dicke_flow(
    p: &SystemParams,
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> Result<FlowResult> {
    check_labels(res_q, res_r)?;
    let h = build_dicke_hamiltonian(p)?;
    let eig = eigendecompose(&h)?;

    let spin_dim = p.n_qubits + 1;
    let a = fock_annihilation(p.n_fock)?;
    let spin = collective_spin(p.n_qubits)?;
    let a_r = embed(&a.add(&a.adjoint())?, Slot::Photon, spin_dim)?;
    let a_q = embed(
        &spin.jx.scale(2.0 / (p.n_qubits as f64).sqrt()),
        Slot::Matter,
        p.n_fock + 1,
    )?;

    let tol = DEGENERACY_TOL * p.omega_a;
    let tables = [
        build_rates(&eig, &a_q, res_q, tol)?,
        build_rates(&eig, &a_r, res_r, tol)?,
    ];
    let mut flow = steady_state(&tables, eig.len())?;

    let photon_number: Vec<f64> = (0..eig.source_dim).map(|i| (i / spin_dim) as f64).collect();
    let excitation: Vec<f64> = (0..eig.source_dim).map(|i| (i % spin_dim) as f64).collect();
    let tail = photon_tail_projector(p.n_fock, p.n_qubits, p.n_fock - 1);
    flow.diagnostics = Some(Diagnostics {
        tail_mass: expectation(&eig, &flow.populations, &tail)?,
        mean_photon: expectation(&eig, &flow.populations, &photon_number)?,
        mean_excitation: expectation(&eig, &flow.populations, &excitation)?,
    });
    attach_warnings(&mut flow);
    Ok(flow)
}

/// Same pipeline on the two-coupled-oscillator model with `A_q = b + b^dag`
/// and `A_r = a + a^dag`. Refuses parameters whose spectrum is unbounded
/// below.
pub fn solve_oscillator_flow(
    p: &SystemParams,
    res_q: &ReservoirParams,
    res_r: &ReservoirParams,
) -> Result<FlowResult> {
    check_labels(res_q, res_r)?;
    p.validate()?;
    let modes = dynamical_eigenmodes(p);
    if !modes.stable {
        return Err(Error::Unstable(format!(
            "two-oscillator spectrum unbounded below at lambda={}, gamma={}",
            p.lambda, p.gamma
        )));
    }
    let h = build_two_oscillator_hamiltonian(p)?;
    let eig = eigendecompose(&h)?;

    let b_dim = p.n_fock_b + 1;
    let a = fock_annihilation(p.n_fock)?;
    let b = fock_annihilation(p.n_fock_b)?;
    let a_r = embed(&a.add(&a.adjoint())?, Slot::Photon, b_dim)?;
    let a_q = embed(&b.add(&b.adjoint())?, Slot::Matter, p.n_fock + 1)?;

    let tol = DEGENERACY_TOL * p.omega_a;
    let tables = [
        build_rates(&eig, &a_q, res_q, tol)?,
        build_rates(&eig, &a_r, res_r, tol)?,
    ];
    let mut flow = steady_state(&tables, eig.len())?;

    let photon_number: Vec<f64> = (0..eig.source_dim).map(|i| (i / b_dim) as f64).collect();
    let boson_number: Vec<f64> = (0..eig.source_dim).map(|i| (i % b_dim) as f64).collect();
    let edge_a = p.n_fock - 1;
    let edge_b = p.n_fock_b - 1;
    let tail: Vec<f64> = (0..eig.source_dim)
        .map(|i| {
            if i / b_dim >= edge_a || i % b_dim >= edge_b {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    flow.diagnostics = Some(Diagnostics {
        tail_mass: expectation(&eig, &flow.populations, &tail)?,
        mean_photon: expectation(&eig, &flow.populations, &photon_number)?,
        mean_excitation: expectation(&eig, &flow.populations, &boson_number)?,
    });
    attach_warnings(&mut flow);
    Ok(flow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{BasisTag, OperatorMatrix};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn bath(label: Bath, t: f64) -> ReservoirParams {
        ReservoirParams::new(label, 0.001, 20.0, t)
    }

    #[test]
    fn ohmic_density_values() {
        let r = bath(Bath::Q, 1.0);
        assert_relative_eq!(spectral_density(&r, 1.0), 9.512_294_245_007_14e-4, max_relative = 1e-12);
        assert_eq!(spectral_density(&r, 0.0), 0.0);
        assert_relative_eq!(spectral_density(&r, 20.0), 7.357_588_823_428_847e-3, max_relative = 1e-12);
        assert_relative_eq!(spectral_density(&r, -1.0), -spectral_density(&r, 1.0));
    }

    #[test]
    fn bose_values() {
        assert_relative_eq!(
            bose_occupation(&bath(Bath::R, 1.2), 1.0).unwrap(),
            0.768_653_752_156_565_1,
            max_relative = 1e-11
        );
        assert_relative_eq!(
            bose_occupation(&bath(Bath::Q, 0.6), 1.0).unwrap(),
            0.232_856_518_060_986_2,
            max_relative = 1e-11
        );
        assert_eq!(bose_occupation(&bath(Bath::Q, 1e-300), 1.0).unwrap(), 0.0);
        assert!(matches!(
            bose_occupation(&bath(Bath::Q, 1.0), 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn factors_obey_detailed_balance_and_zero_gap_limit() {
        let r = bath(Bath::R, 0.7);
        for gap in [1e-6, 0.01, 0.5, 3.0, 25.0] {
            let ratio = r.absorption_factor(gap) / r.emission_factor(gap);
            assert_relative_eq!(ratio, (-gap / 0.7).exp(), max_relative = 1e-12);
        }
        assert_relative_eq!(r.absorption_factor(1e-12), 0.001 * 0.7, max_relative = 1e-9);
        assert_eq!(r.emission_factor(0.0), 0.001 * 0.7);
    }

    /// Two levels split by `gap` with a sigma_x coupling.
    fn two_level(gap: f64) -> (EigenSolution, OperatorMatrix) {
        let h = OperatorMatrix::from_real(
            DMatrix::from_row_slice(2, 2, &[-gap / 2.0, 0.0, 0.0, gap / 2.0]),
            BasisTag::Spin(1),
        )
        .unwrap();
        let x = OperatorMatrix::from_real(
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
            BasisTag::Spin(1),
        )
        .unwrap();
        (eigendecompose(&h).unwrap(), x)
    }

    #[test]
    fn two_level_thermal_ratio() {
        let (eig, x) = two_level(0.8);
        let res = bath(Bath::Q, 0.6);
        let table = build_rates(&eig, &x, &res, DEGENERACY_TOL).unwrap();
        assert_eq!(table.entries.len(), 1);
        let flow = steady_state(&[table], 2).unwrap();
        let n = bose_occupation(&res, 0.8).unwrap();
        assert_relative_eq!(flow.populations[1] / flow.populations[0], n / (1.0 + n), max_relative = 1e-12);
        assert_abs_diff_eq!(flow.current_q, 0.0, epsilon = 1e-18);
    }

    #[test]
    fn bare_photon_detailed_balance() {
        let p = SystemParams {
            lambda: 0.0,
            n_qubits: 1,
            n_fock: 4,
            ..SystemParams::default()
        };
        let eig = eigendecompose(&build_dicke_hamiltonian(&p).unwrap()).unwrap();
        let a = fock_annihilation(4).unwrap();
        let x = embed(&a.add(&a.adjoint()).unwrap(), Slot::Photon, 2).unwrap();
        let res = bath(Bath::R, 1.2);
        let table = build_rates(&eig, &x, &res, DEGENERACY_TOL).unwrap();
        let photon_gap: Vec<_> = table
            .entries
            .iter()
            .filter(|e| (e.gap - 1.0).abs() < 1e-12)
            .collect();
        assert!(!photon_gap.is_empty());
        for e in photon_gap {
            assert_relative_eq!(e.rate_down / e.rate_up, (1.0f64 / 1.2).exp(), max_relative = 1e-12);
        }
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let (eig, _) = two_level(1.0);
        let big = OperatorMatrix::identity(BasisTag::Spin(2));
        assert!(matches!(
            build_rates(&eig, &big, &bath(Bath::Q, 1.0), DEGENERACY_TOL),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn disconnected_levels_are_rejected() {
        // Photon bath only, no qubit-photon coupling: spin sectors never mix.
        let p = SystemParams {
            lambda: 0.0,
            n_qubits: 1,
            n_fock: 3,
            ..SystemParams::default()
        };
        let eig = eigendecompose(&build_dicke_hamiltonian(&p).unwrap()).unwrap();
        let a = fock_annihilation(3).unwrap();
        let x = embed(&a.add(&a.adjoint()).unwrap(), Slot::Photon, 2).unwrap();
        let table = build_rates(&eig, &x, &bath(Bath::R, 1.0), DEGENERACY_TOL).unwrap();
        match steady_state(&[table], eig.len()) {
            Err(Error::NonUniqueSteadyState { n_components, .. }) => assert_eq!(n_components, 2),
            other => panic!("expected non-unique steady state, got {other:?}"),
        }
    }

    #[test]
    fn empty_table_list_is_rejected() {
        assert!(steady_state(&[], 3).is_err());
    }

    #[test]
    fn decoupled_system_carries_no_current() {
        let p = SystemParams {
            lambda: 0.0,
            n_qubits: 2,
            n_fock: 12,
            ..SystemParams::default()
        };
        let flow = solve_dicke_flow(&p, &bath(Bath::Q, 0.6), &bath(Bath::R, 1.2)).unwrap();
        assert!(flow.current_q.abs() < 1e-15);
    }

    #[test]
    fn hot_photon_bath_heats_the_qubit_bath() {
        let p = SystemParams {
            lambda: 0.1,
            n_qubits: 1,
            ..SystemParams::default()
        };
        let flow = solve_dicke_flow(&p, &bath(Bath::Q, 0.6), &bath(Bath::R, 1.2)).unwrap();
        assert!(flow.current_q > 0.0);
        assert!((flow.current_q + flow.current_r).abs() <= 1e-10 * flow.current_q.abs());
        let d = flow.diagnostics.unwrap();
        assert!(d.tail_mass < TAIL_WARNING);
        assert!(flow.warnings.is_empty());
    }

    #[test]
    fn tight_truncation_triggers_warning() {
        let p = SystemParams {
            lambda: 0.1,
            n_qubits: 1,
            n_fock: 3,
            ..SystemParams::default()
        };
        let flow = solve_dicke_flow(&p, &bath(Bath::Q, 0.6), &bath(Bath::R, 1.2)).unwrap();
        assert!(matches!(flow.warnings.as_slice(), [FlowWarning::Truncation { .. }]));
    }

    #[test]
    fn reservoir_labels_are_checked() {
        let p = SystemParams::default();
        assert!(solve_dicke_flow(&p, &bath(Bath::R, 0.6), &bath(Bath::R, 1.2)).is_err());
        let bad = ReservoirParams::new(Bath::Q, 0.001, 20.0, 0.0);
        assert!(matches!(
            solve_dicke_flow(&p, &bad, &bath(Bath::R, 1.2)),
            Err(Error::InvalidParameter { field: "temperature", .. })
        ));
    }

    #[test]
    fn unstable_oscillator_is_refused() {
        let p = SystemParams {
            lambda: 0.46,
            gamma: 1.0,
            n_fock: 4,
            n_fock_b: 4,
            ..SystemParams::default()
        };
        assert!(matches!(
            solve_oscillator_flow(&p, &bath(Bath::Q, 0.6), &bath(Bath::R, 1.2)),
            Err(Error::Unstable(_))
        ));
    }
}
