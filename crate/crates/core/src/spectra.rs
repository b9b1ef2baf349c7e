//! Model Hamiltonians, dense Hermitian eigendecomposition and the Bogoliubov
//! normal modes of the two-coupled-oscillator model.

use nalgebra::{DMatrix, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::operators::{collective_spin, fock_annihilation, fock_number, kron, OperatorMatrix};

/// Reality tolerance for the eigenvalues of the 4x4 dynamical matrix.
pub const MODE_REALITY_TOL: f64 = 1e-10;

/// Hermiticity tolerance accepted by [`eigendecompose`], relative to the
/// largest entry (floored at one).
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Model constants shared by the Dicke and two-oscillator Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub omega_a: f64,
    pub epsilon: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub n_qubits: usize,
    pub n_fock: usize,
    /// HP-boson truncation, used only by the two-oscillator model.
    pub n_fock_b: usize,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            omega_a: 1.0,
            epsilon: 0.8,
            lambda: 0.0,
            gamma: 0.0,
            n_qubits: 1,
            n_fock: 30,
            n_fock_b: 30,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_a.is_finite() && self.omega_a > 0.0) {
            return Err(invalid("omega_a", format!("must be > 0, got {}", self.omega_a)));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(invalid("epsilon", format!("must be > 0, got {}", self.epsilon)));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(invalid("lambda", format!("must be >= 0, got {}", self.lambda)));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(invalid("gamma", format!("must be >= 0, got {}", self.gamma)));
        }
        if self.n_qubits < 1 {
            return Err(invalid("n_qubits", "must be >= 1"));
        }
        if self.n_fock < 1 {
            return Err(invalid("n_fock", "must be >= 1"));
        }
        Ok(())
    }

    /// Coupling beyond which the `gamma = 1` two-oscillator model has no
    /// bounded spectrum.
    pub fn critical_lambda_gamma1(&self) -> f64 {
        (self.omega_a * self.epsilon).sqrt() / 2.0
    }
}

/// `H = eps J_z + w a^dag a + lambda/sqrt(N_s) [(a^dag J_- + a J_+) + gamma (a^dag J_+ + a J_-)]`
/// on the `(n_fock+1)(N_s+1)`-dimensional photon-major product space.
pub fn build_dicke_hamiltonian(p: &SystemParams) -> Result<OperatorMatrix> {
    p.validate()?;
    let a = fock_annihilation(p.n_fock)?;
    let ad = a.adjoint();
    let num = fock_number(p.n_fock)?;
    let spin = collective_spin(p.n_qubits)?;
    let id_photon = OperatorMatrix::identity(a.basis());
    let id_spin = OperatorMatrix::identity(spin.jz.basis());

    let g = p.lambda / (p.n_qubits as f64).sqrt();
    let h = kron(&id_photon, &spin.jz)?
        .scale(p.epsilon)
        .add(&kron(&num, &id_spin)?.scale(p.omega_a))?
        .add(
            &kron(&ad, &spin.jm)?
                .add(&kron(&a, &spin.jp)?)?
                .scale(g),
        )?
        .add(
            &kron(&ad, &spin.jp)?
                .add(&kron(&a, &spin.jm)?)?
                .scale(g * p.gamma),
        )?;
    Ok(h)
}

/// `H = eps b^dag b + w a^dag a + lambda [(a^dag b + a b^dag) + gamma (a^dag b^dag + a b)]`.
///
/// The constant `-eps N_s / 2` is dropped.
pub fn build_two_oscillator_hamiltonian(p: &SystemParams) -> Result<OperatorMatrix> {
    p.validate()?;
    if p.n_fock_b < 1 {
        return Err(invalid("n_fock_b", "must be >= 1"));
    }
    let a = fock_annihilation(p.n_fock)?;
    let ad = a.adjoint();
    let b = fock_annihilation(p.n_fock_b)?;
    let bd = b.adjoint();
    let id_a = OperatorMatrix::identity(a.basis());
    let id_b = OperatorMatrix::identity(b.basis());

    let h = kron(&id_a, &fock_number(p.n_fock_b)?)?
        .scale(p.epsilon)
        .add(&kron(&fock_number(p.n_fock)?, &id_b)?.scale(p.omega_a))?
        .add(&kron(&ad, &b)?.add(&kron(&a, &bd)?)?.scale(p.lambda))?
        .add(
            &kron(&ad, &bd)?
                .add(&kron(&a, &b)?)?
                .scale(p.lambda * p.gamma),
        )?;
    Ok(h)
}

#[derive(Debug, Clone, PartialEq)]
enum Eigvecs {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

/// Ascending eigenvalues and orthonormal column eigenvectors of a Hermitian
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    pub energies: Vec<f64>,
    vectors: Eigvecs,
    pub source_dim: usize,
}

impl EigenSolution {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn is_real(&self) -> bool {
        matches!(self.vectors, Eigvecs::Real(_))
    }

    /// Eigenvectors as columns.
    pub fn vectors(&self) -> DMatrix<Complex64> {
        match &self.vectors {
            Eigvecs::Real(v) => v.map(|x| Complex64::new(x, 0.0)),
            Eigvecs::Complex(v) => v.clone(),
        }
    }

    /// `|<phi_k| op |phi_j>|^2` for all `k, j`.
    pub fn matrix_elements_sq(&self, op: &OperatorMatrix) -> Result<DMatrix<f64>> {
        if op.dim() != self.source_dim {
            return Err(Error::Shape(format!(
                "operator dim {} does not match eigenbasis dim {}",
                op.dim(),
                self.source_dim
            )));
        }
        match &self.vectors {
            Eigvecs::Real(v) if op.is_real() => {
                let m = v.transpose() * (op.real_part() * v);
                Ok(m.map(|x| x * x))
            }
            _ => {
                let v = self.vectors();
                let m = v.adjoint() * (op.data() * &v);
                Ok(m.map(|z| z.norm_sqr()))
            }
        }
    }

    /// Weight `|<basis i|phi_k>|^2` of basis state `i` in eigenvector `k`.
    pub fn basis_weights(&self) -> DMatrix<f64> {
        match &self.vectors {
            Eigvecs::Real(v) => v.map(|x| x * x),
            Eigvecs::Complex(v) => v.map(|z| z.norm_sqr()),
        }
    }

    /// `<phi_k| O |phi_k>` for every eigenvector, for an operator diagonal in
    /// the computational basis.
    pub fn diagonal_expectations(&self, diagonal: &[f64]) -> Result<Vec<f64>> {
        if diagonal.len() != self.source_dim {
            return Err(Error::Shape(format!(
                "diagonal of length {} does not match eigenbasis dim {}",
                diagonal.len(),
                self.source_dim
            )));
        }
        let w = self.basis_weights();
        Ok((0..self.len())
            .map(|k| {
                w.column(k)
                    .iter()
                    .zip(diagonal)
                    .map(|(wi, di)| wi * di)
                    .sum()
            })
            .collect())
    }
}

/// Diagonalises a Hermitian matrix.
///
/// Eigenvalues come out ascending; each eigenvector is rotated so that its
/// largest-magnitude component (the first one, on ties) is real and positive.
pub fn eigendecompose(h: &OperatorMatrix) -> Result<EigenSolution> {
    let scale = h.max_abs().max(1.0);
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOL * scale {
        return Err(Error::NotHermitian { deviation: defect });
    }
    let n = h.dim();

    if h.is_real() {
        let mut m = h.real_part();
        // Symmetrise away round-off so the solver sees an exactly symmetric input.
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = avg;
                m[(j, i)] = avg;
            }
        }
        let (values, vectors) = real_symmetric_eigen(&m)?;
        let order = ascending_order(&values);
        let energies = order.iter().map(|&k| values[k]).collect();
        let mut v = DMatrix::<f64>::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            let col = vectors.column(src);
            let pivot = col[dominant_index(col.iter().map(|x| x.abs()))];
            let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
            v.set_column(dst, &(col * sign));
        }
        Ok(EigenSolution {
            energies,
            vectors: Eigvecs::Real(v),
            source_dim: n,
        })
    } else {
        let eig = SymmetricEigen::new(h.data().clone());
        let order = ascending_order(eig.eigenvalues.as_slice());
        let energies = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut v = DMatrix::<Complex64>::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            let col = eig.eigenvectors.column(src);
            let pivot = col[dominant_index(col.iter().map(|z| z.norm()))];
            let phase = if pivot.norm() > 0.0 {
                pivot.conj() / pivot.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            v.set_column(dst, &(col * phase));
        }
        Ok(EigenSolution {
            energies,
            vectors: Eigvecs::Complex(v),
            source_dim: n,
        })
    }
}

/// Dense real symmetric eigensolve, single-threaded so results do not depend
/// on the host's core count.
fn real_symmetric_eigen(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    use faer::dyn_stack::{MemBuffer, MemStack};
    use faer::linalg::evd::{self, ComputeEigenvectors, SelfAdjointEvdParams};
    use faer::{Mat, Par, Spec};

    let n = m.nrows();
    let a = Mat::<f64>::from_fn(n, n, |i, j| m[(i, j)]);
    let mut s = Mat::<f64>::zeros(n, n);
    let mut u = Mat::<f64>::zeros(n, n);
    let params: Spec<SelfAdjointEvdParams, f64> = Default::default();
    let mut buf = MemBuffer::new(evd::self_adjoint_evd_scratch::<f64>(
        n,
        ComputeEigenvectors::Yes,
        Par::Seq,
        params,
    ));
    evd::self_adjoint_evd(
        a.as_ref(),
        s.as_mut().diagonal_mut(),
        Some(u.as_mut()),
        Par::Seq,
        MemStack::new(&mut buf),
        params,
    )
    .map_err(|e| Error::SingularSystem(format!("eigensolver did not converge: {e:?}")))?;
    let values = (0..n).map(|i| s[(i, i)]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
    Ok((values, vectors))
}

fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    order
}

/// First index whose magnitude is within round-off of the maximum.
fn dominant_index(mags: impl Iterator<Item = f64> + Clone) -> usize {
    let max = mags.clone().fold(0.0_f64, f64::max);
    let floor = max * (1.0 - 1e-12);
    mags.enumerate()
        .find(|&(_, m)| m >= floor)
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Normal modes of the two-coupled-oscillator model from the 4x4 dynamical
/// matrix `[A, B; -B, -A]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalModes {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub stable: bool,
    /// Coefficient rows `[u+, v+]` and `[u-, v-]`, normalised so that
    /// `|u|^2 - |v|^2 = 1`. Present only for stable parameters.
    pub mode_vectors: Option<[[f64; 4]; 2]>,
    /// All four eigenvalues as `(re, im)`, sorted by real then imaginary part.
    pub spectrum: [(f64, f64); 4],
}

/// The 4x4 equation-of-motion matrix for `O = [a^dag, b^dag, a, b]`.
pub fn dynamical_matrix(p: &SystemParams) -> Matrix4<f64> {
    let (w, e, l, lg) = (p.omega_a, p.epsilon, p.lambda, p.lambda * p.gamma);
    #[rustfmt::skip]
    let m = Matrix4::new(
        w,   l,   0.0, lg,
        l,   e,   lg,  0.0,
        0.0, -lg, -w,  -l,
        -lg, 0.0, -l,  -e,
    );
    m
}

/// Eigenfrequencies of the two-oscillator model computed numerically from the
/// dynamical matrix. Instability is reported through `stable`, not as an error.
pub fn dynamical_eigenmodes(p: &SystemParams) -> NormalModes {
    let h = dynamical_matrix(p);
    let eig = h.complex_eigenvalues();
    let mut spectrum: [(f64, f64); 4] = [(0.0, 0.0); 4];
    for (slot, z) in spectrum.iter_mut().zip(eig.iter()) {
        *slot = (z.re, z.im);
    }
    spectrum.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let scale = h.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let all_real = spectrum.iter().all(|&(_, im)| im.abs() <= MODE_REALITY_TOL);
    let paired = (0..4).all(|i| {
        let (re, im) = spectrum[i];
        spectrum
            .iter()
            .any(|&(r2, i2)| (r2 + re).abs() <= MODE_REALITY_TOL * scale && (i2 + im).abs() <= MODE_REALITY_TOL * scale)
    });
    let positive: Vec<f64> = spectrum
        .iter()
        .filter(|&&(re, im)| im.abs() <= MODE_REALITY_TOL && re > 0.0)
        .map(|&(re, _)| re)
        .collect();

    let stable = all_real && paired && positive.len() == 2;
    if !stable {
        let (hi, lo) = match positive.as_slice() {
            [lo, hi] => (*hi, *lo),
            [only] => (*only, f64::NAN),
            _ => (f64::NAN, f64::NAN),
        };
        return NormalModes {
            lambda_plus: hi,
            lambda_minus: lo,
            stable: false,
            mode_vectors: None,
            spectrum,
        };
    }

    let (lambda_minus, lambda_plus) = (positive[0], positive[1]);
    let mode_vectors = Some([
        mode_vector(&h, lambda_plus),
        mode_vector(&h, lambda_minus),
    ]);
    NormalModes {
        lambda_plus,
        lambda_minus,
        stable: true,
        mode_vectors,
        spectrum,
    }
}

/// Null vector of `H - Lambda I` with symplectic normalisation.
fn mode_vector(h: &Matrix4<f64>, eigenvalue: f64) -> [f64; 4] {
    let shifted = h - Matrix4::identity() * eigenvalue;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    let row = v_t.row(imin);
    let mut vec = [row[0], row[1], row[2], row[3]];
    let norm = vec[0] * vec[0] + vec[1] * vec[1] - vec[2] * vec[2] - vec[3] * vec[3];
    let scale = 1.0 / norm.abs().sqrt();
    let pivot = dominant_index(vec.iter().map(|x| x.abs()));
    let sign = if vec[pivot] < 0.0 { -1.0 } else { 1.0 };
    for x in vec.iter_mut() {
        *x *= scale * sign;
    }
    vec
}
