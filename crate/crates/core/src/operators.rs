//! Truncated bosonic ladder operators, collective spin operators in the
//! maximal (Dicke) sector `j = N_s / 2`, and their tensor-product lifts.
//!
//! Product spaces are ordered photon-major: the photon index is the outer
//! (slow) index and the matter index (spin projection or HP boson number) the
//! inner one.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which Hilbert space an [`OperatorMatrix`] acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// Photon Fock space truncated at `n_fock` quanta.
    Fock(usize),
    /// Symmetric collective-spin sector of `N_s` qubits.
    Spin(usize),
    /// Photon (outer) times matter (inner). `n_matter` is `N_s` for the spin
    /// ensemble, or the HP-boson truncation for the two-oscillator model.
    Product { n_fock: usize, n_matter: usize },
}

impl BasisTag {
    pub fn dim(&self) -> usize {
        match *self {
            BasisTag::Fock(n) | BasisTag::Spin(n) => n + 1,
            BasisTag::Product { n_fock, n_matter } => (n_fock + 1) * (n_matter + 1),
        }
    }
}

/// Tensor factor an operator is lifted into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Photon,
    /// The spin ensemble, or its Holstein-Primakoff boson.
    Matter,
}

/// Dense complex square matrix tagged with the basis it is expressed in.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    data: DMatrix<Complex64>,
    basis: BasisTag,
}

impl OperatorMatrix {
    pub fn new(data: DMatrix<Complex64>, basis: BasisTag) -> Result<Self> {
        if !data.is_square() {
            return Err(Error::Shape(format!(
                "operator must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        if data.nrows() != basis.dim() {
            return Err(Error::Shape(format!(
                "matrix dimension {} does not match basis {:?} (dim {})",
                data.nrows(),
                basis,
                basis.dim()
            )));
        }
        Ok(Self { data, basis })
    }

    pub fn from_real(data: DMatrix<f64>, basis: BasisTag) -> Result<Self> {
        Self::new(data.map(|x| Complex64::new(x, 0.0)), basis)
    }

    pub fn identity(basis: BasisTag) -> Self {
        let n = basis.dim();
        Self {
            data: DMatrix::identity(n, n),
            basis,
        }
    }

    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_data(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.adjoint(),
            basis: self.basis,
        }
    }

    /// Largest entrywise deviation `|M - M^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[(i, j)] - self.data[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// True when every entry has an exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn real_part(&self) -> DMatrix<f64> {
        self.data.map(|z| z.re)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            data: &self.data * Complex64::new(factor, 0.0),
            basis: self.basis,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_basis(other)?;
        Ok(Self {
            data: &self.data + &other.data,
            basis: self.basis,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_basis(other)?;
        Ok(Self {
            data: &self.data - &other.data,
            basis: self.basis,
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_basis(other)?;
        Ok(Self {
            data: &self.data * &other.data,
            basis: self.basis,
        })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    fn check_same_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Shape(format!(
                "basis mismatch: {:?} vs {:?}",
                self.basis, other.basis
            )));
        }
        Ok(())
    }
}

/// Photon number and spin projection of a product-basis state.
///
/// The spin projection is stored doubled (`two_m = 2m`) so half-integer values
/// stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub photon_number: usize,
    pub two_m: i64,
}

impl BasisIndex {
    pub fn new(photon_number: usize, two_m: i64) -> Self {
        Self {
            photon_number,
            two_m,
        }
    }

    pub fn spin_projection(&self) -> f64 {
        self.two_m as f64 / 2.0
    }

    pub fn flatten(&self, n_fock: usize, n_qubits: usize) -> Result<usize> {
        let ns = n_qubits as i64;
        if self.photon_number > n_fock
            || self.two_m < -ns
            || self.two_m > ns
            || (self.two_m + ns) % 2 != 0
        {
            return Err(Error::Shape(format!(
                "{self:?} outside product basis (n_fock={n_fock}, N_s={n_qubits})"
            )));
        }
        let spin_offset = ((self.two_m + ns) / 2) as usize;
        Ok(self.photon_number * (n_qubits + 1) + spin_offset)
    }

    pub fn from_flat(index: usize, n_fock: usize, n_qubits: usize) -> Result<Self> {
        let spin_dim = n_qubits + 1;
        if index >= (n_fock + 1) * spin_dim {
            return Err(Error::Shape(format!(
                "flat index {index} outside product basis of dim {}",
                (n_fock + 1) * spin_dim
            )));
        }
        let photon_number = index / spin_dim;
        let spin_offset = (index % spin_dim) as i64;
        Ok(Self {
            photon_number,
            two_m: 2 * spin_offset - n_qubits as i64,
        })
    }
}

/// Photon annihilation operator truncated at `n_fock` quanta.
pub fn fock_annihilation(n_fock: usize) -> Result<OperatorMatrix> {
    if n_fock < 1 {
        return Err(Error::InvalidTruncation(format!(
            "n_fock must be >= 1, got {n_fock}"
        )));
    }
    let dim = n_fock + 1;
    let mut data = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 1..dim {
        data[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    OperatorMatrix::new(data, BasisTag::Fock(n_fock))
}

/// Number operator `a^dagger a` truncated at `n_fock` quanta.
pub fn fock_number(n_fock: usize) -> Result<OperatorMatrix> {
    if n_fock < 1 {
        return Err(Error::InvalidTruncation(format!(
            "n_fock must be >= 1, got {n_fock}"
        )));
    }
    let dim = n_fock + 1;
    let data = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(i as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    OperatorMatrix::new(data, BasisTag::Fock(n_fock))
}

/// Collective spin operators of `N_s` qubits in the `j = N_s/2` multiplet.
#[derive(Debug, Clone)]
pub struct CollectiveSpin {
    pub jz: OperatorMatrix,
    pub jp: OperatorMatrix,
    pub jm: OperatorMatrix,
    pub jx: OperatorMatrix,
}

impl CollectiveSpin {
    /// `J_y = (J_+ - J_-) / 2i`.
    pub fn jy(&self) -> OperatorMatrix {
        let diff = self.jp.data() - self.jm.data();
        OperatorMatrix {
            data: diff * Complex64::new(0.0, -0.5),
            basis: self.jp.basis(),
        }
    }
}

/// Builds `J_z`, `J_+`, `J_-` and `J_x` for `n_qubits` qubits.
///
/// Basis state `s` (0-based) carries projection `m = s - N_s/2`.
pub fn collective_spin(n_qubits: usize) -> Result<CollectiveSpin> {
    if n_qubits < 1 {
        return Err(Error::InvalidSize(format!(
            "N_s must be >= 1, got {n_qubits}"
        )));
    }
    let dim = n_qubits + 1;
    let j = n_qubits as f64 / 2.0;
    let basis = BasisTag::Spin(n_qubits);

    let mut jz = DMatrix::<Complex64>::zeros(dim, dim);
    let mut jp = DMatrix::<Complex64>::zeros(dim, dim);
    for s in 0..dim {
        let m = s as f64 - j;
        jz[(s, s)] = Complex64::new(m, 0.0);
        if s + 1 < dim {
            jp[(s + 1, s)] = Complex64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);

    Ok(CollectiveSpin {
        jz: OperatorMatrix::new(jz, basis)?,
        jp: OperatorMatrix::new(jp, basis)?,
        jm: OperatorMatrix::new(jm, basis)?,
        jx: OperatorMatrix::new(jx, basis)?,
    })
}

/// Kronecker product `outer (x) inner` with photon-major ordering.
pub fn kron(outer: &OperatorMatrix, inner: &OperatorMatrix) -> Result<OperatorMatrix> {
    let basis = match (outer.basis(), inner.basis()) {
        (BasisTag::Fock(n_fock), BasisTag::Spin(n) | BasisTag::Fock(n)) => BasisTag::Product {
            n_fock,
            n_matter: n,
        },
        (o, i) => {
            return Err(Error::Shape(format!(
                "kron expects a photon operator outside and a matter operator inside, got {o:?} (x) {i:?}"
            )))
        }
    };
    OperatorMatrix::new(outer.data().kronecker(inner.data()), basis)
}

/// Lifts a single-factor operator into the product space, acting as the
/// identity on the other factor of dimension `other_dim`.
pub fn embed(op: &OperatorMatrix, slot: Slot, other_dim: usize) -> Result<OperatorMatrix> {
    if other_dim < 2 {
        return Err(Error::Shape(format!(
            "other factor must have dimension >= 2, got {other_dim}"
        )));
    }
    let other_n = other_dim - 1;
    match (op.basis(), slot) {
        (BasisTag::Fock(_), Slot::Photon) => {
            kron(op, &OperatorMatrix::identity(BasisTag::Spin(other_n)))
        }
        (BasisTag::Spin(_) | BasisTag::Fock(_), Slot::Matter) => {
            kron(&OperatorMatrix::identity(BasisTag::Fock(other_n)), op)
        }
        (tag, slot) => Err(Error::Shape(format!(
            "cannot embed operator on {tag:?} into the {slot:?} slot"
        ))),
    }
}

/// Diagonal projector onto product states whose photon number is at least
/// `threshold`.
pub fn photon_tail_projector(n_fock: usize, n_matter: usize, threshold: usize) -> Vec<f64> {
    let inner = n_matter + 1;
    (0..(n_fock + 1) * inner)
        .map(|i| if i / inner >= threshold { 1.0 } else { 0.0 })
        .collect()
}
