//! Pure states and density matrices with tensor-factor bookkeeping.

use crate::eig::eigvals_hermitian;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use num_complex::Complex64;

const NORM_TOL: f64 = 1e-10;
const STRUCTURAL_TOL: f64 = 1e-10;
const EIGENVALUE_FLOOR: f64 = -1e-10;

/// A normalized complex state vector.
#[derive(Clone, Debug)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParams("state dimension must be positive".into()));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && (norm - 1.0).abs() <= NORM_TOL) {
            return Err(Error::InvalidParams(format!(
                "state vector norm {norm} is not 1 within {NORM_TOL:.0e}"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes the given amplitudes; rejects the zero vector.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParams(
                "cannot normalize a zero or non-finite state vector".into(),
            ));
        }
        let scaled = amplitudes
            .into_iter()
            .map(|a| a / Complex64::new(norm, 0.0))
            .collect();
        Self::new(scaled)
    }

    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange(format!(
                "basis index {index} outside [0, {dim})"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// Equal-amplitude superposition of all basis states.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParams("state dimension must be positive".into()));
        }
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            amplitudes: vec![a; dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self { amplitudes }
    }

    /// The projector |psi><psi| as a density matrix over the given factors.
    pub fn density(&self, factor_dims: Vec<usize>) -> Result<DensityMatrix> {
        DensityMatrix::new(ComplexMatrix::outer(&self.amplitudes), factor_dims)
    }
}

/// A density matrix together with the dimensions of its tensor factors.
///
/// Construction checks the structural invariants (shape, Hermiticity, unit
/// trace, finiteness); the spectral positivity check is a separate call
/// because it costs a full eigendecomposition.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    factor_dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, factor_dims: Vec<usize>) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::InvalidDensityMatrix(format!(
                "matrix is {}x{}, not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let product: usize = factor_dims.iter().product();
        if factor_dims.is_empty() || product != matrix.rows() {
            return Err(Error::FactorMismatch(format!(
                "factor dims {factor_dims:?} do not multiply to dimension {}",
                matrix.rows()
            )));
        }
        if !matrix.all_finite() {
            return Err(Error::InvalidDensityMatrix("non-finite entries".into()));
        }
        let defect = matrix.hermitian_defect();
        if defect > STRUCTURAL_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "Hermitian defect {defect:.3e} exceeds {STRUCTURAL_TOL:.0e}"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STRUCTURAL_TOL || trace.im.abs() > STRUCTURAL_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {trace} is not 1 within {STRUCTURAL_TOL:.0e}"
            )));
        }
        Ok(Self { matrix, factor_dims })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    /// Full validation including the spectral floor: every eigenvalue must
    /// be >= -1e-10. Used by tests and analysis entry points; the hot
    /// evolution loops rely on the Kraus form preserving positivity.
    pub fn validate_spectrum(&self) -> Result<()> {
        let vals = eigvals_hermitian(&self.matrix)?;
        if let Some(&lowest) = vals.first() {
            if lowest < EIGENVALUE_FLOOR {
                return Err(Error::InvalidDensityMatrix(format!(
                    "negative eigenvalue {lowest:.3e} below floor {EIGENVALUE_FLOOR:.0e}"
                )));
            }
        }
        Ok(())
    }

    /// Tr(rho^2); equals Sum |rho_ij|^2 for Hermitian rho.
    pub fn purity(&self) -> f64 {
        self.matrix.data().iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probabilities along the computational-basis diagonal.
    pub fn diagonal_distribution(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix.get(i, i).re).collect()
    }
}

/// Traces out the last tensor factor.
pub fn partial_trace_last(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let dims = rho.factor_dims();
    if dims.len() < 2 {
        return Err(Error::FactorMismatch(
            "partial trace needs at least two tensor factors".into(),
        ));
    }
    let last = dims[dims.len() - 1];
    let lead = rho.dim() / last;
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(lead, lead, |a, b| {
        (0..last).map(|k| m.get(a * last + k, b * last + k)).sum()
    });
    DensityMatrix::new(out, dims[..dims.len() - 1].to_vec())
}

/// Transposes the second factor of a bipartite state:
/// <i,j| out |k,l> = <i,l| rho |k,j>.
///
/// The result is Hermitian with unit trace but may be non-positive, so it
/// is returned as a plain matrix.
pub fn partial_transpose_second(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let dims = rho.factor_dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::FactorMismatch(format!(
            "partial transpose needs factor dims [d, d], got {dims:?}"
        )));
    }
    let d = dims[0];
    let m = rho.matrix();
    Ok(ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        m.get(i * d + l, k * d + j)
    }))
}
