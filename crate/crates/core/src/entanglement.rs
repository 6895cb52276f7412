//! Locked-subspace projection, negativity, and the asymptotic coherence
//! formula for the two-qudit channel.

use crate::channel::ChannelParams;
use crate::eig::eigvals_hermitian;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::{partial_transpose_second, DensityMatrix};
use num_complex::Complex64;

const LOCKED_WEIGHT_TOL: f64 = 1e-8;

/// Projector onto the locked subspace spanned by |i, (i - gamma) mod d>.
#[derive(Clone, Debug)]
pub struct SubspaceProjector {
    matrix: ComplexMatrix,
    gamma: usize,
    d: usize,
}

impl SubspaceProjector {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Indices of the diagonal basis states the projector keeps.
    pub fn locked_indices(&self) -> Vec<usize> {
        (0..self.d)
            .map(|i| i * self.d + (i + self.d - self.gamma) % self.d)
            .collect()
    }
}

pub fn phase_locked_projector(d: usize, gamma: usize) -> Result<SubspaceProjector> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be positive".into()));
    }
    if gamma >= d {
        return Err(Error::IndexOutOfRange(format!(
            "gamma = {gamma} outside [0, d = {d})"
        )));
    }
    let dim = d * d;
    let mut matrix = ComplexMatrix::zeros(dim, dim);
    for i in 0..d {
        let idx = i * d + (i + d - gamma) % d;
        matrix.set(idx, idx, Complex64::new(1.0, 0.0));
    }
    Ok(SubspaceProjector { matrix, gamma, d })
}

/// Weight Tr(P rho P) of the state inside the locked subspace.
pub fn subspace_weight(rho: &DensityMatrix, projector: &SubspaceProjector) -> Result<f64> {
    let d = projector.d;
    if rho.factor_dims() != [d, d] {
        return Err(Error::FactorMismatch(format!(
            "state factors {:?} do not match projector dimension [{d}, {d}]",
            rho.factor_dims()
        )));
    }
    Ok(projector
        .locked_indices()
        .iter()
        .map(|&i| rho.matrix().get(i, i).re)
        .sum())
}

/// Entanglement negativity: the total magnitude of negative eigenvalues of
/// the partial transpose over the oscillator factor. Zero for product and
/// more generally for PPT states.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose_second(rho)?;
    let vals = eigvals_hermitian(&pt)?;
    let total: f64 = vals.iter().filter(|&&v| v < 0.0).map(|v| -v).sum();
    // An empty sum is -0.0; keep the reported value non-negative.
    Ok(total + 0.0)
}

/// The predicted asymptotic coherence between the locked images of the
/// stimulus components i and i_prime:
/// alpha_i conj(alpha_i') sum_delta beta_{i - delta} conj(beta_{i' - delta}).
pub fn predicted_coherence(
    alpha: &[Complex64],
    beta: &[Complex64],
    i: usize,
    i_prime: usize,
    d: usize,
) -> Result<Complex64> {
    if alpha.len() != d || beta.len() != d {
        return Err(Error::FactorMismatch(format!(
            "amplitude vectors must have length d = {d}, got {} and {}",
            alpha.len(),
            beta.len()
        )));
    }
    if i >= d || i_prime >= d {
        return Err(Error::IndexOutOfRange(format!(
            "component indices ({i}, {i_prime}) outside [0, {d})"
        )));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for delta0 in 0..d {
        sum += beta[(i + d - delta0) % d] * beta[(i_prime + d - delta0) % d].conj();
    }
    Ok(alpha[i] * alpha[i_prime].conj() * sum)
}

/// Result of comparing a locked state against the coherence formula.
#[derive(Clone, Copy, Debug)]
pub struct CoherenceReport {
    pub max_deviation: f64,
    pub checked_pairs: usize,
}

/// Checks every matrix element between locked-subspace images
/// |i + Omega t, i + Omega t - gamma> against the predicted coherence.
///
/// Errors if the state has not yet been absorbed into the locked subspace,
/// since the formula only holds in the asymptotic regime.
pub fn verify_asymptotic_coherence(
    rho: &DensityMatrix,
    alpha: &[Complex64],
    beta: &[Complex64],
    params: &ChannelParams,
    t: u64,
) -> Result<CoherenceReport> {
    let d = params.d();
    let gamma = params.detuning();
    let projector = phase_locked_projector(d, gamma)?;
    let weight = subspace_weight(rho, &projector)?;
    if weight < 1.0 - LOCKED_WEIGHT_TOL {
        return Err(Error::NotLocked { weight, t });
    }

    let shift = ((params.stim_freq() as u64 * t) % d as u64) as usize;
    let mut max_deviation: f64 = 0.0;
    let mut checked_pairs = 0;
    for i in 0..d {
        for i_prime in 0..d {
            let r = (i + shift) % d;
            let c = (i_prime + shift) % d;
            let row = r * d + (r + d - gamma) % d;
            let col = c * d + (c + d - gamma) % d;
            let measured = rho.matrix().get(row, col);
            let predicted = predicted_coherence(alpha, beta, i, i_prime, d)?;
            max_deviation = max_deviation.max((measured - predicted).norm());
            checked_pairs += 1;
        }
    }
    Ok(CoherenceReport {
        max_deviation,
        checked_pairs,
    })
}
