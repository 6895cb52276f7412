//! The dissipative two-qudit channel: a stimulus and an oscillator qudit
//! evolve by commuting shifts, while an ancilla-mediated isometry snaps the
//! phase difference toward its entrainment fixed point. Tracing the ancilla
//! after every step yields a Kraus family indexed by the ancilla labels.

use crate::classical::{circular_membership, ModelParams};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;
use num_complex::Complex64;

/// Channel parameters coincide with the classical map parameters.
pub type ChannelParams = ModelParams;

/// Suggested upper bound on d for dense two-qudit evolution; callers that
/// go past it should warn, since matrices grow as d^4 entries.
pub const DENSE_SCALE_CAP: usize = 32;

const ISOMETRY_TOL: f64 = 1e-10;

/// Diagonal phase-readout operators on the joint d x d space.
#[derive(Clone, Debug)]
pub struct PhaseOperators {
    pub theta_op: ComplexMatrix,
    pub phi_op: ComplexMatrix,
}

/// Builds theta-hat = (sum_i i |i><i|) (x) 1 and phi-hat = 1 (x) (sum_j j |j><j|).
pub fn build_phase_ops(d: usize) -> PhaseOperators {
    let dim = d * d;
    let theta_op = ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new((r / d) as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let phi_op = ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new((r % d) as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    PhaseOperators { theta_op, phi_op }
}

/// Cyclic shift by k on a d-level system: |i> -> |(i + k) mod d>.
pub fn build_shift(d: usize, k: usize) -> ComplexMatrix {
    let k = k % d;
    ComplexMatrix::from_fn(d, d, |i, j| {
        if i == (j + k) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The interaction isometry restricted to the ancilla reset sector.
///
/// Maps the d^2-dimensional pair space into pair (x) ancilla with d + 1
/// ancilla levels (index 0 is the reset label, index i + 1 the difference
/// label i). Basis action on |theta, phi> with difference delta:
/// delta = 0 keeps the pair and writes the reset label; delta outside the
/// entrainment range keeps everything; otherwise the oscillator snaps to
/// theta and delta is recorded in the ancilla.
pub fn build_vk_isometry(params: &ChannelParams) -> ComplexMatrix {
    let d = params.d();
    let anc = d + 1;
    let mut v = ComplexMatrix::zeros(d * d * anc, d * d);
    for theta in 0..d {
        for phi in 0..d {
            let col = theta * d + phi;
            let delta = (theta + d - phi) % d;
            let inside = circular_membership(delta, params.k(), d).expect("validated params");
            let row = if delta == 0 {
                (theta * d + theta) * anc
            } else if !inside {
                (theta * d + phi) * anc
            } else {
                (theta * d + theta) * anc + delta + 1
            };
            v.set(row, col, Complex64::new(1.0, 0.0));
        }
    }
    v
}

/// One step of the open evolution as d + 1 Kraus operators indexed by the
/// ancilla label left behind; zero operators are kept so the index always
/// equals the label.
#[derive(Clone, Debug)]
pub struct KrausFamily {
    d: usize,
    operators: Vec<ComplexMatrix>,
    adjoints: Vec<ComplexMatrix>,
}

impl KrausFamily {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// Max entrywise deviation of sum K_a† K_a from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let dim = self.d * self.d;
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (k, kd) in self.operators.iter().zip(&self.adjoints) {
            acc.add_assign(&kd.mul(k));
        }
        acc.max_abs_diff(&ComplexMatrix::identity(dim))
    }
}

/// Slices an isometry into Kraus operators and composes the free shifts:
/// K_a = (U_Omega (x) U_omega) <a|_anc V.
pub fn kraus_from_isometry(v: &ComplexMatrix, params: &ChannelParams) -> Result<KrausFamily> {
    let d = params.d();
    let anc = d + 1;
    let dim = d * d;
    if v.rows() != dim * anc || v.cols() != dim {
        return Err(Error::FactorMismatch(format!(
            "isometry must be {}x{}, got {}x{}",
            dim * anc,
            dim,
            v.rows(),
            v.cols()
        )));
    }
    let gram_defect = v.dagger().mul(v).max_abs_diff(&ComplexMatrix::identity(dim));
    if gram_defect > ISOMETRY_TOL {
        return Err(Error::NotIsometric {
            defect: gram_defect,
            tol: ISOMETRY_TOL,
        });
    }
    let free = build_shift(d, params.stim_freq()).kron(&build_shift(d, params.osc_freq()));
    let mut operators = Vec::with_capacity(anc);
    for a in 0..anc {
        let slice = ComplexMatrix::from_fn(dim, dim, |r, c| v.get(r * anc + a, c));
        operators.push(free.mul(&slice));
    }
    let adjoints = operators.iter().map(ComplexMatrix::dagger).collect();
    Ok(KrausFamily {
        d,
        operators,
        adjoints,
    })
}

/// Builds the full Kraus family for the given parameters.
pub fn build_kraus(params: &ChannelParams) -> Result<KrausFamily> {
    kraus_from_isometry(&build_vk_isometry(params), params)
}

/// Applies the channel once: rho' = sum_a K_a rho K_a†.
pub fn step_channel(rho: &DensityMatrix, kraus: &KrausFamily) -> Result<DensityMatrix> {
    let d = kraus.d;
    if rho.factor_dims() != [d, d] {
        return Err(Error::FactorMismatch(format!(
            "state factors {:?} do not match channel dimension [{d}, {d}]",
            rho.factor_dims()
        )));
    }
    let dim = d * d;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (k, kd) in kraus.operators.iter().zip(&kraus.adjoints) {
        out.add_assign(&k.mul(rho.matrix()).mul(kd));
    }
    DensityMatrix::new(out, vec![d, d])
}

/// Raw linear expectation values (Tr rho theta-hat, Tr rho phi-hat, and
/// their difference). These are linear means over basis labels, not
/// circular means.
pub fn expectations(rho: &DensityMatrix, ops: &PhaseOperators) -> (f64, f64, f64) {
    let dim = rho.dim();
    debug_assert_eq!(ops.theta_op.rows(), dim);
    let mut theta = 0.0;
    let mut phi = 0.0;
    for i in 0..dim {
        let population = rho.matrix().get(i, i).re;
        theta += population * ops.theta_op.get(i, i).re;
        phi += population * ops.phi_op.get(i, i).re;
    }
    (theta, phi, theta - phi)
}

/// The classical basis state |theta, phi><theta, phi| on the joint space.
pub fn embed_classical(theta: usize, phi: usize, d: usize) -> Result<DensityMatrix> {
    if theta >= d || phi >= d {
        return Err(Error::IndexOutOfRange(format!(
            "basis state ({theta}, {phi}) outside [0, {d})^2"
        )));
    }
    let dim = d * d;
    let m = ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c && r == theta * d + phi {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    DensityMatrix::new(m, vec![d, d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{run_classical, ClassicalPair};
    use crate::state::{partial_trace_last, PureState};

    fn params(d: usize, stim: usize, osc: usize, k: usize) -> ChannelParams {
        ChannelParams::new(d, stim, osc, k).unwrap()
    }

    #[test]
    fn phase_ops_read_basis_labels() {
        let ops = build_phase_ops(2);
        let diag_theta: Vec<f64> = (0..4).map(|i| ops.theta_op.get(i, i).re).collect();
        let diag_phi: Vec<f64> = (0..4).map(|i| ops.phi_op.get(i, i).re).collect();
        assert_eq!(diag_theta, vec![0.0, 0.0, 1.0, 1.0]);
        assert_eq!(diag_phi, vec![0.0, 1.0, 0.0, 1.0]);
        let ops3 = build_phase_ops(3);
        assert!((ops3.theta_op.trace().re - 9.0).abs() < 1e-12);
    }

    #[test]
    fn shift_composition_law() {
        for d in 2..=8usize {
            assert_eq!(build_shift(d, 0), ComplexMatrix::identity(d));
            for a in 0..d {
                for b in 0..d {
                    let lhs = build_shift(d, a).mul(&build_shift(d, b));
                    let rhs = build_shift(d, (a + b) % d);
                    assert!(lhs.max_abs_diff(&rhs) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn isometry_branch_targets() {
        let p = params(8, 2, 1, 1);
        let v = build_vk_isometry(&p);
        let anc = 9;
        // delta = 0: reset label, oscillator untouched.
        assert_eq!(v.get(0, 0).re, 1.0);
        // delta outside the range: untouched, reset label.
        assert_eq!(v.get((5) * anc, 5).re, 1.0);
        // delta = 1 inside the range: snap to (3, 3), record label 1.
        let col = 3 * 8 + 2;
        let row = (3 * 8 + 3) * anc + 2;
        assert_eq!(v.get(row, col).re, 1.0);
        // Columns orthonormal.
        let gram = v.dagger().mul(&v);
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(64)) < 1e-15);
    }

    #[test]
    fn zero_response_uses_only_reset_label() {
        let p = params(6, 2, 1, 0);
        let family = build_kraus(&p).unwrap();
        assert_eq!(family.operators().len(), 7);
        for (a, op) in family.operators().iter().enumerate() {
            if a == 0 {
                assert!(op.max_abs() > 0.5);
            } else {
                assert_eq!(op.max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn completeness_at_small_sizes() {
        for (d, stim, osc, k) in [(4, 2, 1, 1), (5, 3, 1, 2), (6, 1, 5, 2), (8, 2, 1, 3)] {
            let family = build_kraus(&params(d, stim, osc, k)).unwrap();
            assert!(family.completeness_defect() < 1e-12);
        }
    }

    #[test]
    fn kraus_rejects_non_isometry() {
        let p = params(4, 1, 0, 1);
        let mut v = build_vk_isometry(&p);
        v.set(0, 1, Complex64::new(0.3, 0.0));
        assert!(matches!(
            kraus_from_isometry(&v, &p),
            Err(Error::NotIsometric { .. })
        ));
    }

    #[test]
    fn basis_states_follow_classical_map() {
        let p = params(8, 2, 1, 1);
        let family = build_kraus(&p).unwrap();
        let ops = build_phase_ops(8);
        let mut rho = embed_classical(0, 4, 8).unwrap();
        let classical = run_classical(ClassicalPair::new(0, 4, 8), &p, 10);
        for state in classical.states().iter().skip(1) {
            rho = step_channel(&rho, &family).unwrap();
            let (theta, phi, _) = expectations(&rho, &ops);
            assert!((theta - state.theta as f64).abs() < 1e-12);
            assert!((phi - state.phi as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_examples() {
        let ops = build_phase_ops(8);
        let basis = embed_classical(2, 5, 8).unwrap();
        let (theta, phi, delta) = expectations(&basis, &ops);
        assert_eq!((theta, phi, delta), (2.0, 5.0, -3.0));

        let uniform = PureState::uniform(8)
            .unwrap()
            .kron(&PureState::uniform(8).unwrap())
            .density(vec![8, 8])
            .unwrap();
        let (theta, phi, delta) = expectations(&uniform, &ops);
        assert!((theta - 3.5).abs() < 1e-12);
        assert!((phi - 3.5).abs() < 1e-12);
        assert!(delta.abs() < 1e-12);
    }

    #[test]
    fn kraus_route_matches_explicit_ancilla_route() {
        let p = params(4, 2, 1, 1);
        let d = 4;
        let family = build_kraus(&p).unwrap();
        let v = build_vk_isometry(&p);
        let free = build_shift(d, 2).kron(&build_shift(d, 1));
        let lifted = free.kron(&ComplexMatrix::identity(d + 1)).mul(&v);

        let psi = PureState::uniform(d)
            .unwrap()
            .kron(&PureState::normalized(
                (0..d)
                    .map(|j| Complex64::new(1.0 + j as f64, 0.5 - j as f64))
                    .collect(),
            ).unwrap());
        let rho = psi.density(vec![d, d]).unwrap();

        let via_kraus = step_channel(&rho, &family).unwrap();
        let big = lifted.mul(rho.matrix()).mul(&lifted.dagger());
        let big_rho = DensityMatrix::new(big, vec![d, d, d + 1]).unwrap();
        let via_trace = partial_trace_last(&big_rho).unwrap();
        assert!(via_kraus.matrix().max_abs_diff(via_trace.matrix()) < 1e-12);
    }

    #[test]
    fn classical_embedding_rejects_out_of_range() {
        assert!(embed_classical(4, 0, 4).is_err());
        assert!(embed_classical(0, 9, 8).is_err());
    }
}
