//! A qubit oscillator driven by a classical d-level stimulus.
//!
//! The stimulus steps deterministically through |0>, |Omega>, |2 Omega>, ...
//! The qubit rotates about the Y axis by omega pi / d per step, except when
//! the stimulus phase falls within distance K of one of the qubit's two
//! poles; then an ancilla-mediated interaction projects the qubit onto the
//! chi ring states. The production path is the closed-form three-branch
//! update of (p, c); the explicit tensor construction survives as a test
//! oracle in [`cross_validate_qubit`].

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::PureState;
use num_complex::Complex64;

const COHERENCE_SLACK: f64 = 1e-9;
const ORACLE_DIM_CAP: usize = 12;

/// An interaction window [start, end) with the coupling on or off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScheduleWindow {
    pub start: u64,
    pub end: u64,
    pub on: bool,
}

/// Parameters of the driven-qubit model. The schedule lists windows where
/// the interaction deviates from the default-on state; steps not covered by
/// any window are interacting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitParams {
    d: usize,
    stim_freq: usize,
    osc_freq: usize,
    k: usize,
    schedule: Vec<ScheduleWindow>,
}

impl QubitParams {
    pub fn new(d: usize, stim_freq: usize, osc_freq: usize, k: usize) -> Result<Self> {
        Self::with_schedule(d, stim_freq, osc_freq, k, Vec::new())
    }

    pub fn with_schedule(
        d: usize,
        stim_freq: usize,
        osc_freq: usize,
        k: usize,
        schedule: Vec<ScheduleWindow>,
    ) -> Result<Self> {
        if d == 0 || !d.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("d = {d} must be even and positive")));
        }
        if stim_freq == 0 || !d.is_multiple_of(stim_freq) {
            return Err(Error::InvalidParams(format!(
                "stimulus frequency Omega = {stim_freq} must divide d = {d}"
            )));
        }
        if osc_freq == 0 || !d.is_multiple_of(osc_freq) {
            return Err(Error::InvalidParams(format!(
                "oscillator frequency omega = {osc_freq} must divide d = {d}"
            )));
        }
        if 4 * k >= d {
            return Err(Error::InvalidParams(format!(
                "response strength K = {k} must satisfy K < d/4 (d = {d}) so the two interaction windows stay disjoint"
            )));
        }
        for w in &schedule {
            if w.start >= w.end {
                return Err(Error::InvalidParams(format!(
                    "schedule window [{}, {}) is empty or reversed",
                    w.start, w.end
                )));
            }
        }
        Ok(Self {
            d,
            stim_freq,
            osc_freq,
            k,
            schedule,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn stim_freq(&self) -> usize {
        self.stim_freq
    }

    pub fn osc_freq(&self) -> usize {
        self.osc_freq
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn schedule(&self) -> &[ScheduleWindow] {
        &self.schedule
    }

    /// Whether the interaction is active at step t.
    pub fn interaction_on(&self, t: u64) -> bool {
        for w in &self.schedule {
            if w.start <= t && t < w.end {
                return w.on;
            }
        }
        true
    }

    /// Stimulus phase at step t.
    pub fn theta_at(&self, t: u64) -> usize {
        ((self.stim_freq as u64 * t) % self.d as u64) as usize
    }
}

/// Qubit state in the (p, c) parametrization of
/// sigma = p |0><0| + (1-p) |1><1| + c |0><1| + conj(c) |1><0|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState {
    pub p: f64,
    pub c: Complex64,
}

impl QubitState {
    pub fn new(p: f64, c: Complex64) -> Result<Self> {
        if !(p.is_finite() && c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidParams("non-finite qubit state".into()));
        }
        if !(-COHERENCE_SLACK..=1.0 + COHERENCE_SLACK).contains(&p) {
            return Err(Error::InvalidParams(format!("population p = {p} outside [0, 1]")));
        }
        if c.norm_sqr() > p * (1.0 - p) + COHERENCE_SLACK {
            return Err(Error::InvalidParams(format!(
                "|c|^2 = {:.3e} exceeds p(1-p) = {:.3e}",
                c.norm_sqr(),
                p * (1.0 - p)
            )));
        }
        Ok(Self { p, c })
    }

    /// The computational ground state |0><0|.
    pub fn ground() -> Self {
        Self {
            p: 1.0,
            c: Complex64::new(0.0, 0.0),
        }
    }

    pub fn sigma_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 0, Complex64::new(self.p, 0.0));
        m.set(1, 1, Complex64::new(1.0 - self.p, 0.0));
        m.set(0, 1, self.c);
        m.set(1, 0, self.c.conj());
        m
    }

    pub fn purity(&self) -> f64 {
        self.p * self.p + (1.0 - self.p) * (1.0 - self.p) + 2.0 * self.c.norm_sqr()
    }
}

/// The one-step free rotation: a real rotation by pi/d in the amplitude
/// parametrization, i.e. 2 pi / d on the Bloch sphere about Y.
pub fn rotation_r(d: usize) -> ComplexMatrix {
    let angle = std::f64::consts::PI / d as f64;
    let (sin, cos) = angle.sin_cos();
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 0, Complex64::new(cos, 0.0));
    m.set(0, 1, Complex64::new(-sin, 0.0));
    m.set(1, 0, Complex64::new(sin, 0.0));
    m.set(1, 1, Complex64::new(cos, 0.0));
    m
}

/// The ring state chi_k with amplitudes (cos k pi / d, sin k pi / d).
pub fn chi_state(k: usize, d: usize) -> Result<PureState> {
    if k >= d {
        return Err(Error::IndexOutOfRange(format!("k = {k} outside [0, d = {d})")));
    }
    let angle = k as f64 * std::f64::consts::PI / d as f64;
    PureState::new(vec![
        Complex64::new(angle.cos(), 0.0),
        Complex64::new(angle.sin(), 0.0),
    ])
}

fn circular_distance(a: usize, b: usize, d: usize) -> usize {
    let diff = (a + d - b) % d;
    diff.min(d - diff)
}

/// True iff the interaction fires: the stimulus phase theta lies within
/// circular distance K of the pole (d/2) * phi_bit.
pub fn wk_window(theta: usize, phi_bit: u8, k: usize, d: usize) -> bool {
    let pole = (d / 2) * usize::from(phi_bit);
    circular_distance(theta % d, pole, d) <= k
}

fn projector(k: usize, d: usize) -> ComplexMatrix {
    let chi = chi_state(k % d, d).expect("index reduced mod d");
    ComplexMatrix::outer(chi.amplitudes())
}

fn state_from_sigma(m: &ComplexMatrix) -> QubitState {
    QubitState {
        p: m.get(0, 0).re,
        c: m.get(0, 1),
    }
}

/// One step of the closed-form update at step index t.
pub fn step_qubit(state: QubitState, t: u64, params: &QubitParams) -> QubitState {
    let d = params.d;
    let theta = params.theta_at(t);
    let omega = params.osc_freq;
    let on = params.interaction_on(t);
    if on && wk_window(theta, 0, params.k, d) {
        let a = projector(theta + omega, d).scale(Complex64::new(state.p, 0.0));
        let b = projector(d / 2 + omega, d).scale(Complex64::new(1.0 - state.p, 0.0));
        state_from_sigma(&a.add(&b))
    } else if on && wk_window(theta, 1, params.k, d) {
        let a = projector(omega, d).scale(Complex64::new(state.p, 0.0));
        let b = projector(theta + omega, d).scale(Complex64::new(1.0 - state.p, 0.0));
        state_from_sigma(&a.add(&b))
    } else {
        let r = rotation_r(d);
        let mut rot = r.clone();
        for _ in 1..omega {
            rot = rot.mul(&r);
        }
        state_from_sigma(&rot.mul(&state.sigma_matrix()).mul(&rot.dagger()))
    }
}

/// Per-step record of the qubit orbit, including the initial state.
#[derive(Clone, Debug)]
pub struct QubitTrajectory {
    pub p: Vec<f64>,
    pub coherence_abs: Vec<f64>,
    pub purity: Vec<f64>,
}

impl QubitTrajectory {
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

/// Runs the closed-form evolution for `steps` steps.
pub fn run_qubit(sigma0: QubitState, params: &QubitParams, steps: u64) -> QubitTrajectory {
    let n = steps as usize + 1;
    let mut traj = QubitTrajectory {
        p: Vec::with_capacity(n),
        coherence_abs: Vec::with_capacity(n),
        purity: Vec::with_capacity(n),
    };
    let mut state = sigma0;
    traj.p.push(state.p);
    traj.coherence_abs.push(state.c.norm());
    traj.purity.push(state.purity());
    for t in 0..steps {
        state = step_qubit(state, t, params);
        traj.p.push(state.p);
        traj.coherence_abs.push(state.c.norm());
        traj.purity.push(state.purity());
    }
    traj
}

/// Compares the closed-form update against the explicit
/// stimulus (x) qubit evolution with the ancilla handled as two Kraus
/// operators, over `steps` steps and two initial oscillator states.
/// Returns the largest entrywise deviation of sigma_t across all steps.
pub fn cross_validate_qubit(params: &QubitParams, steps: u64) -> Result<f64> {
    let d = params.d;
    if d > ORACLE_DIM_CAP {
        return Err(Error::DimensionTooLarge {
            d,
            cap: ORACLE_DIM_CAP,
        });
    }

    let free = {
        let shift = ComplexMatrix::from_fn(d, d, |i, j| {
            if i == (j + params.stim_freq) % d {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let r = rotation_r(d);
        let mut rot = ComplexMatrix::identity(2);
        for _ in 0..params.osc_freq {
            rot = rot.mul(&r);
        }
        shift.kron(&rot)
    };

    // Ancilla-resolved interaction: the a=0 operator keeps non-firing basis
    // states, the a=1 operator rewrites firing ones to the chi state.
    let mut keep = ComplexMatrix::zeros(2 * d, 2 * d);
    let mut fire = ComplexMatrix::zeros(2 * d, 2 * d);
    for theta in 0..d {
        for bit in 0..2u8 {
            let col = theta * 2 + usize::from(bit);
            if wk_window(theta, bit, params.k, d) {
                let chi = chi_state(theta, d)?;
                fire.set(theta * 2, col, chi.amplitudes()[0]);
                fire.set(theta * 2 + 1, col, chi.amplitudes()[1]);
            } else {
                keep.set(col, col, Complex64::new(1.0, 0.0));
            }
        }
    }
    let k0 = free.mul(&keep);
    let k1 = free.mul(&fire);
    let k0d = k0.dagger();
    let k1d = k1.dagger();
    let freed = free.dagger();

    let initial_states = [
        QubitState::ground(),
        QubitState::new(0.7, Complex64::new(0.1, -0.15))?,
    ];
    let mut worst: f64 = 0.0;
    for sigma0 in initial_states {
        let mut rho = ComplexMatrix::zeros(2 * d, 2 * d);
        let sm = sigma0.sigma_matrix();
        for a in 0..2 {
            for b in 0..2 {
                rho.set(a, b, sm.get(a, b));
            }
        }
        let mut closed = sigma0;
        for t in 0..steps {
            rho = if params.interaction_on(t) {
                k0.mul(&rho).mul(&k0d).add(&k1.mul(&rho).mul(&k1d))
            } else {
                free.mul(&rho).mul(&freed)
            };
            closed = step_qubit(closed, t, params);

            let mut sigma = ComplexMatrix::zeros(2, 2);
            for theta in 0..d {
                for a in 0..2 {
                    for b in 0..2 {
                        let v = sigma.get(a, b) + rho.get(theta * 2 + a, theta * 2 + b);
                        sigma.set(a, b, v);
                    }
                }
            }
            worst = worst.max(sigma.max_abs_diff(&closed.sigma_matrix()));
        }
    }
    Ok(worst)
}
