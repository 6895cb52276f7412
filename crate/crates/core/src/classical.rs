//! The discrete synchronization map on a d-state phase space.
//!
//! A stimulus phase advances by Omega each step; an oscillator phase
//! advances by omega plus a response g_k that snaps the phase difference to
//! its fixed point when the difference lies inside the entrainment range.
//! Whether the detuning lies inside that range decides between locking and
//! perpetual drift.

use crate::error::{Error, Result};

/// Model parameters for the d-level pair: dimension, stimulus frequency,
/// oscillator frequency, response strength.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelParams {
    d: usize,
    stim_freq: usize,
    osc_freq: usize,
    k: usize,
}

impl ModelParams {
    pub fn new(d: usize, stim_freq: usize, osc_freq: usize, k: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("d must be positive".into()));
        }
        if stim_freq >= d {
            return Err(Error::InvalidParams(format!(
                "stimulus frequency Omega = {stim_freq} must lie in [0, d = {d})"
            )));
        }
        if osc_freq >= d {
            return Err(Error::InvalidParams(format!(
                "oscillator frequency omega = {osc_freq} must lie in [0, d = {d})"
            )));
        }
        if 2 * k >= d {
            return Err(Error::InvalidParams(format!(
                "response strength K = {k} must satisfy 2K < d (d = {d})"
            )));
        }
        Ok(Self { d, stim_freq, osc_freq, k })
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

    /// Frequency detuning (Omega - omega) mod d.
    pub fn detuning(&self) -> usize {
        (self.stim_freq + self.d - self.osc_freq) % self.d
    }

    /// Whether the detuning lies in the entrainment range, i.e. whether the
    /// oscillator can lock at all.
    pub fn can_lock(&self) -> bool {
        // Parameters are validated at construction, so membership cannot fail.
        circular_membership(self.detuning(), self.k, self.d).expect("validated params")
    }
}

/// True iff x lies within circular distance K of zero, i.e. in
/// {0..K} union {d-K..d-1}.
pub fn circular_membership(x: usize, k: usize, d: usize) -> Result<bool> {
    if 2 * k >= d {
        return Err(Error::InvalidParams(format!(
            "response strength K = {k} must satisfy 2K < d (d = {d}), otherwise the entrainment range is ambiguous"
        )));
    }
    if x >= d {
        return Err(Error::IndexOutOfRange(format!("x = {x} outside [0, d = {d})")));
    }
    Ok(x <= k || x >= d - k)
}

/// Phase response: delta when delta is in the entrainment range, else 0.
pub fn g_k(delta: usize, params: &ModelParams) -> usize {
    let inside =
        circular_membership(delta, params.k, params.d).expect("validated params and reduced delta");
    if inside {
        delta
    } else {
        0
    }
}

/// The joint phase state (theta, phi), both reduced mod d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalPair {
    pub theta: usize,
    pub phi: usize,
}

impl ClassicalPair {
    pub fn new(theta: usize, phi: usize, d: usize) -> Self {
        Self {
            theta: theta % d,
            phi: phi % d,
        }
    }

    /// Phase difference (theta - phi) mod d.
    pub fn delta(&self, d: usize) -> usize {
        (self.theta + d - self.phi) % d
    }
}

/// One step of the coupled map.
pub fn step_classical(state: ClassicalPair, params: &ModelParams) -> ClassicalPair {
    let d = params.d;
    let delta = state.delta(d);
    let theta = (state.theta + params.stim_freq) % d;
    let phi = (state.phi + params.osc_freq + g_k(delta, params)) % d;
    ClassicalPair { theta, phi }
}

/// A recorded orbit of the map, including the initial state.
#[derive(Clone, Debug)]
pub struct ClassicalTrajectory {
    params: ModelParams,
    states: Vec<ClassicalPair>,
}

impl ClassicalTrajectory {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn states(&self) -> &[ClassicalPair] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn deltas(&self) -> Vec<usize> {
        let d = self.params.d;
        self.states.iter().map(|s| s.delta(d)).collect()
    }
}

/// Iterates the map for `steps` steps; the trajectory has steps + 1 states.
pub fn run_classical(initial: ClassicalPair, params: &ModelParams, steps: usize) -> ClassicalTrajectory {
    let mut states = Vec::with_capacity(steps + 1);
    let mut current = ClassicalPair::new(initial.theta, initial.phi, params.d);
    states.push(current);
    for _ in 0..steps {
        current = step_classical(current, params);
        states.push(current);
    }
    ClassicalTrajectory {
        params: *params,
        states,
    }
}

/// Outcome of lock/drift analysis of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LockReport {
    pub locked: bool,
    /// First step index from which the phase difference stays constant.
    pub tau: Option<usize>,
    /// The constant phase difference after locking.
    pub delta_star: Option<usize>,
    /// Minimal period of the eventual phase-difference cycle when drifting.
    pub drift_period: Option<usize>,
}

/// Classifies a trajectory as locked or drifting.
///
/// The trajectory must contain at least d + 1 samples so that a lock, which
/// theory bounds at tau < d, would already be visible, and so that the
/// autonomous difference map (d states) must have revisited a value.
///
/// A single repetition `delta_{t+1} = delta_t` already certifies a lock for
/// this map: it forces g_k(delta_t) = detuning, which makes delta_t a fixed
/// point for all later steps. Drift cycles therefore contain no adjacent
/// repetitions, and because the difference map is deterministic on d states
/// its eventual cycle visits pairwise-distinct values, so the minimal period
/// equals the distance between the first revisit and the first visit.
pub fn detect_lock(trajectory: &ClassicalTrajectory) -> Result<LockReport> {
    let params = trajectory.params();
    let d = params.d;
    let needed = d + 1;
    let got = trajectory.len();
    if got < needed {
        return Err(Error::TrajectoryTooShort { needed, got });
    }
    let deltas = trajectory.deltas();
    let last = *deltas.last().expect("non-empty trajectory");

    if deltas[deltas.len() - 2] == last {
        let mut tau = deltas.len() - 1;
        while tau > 0 && deltas[tau - 1] == last {
            tau -= 1;
        }
        debug_assert_eq!(g_k(last, params), params.detuning());
        return Ok(LockReport {
            locked: true,
            tau: Some(tau),
            delta_star: Some(last),
            drift_period: None,
        });
    }

    let mut first_seen = vec![usize::MAX; d];
    for (idx, &value) in deltas.iter().enumerate() {
        if first_seen[value] != usize::MAX {
            return Ok(LockReport {
                locked: false,
                tau: None,
                delta_star: None,
                drift_period: Some(idx - first_seen[value]),
            });
        }
        first_seen[value] = idx;
    }
    unreachable!("a length >= d + 1 sequence over d values must repeat");
}

/// Reference iterator of the continuous circle map
/// alpha' = alpha + Gamma - (K / 2 pi) sin(2 pi alpha), reduced mod 1.
pub fn circle_map_step(alpha: f64, gamma: f64, k: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    (alpha + gamma - (k / two_pi) * (two_pi * alpha).sin()).rem_euclid(1.0)
}
