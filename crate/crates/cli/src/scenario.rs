//! Runs a validated config against the matching model and collects the
//! per-step observables into a `Trajectory`.

use anyhow::{bail, Result};
use num_complex::Complex64;
use phaselock_core::channel::{
    build_kraus, build_phase_ops, expectations, step_channel, ChannelParams, DENSE_SCALE_CAP,
};
use phaselock_core::classical::{run_classical, ClassicalPair, ModelParams};
use phaselock_core::entanglement::{negativity, phase_locked_projector, subspace_weight};
use phaselock_core::qubit::{run_qubit, QubitParams, QubitState};
use phaselock_core::state::PureState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::{ModelSpec, ScenarioConfig, StateSpec};
use crate::trajectory::Trajectory;

/// Above this dimension the per-step partial-transpose eigensolve dominates
/// the run, so entanglement columns are dropped.
pub const ENTANGLEMENT_DIM_CAP: usize = 16;

pub fn run_scenario(config: &ScenarioConfig) -> Result<Trajectory> {
    let traj = match &config.model {
        ModelSpec::Classical { params, theta0, phi0 } => {
            classical_trajectory(params, *theta0, *phi0, config.steps)
        }
        ModelSpec::QuditChannel { params, stimulus, oscillator, allow_large } => {
            channel_trajectory(params, stimulus, oscillator, *allow_large, config)?
        }
        ModelSpec::Qubit { params, initial } => qubit_trajectory(params, *initial, config.steps),
    };
    match &config.outputs {
        Some(columns) => traj.select(columns),
        None => Ok(traj),
    }
}

fn classical_trajectory(params: &ModelParams, theta0: usize, phi0: usize, steps: u64) -> Trajectory {
    let d = params.d();
    let run = run_classical(ClassicalPair::new(theta0, phi0, d), params, steps as usize);
    let mut traj = Trajectory::new(&["theta", "phi", "delta"]);
    for state in run.states() {
        traj.push_row(&[state.theta as f64, state.phi as f64, state.delta(d) as f64]);
    }
    traj
}

fn channel_trajectory(
    params: &ChannelParams,
    stimulus: &StateSpec,
    oscillator: &StateSpec,
    allow_large: bool,
    config: &ScenarioConfig,
) -> Result<Trajectory> {
    let d = params.d();
    if d > DENSE_SCALE_CAP {
        if allow_large {
            eprintln!(
                "warning: d = {d} exceeds the dense-evolution cap {DENSE_SCALE_CAP}; \
                 this run allocates {} complex entries per matrix",
                d * d * d * d
            );
        } else {
            bail!("d = {d} exceeds the dense-evolution cap {DENSE_SCALE_CAP}; set allow_large = true to override");
        }
    }

    // The stimulus factor draws from the seeded generator first, then the
    // oscillator, so "random" specs are reproducible given the seed.
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let stim = build_state(stimulus, d, &mut rng)?;
    let osc = build_state(oscillator, d, &mut rng)?;
    let mut rho = stim.kron(&osc).density(vec![d, d])?;

    let kraus = build_kraus(params)?;
    let ops = build_phase_ops(d);
    let with_entanglement = d <= ENTANGLEMENT_DIM_CAP;
    let projector = phase_locked_projector(d, params.detuning())?;

    let mut traj = if with_entanglement {
        Trajectory::new(&["theta", "phi", "delta", "purity", "negativity", "subspace_weight"])
    } else {
        Trajectory::new(&["theta", "phi", "delta", "purity"])
    };
    for t in 0..=config.steps {
        let (theta, phi, delta) = expectations(&rho, &ops);
        if with_entanglement {
            let neg = negativity(&rho)?;
            let weight = subspace_weight(&rho, &projector)?;
            traj.push_row(&[theta, phi, delta, rho.purity(), neg, weight]);
        } else {
            traj.push_row(&[theta, phi, delta, rho.purity()]);
        }
        if t < config.steps {
            rho = step_channel(&rho, &kraus)?;
        }
    }
    Ok(traj)
}

fn qubit_trajectory(params: &QubitParams, initial: QubitState, steps: u64) -> Trajectory {
    let run = run_qubit(initial, params, steps);
    let mut traj = Trajectory::new(&["p", "coherence_abs", "purity"]);
    for i in 0..run.len() {
        traj.push_row(&[run.p[i], run.coherence_abs[i], run.purity[i]]);
    }
    traj
}

fn build_state(spec: &StateSpec, d: usize, rng: &mut ChaCha8Rng) -> Result<PureState> {
    let state = match spec {
        StateSpec::Basis(i) => PureState::basis(d, *i)?,
        StateSpec::Uniform => PureState::uniform(d)?,
        StateSpec::Random => {
            let amps: Vec<Complex64> = (0..d)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            PureState::normalized(amps)?
        }
        StateSpec::Amplitudes(amps) => PureState::new(amps.clone())?,
    };
    Ok(state)
}
