use num_complex::Complex64;
use phaselock_core::qubit::{
    cross_validate_qubit, run_qubit, QubitParams, QubitState, QubitTrajectory, ScheduleWindow,
};

fn divisors(d: usize) -> Vec<usize> {
    (1..=d).filter(|&k| d.is_multiple_of(k)).collect()
}

fn block_deviation(p: &[f64], start: usize, period: usize) -> f64 {
    (0..period)
        .map(|i| (p[start + i] - p[start + period + i]).abs())
        .fold(0.0, f64::max)
}

#[test]
fn closed_form_matches_explicit_evolution_on_divisor_grid() {
    let mut cases = 0;
    for d in [4usize, 6, 8, 10] {
        for &stim in &divisors(d) {
            for &osc in &divisors(d) {
                for k in 0..d.div_ceil(4) {
                    let Ok(params) = QubitParams::new(d, stim, osc, k) else {
                        continue;
                    };
                    let dev = cross_validate_qubit(&params, 8 * d as u64).unwrap();
                    assert!(dev <= 1e-10, "deviation {dev:.3e} at d={d} stim={stim} osc={osc} k={k}");
                    cases += 1;
                }
            }
        }
    }
    for (d, stim, osc, k) in [(12, 3, 2, 2), (12, 1, 6, 2), (12, 12, 4, 1)] {
        let params = QubitParams::new(d, stim, osc, k).unwrap();
        let dev = cross_validate_qubit(&params, 8 * d as u64).unwrap();
        assert!(dev <= 1e-10, "deviation {dev:.3e} at d={d}");
        cases += 1;
    }
    assert!(cases > 40, "grid unexpectedly small: {cases}");
}

#[test]
fn closed_form_matches_explicit_evolution_with_schedule() {
    let schedule = vec![
        ScheduleWindow { start: 5, end: 20, on: false },
        ScheduleWindow { start: 40, end: 48, on: false },
    ];
    let params = QubitParams::with_schedule(8, 1, 2, 1, schedule).unwrap();
    let dev = cross_validate_qubit(&params, 64).unwrap();
    assert!(dev <= 1e-10, "deviation {dev:.3e}");
}

#[test]
fn sweeping_stimulus_locks_population_to_stimulus_period() {
    // Unit stimulus frequency sweeps the window across the axis, so the
    // asymptotic orbit repeats with the stimulus period d. Convergence is
    // geometric at roughly a factor 7 per period, which is why a long run
    // is needed before adjacent periods agree to strict tolerance.
    let params = QubitParams::new(40, 1, 2, 2).unwrap();
    let traj = run_qubit(QubitState::ground(), &params, 800);
    let p = &traj.p;

    let settled = block_deviation(p, 800 - 80, 40);
    assert!(settled < 1e-12, "asymptotic deviation {settled:.3e}");
    for q in [1usize, 2, 4, 5, 8, 10, 20] {
        let dev = (0..40 - q)
            .map(|i| (p[760 + i] - p[760 + q + i]).abs())
            .fold(0.0, f64::max);
        assert!(dev > 1e-2, "sub-period {q} not rejected: {dev:.3e}");
    }

    // At 200 steps the orbit is still converging: adjacent periods differ
    // at the 1e-3 scale, far from any strict entrywise agreement.
    let early = block_deviation(p, 200 - 80, 40);
    assert!(early > 1e-6 && early < 2e-3, "unexpected early deviation {early:.3e}");
}

#[test]
fn axis_only_hits_depolarize_toward_the_center() {
    // Stimulus frequency 5 visits only multiples of 5, so the interaction
    // fires exactly on the two axis points. Each firing erases coherence
    // and the state decays to the maximally mixed point.
    let params = QubitParams::new(40, 5, 2, 3).unwrap();
    let traj = run_qubit(QubitState::ground(), &params, 2000);

    let period = 40 / 5;
    let purities: Vec<f64> = traj.purity.iter().copied().step_by(period).collect();
    for w in purities.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "purity increased across a period: {w:?}");
    }
    let final_purity = *traj.purity.last().unwrap();
    let final_p = *traj.p.last().unwrap();
    let final_c = *traj.coherence_abs.last().unwrap();
    assert!((final_purity - 0.5).abs() < 1e-3, "purity {final_purity}");
    assert!((final_p - 0.5).abs() < 1e-3, "population {final_p}");
    assert!(final_c < 1e-3, "coherence {final_c}");

    for (t, (&p, &c)) in traj.p.iter().zip(&traj.coherence_abs).enumerate() {
        assert!((-1e-9..=1.0 + 1e-9).contains(&p), "invalid p at t={t}");
        assert!(c * c <= p * (1.0 - p) + 1e-9, "coherence bound violated at t={t}");
    }
}

#[test]
fn gating_the_interaction_switches_the_orbit_period() {
    // On-windows entrain to the stimulus visit period d / stim while the
    // off-window runs free with the bare oscillator period d / osc.
    let schedule = vec![ScheduleWindow { start: 41, end: 81, on: false }];
    let params = QubitParams::with_schedule(40, 5, 2, 5, schedule).unwrap();
    let traj = run_qubit(QubitState::ground(), &params, 120);
    let p = &traj.p;

    assert!(block_deviation(p, 25, 8) < 1e-2, "driven period 8 missing before gate");
    assert!(block_deviation(p, 41, 20) < 1e-8, "free period 20 missing in gate");
    assert!(block_deviation(p, 105, 8) < 1e-2, "driven period 8 missing after gate");

    for q in [1usize, 2, 4, 5, 10] {
        let dev = (0..20)
            .map(|i| (p[41 + i] - p[41 + q + i]).abs())
            .fold(0.0, f64::max);
        assert!(dev > 1e-2, "free sub-period {q} not rejected: {dev:.3e}");
    }
}

#[test]
fn free_evolution_is_exactly_periodic_and_unitary() {
    let schedule = vec![ScheduleWindow { start: 0, end: u64::MAX, on: false }];
    let params = QubitParams::with_schedule(40, 5, 2, 3, schedule).unwrap();
    let sigma0 = QubitState::new(0.8, Complex64::new(0.2, 0.1)).unwrap();
    let traj: QubitTrajectory = run_qubit(sigma0, &params, 100);

    // Each step rotates by osc * pi / d, and a rotation by pi maps sigma
    // to itself, so the orbit period is d / osc.
    let sigma_period = 40 / 2;
    for t in 0..traj.len() - sigma_period {
        assert!((traj.p[t] - traj.p[t + sigma_period]).abs() < 1e-12);
    }
    for &u in &traj.purity {
        assert!((u - sigma0.purity()).abs() < 1e-12, "purity drifted to {u}");
    }
}
