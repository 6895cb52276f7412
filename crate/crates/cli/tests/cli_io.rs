use phaselock_cli::builtins::{builtin_config, builtin_names};
use phaselock_cli::config::{parse_config, ModelSpec, StateSpec};
use phaselock_cli::scenario::run_scenario;
use phaselock_cli::svg::emit_svg_lineplot;
use phaselock_cli::trajectory::Trajectory;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_phaselock"))
}

#[test]
fn minimal_classical_config_parses() {
    let cfg = parse_config(
        "model = \"classical\"\nd = 8\nOmega = 2\nomega = 1\nK = 1\ntheta0 = 0\nphi0 = 4\nsteps = 10\n",
    )
    .unwrap();
    assert_eq!(cfg.steps, 10);
    let ModelSpec::Classical { params, theta0, phi0 } = &cfg.model else {
        panic!("wrong model variant");
    };
    assert_eq!((params.d(), *theta0, *phi0), (8, 0, 4));
}

#[test]
fn unknown_keys_are_rejected_by_name() {
    let err = parse_config(
        "model = \"classical\"\nd = 8\nOmega = 2\nomega = 1\nK = 1\nsteps = 5\nstimulis = 3\n",
    )
    .unwrap_err();
    assert!(err.to_string().contains("unknown key `stimulis`"), "{err}");
}

#[test]
fn oversized_response_strength_names_the_key() {
    let err =
        parse_config("model = \"classical\"\nd = 8\nOmega = 2\nomega = 1\nK = 4\nsteps = 5\n")
            .unwrap_err();
    assert!(err.to_string().contains("K = 4"), "{err}");
}

#[test]
fn odd_qubit_dimension_is_rejected() {
    let err = parse_config("model = \"qubit\"\nd = 9\nOmega = 3\nomega = 3\nK = 1\nsteps = 5\n")
        .unwrap_err();
    assert!(err.to_string().contains("must be even"), "{err}");
}

#[test]
fn amplitude_lists_are_normalized() {
    let cfg = parse_config(
        "model = \"qudit-channel\"\nd = 4\nOmega = 2\nomega = 1\nK = 1\nsteps = 2\noscillator = [2.0, 0, 0, 0]\n",
    )
    .unwrap();
    let ModelSpec::QuditChannel { oscillator, .. } = &cfg.model else {
        panic!("wrong model variant");
    };
    let StateSpec::Amplitudes(amps) = oscillator else {
        panic!("expected amplitude list");
    };
    assert!((amps[0].re - 1.0).abs() < 1e-12);

    let err = parse_config(
        "model = \"qudit-channel\"\nd = 4\nOmega = 2\nomega = 1\nK = 1\nsteps = 2\noscillator = [0, 0, 0, 0]\n",
    )
    .unwrap_err();
    assert!(err.to_string().contains("zero norm"), "{err}");
}

#[test]
fn complex_amplitude_pairs_parse() {
    let cfg = parse_config(
        "model = \"qudit-channel\"\nd = 2\nOmega = 1\nomega = 0\nK = 0\nsteps = 1\nstimulus = [[0.6, 0.0], [0.0, 0.8]]\n",
    )
    .unwrap();
    let ModelSpec::QuditChannel { stimulus, .. } = &cfg.model else {
        panic!("wrong model variant");
    };
    let StateSpec::Amplitudes(amps) = stimulus else {
        panic!("expected amplitude list");
    };
    assert!((amps[0].re - 0.6).abs() < 1e-12 && (amps[1].im - 0.8).abs() < 1e-12);
}

#[test]
fn outputs_filter_selects_columns() {
    let mut cfg = builtin_config("fig1-right").unwrap();
    cfg.outputs = Some(vec!["purity".to_string()]);
    cfg.steps = 5;
    let traj = run_scenario(&cfg).unwrap();
    assert_eq!(traj.names(), vec!["t", "purity"]);
    assert_eq!(traj.len(), 6);

    cfg.outputs = Some(vec!["no_such_column".to_string()]);
    let err = run_scenario(&cfg).unwrap_err();
    assert!(err.to_string().contains("no_such_column"), "{err}");
}

#[test]
fn oversized_channel_dimension_reports_the_cap() {
    let err = run_scenario(
        &parse_config("model = \"qudit-channel\"\nd = 33\nOmega = 1\nomega = 0\nK = 2\nsteps = 1\n")
            .unwrap(),
    )
    .unwrap_err();
    assert!(err.to_string().contains("cap 32"), "{err}");
}

#[test]
fn csv_empty_trajectory_is_header_only() {
    let traj = Trajectory::new(&["p", "purity"]);
    assert_eq!(traj.to_csv_bytes(), b"t,p,purity\n");
}

#[test]
fn csv_round_trips_values() {
    let mut traj = Trajectory::new(&["x"]);
    let values = [std::f64::consts::PI, 1.0 / 3.0, -2.5e-13, 0.0, 123456.789];
    for v in values {
        traj.push_row(&[v]);
    }
    let text = String::from_utf8(traj.to_csv_bytes()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x"));
    for (row, v) in lines.zip(values) {
        let parsed: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        let scale = v.abs().max(1e-300);
        assert!((parsed - v).abs() / scale < 1e-12, "{parsed} vs {v}");
    }
}

#[test]
fn svg_handles_single_point_and_constant_series() {
    let mut single = Trajectory::new(&["p"]);
    single.push_row(&[0.5]);
    let mut buf = Vec::new();
    emit_svg_lineplot(&single, &["p"], &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.contains("<circle") && text.contains("</svg>"));
    assert!(!text.contains("NaN") && !text.contains("inf"));

    let mut constant = Trajectory::new(&["p"]);
    for _ in 0..5 {
        constant.push_row(&[1.0]);
    }
    let mut buf = Vec::new();
    emit_svg_lineplot(&constant, &["p"], &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.contains("<polyline"));
    assert!(!text.contains("NaN"));

    let err = emit_svg_lineplot(&constant, &["ghost"], &mut Vec::new()).unwrap_err();
    assert!(err.to_string().contains("ghost"), "{err}");
}

#[test]
fn builtin_names_match_the_published_list() {
    assert_eq!(
        builtin_names(),
        vec![
            "classical-lock-demo",
            "classical-drift-demo",
            "q2c-demo",
            "entangle-demo",
            "fig1-left",
            "fig1-middle",
            "fig1-right",
        ]
    );
    for name in builtin_names() {
        builtin_config(name).unwrap();
    }
}

#[test]
fn binary_runs_builtin_with_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("lock.csv");
    let status = bin()
        .args(["builtin", "classical-lock-demo", "--out"])
        .arg(&csv)
        .arg("--svg")
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("t,theta,phi,delta\n"));
    assert_eq!(text.lines().count(), 26);
    let svg = std::fs::read_to_string(dir.path().join("lock.svg")).unwrap();
    assert!(svg.contains("<polyline"));
}

#[test]
fn binary_reports_validation_failures() {
    let out = bin().args(["builtin", "no-such-demo"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown builtin"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "model = \"classical\"\nd = 8\nOmega = 2\nomega = 1\nK = 4\nsteps = 5\n")
        .unwrap();
    let out = bin().arg("run").arg(&bad).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("K = 4"));
}

#[test]
fn binary_overrides_steps() {
    let out = bin()
        .args(["builtin", "fig1-right", "--steps", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn binary_batch_processes_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("a.toml"),
        "model = \"classical\"\nd = 6\nOmega = 2\nomega = 1\nK = 1\nsteps = 8\n",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("b.toml"),
        "model = \"qubit\"\nd = 8\nOmega = 2\nomega = 2\nK = 1\nsteps = 12\n",
    )
    .unwrap();
    let status = bin()
        .arg("batch")
        .arg(dir.path())
        .arg("--out")
        .arg(out_dir.path())
        .arg("--svg")
        .status()
        .unwrap();
    assert!(status.success());
    for name in ["a.csv", "a.svg", "b.csv", "b.svg"] {
        assert!(out_dir.path().join(name).exists(), "{name} missing");
    }
}

#[test]
fn list_builtins_prints_every_name() {
    let out = bin().arg("list-builtins").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in builtin_names() {
        assert!(text.contains(name), "{name} missing from listing");
    }
}
