//! Named ready-to-run scenarios, stored as ordinary config documents so the
//! parser is the single source of truth for defaults and validation.

use crate::config::{parse_config, ScenarioConfig};
use anyhow::{bail, Result};

pub struct Builtin {
    pub name: &'static str,
    pub summary: &'static str,
    pub config: &'static str,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "classical-lock-demo",
        summary: "in-range detuning locks the phase difference in 4 steps",
        config: "\
model = \"classical\"
d = 8
Omega = 2
omega = 1
K = 1
theta0 = 0
phi0 = 4
steps = 24
",
    },
    Builtin {
        name: "classical-drift-demo",
        summary: "out-of-range detuning cycles forever without a fixed point",
        config: "\
model = \"classical\"
d = 8
Omega = 3
omega = 0
K = 1
theta0 = 0
phi0 = 5
steps = 32
",
    },
    Builtin {
        name: "q2c-demo",
        summary: "definite stimulus collapses a random oscillator state onto the classical orbit",
        config: "\
model = \"qudit-channel\"
d = 8
Omega = 2
omega = 1
K = 1
stimulus = 0
oscillator = \"random\"
seed = 7
steps = 16
",
    },
    Builtin {
        name: "entangle-demo",
        summary: "uniform superpositions lock into a maximally entangled state",
        config: "\
model = \"qudit-channel\"
d = 4
Omega = 2
omega = 1
K = 1
stimulus = \"uniform\"
oscillator = \"uniform\"
steps = 16
",
    },
    Builtin {
        name: "fig1-left",
        summary: "unit-frequency drive entrains the qubit to period 40",
        config: "\
model = \"qubit\"
d = 40
Omega = 1
omega = 2
K = 2
steps = 200
",
    },
    Builtin {
        name: "fig1-middle",
        summary: "gating the interaction off lets the qubit run at its own period 20",
        config: "\
model = \"qubit\"
d = 40
Omega = 5
omega = 2
K = 5
off_windows = [[41, 81]]
steps = 120
",
    },
    Builtin {
        name: "fig1-right",
        summary: "axis-only window hits depolarize the qubit to the mixed state",
        config: "\
model = \"qubit\"
d = 40
Omega = 5
omega = 2
K = 3
steps = 2000
",
    },
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|b| b.name).collect()
}

pub fn builtin_config(name: &str) -> Result<ScenarioConfig> {
    for b in BUILTINS {
        if b.name == name {
            return parse_config(b.config);
        }
    }
    bail!("unknown builtin {name:?}; available: {}", builtin_names().join(", "))
}
