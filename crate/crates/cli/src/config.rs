//! Strict TOML scenario configs. Every key is checked against a per-model
//! allowlist so typos fail loudly instead of silently running defaults.

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use phaselock_core::channel::ChannelParams;
use phaselock_core::classical::ModelParams;
use phaselock_core::qubit::{QubitParams, QubitState, ScheduleWindow};
use toml::{Table, Value};

const NORM_TOL: f64 = 1e-8;

/// How one qudit factor starts out.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Basis(usize),
    Uniform,
    /// Standard complex Gaussian amplitudes from the scenario seed,
    /// normalized.
    Random,
    /// Explicit amplitudes, already normalized by the parser.
    Amplitudes(Vec<Complex64>),
}

#[derive(Clone, Debug)]
pub enum ModelSpec {
    Classical {
        params: ModelParams,
        theta0: usize,
        phi0: usize,
    },
    QuditChannel {
        params: ChannelParams,
        stimulus: StateSpec,
        oscillator: StateSpec,
        allow_large: bool,
    },
    Qubit {
        params: QubitParams,
        initial: QubitState,
    },
}

#[derive(Clone, Debug)]
pub struct ScenarioConfig {
    pub model: ModelSpec,
    pub steps: u64,
    pub seed: u64,
    /// Column subset to keep in the output; `None` keeps everything.
    pub outputs: Option<Vec<String>>,
}

const COMMON_KEYS: &[&str] = &["model", "steps", "seed", "outputs"];
const CLASSICAL_KEYS: &[&str] = &["d", "Omega", "omega", "K", "theta0", "phi0"];
const CHANNEL_KEYS: &[&str] = &["d", "Omega", "omega", "K", "stimulus", "oscillator", "allow_large"];
const QUBIT_KEYS: &[&str] = &["d", "Omega", "omega", "K", "p0", "c0", "off_windows"];

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let table: Table = text.parse().context("config is not valid TOML")?;
    let model_name = req_str(&table, "model")?;
    let allowed: Vec<&str> = match model_name.as_str() {
        "classical" => [COMMON_KEYS, CLASSICAL_KEYS].concat(),
        "qudit-channel" => [COMMON_KEYS, CHANNEL_KEYS].concat(),
        "qubit" => [COMMON_KEYS, QUBIT_KEYS].concat(),
        other => bail!("key `model` has unknown value {other:?}; expected classical, qudit-channel, or qubit"),
    };
    for key in table.keys() {
        if !allowed.contains(&key.as_str()) {
            bail!("unknown key `{key}` for model {model_name}");
        }
    }

    let d = req_usize(&table, "d")?;
    let stim = req_usize(&table, "Omega")?;
    let osc = req_usize(&table, "omega")?;
    let k = req_usize(&table, "K")?;
    let steps = req_u64(&table, "steps")?;
    let seed = opt_u64(&table, "seed")?.unwrap_or(0);
    let outputs = opt_string_list(&table, "outputs")?;

    let model = match model_name.as_str() {
        "classical" => {
            let params = ModelParams::new(d, stim, osc, k)?;
            let theta0 = opt_usize(&table, "theta0")?.unwrap_or(0);
            let phi0 = opt_usize(&table, "phi0")?.unwrap_or(0);
            if theta0 >= d || phi0 >= d {
                bail!("keys `theta0` and `phi0` must lie in [0, d = {d})");
            }
            ModelSpec::Classical { params, theta0, phi0 }
        }
        "qudit-channel" => {
            let params = ChannelParams::new(d, stim, osc, k)?;
            let stimulus = parse_state(&table, "stimulus", d)?;
            let oscillator = parse_state(&table, "oscillator", d)?;
            let allow_large = opt_bool(&table, "allow_large")?.unwrap_or(false);
            ModelSpec::QuditChannel { params, stimulus, oscillator, allow_large }
        }
        "qubit" => {
            let schedule = parse_off_windows(&table)?;
            let params = QubitParams::with_schedule(d, stim, osc, k, schedule)?;
            let p0 = opt_f64(&table, "p0")?.unwrap_or(1.0);
            let c0 = match table.get("c0") {
                None => Complex64::new(0.0, 0.0),
                Some(v) => {
                    let pair = number_list(v)
                        .ok_or_else(|| anyhow!("key `c0` must be a [re, im] pair"))?;
                    if pair.len() != 2 {
                        bail!("key `c0` must be a [re, im] pair");
                    }
                    Complex64::new(pair[0], pair[1])
                }
            };
            let initial = QubitState::new(p0, c0)
                .map_err(|e| anyhow!("keys `p0`/`c0` invalid: {e}"))?;
            ModelSpec::Qubit { params, initial }
        }
        _ => unreachable!(),
    };

    Ok(ScenarioConfig { model, steps, seed, outputs })
}

fn parse_state(table: &Table, key: &str, d: usize) -> Result<StateSpec> {
    let Some(value) = table.get(key) else {
        return Ok(StateSpec::Uniform);
    };
    match value {
        Value::Integer(i) => {
            let i = usize::try_from(*i)
                .ok()
                .filter(|i| *i < d)
                .ok_or_else(|| anyhow!("key `{key}` basis index {i} outside [0, d = {d})"))?;
            Ok(StateSpec::Basis(i))
        }
        Value::String(s) if s == "uniform" => Ok(StateSpec::Uniform),
        Value::String(s) if s == "random" => Ok(StateSpec::Random),
        Value::String(s) => bail!("key `{key}` has unknown value {s:?}; expected \"uniform\" or \"random\""),
        Value::Array(items) => {
            let amps = parse_amplitudes(items)
                .ok_or_else(|| anyhow!(
                    "key `{key}` must list numbers (real amplitudes) or [re, im] pairs"
                ))?;
            if amps.len() != d {
                bail!("key `{key}` lists {} amplitudes, expected d = {d}", amps.len());
            }
            Ok(StateSpec::Amplitudes(normalize(amps, key)?))
        }
        _ => bail!("key `{key}` must be a basis index, \"uniform\", \"random\", or an amplitude list"),
    }
}

fn parse_amplitudes(items: &[Value]) -> Option<Vec<Complex64>> {
    if items.iter().all(|v| as_number(v).is_some()) {
        return Some(items.iter().map(|v| Complex64::new(as_number(v).unwrap(), 0.0)).collect());
    }
    items
        .iter()
        .map(|v| {
            let pair = number_list(v)?;
            (pair.len() == 2).then(|| Complex64::new(pair[0], pair[1]))
        })
        .collect()
}

fn normalize(amps: Vec<Complex64>, key: &str) -> Result<Vec<Complex64>> {
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        bail!("key `{key}` amplitudes have zero norm");
    }
    if (norm - 1.0).abs() > NORM_TOL {
        eprintln!("warning: key `{key}` amplitudes have norm {norm:.6}; renormalizing");
    }
    Ok(amps.into_iter().map(|a| a / norm).collect())
}

fn parse_off_windows(table: &Table) -> Result<Vec<ScheduleWindow>> {
    let Some(value) = table.get("off_windows") else {
        return Ok(Vec::new());
    };
    let items = value
        .as_array()
        .ok_or_else(|| anyhow!("key `off_windows` must be a list of [start, end) pairs"))?;
    let mut windows = Vec::new();
    for item in items {
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .and_then(|p| p.iter().map(Value::as_integer).collect::<Option<Vec<i64>>>())
            .ok_or_else(|| anyhow!("key `off_windows` entries must be [start, end) integer pairs"))?;
        let (start, end) = (u64::try_from(pair[0]), u64::try_from(pair[1]));
        let (Ok(start), Ok(end)) = (start, end) else {
            bail!("key `off_windows` entries must be non-negative");
        };
        windows.push(ScheduleWindow { start, end, on: false });
    }
    Ok(windows)
}

fn as_number(v: &Value) -> Option<f64> {
    match v {
        Value::Integer(i) => Some(*i as f64),
        Value::Float(f) => Some(*f),
        _ => None,
    }
}

fn number_list(v: &Value) -> Option<Vec<f64>> {
    v.as_array()?.iter().map(as_number).collect()
}

fn req_str(table: &Table, key: &str) -> Result<String> {
    table
        .get(key)
        .ok_or_else(|| anyhow!("missing required key `{key}`"))?
        .as_str()
        .map(str::to_owned)
        .ok_or_else(|| anyhow!("key `{key}` must be a string"))
}

fn req_usize(table: &Table, key: &str) -> Result<usize> {
    opt_usize(table, key)?.ok_or_else(|| anyhow!("missing required key `{key}`"))
}

fn opt_usize(table: &Table, key: &str) -> Result<Option<usize>> {
    Ok(opt_u64(table, key)?.map(|v| v as usize))
}

fn req_u64(table: &Table, key: &str) -> Result<u64> {
    opt_u64(table, key)?.ok_or_else(|| anyhow!("missing required key `{key}`"))
}

fn opt_u64(table: &Table, key: &str) -> Result<Option<u64>> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
        Some(_) => bail!("key `{key}` must be a non-negative integer"),
    }
}

fn opt_f64(table: &Table, key: &str) -> Result<Option<f64>> {
    match table.get(key) {
        None => Ok(None),
        Some(v) => as_number(v)
            .map(Some)
            .ok_or_else(|| anyhow!("key `{key}` must be a number")),
    }
}

fn opt_bool(table: &Table, key: &str) -> Result<Option<bool>> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::Boolean(b)) => Ok(Some(*b)),
        Some(_) => bail!("key `{key}` must be a boolean"),
    }
}

fn opt_string_list(table: &Table, key: &str) -> Result<Option<Vec<String>>> {
    match table.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_array()
            .and_then(|items| {
                items
                    .iter()
                    .map(|i| i.as_str().map(str::to_owned))
                    .collect::<Option<Vec<_>>>()
            })
            .map(Some)
            .ok_or_else(|| anyhow!("key `{key}` must be a list of column names")),
    }
}
