use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use phaselock_cli::builtins::{builtin_config, BUILTINS};
use phaselock_cli::config::{parse_config, ScenarioConfig};
use phaselock_cli::scenario::run_scenario;
use phaselock_cli::svg::emit_svg_path;
use phaselock_cli::trajectory::Trajectory;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "phaselock",
    version,
    about = "Discrete phase-locking simulator: classical maps, a dissipative qudit channel, and a driven qubit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a TOML config file
    Run {
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run one of the named built-in scenarios
    Builtin {
        name: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the built-in scenarios
    ListBuiltins,
    /// Run every .toml config in a directory
    Batch {
        dir: PathBuf,
        /// Directory for the emitted files (defaults to the config directory)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG line plot per scenario
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG line plot next to the CSV (requires --out)
    #[arg(long)]
    svg: bool,
    /// Override the config seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config step count
    #[arg(long)]
    steps: Option<u64>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, output } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("cannot read {}", config.display()))?;
            let parsed = parse_config(&text)
                .with_context(|| format!("invalid config {}", config.display()))?;
            execute(parsed, &output)
        }
        Command::Builtin { name, output } => execute(builtin_config(&name)?, &output),
        Command::ListBuiltins => {
            for b in BUILTINS {
                println!("{:<22} {}", b.name, b.summary);
            }
            Ok(())
        }
        Command::Batch { dir, out, svg } => batch(&dir, out.as_deref(), svg),
    }
}

fn execute(mut config: ScenarioConfig, output: &OutputArgs) -> Result<()> {
    if let Some(seed) = output.seed {
        config.seed = seed;
    }
    if let Some(steps) = output.steps {
        config.steps = steps;
    }
    let traj = run_scenario(&config)?;
    match &output.out {
        Some(path) => {
            traj.emit_csv_path(path)?;
            if output.svg {
                let svg_path = path.with_extension("svg");
                emit_svg_path(&traj, &value_columns(&traj), &svg_path)?;
            }
        }
        None => {
            if output.svg {
                bail!("--svg needs --out to name the plot file");
            }
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            traj.emit_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn batch(dir: &std::path::Path, out: Option<&std::path::Path>, svg: bool) -> Result<()> {
    let mut configs: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "toml"))
        .collect();
    configs.sort();
    if configs.is_empty() {
        bail!("no .toml configs in {}", dir.display());
    }
    let out_dir = out.unwrap_or(dir);
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))?;
    for path in configs {
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let config = parse_config(&text)
            .with_context(|| format!("invalid config {}", path.display()))?;
        let traj = run_scenario(&config)
            .with_context(|| format!("scenario {} failed", path.display()))?;
        let stem = path.file_stem().expect("toml files have stems");
        let csv_path = out_dir.join(stem).with_extension("csv");
        traj.emit_csv_path(&csv_path)?;
        println!("wrote {}", csv_path.display());
        if svg {
            let svg_path = out_dir.join(stem).with_extension("svg");
            emit_svg_path(&traj, &value_columns(&traj), &svg_path)?;
            println!("wrote {}", svg_path.display());
        }
    }
    Ok(())
}

fn value_columns(traj: &Trajectory) -> Vec<&str> {
    traj.names().into_iter().filter(|n| *n != "t").collect()
}
