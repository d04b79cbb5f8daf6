use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use metrol_cli::config::ExperimentConfig;
use metrol_cli::error::CliError;
use metrol_cli::scenarios;
use metrol_cli::units::convert_units;
use metrol_cli::Scenario;

/// Batch simulator for Ramsey frequency estimation under band-gapped
/// dissipative environments.
#[derive(Parser)]
#[command(name = "metrol", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario from a config file and write its datasets.
    ///
    /// Scenarios: steady-state (long-time amplitude vs detuning), spectrum
    /// (bound-state energies below the band edge), precision-evolution
    /// (precision vs encoding time with envelopes), scaling-vs-n (minimal
    /// precision vs atom number), markovian-check (numerical optimum vs its
    /// closed form), asymptote-check (large-detuning plateau and decay rate).
    Run {
        /// TOML run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Override the configured scenario.
        #[arg(long)]
        scenario: Option<String>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (defaults to METROL_WORKERS, then the config file,
        /// then all cores).
        #[arg(long, env = "METROL_WORKERS")]
        workers: Option<usize>,
    },
    /// Parse and validate a config file without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Convert SI parameters (GHz / MHz) into gamma0 units.
    Units {
        #[arg(long)]
        omega_c_ghz: f64,
        #[arg(long)]
        gamma0_mhz: f64,
        #[arg(long)]
        omega0_ghz: f64,
    },
}

fn load_config(path: &PathBuf) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(CliError::io(format!("reading `{}`", path.display())))?;
    ExperimentConfig::from_toml(&text)
}

fn cmd_run(
    config_path: PathBuf,
    scenario: Option<String>,
    out: Option<PathBuf>,
    workers: Option<usize>,
) -> Result<i32, CliError> {
    let mut config = load_config(&config_path)?;
    if let Some(name) = scenario {
        config.scenario = Scenario::parse(&name)?;
    }
    if let Some(dir) = out {
        config.output.directory = dir;
    }
    let workers = workers.unwrap_or(config.numerics.parallel_workers);

    let outcome = scenarios::run(&config, workers)?;
    for file in &outcome.files {
        println!(
            "wrote {} ({} rows)",
            config.output.directory.join(&file.name).display(),
            file.rows
        );
    }
    println!(
        "manifest {} ({:.2} s)",
        outcome.manifest_path.display(),
        outcome.wall_seconds
    );
    if !outcome.failures.is_empty() {
        eprintln!("{} point(s) failed; see manifest", outcome.failures.len());
        for failure in &outcome.failures {
            eprintln!("  {}: {}", failure.point, failure.error);
        }
    }
    Ok(outcome.exit_code())
}

fn cmd_validate(config_path: PathBuf) -> Result<i32, CliError> {
    let config = load_config(&config_path)?;
    println!(
        "configuration ok: scenario {}, output {}",
        config.scenario,
        config.output.directory.display()
    );
    Ok(0)
}

fn cmd_units(omega_c_ghz: f64, gamma0_mhz: f64, omega0_ghz: f64) -> Result<i32, CliError> {
    let units = convert_units(omega_c_ghz, gamma0_mhz, omega0_ghz)?;
    println!("omega_c = {:.6} gamma0", units.omega_c);
    println!("omega0  = {:.6} gamma0", units.omega0);
    println!("delta   = {:.6} gamma0", units.delta);
    println!("beta    = {:.6} gamma0", units.beta);
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            scenario,
            out,
            workers,
        } => cmd_run(config, scenario, out, workers),
        Command::Validate { config } => cmd_validate(config),
        Command::Units {
            omega_c_ghz,
            gamma0_mhz,
            omega0_ghz,
        } => cmd_units(omega_c_ghz, gamma0_mhz, omega0_ghz),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
