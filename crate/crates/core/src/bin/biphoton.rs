use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use biphoton_core::format::Table;
use biphoton_core::report::analyze;
use biphoton_core::scenario::{analysis_table, figure_table, sweep_table, Family, FigureId, ScenarioConfig, SweepSpec};
use biphoton_core::verify::{run_verify, Corruption};
use biphoton_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Correlation measures of biphoton polarization-frequency ququarts.
#[derive(Parser)]
#[command(name = "biphoton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorruptKind {
    Hermiticity,
}

#[derive(Subcommand)]
enum Command {
    /// Report every measure of one coefficient set.
    Analyze {
        /// JSON config with `coefficients`.
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate the measures along a one-parameter family.
    Sweep {
        /// JSON config; flags override its `sweep` section.
        #[arg(long)]
        config: Option<PathBuf>,
        /// example1 | example2a | example2b | scaled
        #[arg(long)]
        family: Option<String>,
        /// Start of the swept modulus (default 0).
        #[arg(long)]
        from: Option<f64>,
        /// End of the swept modulus (default 1).
        #[arg(long)]
        to: Option<f64>,
        /// Grid points including both ends (default 201).
        #[arg(long)]
        steps: Option<usize>,
        /// Phase of B+ in example1.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        /// Phase of C1 in example2a and example2b.
        #[arg(long, allow_hyphen_values = true)]
        phi1: Option<f64>,
        /// Phase of C4 in example2b.
        #[arg(long, allow_hyphen_values = true)]
        phi4: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit the dataset behind one figure.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        fig: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Audit the invariants on seeded random states.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Use the configured state as the first trial.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Inject a fault into the first trial.
        #[arg(long, value_enum)]
        corrupt: Option<CorruptKind>,
        #[command(flatten)]
        common: Common,
    },
}

const EXIT_VERIFY: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn load_config(path: &PathBuf) -> anyhow::Result<ScenarioConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ScenarioConfig::from_json(&text)?)
}

fn emit(common: &Common, text: &str) -> anyhow::Result<()> {
    if common.out == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.flush()?;
    } else {
        fs::write(&common.out, text).with_context(|| format!("writing {}", common.out))?;
    }
    Ok(())
}

fn emit_table(common: &Common, table: &Table) -> anyhow::Result<()> {
    let text = match common.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    emit(common, &text)
}

fn pool(threads: Option<usize>) -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        anyhow::ensure!(n >= 1, "--threads must be at least 1");
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Analyze { config, common } => {
            let cfg = load_config(&config)?;
            let a = pool(common.threads)?.install(|| analyze(&cfg.require_coeffs()?))?;
            match common.format {
                Format::Csv => emit(&common, &analysis_table(&a, &cfg.outputs)?.to_csv())?,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&a)?;
                    s.push('\n');
                    emit(&common, &s)?
                }
            }
            Ok(0)
        }
        Command::Sweep {
            config,
            family,
            from,
            to,
            steps,
            phi,
            phi1,
            phi4,
            common,
        } => {
            let cfg = match &config {
                Some(p) => load_config(p)?,
                None => ScenarioConfig::default(),
            };
            let mut spec = match (&cfg.sweep, &family) {
                (_, Some(f)) => {
                    let family: Family = f.parse()?;
                    match &cfg.sweep {
                        Some(s) => SweepSpec { family, ..s.clone() },
                        None => SweepSpec::new(family),
                    }
                }
                (Some(s), None) => s.clone(),
                (None, None) => return Err(Error::Config("sweep needs --family or a config with `sweep`".into()).into()),
            };
            spec.from = from.unwrap_or(spec.from);
            spec.to = to.unwrap_or(spec.to);
            spec.steps = steps.unwrap_or(spec.steps);
            spec.phases.phi = phi.unwrap_or(spec.phases.phi);
            spec.phases.phi1 = phi1.unwrap_or(spec.phases.phi1);
            spec.phases.phi4 = phi4.unwrap_or(spec.phases.phi4);
            spec.validate()?;
            let base = cfg.coeffs()?;
            let table = pool(common.threads)?.install(|| sweep_table(&spec, base.as_ref(), &cfg.outputs))?;
            emit_table(&common, &table)?;
            Ok(0)
        }
        Command::Figure { fig, common } => {
            let table = pool(common.threads)?.install(|| figure_table(FigureId::from_number(fig)?))?;
            emit_table(&common, &table)?;
            Ok(0)
        }
        Command::Verify {
            seed,
            trials,
            config,
            corrupt,
            common,
        } => {
            let first = match &config {
                Some(p) => Some(load_config(p)?.require_coeffs()?),
                None => None,
            };
            let corrupt = corrupt.map(|CorruptKind::Hermiticity| Corruption::Hermiticity);
            let report = pool(common.threads)?.install(|| run_verify(seed, trials as usize, first, corrupt));
            match common.format {
                Format::Csv => emit(&common, &report.to_table().to_csv())?,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report)?;
                    s.push('\n');
                    emit(&common, &s)?
                }
            }
            if report.passed() {
                eprintln!("verify: all {} invariants passed ({} trials, seed {})", report.results.len(), trials, seed);
                Ok(0)
            } else {
                eprintln!("verify: FAILED {}", report.failures().join(", "));
                Ok(EXIT_VERIFY)
            }
        }
    }
}
