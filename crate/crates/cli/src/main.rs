use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jcm_cli::{run_sweep, run_validate, CliError, Format, Output, SweepConfig};
use jcm_core::entropy::LogBase;
use jcm_core::{FieldSpec, ModelParams};

#[derive(Parser)]
#[command(name = "jcm", version, about = "Mutual entropy of the Jaynes-Cummings atom-field channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the requested quantities on a time grid.
    Sweep(SweepArgs),
    /// Check the closed-form channel against brute-force evolution.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Args)]
struct ModelArgs {
    /// Mean photon number |θ|² of a coherent field (default 25).
    #[arg(long, conflicts_with = "fock")]
    mean_photon: Option<f64>,
    /// Photon number of a number-state field.
    #[arg(long)]
    fock: Option<u32>,
    /// Coupling constant.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Weight of the lower atomic level in the initial state.
    #[arg(long, default_value_t = 0.1)]
    lambda0: f64,
    #[arg(long, value_enum, default_value = "e")]
    log_base: Base,
    /// Photon-number tail mass dropped by the truncation.
    #[arg(long, default_value_t = 1e-12)]
    tail_eps: f64,
    /// Force the photon-number cutoff.
    #[arg(long)]
    cutoff: Option<usize>,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams, CliError> {
        let mut field = match (self.mean_photon, self.fock) {
            (_, Some(n)) => FieldSpec::fock(n),
            (Some(mean), None) if mean.is_finite() && mean >= 0.0 => FieldSpec::coherent_mean(mean),
            (Some(mean), None) => {
                return Err(CliError::Config(format!("mean photon number must be >= 0, got {mean}")))
            }
            (None, None) => FieldSpec::coherent_mean(25.0),
        };
        if let Some(cut) = self.cutoff {
            field = field.with_cutoff(cut);
        }
        let base = match self.log_base {
            Base::E => LogBase::Natural,
            Base::Two => LogBase::Two,
        };
        Ok(ModelParams::new(self.g, field)?
            .with_tail_epsilon(self.tail_eps)?
            .with_log_base(base))
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0.0)]
    t_start: f64,
    #[arg(long, default_value_t = 70.0)]
    t_end: f64,
    #[arg(long, default_value_t = 701)]
    steps: usize,
    /// Comma-separated quantities to emit.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "mutual_entropy")]
    outputs: Vec<Output>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file, or `stdout`.
    #[arg(long, default_value = "stdout")]
    out: String,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0.0)]
    t_start: f64,
    #[arg(long, default_value_t = 65.0)]
    t_end: f64,
    /// Number of grid points in [t-start, t-end].
    #[arg(long, default_value_t = 64)]
    grid: usize,
}

fn open_output(out: &str) -> io::Result<Box<dyn Write>> {
    if out == "stdout" || out == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(PathBuf::from(out))?)))
    }
}

fn sweep(args: SweepArgs) -> Result<ExitCode, CliError> {
    let config = SweepConfig {
        params: args.model.params()?,
        lambda0: args.model.lambda0,
        t_start: args.t_start,
        t_end: args.t_end,
        steps: args.steps,
        outputs: args.outputs,
        format: args.format,
    };
    let data = run_sweep(&config)?;
    let mut w = open_output(&args.out)?;
    data.write(config.format, &mut w)?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn validate(args: ValidateArgs) -> Result<ExitCode, CliError> {
    let params = args.model.params()?;
    if args.grid < 2 || !(args.t_start < args.t_end) {
        return Err(CliError::Config("need --grid >= 2 and t-start < t-end".into()));
    }
    let n = args.grid;
    let grid: Vec<f64> = (0..n)
        .map(|i| args.t_start + (args.t_end - args.t_start) * i as f64 / (n - 1) as f64)
        .collect();
    let report = run_validate(&params, args.model.lambda0, &grid)?;
    let mut out = io::stdout().lock();
    report.write_text(&mut out)?;
    out.flush()?;
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Validate(args) => validate(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(1)
    })
}
