//! `fraclap`: command-line access to the library.

mod commands;
mod grid;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "fraclap",
    version,
    about = "Powers of the discrete half-line Laplacian: entries, Green kernels, Hardy weights, spectral probes"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Significant digits of printed numbers.
    #[arg(long, default_value_t = fraclap::format::ROUND_TRIP_DIGITS, global = true)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

/// Grids are `x`, `x,y,z`, `start:stop:count` or `logspace:a:b:k`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Matrix entries of (-Δ)^α.
    Entry {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// N×N section of (-Δ)^α (or of 4^α - (-Δ)^α with --reflected).
    Matrix {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long = "N")]
        size: usize,
        #[arg(long)]
        reflected: bool,
    },
    /// Green kernel entries ((-Δ)^α - λ)^{-1}_{m,n} by quadrature.
    Green {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// The weights g_n(α), their majorant and I_n(α).
    Gn {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        n: String,
    },
    /// I_n(α) in closed form and by quadrature.
    In {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Uniform bounds on |G_{m,n}(λ)| over λ < 0.
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Sufficient admissibility check Σ g_n V_n ≤ 2πΓ(2α)/Γ²(α).
    HardyCheck {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[command(flatten)]
        potential: PotentialArgs,
        /// Summands computed explicitly before the tail bound takes over.
        #[arg(long, default_value_t = 10_000)]
        terms: u64,
    },
    /// Coupling and exponent of the power weight γ(α, ε)/n^{max(1,2α)+ε}.
    HardyWeight {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        epsilon: String,
    },
    /// Bilaplacian Green kernel (Δ² - λ)^{-1}_{m,n}.
    BilapGreen {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Imaginary part of λ.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        lambda_im: f64,
    },
    /// Negative eigenvalue of Δ² - c δ_n with its closed form and expansions.
    BilapLambda {
        #[arg(long)]
        n: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Smallest eigenvalue of one section of (-Δ)^α - V.
    ProbeMinEig {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long = "N")]
        size: usize,
        #[command(flatten)]
        potential: PotentialArgs,
    },
    /// Section eigenvalues of (-Δ)^α - c δ_site over a schedule of N.
    ProbeCritical {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1)]
        site: u64,
        #[arg(long)]
        c: String,
        #[arg(long, default_value = commands::DEFAULT_SCHEDULE)]
        schedule: String,
    },
    /// Sections of (-Δ)^α minus the power weight (or -Δ - 1/(4n²) with --classical).
    ProbeHardy {
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        classical: bool,
        #[arg(long, default_value = commands::DEFAULT_SCHEDULE)]
        schedule: String,
    },
    /// Sections of 4^α - (-Δ)^α - c δ_site.
    ProbeReflected {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        site: u64,
        #[arg(long, default_value = commands::DEFAULT_SCHEDULE)]
        schedule: String,
    },
    /// Sections of -Δ - V^KPP.
    ProbeKpp {
        #[arg(long, default_value = commands::DEFAULT_SCHEDULE)]
        schedule: String,
    },
    /// Formula-versus-oracle suites with a pass/fail table.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PotentialKind {
    Zero,
    /// 1/(4n²)
    Hardy,
    Kpp,
    /// c at --site
    Delta,
    /// power weight for --alpha and --epsilon
    Power,
    /// --values v1,v2,... with optional --decay
    Explicit,
}

#[derive(Args, Debug)]
struct PotentialArgs {
    #[arg(long, value_enum, default_value_t = PotentialKind::Zero)]
    potential: PotentialKind,
    #[arg(long)]
    site: Option<u64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    values: Option<String>,
    /// `finite` or `power:K:p` (V_n ≤ K n^{-p} past the listed values).
    #[arg(long)]
    decay: Option<String>,
}

/// Failure of a run, mapped to the exit status.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(fraclap::Error),
    Io(std::io::Error),
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

impl From<fraclap::Error> for CliError {
    fn from(e: fraclap::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let name = commands::name(&cli.command);
    let (output, passed) = commands::execute(cli.command)?;
    let text =
        output::render(name, &output, cli.format, cli.digits).map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    emit(&text, cli.out.as_ref())?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            // help and version go to stdout, usage errors to stderr
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
