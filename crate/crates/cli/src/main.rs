//! `delsarte`: exact LP bounds for constrained-angle spherical codes, code
//! search, PSD completion, Hamming-cube positivity, and entrywise preserver
//! checks, with reproducible machine-readable output.
//!
//! Exit codes: 0 for a definitive verdict in either direction, 2 when the
//! run gave up (budget, cap, or certification limit), 1 for usage and input
//! errors. All arithmetic is exact; json and csv output never contain
//! floating point.

mod commands;
mod output;
mod settings;

use clap::{Parser, Subcommand};
use output::Format;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "delsarte", version, about = "Exact Delsarte LP bound toolkit")]
struct Cli {
    /// Output format (default json; a config file may override)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML config file with keys budget, format, seed; flags win over it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// LP bound for codes whose pairwise cosines lie in a finite set
    Bound {
        /// Ambient dimension n; points live on the unit sphere in R^n
        #[arg(long)]
        dim: usize,
        /// Comma-separated rational cosines, e.g. "-1,-1/2,1/2"
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
        /// Solve once at this fixed degree cap
        #[arg(long, conflicts_with = "stabilize")]
        degree: Option<usize>,
        /// Escalate the cap until the optimum repeats across a window
        #[arg(long)]
        stabilize: bool,
    },
    /// LP bound for a minimum-angle constraint, certified on the interval
    IntervalBound {
        #[arg(long)]
        dim: usize,
        /// Pairwise cosines are constrained to [-1, cos_theta]
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        cos_theta: String,
        /// Degree cap for the LP and the witness polynomial
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Minimum normalized polynomial value at t, and the ratio m/(m-1)
    Theta {
        #[arg(long)]
        dim: usize,
        /// Evaluation point t, a rational in (-1, 1)
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        t: String,
        /// Largest degree scanned exactly
        #[arg(long, default_value_t = 50)]
        kmax: usize,
    },
    /// Stabilized bound plus exhaustive code search at an integer bound
    Probe {
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
        /// Search node budget (default: config file, then DELSARTE_BUDGET,
        /// then 10000000)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a Gram matrix file for realizability as a spherical code
    VerifyCode {
        #[arg(long)]
        dim: usize,
        /// JSON matrix file {dim, entries, mask}
        #[arg(long, value_name = "FILE")]
        gram: PathBuf,
        /// Allowed cosines; defaults to the distinct off-diagonal values
        #[arg(long, allow_hyphen_values = true)]
        angles: Option<String>,
    },
    /// Decide PSD completability of a partial symmetric matrix
    Complete {
        /// Input JSON file {dim, entries, mask}, null entries unspecified
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Write the completion witness here when one exists
        #[arg(long = "out", value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Positive-definiteness of a distance function on the Hamming cube
    CubePd {
        /// Cube dimension
        #[arg(long)]
        n: usize,
        /// n+1 comma-separated rational values f(0),...,f(n)
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
    /// Scaled Krawtchouk value at the limit distance versus its power law
    KrawLimit {
        /// Polynomial degree j
        #[arg(long)]
        j: usize,
        /// Limit argument u, a rational in [-1, 1]
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        u: String,
        /// Cube dimension (sweep endpoint when --sweep is given)
        #[arg(long)]
        n: usize,
        /// Emit a doubling sweep 100, 200, ... up to n
        #[arg(long)]
        sweep: bool,
    },
    /// Exact membership of a target in a cone of restricted polynomials
    Cone {
        #[arg(long)]
        dim: usize,
        /// Comma-separated rational points in [-1, 1], including 1
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Target values on the points, or "deg:K" for a normalized member
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Generator set: "auto:N" restricts normalized degrees 0..=N
        #[arg(long, default_value = "auto:6")]
        gens: String,
    },
    /// Fit a truncated preserver form to values on a finite point set
    FitPreserver {
        /// Comma-separated rational points in [-1, 1], including 1
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Target values, aligned with the points
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Polynomial degree of the fitted form
        #[arg(long)]
        degree: usize,
    },
    /// Fuzz an entrywise form against random partial PSD matrices
    Fuzz {
        /// Polynomial coefficients c0,c1,... applied entrywise
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Coefficient of the endpoint indicator term
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        /// Coefficient of x times the endpoint indicator term
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Matrix size per trial
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// RNG seed (default: config file, then 42)
        #[arg(long)]
        seed: Option<u64>,
        /// Allow negative coefficients, to confirm violations are caught
        #[arg(long)]
        negative_control: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    };
    std::process::exit(code);
}

fn execute(cli: Cli) -> anyhow::Result<i32> {
    let st = settings::resolve(cli.format, cli.config.as_deref())?;
    let mut out = dispatch(cli.command, &st)?;
    out.config
        .insert("format".into(), st.format.name().into());
    if let Some(path) = &cli.config {
        out.config
            .insert("config_file".into(), path.display().to_string().into());
    }
    let text = output::render(&out, st.format);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    lock.write_all(text.as_bytes())?;
    lock.flush()?;
    Ok(out.verdict.exit_code())
}

fn dispatch(command: Command, st: &settings::Settings) -> anyhow::Result<output::Output> {
    match command {
        Command::Bound {
            dim,
            angles,
            degree,
            stabilize,
        } => commands::bound(dim, &angles, degree, stabilize),
        Command::IntervalBound {
            dim,
            cos_theta,
            degree,
        } => commands::interval_bound(dim, &cos_theta, degree),
        Command::Theta { dim, t, kmax } => commands::theta(dim, &t, kmax),
        Command::Probe { dim, angles, budget } => commands::probe(dim, &angles, budget, st),
        Command::VerifyCode { dim, gram, angles } => {
            commands::verify_code(dim, &gram, angles.as_deref())
        }
        Command::Complete { input, output } => commands::complete(&input, output.as_deref()),
        Command::CubePd { n, values } => commands::cube_pd(n, &values),
        Command::KrawLimit { j, u, n, sweep } => commands::kraw_limit(j, &u, n, sweep),
        Command::Cone {
            dim,
            points,
            target,
            gens,
        } => commands::cone(dim, &points, &target, &gens),
        Command::FitPreserver {
            points,
            values,
            degree,
        } => commands::fit_preserver(&points, &values, degree),
        Command::Fuzz {
            coeffs,
            a,
            b,
            trials,
            size,
            seed,
            negative_control,
        } => commands::fuzz(&coeffs, &a, &b, trials, size, seed, negative_control, st),
    }
}
