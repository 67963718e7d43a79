use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ut4k_cli::{cmd_classify, cmd_equivalents, cmd_invariant, cmd_kgroups, cmd_verify, CliError, MatrixInput, Preset, RunReport};

/// Exact K-theory and isomorphism classification for the C*-algebras B_θ of UT(4,Z).
///
/// Number specifications (coefficients ascending, constant first):
///   poly:c0,c1,...,cn;interval:lo,hi   the unique root of the polynomial in (lo, hi]
///   quad:(x+y*sqrt(r))/z               (x + y√r)/z; r may be a fraction r/s
///   elt:c0,c1,...                      c0 + c1·θ + c2·θ^2 + ... (only for --eta)
///
/// Exit codes: 0 ok / isomorphic, 1 not isomorphic, 2 parse or input error,
/// 3 domain error, 4 success with caveat (search complete only up to --bound).
#[derive(Parser)]
#[command(name = "ut4k", version, verbatim_doc_comment)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this path ("-" for stdout)
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Add labelled decimal approximations
    #[arg(long, global = true)]
    approx: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Elliott invariant of B_θ
    Invariant {
        #[arg(long)]
        theta: String,
    },
    /// Decide whether B_θ ≅ B_η, with a GL(3,Z) certificate
    Classify {
        #[arg(long)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// Enumerate the classes ±η + Z with B_η ≅ B_θ
    Equivalents {
        #[arg(long)]
        theta: String,
        /// Search bound |a|, |b| ≤ BOUND for the degree-3 case
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// K-groups of a crossed product C(T^n) ⋊ Z
    Kgroups {
        #[arg(long, value_enum, conflicts_with = "matrix", required_unless_present = "matrix")]
        preset: Option<PresetArg>,
        /// JSON file: an n×n unimodular matrix, or {"k0": M0, "k1": M1}
        #[arg(long, value_name = "FILE")]
        matrix: Option<PathBuf>,
    },
    /// Run the verification suite of the group-theoretic and K-theoretic facts
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Ut4,
    HeisenbergStep3,
}

fn run(cli: &Cli) -> Result<RunReport, CliError> {
    match &cli.command {
        Command::Invariant { theta } => cmd_invariant(theta, cli.approx),
        Command::Classify { theta, eta } => cmd_classify(theta, eta, cli.approx),
        Command::Equivalents { theta, bound } => cmd_equivalents(theta, Some(*bound), cli.approx),
        Command::Kgroups { preset, matrix } => {
            let input = match (preset, matrix) {
                (Some(PresetArg::Ut4), _) => MatrixInput::Preset(Preset::Ut4),
                (Some(PresetArg::HeisenbergStep3), _) => MatrixInput::Preset(Preset::HeisenbergStep3),
                (None, Some(p)) => MatrixInput::File(p),
                (None, None) => unreachable!("clap requires one of --preset, --matrix"),
            };
            cmd_kgroups(input)
        }
        Command::Verify => cmd_verify(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("ut4k: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let elapsed = start.elapsed();
    let json_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if let Some(path) = &cli.json {
        if json_stdout {
            print!("{}", report.to_json());
        } else if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("ut4k: cannot write {}: {e}", path.display());
            return ExitCode::from(ut4k_cli::EXIT_INPUT as u8);
        }
    }
    if !json_stdout {
        let mut out = std::io::stdout().lock();
        let _ = write!(out, "{}", report.render_human());
        let _ = writeln!(out, "elapsed: {:.3} s", elapsed.as_secs_f64());
    }
    ExitCode::from(report.exit_code as u8)
}
