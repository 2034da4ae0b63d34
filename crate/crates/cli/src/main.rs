use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fbclab_cli::commands::{self, Construction, ThetaMethod, VerifyRequest, Which};
use fbclab_cli::{exit, matrix_file, CliError, Result};
use fbclab_core::BoundId;

/// Bounds, counts and an exhaustive checker for binary functional batch
/// codes with bounded recovery sets.
#[derive(Parser)]
#[command(name = "fbclab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of labellings theta(n, t, r).
    Theta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "rec")]
        method: MethodArg,
    },
    /// Smallest length allowed by a lower bound.
    Minn {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: usize,
        /// Recovery-set size; ignored by thm8, which is for r = 2.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum)]
        bound: BoundArg,
    },
    /// Emit a bound table as CSV.
    Table {
        #[arg(long, value_parser = ["2", "3"])]
        which: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// First k (table 3 only; default 5).
        #[arg(long)]
        k_min: Option<u32>,
        /// Last k (default 7 for table 2, 15 for table 3).
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Check a code against every batch of t queries.
    Verify {
        #[arg(
            long,
            conflicts_with = "construct",
            required_unless_present = "construct"
        )]
        matrix: Option<PathBuf>,
        /// simplex:K or double:K
        #[arg(long)]
        construct: Option<String>,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        r: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, env = "FBC_BUDGET_SECONDS")]
        budget_seconds: Option<f64>,
        #[arg(long)]
        max_batches: Option<u64>,
        /// Report the least failing batch instead of the first one found.
        #[arg(long)]
        deterministic: bool,
        /// Skip the initial pass over batches of one repeated query.
        #[arg(long)]
        no_quick_screen: bool,
        /// Print queries as bit vectors and add run statistics.
        #[arg(long)]
        pretty: bool,
    },
    /// Write a generator matrix file.
    Construct {
        #[arg(long, value_enum)]
        which: ConstructArg,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    Direct,
    Rec,
    Egf,
}

#[derive(Copy, Clone, ValueEnum)]
enum BoundArg {
    Exact,
    Thm6,
    Cor1,
    Thm7,
    Thm8,
    Baseline,
}

#[derive(Copy, Clone, ValueEnum)]
enum ConstructArg {
    Simplex,
    Double,
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Theta { n, t, r, method } => {
            let method = match method {
                MethodArg::Direct => ThetaMethod::Direct,
                MethodArg::Rec => ThetaMethod::Rec,
                MethodArg::Egf => ThetaMethod::Egf,
            };
            println!("{}", commands::theta_value(n, t, r, method)?);
        }
        Command::Minn { k, t, r, bound } => {
            let bound = match bound {
                BoundArg::Exact => BoundId::ExactTheta,
                BoundArg::Thm6 => BoundId::Thm6,
                BoundArg::Cor1 => BoundId::Cor1,
                BoundArg::Thm7 => BoundId::Thm7,
                BoundArg::Thm8 => BoundId::Thm8,
                BoundArg::Baseline => BoundId::Baseline23,
            };
            let r = match (bound, r) {
                (BoundId::Thm8, Some(r)) if r != 2 => {
                    eprintln!("warning: thm8 is the r = 2 bound; --r {r} ignored");
                    2
                }
                (BoundId::Thm8 | BoundId::Baseline23, r) => r.unwrap_or(2),
                (_, Some(r)) => r,
                (_, None) => return Err(CliError::Usage(format!("--r is required for {bound}"))),
            };
            let o = commands::min_n(k, t, r, bound)?;
            print!("{}", commands::format_outcome(&o));
        }
        Command::Table {
            which,
            out,
            k_min,
            k_max,
        } => {
            let which = if which == "2" {
                if k_min.is_some() {
                    return Err(CliError::Usage("--k-min applies to table 3 only".into()));
                }
                Which::Two {
                    k_max: k_max.unwrap_or(7),
                }
            } else {
                Which::Three {
                    k_min: k_min.unwrap_or(5),
                    k_max: k_max.unwrap_or(15),
                }
            };
            let csv = commands::table(which)?.emit()?;
            commands::write_output(out.as_ref(), &csv)?;
        }
        Command::Verify {
            matrix,
            construct,
            t,
            r,
            jobs,
            budget_seconds,
            max_batches,
            deterministic,
            no_quick_screen,
            pretty,
        } => {
            let g = match (matrix, construct) {
                (Some(path), _) => commands::read_matrix(&path)?,
                (None, Some(spec)) => {
                    let (which, k) = commands::parse_construct_spec(&spec)?;
                    commands::construct(which, k)?
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            let req = VerifyRequest {
                t,
                r,
                jobs,
                budget_seconds,
                max_batches,
                deterministic,
                quick_screen: !no_quick_screen,
            };
            let verdict = commands::run_verify(&g, &req)?;
            let (text, code) = commands::format_verdict(&verdict, pretty);
            print!("{text}");
            return Ok(code);
        }
        Command::Construct { which, k, out } => {
            let which = match which {
                ConstructArg::Simplex => Construction::Simplex,
                ConstructArg::Double => Construction::Double,
            };
            let g = commands::construct(which, k)?;
            commands::write_output(out.as_ref(), &matrix_file::emit(&g))?;
        }
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
