use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mahlerlab::par;
use mahlerlab::qseries::DEFAULT_ORDER;
use mahlerlab::verify::{self, Format, RunOptions, SeriesKind};

/// Numerics and identity checks around the Mahler measure of 1 + X + 1/X + Y + 1/Y.
#[derive(Parser)]
#[command(name = "mahlerlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Eta,
    A,
    B,
    C,
}

impl From<SeriesArg> for SeriesKind {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::Eta => SeriesKind::Eta,
            SeriesArg::A => SeriesKind::A,
            SeriesArg::B => SeriesKind::B,
            SeriesArg::C => SeriesKind::C,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity registry.
    Verify {
        /// Glob over check ids, e.g. `qs-*`.
        #[arg(long)]
        filter: Option<String>,
        /// Replace every check's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip conjectural checks.
        #[arg(long)]
        proved_only: bool,
        /// Worker threads; 1 runs sequentially.
        #[arg(long, env = "VERIFY_JOBS")]
        jobs: Option<usize>,
    },
    /// Evaluate one quantity: H x | F B C | Lcusp SPEC | I y | malpha alpha | L3 s | mahler POLY.
    Eval {
        verb: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Print a q-expansion as `exponent<TAB>coefficient` lines.
    Series {
        #[arg(value_enum)]
        kind: SeriesArg,
        /// Substitute q -> q^R; accepts fractions such as 1/3.
        #[arg(long, default_value = "1")]
        scale: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i64,
    },
    /// List check ids with their status.
    List,
}

fn run(cli: Cli) -> mahlerlab::Result<ExitCode> {
    match cli.command {
        Command::Verify { filter, tol, format, out, proved_only, jobs } => {
            let opts = RunOptions { filter, tol_override: tol, proved_only, parallel: jobs != Some(1) && par::ENABLED };
            let results = par::with_jobs(jobs, || verify::run_all(&opts))?;
            let text = verify::render_report(&results, format.into());
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| mahlerlab::Error::Unsupported(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            for r in results.iter().filter(|r| !r.pass && r.status == verify::Status::Conjectural) {
                eprintln!("warning: conjectural check {} outside tolerance ({:e})", r.id, r.abs_err);
            }
            Ok(ExitCode::from(verify::exit_code(&results) as u8))
        }
        Command::Eval { verb, args } => {
            println!("{}", verify::eval(&verb, &args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Series { kind, scale, order } => {
            let s = verify::series_expansion(kind.into(), verify::parse_ratio(&scale)?, order)?;
            print!("{}", verify::render_series(&s));
            Ok(ExitCode::SUCCESS)
        }
        Command::List => {
            print!("{}", verify::list());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
