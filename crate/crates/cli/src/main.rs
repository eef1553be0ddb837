use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use opgb::commands::{self, CliError, CliResult, RunOptions};
use opgb_core::OrderingSpec;

#[derive(Parser)]
#[command(name = "opgb", version, about = "Gröbner bases for shuffle operads over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Worker threads for S-polynomial reduction.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Args, Clone, Copy)]
struct Run {
    /// Monomial ordering (see `opgb orderings`); overrides the file's `ordering` line.
    #[arg(long)]
    ordering: Option<OrderingSpec>,

    /// Skip small common multiples above this arity. The basis is then valid up to it.
    #[arg(long, value_name = "N")]
    max_arity: Option<usize>,

    /// Stop after this many rounds.
    #[arg(long, value_name = "N")]
    max_rounds: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Gröbner basis and report completeness, PBW status and dimensions.
    Groebner {
        file: PathBuf,
        #[command(flatten)]
        run: Run,
    },
    /// Print the dimensions of arities 1..=max-arity.
    Dims {
        file: PathBuf,
        #[command(flatten)]
        run: Run,
    },
    /// List the normal tree monomials of one arity.
    Basis {
        file: PathBuf,
        #[arg(long)]
        arity: usize,
        #[command(flatten)]
        run: Run,
    },
    /// Reduce an element to normal form.
    Reduce {
        file: PathBuf,
        expr: String,
        #[command(flatten)]
        run: Run,
    },
    /// List small common multiples of two tree monomials.
    Scm {
        a: String,
        b: String,
        /// Presentation declaring the generators; otherwise arities are inferred.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Test whether B divides A and list the occurrences.
    Divide {
        a: String,
        b: String,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Print the presentation with every relation's symmetric-group orbit.
    Symmetrize { file: PathBuf },
    /// List the available orderings.
    Orderings,
}

fn options(run: Run, json: bool) -> RunOptions {
    RunOptions {
        ordering: run.ordering,
        max_arity: run.max_arity,
        max_rounds: run.max_rounds,
        json,
    }
}

fn optional(file: &Option<PathBuf>) -> CliResult<Option<opgb::PresentationFile>> {
    file.as_deref().map(commands::load).transpose()
}

fn execute(cli: &Cli) -> CliResult<String> {
    let json = cli.json;
    match &cli.command {
        Command::Groebner { file, run } => commands::groebner(&commands::load(file)?, &options(*run, json)),
        Command::Dims { file, run } => commands::dims(&commands::load(file)?, &options(*run, json)),
        Command::Basis { file, arity, run } => commands::basis(&commands::load(file)?, *arity, &options(*run, json)),
        Command::Reduce { file, expr, run } => commands::reduce(&commands::load(file)?, expr, &options(*run, json)),
        Command::Scm { a, b, file } => commands::scm(a, b, optional(file)?.as_ref(), json),
        Command::Divide { a, b, file } => commands::divide(a, b, optional(file)?.as_ref(), json),
        Command::Symmetrize { file } => commands::symmetrize(&commands::load(file)?, json),
        Command::Orderings => commands::orderings(json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        },
        None => execute(&cli),
    };
    let text = match result {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(source) = std::fs::write(path, text) {
                eprintln!("error: {}", CliError::Io { path: path.clone(), source });
                return ExitCode::FAILURE;
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
