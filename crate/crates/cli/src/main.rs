//! `mcx`: face numbers, Möbius data and census sweeps for small matroids.
//!
//! Exit status is 0 on success, 1 when a witness or violation is reported
//! and 2 on bad input.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use matroid_complexes::activity::ActivityError;
use matroid_complexes::census::{CensusError, Family, MAX_N_ENV};
use matroid_complexes::complex::ComplexError;
use matroid_complexes::lattice::LatticeError;
use matroid_complexes::matroid::MatroidError;
use matroid_complexes::ps::PsError;

use report::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Activity(#[from] ActivityError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Ps(#[from] PsError),
}

#[derive(Debug, Parser)]
#[command(name = "mcx", version, about = "Matroid complexes: h-vectors, Möbius data and census sweeps")]
pub struct Cli {
    /// Element indices in files and orders start at 1.
    #[arg(long, global = true)]
    one_indexed: bool,
    /// Largest ground set the census may enumerate.
    #[arg(long, global = true, env = MAX_N_ENV)]
    nmax: Option<usize>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Node budget for backtracking searches.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    Independence,
    Bc,
    ReducedBc,
    FlatsOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EarComplex {
    Independence,
    ReducedBc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// f- and h-vector of one of the complexes of a matroid.
    Hvector {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ComplexKind::Independence)]
        complex: ComplexKind,
        /// Ground-set order, smallest first, comma separated.
        #[arg(long)]
        order: Option<String>,
    },
    /// Run a verification suite over the census.
    Verify {
        /// Suite name, or `all`.
        suite: String,
        /// Ranks to sweep, comma separated.
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
    /// Loopless rank-d classes with top h-entry k.
    Psi {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = Family::All)]
        family: Family,
    },
    /// Simple rank-d classes with top h-entry k.
    Sigma {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Bases ordered by their internally passive sets.
    IntPoset {
        file: PathBuf,
        #[arg(long)]
        order: Option<String>,
    },
    /// Möbius number of the lattice of flats and the atom bound.
    Mobius { file: PathBuf },
    /// Search simple connected classes for a broken-circuit top entry.
    BcScan {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: i64,
    },
    /// Search for a PS-ear decomposition.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EarComplex::Independence)]
        complex: EarComplex,
        #[arg(long)]
        order: Option<String>,
    },
    /// Read a catalog file and summarise each matroid.
    Ingest { catalog: PathBuf },
    /// Emit the loopless rank-d classes on n elements as a catalog.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

/// What a command produced: a report and whether it found a witness.
pub struct Outcome {
    pub report: report::Report,
    pub witness: bool,
    /// Printed verbatim instead of the report.
    pub raw: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let started = Instant::now();
    match commands::run(&cli) {
        Ok(outcome) => {
            match &outcome.raw {
                Some(text) => print!("{text}"),
                None => print!("{}", outcome.report.render(cli.format)),
            }
            eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
            ExitCode::from(u8::from(outcome.witness))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
