//! The `aholo` command-line tool.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a verification
//! fails (findings are printed), 2 on usage, parse or structural errors.

mod commands;
mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::Outcome;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "aholo", version, about = "Complex analysis over A = C^m: derivatives, forms, atlases, Čech ranks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check charts, transitions and triple overlaps of an atlas file.
    VerifyAtlas {
        file: PathBuf,
        /// Samples per overlap (half low-discrepancy, half seeded random).
        #[arg(long, default_value_t = aholo::manifold::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = aholo::calculus::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = aholo::domain::DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Print or write a built-in atlas.
    Example {
        #[command(subcommand)]
        which: ExampleKind,
    },
    /// Per-component gluing data and candidate non-separated pairs of a one-variable atlas.
    GlueReport {
        file: PathBuf,
        /// Algebra component, counted from 1; all components when omitted.
        #[arg(long)]
        component: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Derivative of a map at a point by the circle-average formula.
    Differentiate {
        map: PathBuf,
        /// Point file (or inline JSON) in A^n.
        #[arg(long)]
        at: String,
        /// Direction file (or inline JSON); prints the full derivative matrix when omitted.
        #[arg(long)]
        direction: Option<String>,
        #[arg(long, default_value_t = aholo::calculus::DEFAULT_NODES)]
        nodes: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Decide A-differentiability of a map on sampled points of its domain.
    IsADiff {
        map: PathBuf,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = aholo::calculus::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = aholo::domain::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = aholo::calculus::DEFAULT_NODES)]
        nodes: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Pull a form back along an A-linear map.
    Pullback {
        form: PathBuf,
        map: PathBuf,
        /// Pull back along the inverse map instead.
        #[arg(long)]
        invert: bool,
    },
    /// Norm bracket of a form or an A-linear map.
    Norm {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Truncated Čech cohomology ranks.
    Cech {
        #[arg(long, value_enum)]
        cover: CoverArg,
        #[arg(long, value_enum)]
        sheaf: SheafArg,
        /// Truncation degree D.
        #[arg(long)]
        trunc: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Number of variables (single and polydisk covers).
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Pointwise locality test for a map with one output.
    Locality {
        map: PathBuf,
        #[arg(long)]
        u0: String,
        #[arg(long)]
        u1: String,
        /// Component x, counted from 1.
        #[arg(long)]
        component: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = aholo::calculus::DEFAULT_NODES)]
        nodes: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExampleKind {
    /// The four-chart manifold over C^2 with constants 0 < c1 < c2.
    ManifoldN {
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        c2: f64,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The two-chart projective line over C^m.
    P1 {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoverArg {
    P1,
    Single,
    Polydisk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SheafArg {
    #[value(name = "O", alias = "o")]
    O,
    #[value(name = "omega1")]
    Omega1,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::execute(cli.command, out) {
        Ok(Outcome::Pass) => EXIT_OK,
        Ok(Outcome::Fail) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
