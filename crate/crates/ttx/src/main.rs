//! `ttx`: validate tracks, run folding scripts, compute spectral radii,
//! certify reciprocity, sweep fibered faces and verify the catalog.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

mod commands;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "ttx", version, about = "Train-track maps, dilatations and reciprocity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a track file and summarize its Euler characteristic and boundary.
    Validate {
        track: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Structural report: embedding, orientability, weight space and radical.
    Analyze {
        track: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a closed folding script and print the transition matrices.
    Run {
        script: PathBuf,
        /// Write the real transition block as a matrix file.
        #[arg(long, value_name = "OUT")]
        emit_matrix: Option<PathBuf>,
        #[arg(long)]
        check_reciprocal: bool,
        #[arg(long)]
        check_pf: bool,
        #[arg(long)]
        json: bool,
    },
    /// Reciprocity certificate for a closed folding script.
    Certify {
        script: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Spectral radius of a Perron-Frobenius matrix.
    Spectral {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "charpoly")]
        method: String,
        #[arg(long, default_value = "1e-9")]
        tol: String,
        #[arg(long)]
        json: bool,
    },
    /// Alexander norm and expansion factor of classes on a fibered face.
    Face {
        dataset: PathBuf,
        /// Integral class, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        /// Sweep a range such as `k=1..20` over the class pattern of `--family`.
        #[arg(long)]
        sweep: Option<String>,
        /// Class pattern in `k` used by `--sweep`.
        #[arg(long, default_value = "1,k+1", allow_hyphen_values = true)]
        family: String,
        /// Number of puncture orbits, for the bound verdict.
        #[arg(long, default_value_t = 2)]
        orbits: usize,
        #[arg(long, default_value = "1e-9")]
        tol: String,
        #[arg(long)]
        json: bool,
    },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// Verify entries; `--filter key=value[,key=value]` selects by id, kind or tag.
    Verify {
        #[arg(long)]
        filter: Option<String>,
        /// Write the machine-readable summary here.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        /// Catalog directory (default: `$TTX_CATALOG` or the shipped one).
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value = "1e-9")]
        tol: String,
    },
    /// List entries with their kind and tags.
    List {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
