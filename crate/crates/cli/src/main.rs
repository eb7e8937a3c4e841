mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact computations with free chain complexes over integral group rings.
///
/// Every command writes a JSON report (to stdout unless `--report` is given).
/// Exit status: 0 when a verdict was computed (including "not silent" and
/// "unknown"), 1 when `verify-certificate` rejects a certificate, 2 on
/// malformed input or unmet preconditions.
#[derive(Debug, Parser)]
#[command(name = "cellgap", version)]
pub struct Cli {
    /// Search limits and registry entries (JSON). Defaults to $CELLGAP_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Record wall-clock time in the report (makes reports differ between runs).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Coefficients {
    Regular,
    Trivial,
    Augmentation,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check shapes and that consecutive boundaries compose to zero.
    Validate {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Homology as invariant factors and as a module presentation.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        /// Every degree of the complex when omitted.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Cohomology with coefficients in a standard module or a presented one.
    Cohomology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, value_enum, conflicts_with = "module")]
        coefficients: Option<Coefficients>,
        /// Matrix file `P`; the module is `ℤG^rows / im P`.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Decide whether every cohomology group vanishes in a degree (or a range).
    Silence {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// Last degree of the range; defaults to `--degree`.
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
    },
    /// The obstruction class of a silent degree and whether it is trivial.
    Obstruction {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// Also write the class as a class file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a complex silent on [k, l] with prescribed obstruction.
    Realize {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        idempotent: PathBuf,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        /// Only the j-th stage of the infinite construction.
        #[arg(long)]
        stage: Option<usize>,
        #[arg(long)]
        output: PathBuf,
    },
    /// The dual complex in dimension n, optionally with the self-duality check.
    Dualize {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dimension: i64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Run the chain-level self-duality check in this degree.
        #[arg(long)]
        check_degree: Option<i64>,
    },
    /// Tensor product with a simply connected factor and the product formula.
    Product {
        #[arg(long)]
        complex: PathBuf,
        /// A complex file over the trivial group, or `point`, or `S<a>` for a sphere.
        #[arg(long)]
        factor: String,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cancel all cells in degrees [k, l] up to chain homotopy equivalence.
    Cancel {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Additivity of the obstruction for a pair X ⊆ T.
    PairCheck {
        #[arg(long)]
        complex: PathBuf,
        /// Subcomplex file: the included basis indices per degree.
        #[arg(long)]
        subcomplex: PathBuf,
        #[arg(long)]
        degree: i64,
    },
    /// Duality between the ends of a complex supported on [k, n+1-k].
    RelDuality {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dimension: i64,
        #[arg(long)]
        degree: i64,
    },
    /// Tate cohomology of ℤ/2 acting on an abelian group by an involution.
    Tate {
        /// Registry entry file (or a list / `{"entries": [...]}`).
        #[arg(long)]
        group_data: PathBuf,
        #[arg(long, value_enum)]
        parity: ParityArg,
        /// Entry to use when the file has several; defaults to the first.
        #[arg(long)]
        group: Option<String>,
    },
    /// Compare a class with (−1)^n times its dual.
    SelfDual {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        dimension: i64,
    },
    /// Re-check every certificate in a report using matrix arithmetic only.
    VerifyCertificate {
        #[arg(long = "input")]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((report, status)) => match commands::emit(&cli, &report) {
            Ok(()) => ExitCode::from(status),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
