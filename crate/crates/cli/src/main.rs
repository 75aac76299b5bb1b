mod commands;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qcohom", version, about = "Cohomology ranks and substitution obstructions of cut-and-project patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate an input file.
    Validate { file: PathBuf },
    /// Orbit tables, homology ranks, Euler characteristic and K-theory ranks.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Upper bound on enumerated hyperplane subsets.
        #[arg(long, default_value_t = qcohom::arrangement::DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Hyperplane classes, stabilizer ranks and orbit counts.
    Arrangement {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = qcohom::arrangement::DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Substitution obstruction verdict.
    Obstruction {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = qcohom::arrangement::DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Point pattern of a projection scheme inside a ball of radius R.
    Pattern {
        file: PathBuf,
        /// Radius as an integer, decimal or p/q.
        #[arg(long)]
        radius: String,
        /// Offset vector overriding the file, e.g. '["1/97", "3/107"]'.
        #[arg(long)]
        offset: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Rendered coordinates shown in SVG output for 3-dimensional patterns.
        #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0usize, 1])]
        axes: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in golden suites and the linear-algebra property battery.
    Selftest {
        #[arg(long, default_value_t = qcohom::battery::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
