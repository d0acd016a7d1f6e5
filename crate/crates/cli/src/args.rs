use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ampleness",
    version,
    about = "Exact degree bounds for ample cotangent bundles of complete intersections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormulaArg {
    ThmBig,
    CorGg,
    CorAmple,
    MainGg,
    MainAmple,
    Curve,
    #[value(name = "threshold-N")]
    ThresholdN,
    All,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    /// Comma-separated degrees d_1,...,d_c
    #[arg(long = "d", value_delimiter = ',', conflicts_with = "d_uniform")]
    pub d: Option<Vec<u64>>,
    /// Use c = N - n copies of this degree
    #[arg(long = "d-uniform")]
    pub d_uniform: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact bigness margin for one complete intersection
    Check {
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "N")]
        big_n: u32,
        #[command(flatten)]
        degrees: DegreeArgs,
        #[arg(long = "a", default_value_t = -1, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Closed-form degree bounds
    Bound {
        #[arg(long = "n")]
        n: Option<u32>,
        #[arg(long = "N")]
        big_n: Option<u32>,
        #[arg(long = "a", default_value_t = -1, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, value_enum, default_value_t = FormulaArg::All)]
        formula: FormulaArg,
        #[command(flatten)]
        degrees: DegreeArgs,
        /// Grid of (n, N) pairs, e.g. 2-4:5-20
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Least uniform degree with positive margin
    Search {
        #[arg(long = "n")]
        n: Option<u32>,
        #[arg(long = "N")]
        big_n: Option<u32>,
        #[arg(long = "a", default_value_t = -1, allow_negative_numbers = true)]
        a: i64,
        /// Grid of (n, N) pairs, e.g. 2-4:5-20
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare against prior bounds over a range of N
    Compare {
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "Nmin")]
        n_min: u32,
        #[arg(long = "Nmax")]
        n_max: u32,
        /// Print the large prior bounds in full
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exhaustively check the symmetric-function ratio inequality
    VerifyLemma {
        #[arg(long = "r")]
        r: usize,
        #[arg(long = "k")]
        k: Option<usize>,
        #[arg(long = "grid", default_value_t = 6)]
        grid: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

impl Command {
    pub fn format(&self) -> Format {
        match self {
            Command::Check { format, .. }
            | Command::Bound { format, .. }
            | Command::Search { format, .. }
            | Command::Compare { format, .. }
            | Command::VerifyLemma { format, .. } => *format,
        }
    }
}
