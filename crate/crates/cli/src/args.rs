use clap::{Args, Parser, Subcommand, ValueEnum};

use vcalc_core::verify::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "vcalc",
    version,
    about = "Exact intersection numbers for Frobenius-destabilized bundles in genus 2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Plain ASCII in text output (Theta, xi1, alpha, ...).
    #[arg(long, global = true)]
    pub ascii: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed forms in p, optionally evaluated at primes.
    Derive {
        /// Comma-separated odd primes.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        primes: Vec<i64>,
    },
    /// One row of counts per prime, computed with p substituted up front.
    Table {
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        primes: Vec<i64>,
    },
    /// Runs the self-check suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Normal form of a ring expression.
    Eval {
        expression: String,
        /// Also print the integral over JX1 x Z.
        #[arg(long)]
        integrate: bool,
    },
    /// Subbundle bound (--r --n --g --delta) or destabilization margin (--g --p --d).
    Bound(BoundArgs),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Ring,
    Chern,
    Model,
    Bounds,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Ring => Suite::Ring,
            SuiteArg::Chern => Suite::Chern,
            SuiteArg::Model => Suite::Model,
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::All => Suite::All,
        }
    }
}
