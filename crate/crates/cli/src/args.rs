use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "permlab", version, about = "Repeated up/down patterns in 132-avoiding permutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Exact expectations from the totals recurrence.
    Expectation(ExpectationArgs),
    /// Generating-function coefficients and asymptotic ratios.
    Series(SeriesArgs),
    /// List every avoider of a pattern of length three.
    Enumerate(EnumerateArgs),
    /// Monte Carlo estimate of E L / n.
    Sample(SampleArgs),
    /// Carry a 132-avoider to another class.
    Biject(BijectArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Expectation(_) => "expectation",
            Command::Series(_) => "series",
            Command::Enumerate(_) => "enumerate",
            Command::Sample(_) => "sample",
            Command::Biject(_) => "biject",
            Command::Verify(_) => "verify",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Expectation(a) => &a.common,
            Command::Series(a) => &a.common,
            Command::Enumerate(a) => &a.common,
            Command::Sample(a) => &a.common,
            Command::Biject(a) => &a.common,
            Command::Verify(a) => &a.common,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    /// Master seed (only sampling commands consume randomness).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of standard output.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write a run manifest with the output checksum.
    #[arg(long)]
    #[serde(skip)]
    pub manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum KindArg {
    #[value(name = "U2D")]
    U2D,
    #[value(name = "U3D")]
    U3D,
}

#[derive(Args, Debug, Serialize)]
pub struct ExpectationArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub kind: KindArg,
    #[arg(long, default_value_t = 2048)]
    pub n_max: usize,
    /// First row to print.
    #[arg(long, default_value_t = 0)]
    pub n_min: usize,
    /// Decimal places in the ratio columns.
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GfArg {
    /// totals of complete UUD copies
    #[value(name = "B")]
    B,
    /// totals of truncated UUUD copies after the first entry
    #[value(name = "G")]
    G,
    Catalan,
    CentralBinomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteArg {
    Compositional,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Exact,
    ScaledFloat,
}

#[derive(Args, Debug, Serialize)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub gf: GfArg,
    /// Highest coefficient index.
    #[arg(long)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = RouteArg::Closed)]
    pub route: RouteArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Report c_n sqrt(pi n) / 4^n at powers of two and at the order, instead of coefficients.
    #[arg(long)]
    pub ratios: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// Pattern of length three to avoid.
    #[arg(long, default_value = "132")]
    pub avoid: String,
    /// Print only the count.
    #[arg(long)]
    pub count_only: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,
    /// Up/down pattern to score, repeatable.
    #[arg(long = "pattern", required = true)]
    pub patterns: Vec<String>,
    /// `132` for the avoider sampler, `none` for uniform permutations.
    #[arg(long, default_value = "132")]
    pub avoid: String,
    /// Include the sampled permutations (small n only).
    #[arg(long)]
    pub emit_permutations: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct BijectArgs {
    /// Target class: 123, 213, 231, 312 or 321.
    #[arg(long, required_unless_present = "pairs")]
    pub to: Option<String>,
    /// A 132-avoiding permutation.
    #[arg(long, required_unless_present = "pairs")]
    pub input: Option<String>,
    /// Print the (pattern, class) pair table for l = 3 or 4 instead.
    #[arg(long, conflicts_with_all = ["to", "input"])]
    pub pairs: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// `all` or one of permcore, updown, catalan, bijections, totals, series.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 9)]
    pub n_max: usize,
    /// Truncation order for the exact series checks.
    #[arg(long, default_value_t = 200)]
    pub series_order: usize,
    #[command(flatten)]
    pub common: Common,
}
