use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wittcalc::tower::SplittingPattern;

#[derive(Debug, Parser)]
#[command(
    name = "wittcalc",
    version,
    about = "Witt index and splitting-pattern arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH", global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for scans.
    #[arg(long, value_name = "N", global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one (dim p, dim q, Witt index) instance and name the theorem covering it.
    Check(CheckArgs),
    /// Evaluate the three reformulated conditions for (d, k, s).
    Conditions(ConditionArgs),
    /// Compare the three conditions over a grid of (d, k, s).
    ScanEquivalence(ScanArgs),
    /// Admissible first Witt indices for a dimension.
    Karpenko(DimArgs),
    /// Enumerate splitting patterns from a starting dimension.
    Enumerate(EnumerateArgs),
    /// Divisibility test for a pattern that should become hyperbolic.
    KernelCheck(KernelArgs),
    /// Degree dichotomy of a kernel-admissible pattern.
    KernelClassify(KernelArgs),
    /// Height lower bound for a kernel-admissible pattern.
    #[command(name = "bound-3-6")]
    Bound36(KernelArgs),
    /// Fitzgerald's Pfister criterion and its border case.
    Fitzgerald(FitzgeraldArgs),
    /// Splitting-pattern refinement of the conjecture.
    RefinedCheck(RefinedArgs),
    /// Dimensions that can sit just above a kernel of dimension k.
    #[command(name = "lemma-5-5")]
    Ladder(LadderArgs),
    /// Dimension inventory of an optimality witness.
    Witness(WitnessArgs),
    /// Alternating 2-power decomposition, or its value.
    AltDecomp(AltArgs),
    /// Tate-motive positions from excellent connections.
    DPositions(AltArgs),
    /// Index set of a quadric of given dimension.
    Lambda(LambdaArgs),
    /// Parity of a binomial coefficient.
    BinomParity(BinomArgs),
    /// Parity of a Steenrod coefficient on l_r.
    Steenrod(SteenrodArgs),
    /// Rational Steenrod range and the binomial evenness it forces.
    JRange(JRangeArgs),
    /// Replay the range arithmetic of the Steenrod-based proof cases.
    #[command(name = "rederive-4-8")]
    Rederive48(RederiveArgs),
}

fn parse_pattern(raw: &str) -> Result<SplittingPattern, String> {
    let dims = parse_list(raw)?;
    SplittingPattern::new(dims).map_err(|e| e.to_string())
}

fn parse_list<T: std::str::FromStr>(raw: &str) -> Result<Vec<T>, String> {
    raw.split(',')
        .map(|part| {
            part.trim()
                .parse::<T>()
                .map_err(|_| format!("`{}` is not a non-negative integer", part.trim()))
        })
        .collect()
}

/// Exponent list given as one comma-separated value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Exponents(pub Vec<u32>);

fn parse_exponents(raw: &str) -> Result<Exponents, String> {
    parse_list(raw).map(Exponents)
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub dim_p: u64,
    #[arg(long)]
    pub dim_q: u64,
    /// Witt index of q over F(p).
    #[arg(long)]
    pub witt: u64,
    /// Treat p as a Pfister neighbour.
    #[arg(long)]
    pub pfister_neighbour: bool,
}

#[derive(Debug, Args)]
pub struct ConditionArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub s: u32,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub d_max: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=16))]
    pub s_max: u32,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long)]
    pub d: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub d: u64,
    /// Drop even patterns violating the height bound d_0 >= 2^n + 2^{n-1}.
    #[arg(long)]
    pub vishik: bool,
    /// Keep patterns whose non-final higher Witt indices are divisible by 2^M.
    #[arg(long, value_name = "M")]
    pub pfister_divisibility: Option<u32>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub s: u32,
    /// Comma-separated decreasing kernel dimensions, e.g. 12,4,0.
    #[arg(long, value_parser = parse_pattern)]
    pub pattern: SplittingPattern,
}

#[derive(Debug, Args)]
pub struct FitzgeraldArgs {
    #[arg(long)]
    pub dim_p: u64,
    #[arg(long, value_parser = parse_pattern)]
    pub pattern: SplittingPattern,
}

#[derive(Debug, Args)]
pub struct RefinedArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u64,
    #[arg(long, value_parser = parse_pattern)]
    pub pattern: SplittingPattern,
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub d_max: u64,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub k: u64,
    /// Codimension of the Pfister subform.
    #[arg(long)]
    pub l_sub: u64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct AltArgs {
    /// Positive integer to decompose.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    /// Comma-separated exponents r_1 > ... > r_t.
    #[arg(long, value_parser = parse_exponents)]
    pub exponents: Option<Exponents>,
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct BinomArgs {
    #[arg(long)]
    pub x: u64,
    #[arg(long)]
    pub y: u64,
}

#[derive(Debug, Args)]
pub struct SteenrodArgs {
    #[arg(long)]
    pub dim_q: u64,
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub j: u64,
}

#[derive(Debug, Args)]
pub struct JRangeArgs {
    #[arg(long)]
    pub dim_q: u64,
    #[arg(long)]
    pub dim_p: u64,
    #[arg(long)]
    pub witt: u64,
    /// p stays non-split over F(q); includes the boundary degree.
    #[arg(long)]
    pub not_split: bool,
}

#[derive(Debug, Args)]
pub struct RederiveArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=12))]
    pub s_max: u32,
}
