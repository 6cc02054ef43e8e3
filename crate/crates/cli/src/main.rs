//! `subindex`: batch front end for the subfactor and integer-set engines.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser)]
#[command(name = "subindex", version, about = "Subfactors, subindices and difference sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Difference sets, difference length, covering and packing of a subset.
    Group(GroupArgs),
    /// Subfactors and the four subindices of a subset.
    Subset(SubsetArgs),
    /// Index-stability verdict for a whole group.
    Classify(ClassifyArgs),
    /// Eventually periodic integer sets: inference, algebra and the exact RSFA engine.
    Zset(ZsetArgs),
    /// Sequence analyses and interval certificates.
    Seq(SeqArgs),
    /// Spot checks of structural identities.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

impl SideArg {
    pub fn sides(self) -> Vec<subindex_core::Side> {
        use subindex_core::Side;
        match self {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::Both => vec![Side::Right, Side::Left],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupAnalysis {
    Info,
    Dlinf,
    Dif,
    Complement,
    Generating,
    Cover,
    Pack,
}

#[derive(Args)]
pub struct GroupArgs {
    /// Group spec: Zn, Zn^m, Sn, An, D2n, Q8-style names, file:<path>, products with `x`.
    #[arg(long)]
    pub spec: String,
    /// Comma-separated element indices.
    #[arg(long)]
    pub subset: Option<String>,
    #[arg(long, value_enum, default_value = "info")]
    pub analysis: GroupAnalysis,
    #[arg(long, value_enum, default_value = "right")]
    pub side: SideArg,
    /// Add the identity to C(A).
    #[arg(long)]
    pub adjoin_identity: bool,
    /// Allow exact covering above order 64.
    #[arg(long)]
    pub force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SubsetOp {
    Indices,
    Rsfa,
    Subf1,
    Singleton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    All,
    FirstMin,
    FirstMax,
}

#[derive(Args)]
pub struct SubsetArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long)]
    pub subset: String,
    #[arg(long, value_enum, default_value = "both")]
    pub side: SideArg,
    #[arg(long, value_enum, default_value = "indices")]
    pub op: SubsetOp,
    #[arg(long, value_enum, default_value = "all")]
    pub mode: ModeArg,
    /// Enumeration cap on the group order.
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReductionArg {
    None,
    Translation,
    #[value(name = "translation+inversion")]
    TranslationInversion,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long, value_enum, default_value = "translation")]
    pub reduction: ReductionArg,
    /// Seed of the witness search used above the exhaustive limit.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Largest order classified exhaustively.
    #[arg(long, default_value_t = 16)]
    pub exhaustive_limit: usize,
    /// Fail rather than fall back to witness search.
    #[arg(long)]
    pub require_exhaustive: bool,
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Suppress progress lines on stderr.
    #[arg(long)]
    pub quiet: bool,
}

/// Where an integer set comes from.
#[derive(Args)]
pub struct SourceArgs {
    /// squares, powers, kth_powers, primes, odd_primes, fibonacci, factorials,
    /// nn, bell, catalan, partition, or finite:a,b,c.
    #[arg(long)]
    pub sequence: Option<String>,
    /// First base for `squares`.
    #[arg(long, default_value_t = 0)]
    pub from: u64,
    /// Base for `powers`, exponent for `kth_powers`.
    #[arg(long, default_value_t = 2)]
    pub k: u64,
    /// OEIS-style b-file with `n a(n)` lines.
    #[arg(long)]
    pub bfile: Option<std::path::PathBuf>,
    /// Treat the sequence as `A ∪ -A`.
    #[arg(long)]
    pub symmetrize: bool,
    /// Window bound W on the values used.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub window: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZsetOp {
    Infer,
    Dif,
    Rsfa,
    Verify,
    Scaling,
    SquaresComplement,
    Intervals,
    Union,
    Intersect,
    Minus,
    Complement,
    Negate,
    Shift,
    Scale,
    Sumset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    Dif,
    Identity,
}

#[derive(Args)]
pub struct ZsetArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// The set A itself, e.g. `mod 4: 0,1 ; flips: 2`.
    #[arg(long)]
    pub epset: Option<String>,
    /// Dif(A) given directly.
    #[arg(long)]
    pub dif: Option<String>,
    /// Second operand of binary algebra operations.
    #[arg(long)]
    pub other: Option<String>,
    #[arg(long, value_enum, default_value = "rsfa")]
    pub op: ZsetOp,
    #[arg(long, value_enum, default_value = "dif")]
    pub transform: TransformArg,
    /// Exploration radius of the RSFA engine; defaults to the least sound value.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub radius: Option<u64>,
    /// Guard band of the inference; defaults to W/10.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub guard: Option<u64>,
    /// Largest modulus tried by the inference.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Candidate subfactor for `verify`, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Factor for `scaling` and `scale`.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Translation for `shift`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
    /// Interval parameter for `intervals`.
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqAnalysis {
    Gaps,
    Growth,
    Dlinf,
    Screen,
    Fibonacci,
    Pow2,
    Maillet,
}

#[derive(Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value = "screen")]
    pub analysis: SeqAnalysis,
    /// Deepest difference iterate tried by `dlinf`.
    #[arg(long, default_value_t = 6)]
    pub max_n: u32,
    /// Range start for the certificates.
    #[arg(long)]
    pub lo: Option<u32>,
    /// Range end for the certificates.
    #[arg(long)]
    pub hi: Option<u32>,
    #[arg(long, default_value_t = 10_000)]
    pub even_bound: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub prime_bound: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyOp {
    Multiplicativity,
    ComplementIndex,
    Singleton,
    Product,
    GcdLaw,
    Pervasive,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub op: VerifyOp,
    #[arg(long)]
    pub spec: Option<String>,
    #[arg(long)]
    pub subset: Option<String>,
    /// A subgroup H, comma-separated.
    #[arg(long)]
    pub subgroup: Option<String>,
    /// Second factor for `product`.
    #[arg(long)]
    pub spec2: Option<String>,
    #[arg(long)]
    pub subset2: Option<String>,
    #[arg(long)]
    pub a: Option<i64>,
    #[arg(long)]
    pub b: Option<i64>,
    #[arg(long)]
    pub n: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Group(a) => commands::group(&a),
        Command::Subset(a) => commands::subset(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Zset(a) => commands::zset(&a),
        Command::Seq(a) => commands::seq(&a),
        Command::Verify(a) => commands::verify(&a),
    };
    match out {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
