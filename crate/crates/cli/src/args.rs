use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fs-basis", version, about = "Enumerate and verify combinatorial bases of Feigin-Stoyanovsky subspaces for D_l")]
pub struct Cli {
    /// Worker threads (overrides FS_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the character table (admissible counts per degree).
    Enumerate(EnumerateArgs),
    /// Run a verification suite and report pass/fail.
    Verify(VerifyArgs),
    /// Solve for a level-2 highest weight vector in a tensor product.
    Hwv(HwvArgs),
    /// Decompose the top of a tensor product of two spinor modules.
    Decompose(DecomposeArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Span,
    Relations,
    Ic,
    Current,
    Replay,
    All,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    /// L<i>, L<i>+L<j> or 2L<i>.
    #[arg(long)]
    pub weight: String,
    #[arg(long, default_value_t = 6)]
    pub max_degree: u32,
    /// Split counts by the weight of the monomial.
    #[arg(long)]
    pub by_weight: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    /// Restrict to one weight; default is every supported weight.
    #[arg(long)]
    pub weight: Option<String>,
    /// A single degree (overrides --max-degree).
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Write the JSON report array here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct HwvArgs {
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    #[arg(long)]
    pub weight: String,
    /// Level-1 pair, e.g. L4,L4.
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    #[arg(long)]
    pub pair: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
