use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mobius", version, about = "Möbius transforms and Hamming weights of Boolean functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between an ANF and a truth table.
    Transform(TransformArgs),
    /// Print the Hamming weight.
    Weight(WeightArgs),
    /// Check every algorithm against the brute-force oracle.
    Verify(VerifyArgs),
    /// Report operation counts per algorithm.
    Bench(BenchArgs),
}

/// Where a function comes from and how to read it.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input file; `-` or absent reads stdin. Either a dense vector
    /// (`anf:0101`, `tt:...`, `anf:hex:n=3:50`) or a polynomial such as
    /// `X1 + X1*X2`, optionally preceded by `#indexing=` / `#n=` headers.
    pub input: Option<PathBuf>,
    /// Number of variables (defaults to the `#n=` header or the highest
    /// variable used).
    #[arg(long)]
    pub n: Option<u32>,
    /// Variable numbering of polynomial text when no header says otherwise.
    #[arg(long, value_enum, default_value = "1")]
    pub indexing: IndexingArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndexingArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
}

impl From<IndexingArg> for mobius_core::Indexing {
    fn from(a: IndexingArg) -> Self {
        match a {
            IndexingArg::Zero => mobius_core::Indexing::ZeroBased,
            IndexingArg::One => mobius_core::Indexing::OneBased,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Rbm,
    Ibm,
    Vec,
    List,
    Greedy,
    Complement,
    Auto,
}

impl From<AlgoArg> for mobius_core::AlgoChoice {
    fn from(a: AlgoArg) -> Self {
        use mobius_core::AlgoChoice as A;
        match a {
            AlgoArg::Rbm => A::RecursiveButterfly,
            AlgoArg::Ibm => A::IterativeButterfly,
            AlgoArg::Vec => A::ExclusiveMultVector,
            AlgoArg::List => A::ExclusiveMultList,
            AlgoArg::Greedy => A::GreedyList,
            AlgoArg::Complement => A::ComplementList,
            AlgoArg::Auto => A::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutArg {
    /// Polynomial text.
    Poly,
    /// Dense ANF vector.
    Anf,
    /// Dense truth table.
    Tt,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: AlgoArg,
    /// Output form; defaults to the input's form.
    #[arg(long, value_enum)]
    pub out: Option<OutArg>,
    /// Write dense output in the hex form.
    #[arg(long)]
    pub hex: bool,
    /// Print the operation count on stderr.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Closed forms where the factorization allows, else the transform.
    Fastpath,
    /// Count the monomials of the transform.
    Transform,
    /// Evaluate at every point (n <= 16).
    Naive,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "transform")]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Every function on n variables instead of samples (n <= 4).
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorpusArg {
    Achterbahn,
    Random,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Built-in input set; ignored when an input file is given.
    #[arg(long, value_enum, default_value = "achterbahn")]
    pub corpus: CorpusArg,
    /// Benchmark this function instead of a built-in corpus (`-` for stdin).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Benchmark this polynomial text instead of a built-in corpus.
    #[arg(long, conflicts_with = "input")]
    pub expr: Option<String>,
    /// Variable count (random corpus, or to widen an input).
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 10)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Step order for the sequential list algorithm, e.g. `2,1,3`
    /// (numbered like the input).
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value = "1")]
    pub indexing: IndexingArg,
    /// One JSON object per line.
    #[arg(long)]
    pub json: bool,
    /// Include wall-clock times (output is then not reproducible).
    #[arg(long)]
    pub timing: bool,
}
