use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indec_core::LargenessPolicy;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "indec", version, about = "Desk-scale indecomposability, games and reductions on colorings of N^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a principle for a coloring under a largeness policy.
    Check(CheckArgs),
    /// Play, solve or convert the game G_n(c).
    #[command(subcommand)]
    Game(GameCommand),
    /// Build the coloring reductions and their witnesses.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Build a generic sequence meeting dense sets of conditions.
    Force(ForceArgs),
    /// Re-emit a document in canonical form.
    Fmt(FmtArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// N=16, t=3, F=4, s=2.
    Tiny,
    /// N=64, t=6, F=16, s=4.
    Small,
}

#[derive(Clone, Debug, Default, Args)]
pub struct PolicyArgs {
    /// Fill unset policy flags from a preset.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub horizon: Option<u64>,
    #[arg(long)]
    pub threshold: Option<u64>,
    #[arg(long)]
    pub frontier: Option<u64>,
    #[arg(long)]
    pub slack: Option<u64>,
}

impl PolicyArgs {
    pub fn resolve(&self) -> Result<LargenessPolicy, CliError> {
        let base = self.preset.map(|p| match p {
            Preset::Tiny => (16, 3, 4, 2),
            Preset::Small => (64, 6, 16, 4),
        });
        let pick = |flag: Option<u64>, name: &str, i: usize| {
            flag.or(base.map(|b| [b.0, b.1, b.2, b.3][i]))
                .ok_or_else(|| CliError::Usage(format!("--{name} is required (or pass --preset)")))
        };
        Ok(LargenessPolicy::new(
            pick(self.horizon, "horizon", 0)?,
            pick(self.threshold, "threshold", 1)?,
            pick(self.frontier, "frontier", 2)?,
            pick(self.slack, "slack", 3)?,
        )?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrincipleArg {
    Elem,
    Lex,
    Iso,
    Game,
    Rt,
    Wrt,
    Hwrt,
    Sads,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub principle: PrincipleArg,
    /// Coloring document.
    #[arg(long)]
    pub coloring: PathBuf,
    #[command(flatten)]
    pub policy: PolicyArgs,
    /// Color (iso, hwrt, sads).
    #[arg(long)]
    pub d: Option<u64>,
    /// Target grid M (lex, iso); defaults to the threshold.
    #[arg(long)]
    pub grid: Option<u64>,
    /// Image budget B (lex, iso); defaults to the horizon.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Number of blocks L (hwrt, sads); defaults to the threshold.
    #[arg(long)]
    pub l: Option<usize>,
    /// ⊕ move bound V (game); defaults to the horizon.
    #[arg(long)]
    pub v: Option<u64>,
    /// ⊖ move bound A (game); defaults to the threshold.
    #[arg(long)]
    pub a: Option<u64>,
    /// Block function for sads, comma separated; searched when absent.
    #[arg(long, value_delimiter = ',')]
    pub h: Option<Vec<u64>>,
}

#[derive(Debug, Subcommand)]
pub enum GameCommand {
    /// Play ⊖ on the terminal against a ⊕-strategy.
    Play(PlayArgs),
    /// Solve the bounded game and write the winning strategy.
    Solve(SolveArgs),
    /// Turn a strategy into a strong embedding or back.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long)]
    pub coloring: PathBuf,
    /// Strategy document; solved with --v/--a when absent.
    #[arg(long)]
    pub strategy: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub v: u64,
    #[arg(long, default_value_t = 8)]
    pub a: u64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub coloring: PathBuf,
    /// ⊕ replies lie in [a, V).
    #[arg(long)]
    pub v: u64,
    /// ⊖ moves lie in [0, A).
    #[arg(long)]
    pub a: u64,
    /// Strategy document to write; printed when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Strategy document to unfold into an embedding.
    #[arg(long, conflicts_with = "embedding", required_unless_present = "embedding")]
    pub strategy: Option<PathBuf>,
    /// Grid M for the unfolding.
    #[arg(long, requires = "strategy")]
    pub grid: Option<u64>,
    /// Strong embedding document to read as a strategy.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Opening color for the strategy read off an embedding.
    #[arg(long, requires = "embedding")]
    pub d: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// c(x,y) = 1 iff x is among f(0..y-1).
    RangeColoring(InjectionTable),
    /// The three-variable coloring comparing f's stages below x.
    AcaColoring(InjectionTable),
    /// An embedding on which the aca coloring is constantly 0.
    ZeroEmbedding(ZeroArgs),
    /// Decide x ∈ range(f) from a zero embedding.
    RangeDecide(DecideArgs),
    /// c(x,ȳ,z̄) = 1 iff f(x,ȳ) = f(x,z̄).
    Limgame(LimgameArgs),
    /// ⊕'s strategy for the limit game of a tower, checked by exhaustive play.
    Gamelim(GamelimArgs),
    /// Read H and the limit f_∞ off a limit-game strategy.
    ExtractFlim(FlimArgs),
    /// Thin a block function to a hyper-weak Ramsey witness.
    HwrtNormalize(NormalizeArgs),
}

#[derive(Debug, Args)]
pub struct InjectionTable {
    /// The injection f as an expression in x1.
    #[arg(long)]
    pub f: String,
    /// The coloring is written as a table over [0,N)^n.
    #[arg(long)]
    pub horizon: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZeroArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub grid: u64,
    /// Probe bound B on the stages of f.
    #[arg(long)]
    pub bound: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[arg(long)]
    pub f: String,
    /// Embedding document; built from --grid/--bound when absent.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    #[arg(long, required_unless_present = "embedding")]
    pub grid: Option<u64>,
    #[arg(long, required_unless_present = "embedding")]
    pub bound: Option<u64>,
    #[arg(long)]
    pub x: u64,
    /// Limit budget on the search for a stable slice.
    #[arg(long)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct LimgameArgs {
    /// The map f as an expression in x1..x{arity}.
    #[arg(long)]
    pub f: String,
    /// Arity 1+n of f.
    #[arg(long)]
    pub arity: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GamelimArgs {
    /// Top level f^(n) of arity 1+n.
    #[arg(long)]
    pub top: String,
    #[arg(long)]
    pub arity: usize,
    /// Moduli μ_1..μ_n in order; μ_i has arity i.
    #[arg(long = "moduli", num_args = 1..)]
    pub moduli: Vec<String>,
    /// ⊖-box for the exhaustive check and the written table.
    #[arg(long = "box")]
    pub box_: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FlimArgs {
    #[arg(long)]
    pub strategy: PathBuf,
    /// The map f of arity 1+n the game was played for.
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub arity: usize,
    #[arg(long = "box")]
    pub box_: u64,
    /// Moduli certifying f; stability is assumed when absent.
    #[arg(long = "moduli", num_args = 1..)]
    pub moduli: Vec<String>,
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long)]
    pub d: u64,
    /// Increasing block function g, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub g: Vec<u64>,
    /// Number of steps L.
    #[arg(long)]
    pub l: usize,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Debug, Args)]
pub struct ForceArgs {
    #[arg(long)]
    pub coloring: PathBuf,
    /// `length:K` for the length sets D'_1..D'_K.
    #[arg(long)]
    pub denses: Option<String>,
    /// Dense-set spec document, met after --denses.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Start condition, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub start: Vec<u64>,
    /// Run the block-function construction for L steps with the first set.
    #[arg(long)]
    pub s1density: Option<usize>,
    #[command(flatten)]
    pub policy: PolicyArgs,
}

#[derive(Debug, Args)]
pub struct FmtArgs {
    /// Any document: coloring, strategy, embedding or spec.
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
