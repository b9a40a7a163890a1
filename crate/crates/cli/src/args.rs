use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default seed for every randomized command.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "chaoskit", version, about = "Chaos game representations and k-mer reconstruction of DNA")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chaos game images and trajectories.
    #[command(subcommand)]
    Cgr(CgrCommand),
    /// FCGR matrix as CSV, optionally rendered.
    Fcgr(FcgrArgs),
    /// k-mer counts as CSV.
    Kmers(KmersArgs),
    /// Empirical k-mer distribution as CSV.
    Dist(DistArgs),
    /// Draw a marginal-consistent distribution by hit-and-run.
    Sample(SampleArgs),
    /// Build a sequence from a k-mer distribution.
    Reconstruct(ReconstructArgs),
    /// Apply a square-symmetric letter permutation.
    Symmetry(SymmetryArgs),
    /// Run the HTTP API.
    Serve(ServeArgs),
}

#[derive(Debug, Subcommand)]
pub enum CgrCommand {
    /// Occupancy image at resolution 2^r as binary PGM.
    Render(RenderArgs),
    /// Chaos game points as TSV.
    Trajectory(TrajectoryArgs),
}

/// FASTA input shared by the sequence commands. `-` reads standard input.
#[derive(Debug, Args)]
pub struct Input {
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    /// Handling of letters outside ACGT: skip, split or fail.
    #[arg(long, default_value = "split")]
    pub policy: String,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(short = 'r', long)]
    pub resolution: usize,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FcgrMode {
    Count,
    Grid,
    Kronecker,
}

#[derive(Debug, Args)]
pub struct FcgrArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(short = 'k')]
    pub k: usize,
    #[arg(long, value_enum, default_value = "count")]
    pub mode: FcgrMode,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
    /// Also write the matrix as a PGM image.
    #[arg(long)]
    pub image: Option<PathBuf>,
    #[arg(long, default_value = "log")]
    pub scale: String,
}

#[derive(Debug, Args)]
pub struct KmersArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(short = 'k')]
    pub k: usize,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(short = 'k')]
    pub k: usize,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
    /// Report the largest marginal residual on standard error.
    #[arg(long)]
    pub check_marginals: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(short = 'k')]
    pub k: usize,
    /// Defaults to 1000 times the kernel dimension.
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Target distribution CSV. Without it a target is sampled with `-k`, `--iterations` and `--seed`.
    #[arg(long)]
    pub theta: Option<PathBuf>,
    #[arg(short = 'k', conflicts_with = "theta", required_unless_present = "theta")]
    pub k: Option<usize>,
    #[arg(long, requires = "k")]
    pub iterations: Option<usize>,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
    /// JSON report path.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Occupancy image of the reconstructed sequence.
    #[arg(long, requires = "resolution")]
    pub image: Option<PathBuf>,
    #[arg(short = 'r', long)]
    pub resolution: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SymmetryArgs {
    #[command(flatten)]
    pub input: Input,
    /// Cycle notation, for example "(A G)(C T)".
    #[arg(long)]
    pub sigma: String,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
}
