use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "slrsim",
    version,
    about = "Simulate literature-review search strategies over a corpus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a corpus file and print its diagnostics.
    Validate { corpus: PathBuf },
    /// Run one strategy and print its final metrics.
    Simulate {
        corpus: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Write the run trace as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare several strategies side by side.
    Compare {
        corpus: PathBuf,
        /// Strategy file: {"strategies": [{"name": ..., ...}]}.
        #[arg(long, conflicts_with = "presets", required_unless_present = "presets")]
        specs: Option<PathBuf>,
        /// Compare the seven built-in presets.
        #[arg(long)]
        presets: bool,
        #[command(flatten)]
        preset_sources: PresetArgs,
        #[command(flatten)]
        output: TableOutput,
    },
    /// Print the built-in presets expanded into a strategy file.
    Presets {
        corpus: PathBuf,
        #[command(flatten)]
        preset_sources: PresetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Precision, recall and F-measure of each source's query.
    Libraries {
        corpus: PathBuf,
        #[command(flatten)]
        output: TableOutput,
    },
    /// Share of the oracle each source indexes.
    Indexed {
        corpus: PathBuf,
        #[command(flatten)]
        output: TableOutput,
    },
    /// Overlap between the selected papers of each pair of sources.
    Matrix {
        corpus: PathBuf,
        #[command(flatten)]
        output: TableOutput,
    },
    /// Papers found by backward versus forward snowballing from one seed.
    Complementarity {
        corpus: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
        /// json or markdown.
        #[arg(long, default_value = "markdown")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Citation graph of a strategy run in DOT.
    Graph {
        corpus: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Draw every citation between visited papers, not only discovering edges.
        #[arg(long)]
        all_edges: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add records to a corpus.
    #[command(subcommand)]
    Ingest(IngestCommand),
}

#[derive(Debug, Subcommand)]
pub enum IngestCommand {
    /// Import a paper's reference list from BibTeX.
    Bibtex {
        corpus: PathBuf,
        /// Id of the paper whose references these are.
        #[arg(long)]
        citing: String,
        file: PathBuf,
        #[command(flatten)]
        write: WriteArgs,
    },
    /// Import recorded citers from a `citing_id,cited_id` CSV file.
    Citers {
        corpus: PathBuf,
        csv: PathBuf,
        /// Reject unknown citing ids instead of creating stub papers.
        #[arg(long)]
        no_stubs: bool,
        /// Treat unknown citing ids as titles and deduplicate them.
        #[arg(long)]
        resolve_titles: bool,
        #[command(flatten)]
        write: WriteArgs,
    },
    /// Re-emit a corpus file in canonical form.
    Corpus {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct WriteArgs {
    /// Write the updated corpus here instead of stdout.
    #[arg(long, conflicts_with = "in_place")]
    pub out: Option<PathBuf>,
    /// Overwrite the input corpus file.
    #[arg(long)]
    pub in_place: bool,
}

#[derive(Debug, Args)]
pub struct TableOutput {
    /// csv, markdown or json.
    #[arg(long, default_value = "markdown")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    /// Seed from the papers these sources returned (comma separated).
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["seed_source", "seed_ids"])]
    pub db_sources: Vec<String>,
    /// Seed from the top results of this ranked source.
    #[arg(long, conflicts_with = "seed_ids")]
    pub seed_source: Option<String>,
    /// How many top-ranked results to seed from.
    #[arg(long, default_value_t = 60)]
    pub seed_cap: u32,
    /// Seed from these paper ids (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub seed_ids: Vec<String>,
}

#[derive(Debug, Args)]
pub struct PresetArgs {
    /// Ranked source seeding the `sb` preset.
    #[arg(long, default_value = "Google Scholar")]
    pub sb_source: String,
    /// Source used by the hybrid presets.
    #[arg(long, default_value = "Scopus")]
    pub hybrid_source: String,
}

#[derive(Debug, Args)]
pub struct StrategyArgs {
    /// Start from a built-in preset.
    #[arg(long, conflicts_with_all = ["db_sources", "seed_source", "seed_ids"])]
    pub preset: Option<String>,
    #[command(flatten)]
    pub preset_sources: PresetArgs,
    #[command(flatten)]
    pub seed: SeedArgs,
    /// iterative, parallel, seq-bs-fs, seq-fs-bs, bs-only, fs-only or none.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub max_iterations: Option<u32>,
}
