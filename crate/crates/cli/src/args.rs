use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "quiverstab",
    version,
    about = "King stability and GIT certificates for quivers of line bundles"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Directory searched for `NAME.json` before the built-in catalog.
    #[arg(long, env = "QUIVERSTAB_CATALOG_DIR", global = true)]
    pub catalog_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test (semi)stability of a point for a character.
    Check {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        chi: CharacterArgs,
    },
    /// Run the good/great certificates for a weight matrix.
    Certify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Character of a weight matrix, optionally shifted to the anticanonical one.
    Character {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        weights: WeightArgs,
        /// Add (-1,0,...,0,1) and run the degree-level bookkeeping.
        #[arg(long)]
        anticanonical: bool,
    },
    /// List the supports of subrepresentations of a point.
    Supports {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        point: PointArgs,
    },
    /// King's inequalities cutting out the characters for which a point is semistable.
    Cone {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Enumerate cycle monomials, and evaluate them at a point if one is given.
    Cycles {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        point: PointArgs,
        /// Longest closed walk to enumerate [default: 2n].
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Sample pairs of points on a total space and count those separated by cycle invariants.
    Separate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Longest closed walk to enumerate [default: 2n].
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Add weight-1 arrows from node 1 to node n and print the new quiver as JSON.
    Extend {
        #[command(flatten)]
        source: SourceArgs,
        /// Number of unlabeled arrows to add.
        #[arg(long, conflicts_with = "labels")]
        added_dim: Option<usize>,
        /// Comma-separated monomial labels, one added arrow each.
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
    },
    /// List built-in entries, or export one as quiver JSON.
    Catalog {
        /// Entry to export.
        name: Option<String>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Built-in catalog entry (or NAME.json under $QUIVERSTAB_CATALOG_DIR).
    #[arg(long)]
    pub example: Option<String>,
    /// Quiver description file.
    #[arg(long)]
    pub quiver: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Point file with one value per arrow id.
    #[arg(long, conflicts_with = "taut")]
    pub point: Option<PathBuf>,
    /// Tautological point from colon-separated Cox coordinates, e.g. 1:0:0.
    #[arg(long, allow_hyphen_values = true)]
    pub taut: Option<String>,
    /// Fiber coordinate for entries on a total space.
    #[arg(long, allow_hyphen_values = true, requires = "taut")]
    pub fiber: Option<String>,
    /// Abort (exit 1) if the point violates a relation instead of warning.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CharacterArgs {
    /// Comma-separated character, e.g. -1,0,1.
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,
    /// JSON file `{"chi": [...]}`.
    #[arg(long)]
    pub chi_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct WeightArgs {
    /// Weight entries VALUE@I,J meaning m_IJ = VALUE, e.g. 1@1,4 1@2,3.
    #[arg(long, num_args = 1..)]
    pub m: Vec<String>,
    /// JSON file `{"m": [[...], ...]}`.
    #[arg(long)]
    pub m_file: Option<PathBuf>,
}
