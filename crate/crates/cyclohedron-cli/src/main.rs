//! `cyclo`: a workbench for centrally symmetric triangulations of convex
//! polygons and the cyclohedron flip graph they span.
//!
//! Triangulations travel as small text documents (see the library's format
//! module); every expensive search honors `--cap` by degrading to a tagged
//! lower bound, and exact results are memoized on disk when the
//! `CYCLO_CACHE_DIR` environment variable points at a directory.

mod cache;
mod commands;
mod svg;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use cyclohedron::SearchConfig;

use crate::cache::ResultCache;
use crate::commands::Ctx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable tables and triangulation blocks.
    Text,
    /// Line-delimited JSON records, one object per line, schema-versioned.
    Records,
}

/// Exact flip distances, diameters, distant-pair constructions, vertex
/// deletions, and SVG drawings for centrally symmetric triangulations.
#[derive(Parser)]
#[command(
    name = "cyclo",
    version,
    after_help = "Searches memoize their results under $CYCLO_CACHE_DIR when that \
                  variable is set; --no-cache forces recomputation. Pass `-` as a \
                  file argument to read a triangulation from stdin."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for results on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Skip the on-disk result cache even when CYCLO_CACHE_DIR is set.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Stop any single search after exploring N states; the result degrades
    /// to a lower bound tagged as partial instead of failing.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<u64>,

    /// Also print an explicit flip path (geodesic or constructed route) as
    /// a sequence of triangulation blocks.
    #[arg(long, global = true)]
    witness: bool,

    /// Allow dimensions 9 and up, which take minutes of search.
    #[arg(long, global = true)]
    deep: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Diameters with upper and lower bounds over a dimension range.
    Table {
        /// "A..B" (inclusive) or a single "B" meaning 1..B.
        #[arg(default_value = "1..8", value_name = "RANGE")]
        range: String,
    },
    /// Exact flip distance between two triangulation files.
    Distance { file1: PathBuf, file2: PathBuf },
    /// Exact flip-graph diameter of one dimension.
    Diameter { d: u16 },
    /// Build a distant pair from b=, c=, d= and optional staircase= values.
    Pair {
        /// Key=value parameters, e.g. `b=4 c=5 d=6 staircase=2,2`.
        #[arg(required = true, value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// An explicit path between two files, within the proven length bound.
    UpperPath { file1: PathBuf, file2: PathBuf },
    /// Delete a vertex (and its opposite) from a triangulation.
    Delete {
        file: PathBuf,
        /// The vertex to delete; its opposite goes with it.
        p: u16,
    },
    /// Re-check the distance bounds empirically over a dimension range.
    VerifyBounds {
        /// "A..B" (inclusive) or a single "B" meaning 1..B.
        #[arg(default_value = "4..7", value_name = "RANGE")]
        range: String,
    },
    /// Draw a triangulation as a deterministic SVG.
    Render {
        file: PathBuf,
        /// Output path; `-` writes the SVG to stdout.
        out: PathBuf,
        /// Extra edges to overlay dashed, e.g. `--dotted 0-2,1-4`.
        #[arg(long, value_delimiter = ',', value_name = "U-V")]
        dotted: Vec<String>,
    },
    /// Count (and optionally list) all triangulations of one dimension.
    Enumerate {
        d: u16,
        /// Print every triangulation, not just the count.
        #[arg(long)]
        list: bool,
    },
}

/// Restores the default SIGPIPE disposition so that piping into `head` and
/// friends ends the process quietly instead of panicking on a closed pipe.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> Result<()> {
    reset_sigpipe();
    let cli = Cli::parse();
    let ctx = Ctx {
        format: cli.format,
        cache: ResultCache::from_env(cli.no_cache),
        cfg: cli.cap.map(SearchConfig::with_cap).unwrap_or_default(),
        cap: cli.cap,
        witness: cli.witness,
        deep: cli.deep,
    };
    match &cli.command {
        Command::Table { range } => commands::cmd_table(&ctx, range),
        Command::Distance { file1, file2 } => commands::cmd_distance(&ctx, file1, file2),
        Command::Diameter { d } => commands::cmd_diameter(&ctx, *d),
        Command::Pair { params } => commands::cmd_pair(&ctx, params),
        Command::UpperPath { file1, file2 } => commands::cmd_upper_path(&ctx, file1, file2),
        Command::Delete { file, p } => commands::cmd_delete(&ctx, file, *p),
        Command::VerifyBounds { range } => commands::cmd_verify_bounds(&ctx, range),
        Command::Render { file, out, dotted } => commands::cmd_render(&ctx, file, out, dotted),
        Command::Enumerate { d, list } => commands::cmd_enumerate(&ctx, *d, *list),
    }
}
