//! `wqo`: checks and constructions on monoid interpretations of trees.

mod commands;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use session::{CliError, Outcome, Session};
use wqo_core::Deadline;

#[derive(Parser, Debug)]
#[command(name = "wqo", version, about = "Splits, gap-embeddings, boughs and antichain sequences")]
pub struct Cli {
    /// Wall-clock budget in seconds for exhaustive searches.
    #[arg(long, global = true)]
    deadline: Option<f64>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory receiving artifacts, counterexamples and the manifest.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// File name of the main artifact inside the output directory.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

/// Where the monoid (and optionally the alphabet or interpretation) comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct Algebra {
    #[arg(long)]
    pub monoid: Option<PathBuf>,
    #[arg(long)]
    pub morphism: Option<PathBuf>,
    #[arg(long)]
    pub interp: Option<PathBuf>,
    /// One of cliques, edgeless, paths, split-permutation.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BoughArgs {
    #[arg(long)]
    pub split: PathBuf,
    /// Split value of the backbone.
    #[arg(long)]
    pub level: u32,
    /// Backbone node ids, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub backbone: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(subcommand)]
    Monoid(MonoidCmd),
    #[command(subcommand)]
    Tree(TreeCmd),
    #[command(subcommand)]
    Interp(InterpCmd),
    #[command(subcommand)]
    Split(SplitCmd),
    #[command(subcommand)]
    Gap(GapCmd),
    #[command(subcommand)]
    Bough(BoughCmd),
    #[command(subcommand)]
    Seq(SeqCmd),
    #[command(subcommand)]
    Transduce(TransduceCmd),
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand, Debug)]
pub enum MonoidCmd {
    /// Validates a monoid file; a failing axiom is a refutation.
    Check {
        file: PathBuf,
        #[arg(long)]
        morphism: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    /// Prints nodes, leaves and products of a tree file.
    Show {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
    },
}

#[derive(Subcommand, Debug)]
pub enum InterpCmd {
    /// The graph an interpretation produces on a tree.
    Run {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        /// Read a marked tree and keep only marked leaves.
        #[arg(long)]
        marked: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SplitCmd {
    /// Constructs a forward Ramseyan split.
    Build {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        budget: Option<u32>,
    },
    /// Validates a split; a violation is a refutation.
    Check {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        split: PathBuf,
    },
    /// Product between an ancestor and a descendant through the split.
    Query {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        split: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GapCmd {
    /// Checks a node map between two marked trees against every clause.
    Check {
        small: PathBuf,
        big: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        /// JSON array giving the image of each node of the first tree.
        #[arg(long)]
        map: PathBuf,
    },
    /// Searches for a marked gap-embedding; none found is a refutation.
    Search {
        small: PathBuf,
        big: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
    },
    /// Label encoding of an L-bounded marked tree.
    Encode {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        bound: usize,
        /// Leave live-chain positions out of the labels.
        #[arg(long)]
        omit_chain_positions: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoughCmd {
    /// Maximal boughs of a split tree.
    List {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        split: PathBuf,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, default_value_t = 1)]
        min_dim: usize,
    },
    /// Context, bough and blocks of one backbone.
    Decompose {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        #[command(flatten)]
        bough: BoughArgs,
    },
    /// Searches for a perfectness certificate; none found is a refutation.
    Perfect {
        tree: PathBuf,
        #[command(flatten)]
        algebra: Algebra,
        #[command(flatten)]
        bough: BoughArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum SeqCmd {
    /// The r-th member of a sequence.
    Expand {
        seq: PathBuf,
        #[arg(long)]
        r: usize,
        /// Add the first and last copy labels.
        #[arg(long)]
        endpoints: bool,
    },
    /// Complete pairwise search over endpoint-labelled members; a comparable pair is a refutation.
    Certify {
        seq: PathBuf,
        #[arg(long, default_value_t = 1)]
        rmin: usize,
        #[arg(long)]
        rmax: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum TransduceCmd {
    /// Arcs of the arrow graph on `target` copies.
    Arrows {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        target: usize,
    },
    /// The two arc claims; a failing claim is a refutation.
    Claims {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        target: usize,
    },
    /// Extracts a path on `target` vertices.
    Path {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        target: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CorpusKind {
    Monoid,
    Tree,
    MarkedTree,
    Seq,
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    /// Writes `count` generated files of one kind.
    Gen {
        #[arg(long, value_enum)]
        kind: CorpusKind,
        #[arg(long)]
        count: usize,
        /// Maximal nodes (trees), elements (monoids) or base vertices (sequences).
        #[arg(long, default_value_t = 31)]
        size: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    let argv: Vec<String> = std::env::args().collect();
    let mut session = Session::new(cli.out.clone(), cli.seed, Deadline::from_secs(cli.deadline), argv);
    let (name, result) = commands::run(&mut session, &cli.command);
    let (outcome, code) = match result {
        Ok(Outcome::Done(value)) => match session.write(cli.output.as_deref().unwrap_or(&name), &value) {
            Ok(path) => {
                println!("{}", path.display());
                ("ok".to_string(), 0)
            }
            Err(e) => (format!("error: {e}"), 2),
        },
        Ok(Outcome::Refuted(value)) => match session.write("counterexample.json", &value) {
            Ok(path) => {
                println!("refuted: counterexample in {}", path.display());
                ("refuted".to_string(), 1)
            }
            Err(e) => (format!("error: {e}"), 2),
        },
        Err(e) => {
            eprintln!("error: {e}");
            (format!("error: {e}"), 2)
        }
    };
    if let Err(e) = session.finish(&outcome, code) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}

pub(crate) fn default_name(group: &str, cmd: &str) -> String {
    format!("{group}-{cmd}.json")
}

pub(crate) type Run = (String, Result<Outcome, CliError>);
