use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lpa", version, about = "Explore Laurent phenomenon algebra seeds and their mutation classes")]
pub struct Cli {
    /// Built-in seed (a2-toy, e4, e5, e6) or path to a seed file.
    #[arg(long, global = true)]
    pub seed: Option<String>,

    /// Maximum number of seeds to explore. Defaults to $LPA_BUDGET or 10000.
    #[arg(long, global = true)]
    pub budget: Option<usize>,

    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Built-in symmetry group (named after its seed) or path to a symmetry file.
    #[arg(long, global = true)]
    pub symmetry: Option<String>,

    #[arg(long, global = true, default_value_t = 8080)]
    pub port: u16,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a sequence of mutations to the seed.
    Mutate {
        /// Slot to mutate: 1-based number or initial cluster name. Repeatable.
        #[arg(long, required = true)]
        at: Vec<String>,
    },
    /// Enumerate the mutation class.
    Explore,
    /// Check the mutation class against the known facts about the seed.
    Verify,
    /// Orbits of the mutation class under a symmetry group.
    Orbits,
    /// Rank-2 mutation cycles.
    Cycles {
        /// Only the cycle of alternating mutations at these two slots of the seed.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pair: Option<Vec<usize>>,
    },
    /// Scan every cluster variable and exchange polynomial for negative coefficients.
    Positivity,
    /// Write the exchange graph as DOT or JSON.
    Export {
        /// Export the quotient by the symmetry group instead.
        #[arg(long)]
        quotient: bool,
    },
    /// Serve the interactive JSON API.
    Serve,
}
