use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "atomlab", version, about = "Connectivity, atoms and iterated image growth of finite relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report to this file instead of stdout.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Maximum number of worker threads.
    #[arg(long, global = true, env = "ATOMLAB_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Connectivity κ and a witness fragment.
    Kappa {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = KappaAlgorithm::Auto)]
        algorithm: KappaAlgorithm,
        /// Largest n handled by subset enumeration.
        #[arg(long, default_value_t = 22)]
        brute_force_max: usize,
    },
    /// All atoms (minimum-size fragments).
    Atoms {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 22)]
        brute_force_max: usize,
    },
    /// Check the growth step and cumulative growth bounds at a vertex.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        /// Largest exponent to tabulate (default n).
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long, default_value_t = 64)]
        symmetry_max: usize,
    },
    /// Check |V| ≥ 1 + r(g − 1) for a point-symmetric digraph.
    Girth {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 64)]
        symmetry_max: usize,
    },
    /// Search reflexive relations for counterexamples to the Seymour inequality.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated exponents (default: every 1 ≤ j ≤ n).
        #[arg(long, value_delimiter = ',')]
        j: Option<Vec<usize>>,
        /// Directory receiving counterexample edge lists as they are found.
        #[arg(long, default_value = ".")]
        alarm_dir: PathBuf,
    },
    /// Shortest sequence of generators with product equal to the identity.
    Zerosum {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Build a Cayley graph and print it as an edge list.
    Cayley {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        /// Add a loop at every vertex.
        #[arg(long)]
        reflexive: bool,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
}

/// A relation from an edge-list file or a group descriptor.
#[derive(Args, Debug)]
pub struct Input {
    /// Edge-list file (`n m` header, then `u v` lines).
    #[arg(required_unless_present = "group", conflicts_with = "group")]
    pub file: Option<PathBuf>,
    /// Group descriptor such as Z7, Z2xZ4, D4, Q8, S3.
    #[arg(long, requires = "gens")]
    pub group: Option<String>,
    /// Generator set, comma-separated element names or indices.
    #[arg(long, allow_hyphen_values = true)]
    pub gens: Option<String>,
    /// Replace the relation by its reflexive closure before computing.
    #[arg(long)]
    pub reflexive_closure: bool,
    /// Also write the relation in Graphviz format.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KappaAlgorithm {
    Auto,
    Brute,
    Maxflow,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
}
