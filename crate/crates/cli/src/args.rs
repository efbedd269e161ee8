use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sylowkit::group::DEFAULT_BUDGET;

/// Environment variable that overrides `--cache-dir`.
pub const CACHE_DIR_ENV: &str = "SYLOWKIT_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "sylowkit", version, about = "Exact checks on Sylow subgroups of unitary groups and wreath towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a group and write or validate its cache file.
    Construct {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Run one verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Matrix size for the flip-transpose suite.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the Thompson and Oliver subgroups with their certificates.
    Compute {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether J(S) lies in the Oliver subgroup.
    Conjecture {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Prop31,
    Sylow,
    Formulas,
    Centralizer,
    Qseries,
    Thm26,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop31 => "prop31",
            Suite::Sylow => "sylow",
            Suite::Formulas => "formulas",
            Suite::Centralizer => "centralizer",
            Suite::Qseries => "qseries",
            Suite::Thm26 => "thm26",
        }
    }
}

/// Which group to work on: a unitary Sylow subgroup (`--p` with `--q` or
/// `--k`, and `--n`), a wreath tower (`--p --r --height`), or the built-in
/// corpus of small groups (`--corpus`).
#[derive(Debug, Default, Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, conflicts_with = "k")]
    pub q: Option<u32>,
    /// `q = p^k`.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub height: Option<u32>,
    #[arg(long, conflicts_with_all = ["n", "r", "height"])]
    pub corpus: bool,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Report path; for `construct`, the cache file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Add wall-clock timings to the report. Timed reports are not
    /// reproducible.
    #[arg(long)]
    pub timing: bool,
}

impl Default for Common {
    fn default() -> Self {
        Common {
            samples: 1000,
            seed: 0,
            budget: DEFAULT_BUDGET,
            out: None,
            cache_dir: None,
            timing: false,
        }
    }
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Construct { common, .. }
            | Command::Verify { common, .. }
            | Command::Compute { common, .. }
            | Command::Conjecture { common, .. } => common,
        }
    }

    pub fn group(&self) -> &GroupArgs {
        match self {
            Command::Construct { group, .. }
            | Command::Verify { group, .. }
            | Command::Compute { group, .. }
            | Command::Conjecture { group, .. } => group,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Verify { .. } => "verify",
            Command::Compute { .. } => "compute",
            Command::Conjecture { .. } => "conjecture",
        }
    }
}
