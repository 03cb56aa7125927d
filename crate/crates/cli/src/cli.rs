use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "paradox-forge", version, about = "Three-qubit strong-nonlocality paradoxes on balanced states")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Angle equality tolerance in radians.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Largest number of measurements brute force will enumerate over.
    #[arg(long, global = true)]
    pub max_bruteforce_bits: Option<usize>,
    /// Seed for randomized scan points.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Logic,
    Bruteforce,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    A,
    B,
    C,
    D,
    Exotic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleArg {
    M1,
    M2,
    Ticks,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a scenario file is a paradox.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Synthesize a family instance.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long = "N", visible_alias = "n")]
        n: Option<i64>,
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        t: Option<i64>,
        #[arg(long)]
        s_prime: Option<i64>,
        #[arg(long)]
        t_prime: Option<i64>,
        /// Scenario file to write; the scenario is printed inline otherwise.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve for λ and C given (N, s, t), or the case-(d) system with --s-prime/--t-prime.
    Solve {
        #[arg(long = "N", visible_alias = "n")]
        n: i64,
        #[arg(long)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long)]
        s_prime: Option<i64>,
        #[arg(long)]
        t_prime: Option<i64>,
    },
    /// Full structural classification of an interpolant scenario.
    Classify { file: PathBuf },
    /// Decide local-unitary equivalence of two interpolant scenarios.
    Compare { first: PathBuf, second: PathBuf },
    /// Search parameter space for paradoxes on non-interpolant states.
    Scan {
        /// JSON scan configuration; defaults are used for missing fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Extra random state points.
        #[arg(long)]
        random_points: Option<usize>,
        /// Run the odd-N interpolant preset instead of the grid scan.
        #[arg(long)]
        odd_n: bool,
        /// Odd N values for the preset.
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<i64>>,
        /// JSON-lines output file; stdout otherwise.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the circle diagram of a scenario as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Panel side in pixels.
        #[arg(long, default_value_t = 320)]
        size: u32,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "m1,m2,ticks")]
        circles: Vec<CircleArg>,
    },
}
