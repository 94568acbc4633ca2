use clap::{Args, Parser, Subcommand, ValueEnum};
use lr_verlinde::corpus::DEFAULT_SEED;
use lr_verlinde::partition::Partition;
use lr_verlinde::verlinde::{Backend, VerlindeOptions, DEFAULT_TOLERANCE};

#[derive(Debug, Parser)]
#[command(
    name = "lrv",
    version,
    about = "Littlewood-Richardson coefficients for GL_r from a Verlinde sum over roots of unity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplicity of V(nu) in V(lambda) x V(mu)
    Compute {
        lambda: Partition,
        mu: Partition,
        nu: Partition,
        /// Also run the tableau count and compare (same as --method both)
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        config: Config,
    },
    /// Multiplicity of V(target) in an n-fold tensor product
    Tensor {
        #[arg(required = true)]
        factors: Vec<Partition>,
        #[arg(long)]
        target: Partition,
        #[command(flatten)]
        config: Config,
    },
    /// Full decomposition of V(lambda) x V(mu)
    Decompose {
        lambda: Partition,
        mu: Partition,
        /// Compute every entry both ways and compare (same as --method both)
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        config: Config,
    },
    /// Cross-check the Verlinde sum against the tableau rule on seeded corpora
    Selftest {
        /// Restrict to the named suites (repeatable)
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
        /// Skip cases of larger rank
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        config: Config,
    },
    /// Time both backends against the number of summation vectors
    Bench {
        /// Rank of the benchmark instance; requires --levels
        #[arg(long, requires = "levels")]
        rank: Option<usize>,
        #[arg(long, value_delimiter = ',', requires = "rank")]
        levels: Vec<i64>,
        #[command(flatten)]
        config: Config,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Verlinde,
    Tableaux,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    OracleEquivalence,
    KIndependence,
    Symmetry,
    Translation,
    Pieri,
    Dimension,
    BackendAgreement,
    Associativity,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::KIndependence => "k-independence",
            Suite::Symmetry => "symmetry",
            Suite::Translation => "translation",
            Suite::Pieri => "pieri",
            Suite::Dimension => "dimension",
            Suite::BackendAgreement => "backend-agreement",
            Suite::Associativity => "associativity",
        }
    }
}

/// `auto` or a positive level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Level(pub Option<i64>);

fn parse_level(s: &str) -> Result<Level, String> {
    if s == "auto" {
        return Ok(Level(None));
    }
    match s.parse::<i64>() {
        Ok(k) if k > 0 => Ok(Level(Some(k))),
        _ => Err(format!("expected a positive integer or `auto`, got `{s}`")),
    }
}

fn parse_fault(s: &str) -> Result<i64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("expected an integer, got `{s}`"))
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

/// Options shared by every subcommand. Each flag can also be set through an
/// `LRV_` environment variable; flags win.
#[derive(Debug, Clone, Args)]
pub struct Config {
    #[arg(long, value_enum, default_value_t = Method::Verlinde, env = "LRV_METHOD")]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact, env = "LRV_BACKEND")]
    pub backend: BackendArg,
    /// Level k, or `auto` for the smallest admissible one
    #[arg(long = "k", value_name = "INT|auto", value_parser = parse_level, default_value = "auto", env = "LRV_K")]
    pub level: Level,
    /// Integrality tolerance for the float backend
    #[arg(long, value_parser = parse_tolerance, default_value_t = DEFAULT_TOLERANCE, env = "LRV_TOLERANCE")]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = Output::Text, env = "LRV_OUTPUT")]
    pub output: Output,
    /// Worker threads for the Verlinde sum
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), env = "LRV_THREADS")]
    pub threads: Option<u32>,
    /// Report elapsed_ms as 0 so that output is reproducible byte for byte
    #[arg(long, env = "LRV_NO_TIMING")]
    pub no_timing: bool,
    #[arg(long, hide = true, default_value_t = 0, value_parser = parse_fault)]
    pub inject_phase_fault: i64,
}

impl Config {
    pub fn options(&self) -> VerlindeOptions {
        VerlindeOptions {
            backend: self.backend.into(),
            level: self.level.0,
            tolerance: self.tolerance,
            threads: None,
            phase_fault: self.inject_phase_fault,
        }
    }

    pub fn elapsed_ms(&self, d: std::time::Duration) -> f64 {
        if self.no_timing {
            0.0
        } else {
            (d.as_secs_f64() * 1e6).round() / 1e3
        }
    }
}
