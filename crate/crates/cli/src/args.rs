use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use porc_core::{Caps, Engine, Partition};

#[derive(Parser, Debug)]
#[command(
    name = "porc",
    version,
    about = "Counts class-2 Lie rings of order p^n with central Frattini ideal"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Largest acting group an exhaustive loop may visit.
    #[arg(long, global = true, env = "PORC_CAP_GROUP_SIZE", default_value_t = Caps::default().group_size,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_group_size: u64,

    /// Largest module or table an exhaustive enumeration may touch.
    #[arg(long, global = true, env = "PORC_CAP_MODULE_SIZE", default_value_t = Caps::default().module_size,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_module_size: u64,

    #[arg(long, global = true, env = "PORC_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "PORC_OUT")]
    pub out: Option<PathBuf>,

    /// Worker threads for the engines (default: all cores).
    #[arg(long, global = true, env = "PORC_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

impl Global {
    pub fn caps(&self) -> Caps {
        Caps {
            group_size: self.cap_group_size,
            module_size: self.cap_module_size,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutMethod {
    /// Enumerate automorphisms over Z/p^K or F_q[t]/(t^K).
    Count,
    /// Closed formula in q.
    Formula,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// census(n, p) for every n and prime given.
    Census {
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
        n: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_prime)]
        primes: Vec<u64>,
        #[arg(long, default_value = "typed", value_parser = parse_engine)]
        engine: Engine,
    },
    /// Fit a PORC formula to a census JSON file.
    PorcFit {
        #[arg(long)]
        input: PathBuf,
        /// Modulus N; without it the divisors of 12 are tried in order.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        modulus: Option<u64>,
        #[arg(long, default_value_t = 2)]
        degmax: u32,
        /// Which n to fit when the input holds several.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Hall number g^λ_{μν}(q).
    Hall {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Partition,
        #[arg(long)]
        q: u64,
    },
    /// |Aut(M_λ)| over a ring with residue field of size q.
    Autcount {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = AutMethod::Count)]
        method: AutMethod,
    },
    /// Type of a tuple of invertible matrices over F_q.
    Typeof {
        #[arg(long)]
        q: u64,
        /// Rows separated by ';', entries by ','. Repeat for a tuple.
        #[arg(long = "matrix", required = true)]
        matrices: Vec<String>,
    },
    /// Brute-force count of the same Lie rings.
    Oracle {
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
        n: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_prime)]
        primes: Vec<u64>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Criteria to run (default: all).
        #[arg(long, value_delimiter = ',')]
        ids: Vec<u8>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Census { .. } => "census",
            Command::PorcFit { .. } => "porc-fit",
            Command::Hall { .. } => "hall",
            Command::Autcount { .. } => "autcount",
            Command::Typeof { .. } => "typeof",
            Command::Oracle { .. } => "oracle",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: porc_core::Error| e.to_string())
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: porc_core::Error| e.to_string())
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.trim().parse().map_err(|_| format!("{s:?} is not a number"))?;
    if porc_core::exactalg::is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}
