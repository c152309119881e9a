//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::model_file::{parse_l_poly, read_model_file, ModelSpec};
use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "asdist",
    version,
    about = "Count Artin-Schreier extensions of function fields by conductor",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Size of the constant field
    #[arg(long)]
    pub q: Option<u64>,
    /// Characteristic; defaults to the prime dividing q
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub genus: Option<u32>,
    /// L-polynomial coefficients in ascending degree, e.g. 1,-1,2
    #[arg(long = "l-poly", allow_hyphen_values = true)]
    pub l_poly: Option<String>,
    /// Order of the p-torsion of the degree-zero class group
    #[arg(long = "clp-order")]
    pub clp_order: Option<String>,
    /// key=value model file; flags given alongside it take precedence
    #[arg(long = "model-file")]
    pub model_file: Option<PathBuf>,
}

impl ModelArgs {
    pub fn spec(&self) -> Result<ModelSpec, String> {
        let base = match &self.model_file {
            Some(path) => read_model_file(path).map_err(|e| e.to_string())?,
            None => ModelSpec::default(),
        };
        let l_poly = match &self.l_poly {
            Some(text) => Some(parse_l_poly(text).ok_or_else(|| format!("bad --l-poly `{text}`"))?),
            None => None,
        };
        let clp_order = match &self.clp_order {
            Some(text) => Some(text.parse::<BigUint>().map_err(|_| format!("bad --clp-order `{text}`"))?),
            None => None,
        };
        Ok(base.merged_with(ModelSpec { p: self.p, q: self.q, genus: self.genus, l_poly, clp_order }))
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Rank of the elementary abelian group C_p^r
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct Numerics {
    /// Working precision in bits
    #[arg(long, default_value_t = 200)]
    pub precision: u32,
    /// Euler products are truncated after primes of this degree
    #[arg(long, default_value_t = 20)]
    pub cutoff: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients c_n of the conductor series
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Partial sums C(F, G; q^n)
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Number of extensions with an explicit conductor, e.g. `P1.0^2*P2.1^3*inf^2`
    Conductor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    /// Poles of the meromorphic factor on the circle of convergence
    Poles {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Asymptotic constant by the closed form and by the generic pole extraction
    Constant {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Brute-force counts over F_q(x)
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// Maximum number of classes or subspaces to visit
        #[arg(long, default_value_t = asdist_core::oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Brute-force counts against the series; exits 1 on any mismatch
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, default_value_t = asdist_core::oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Discriminant exponents and, for rank one, discriminant counts
    Disc {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Series { common, .. }
            | Command::Count { common, .. }
            | Command::Conductor { common, .. }
            | Command::Poles { common, .. }
            | Command::Constant { common, .. }
            | Command::Oracle { common, .. }
            | Command::Compare { common, .. }
            | Command::Disc { common, .. } => common,
        }
    }
}
