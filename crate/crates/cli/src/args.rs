use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use theta_core::weight::{PartitionedSignature, Signature, Weight};

use crate::CliError;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "thetakit",
    version,
    about = "p-adic theta operators on Serre-Tate expansions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Global {
    /// Residue characteristic.
    #[arg(long, global = true, default_value_t = 5)]
    pub p: u64,
    /// Working precision: residues live in Z/p^M.
    #[arg(long = "M", global = true, default_value_t = 4)]
    pub precision: u32,
    /// Congruence level.
    #[arg(long, global = true, default_value_t = 1)]
    pub m: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<std::path::PathBuf>,
    #[arg(long = "degree-cap", global = true, default_value_t = theta_core::series::DEFAULT_DEGREE_CAP)]
    pub degree_cap: u32,
    /// Exponent grid bound; defaults to p^2 for sweeps and 3 otherwise.
    #[arg(long = "grid-bound", global = true)]
    pub grid_bound: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Expand the canonical functional of a weight.
    Lcan(WeightArgs),
    /// The eigenvalue polynomial and its minor-formula comparison.
    Phi(WeightArgs),
    /// Apply the operator of a weight to a witness series.
    ThetaApply {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value = "builtin")]
        witness: String,
    },
    /// Sweep two weights for a congruence modulo p^(m+1).
    Congruence {
        #[arg(long)]
        sig: String,
        #[arg(long)]
        kappa: String,
        #[arg(long = "kappa-prime")]
        kappa_prime: String,
    },
    /// Compare restriction after and before the operator.
    Restrict(PartArgs),
    /// Check the Weyl-conjugated operator on the restriction.
    WeylExtend(PartArgs),
    /// Moment table of the toy Eisenstein family.
    Family(FamilyArgs),
    /// Kummer certification for a pair of moment data.
    Certify {
        #[command(flatten)]
        first: FamilyArgs,
        #[arg(long = "k-prime")]
        k_prime: i64,
        #[arg(long = "nu-prime", default_value_t = 0, allow_hyphen_values = true)]
        nu_prime: i64,
        #[arg(long = "psi-prime")]
        psi_prime: Option<String>,
        #[arg(long = "kappa-prime")]
        kappa_prime: Option<String>,
        /// Random sample points in addition to the table points.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct WeightArgs {
    /// Signature, places separated by ';', e.g. "2,2" or "1,1;2,0".
    #[arg(long)]
    pub sig: String,
    #[arg(long)]
    pub kappa: String,
}

#[derive(Debug, Args, Serialize)]
pub struct PartArgs {
    #[arg(long)]
    pub sig: String,
    /// Blocks separated by '/', e.g. "1,1/1,1".
    #[arg(long)]
    pub part: String,
    #[arg(long)]
    pub lambda: String,
    #[arg(long, default_value = "builtin")]
    pub witness: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub k: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub nu: i64,
    /// Teichmuller exponents of psi, one per index; zero by default.
    #[arg(long)]
    pub psi: Option<String>,
    /// Weight over signature (n,n); zero by default.
    #[arg(long)]
    pub kappa: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub cap: i64,
    #[arg(long)]
    pub part: Option<String>,
}

fn ints(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("not an integer list: {s:?}")))
        })
        .collect()
}

pub fn parse_sig(s: &str) -> Result<Signature, CliError> {
    let places = s
        .split(';')
        .map(|p| match ints(p)?.as_slice() {
            [a, b] if *a >= 0 && *b >= 0 => Ok((*a as usize, *b as usize)),
            _ => Err(CliError::Usage(format!("a place is \"a+,a-\", got {p:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Signature::new(places)?)
}

pub fn parse_weight(sig: &Signature, s: &str) -> Result<Weight, CliError> {
    let entries = s.split(';').map(ints).collect::<Result<Vec<_>, _>>()?;
    Ok(Weight::new(sig.clone(), entries)?)
}

pub fn parse_part(sig: &Signature, s: &str) -> Result<PartitionedSignature, CliError> {
    let parts = s.split('/').map(parse_sig).collect::<Result<Vec<_>, _>>()?;
    Ok(PartitionedSignature::new(sig.clone(), parts)?)
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>, CliError> {
    ints(s)
}
