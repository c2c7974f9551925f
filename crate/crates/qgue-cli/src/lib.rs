//! Command surface over the q-deformed GUE library: moment tables,
//! verification suites, asymptotic scans, density profiles, lattice
//! densities, and genus coefficient tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 budget or tolerance infeasibility.

pub mod commands;
pub mod output;
pub mod report;

use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgue_core::qcore::number::{BigInt, BigRat};

/// Errors carrying the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Verification(String),
    Infeasible(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Infeasible(m) => write!(f, "infeasible: {m}"),
            CliError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<qgue_core::spectral::SpectralError> for CliError {
    fn from(e: qgue_core::spectral::SpectralError) -> Self {
        use qgue_core::spectral::SpectralError::*;
        match e {
            Domain(m) => CliError::Config(m),
            TailBound { .. } | NonConvergence(_) => CliError::Infeasible(e.to_string()),
            SingularPoint { .. } => CliError::Config(e.to_string()),
        }
    }
}

impl From<qgue_core::enumor::EnumError> for CliError {
    fn from(e: qgue_core::enumor::EnumError) -> Self {
        CliError::Infeasible(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

/// Global options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Numeric tolerance override for acceptance-level comparisons.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Enumeration budget (number of matchings).
    #[arg(long, global = true, default_value_t = qgue_core::enumor::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads for independent checks (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Reserved for future randomized scans; accepted and echoed only.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Debug verbosity; at present dumps small enumerations during verify.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

impl GlobalOpts {
    /// Config echo placed into JSON `meta` blocks.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "budget": self.budget,
            "jobs": self.jobs,
            "tol": self.tol,
            "seed": self.seed,
        })
    }
}

#[derive(Debug, Parser)]
#[command(name = "qgue", version, about = "Spectral moments of the discrete q-deformed GUE")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact spectral moment tables (GUE or q-deformed).
    Moments(commands::moments::MomentsArgs),
    /// Run the exact and numeric cross-check suites.
    Verify(commands::verify::VerifyArgs),
    /// Large-N scan of scaled moments against the two-term expansion.
    Asym(commands::asym::AsymArgs),
    /// Limiting density profiles (order 0 and the genus-one correction).
    Density(commands::density::DensityArgs),
    /// Finite-N density on the q-lattice with consistency summaries.
    Lattice(commands::lattice::LatticeArgs),
    /// Genus coefficient tables E_g(p).
    Genus(commands::genus::GenusArgs),
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Moments(args) => commands::moments::run(&args, &cli.global),
        Command::Verify(args) => commands::verify::run(&args, &cli.global),
        Command::Asym(args) => commands::asym::run(&args, &cli.global),
        Command::Density(args) => commands::density::run(&args, &cli.global),
        Command::Lattice(args) => commands::lattice::run(&args, &cli.global),
        Command::Genus(args) => commands::genus::run(&args, &cli.global),
    }
}

/// Inclusive list of indices given as `"3"`, `"1,4,9"` or `"1..5"` (ranges
/// and singletons may be mixed: `"1..3,7"`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexList(pub Vec<u64>);

impl FromStr for IndexList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            if let Some((a, b)) = piece.split_once("..") {
                let a: u64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
                let b: u64 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
                if b < a {
                    return Err(format!("empty range {piece:?}"));
                }
                out.extend(a..=b);
            } else {
                out.push(piece.parse().map_err(|_| format!("bad index {piece:?}"))?);
            }
        }
        if out.is_empty() {
            return Err("empty index list".into());
        }
        Ok(IndexList(out))
    }
}

/// Comma-separated f64 list.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            // allow `log2` as the transition point
            if piece.eq_ignore_ascii_case("log2") {
                out.push(std::f64::consts::LN_2);
                continue;
            }
            out.push(piece.parse::<f64>().map_err(|_| format!("bad float {piece:?}"))?);
        }
        if out.is_empty() {
            return Err("empty float list".into());
        }
        Ok(FloatList(out))
    }
}

/// Exact rational `a/b` (or plain integer `a`), kept exact until the final
/// numeric evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Rational(pub BigRat);

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse_int =
            |t: &str| -> Result<BigInt, String> { t.trim().parse().map_err(|_| format!("bad integer {t:?}")) };
        let r = match s.split_once('/') {
            Some((num, den)) => {
                let den = parse_int(den)?;
                if den == BigInt::from(0) {
                    return Err("zero denominator".into());
                }
                BigRat::new(parse_int(num)?, den)
            }
            None => BigRat::from_integer(parse_int(s)?),
        };
        Ok(Rational(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_lists() {
        assert_eq!("3".parse::<IndexList>().unwrap().0, vec![3]);
        assert_eq!("1,4,9".parse::<IndexList>().unwrap().0, vec![1, 4, 9]);
        assert_eq!("1..5".parse::<IndexList>().unwrap().0, vec![1, 2, 3, 4, 5]);
        assert_eq!("1..3,7".parse::<IndexList>().unwrap().0, vec![1, 2, 3, 7]);
        assert!("5..1".parse::<IndexList>().is_err());
        assert!("".parse::<IndexList>().is_err());
    }

    #[test]
    fn rationals() {
        use num_traits::ToPrimitive;
        let r: Rational = "3/4".parse().unwrap();
        assert_eq!(r.0.to_f64().unwrap(), 0.75);
        let r: Rational = "-2".parse().unwrap();
        assert_eq!(r.0.to_f64().unwrap(), -2.0);
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn float_lists() {
        let f: FloatList = "0.3,log2,2".parse().unwrap();
        assert_eq!(f.0[1], std::f64::consts::LN_2);
        assert_eq!(f.0.len(), 3);
    }
}
