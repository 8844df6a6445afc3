//! Argument records. Value formats are validated by clap, so malformed
//! numbers are usage errors (exit code 2).

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbimukai_core::rational::parse_rational;
use orbimukai_core::{CoordBox, ExtendedRational, Rational};

/// Comma-separated lists parse as one value; the alias keeps clap from
/// treating the field as a repeated argument.
pub type IntList = Vec<i64>;
pub type RatList = Vec<Rational>;

#[derive(Debug, Parser)]
#[command(
    name = "orbimukai",
    version,
    about = "Exact Mukai-lattice, stability and Joyce-invariant computations"
)]
pub struct Cli {
    /// Emit JSON instead of `key = value` text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Append decimal approximations to rational values (text mode only).
    #[arg(long, global = true)]
    pub approx: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of prod_{m>=1} (1 - q^m)^e, one per line.
    Series {
        /// Highest power of q.
        #[arg(long)]
        order: usize,
        /// Exponent e.
        #[arg(long, default_value_t = -24, allow_hyphen_values = true)]
        exponent: i64,
        #[arg(long, value_enum, default_value_t = Algorithm::Fast)]
        algorithm: Algorithm,
    },
    /// Orbifold Mukai pairing <v, w>.
    Pairing {
        #[command(flatten)]
        config: ConfigArg,
        /// Coordinates `r,beta...,marks...,n`.
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        v: IntList,
        /// Coordinates `r,beta...,marks...,n`.
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        w: IntList,
    },
    /// Joyce invariant J(v) and its compactified variant by the multiple cover formula.
    Joyce {
        #[command(flatten)]
        config: ConfigArg,
        /// Coordinates `r,beta...,marks...,n`.
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        v: IntList,
    },
    /// Vector on the crepant resolution and its Hilbert-scheme indices.
    Transport {
        #[command(flatten)]
        config: ConfigArg,
        /// Coordinates `r,beta...,marks...,n`.
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        v: IntList,
    },
    /// Tilt-stability wall k^2 where nu(c1) = nu(c2).
    Walls {
        #[command(flatten)]
        config: ConfigArg,
        /// Chern data `ch0,ch1...,ch2`.
        #[arg(long, value_parser = rat_list, allow_hyphen_values = true)]
        c1: RatList,
        /// Chern data `ch0,ch1...,ch2`.
        #[arg(long, value_parser = rat_list, allow_hyphen_values = true)]
        c2: RatList,
        #[command(flatten)]
        pol: PolarizationArgs,
    },
    /// Squared Gieseker/tilt thresholds N^2 for a class.
    Thresholds {
        #[command(flatten)]
        config: ConfigArg,
        /// Chern data `ch0,ch1...,ch2`.
        #[arg(long = "class", value_parser = rat_list, allow_hyphen_values = true)]
        class: RatList,
        #[command(flatten)]
        pol: PolarizationArgs,
        /// Maximal HN slope; defaults to the class's own slope.
        #[arg(long = "mu-plus", value_parser = ext_rational, allow_hyphen_values = true)]
        mu_plus: Option<ExtendedRational>,
    },
    /// Ordered decompositions of v into matching effective parts.
    Decomp {
        #[command(flatten)]
        config: ConfigArg,
        /// Coordinates `r,beta...,marks...,n`.
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        v: IntList,
        #[arg(long, value_enum)]
        matcher: MatcherKind,
        /// Coordinate bounds `lo:hi,lo:hi,...`; defaults to [min(0,v_i), max(0,v_i)].
        #[arg(long = "box", value_parser = box_spec, allow_hyphen_values = true)]
        bounds: Option<CoordBox>,
        #[command(flatten)]
        pol: PolarizationArgs,
        /// Tilt parameter for the phase matcher.
        #[arg(long, value_parser = rational)]
        k: Option<Rational>,
    },
    /// Slope mu and, given k, tilt slope nu of a class.
    Slope {
        #[command(flatten)]
        config: ConfigArg,
        /// Chern data `ch0,ch1...,ch2`.
        #[arg(long = "class", value_parser = rat_list, allow_hyphen_values = true)]
        class: RatList,
        #[command(flatten)]
        pol: PolarizationArgs,
        #[arg(long, value_parser = rational)]
        k: Option<Rational>,
    },
    /// Central charge Z_{k,D} of a class.
    Charge {
        #[command(flatten)]
        config: ConfigArg,
        /// Chern data `ch0,ch1...,ch2`.
        #[arg(long = "class", value_parser = rat_list, allow_hyphen_values = true)]
        class: RatList,
        #[command(flatten)]
        pol: PolarizationArgs,
        #[arg(long, value_parser = rational)]
        k: Rational,
    },
    /// Validate a config and print it in normalized JSON form.
    Config {
        #[command(flatten)]
        config: ConfigArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Fast,
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatcherKind {
    Hilbert,
    Phase,
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    /// Path to a JSON config, or `builtin:nikulin`.
    #[arg(long = "config")]
    pub path: String,
}

#[derive(Debug, Args)]
pub struct PolarizationArgs {
    /// Ample class in the NS basis; defaults to the config's ample class.
    #[arg(long, value_parser = rat_list, allow_hyphen_values = true)]
    pub omega: Option<RatList>,
    /// Twist divisor D; defaults to 0.
    #[arg(long = "D", value_parser = rat_list, allow_hyphen_values = true)]
    pub twist: Option<RatList>,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn ext_rational(s: &str) -> Result<ExtendedRational, String> {
    s.parse().map_err(|e: orbimukai_core::Error| e.to_string())
}

fn int_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("invalid integer '{t}'")))
        .collect()
}

fn rat_list(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',').map(|t| rational(t)).collect()
}

fn box_spec(s: &str) -> Result<CoordBox, String> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for t in s.split(',') {
        let (a, b) = t.split_once(':').ok_or_else(|| format!("expected lo:hi, got '{t}'"))?;
        lo.push(a.trim().parse::<i64>().map_err(|_| format!("invalid bound '{a}'"))?);
        hi.push(b.trim().parse::<i64>().map_err(|_| format!("invalid bound '{b}'"))?);
    }
    CoordBox::new(lo, hi).map_err(|e| e.to_string())
}
