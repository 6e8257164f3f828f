use std::fmt;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use num_bigint::{BigInt, BigUint};
use padic::oracle::DEFAULT_BUDGET;
use padic::{find_seeds, parse_source, DigitStyle, Method, PadicContext, Poly, Seed};

/// Degree above which a warning is printed (seed search and shifts are quadratic).
pub const DEGREE_WARNING: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Olver,
    Newton,
    Halley,
    Steffensen,
    All,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Olver => vec![Method::Olver],
            MethodChoice::Newton => vec![Method::Newton],
            MethodChoice::Halley => vec![Method::Halley],
            MethodChoice::Steffensen => vec![Method::Steffensen],
            MethodChoice::All => Method::ALL.to_vec(),
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DigitStyleArg {
    Series,
    #[value(alias = "lsd")]
    LsdList,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Table => "table",
            Format::Json => "json",
        })
    }
}

/// Flags shared by `solve` and `compare`.
#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Polynomial in x with integer coefficients, e.g. "x^2 - 2"
    #[arg(long)]
    pub poly: String,
    /// The prime p
    #[arg(long, value_parser = parse_biguint)]
    pub prime: BigUint,
    /// Number of p-adic digits to compute (N)
    #[arg(long)]
    pub digits: u32,
    /// Extra working digits (G)
    #[arg(long, default_value_t = 2)]
    pub guard: u32,
    /// Iteration scheme
    #[arg(long, value_enum, default_value_t = MethodChoice::Olver)]
    pub method: MethodChoice,
    /// Starting residue; required when p is too large to enumerate seeds
    #[arg(long, allow_hyphen_values = true, value_parser = parse_bigint)]
    pub seed: Option<BigInt>,
    /// Check each root against the brute-force oracles modulo p^M
    #[arg(long, value_name = "M")]
    pub verify: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = DigitStyleArg::Series)]
    pub digit_style: DigitStyleArg,
    /// Use `*` instead of `·` in series output
    #[arg(long)]
    pub ascii: bool,
    /// Maximum residues the exhaustive oracle may evaluate
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

fn parse_biguint(s: &str) -> Result<BigUint, String> {
    BigUint::from_str(s.trim()).map_err(|e| e.to_string())
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|e| e.to_string())
}

/// A validated run: everything needed before any solve starts.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub args: RunArgs,
    pub poly: Poly,
    pub ctx: PadicContext,
    pub methods: Vec<Method>,
    pub seeds: Vec<Seed>,
    pub singular: Vec<BigUint>,
    pub style: DigitStyle,
    pub warnings: Vec<String>,
}

/// Why a configuration cannot run, with the process exit code.
#[derive(Debug)]
pub struct ConfigError {
    pub code: i32,
    pub message: String,
}

impl ConfigError {
    fn usage(message: impl Into<String>) -> Self {
        ConfigError {
            code: 1,
            message: message.into(),
        }
    }

    fn no_seeds(message: impl Into<String>) -> Self {
        ConfigError {
            code: 2,
            message: message.into(),
        }
    }
}

impl RunConfig {
    pub fn validate(args: RunArgs, methods: Vec<Method>) -> Result<RunConfig, ConfigError> {
        let source =
            parse_source(&args.poly).map_err(|e| ConfigError::usage(format!("--poly: {e}")))?;
        let poly = source.poly;
        if poly.is_zero() {
            return Err(ConfigError::usage(
                "--poly: the polynomial is identically zero",
            ));
        }
        let ctx = PadicContext::new(args.prime.clone(), args.digits, args.guard)
            .map_err(|e| ConfigError::usage(e.to_string()))?;

        let mut warnings = Vec::new();
        if poly.degree().unwrap_or(0) > DEGREE_WARNING {
            warnings.push(format!(
                "warning: degree {} exceeds {DEGREE_WARNING}; seed search and Taylor shifts are quadratic in the degree",
                poly.degree().unwrap_or(0)
            ));
        }

        if let Some(m) = args.verify {
            if m < 1 || m > args.digits {
                return Err(ConfigError::usage(format!(
                    "--verify {m}: the oracle exponent must be between 1 and --digits ({})",
                    args.digits
                )));
            }
            let candidates = num_traits::pow(args.prime.clone(), m as usize);
            if candidates > BigUint::from(args.budget) {
                return Err(ConfigError::usage(format!(
                    "--verify {m}: {}^{m} = {candidates} residues exceeds --budget {}",
                    args.prime, args.budget
                )));
            }
        }

        let (seeds, singular) = match &args.seed {
            Some(x0) => {
                let seed = Seed::check(&poly, ctx.prime(), x0)
                    .map_err(|e| ConfigError::no_seeds(e.to_string()))?;
                (vec![seed], Vec::new())
            }
            None => {
                let set = find_seeds(&poly, ctx.prime()).map_err(|e| match e {
                    padic::Error::ZeroPolynomialModP(_) => ConfigError::no_seeds(e.to_string()),
                    padic::Error::PrimeTooLargeForEnumeration(_) => {
                        ConfigError::usage(format!("{e} with --seed"))
                    }
                    _ => ConfigError::usage(e.to_string()),
                })?;
                if set.simple.is_empty() {
                    let mut msg = format!("no simple roots mod {}", args.prime);
                    if !set.singular.is_empty() {
                        let list: Vec<String> =
                            set.singular.iter().map(ToString::to_string).collect();
                        msg.push_str(&format!(" (singular residues: {})", list.join(", ")));
                    }
                    return Err(ConfigError::no_seeds(msg));
                }
                (set.simple, set.singular)
            }
        };

        let style = match (args.digit_style, args.ascii) {
            (DigitStyleArg::LsdList, _) => DigitStyle::LsdList,
            (DigitStyleArg::Series, false) => DigitStyle::Series,
            (DigitStyleArg::Series, true) => DigitStyle::SeriesAscii,
        };

        Ok(RunConfig {
            args,
            poly,
            ctx,
            methods,
            seeds,
            singular,
            style,
            warnings,
        })
    }
}
