use num_bigint::BigUint;
use thiserror::Error;

use crate::parse::ParseError;
use crate::solve::SolveTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a solve run stopped without reaching the target valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The iteration cap was reached.
    IterationCap,
    /// A step returned an iterate whose reliable digits fall below the target.
    PrecisionExhausted,
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StopReason::IterationCap => f.write_str("iteration cap reached"),
            StopReason::PrecisionExhausted => f.write_str("precision exhausted"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(BigUint),
    #[error("invalid precision: target digits must be at least 1 (got {0})")]
    InvalidPrecision(u32),
    #[error("operands belong to different p-adic contexts")]
    ContextMismatch,
    #[error("element is not a p-adic unit")]
    NotAUnit,
    #[error("valuation underflow: numerator valuation {num} is below denominator valuation {den}")]
    ValuationUnderflow { num: u32, den: u32 },
    #[error("division by the zero residue")]
    DivisionByZeroResidue,
    #[error("requested {requested} digits but only {available} are available")]
    PrecisionExceeded { requested: u32, available: u32 },
    #[error("the zero polynomial has no meaningful roots")]
    EmptyPolynomial,
    #[error("every coefficient vanishes mod {0}")]
    ZeroPolynomialModP(BigUint),
    #[error("prime {0} is too large for exhaustive seed enumeration; supply a seed")]
    PrimeTooLargeForEnumeration(BigUint),
    #[error("derivative is not a unit at the current iterate")]
    SingularPoint,
    #[error("seed {x0} does not satisfy Hensel's criterion: {detail}")]
    InvalidSeed { x0: BigUint, detail: &'static str },
    #[error("seed is singular (f and f' both vanish mod p)")]
    SingularSeed,
    #[error("{method} did not converge: {reason}")]
    NotConverged {
        method: &'static str,
        reason: StopReason,
        trace: Box<SolveTrace>,
    },
    #[error(
        "convergence order needs at least 3 finite, strictly increasing valuations (got {usable})"
    )]
    InsufficientTrace { usable: usize },
    #[error("oracle budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: BigUint, budget: u64 },
    #[error("digit {digit} is out of range for p = {p}")]
    DigitOutOfRange { digit: BigUint, p: BigUint },
    #[error(transparent)]
    Parse(#[from] ParseError),
}
