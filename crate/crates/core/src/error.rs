use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared across the crate.
///
/// Precision-related variants are recoverable by re-running with a higher
/// cap; the remaining variants indicate bad inputs or exhausted search
/// bounds and carry enough context to report the offending quantity.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("decimal literal provides {available} guaranteed fractional digits, request needs more (radius 10^-{available} > 2^-{requested_bits})")]
    DecimalPrecisionExhausted { available: u32, requested_bits: u32 },

    #[error("continued-fraction rule `{rule}` stopped at depth {depth}: {reason}")]
    RuleExhausted { rule: String, depth: usize, reason: String },

    #[error("enclosure still straddles a half-integer at {bits} bits")]
    AmbiguousAtHalfInteger { bits: u32 },

    #[error("sign of enclosure not certified within the {max_bits}-bit precision cap")]
    PrecisionCapExceeded { max_bits: u32 },

    #[error("invalid alpha spec `{spec}`: {reason}")]
    BadAlphaSpec { spec: String, reason: String },

    #[error("invalid rho spec `{spec}`: {reason}")]
    BadRhoSpec { spec: String, reason: String },

    #[error("table depth {depth} too shallow: {need}")]
    DepthExhausted { depth: usize, need: String },

    #[error("integer {k} is out of range for a table of depth {depth} (needs k < q_{{depth+1}})")]
    IntTooLarge { k: BigInt, depth: usize },

    #[error("could not certify Ostrowski digit at index {index} ({reason})")]
    AmbiguousDigit { index: usize, reason: String },

    #[error("rho lies in Z·alpha + Z (digit index {index}); tail digits are degenerate")]
    BoundaryCase { index: usize },

    #[error("no witness index within table/scan bounds for target {target} at tolerance {tol}")]
    NoWitnessAtScale { target: String, tol: String },

    #[error("mu evidence at working depth contradicts the zero-or-infinity hypothesis: {detail}")]
    HypothesisUnmet { detail: String },

    #[error("Bohr window enumeration exceeded {cap} members; refine epsilon or bound")]
    BohrSetTooLarge { cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
