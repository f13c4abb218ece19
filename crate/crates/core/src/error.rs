use std::fmt;

use thiserror::Error;

use crate::trigmat::Kind;

/// Why a sine or cosine matrix has no inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// `p²` divides `n`.
    SquareDivisor { n: u64, prime: u64 },
    /// `n = 4`: square-full, but only the cosine matrix is singular there.
    CosineAtFour,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::SquareDivisor { n, prime } => {
                write!(f, "{n} is divisible by {prime}²")
            }
            Obstruction::CosineAtFour => write!(
                f,
                "4 is divisible by 2²; at n = 4 only the sine matrix is invertible, the cosine matrix is (0)"
            ),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    ZeroArgument,

    #[error("modulus {n} is too small (need n >= {min})")]
    ModulusTooSmall { n: u64, min: u64 },

    #[error("{k} is not coprime to {n}")]
    NotCoprime { k: i64, n: u64 },

    #[error("{q} does not divide {n}")]
    NotDivisor { q: u64, n: u64 },

    #[error("the {kind} matrix for n = {n} is singular: {reason}")]
    Singular {
        n: u64,
        kind: Kind,
        reason: Obstruction,
    },

    #[error("hypothesis of {check} not met for n = {n}: {reason}")]
    Hypothesis {
        check: &'static str,
        n: u64,
        reason: String,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular to working precision (pivot {pivot:e} below {threshold:e})")]
    SingularToPrecision { pivot: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
