//! Explicit Burgess bounds for Dirichlet character sums over composite moduli.
//!
//! The crate evaluates the explicit bound and its derived quantities, and
//! checks every ingredient that can be checked at desk scale:
//!
//! - [`arithmetic`]: factorization and multiplicative functions.
//! - [`characters`]: Dirichlet characters, their sums and complete sums.
//! - [`weil`]: the shift-tuple quantities and the Weil-type moment inequality.
//! - [`burgess`]: the bound itself, evaluated in the log domain.
//! - [`certify`]: outward-rounded interval certification of numeric claims.
//!
//! The crate is `no_std` and only needs an allocator. High precision work
//! runs on [`astro_float`] at [`hp::PRECISION_BITS`] bits.

#![no_std]
#![forbid(unsafe_code)]
// negated comparisons are NaN guards
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod arithmetic;
pub mod burgess;
pub mod certify;
pub mod characters;
pub mod hp;
pub mod interval;
pub mod logreal;
pub mod report;
pub mod weil;

pub use arithmetic::{factorize, FactoredInteger};
pub use characters::{CharacterValue, DirichletCharacter, UnitGroupStructure};
pub use interval::Interval;
pub use logreal::LogReal;
pub use report::{Status, VerificationReport};

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Zero where a positive integer is required.
    NotPositive,
    /// A value does not fit the fixed-width representation.
    Overflow,
    InvalidParameter(&'static str),
    TupleLength {
        expected: usize,
        found: usize,
    },
    /// Brute-force enumeration would exceed its budget.
    BudgetExceeded {
        required: u128,
        budget: u128,
    },
    /// The tuple has at most `r` distinct entries.
    NotGoodTuple,
    /// Exact mode needs the factorization of the modulus.
    MissingFactorization,
    /// `A * B` disagrees with `kappa * N`.
    Inconsistent {
        relative_deviation: f64,
    },
    /// Interval or high-precision domain violation.
    Domain(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPositive => write!(f, "expected a positive integer"),
            Error::Overflow => write!(f, "value overflows 64-bit arithmetic"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::TupleLength { expected, found } => {
                write!(f, "tuple has length {found}, expected {expected}")
            }
            Error::BudgetExceeded { required, budget } => {
                write!(f, "enumeration of {required} tuples exceeds budget {budget}")
            }
            Error::NotGoodTuple => write!(f, "tuple has too few distinct entries"),
            Error::MissingFactorization => {
                write!(f, "exact mode requires the factorization of q")
            }
            Error::Inconsistent { relative_deviation } => write!(f, "A*B deviates from kappa*N by relative {relative_deviation:e}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
