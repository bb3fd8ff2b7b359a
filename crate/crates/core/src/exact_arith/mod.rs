//! Exact arithmetic: arbitrary-precision integers and rationals, binomial
//! coefficients, modular kernels, valuated residues and the Lucas sequence
//! used by the central-binomial congruences.
//!
//! Big-integer paths are the trusted oracle for every check in the crate.
//! The [`word`] submodule holds the machine-word kernels used by the fast
//! modulo-prime-power evaluators.

mod binomial;
mod lucas;
mod modular;
mod residue;
mod valuated;
pub mod word;

use thiserror::Error;

pub use binomial::{binomial, binomial_signed, factorial, BinomialTable};
pub use lucas::{lucas_u, LucasState};
pub use modular::{legendre, mod_inverse, mod_pow, sqrt_mod};
pub use residue::Residue;
pub use valuated::{p_adic_valuation, valuated_from_rational, ValuatedResidue, Window};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: Integer, modulus: Integer },
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("{value} is not a quadratic residue modulo {prime}")]
    NonResidue { value: Integer, prime: u64 },
    #[error("{value} has negative {prime}-adic valuation")]
    NegativeValuation { value: Rational, prime: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(Integer),
}
