//! Exact and modular arithmetic for Apery-type polynomials and the
//! congruences satisfied by their weighted sums.

pub mod congruences;
pub mod exact_arith;
pub mod identities;
pub mod polynomial;
pub mod primes;
pub mod sequences;

pub use exact_arith::{Integer, Rational, Residue};
pub use polynomial::IntPolynomial;
