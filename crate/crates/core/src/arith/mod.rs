//! Exact coefficient arithmetic and sparse Laurent polynomials.

mod coeffs;
mod parse;
mod poly;

pub use coeffs::{binomial, gcd, is_prime, Coeffs};
pub use parse::parse_poly;
pub use poly::{Exponents, Poly};
