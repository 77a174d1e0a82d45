//! Exact mixed Eulerian numbers for every irreducible crystallographic root system.
//!
//! The main engine ([`petring`]) multiplies fundamental weights in the square-free
//! monomial basis of the Peterson cohomology ring. Independent checks live in
//! [`oracles`] (divided symmetrization, Weyl sums, quotient-ring linear algebra),
//! [`diagrams`] (the type A left-right diagram game) and [`mrules`] (structure
//! constants re-derived from Billey's formula).

pub mod cli;
pub mod diagrams;
pub mod error;
pub mod linalg;
pub mod mrules;
pub mod oracles;
pub mod petring;
pub mod rootsys;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number used throughout.
pub type Q = BigRational;

/// Builds `n/d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats a rational as an integer when the denominator is 1, otherwise as `p/q`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}
