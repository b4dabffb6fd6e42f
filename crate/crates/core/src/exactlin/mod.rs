//! Exact rational and integer linear algebra.
//!
//! Everything here is exact: entries are arbitrary-precision rationals and
//! integer matrices are rational matrices whose denominators are all one.

mod matrix;
mod snf;
mod vector;

pub use matrix::{determinant, kernel_basis, rref, solve_affine, ExactMatrix, Rref};
pub use snf::{integer_kernel, smith_normal_form, SmithForm};
pub use vector::ExactVector;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix entry ({row},{col}) is not an integer")]
    NotIntegral { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Integer as a rational.
pub fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// The rational `num / den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
/// The zero vector maps to zeros.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Like [`primitive`] but as machine integers. Panics on overflow, which the
/// small arrangements handled here never reach.
pub fn primitive_i64(v: &[Rational]) -> Vec<i64> {
    primitive(v)
        .into_iter()
        .map(|x| i64::try_from(x).expect("coordinate overflow"))
        .collect()
}

/// Primitive form up to sign: the first nonzero entry is made positive.
pub fn primitive_unsigned(v: &[Rational]) -> Vec<BigInt> {
    let mut p = primitive(v);
    if let Some(first) = p.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            p.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    p
}
