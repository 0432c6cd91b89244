//! Exact scalar and series arithmetic.
//!
//! Everything here is generic over a coefficient [`Field`]; the concrete
//! instantiations used by the rest of the crate are the aliases
//! re-exported from the crate root ([`crate::GaussianRational`],
//! [`crate::EpsRational`], [`crate::MSeries`], ...).

pub mod linalg;
mod poly;
mod ratfunc;
mod series;
pub mod wire;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, Complex, One, Zero};

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use series::Series;

use crate::error::{Error, Result};

/// Exact field arithmetic: everything a coefficient ring needs for
/// polynomial division and gcd.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

pub type Rational = BigRational;
pub type GaussianRational = Complex<Rational>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn gauss_real(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

/// The imaginary unit in ℚ(i).
pub fn imag_unit() -> GaussianRational {
    Complex::new(Rational::zero(), Rational::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact arithmetic in ℚ(i); division by zero is reported rather than panicking.
pub fn gauss_arith(
    a: &GaussianRational,
    b: &GaussianRational,
    op: ArithOp,
) -> Result<GaussianRational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn gauss_conj(z: &GaussianRational) -> GaussianRational {
    z.conj()
}

/// The ε-polynomial `1 - iε`, the only factor ever appearing in series denominators.
pub fn one_minus_i_eps() -> Poly<GaussianRational> {
    Poly::new(vec![GaussianRational::one(), -imag_unit()])
}

/// Substitute ε → -ε.
pub fn eps_reflect(p: &Poly<GaussianRational>) -> Poly<GaussianRational> {
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect(),
    )
}

pub fn eps_conj(p: &Poly<GaussianRational>) -> Poly<GaussianRational> {
    Poly::new(p.coeffs().iter().map(|c| c.conj()).collect())
}
