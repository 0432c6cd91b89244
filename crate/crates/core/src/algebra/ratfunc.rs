use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::{eps_conj, eps_reflect, one_minus_i_eps, Field, GaussianRational, Poly};
use crate::error::{Error, Result};

/// Reduced quotient of polynomials, normalised so the denominator takes
/// the value 1 at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Reduce `num/den` and normalise `den(0) = 1`.
    pub fn reduce(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NonNormalizableDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let (num, den) = if den.degree() == Some(0) || num.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.degree().unwrap_or(0) > 0 {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            } else {
                (num, den)
            }
        };
        let inv = F::one() / den.coeff(0);
        Ok(RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiply by `p(x)` and divide by `q(x)`; `q(0) != 0`.
    pub fn mul_poly_div_poly(&self, p: &Poly<F>, q: &Poly<F>) -> Result<Self> {
        RatFunc::reduce(&self.num * p, &self.den * q)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::reduce(self.den.clone(), self.num.clone())
    }

    /// `k` with `den = lin^k` exactly, if the denominator is a pure power of
    /// the normalised linear factor `lin`.
    pub fn den_power_of(&self, lin: &Poly<F>) -> Option<u32> {
        let k = self.den.degree()? as u32;
        (lin.pow(k) == self.den).then_some(k)
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let c = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.num.is_zero() {
            return RatFunc {
                num: c,
                den: rhs.den.clone(),
            };
        }
        if c.is_zero() {
            return self.clone();
        }
        let (num, den) = if self.den == rhs.den {
            (&self.num + &c, self.den.clone())
        } else if let Some(q) = rhs.den.div_exact(&self.den) {
            (&(&self.num * &q) + &c, rhs.den.clone())
        } else if let Some(q) = self.den.div_exact(&rhs.den) {
            (&self.num + &(&c * &q), self.den.clone())
        } else {
            (
                &(&self.num * &rhs.den) + &(&c * &self.den),
                &self.den * &rhs.den,
            )
        };
        RatFunc::reduce(num, den).expect("denominators with nonzero constant term")
    }
}

impl RatFunc<GaussianRational> {
    /// Power of `(1 - iε)` forming the denominator, if it is of that form.
    pub fn one_minus_i_eps_power(&self) -> Option<u32> {
        if self.den.degree() == Some(0) {
            return Some(0);
        }
        self.den_power_of(&one_minus_i_eps())
    }

    /// Substitute ε → -ε.
    pub fn eps_reflect(&self) -> Self {
        RatFunc {
            num: eps_reflect(&self.num),
            den: eps_reflect(&self.den),
        }
    }

    /// Complex-conjugate every coefficient.
    pub fn conj(&self) -> Self {
        RatFunc {
            num: eps_conj(&self.num),
            den: eps_conj(&self.den),
        }
    }

    /// `p(ε) / (1 - iε)^k`, reduced.
    pub fn over_one_minus_i_eps(p: Poly<GaussianRational>, k: u32) -> Self {
        RatFunc::reduce(p, one_minus_i_eps().pow(k)).expect("(1 - iε)^k is normalisable")
    }
}

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        RatFunc::constant(F::one())
    }
}

impl<F: Field> Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.add_impl(rhs, false)
    }
}

impl<F: Field> Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.add_impl(rhs, true)
    }
}

impl<F: Field> Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("denominators with nonzero constant term")
    }
}

/// Panics when dividing by zero or by something vanishing at the origin;
/// use [`RatFunc::inv`] for a checked version.
impl<F: Field> Div for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        let inv = rhs.inv().expect("invalid rational-function division");
        self * &inv
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<F: Field> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}
