use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use super::{Field, GaussianRational, RatFunc, Rational};

/// Truncated Laurent series in `1/M`.
///
/// Key `k` holds the coefficient of `M^(-k)`; negative keys are positive
/// powers of `M`. The series is exact for every `k <= trunc` and says
/// nothing beyond it. Absent keys are zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C> {
    terms: BTreeMap<i64, C>,
    trunc: i64,
}

impl<C: Field> Series<C> {
    pub fn new(terms: impl IntoIterator<Item = (i64, C)>, trunc: i64) -> Self {
        let mut s = Series::zero(trunc);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    /// The zero series, exact through `trunc`.
    pub fn zero(trunc: i64) -> Self {
        Series {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub fn one(trunc: i64) -> Self {
        Series::new([(0, C::one())], trunc)
    }

    /// `c · M^(-k)`.
    pub fn monomial(c: C, k: i64, trunc: i64) -> Self {
        Series::new([(k, c)], trunc)
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<i64, C> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest order with a possibly nonzero coefficient: the smallest stored
    /// key, or `trunc + 1` for a series known to vanish through `trunc`.
    pub fn valuation(&self) -> i64 {
        self.terms
            .keys()
            .next()
            .copied()
            .unwrap_or(self.trunc + 1)
    }

    /// Accumulate `c · M^(-k)`; ignored beyond the truncation order.
    pub fn add_term(&mut self, k: i64, c: C) {
        if k > self.trunc || c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&k) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(k, merged);
        }
    }

    pub fn with_trunc(&self, trunc: i64) -> Self {
        Series::new(
            self.terms
                .iter()
                .filter(|(&k, _)| k <= trunc)
                .map(|(&k, c)| (k, c.clone())),
            trunc.min(self.trunc),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = self.with_trunc(trunc);
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Series {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Product; exact through `min(trunc_a + val_b, trunc_b + val_a)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let trunc = (self.trunc + rhs.valuation()).min(rhs.trunc + self.valuation());
        let mut out = Series::zero(trunc);
        for (&ka, a) in &self.terms {
            for (&kb, b) in &rhs.terms {
                if ka + kb <= trunc {
                    out.add_term(ka + kb, a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        Series::new(
            self.terms.iter().map(|(&k, a)| (k, a.clone() * c.clone())),
            self.trunc,
        )
    }

    /// Multiply by `M^(-shift)`.
    pub fn shift(&self, shift: i64) -> Self {
        Series {
            terms: self.terms.iter().map(|(&k, c)| (k + shift, c.clone())).collect(),
            trunc: self.trunc + shift,
        }
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(self.terms.iter().map(|(&k, c)| (k, f(c))), self.trunc)
    }
}

impl Series<RatFunc<GaussianRational>> {
    /// Partial sum at integer `M` and rational ε. Terms beyond the
    /// truncation order are not included.
    ///
    /// Returns `None` if some coefficient has a pole at ε.
    pub fn eval(&self, m: u64, eps: &Rational) -> Option<GaussianRational> {
        assert!(m >= 1, "M must be positive");
        let eps = GaussianRational::new(eps.clone(), Rational::zero());
        let m = Rational::from_integer(BigInt::from(m));
        let mut acc = GaussianRational::zero();
        for (&k, c) in &self.terms {
            let power = if k >= 0 {
                Rational::one() / num::pow(m.clone(), k as usize)
            } else {
                num::pow(m.clone(), k.unsigned_abs() as usize)
            };
            acc += c.eval(&eps)? * GaussianRational::new(power, Rational::zero());
        }
        Some(acc)
    }

    /// Specialise every coefficient at ε = 0.
    pub fn at_eps_zero(&self) -> Series<Rational> {
        Series::new(
            self.terms.iter().map(|(&k, c)| {
                let v = c.eval(&GaussianRational::zero()).expect("den(0) = 1");
                assert!(v.im.is_zero(), "non-real coefficient at ε = 0");
                (k, v.re)
            }),
            self.trunc,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use proptest::prelude::*;

    type S = Series<Rational>;

    #[test]
    fn product_truncation() {
        // (M + 2) · (1/M) = 1 + 2/M, exact through 1/M^2
        let a = S::new([(-1, int(1)), (0, int(2))], 3);
        let b = S::new([(1, int(1))], 3);
        let p = a.mul(&b);
        assert_eq!(p, S::new([(0, int(1)), (1, int(2))], 2));
    }

    #[test]
    fn product_with_zero() {
        let a = S::new([(0, int(3))], 4);
        let z = S::zero(4);
        let p = a.mul(&z);
        assert!(p.is_zero());
        assert_eq!(p.trunc(), 4);
    }

    #[test]
    fn joint_truncation_drops_cross_term() {
        let a = S::new([(0, int(1)), (1, int(5))], 1);
        let b = S::new([(0, int(1)), (1, int(7))], 1);
        assert_eq!(a.mul(&b), S::new([(0, int(1)), (1, int(12))], 1));
    }

    #[test]
    fn terms_beyond_trunc_are_not_stored() {
        let a = S::new([(0, int(1)), (3, int(1))], 2);
        assert_eq!(a.terms().len(), 1);
    }

    #[test]
    fn eval_examples() {
        use crate::algebra::{gauss, RatFunc};
        use crate::EpsRational;
        let s = Series::new([(3, EpsRational::constant(gauss(int(-1), int(0))))], 3);
        assert_eq!(s.eval(2, &int(0)).unwrap(), gauss(rat(-1, 8), int(0)));
        assert!(Series::<EpsRational>::zero(5).eval(7, &int(1)).unwrap().is_zero());
        let s = Series::new(
            [(1, RatFunc::over_one_minus_i_eps(crate::EpsPolynomial::one(), 1))],
            1,
        );
        assert_eq!(s.eval(4, &int(1)).unwrap(), gauss(rat(1, 8), rat(1, 8)));
    }

    fn small_series() -> impl Strategy<Value = S> {
        proptest::collection::vec((-1i64..4, -5i64..6), 0..5)
            .prop_map(|ts| S::new(ts.into_iter().map(|(k, c)| (k, int(c))), 4))
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_series(), b in small_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_associates(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
