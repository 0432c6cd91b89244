//! Integer partitions and the statistics attached to their Young diagrams.
//!
//! Boxes have 1-based coordinates `(i, j)` (row, column). The α-content of
//! a box is `α(j-1) - i + 1`; for α = 1 this is the ordinary content `j - i`.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, Poly, Rational};
use crate::error::{Error, Result};

/// The Jack parameter; only the unitary (1) and orthogonal (2) cases occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alpha {
    One,
    Two,
}

impl Alpha {
    pub fn value(self) -> i64 {
        match self {
            Alpha::One => 1,
            Alpha::Two => 2,
        }
    }

    pub fn from_value(a: i64) -> Result<Self> {
        match a {
            1 => Ok(Alpha::One),
            2 => Ok(Alpha::Two),
            _ => Err(Error::Invalid(format!("alpha must be 1 or 2, got {a}"))),
        }
    }
}

/// A weakly decreasing sequence of positive integers.
///
/// Ordering is lexicographic on the parts, so `(4) > (3,1) > (2,2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts not decreasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sort the given positive parts into a partition; zeros are dropped.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1^n)`
    pub fn ones(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// `(n)`, or the empty partition for n = 0.
    pub fn row(n: usize) -> Self {
        Partition::from_parts(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ| - ℓ(λ)`
    pub fn rank(&self) -> usize {
        self.size() - self.len()
    }

    /// Number of parts equal to `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.0.iter().filter(|&&p| p == j).count()
    }

    pub fn is_hook(&self) -> bool {
        self.part(1) <= 1
    }

    /// `2λ = (2λ₁, 2λ₂, ...)`
    pub fn doubled(&self) -> Self {
        Partition(self.0.iter().map(|p| 2 * p).collect())
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.part(0);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// Boxes `(i, j)`, 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// α-contents `α(j-1) - i + 1` of every box.
    pub fn contents(&self, alpha: Alpha) -> impl Iterator<Item = i64> + '_ {
        let a = alpha.value();
        self.boxes().map(move |(i, j)| a * (j as i64 - 1) - i as i64 + 1)
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Comma-separated text form; `-` for the empty partition.
    pub fn to_code(&self) -> String {
        if self.0.is_empty() {
            "-".to_string()
        } else {
            self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n` in decreasing lexicographic order, optionally
/// restricted to those without parts equal to 1.
pub fn partitions_of(n: usize, forbid_ones: bool) -> Vec<Partition> {
    fn go(rest: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (min..=max.min(rest)).rev() {
            let left = rest - p;
            if left != 0 && left < min {
                continue;
            }
            cur.push(p);
            go(left, p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let min = if forbid_ones { 2 } else { 1 };
    go(n, n, min, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `z_λ = ∏_j j^{v_j} v_j!`
pub fn z_order(lambda: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut i = 0;
    let parts = lambda.parts();
    while i < parts.len() {
        let j = parts[i];
        let v = parts[i..].iter().take_while(|&&p| p == j).count();
        z *= num::pow(BigInt::from(j), v) * factorial(v);
        i += v;
    }
    z
}

fn dim_from_products(lambda: &Partition) -> BigInt {
    let l = lambda.len() as i64;
    let parts: Vec<i64> = lambda.parts().iter().map(|&p| p as i64).collect();
    let mut num = factorial(lambda.size());
    let mut den = BigInt::one();
    for i in 0..parts.len() {
        let row = i as i64 + 1;
        den *= factorial((parts[i] - row + l) as usize);
        for j in i + 1..parts.len() {
            num *= parts[i] - parts[j] + (j as i64 + 1) - row;
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

fn dim_from_hooks(lambda: &Partition) -> BigInt {
    let conj = lambda.conjugate();
    let hooks = lambda.boxes().fold(BigInt::one(), |acc, (i, j)| {
        acc * ((lambda.part(i - 1) - j) + (conj.part(j - 1) - i) + 1)
    });
    factorial(lambda.size()) / hooks
}

/// Dimension of the irreducible representation of `S_n` labelled by λ.
///
/// Computed from the product formula over rows and cross-checked against
/// the hook-length formula.
pub fn irrep_dim(lambda: &Partition) -> BigInt {
    let d = dim_from_products(lambda);
    let h = dim_from_hooks(lambda);
    assert_eq!(d, h, "dimension formulas disagree for {lambda}");
    d
}

/// `(t_α(λ), D_α(λ))`: product of the nonzero α-contents and the number of
/// boxes with zero α-content.
pub fn content_stats(lambda: &Partition, alpha: Alpha) -> (BigInt, usize) {
    let mut t = BigInt::one();
    let mut d = 0;
    for c in lambda.contents(alpha) {
        if c == 0 {
            d += 1;
        } else {
            t *= c;
        }
    }
    (t, d)
}

pub fn durfee(lambda: &Partition, alpha: Alpha) -> usize {
    lambda.contents(alpha).filter(|&c| c == 0).count()
}

/// `[N]^λ_(α) = ∏_□ (N + c_α(□))` as a polynomial in N.
pub fn rising_product(lambda: &Partition, alpha: Alpha) -> Poly<Rational> {
    lambda.contents(alpha).fold(Poly::one(), |acc, c| {
        &acc * &Poly::new(vec![int(c), Rational::one()])
    })
}

/// `[N]^λ_(α)` at an integer N.
pub fn rising_product_at(lambda: &Partition, alpha: Alpha, n: i64) -> BigInt {
    lambda
        .contents(alpha)
        .fold(BigInt::one(), |acc, c| acc * BigInt::from(n + c))
}

/// Complete homogeneous symmetric polynomial `h_s` of the given values.
pub fn complete_homogeneous(values: impl IntoIterator<Item = i64>, s: usize) -> BigInt {
    let mut h = vec![BigInt::zero(); s + 1];
    h[0] = BigInt::one();
    for x in values {
        let x = BigInt::from(x);
        for k in 1..=s {
            let prev = h[k - 1].clone();
            h[k] += &x * prev;
        }
    }
    h.swap_remove(s)
}

/// `h_s` of the content alphabet `{c(□) : □ ∈ λ}`.
pub fn content_h(lambda: &Partition, s: usize) -> BigInt {
    complete_homogeneous(lambda.contents(Alpha::One), s)
}

/// `ρ + ν`: the partition with the union of the parts.
pub fn merge(rho: &Partition, nu: &Partition) -> Partition {
    let mut parts = rho.0.clone();
    parts.extend_from_slice(&nu.0);
    Partition::from_parts(parts)
}

/// `λ ⊇ μ`: the diagram of λ covers that of μ.
pub fn covers(lambda: &Partition, mu: &Partition) -> bool {
    mu.len() <= lambda.len() && (0..mu.len()).all(|i| lambda.part(i) >= mu.part(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(4, true), vec![p("4"), p("2,2")]);
        assert_eq!(partitions_of(0, false), vec![Partition::empty()]);
        assert_eq!(partitions_of(5, false).len(), 7);
        let counts: Vec<usize> = (0..=12).map(|n| partitions_of(n, false).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let all = partitions_of(6, false);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert!(partitions_of(1, true).is_empty());
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_order(&p("2,2")), BigInt::from(8));
        assert_eq!(z_order(&p("2,1")), BigInt::from(2));
        assert_eq!(z_order(&Partition::ones(5)), BigInt::from(120));
    }

    #[test]
    fn dims() {
        assert_eq!(irrep_dim(&p("2,1")), BigInt::from(2));
        assert_eq!(irrep_dim(&p("7")), BigInt::from(1));
        assert_eq!(irrep_dim(&p("3,1")), BigInt::from(3));
        assert_eq!(irrep_dim(&Partition::empty()), BigInt::from(1));
    }

    #[test]
    fn sum_of_squared_dims_and_class_sizes() {
        for n in 0..=8 {
            let fact = factorial(n);
            let parts = partitions_of(n, false);
            let d2: BigInt = parts.iter().map(|l| irrep_dim(l).pow(2)).sum();
            assert_eq!(d2, fact);
            let classes: BigInt = parts.iter().map(|l| &fact / z_order(l)).sum();
            assert_eq!(classes, fact);
        }
    }

    #[test]
    fn content_stats_example_diagram() {
        // 1-contents of (4,4,2,2,1): rows 0 1 2 3 | -1 0 1 2 | -2 -1 | -3 -2 | -4
        let l = p("4,4,2,2,1");
        let (t1, d1) = content_stats(&l, Alpha::One);
        assert_eq!(d1, 2);
        assert_eq!(t1, BigInt::from(576));
        let (_, d2) = content_stats(&l, Alpha::Two);
        assert_eq!(d2, 2);
        assert_eq!(content_stats(&p("1"), Alpha::One), (BigInt::one(), 1));
        assert_eq!(content_stats(&p("1"), Alpha::Two), (BigInt::one(), 1));
    }

    #[test]
    fn rising_products() {
        let r = rising_product(&p("2"), Alpha::One);
        assert_eq!(r, Poly::new(vec![int(0), int(1), int(1)]));
        // [M+1]^{(2)}_{(2)} = (M+1)(M+3)
        for m in 0..6 {
            assert_eq!(
                rising_product_at(&p("2"), Alpha::Two, m + 1),
                BigInt::from((m + 1) * (m + 3))
            );
            assert_eq!(
                rising_product_at(&p("1,1"), Alpha::Two, m + 1),
                BigInt::from(m * (m + 1))
            );
        }
    }

    #[test]
    fn rising_product_lowest_term() {
        for n in 1..=8 {
            for l in partitions_of(n, false) {
                for a in [Alpha::One, Alpha::Two] {
                    let poly = rising_product(&l, a);
                    let (t, d) = content_stats(&l, a);
                    let lowest = poly.coeffs().iter().position(|c| !c.is_zero()).unwrap();
                    assert_eq!(lowest, d, "{l} alpha {a:?}");
                    assert_eq!(poly.coeff(d), Rational::from_integer(t));
                }
            }
        }
    }

    #[test]
    fn durfee_hooks() {
        for n in 1..=8 {
            for l in partitions_of(n, false) {
                assert_eq!(durfee(&l, Alpha::One) == 1, l.is_hook(), "{l}");
                assert_eq!(durfee(&l, Alpha::Two) == 1, l.part(2) <= 1, "{l}");
            }
        }
    }

    #[test]
    fn content_h_examples() {
        assert_eq!(content_h(&p("2"), 1), BigInt::from(1));
        assert_eq!(content_h(&p("1,1"), 1), BigInt::from(-1));
        for s in 1..5 {
            assert!(content_h(&p("1"), s).is_zero());
        }
        assert_eq!(content_h(&p("1"), 0), BigInt::one());
        // A = {0, 1, -1}: h_2 = 1 + 1 - 1 = 1
        assert_eq!(content_h(&p("2,1"), 2), BigInt::from(1));
    }

    #[test]
    fn merge_and_cover() {
        assert_eq!(merge(&p("1"), &p("2")), p("2,1"));
        assert_eq!(merge(&p("1,1"), &p("2")), p("2,1,1"));
        assert_eq!(merge(&Partition::empty(), &p("3,2")), p("3,2"));
        assert!(covers(&p("3,1"), &p("2,1")));
        assert!(!covers(&p("2,2"), &p("3")));
        assert!(covers(&p("2,2"), &p("2,2")));
        assert!(!covers(&p("2"), &p("1,1")));
    }

    #[test]
    fn text_encoding() {
        assert_eq!(p("4,4,2,2,1").to_code(), "4,4,2,2,1");
        assert_eq!(p("-"), Partition::empty());
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,x".parse::<Partition>().is_err());
    }
}
