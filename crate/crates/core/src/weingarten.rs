//! Fixed-energy Weingarten functions `Wg^(1)_M` (CUE) and `Wg^(2)_M` (COE).

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{int, linalg, Poly, Rational, Series};
use crate::error::{Error, Result};
use crate::jack::theta;
use crate::partitions::{factorial, irrep_dim, partitions_of, Alpha, Partition};
use crate::permutations::{chi, Permutation};

/// A rational function of M of the form `num(M) / (c · ∏_a (M + a)^{e_a})`,
/// kept reduced: no factor `(M + a)` divides the numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WgValue {
    num: Poly<Rational>,
    den_scale: Rational,
    factors: BTreeMap<i64, u32>,
}

impl WgValue {
    fn zero() -> Self {
        WgValue {
            num: Poly::zero(),
            den_scale: Rational::one(),
            factors: BTreeMap::new(),
        }
    }

    /// `Σ_k c_k / ∏_{a ∈ shifts_k} (M + a)`, reduced.
    fn from_terms(terms: Vec<(Rational, Vec<i64>)>) -> Self {
        let mut exps: Vec<BTreeMap<i64, u32>> = Vec::new();
        let mut common: BTreeMap<i64, u32> = BTreeMap::new();
        for (_, shifts) in &terms {
            let mut e = BTreeMap::new();
            for &a in shifts {
                *e.entry(a).or_insert(0) += 1;
            }
            for (&a, &k) in &e {
                let slot = common.entry(a).or_insert(0);
                *slot = (*slot).max(k);
            }
            exps.push(e);
        }
        let mut num = Poly::zero();
        for ((c, _), e) in terms.iter().zip(&exps) {
            if c.is_zero() {
                continue;
            }
            let mut t = Poly::constant(c.clone());
            for (&a, &k) in &common {
                let missing = k - e.get(&a).copied().unwrap_or(0);
                t = &t * &linear(a).pow(missing);
            }
            num = &num + &t;
        }
        if num.is_zero() {
            return WgValue::zero();
        }
        // cancel common linear factors
        for (&a, k) in common.iter_mut() {
            while *k > 0 {
                match num.deflate(&int(-a)) {
                    Some(q) => {
                        num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        common.retain(|_, k| *k > 0);
        // integer numerator, positive scalar in the denominator
        let lcm = num
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = num.scale(&int(lcm.clone()));
        let gcd = num
            .coeffs()
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let num = num.scale(&Rational::new(BigInt::one(), gcd.clone()));
        WgValue {
            num,
            den_scale: Rational::new(lcm, gcd),
            factors: common,
        }
    }

    /// Numerator polynomial in M, integer coefficients.
    pub fn numerator(&self) -> &Poly<Rational> {
        &self.num
    }

    /// The full denominator polynomial in M.
    pub fn denominator(&self) -> Poly<Rational> {
        self.factors
            .iter()
            .fold(Poly::constant(self.den_scale.clone()), |acc, (&a, &k)| {
                &acc * &linear(a).pow(k)
            })
    }

    /// Denominator factors `(a, e)` meaning `(M + a)^e`, and the scalar.
    pub fn denominator_factors(&self) -> (&Rational, &BTreeMap<i64, u32>) {
        (&self.den_scale, &self.factors)
    }

    /// Exact value at an integer M.
    pub fn eval(&self, m: i64) -> Result<Rational> {
        let mut den = self.den_scale.clone();
        for (&a, &k) in &self.factors {
            if m + a == 0 {
                return Err(Error::Pole {
                    m,
                    factor: factor_string(a, 1),
                });
            }
            den *= num::pow(int(m + a), k as usize);
        }
        Ok(self.num.eval(&int(m)) / den)
    }

    /// Expansion in `1/M`, exact through `1/M^trunc`.
    pub fn expand(&self, trunc: i64) -> Series<Rational> {
        let deg_num = self.num.degree().unwrap_or(0) as i64;
        let inner = trunc + deg_num;
        let mut s = Series::new(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| (-(j as i64), c / &self.den_scale)),
            inner,
        );
        for (&a, &k) in &self.factors {
            // 1/(M + a) = Σ_{j≥0} (-a)^j M^{-j-1}
            let geometric = Series::new(
                (0..=inner).map(|j| (j + 1, num::pow(int(-a), j as usize))),
                inner,
            );
            for _ in 0..k {
                s = s.mul(&geometric);
            }
        }
        s.with_trunc(trunc)
    }

    /// `{"num": [...], "den": [...], "display": "..."}` with ascending
    /// integer coefficients as strings.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct J {
            num: Vec<String>,
            den: Vec<String>,
            display: String,
        }
        let strings = |p: &Poly<Rational>| p.coeffs().iter().map(|c| c.to_string()).collect();
        serde_json::to_value(J {
            num: strings(&self.num),
            den: strings(&self.denominator()),
            display: self.to_string(),
        })
        .expect("plain data serialises")
    }

    /// LaTeX rendering, e.g. `-\frac{1}{(M-1)M(M+1)}`.
    pub fn to_latex(&self) -> String {
        if self.num.is_zero() {
            return "0".into();
        }
        let (neg, num) = self.split_sign();
        let num_s = poly_string(&num);
        let den = self.den_items().join("");
        let sign = if neg { "-" } else { "" };
        if den.is_empty() {
            format!("{sign}{num_s}")
        } else {
            format!("{sign}\\frac{{{num_s}}}{{{den}}}")
        }
    }

    fn split_sign(&self) -> (bool, Poly<Rational>) {
        let neg = self.num.leading().is_some_and(|c| c.is_negative());
        let num = if neg { -self.num.clone() } else { self.num.clone() };
        (neg, num)
    }

    fn den_items(&self) -> Vec<String> {
        let mut items = Vec::new();
        if !self.den_scale.is_one() {
            items.push(self.den_scale.to_string());
        }
        items.extend(self.factors.iter().map(|(&a, &k)| factor_string(a, k)));
        items
    }
}

impl fmt::Display for WgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "0");
        }
        let (neg, num) = self.split_sign();
        let sign = if neg { "-" } else { "" };
        let mut num_s = poly_string(&num);
        if num.degree().unwrap_or(0) > 0 && num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
        {
            num_s = format!("({num_s})");
        }
        let items = self.den_items();
        match items.len() {
            0 => write!(f, "{sign}{num_s}"),
            1 => write!(f, "{sign}{num_s}/{}", items[0]),
            _ => write!(f, "{sign}{num_s}/({})", items.join("")),
        }
    }
}

fn linear(a: i64) -> Poly<Rational> {
    Poly::new(vec![int(a), Rational::one()])
}

fn factor_string(a: i64, k: u32) -> String {
    let base = match a.cmp(&0) {
        std::cmp::Ordering::Equal => "M".to_string(),
        std::cmp::Ordering::Greater => format!("(M+{a})"),
        std::cmp::Ordering::Less => format!("(M-{})", -a),
    };
    if k == 1 {
        base
    } else {
        format!("{base}^{k}")
    }
}

/// Descending-power rendering of an integer polynomial in M.
fn poly_string(p: &Poly<Rational>) -> String {
    let mut out = String::new();
    for (j, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push(if c.is_negative() { '-' } else { '+' });
        }
        let mono = match j {
            0 => String::new(),
            1 => "M".into(),
            _ => format!("M^{j}"),
        };
        if mag.is_one() && j > 0 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}{mono}"));
        }
    }
    out
}

/// `Wg^(1)_M(class) = (1/n!) Σ_λ d_λ χ_λ(class) / [M]^λ_(1)`, symbolic in M.
pub fn wg_cue(class: &Partition) -> WgValue {
    let n = class.size();
    let terms = partitions_of(n, false)
        .into_iter()
        .map(|l| {
            let c = Rational::new(irrep_dim(&l) * chi(&l, class), factorial(n));
            (c, l.contents(Alpha::One).collect())
        })
        .collect();
    WgValue::from_terms(terms)
}

/// `Wg^(2)_M(coset) = (2ⁿn!/(2n)!) Σ_λ d_{2λ} ω_λ(coset) / [M+1]^λ_(2)`,
/// symbolic in M.
pub fn wg_coe(coset: &Partition) -> WgValue {
    let n = coset.size();
    let pre = Rational::new(
        num::pow(BigInt::from(2), n) * factorial(n),
        factorial(2 * n),
    );
    let terms = partitions_of(n, false)
        .into_iter()
        .map(|l| {
            let c = &pre * int(irrep_dim(&l.doubled())) * theta(Alpha::Two, &l, coset);
            (c, l.contents(Alpha::Two).map(|x| x + 1).collect())
        })
        .collect();
    WgValue::from_terms(terms)
}

fn check_m(m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::Invalid(format!("M must be positive, got {m}")));
    }
    Ok(())
}

/// `Wg^(1)_M(class)` at an integer M; a pole is reported with its factor.
pub fn wg_cue_at(m: i64, class: &Partition) -> Result<Rational> {
    check_m(m)?;
    wg_cue(class).eval(m)
}

pub fn wg_coe_at(m: i64, coset: &Partition) -> Result<Rational> {
    check_m(m)?;
    wg_coe(coset).eval(m)
}

/// Weingarten values by cycle type from inverting the Gram matrix
/// `G_{στ} = M^{#cycles(σ⁻¹τ)}` of `S_n`.
pub fn wg_cue_gram_oracle(m: i64, n: usize) -> Result<BTreeMap<Partition, Rational>> {
    let perms = Permutation::all(n);
    let gram: Vec<Vec<Rational>> = perms
        .iter()
        .map(|s| {
            let si = s.inverse();
            perms
                .iter()
                .map(|t| num::pow(int(m), si.compose(t).num_cycles()))
                .collect()
        })
        .collect();
    let inv = linalg::inverse(&gram)?;
    let id = perms
        .iter()
        .position(|p| *p == Permutation::identity(n))
        .expect("identity enumerated");
    let mut out = BTreeMap::new();
    for (t, v) in perms.iter().zip(&inv[id]) {
        let prev = out.insert(t.cycle_type(), v.clone());
        if let Some(p) = prev {
            assert_eq!(&p, v, "Gram inverse is not a class function");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn cue_examples() {
        assert_eq!(wg_cue(&p("2")).to_string(), "-1/((M-1)M(M+1))");
        assert_eq!(wg_cue(&p("1")).to_string(), "1/M");
        assert_eq!(wg_cue(&p("1,1")).to_string(), "1/((M-1)(M+1))");
        assert_eq!(wg_cue_at(5, &p("2")).unwrap(), rat(-1, 120));
    }

    #[test]
    fn coe_examples() {
        assert_eq!(wg_coe(&p("1,1")).to_string(), "(M+2)/(M(M+1)(M+3))");
        assert_eq!(wg_coe(&p("2")).to_string(), "-1/(M(M+1)(M+3))");
        assert_eq!(wg_coe(&p("1")).to_string(), "1/(M+1)");
        assert_eq!(wg_coe_at(4, &p("1,1")).unwrap(), rat(3, 70));
    }

    #[test]
    fn poles_are_named() {
        assert_eq!(
            wg_cue_at(1, &p("2")),
            Err(Error::Pole {
                m: 1,
                factor: "(M-1)".into()
            })
        );
        assert!(wg_cue_at(0, &p("1")).is_err());
    }

    #[test]
    fn gram_oracle_examples() {
        assert_eq!(wg_cue_gram_oracle(5, 2).unwrap()[&p("2")], rat(-1, 120));
        assert_eq!(wg_cue_gram_oracle(4, 1).unwrap()[&p("1")], rat(1, 4));
        assert_eq!(
            wg_cue_gram_oracle(6, 3).unwrap()[&p("3")],
            wg_cue_at(6, &p("3")).unwrap()
        );
    }

    #[test]
    fn latex_and_json() {
        assert_eq!(wg_cue(&p("2")).to_latex(), "-\\frac{1}{(M-1)M(M+1)}");
        assert_eq!(wg_coe(&p("1,1")).to_latex(), "\\frac{M+2}{M(M+1)(M+3)}");
        let j = wg_coe(&p("1,1")).to_json();
        assert_eq!(j["num"], serde_json::json!(["2", "1"]));
        assert_eq!(j["display"], "(M+2)/(M(M+1)(M+3))");
    }

    #[test]
    fn expansion_in_inverse_m() {
        // -1/((M-1)M(M+1)) = -1/M³ - 1/M⁵ - ...
        let s = wg_cue(&p("2")).expand(6);
        assert_eq!(s, Series::new([(3, int(-1)), (5, int(-1))], 6));
        // (M+2)/(M(M+1)(M+3)) = 1/M² - 2/M³ + ...
        let s = wg_coe(&p("1,1")).expand(3);
        assert_eq!(s, Series::new([(2, int(1)), (3, int(-2))], 3));
    }

    #[test]
    fn unitarity() {
        for m in 1..8 {
            assert_eq!(int(m) * wg_cue_at(m, &p("1")).unwrap(), Rational::one());
            // Σ_j <S_ij S*_ij>: j = i contributes 2 Wg(1), each j ≠ i one
            let w = wg_coe_at(m, &p("1")).unwrap();
            assert_eq!(&w * int(2) + &w * int(m - 1), Rational::one());
        }
    }
}
