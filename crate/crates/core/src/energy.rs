//! Energy-dependent correction coefficients `E_{μβ}(ε)`, `Ẽ_{μβ}(ε)` and the
//! generalised Weingarten series `𝒲^(1)_{M,ε}`, `𝒲^(2)_{M,ε}`.
//!
//! Both coefficients have the shape `K_{μβ} · g_β(ε) / (1 - iε)^{|β|}` with a
//! rational constant `K_{μβ}`; only the constant involves skew characters,
//! so it is what gets memoised.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num::{BigInt, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{int, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::jack::{g_poly, skew_jack_character, theta};
use crate::memo::Memo;
use crate::partitions::{
    content_h, content_stats, covers, factorial, irrep_dim, partitions_of, z_order, Alpha,
    Partition,
};
use crate::permutations::chi;
use crate::{EpsRational, MSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Cue,
    Coe,
}

impl Ensemble {
    pub fn alpha(self) -> Alpha {
        match self {
            Ensemble::Cue => Alpha::One,
            Ensemble::Coe => Alpha::Two,
        }
    }
}

impl FromStr for Ensemble {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cue" => Ok(Ensemble::Cue),
            "coe" => Ok(Ensemble::Coe),
            _ => Err(Error::Parse(format!("unknown ensemble {s:?}"))),
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ensemble::Cue => "cue",
            Ensemble::Coe => "coe",
        })
    }
}

/// A request for `𝒲^(α)_{M,ε}(class)` through `1/M^trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRequest {
    pub ensemble: Ensemble,
    /// Cycle type (CUE) or coset type (COE).
    pub class: Partition,
    pub trunc: i64,
}

impl SeriesRequest {
    pub fn new(ensemble: Ensemble, class: Partition, trunc: i64) -> Result<Self> {
        if trunc < class.size() as i64 {
            return Err(Error::Invalid(format!(
                "truncation {trunc} below the leading order {}",
                class.size()
            )));
        }
        Ok(SeriesRequest {
            ensemble,
            class,
            trunc,
        })
    }
}

static CONSTANTS: LazyLock<Memo<(Alpha, Partition, Partition), Rational>> =
    LazyLock::new(Memo::new);

fn check_beta(beta: &Partition) -> Result<()> {
    if beta.parts().contains(&1) {
        return Err(Error::PartEqualToOne(beta.to_string()));
    }
    Ok(())
}

/// The λ entering the correction sums: `λ ⊢ |μ| + |β|`, λ ⊇ μ, equal Durfee
/// α-rectangles.
fn support(alpha: Alpha, mu: &Partition, size: usize) -> Vec<Partition> {
    let d_mu = content_stats(mu, alpha).1;
    partitions_of(size, false)
        .into_iter()
        .filter(|l| covers(l, mu))
        .filter(|l| {
            let d = content_stats(l, alpha).1;
            assert!(d >= d_mu, "{l} ⊇ {mu} with a smaller Durfee rectangle");
            d == d_mu
        })
        .collect()
}

fn constant(alpha: Alpha, mu: &Partition, beta: &Partition) -> Rational {
    CONSTANTS.get_or_compute(&(alpha, mu.clone(), beta.clone()), || {
        let (n, m) = (mu.size(), beta.size());
        let lambdas = support(alpha, mu, n + m);
        let sum: Rational = lambdas
            .par_iter()
            .map(|l| {
                let skew = skew_jack_character(alpha, l, mu, beta);
                if skew.is_zero() {
                    return Rational::zero();
                }
                let t = content_stats(l, alpha).0;
                let d = match alpha {
                    Alpha::One => {
                        let d = irrep_dim(l);
                        &d * &d
                    }
                    Alpha::Two => irrep_dim(&l.doubled()),
                };
                skew * int(d * &t * &t)
            })
            .reduce(Rational::zero, |a, b| a + b);
        let t_mu = content_stats(mu, alpha).0;
        let big = match alpha {
            Alpha::One => factorial(n + m) * factorial(n + m),
            Alpha::Two => factorial(2 * n + 2 * m),
        };
        let sign = if beta.len().is_multiple_of(2) { 1 } else { -1 };
        sum * Rational::new(
            factorial(m) * sign,
            z_order(beta) * big * &t_mu * &t_mu,
        )
    })
}

fn assemble(k: Rational, beta: &Partition) -> EpsRational {
    let g = g_poly(beta).scale(&GaussianRational::new(k, Rational::zero()));
    EpsRational::over_one_minus_i_eps(g, beta.size() as u32)
}

/// `E_{μβ}(ε)`, the CUE correction coefficient.
pub fn e_cue(mu: &Partition, beta: &Partition) -> Result<EpsRational> {
    check_beta(beta)?;
    Ok(assemble(constant(Alpha::One, mu, beta), beta))
}

/// `Ẽ_{μβ}(ε)`, the COE correction coefficient.
pub fn e_coe(mu: &Partition, beta: &Partition) -> Result<EpsRational> {
    check_beta(beta)?;
    Ok(assemble(constant(Alpha::Two, mu, beta), beta))
}

/// All β without parts equal to 1 and with `1 ≤ r(β) ≤ depth`, by size.
fn betas(depth: i64) -> Vec<Partition> {
    if depth < 1 {
        return Vec::new();
    }
    let depth = depth as usize;
    (2..=2 * depth)
        .flat_map(|m| partitions_of(m, true))
        .filter(|b| b.rank() <= depth)
        .collect()
}

/// `1 + Σ_β c_β E_{μβ}(ε) / M^{r(β)}` through `1/M^depth`, where `c_β = 1`
/// for CUE and `2^{r(β)}` for COE.
pub fn correction_series(alpha: Alpha, mu: &Partition, depth: i64) -> MSeries {
    let bs = betas(depth);
    let terms: Vec<(i64, EpsRational)> = bs
        .par_iter()
        .map(|b| {
            let mut k = constant(alpha, mu, b);
            if alpha == Alpha::Two {
                k *= int(num::pow(BigInt::from(2), b.rank()));
            }
            (b.rank() as i64, assemble(k, b))
        })
        .collect();
    let mut s = MSeries::one(depth);
    for (r, c) in terms {
        s.add_term(r, c);
    }
    s
}

fn eps_const(c: Rational) -> EpsRational {
    EpsRational::constant(GaussianRational::new(c, Rational::zero()))
}

/// `1 / (1 - iε)^n`
pub(crate) fn inv_one_minus_i_eps(n: usize) -> EpsRational {
    EpsRational::over_one_minus_i_eps(crate::EpsPolynomial::one(), n as u32)
}

/// Weight of μ in the outer sum of `𝒲^(α)(class)`, including the constant
/// prefactor: `d_μ χ_μ(class)/n!` or `2ⁿn! d_{2μ} ω_μ(class)/(2n)!`.
pub(crate) fn outer_weight(alpha: Alpha, mu: &Partition, class: &Partition) -> Rational {
    let n = mu.size();
    match alpha {
        Alpha::One => Rational::new(irrep_dim(mu) * chi(mu, class), factorial(n)),
        Alpha::Two => {
            Rational::new(
                num::pow(BigInt::from(2), n) * factorial(n) * irrep_dim(&mu.doubled()),
                factorial(2 * n),
            ) * theta(Alpha::Two, mu, class)
        }
    }
}

fn gen_wg(alpha: Alpha, class: &Partition, trunc: i64) -> MSeries {
    let n = class.size();
    let depth = trunc - n as i64;
    let mut acc = MSeries::zero(depth);
    for mu in partitions_of(n, false) {
        let w = outer_weight(alpha, &mu, class);
        if w.is_zero() {
            continue;
        }
        acc = acc.add(&correction_series(alpha, &mu, depth).scale(&eps_const(w)));
    }
    acc.scale(&inv_one_minus_i_eps(n)).shift(n as i64)
}

/// `𝒲^(1)_{M,ε}` (CUE) or `𝒲^(2)_{M,ε}` (COE) at the requested class,
/// exact through `1/M^trunc`.
pub fn gen_wg_series(req: &SeriesRequest) -> MSeries {
    gen_wg(req.ensemble.alpha(), &req.class, req.trunc)
}

pub fn gen_wg_cue(class: &Partition, trunc: i64) -> Result<MSeries> {
    let req = SeriesRequest::new(Ensemble::Cue, class.clone(), trunc)?;
    Ok(gen_wg_series(&req))
}

pub fn gen_wg_coe(coset: &Partition, trunc: i64) -> Result<MSeries> {
    let req = SeriesRequest::new(Ensemble::Coe, coset.clone(), trunc)?;
    Ok(gen_wg_series(&req))
}

/// Outcome of an ε = 0 identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eps0Report {
    pub alpha: i64,
    pub mu: Partition,
    pub s: usize,
    #[serde(serialize_with = "ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Coefficient of `M^{-s}` in `Mⁿ / [M+1]^μ_(2) = ∏_□ 1/(1 + (1 + c₂(□))/M)`.
fn coe_target(mu: &Partition, s: usize) -> Rational {
    // h_s of the negated shifts
    let shifts: Vec<i64> = mu.contents(Alpha::Two).map(|c| -(c + 1)).collect();
    int(crate::partitions::complete_homogeneous(shifts, s))
}

/// Check the ε = 0 identity at order s.
///
/// α = 1: `Σ_{β: r(β)=s} E_{μβ}(0) = (-1)^s h_s(contents of μ)`.
/// α = 2: `Σ_{β: r(β)=s} 2^s Ẽ_{μβ}(0)` equals the `M^{-s}` coefficient of
/// `Mⁿ / [M+1]^μ_(2)`.
pub fn check_eps0_identity(alpha: Alpha, mu: &Partition, s: usize) -> Result<Eps0Report> {
    if s < 1 {
        return Err(Error::Invalid("order s must be at least 1".into()));
    }
    let lhs: Rational = (s + 1..=2 * s)
        .flat_map(|m| partitions_of(m, true))
        .filter(|b| b.rank() == s)
        .map(|b| constant(alpha, mu, &b))
        .sum();
    let (lhs, rhs) = match alpha {
        Alpha::One => {
            let h = int(content_h(mu, s));
            (lhs, if s.is_multiple_of(2) { h } else { -h })
        }
        Alpha::Two => (lhs * int(num::pow(BigInt::from(2), s)), coe_target(mu, s)),
    };
    Ok(Eps0Report {
        alpha: alpha.value(),
        mu: mu.clone(),
        s,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// True if every coefficient's denominator is a power of `(1 - iε)`.
pub fn denominators_are_powers(s: &MSeries) -> bool {
    s.terms().values().all(|c| c.one_minus_i_eps_power().is_some())
}

/// Snapshot of the memoised `K_{μβ}` constants.
pub fn constant_entries(alpha: Alpha) -> Vec<((Partition, Partition), Rational)> {
    let mut v: Vec<_> = CONSTANTS
        .snapshot()
        .into_iter()
        .filter(|((a, _, _), _)| *a == alpha)
        .map(|((_, m, b), v)| ((m, b), v))
        .collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gauss, rat, Series};
    use crate::weingarten::{wg_coe, wg_cue};
    use crate::EpsPolynomial;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        gauss(int(re), int(im))
    }

    fn eps(num: Vec<GaussianRational>, k: u32) -> EpsRational {
        EpsRational::over_one_minus_i_eps(EpsPolynomial::new(num), k)
    }

    #[test]
    fn cue_coefficients() {
        assert!(e_cue(&p("1"), &p("2")).unwrap().is_zero());
        // -(1 - 2iε)/(1 - iε)²
        assert_eq!(e_cue(&p("2"), &p("2")).unwrap(), eps(vec![g(-1, 0), g(0, 2)], 2));
        // -(1 - 3iε)/(1 - iε)³
        assert_eq!(e_cue(&p("1"), &p("3")).unwrap(), eps(vec![g(-1, 0), g(0, 3)], 3));
        // (1 - 2iε)²/(1 - iε)⁴
        assert_eq!(
            e_cue(&p("1"), &p("2,2")).unwrap(),
            eps(vec![g(1, 0), g(0, -4), g(-4, 0)], 4)
        );
        assert!(matches!(e_cue(&p("1"), &p("2,1")), Err(Error::PartEqualToOne(_))));
    }

    #[test]
    fn coe_coefficients() {
        let e = e_coe(&p("1"), &p("2")).unwrap();
        let half = |x: i64, y: i64| gauss(rat(x, 2), rat(y, 2));
        assert_eq!(e, eps(vec![half(-1, 0), half(0, 2)], 2));
        assert_eq!(e.eval(&GaussianRational::zero()).unwrap(), gauss(rat(-1, 2), int(0)));
        assert!(e_coe(&p("2"), &p("1")).is_err());
    }

    #[test]
    fn cue_series_examples() {
        let s = gen_wg_cue(&p("2"), 5).unwrap();
        // (2iε - 1)/(1 - iε)⁴
        assert_eq!(s.coeff(3), eps(vec![g(-1, 0), g(0, 2)], 4));
        // (4iε - 1)(-8ε² - 2iε + 1)/(1 - iε)⁸
        let a = EpsPolynomial::new(vec![g(-1, 0), g(0, 4)]);
        let b = EpsPolynomial::new(vec![g(1, 0), g(0, -2), g(-8, 0)]);
        assert_eq!(s.coeff(5), EpsRational::over_one_minus_i_eps(&a * &b, 8));
        assert_eq!(
            s.at_eps_zero(),
            Series::new([(3, int(-1)), (5, int(-1))], 5)
        );

        let s = gen_wg_cue(&p("1"), 2).unwrap();
        assert_eq!(s.coeff(1), inv_one_minus_i_eps(1));
        assert!(s.coeff(2).is_zero());
        assert_eq!(s.trunc(), 2);
        assert!(gen_wg_cue(&p("2"), 1).is_err());
    }

    #[test]
    fn coe_series_examples() {
        let s = gen_wg_coe(&p("1,1"), 3).unwrap();
        assert_eq!(s.coeff(2), inv_one_minus_i_eps(2));
        assert_eq!(s.coeff(3), eps(vec![g(-2, 0), g(0, 4)], 4));
        assert_eq!(s.at_eps_zero(), Series::new([(2, int(1)), (3, int(-2))], 3));

        let s = gen_wg_coe(&p("1"), 2).unwrap();
        assert_eq!(s.coeff(1), inv_one_minus_i_eps(1));
        assert_eq!(s.coeff(2), eps(vec![g(-1, 0), g(0, 2)], 3));
    }

    #[test]
    fn eps0_identity_examples() {
        for (a, mu, s) in [(Alpha::One, "1", 1), (Alpha::One, "2", 1), (Alpha::Two, "1", 1)] {
            let r = check_eps0_identity(a, &p(mu), s).unwrap();
            assert!(r.holds, "{r:?}");
        }
        let r = check_eps0_identity(Alpha::One, &p("2"), 1).unwrap();
        assert_eq!(r.lhs, int(-1));
    }

    #[test]
    fn eps_zero_matches_fixed_energy_expansion() {
        for n in 1..=3 {
            for class in partitions_of(n, false) {
                for k in n as i64..=n as i64 + 3 {
                    let s = gen_wg_cue(&class, k).unwrap();
                    assert_eq!(s.at_eps_zero(), wg_cue(&class).expand(k), "{class} K={k}");
                    assert!(denominators_are_powers(&s));
                }
            }
        }
        for n in 1..=2 {
            for class in partitions_of(n, false) {
                for k in n as i64..=n as i64 + 2 {
                    let s = gen_wg_coe(&class, k).unwrap();
                    assert_eq!(s.at_eps_zero(), wg_coe(&class).expand(k), "{class} K={k}");
                    assert!(denominators_are_powers(&s));
                }
            }
        }
    }

    #[test]
    fn leading_order_collapses_to_identity() {
        for n in 1..=4 {
            for class in partitions_of(n, false) {
                let s = gen_wg_cue(&class, n as i64).unwrap();
                let lead = s.coeff(n as i64);
                if class == Partition::ones(n) {
                    assert_eq!(lead, inv_one_minus_i_eps(n));
                } else {
                    assert!(lead.is_zero());
                }
            }
        }
    }
}
