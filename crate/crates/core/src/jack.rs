//! Jack polynomials at α ∈ {1, 2}, their characters θ^(α), skew characters
//! and the ε-polynomials `g_β`.
//!
//! Normalisation: `J^(α)_λ = n! Σ_μ α^{r(μ)} θ^(α)_λ(μ) p_μ / z_μ`, so that
//! `J^(α)_λ(1^N) = [N]^λ_(α)`, `θ^(1) = χ/d` and `θ^(2) = ω`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock};

use num::{BigInt, One, Zero};

use crate::algebra::{imag_unit, int, linalg, GaussianRational, Poly, Rational};
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::partitions::{factorial, irrep_dim, merge, partitions_of, z_order, Alpha, Partition};
use crate::permutations::chi;
use crate::EpsPolynomial;

/// A homogeneous symmetric function in the power-sum basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PExpansion {
    terms: BTreeMap<Partition, Rational>,
}

impl PExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// The single power sum `p_μ`.
    pub fn power_sum(mu: Partition) -> Self {
        let mut e = Self::new();
        e.add_term(mu, Rational::one());
        e
    }

    pub fn add_term(&mut self, mu: Partition, c: Rational) {
        if let Some(d) = self.degree() {
            assert_eq!(d, mu.size(), "inhomogeneous power-sum expansion");
        }
        let slot = self.terms.entry(mu.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn coeff(&self, mu: &Partition) -> Rational {
        self.terms.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Partition::size)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::new();
        for (mu, v) in &self.terms {
            out.add_term(mu.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, v) in &other.terms {
            out.add_term(mu.clone(), v.clone());
        }
        out
    }

    /// Multiply by `p_β`.
    pub fn mul_power_sum(&self, beta: &Partition) -> Self {
        let mut out = Self::new();
        for (mu, v) in &self.terms {
            out.add_term(merge(mu, beta), v.clone());
        }
        out
    }

    /// Value at `x = (1, ..., 1)` (N ones) as a polynomial in N:
    /// `p_μ(1^N) = N^{ℓ(μ)}`.
    pub fn at_ones(&self) -> Poly<Rational> {
        let mut coeffs = vec![Rational::zero(); self.terms.keys().map(Partition::len).max().unwrap_or(0) + 1];
        for (mu, v) in &self.terms {
            coeffs[mu.len()] += v;
        }
        Poly::new(coeffs)
    }
}

fn alpha_rat(alpha: Alpha) -> Rational {
    int(alpha.value())
}

// ---------------------------------------------------------------------------
// Monomial-basis construction

/// `ρ_λ = Σ_i λ_i (λ_i - 1 - (2/α)(i - 1))`
fn rho(lambda: &Partition, alpha: Alpha) -> Rational {
    let two_over_alpha = Rational::new(2.into(), alpha.value().into());
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let l = int(l as i64);
            &l * (&l - Rational::one() - &two_over_alpha * int(i as i64))
        })
        .sum()
}

/// Coefficients of `J^(α)_λ` in the monomial basis, in the normalisation
/// where the coefficient of `m_{1^n}` is `n!`.
fn jack_in_m(alpha: Alpha, lambda: &Partition) -> HashMap<Partition, Rational> {
    let n = lambda.size();
    let two_over_alpha = Rational::new(2.into(), alpha.value().into());
    let rho_l = rho(lambda, alpha);
    let mut c: HashMap<Partition, Rational> = HashMap::new();
    c.insert(lambda.clone(), Rational::one());
    // lex order refines dominance, so every ν needed below is already known
    for mu in partitions_of(n, false) {
        if &mu >= lambda || !lambda.dominates(&mu) {
            continue;
        }
        let parts = mu.parts();
        let mut acc = Rational::zero();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                for t in 1..=parts[j] {
                    let mut nu = parts.to_vec();
                    nu[i] += t;
                    nu[j] -= t;
                    let nu = Partition::from_parts(nu);
                    if let Some(v) = c.get(&nu) {
                        acc += v * int((parts[i] + 2 * t - parts[j]) as i64);
                    }
                }
            }
        }
        let denom = &rho_l - rho(&mu, alpha);
        assert!(!denom.is_zero(), "degenerate eigenvalue at {lambda} / {mu}");
        let v = &two_over_alpha * acc / denom;
        if !v.is_zero() {
            c.insert(mu, v);
        }
    }
    let norm = int(factorial(n)) / c.get(&Partition::ones(n)).cloned().expect("m_{1^n} present");
    c.values_mut().for_each(|v| *v *= &norm);
    c
}

/// Coefficient of the monomial `x^ν` in `p_μ`, for every pair of partitions
/// of n; stored as `table[μ][ν]`.
struct PowerToMonomial {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    table: Vec<Vec<BigInt>>,
}

fn count_assignments(
    mu: &[usize],
    k: usize,
    caps: &mut Vec<usize>,
    memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
) -> BigInt {
    if k == mu.len() {
        return if caps.iter().all(|&c| c == 0) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let mut key_caps = caps.clone();
    key_caps.sort_unstable();
    let key = (k, key_caps);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for b in 0..caps.len() {
        if caps[b] >= mu[k] {
            caps[b] -= mu[k];
            total += count_assignments(mu, k + 1, caps, memo);
            caps[b] += mu[k];
        }
    }
    memo.insert(key, total.clone());
    total
}

impl PowerToMonomial {
    fn build(n: usize) -> Self {
        let parts = partitions_of(n, false);
        let index = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = parts
            .iter()
            .map(|mu| {
                parts
                    .iter()
                    .map(|nu| {
                        if !nu.dominates(mu) {
                            return BigInt::zero();
                        }
                        let mut caps = nu.parts().to_vec();
                        count_assignments(mu.parts(), 0, &mut caps, &mut HashMap::new())
                    })
                    .collect()
            })
            .collect();
        PowerToMonomial {
            parts,
            index,
            table,
        }
    }
}

static P_TO_M: LazyLock<Memo<usize, Arc<PowerToMonomial>>> = LazyLock::new(Memo::new);

fn p_to_m(n: usize) -> Arc<PowerToMonomial> {
    P_TO_M.get_or_compute(&n, || Arc::new(PowerToMonomial::build(n)))
}

static JACK_ROWS: LazyLock<Memo<(Alpha, Partition), Arc<PExpansion>>> = LazyLock::new(Memo::new);

fn compute_jack_in_p(alpha: Alpha, lambda: &Partition) -> PExpansion {
    let n = lambda.size();
    let m = jack_in_m(alpha, lambda);
    let r = p_to_m(n);
    // J = Σ_μ P_μ p_μ and p_μ only involves m_ν with ν ⊵ μ, so solve from
    // the finest partition upwards.
    let mut coeffs: Vec<Rational> = vec![Rational::zero(); r.parts.len()];
    for (idx, nu) in r.parts.iter().enumerate().rev() {
        let mut rhs = m.get(nu).cloned().unwrap_or_else(Rational::zero);
        for (jdx, c) in coeffs.iter().enumerate().skip(idx + 1) {
            if !c.is_zero() && !r.table[jdx][idx].is_zero() {
                rhs -= c * int(r.table[jdx][idx].clone());
            }
        }
        coeffs[idx] = rhs / int(r.table[idx][idx].clone());
    }
    let mut out = PExpansion::new();
    for (mu, c) in r.parts.iter().zip(coeffs) {
        out.add_term(mu.clone(), c);
    }
    debug_assert_eq!(r.index.len(), r.parts.len());
    out
}

/// `J^(α)_λ` in the power-sum basis.
pub fn jack_in_p(alpha: Alpha, lambda: &Partition) -> Arc<PExpansion> {
    JACK_ROWS.get_or_compute(&(alpha, lambda.clone()), || {
        Arc::new(compute_jack_in_p(alpha, lambda))
    })
}

/// `n! α^{r(μ)} / z_μ`, the factor relating θ to the p-coefficient.
fn p_weight(alpha: Alpha, mu: &Partition) -> Rational {
    Rational::new(
        factorial(mu.size()) * num::pow(BigInt::from(alpha.value()), mu.rank()),
        z_order(mu),
    )
}

/// θ read off the power-sum expansion of the Jack polynomial.
pub fn jack_character_from_p(alpha: Alpha, lambda: &Partition, mu: &Partition) -> Rational {
    jack_in_p(alpha, lambda).coeff(mu) / p_weight(alpha, mu)
}

// ---------------------------------------------------------------------------
// Characters

static THETA: LazyLock<Memo<(Alpha, Partition, Partition), Rational>> = LazyLock::new(Memo::new);
static SKEW: LazyLock<Memo<(Alpha, Partition, Partition, Partition), Rational>> =
    LazyLock::new(Memo::new);

pub(crate) fn theta(alpha: Alpha, lambda: &Partition, mu: &Partition) -> Rational {
    THETA.get_or_compute(&(alpha, lambda.clone(), mu.clone()), || match alpha {
        // identical to the p-coefficient (asserted in tests) but much cheaper
        Alpha::One => Rational::new(chi(lambda, mu), irrep_dim(lambda)),
        Alpha::Two => jack_character_from_p(alpha, lambda, mu),
    })
}

/// Jack character `θ^(α)_λ(μ)`.
pub fn jack_character(alpha: Alpha, lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.to_string(), mu.to_string()));
    }
    Ok(theta(alpha, lambda, mu))
}

/// Skew Jack character `θ^(α)_{λ\μ}(ν)`, as a sum of ordinary Jack
/// characters over `ρ ⊢ |μ|`. Zero unless λ ⊇ μ and `|λ| = |μ| + |ν|`.
pub fn skew_jack_character(
    alpha: Alpha,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Rational {
    if lambda.size() != mu.size() + nu.size() || !crate::partitions::covers(lambda, mu) {
        return Rational::zero();
    }
    let key = (alpha, lambda.clone(), mu.clone(), nu.clone());
    SKEW.get_or_compute(&key, || {
        let a = alpha_rat(alpha);
        let sum: Rational = partitions_of(mu.size(), false)
            .iter()
            .map(|rho| {
                let th_mu = theta(alpha, mu, rho);
                if th_mu.is_zero() {
                    return Rational::zero();
                }
                p_weight(alpha, rho) * th_mu * theta(alpha, lambda, &merge(rho, nu))
            })
            .sum();
        Rational::new(factorial(lambda.size()), factorial(nu.size()))
            * num::pow(a, mu.size())
            * sum
    })
}

/// Skew character by the second route: expand `J_μ p_ν` in the Jack basis
/// of degree `|λ|` by solving a linear system, then rescale the coefficient
/// of `J_λ`. Independent of the sum formula; used to cross-check it.
pub fn skew_by_projection(
    alpha: Alpha,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<Rational> {
    let (n, m) = (mu.size(), nu.size());
    let total = n + m;
    if lambda.size() != total {
        return Ok(Rational::zero());
    }
    let basis = partitions_of(total, false);
    let rows: Vec<Arc<PExpansion>> = basis.iter().map(|l| jack_in_p(alpha, l)).collect();
    let target = jack_in_p(alpha, mu).mul_power_sum(nu);
    // columns are Jack polynomials, rows are power sums
    let a: Vec<Vec<Rational>> = basis
        .iter()
        .map(|p| rows.iter().map(|j| j.coeff(p)).collect())
        .collect();
    let b: Vec<Rational> = basis.iter().map(|p| target.coeff(p)).collect();
    let x = linalg::solve(a, b)?;
    let idx = basis.iter().position(|l| l == lambda).expect("λ enumerated");
    let c = &x[idx];
    let scale = match alpha {
        Alpha::One => {
            let d = irrep_dim(lambda);
            Rational::new(factorial(total) * factorial(total), factorial(m) * &d * &d)
        }
        Alpha::Two => Rational::new(
            factorial(2 * total),
            num::pow(BigInt::from(2), m) * factorial(m) * irrep_dim(&lambda.doubled()),
        ),
    };
    Ok(c * scale)
}

/// Snapshot of the memoised θ table for one α: `((λ, μ), θ)`.
pub fn theta_entries(alpha: Alpha) -> Vec<((Partition, Partition), Rational)> {
    let mut v: Vec<_> = THETA
        .snapshot()
        .into_iter()
        .filter(|((a, _, _), _)| *a == alpha)
        .map(|((_, l, m), v)| ((l, m), v))
        .collect();
    v.sort();
    v
}

/// Snapshot of the memoised skew table for one α: `((λ, μ, ν), θ)`.
pub fn skew_entries(alpha: Alpha) -> Vec<((Partition, Partition, Partition), Rational)> {
    let mut v: Vec<_> = SKEW
        .snapshot()
        .into_iter()
        .filter(|((a, _, _, _), _)| *a == alpha)
        .map(|((_, l, m, n), v)| ((l, m, n), v))
        .collect();
    v.sort();
    v
}

/// Seed the θ table (e.g. from a persisted cache).
pub fn seed_theta(alpha: Alpha, lambda: Partition, mu: Partition, value: Rational) {
    THETA.insert((alpha, lambda, mu), value);
}

pub fn seed_skew(alpha: Alpha, lambda: Partition, mu: Partition, nu: Partition, value: Rational) {
    SKEW.insert((alpha, lambda, mu, nu), value);
}

/// Drop all memoised Jack data.
pub fn clear_tables() {
    THETA.clear();
    SKEW.clear();
    JACK_ROWS.clear();
}

/// `g_β(ε) = ∏_{q ∈ β} (1 - iqε)`
pub fn g_poly(beta: &Partition) -> EpsPolynomial {
    beta.parts().iter().fold(Poly::one(), |acc, &q| {
        let factor = Poly::new(vec![
            GaussianRational::one(),
            -imag_unit() * GaussianRational::new(int(q as i64), Rational::zero()),
        ]);
        &acc * &factor
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gauss, rat};
    use crate::partitions::rising_product;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn pexp(terms: &[(&str, i64)]) -> PExpansion {
        let mut e = PExpansion::new();
        for (mu, c) in terms {
            e.add_term(p(mu), int(*c));
        }
        e
    }

    #[test]
    fn small_jacks() {
        assert_eq!(*jack_in_p(Alpha::One, &p("2")), pexp(&[("1,1", 1), ("2", 1)]));
        assert_eq!(*jack_in_p(Alpha::Two, &p("2")), pexp(&[("1,1", 1), ("2", 2)]));
        for a in [Alpha::One, Alpha::Two] {
            assert_eq!(*jack_in_p(a, &p("1")), pexp(&[("1", 1)]));
        }
    }

    #[test]
    fn zonal_degree_three() {
        // Z_(3) = p1³ + 6p1p2 + 8p3, Z_(21) = p1³ + p1p2 - 2p3, Z_(111) = p1³ - 3p1p2 + 2p3
        assert_eq!(
            *jack_in_p(Alpha::Two, &p("3")),
            pexp(&[("1,1,1", 1), ("2,1", 6), ("3", 8)])
        );
        assert_eq!(
            *jack_in_p(Alpha::Two, &p("2,1")),
            pexp(&[("1,1,1", 1), ("2,1", 1), ("3", -2)])
        );
        assert_eq!(
            *jack_in_p(Alpha::Two, &p("1,1,1")),
            pexp(&[("1,1,1", 1), ("2,1", -3), ("3", 2)])
        );
        assert_eq!(jack_character(Alpha::Two, &p("2,1"), &p("3")).unwrap(), rat(-1, 4));
        assert_eq!(jack_character(Alpha::Two, &p("1,1,1"), &p("2,1")).unwrap(), rat(-1, 2));
    }

    #[test]
    fn character_examples() {
        assert!(jack_character(Alpha::One, &p("2,1"), &p("2,1")).unwrap().is_zero());
        assert_eq!(jack_character(Alpha::Two, &p("2"), &p("2")).unwrap(), Rational::one());
        for n in 1..=7 {
            for a in [Alpha::One, Alpha::Two] {
                assert_eq!(
                    jack_character(a, &Partition::row(n), &Partition::ones(n)).unwrap(),
                    Rational::one()
                );
            }
        }
        assert!(jack_character(Alpha::One, &p("2"), &p("1")).is_err());
    }

    #[test]
    fn alpha_one_matches_characters() {
        for n in 1..=6 {
            for l in partitions_of(n, false) {
                for mu in partitions_of(n, false) {
                    assert_eq!(
                        jack_character_from_p(Alpha::One, &l, &mu) * int(irrep_dim(&l)),
                        int(chi(&l, &mu))
                    );
                }
            }
        }
    }

    #[test]
    fn evaluation_at_ones() {
        for n in 1..=6 {
            for l in partitions_of(n, false) {
                for a in [Alpha::One, Alpha::Two] {
                    assert_eq!(jack_in_p(a, &l).at_ones(), rising_product(&l, a), "{l}");
                }
            }
        }
    }

    #[test]
    fn skew_examples() {
        let a = Alpha::One;
        assert_eq!(skew_jack_character(a, &p("3"), &p("1"), &p("2")), int(3));
        assert!(skew_jack_character(a, &p("2,1"), &p("1"), &p("2")).is_zero());
        assert_eq!(skew_jack_character(a, &p("1,1,1"), &p("1"), &p("2")), int(-3));
        assert_eq!(skew_by_projection(a, &p("3"), &p("1"), &p("2")).unwrap(), int(3));
        assert!(skew_by_projection(a, &p("2,1"), &p("1"), &p("2")).unwrap().is_zero());
        assert_eq!(skew_by_projection(a, &p("1,1,1"), &p("1"), &p("2")).unwrap(), int(-3));
        // off-support conventions
        assert!(skew_jack_character(a, &p("3"), &p("1"), &p("1")).is_zero());
        assert!(skew_jack_character(a, &p("1,1,1"), &p("2"), &p("1")).is_zero());
    }

    #[test]
    fn skew_with_empty_mu_is_plain_character() {
        for l in partitions_of(4, false) {
            for nu in partitions_of(4, false) {
                for a in [Alpha::One, Alpha::Two] {
                    assert_eq!(
                        skew_jack_character(a, &l, &Partition::empty(), &nu),
                        theta(a, &l, &nu)
                    );
                }
            }
        }
    }

    #[test]
    fn g_poly_examples() {
        let i = imag_unit();
        assert_eq!(
            g_poly(&p("2")),
            Poly::new(vec![GaussianRational::one(), -i.clone() * gauss(int(2), int(0))])
        );
        assert_eq!(
            g_poly(&p("3,2")),
            Poly::new(vec![
                GaussianRational::one(),
                gauss(int(0), int(-5)),
                gauss(int(-6), int(0))
            ])
        );
        assert_eq!(g_poly(&Partition::empty()), Poly::one());
    }
}
