//! Matrix-element correlations assembled from index tuples, and trace
//! correlations `C^(α)_λ(ε, M)`.

use std::collections::HashMap;

use num::{One, Zero};

use crate::algebra::{int, GaussianRational, Poly, Rational};
use crate::energy::{correction_series, gen_wg_coe, gen_wg_cue, inv_one_minus_i_eps, outer_weight};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, rising_product, Alpha, Partition};
use crate::permutations::{coset_type, Permutation};
use crate::weingarten::{wg_coe_at, wg_cue_at};
use crate::{EpsRational, MSeries};

/// Channel indices. CUE tuples have length n; COE tuples have length 2n in
/// signed order `(i_{-n}, ..., i_{-1}, i_1, ..., i_n)`.
pub type IndexTuple = Vec<u64>;

/// Every bijection `f` of positions with `target[k] = source[f(k)]`.
fn label_bijections(source: &[u64], target: &[u64]) -> Vec<Permutation> {
    fn go(
        k: usize,
        source: &[u64],
        target: &[u64],
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Permutation>,
    ) {
        if k == target.len() {
            out.push(Permutation::new(cur.clone()).expect("bijection by construction"));
            return;
        }
        for t in 0..source.len() {
            if !used[t] && source[t] == target[k] {
                used[t] = true;
                cur.push(t);
                go(k + 1, source, target, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    if source.len() == target.len() {
        let mut used = vec![false; source.len()];
        go(0, source, target, &mut used, &mut Vec::new(), &mut out);
    }
    out
}

fn check_lengths(tuples: &[&[u64]]) -> Result<usize> {
    let n = tuples[0].len();
    if tuples.iter().any(|t| t.len() != n) {
        return Err(Error::Invalid("index tuples must have equal length".into()));
    }
    Ok(n)
}

/// All `(τ, σ)` with `q_k = i_{τ(k)}` and `p_k = j_{σ(k)}`.
pub fn match_cue(
    i: &[u64],
    j: &[u64],
    p: &[u64],
    q: &[u64],
) -> Result<Vec<(Permutation, Permutation)>> {
    check_lengths(&[i, j, p, q])?;
    let taus = label_bijections(i, q);
    let sigmas = label_bijections(j, p);
    Ok(taus
        .iter()
        .flat_map(|t| sigmas.iter().map(move |s| (t.clone(), s.clone())))
        .collect())
}

/// `C₁(i, j, p, q; ε, M) = Σ_{(τ,σ)} 𝒲^(1)(σ⁻¹τ)` through `1/M^trunc`.
pub fn corr_cue(i: &[u64], j: &[u64], p: &[u64], q: &[u64], trunc: i64) -> Result<MSeries> {
    let n = check_lengths(&[i, j, p, q])?;
    let mut counts: HashMap<Partition, i64> = HashMap::new();
    for (tau, sigma) in match_cue(i, j, p, q)? {
        *counts.entry(sigma.inverse().compose(&tau).cycle_type()).or_insert(0) += 1;
    }
    sum_classes(counts, n, trunc, |c| gen_wg_cue(c, trunc))
}

/// Permutations σ of the signed positions with `j_k = i_{σ(k)}`.
pub fn match_coe(i2n: &[u64], j2n: &[u64]) -> Result<Vec<Permutation>> {
    let len = check_lengths(&[i2n, j2n])?;
    if len % 2 != 0 {
        return Err(Error::Invalid("COE tuples have even length 2n".into()));
    }
    Ok(label_bijections(i2n, j2n))
}

/// `C₂(i, j; ε, M) = Σ_σ 𝒲^(2)(coset type of σ)` through `1/M^trunc`.
pub fn corr_coe(i2n: &[u64], j2n: &[u64], trunc: i64) -> Result<MSeries> {
    let mut counts: HashMap<Partition, i64> = HashMap::new();
    for sigma in match_coe(i2n, j2n)? {
        *counts.entry(coset_type(&sigma)?).or_insert(0) += 1;
    }
    sum_classes(counts, i2n.len() / 2, trunc, |c| gen_wg_coe(c, trunc))
}

/// Exact `ε = 0` value of the CUE correlation at integer `M`.
pub fn corr_cue_at(m: i64, i: &[u64], j: &[u64], p: &[u64], q: &[u64]) -> Result<Rational> {
    let mut total = Rational::zero();
    for (tau, sigma) in match_cue(i, j, p, q)? {
        total += wg_cue_at(m, &sigma.inverse().compose(&tau).cycle_type())?;
    }
    Ok(total)
}

/// Exact `ε = 0` value of the COE correlation at integer `M`.
pub fn corr_coe_at(m: i64, i2n: &[u64], j2n: &[u64]) -> Result<Rational> {
    let mut total = Rational::zero();
    for sigma in match_coe(i2n, j2n)? {
        total += wg_coe_at(m, &coset_type(&sigma)?)?;
    }
    Ok(total)
}

fn sum_classes(
    counts: HashMap<Partition, i64>,
    n: usize,
    trunc: i64,
    series: impl Fn(&Partition) -> Result<MSeries>,
) -> Result<MSeries> {
    if trunc < n as i64 {
        return Err(Error::Invalid(format!(
            "truncation {trunc} below the leading order {n}"
        )));
    }
    let mut classes: Vec<_> = counts.into_iter().collect();
    classes.sort();
    let mut acc = MSeries::zero(trunc);
    for (class, count) in classes {
        let c = EpsRational::constant(GaussianRational::new(int(count), Rational::zero()));
        acc = acc.add(&series(&class)?.scale(&c));
    }
    Ok(acc)
}

/// A polynomial in M as an exact series (`M^j` at key `-j`).
pub(crate) fn poly_in_m(p: &Poly<Rational>, trunc: i64) -> MSeries {
    MSeries::new(
        p.coeffs().iter().enumerate().map(|(j, c)| {
            (
                -(j as i64),
                EpsRational::constant(GaussianRational::new(c.clone(), Rational::zero())),
            )
        }),
        trunc,
    )
}

fn trace_corr(alpha: Alpha, lambda: &Partition, trunc: i64, depth: i64) -> MSeries {
    let n = lambda.size();
    let l = lambda.len() as i64;
    let exact = trunc + 2 * n as i64 + 1;
    let mut acc = MSeries::zero(trunc);
    for mu in partitions_of(n, false) {
        let w = outer_weight(alpha, &mu, lambda);
        if w.is_zero() {
            continue;
        }
        let prefactor = match alpha {
            Alpha::One => {
                let r = rising_product(&mu, Alpha::One);
                &r * &r
            }
            Alpha::Two => rising_product(&mu.doubled(), Alpha::One),
        };
        let outer = poly_in_m(&prefactor.scale(&w), exact).shift(n as i64 + l);
        let term = outer.mul(&correction_series(alpha, &mu, depth));
        debug_assert!(term.trunc() >= trunc);
        acc = acc.add(&term.with_trunc(trunc));
    }
    acc.scale(&inv_one_minus_i_eps(n))
}

/// Depth of the correction series needed for `C_λ` through `1/M^trunc`:
/// the prefactor carries positive powers of M up to `M^{n-ℓ}`.
pub fn trace_depth(lambda: &Partition, trunc: i64) -> i64 {
    trunc + lambda.size() as i64 - lambda.len() as i64
}

/// `C^(1)_λ(ε, M)` through `1/M^trunc`.
pub fn trace_corr_cue(lambda: &Partition, trunc: i64) -> MSeries {
    trace_corr(Alpha::One, lambda, trunc, trace_depth(lambda, trunc))
}

/// `C^(2)_λ(ε, M)` through `1/M^trunc`.
pub fn trace_corr_coe(lambda: &Partition, trunc: i64) -> MSeries {
    trace_corr(Alpha::Two, lambda, trunc, trace_depth(lambda, trunc))
}

/// `c(-ε) = conj(c(ε))` for every coefficient.
pub fn is_hermitian(s: &MSeries) -> bool {
    s.terms().values().all(|c| c.eps_reflect() == c.conj())
}

/// True if the ε = 0 specialisation is exactly the constant series 1.
pub fn is_unit_at_eps_zero(s: &MSeries) -> bool {
    let z = s.at_eps_zero();
    z.terms().len() == 1 && z.coeff(0).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gauss;
    use crate::EpsPolynomial;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        gauss(int(re), int(im))
    }

    #[test]
    fn fixed_energy_values() {
        use crate::algebra::rat;
        assert_eq!(corr_cue_at(3, &[1, 2], &[1, 2], &[1, 2], &[2, 1]).unwrap(), rat(-1, 24));
        assert_eq!(corr_coe_at(4, &[4, 2, 1, 3], &[4, 2, 1, 3]).unwrap(), rat(3, 70));
        // |S_11|^2 averages to 1/M
        assert_eq!(corr_cue_at(5, &[1], &[1], &[1], &[1]).unwrap(), rat(1, 5));
        assert!(corr_cue_at(1, &[1, 2], &[1, 2], &[1, 2], &[2, 1]).is_err());
    }

    fn eps(num: Vec<GaussianRational>, k: u32) -> EpsRational {
        EpsRational::over_one_minus_i_eps(EpsPolynomial::new(num), k)
    }

    #[test]
    fn cue_matching_examples() {
        let m = match_cue(&[1, 2], &[1, 2], &[1, 2], &[2, 1]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].0, "2,1".parse().unwrap());
        assert_eq!(m[0].1, Permutation::identity(2));
        assert!(match_cue(&[1, 2], &[1, 2], &[1, 2], &[1, 3]).unwrap().is_empty());
        let m = match_cue(&[1], &[1], &[1], &[1]).unwrap();
        assert_eq!(m, vec![(Permutation::identity(1), Permutation::identity(1))]);
        assert!(match_cue(&[1], &[1, 2], &[1], &[1]).is_err());
    }

    #[test]
    fn cue_correlation_examples() {
        let s = corr_cue(&[1, 2], &[1, 2], &[1, 2], &[2, 1], 5).unwrap();
        assert_eq!(s, gen_wg_cue(&p("2"), 5).unwrap());
        assert!(corr_cue(&[1], &[1], &[2], &[1], 3).unwrap().is_zero());
        assert_eq!(
            corr_cue(&[1], &[1], &[1], &[1], 2).unwrap(),
            gen_wg_cue(&p("1"), 2).unwrap()
        );
    }

    #[test]
    fn cue_relabeling_invariance() {
        let a = corr_cue(&[1, 1, 2], &[3, 1, 3], &[1, 3, 3], &[2, 1, 1], 4).unwrap();
        let b = corr_cue(&[7, 7, 5], &[2, 7, 2], &[7, 2, 2], &[5, 7, 7], 4).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_zero());
    }

    #[test]
    fn coe_matching_examples() {
        // four distinct channels, blocks {-2,-1} and {1,2}
        let s4 = [1, 2, 3, 4];
        let m = match_coe(&s4, &s4).unwrap();
        assert_eq!(m, vec![Permutation::identity(4)]);

        // i = (i_{-2}, i_{-1}, i_1, i_2) with j_k = i_{σ(k)}, σ(1)=1, σ(-1)=-2, σ(2)=-1, σ(-2)=2
        let i = [1, 2, 3, 4];
        let j = [4, 1, 3, 2];
        let m = match_coe(&i, &j).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(coset_type(&m[0]).unwrap(), p("2"));
        assert_eq!(corr_coe(&i, &j, 4).unwrap(), gen_wg_coe(&p("2"), 4).unwrap());

        let m = match_coe(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(m.len(), 2);
        let s = corr_coe(&[1, 1], &[1, 1], 3).unwrap();
        let w = gen_wg_coe(&p("1"), 3).unwrap();
        assert_eq!(s, w.add(&w));
    }

    #[test]
    fn trace_examples_cue() {
        let s = trace_corr_cue(&p("1"), 2);
        assert_eq!(s.coeff(0), inv_one_minus_i_eps(1));
        assert!(s.coeff(1).is_zero());
        assert_eq!(s.coeff(2), eps(vec![g(0, 0), g(0, 0), g(-1, 0)], 5));
    }

    #[test]
    fn trace_examples_coe() {
        let s = trace_corr_coe(&p("1"), 1);
        assert_eq!(s.coeff(0), inv_one_minus_i_eps(1));
        assert_eq!(s.coeff(1), eps(vec![g(0, 0), g(0, 0), g(-1, 0)], 3));
        let s = trace_corr_coe(&p("1,1"), 1);
        assert_eq!(s.coeff(0), inv_one_minus_i_eps(2));
        assert_eq!(s.coeff(1), eps(vec![g(0, 0), g(0, 0), g(-2, 0)], 4));
    }

    #[test]
    fn unitarity_and_hermiticity() {
        for n in 1..=3 {
            for l in partitions_of(n, false) {
                for k in 0..=3 {
                    let c = trace_corr_cue(&l, k);
                    assert!(is_unit_at_eps_zero(&c), "CUE {l} K={k}");
                    assert!(is_hermitian(&c));
                }
                for k in 0..=2 {
                    let c = trace_corr_coe(&l, k);
                    assert!(is_unit_at_eps_zero(&c), "COE {l} K={k}");
                    assert!(is_hermitian(&c));
                }
            }
        }
    }

    #[test]
    fn deeper_corrections_do_not_change_the_result() {
        for l in [p("1"), p("2"), p("1,1"), p("2,1")] {
            for k in 0..=2 {
                let d = trace_depth(&l, k);
                assert_eq!(trace_corr(Alpha::One, &l, k, d), trace_corr(Alpha::One, &l, k, d + 1));
                assert_eq!(trace_corr(Alpha::Two, &l, k, d), trace_corr(Alpha::Two, &l, k, d + 1));
            }
        }
    }

    /// Canonical index tuples for every set partition of `n` positions, with
    /// the number of blocks.
    fn index_patterns(n: usize) -> Vec<(Vec<u64>, usize)> {
        fn go(k: usize, n: usize, cur: &mut Vec<u64>, blocks: u64, out: &mut Vec<(Vec<u64>, usize)>) {
            if k == n {
                out.push((cur.clone(), blocks as usize));
                return;
            }
            for b in 1..=blocks + 1 {
                cur.push(b);
                go(k + 1, n, cur, blocks.max(b), out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, &mut Vec::new(), 0, &mut out);
        out
    }

    /// `M (M-1) ... (M-b+1)`: concrete tuples realising a pattern with b blocks.
    fn falling(b: usize) -> Poly<Rational> {
        (0..b as i64).fold(Poly::one(), |acc, k| &acc * &Poly::new(vec![int(-k), Rational::one()]))
    }

    #[test]
    fn trace_correlation_from_index_sums() {
        for lambda in [p("1"), p("2"), p("1,1")] {
            let n = lambda.size();
            let pi = Permutation::with_cycle_type(&lambda);
            for k in 0..=3i64 {
                let inner = k + 2 * n as i64;
                let exact = inner + 4 * n as i64;
                let mut acc = MSeries::zero(k);
                for (i, bi) in index_patterns(n) {
                    let q: Vec<u64> = (0..n).map(|t| i[pi.apply(t)]).collect();
                    for (j, bj) in index_patterns(n) {
                        let c = corr_cue(&i, &j, &j, &q, inner).unwrap();
                        if c.is_zero() {
                            continue;
                        }
                        let count = poly_in_m(&(&falling(bi) * &falling(bj)), exact);
                        acc = acc.add(&count.mul(&c).shift(lambda.len() as i64).with_trunc(k));
                    }
                }
                assert_eq!(acc, trace_corr_cue(&lambda, k), "{lambda} K={k}");
            }
        }
    }
}
