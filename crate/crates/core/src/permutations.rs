//! Symmetric-group machinery: permutations and cycle types, irreducible
//! characters, matchings of `[n] ∪ [-n]`, the hyperoctahedral group and
//! coset types, and zonal spherical functions.
//!
//! Signed labels `-n, ..., -1, 1, ..., n` are identified with positions
//! `1, ..., 2n` in that order everywhere in the crate (see [`SignedDomain`]).

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num::{BigInt, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::jack;
use crate::memo::Memo;
use crate::partitions::{factorial, Alpha, Partition};

/// A bijection of `{1..n}`, stored 0-based in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("not a bijection: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Invalid("one-line images are 1-based".into()));
        }
        Permutation::new(images.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// A permutation whose cycle type is λ: consecutive cycles `(1 2 .. λ₁)(..)`.
    pub fn with_cycle_type(lambda: &Partition) -> Self {
        let mut images = Vec::with_capacity(lambda.size());
        let mut start = 0;
        for &p in lambda.parts() {
            for k in 0..p {
                images.push(start + (k + 1) % p);
            }
            start += p;
        }
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based image of 0-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i] = k;
        }
        Permutation { images: inv }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                cyc.push(k);
                k = self.images[k];
            }
            out.push(cyc);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_parts(self.cycles().iter().map(Vec::len).collect())
    }

    /// All permutations of `n` letters, lexicographic in one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_one_line(&v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line().iter().map(|i| i.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

// ---------------------------------------------------------------------------
// Characters

static CHARACTERS: LazyLock<Memo<(Partition, Partition), BigInt>> = LazyLock::new(Memo::new);

fn beta_set(lambda: &Partition, len: usize) -> Vec<usize> {
    (0..len).map(|i| lambda.part(i) + (len - 1 - i)).collect()
}

fn from_beta_set(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    Partition::from_parts(
        beta.iter()
            .enumerate()
            .map(|(i, &b)| b - (len - 1 - i))
            .collect(),
    )
}

/// Every way of removing a border strip of length `r` from λ, with the
/// sign `(-1)^{height}`.
pub fn remove_border_strips(lambda: &Partition, r: usize) -> Vec<(Partition, i32)> {
    let beta = beta_set(lambda, lambda.len());
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        out.push((from_beta_set(nb), if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

fn mn(lambda: &Partition, mu: &[usize]) -> BigInt {
    if mu.is_empty() {
        return if lambda.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let key = (lambda.clone(), Partition::from_parts(mu.to_vec()));
    CHARACTERS.get_or_compute(&key, || {
        let (r, rest) = (mu[0], &mu[1..]);
        remove_border_strips(lambda, r)
            .into_iter()
            .map(|(nu, sign)| mn(&nu, rest) * sign)
            .sum()
    })
}

/// Irreducible character `χ_λ` of `S_n` at the class of cycle type μ, by
/// Murnaghan–Nakayama border-strip recursion.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.to_string(), mu.to_string()));
    }
    Ok(mn(lambda, mu.parts()))
}

/// Like [`character`] for callers that already guarantee `|λ| = |μ|`.
pub(crate) fn chi(lambda: &Partition, mu: &Partition) -> BigInt {
    debug_assert_eq!(lambda.size(), mu.size());
    mn(lambda, mu.parts())
}

// ---------------------------------------------------------------------------
// Signed domain, matchings, coset types

/// The identification of `[n] ∪ [-n]` with positions `1..=2n`:
/// `-n ↦ 1, ..., -1 ↦ n, 1 ↦ n+1, ..., n ↦ 2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedDomain {
    pub n: usize,
}

impl SignedDomain {
    pub fn new(n: usize) -> Self {
        SignedDomain { n }
    }

    /// 0-based position of a signed label.
    pub fn pos(&self, label: i64) -> usize {
        let n = self.n as i64;
        assert!(label != 0 && label.abs() <= n, "label {label} outside ±[{n}]");
        if label < 0 {
            (label + n) as usize
        } else {
            (label + n - 1) as usize
        }
    }

    /// Signed label at a 0-based position.
    pub fn label(&self, pos: usize) -> i64 {
        let n = self.n as i64;
        let p = pos as i64;
        assert!(p < 2 * n);
        if p < n {
            p - n
        } else {
            p - n + 1
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> + '_ {
        (0..2 * self.n).map(|p| self.label(p))
    }
}

/// A perfect matching of `[n] ∪ [-n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    n: usize,
    /// partner[pos] = position matched with pos
    partner: Vec<usize>,
}

impl Matching {
    pub fn from_blocks(n: usize, blocks: &[(i64, i64)]) -> Result<Self> {
        let dom = SignedDomain::new(n);
        if blocks.len() != n {
            return Err(Error::Invalid(format!("need {n} blocks, got {}", blocks.len())));
        }
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in blocks {
            if a == 0 || b == 0 || a.unsigned_abs() as usize > n || b.unsigned_abs() as usize > n || a == b {
                return Err(Error::Invalid(format!("bad block {{{a},{b}}}")));
            }
            let (pa, pb) = (dom.pos(a), dom.pos(b));
            if partner[pa] != usize::MAX || partner[pb] != usize::MAX {
                return Err(Error::Invalid(format!("label reused in {{{a},{b}}}")));
            }
            partner[pa] = pb;
            partner[pb] = pa;
        }
        Ok(Matching { n, partner })
    }

    /// `𝔱 = {{1,-1}, ..., {n,-n}}`
    pub fn trivial(n: usize) -> Self {
        let dom = SignedDomain::new(n);
        let mut partner = vec![0; 2 * n];
        for k in 1..=n as i64 {
            partner[dom.pos(k)] = dom.pos(-k);
            partner[dom.pos(-k)] = dom.pos(k);
        }
        Matching { n, partner }
    }

    /// `σ(𝔪)`: block `{a,b}` becomes `{σ(a),σ(b)}`.
    pub fn permuted(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.len(), 2 * self.n);
        let mut partner = vec![0; 2 * self.n];
        for (a, &b) in self.partner.iter().enumerate() {
            partner[sigma.apply(a)] = sigma.apply(b);
        }
        Matching {
            n: self.n,
            partner,
        }
    }

    pub fn blocks(&self) -> Vec<(i64, i64)> {
        let dom = SignedDomain::new(self.n);
        (0..2 * self.n)
            .filter(|&a| a < self.partner[a])
            .map(|a| (dom.label(a), dom.label(self.partner[a])))
            .collect()
    }

    /// All `(2n-1)!!` perfect matchings of `[n] ∪ [-n]`.
    pub fn all(n: usize) -> Vec<Matching> {
        fn go(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
                out.push(partner.clone());
                return;
            };
            for b in a + 1..partner.len() {
                if partner[b] == usize::MAX {
                    partner[a] = b;
                    partner[b] = a;
                    go(partner, out);
                    partner[a] = usize::MAX;
                    partner[b] = usize::MAX;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut vec![usize::MAX; 2 * n], &mut out);
        out.into_iter().map(|partner| Matching { n, partner }).collect()
    }

    /// A permutation τ with `τ(𝔱) = self`: block `{k, -k}` goes to the k-th
    /// block of this matching in position order.
    pub fn representative(&self) -> Permutation {
        let dom = SignedDomain::new(self.n);
        let mut images = vec![0; 2 * self.n];
        let blocks = (0..2 * self.n).filter(|&a| a < self.partner[a]);
        for (k, a) in blocks.enumerate() {
            let k = k as i64 + 1;
            images[dom.pos(k)] = a;
            images[dom.pos(-k)] = self.partner[a];
        }
        Permutation { images }
    }

    /// Half the sizes of the cycles in the graph joining this matching with 𝔱.
    pub fn coset_type(&self) -> Partition {
        let triv = Matching::trivial(self.n);
        let mut seen = vec![false; 2 * self.n];
        let mut parts = Vec::new();
        for s in 0..2 * self.n {
            if seen[s] {
                continue;
            }
            let mut v = s;
            let mut size = 0;
            loop {
                seen[v] = true;
                let w = self.partner[v];
                seen[w] = true;
                size += 2;
                v = triv.partner[w];
                if v == s {
                    break;
                }
            }
            parts.push(size / 2);
        }
        Partition::from_parts(parts)
    }
}

/// Coset type of a permutation of the signed domain: that of `σ(𝔱)`.
pub fn coset_type(sigma: &Permutation) -> Result<Partition> {
    if !sigma.len().is_multiple_of(2) {
        return Err(Error::Invalid("coset type needs a permutation of 2n points".into()));
    }
    Ok(Matching::trivial(sigma.len() / 2).permuted(sigma).coset_type())
}

/// Acts on the positive labels with cycle type λ and fixes the negative ones;
/// its coset type is λ.
pub fn with_coset_type(lambda: &Partition) -> Permutation {
    let n = lambda.size();
    let dom = SignedDomain::new(n);
    let c = Permutation::with_cycle_type(lambda);
    let mut images: Vec<usize> = (0..2 * n).collect();
    for k in 0..n {
        images[dom.pos(k as i64 + 1)] = dom.pos(c.apply(k) as i64 + 1);
    }
    Permutation { images }
}

/// The hyperoctahedral group `H_n`, the stabiliser of 𝔱 in `S_{2n}`.
pub fn hyperoctahedral(n: usize) -> Vec<Permutation> {
    let dom = SignedDomain::new(n);
    let mut out = Vec::new();
    for pi in Permutation::all(n) {
        for signs in 0u32..(1 << n) {
            let mut images = vec![0; 2 * n];
            for k in 0..n {
                let flip = signs >> k & 1 == 1;
                let img = pi.apply(k) as i64 + 1;
                let (a, b) = if flip { (-img, img) } else { (img, -img) };
                images[dom.pos(k as i64 + 1)] = dom.pos(a);
                images[dom.pos(-(k as i64) - 1)] = dom.pos(b);
            }
            out.push(Permutation { images });
        }
    }
    out
}

pub fn random_hyperoctahedral<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let dom = SignedDomain::new(n);
    let pi = Permutation::random(n, rng);
    let mut images = vec![0; 2 * n];
    for k in 0..n {
        let img = pi.apply(k) as i64 + 1;
        let (a, b) = if rng.gen::<bool>() { (-img, img) } else { (img, -img) };
        images[dom.pos(k as i64 + 1)] = dom.pos(a);
        images[dom.pos(-(k as i64) - 1)] = dom.pos(b);
    }
    Permutation { images }
}

pub fn hyperoctahedral_order(n: usize) -> BigInt {
    num::pow(BigInt::from(2), n) * factorial(n)
}

/// Zonal spherical function `ω_λ` at coset type μ, read off the zonal
/// (α = 2 Jack) polynomial.
pub fn zonal(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.to_string(), mu.to_string()));
    }
    jack::jack_character(Alpha::Two, lambda, mu)
}

/// `ω_λ(τ)` as the average of `χ_{2λ}(τξ)` over `ξ ∈ H_n`. Exponential
/// cost; meant as an independent check for small n.
pub fn zonal_average(lambda: &Partition, tau: &Permutation) -> Rational {
    let n = lambda.size();
    assert_eq!(tau.len(), 2 * n);
    let two_lambda = lambda.doubled();
    let total: BigInt = hyperoctahedral(n)
        .iter()
        .map(|xi| chi(&two_lambda, &tau.compose(xi).cycle_type()))
        .sum();
    Rational::new(total, hyperoctahedral_order(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{partitions_of, z_order};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type(), Partition::ones(4));
        let t: Permutation = "2,1,3,4".parse().unwrap();
        assert_eq!(t.cycle_type(), p("2,1,1"));
        let c: Permutation = "2,3,4,5,1".parse().unwrap();
        assert_eq!(c.cycle_type(), p("5"));
        assert_eq!(Permutation::with_cycle_type(&p("3,2,2,1")).cycle_type(), p("3,2,2,1"));
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn character_examples() {
        for n in 1..=7 {
            for k in 1..=n {
                let mut parts = vec![k];
                parts.extend(std::iter::repeat_n(1, n - k));
                let hook = Partition::new(parts).unwrap();
                let expected = if (n - k) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character(&hook, &Partition::row(n)).unwrap(), BigInt::from(expected));
            }
        }
        assert!(character(&p("2,1"), &p("2,1")).unwrap().is_zero());
        assert_eq!(character(&p("3,1"), &p("2,2")).unwrap(), BigInt::from(-1));
        assert!(character(&p("3,1"), &p("2,1")).is_err());
    }

    #[test]
    fn nonhook_vanishes_on_full_cycle() {
        for n in 2..=8 {
            for l in partitions_of(n, false) {
                if !l.is_hook() {
                    assert!(character(&l, &Partition::row(n)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn orthogonality() {
        for n in 1..=6 {
            let ps = partitions_of(n, false);
            for a in &ps {
                for b in &ps {
                    let rows: BigInt = ps.iter().map(|m| chi(m, a) * chi(m, b)).sum();
                    let expect = if a == b { z_order(a) } else { BigInt::zero() };
                    assert_eq!(rows, expect);
                    let cols: Rational = ps
                        .iter()
                        .map(|l| Rational::new(chi(a, l) * chi(b, l), z_order(l)))
                        .sum();
                    let expect = if a == b { Rational::one() } else { Rational::zero() };
                    assert_eq!(cols, expect);
                }
            }
        }
    }

    #[test]
    fn character_against_explicit_group_sum() {
        // (1/n!) Σ_π χ_μ(π) χ_λ(πσ) = χ_λ(σ)/d_λ δ_{μλ}
        let n = 4;
        let perms = Permutation::all(n);
        let ps = partitions_of(n, false);
        let sigma = Permutation::with_cycle_type(&p("2,1,1"));
        for mu in &ps {
            for lam in &ps {
                let s: BigInt = perms
                    .iter()
                    .map(|pi| chi(mu, &pi.cycle_type()) * chi(lam, &pi.compose(&sigma).cycle_type()))
                    .sum();
                let lhs = Rational::new(s, factorial(n));
                let rhs = if mu == lam {
                    Rational::new(chi(lam, &p("2,1,1")), crate::partitions::irrep_dim(lam))
                } else {
                    Rational::zero()
                };
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn signed_domain_convention() {
        let d = SignedDomain::new(3);
        assert_eq!(d.pos(-3), 0);
        assert_eq!(d.pos(-1), 2);
        assert_eq!(d.pos(1), 3);
        assert_eq!(d.pos(3), 5);
        for p in 0..6 {
            assert_eq!(d.pos(d.label(p)), p);
        }
    }

    #[test]
    fn figure_matching_coset_type() {
        let m = Matching::from_blocks(5, &[(1, 2), (-1, -2), (3, -4), (4, -5), (5, -3)]).unwrap();
        assert_eq!(m.coset_type(), p("3,2"));
        assert_eq!(Matching::trivial(4).coset_type(), Partition::ones(4));
        assert_eq!(coset_type(&Permutation::identity(6)).unwrap(), Partition::ones(3));
    }

    #[test]
    fn coset_type_of_index_pattern() {
        // σ(1)=1, σ(-1)=-2, σ(2)=-1, σ(-2)=2
        let d = SignedDomain::new(2);
        let mut images = vec![0; 4];
        for (a, b) in [(1, 1), (-1, -2), (2, -1), (-2, 2)] {
            images[d.pos(a)] = d.pos(b);
        }
        let sigma = Permutation::new(images).unwrap();
        assert_eq!(coset_type(&sigma).unwrap(), p("2"));
    }

    #[test]
    fn coset_type_representatives() {
        for n in 1..=6 {
            for l in partitions_of(n, false) {
                assert_eq!(coset_type(&with_coset_type(&l)).unwrap(), l);
            }
        }
    }

    #[test]
    fn matchings_and_representatives() {
        for n in 1..=4 {
            let all = Matching::all(n);
            let double_factorial: usize = (1..2 * n).step_by(2).product();
            assert_eq!(all.len(), double_factorial);
            for m in &all {
                assert_eq!(&Matching::trivial(n).permuted(&m.representative()), m);
            }
        }
    }

    #[test]
    fn hyperoctahedral_group() {
        for n in 1..=4 {
            let h = hyperoctahedral(n);
            assert_eq!(BigInt::from(h.len()), hyperoctahedral_order(n));
            let t = Matching::trivial(n);
            assert!(h.iter().all(|x| t.permuted(x) == t));
        }
    }

    #[test]
    fn coset_type_is_double_coset_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            for _ in 0..200 {
                let s = Permutation::random(2 * n, &mut rng);
                let h1 = random_hyperoctahedral(n, &mut rng);
                let h2 = random_hyperoctahedral(n, &mut rng);
                let t = coset_type(&s).unwrap();
                assert_eq!(coset_type(&h1.compose(&s).compose(&h2)).unwrap(), t);
                assert_eq!(coset_type(&s.inverse()).unwrap(), t);
            }
        }
    }

    #[test]
    fn zonal_examples() {
        for n in 1..=6 {
            for l in partitions_of(n, false) {
                assert_eq!(zonal(&l, &Partition::ones(n)).unwrap(), Rational::one());
            }
        }
        assert_eq!(zonal(&p("2"), &p("2")).unwrap(), Rational::one());
        assert_eq!(
            zonal(&p("1,1"), &p("2")).unwrap(),
            Rational::new((-1).into(), 2.into())
        );
        assert!(zonal(&p("2"), &p("1")).is_err());
    }

    #[test]
    fn zonal_matches_hyperoctahedral_average() {
        for n in 1..=4 {
            for l in partitions_of(n, false) {
                for mu in partitions_of(n, false) {
                    let tau = with_coset_type(&mu);
                    assert_eq!(zonal(&l, &mu).unwrap(), zonal_average(&l, &tau), "{l} {mu}");
                }
            }
        }
    }
}
