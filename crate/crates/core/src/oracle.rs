//! Monte Carlo estimates of fixed-energy moments over Haar-random CUE and
//! COE matrices. Floating point lives only here and is used only to check
//! exact results.

use num::complex::Complex;
use num::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::energy::Ensemble;
use crate::error::{Error, Result};
use crate::permutations::SignedDomain;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Float> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.dim + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }
}

/// Haar unitary from Gram–Schmidt on a complex Gaussian matrix. Columns come
/// out with positive diagonal R, which makes the law exactly Haar.
pub fn haar_unitary<T, R>(dim: usize, rng: &mut R) -> CMatrix<T>
where
    T: Float,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    let half = T::from(0.5).unwrap().sqrt();
    let mut cols: Vec<Vec<Complex<T>>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * half)
                .collect()
        })
        .collect();
    for k in 0..dim {
        // two passes keep the columns orthogonal to working precision
        for _ in 0..2 {
            for j in 0..k {
                let (done, rest) = cols.split_at_mut(k);
                let q = &done[j];
                let proj = q
                    .iter()
                    .zip(rest[0].iter())
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
                for (x, a) in rest[0].iter_mut().zip(q) {
                    *x = *x - *a * proj;
                }
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
        cols[k].iter_mut().for_each(|z| *z = *z / norm);
    }
    let mut u = CMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u.set(i, j, *z);
        }
    }
    u
}

/// One Haar sample: U for CUE, `UᵀU` for COE.
pub fn haar_sample_with<T, R>(ensemble: Ensemble, dim: usize, rng: &mut R) -> CMatrix<T>
where
    T: Float,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    let u = haar_unitary(dim, rng);
    match ensemble {
        Ensemble::Cue => u,
        Ensemble::Coe => u.transpose().mul(&u),
    }
}

/// One seeded double-precision Haar sample.
pub fn haar_sample(ensemble: Ensemble, dim: usize, seed: u64) -> CMatrix<f64> {
    haar_sample_with(ensemble, dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The matrix-element monomial whose average is estimated. Channel indices
/// are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "ensemble", rename_all = "lowercase")]
pub enum MomentPattern {
    /// `∏_k S_{i_k j_k} S†_{p_k q_k}`
    Cue {
        i: Vec<u64>,
        j: Vec<u64>,
        p: Vec<u64>,
        q: Vec<u64>,
    },
    /// `∏_k S_{i_k i_{-k}} S†_{j_k j_{-k}}`, tuples in signed order.
    Coe { i: Vec<u64>, j: Vec<u64> },
}

impl MomentPattern {
    pub fn ensemble(&self) -> Ensemble {
        match self {
            MomentPattern::Cue { .. } => Ensemble::Cue,
            MomentPattern::Coe { .. } => Ensemble::Coe,
        }
    }

    fn max_index(&self) -> u64 {
        let all: Vec<&Vec<u64>> = match self {
            MomentPattern::Cue { i, j, p, q } => vec![i, j, p, q],
            MomentPattern::Coe { i, j } => vec![i, j],
        };
        all.iter().flat_map(|v| v.iter()).copied().max().unwrap_or(0)
    }

    fn validate(&self, dim: usize) -> Result<()> {
        let ok_lengths = match self {
            MomentPattern::Cue { i, j, p, q } => {
                j.len() == i.len() && p.len() == i.len() && q.len() == i.len()
            }
            MomentPattern::Coe { i, j } => i.len() == j.len() && i.len() % 2 == 0,
        };
        if !ok_lengths {
            return Err(Error::Invalid("inconsistent index tuple lengths".into()));
        }
        let zero = match self {
            MomentPattern::Cue { i, j, p, q } => [i, j, p, q].iter().any(|v| v.contains(&0)),
            MomentPattern::Coe { i, j } => i.contains(&0) || j.contains(&0),
        };
        if zero || self.max_index() > dim as u64 {
            return Err(Error::Invalid(format!("channel indices must lie in 1..={dim}")));
        }
        Ok(())
    }

    /// The monomial evaluated on one matrix.
    pub fn evaluate<T: Float>(&self, s: &CMatrix<T>) -> Complex<T> {
        let at = |a: u64, b: u64| s.get(a as usize - 1, b as usize - 1);
        let mut acc = Complex::new(T::one(), T::zero());
        match self {
            MomentPattern::Cue { i, j, p, q } => {
                for k in 0..i.len() {
                    acc = acc * at(i[k], j[k]) * at(q[k], p[k]).conj();
                }
            }
            MomentPattern::Coe { i, j } => {
                let dom = SignedDomain::new(i.len() / 2);
                for k in 1..=dom.n as i64 {
                    let (pk, nk) = (dom.pos(k), dom.pos(-k));
                    acc = acc * at(i[pk], i[nk]) * at(j[pk], j[nk]).conj();
                }
            }
        }
        acc
    }
}

/// Empirical mean of a moment with its standard error.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub mean_re: f64,
    pub mean_im: f64,
    /// Sample standard deviation of the complex samples over `sqrt(samples)`.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MomentEstimate {
    pub fn mean(&self) -> Complex<f64> {
        Complex::new(self.mean_re, self.mean_im)
    }
}

/// Running count, mean and sum of squared deviations (`E|x - mean|²`).
#[derive(Clone, Copy, Debug)]
struct Moments {
    n: u64,
    mean: Complex<f64>,
    m2: f64,
}

impl Moments {
    fn new() -> Self {
        Moments {
            n: 0,
            mean: Complex::new(0.0, 0.0),
            m2: 0.0,
        }
    }

    fn push(&mut self, x: Complex<f64>) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        let d2 = x - self.mean;
        self.m2 += d.re * d2.re + d.im * d2.im;
    }

    fn merge(self, other: Self) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        Moments {
            n,
            mean: self.mean + d * w,
            m2: self.m2 + other.m2 + d.norm_sqr() * self.n as f64 * w,
        }
    }
}

const CHUNKS: u64 = 256;

/// Estimate the moment over `samples` independent Haar matrices. The
/// result depends only on the seed, not on the thread count.
pub fn mc_moment(
    dim: usize,
    pattern: &MomentPattern,
    samples: u64,
    seed: u64,
) -> Result<MomentEstimate> {
    pattern.validate(dim)?;
    if samples < 2 {
        return Err(Error::Invalid("need at least two samples".into()));
    }
    let ensemble = pattern.ensemble();
    let per = samples / CHUNKS;
    let extra = samples % CHUNKS;
    let parts: Vec<Moments> = (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = per + u64::from(c < extra);
            let mut acc = Moments::new();
            for _ in 0..count {
                let s: CMatrix<f64> = haar_sample_with(ensemble, dim, &mut rng);
                acc.push(pattern.evaluate(&s));
            }
            acc
        })
        .collect();
    let total = parts.into_iter().fold(Moments::new(), Moments::merge);
    let var = total.m2 / (total.n - 1) as f64;
    Ok(MomentEstimate {
        mean_re: total.mean.re,
        mean_im: total.mean.im,
        stderr: (var / total.n as f64).sqrt(),
        samples: total.n,
        seed,
    })
}

/// Comparison of an estimate with an exact target.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McReport {
    pub target: f64,
    pub estimate: f64,
    pub estimate_im: f64,
    pub stderr: f64,
    pub sigmas: f64,
    pub pass: bool,
}

/// Pass when the estimate lies within `tolerance` standard errors of the
/// target.
pub fn mc_check(
    dim: usize,
    pattern: &MomentPattern,
    target: f64,
    samples: u64,
    seed: u64,
    tolerance: f64,
) -> Result<McReport> {
    let est = mc_moment(dim, pattern, samples, seed)?;
    let dist = (est.mean() - Complex::new(target, 0.0)).norm();
    let sigmas = dist / est.stderr;
    Ok(McReport {
        target,
        estimate: est.mean_re,
        estimate_im: est.mean_im,
        stderr: est.stderr,
        sigmas,
        pass: sigmas <= tolerance,
    })
}
