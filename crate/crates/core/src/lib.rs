//! Exact Weingarten calculus for the circular ensembles.
//!
//! Fixed-energy Weingarten functions of CUE and COE, their energy-dependent
//! generalisations as truncated `1/M` series with coefficients rational in
//! the energy offset ε, and the matrix-element and trace correlation
//! functions of chaotic S-matrices built from them. A Monte Carlo module
//! provides independent numeric checks at ε = 0.

pub mod algebra;
pub mod correlations;
pub mod energy;
pub mod error;
pub mod jack;
pub mod memo;
pub mod oracle;
pub mod partitions;
pub mod permutations;
pub mod weingarten;

pub use algebra::{GaussianRational, Rational};
pub use energy::{Ensemble, SeriesRequest};
pub use error::{Error, Result};
pub use partitions::{Alpha, Partition};
pub use permutations::Permutation;

/// Polynomial in ε over ℚ(i), ascending coefficients.
pub type EpsPolynomial = algebra::Poly<GaussianRational>;
/// Reduced rational function of ε with `den(0) = 1`.
pub type EpsRational = algebra::RatFunc<GaussianRational>;
/// Truncated series in `1/M` with [`EpsRational`] coefficients.
pub type MSeries = algebra::Series<EpsRational>;
