//! Numerical laboratory for dilation semigroups acting on weighted
//! sequence lattices.
//!
//! A sequence `x = (x_n)` on the positive integers is acted on by the
//! dilations `D_n x = (x_k) ↦ (x at index nk)`. Under the Bohr lift
//! `n ↔ α(n)` (the vector of prime exponents of `n`) a sequence becomes
//! the coefficient family of a power series in infinitely many variables,
//! and `D_n` becomes multiplication by the monomial `ζ^{α(n)}`.
//!
//! The crate provides:
//!
//! * [`index`] — exact multi-index arithmetic, primes, the Euclid/Bohr
//!   correspondence, Möbius function, multinomials and decomposition
//!   enumeration;
//! * [`lattice`] — weighted ℓ^p spaces, norms, dilation and restriction
//!   operators with measured operator norms on truncations;
//! * [`series`] — point evaluation, membership in the natural domain of
//!   the lifted series, semicharacters, Euler products, multiplicativity
//!   analysis and factorization;
//! * [`convolve`] — Dirichlet convolution, Möbius inversion, Neumann
//!   inversion and convolution-algebra constants;
//! * [`cyclic`] — the sieve recursion, norm-growth measurements,
//!   least-squares cyclicity distance and a verdict engine for
//!   decidable cyclicity predicates.

pub mod convolve;
pub mod cyclic;
pub mod index;
pub mod lattice;
pub mod series;

pub(crate) mod numeric;

pub use num_complex::Complex64;

/// Errors surfaced by the library; every variant names the precondition
/// or rule that failed.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("multi-index entries must have strictly increasing positions and exponents >= 1")]
    InvalidMultiIndex,
    #[error("table weight family has no entry for alpha = {index}")]
    MissingTableWeight { index: String },
    #[error("constant term must be 1, got {re}{im:+}i")]
    NotNormalized { re: f64, im: f64 },
    #[error("coordinate x_1 must equal 1, got {re}{im:+}i")]
    LeadingTermNotOne { re: f64, im: f64 },
    #[error("series is not multiplicative: x[{n}*{k}] != x[{n}]*x[{k}]")]
    NotMultiplicative { n: u64, k: u64 },
    #[error("factor product disagrees with the series at alpha = {index}")]
    FactorizationMismatch { index: String },
    #[error("euler product pole: |zeta_{position} * omega_{position}| = {modulus} >= 1")]
    EulerPole { position: u32, modulus: f64 },
    #[error("expected an affine series (degree <= 1), found degree {degree}")]
    NotAffine { degree: u64 },
    #[error("k = {k} exceeds |gamma| = {degree}")]
    VandermondeRange { k: u64, degree: u64 },
    #[error("{op} is not defined for this weight family")]
    UnsupportedWeight { op: &'static str },
    #[error("{op} requires p = 2")]
    RequiresHilbert { op: &'static str },
    #[error("{op} requires a finite exponent p")]
    RequiresFiniteExponent { op: &'static str },
    #[error("radius r = {r} must lie in (0, 1)")]
    InvalidRadius { r: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
