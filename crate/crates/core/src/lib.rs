//! Numerical harmonic analysis on root systems.
//!
//! The crate implements the computational stack behind the Ramanujan master
//! identities for the hypergeometric Fourier transform associated with a
//! triple `(a, Sigma, m)`: a Euclidean vector space, a (possibly non-reduced)
//! root system and a positive Weyl-invariant multiplicity function.
//!
//! Module map:
//!
//! * [`rootsys`] — root-system combinatorics: roots, Weyl group, weight
//!   lattices, dominance order and the derived constants used everywhere else.
//! * [`gammac`] — complex Gamma function and the Harish-Chandra `c`-function
//!   family with its normalizations.
//! * [`specfun`] — the `d` and `b` functions, singularity classification and
//!   tube-domain membership predicates.
//! * [`jacobi`] — Heckman-Opdam Jacobi polynomials, their norms, the Jacobi
//!   transform and series convergence control.
//! * [`hyper1`] — rank-one hypergeometric functions through Gauss 2F1,
//!   classical orthogonal polynomials and the associated Legendre Q.
//! * [`quad`] — deterministic quadrature: torus grids, vertical-line contour
//!   integration and half-line integrals.
//! * [`master`] — the master-identity harness: Hardy classes, alternating
//!   Jacobi series, contour extension, transform and Plancherel checks.

// Numeric kernels index matrices and carry full-precision source constants;
// these two lints fight that idiom.
#![allow(clippy::needless_range_loop, clippy::excessive_precision)]

pub mod gammac;
pub mod hyper1;
pub mod jacobi;
pub mod master;
pub mod quad;
pub mod rootsys;
pub mod singular;
pub mod specfun;

pub use num_complex::Complex64;

pub use rootsys::{RootSystem, SpectralParameter, Weight};
pub use singular::{EvalResult, Singular};
