//! Numerical toolkit for rank-N semi-degenerate Fuchsian systems.
//!
//! A Fuchsian system here is a first-order linear ODE `dΦ/dy = Φ A(y)` on the
//! Riemann sphere whose coefficient `A(y)` has simple poles with traceless,
//! diagonalizable residues. *Semi-degenerate* means two punctures carry
//! generic local exponents while the remaining `n−2` are of spectral type
//! `(N−1, 1)`: one simple eigenvalue `a(N−1)/N` plus `−a/N` with multiplicity
//! `N−1`. For `n = 3` such systems are rigid and solvable in closed form by
//! generalized hypergeometric functions; for `n = 4` their isomonodromic
//! deformation is the Fuji-Suzuki-Tsuda flow, the higher-rank analogue of
//! Painlevé VI.
//!
//! The crate provides, end to end:
//!
//! * complex gamma / log Barnes G / `ₙF_{N−1}` series ([`specialfn`]),
//! * explicit monodromy parameterization by companion/Vandermonde data and
//!   its Fourier-momentum variant built from fusion matrices ([`monodromy`]),
//! * the rigid 3-point system: residues, closed-form fundamental solution,
//!   hypergeometric blocks, connection matrix, and numeric monodromy by
//!   analytic continuation ([`rigid3pt`]),
//! * the trigonometric fusion matrix together with its inverse, shift and
//!   decomposition identities ([`fusion`]),
//! * Schlesinger flow for the 4-point system with tau-function accumulation
//!   ([`schlesinger`]),
//! * root-lattice tau-function asymptotics and extraction of `(σ, β)` from
//!   numeric monodromy ([`taufun`]).
//!
//! Everything is pure and thread-safe by value semantics; parameter sweeps
//! and lattice sums parallelize with rayon at the call sites that need it.

// Force the link against system OpenBLAS/LAPACK used by ndarray-linalg.
extern crate openblas_src;

pub mod config;
pub mod error;
pub mod fusion;
pub mod linalg;
pub mod monodromy;
pub mod ode;
pub mod rigid3pt;
pub mod schlesinger;
pub mod specialfn;
pub mod taufun;
pub mod theta;

pub use error::{Error, Result};
pub use theta::ThetaVector;

/// `f64` complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Shorthand constructor for [`C64`].
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
