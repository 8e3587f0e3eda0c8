//! Complex special functions: gamma, log Barnes G, and the generalized
//! hypergeometric series `ₙF_{N−1}`.
//!
//! All routines are pure functions of their arguments and safe to call
//! concurrently. Extended-precision reference values for the tests were
//! produced independently (see `tools/gen_reference_values.py`).

mod barnes;
mod gamma;
mod hyper;

pub use barnes::log_barnes_g;
pub use gamma::{gamma_c, log_gamma};
pub use hyper::{hyp_nf_nm1, hyp_theta_derivs, HypEval, SeriesControl};

/// Arguments closer than this to a pole/zero of gamma or Barnes G are
/// rejected.
pub const POLE_TOL: f64 = 1e-12;

pub(crate) fn near_nonpositive_integer(z: crate::C64, tol: f64) -> bool {
    let k = z.re.round();
    k <= 0.0 && (z - crate::c64(k, 0.0)).norm() < tol
}
