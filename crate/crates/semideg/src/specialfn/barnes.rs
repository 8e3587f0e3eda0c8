//! Log of the Barnes G-function.
//!
//! Strategy: raise the argument with `G(z+1) = Γ(z) G(z)` until it is large
//! enough for the asymptotic expansion (DLMF 5.17.5), then telescope back.
//! Because any two arguments differing by an integer are lifted to the same
//! asymptotic seed point, the recurrence `log G(z+1) − log G(z) = log Γ(z)`
//! holds to the accuracy of `log_gamma` itself. The real positive axis stays
//! on the principal branch by construction (everything is real there).

use super::{gamma::log_gamma, near_nonpositive_integer, POLE_TOL};
use crate::{C64, Error, Result, c64};

/// `ζ'(−1)`, from tools/gen_reference_values.py.
const ZETA_PRIME_M1: f64 = -0.165421143700450929213919660243;

/// `B_{2k+2} / (2k (2k+1) (2k+2))` for k = 1..6.
const ASYMP: [f64; 6] = [
    -1.0 / 30.0 / 24.0,        // B4 / (2*3*4)
    1.0 / 42.0 / 120.0,        // B6 / (4*5*6)
    -1.0 / 30.0 / 336.0,       // B8 / (6*7*8)
    5.0 / 66.0 / 720.0,        // B10 / (8*9*10)
    -691.0 / 2730.0 / 1320.0,  // B12 / (10*11*12)
    7.0 / 6.0 / 2184.0,        // B14 / (12*13*14)
];

const SHIFT_THRESHOLD: f64 = 22.0;

// log G(w) for Re w >= SHIFT_THRESHOLD via DLMF 5.17.5 with z = w - 1.
fn log_g_asymptotic(w: C64) -> Result<C64> {
    let z = w - c64(1.0, 0.0);
    let lnz = z.ln();
    let mut acc = z * z * 0.25 + z * log_gamma(z + c64(1.0, 0.0))?
        - (z * (z + c64(1.0, 0.0)) * 0.5 + c64(1.0 / 12.0, 0.0)) * lnz
        - c64(1.0 / 12.0 - ZETA_PRIME_M1, 0.0);
    let z2inv = c64(1.0, 0.0) / (z * z);
    let mut p = z2inv;
    for &coef in ASYMP.iter() {
        acc += c64(coef, 0.0) * p;
        p *= z2inv;
    }
    Ok(acc)
}

/// Principal-branch `log G(z)`, continuous on the positive real axis and
/// satisfying the Barnes recurrence to close to machine precision.
///
/// `G` has zeros at the non-positive integers, where the logarithm is
/// rejected as a pole.
pub fn log_barnes_g(z: C64) -> Result<C64> {
    if near_nonpositive_integer(z, POLE_TOL) {
        return Err(Error::BarnesPole(z));
    }
    let shifts = (SHIFT_THRESHOLD - z.re).ceil().max(0.0) as usize;
    let mut acc = C64::new(0.0, 0.0);
    for m in 0..shifts {
        acc += log_gamma(z + c64(m as f64, 0.0))?;
    }
    Ok(log_g_asymptotic(z + c64(shifts as f64, 0.0))? - acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    // Reference: tools/gen_reference_values.py.
    const LOG_BARNES_G_HALF: C64 = C64::new(-0.5054330544896953827977, 0.0);
    const LOG_BARNES_G_17_06I: C64 = C64::new(0.08271524179184470189718, -0.1215953779081841681407);
    const LOG_BARNES_G_52_M21I: C64 = C64::new(-0.2156217026343674283021, 0.9133649429563940612525);

    #[test]
    fn small_integer_values() {
        assert!(log_barnes_g(c64(1.0, 0.0)).unwrap().norm() < 1e-13);
        assert!(log_barnes_g(c64(3.0, 0.0)).unwrap().norm() < 1e-13);
        let lg4 = log_barnes_g(c64(4.0, 0.0)).unwrap();
        assert!((lg4 - c64(2.0f64.ln(), 0.0)).norm() < 1e-13);
    }

    #[test]
    fn reference_points() {
        let v = log_barnes_g(c64(0.5, 0.0)).unwrap();
        assert!((v - LOG_BARNES_G_HALF).norm() < 1e-13, "{v}");
        let v = log_barnes_g(c64(1.7, 0.6)).unwrap();
        assert!((v - LOG_BARNES_G_17_06I).norm() < 1e-13, "{v}");
        let v = log_barnes_g(c64(5.2, -2.1)).unwrap();
        assert!((v - LOG_BARNES_G_52_M21I).norm() < 1e-12, "{v}");
    }

    #[test]
    fn recurrence_exact_mod_2pi() {
        let tau = 2.0 * std::f64::consts::PI;
        for &z in &[c64(0.5, 0.0), c64(0.3, 1.2), c64(-2.4, 0.7), c64(4.1, -0.3)] {
            let lhs = log_barnes_g(z + c64(1.0, 0.0)).unwrap() - log_barnes_g(z).unwrap();
            let rhs = log_gamma(z).unwrap();
            let k = ((lhs.im - rhs.im) / tau).round();
            assert!((lhs - rhs - c64(0.0, tau * k)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_rejected() {
        assert!(log_barnes_g(c64(0.0, 0.0)).is_err());
        assert!(log_barnes_g(c64(-2.0, 0.0)).is_err());
    }
}
