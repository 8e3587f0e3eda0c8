//! Generalized hypergeometric series `ₙF_{N−1}(a; b; x)`.
//!
//! Plain power series with term recurrence
//! `T_{k+1} = T_k · Π(a_i + k) / Π(b_j + k) · x / (k + 1)`,
//! stopped once *two* consecutive terms fall below tolerance (alternating
//! series can have a single accidentally small term).

use crate::{C64, Error, Result, c64};

/// Convergence controls for series summation.
#[derive(Debug, Clone)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { rel_tol: 1e-13, abs_tol: 1e-15, max_terms: 1_000_000 }
    }
}

impl SeriesControl {
    /// Tighter tolerances for evaluations feeding finite differences.
    pub fn strict() -> Self {
        Self { rel_tol: 1e-16, abs_tol: 1e-18, max_terms: 1_000_000 }
    }
}

/// Series value together with a truncation-error estimate.
#[derive(Debug, Clone, Copy)]
pub struct HypEval {
    pub value: C64,
    /// Magnitude of the final two terms; a proxy for the truncation error.
    pub residual: f64,
    pub terms: usize,
}

const PARAM_INT_TOL: f64 = 1e-12;

/// Index at which the series terminates because an upper parameter is a
/// non-positive integer, if any.
fn termination_index(upper: &[C64]) -> Option<usize> {
    upper
        .iter()
        .filter_map(|a| {
            let k = a.re.round();
            if k <= 0.0 && (a - c64(k, 0.0)).norm() < PARAM_INT_TOL {
                Some((-k) as usize)
            } else {
                None
            }
        })
        .min()
}

/// `ₙF_{N−1}(a; b; x) = Σ_k Π(a_i)_k / Π(b_j)_k · x^k / k!`.
///
/// Requires `|x| < 1` unless the series terminates. Any lower parameter at a
/// non-positive integer is rejected.
pub fn hyp_nf_nm1(upper: &[C64], lower: &[C64], x: C64, ctl: &SeriesControl) -> Result<HypEval> {
    for b in lower {
        let k = b.re.round();
        if k <= 0.0 && (b - c64(k, 0.0)).norm() < PARAM_INT_TOL {
            return Err(Error::LowerParameterPole(*b));
        }
    }
    let terminates = termination_index(upper);
    if terminates.is_none() && x.norm() >= 1.0 - 1e-6 {
        return Err(Error::OutsideDomain(x));
    }

    let mut term = c64(1.0, 0.0);
    let mut sum = term;
    let mut prev_small = false;
    let mut last = 0.0f64;
    let hard_stop = terminates.unwrap_or(usize::MAX);
    for k in 0..ctl.max_terms {
        if k >= hard_stop {
            return Ok(HypEval { value: sum, residual: 0.0, terms: k });
        }
        let kf = k as f64;
        let mut num = c64(1.0, 0.0);
        for a in upper {
            num *= a + c64(kf, 0.0);
        }
        let mut den = c64(kf + 1.0, 0.0);
        for b in lower {
            den *= b + c64(kf, 0.0);
        }
        term = term * num / den * x;
        sum += term;
        let tol = ctl.abs_tol.max(ctl.rel_tol * sum.norm());
        let small = term.norm() <= tol;
        if small && prev_small {
            return Ok(HypEval { value: sum, residual: term.norm() + last, terms: k + 1 });
        }
        prev_small = small;
        last = term.norm();
    }
    Err(Error::NoConvergence { max_terms: ctl.max_terms, last_term: term.norm() })
}

/// `(θ^m w)(x)` for `m = 0..=kmax` where `θ = x d/dx` and `w = ₙF_{N−1}`.
///
/// Seeds first-order companion systems for analytic continuation of the
/// series beyond its disk of convergence.
pub fn hyp_theta_derivs(
    upper: &[C64],
    lower: &[C64],
    x: C64,
    ctl: &SeriesControl,
    kmax: usize,
) -> Result<Vec<C64>> {
    for b in lower {
        let k = b.re.round();
        if k <= 0.0 && (b - c64(k, 0.0)).norm() < PARAM_INT_TOL {
            return Err(Error::LowerParameterPole(*b));
        }
    }
    if x.norm() >= 1.0 - 1e-6 && termination_index(upper).is_none() {
        return Err(Error::OutsideDomain(x));
    }
    let mut term = c64(1.0, 0.0);
    let mut sums = vec![C64::new(0.0, 0.0); kmax + 1];
    sums[0] = term;
    let mut prev_small = false;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        let mut num = c64(1.0, 0.0);
        for a in upper {
            num *= a + c64(kf, 0.0);
        }
        let mut den = c64(kf + 1.0, 0.0);
        for b in lower {
            den *= b + c64(kf, 0.0);
        }
        term = term * num / den * x;
        let m = kf + 1.0;
        let mut pw = c64(1.0, 0.0);
        for s in sums.iter_mut() {
            *s += term * pw;
            pw *= c64(m, 0.0);
        }
        // weight m^kmax inflates late terms; gate on the weighted magnitude
        let weighted = term.norm() * m.powi(kmax as i32);
        let scale = sums[kmax].norm().max(sums[0].norm());
        let small = weighted <= ctl.abs_tol.max(ctl.rel_tol * scale);
        if small && prev_small {
            return Ok(sums);
        }
        prev_small = small;
    }
    Err(Error::NoConvergence { max_terms: ctl.max_terms, last_term: term.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    // Reference: tools/gen_reference_values.py.
    const HYP32_SPOT: C64 = C64::new(1.018654658543088960287, 0.06043343657334094918974);
    const HYP21_SPOT: C64 = C64::new(0.9214017964911942883693, -0.002970099506736048954955);

    fn rel_err(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn empty_sum_at_zero() {
        let v = hyp_nf_nm1(
            &[c64(0.3, 0.2), c64(1.5, 0.0)],
            &[c64(0.9, -0.4)],
            c64(0.0, 0.0),
            &SeriesControl::default(),
        )
        .unwrap();
        assert_eq!(v.value, c64(1.0, 0.0));
    }

    #[test]
    fn log_identity_2f1() {
        // 2F1(1, 1; 2; x) = -ln(1 - x)/x
        let x = c64(0.3, 0.0);
        let v = hyp_nf_nm1(
            &[c64(1.0, 0.0), c64(1.0, 0.0)],
            &[c64(2.0, 0.0)],
            x,
            &SeriesControl::default(),
        )
        .unwrap();
        let expected = -(c64(1.0, 0.0) - x).ln() / x;
        assert!(rel_err(v.value, expected) < 1e-13);
        assert!((expected.re - 1.18892).abs() < 1e-5);
    }

    #[test]
    fn terminating_binomial_with_cancellation() {
        // upper (-2, b1) against lower (b1) telescopes to (1 - x)^2
        for &x in &[c64(0.4, 0.1), c64(2.5, -1.0), c64(-3.0, 0.0)] {
            let b1 = c64(0.77, 0.31);
            let v = hyp_nf_nm1(&[c64(-2.0, 0.0), b1], &[b1], x, &SeriesControl::default())
                .unwrap();
            let expected = (c64(1.0, 0.0) - x) * (c64(1.0, 0.0) - x);
            assert!(rel_err(v.value, expected) < 1e-13);
            assert_eq!(v.residual, 0.0);
        }
    }

    #[test]
    fn complex_reference_points() {
        let v = hyp_nf_nm1(
            &[c64(0.3, 0.0), c64(0.5, 0.2), c64(1.1, 0.0)],
            &[c64(0.9, 0.0), c64(1.4, -0.3)],
            c64(0.35, 0.2),
            &SeriesControl::default(),
        )
        .unwrap();
        assert!(rel_err(v.value, HYP32_SPOT) < 1e-13);
        let v = hyp_nf_nm1(
            &[c64(0.25, 0.15), c64(0.8, 0.0)],
            &[c64(1.3, 0.0)],
            c64(-0.45, 0.3),
            &SeriesControl::default(),
        )
        .unwrap();
        assert!(rel_err(v.value, HYP21_SPOT) < 1e-13);
    }

    #[test]
    fn guards() {
        let ctl = SeriesControl::default();
        assert!(matches!(
            hyp_nf_nm1(&[c64(0.3, 0.0)], &[c64(-2.0, 0.0)], c64(0.1, 0.0), &ctl),
            Err(Error::LowerParameterPole(_))
        ));
        assert!(matches!(
            hyp_nf_nm1(&[c64(0.3, 0.0)], &[c64(0.9, 0.0)], c64(1.2, 0.0), &ctl),
            Err(Error::OutsideDomain(_))
        ));
        let tiny = SeriesControl { max_terms: 3, ..SeriesControl::default() };
        assert!(matches!(
            hyp_nf_nm1(&[c64(0.3, 0.0)], &[c64(0.9, 0.0)], c64(0.9, 0.0), &tiny),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn theta_derivs_match_contiguous_derivative() {
        // theta w = x w', and w' = (prod a / prod b) F(a+1; b+1; x)
        let upper = [c64(0.4, 0.1), c64(1.2, -0.3)];
        let lower = [c64(0.85, 0.2)];
        let x = c64(0.3, -0.2);
        let ctl = SeriesControl::default();
        let d = hyp_theta_derivs(&upper, &lower, x, &ctl, 1).unwrap();
        let up1: Vec<C64> = upper.iter().map(|a| a + c64(1.0, 0.0)).collect();
        let lo1: Vec<C64> = lower.iter().map(|b| b + c64(1.0, 0.0)).collect();
        let fp = hyp_nf_nm1(&up1, &lo1, x, &ctl).unwrap().value;
        let ratio = upper.iter().product::<C64>() / lower.iter().product::<C64>();
        assert!(rel_err(d[1], x * ratio * fp) < 1e-12);
        assert!(rel_err(d[0], hyp_nf_nm1(&upper, &lower, x, &ctl).unwrap().value) < 1e-14);
    }
}
