//! Adaptive Dormand-Prince 5(4) integration for complex-valued states.
//!
//! One embedded RK pair drives everything that needs continuation in this
//! crate: matrix fundamental solutions along loops in the `y`-plane, scalar
//! companion systems for hypergeometric connection checks, and the
//! Schlesinger flow (with the tau-function log-derivative accumulated as an
//! extra state component, so its quadrature error is order-matched to the
//! state error).

use crate::linalg::{CMat, CVec};
use crate::{C64, Error, Result};

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
// b - b_hat (error estimator weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Tolerances and step limits for the adaptive integrator.
#[derive(Debug, Clone)]
pub struct OdeSettings {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub h_min: f64,
}

impl Default for OdeSettings {
    fn default() -> Self {
        Self { rtol: 1e-12, atol: 1e-12, max_steps: 2_000_000, h_min: 1e-13 }
    }
}

/// Integrate `dy/ds = f(s, y)` from `s0` to `s1` (real parameter, complex
/// state). FSAL Dormand-Prince with the classic 0.9 safety factor and step
/// bounds [0.2, 5.0].
pub fn integrate<F>(f: &F, s0: f64, s1: f64, y0: CVec, settings: &OdeSettings) -> Result<CVec>
where
    F: Fn(f64, &CVec) -> CVec,
{
    let span = s1 - s0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let mut s = s0;
    let mut y = y0;
    let mut k1 = f(s, &y);
    // initial step from the RHS magnitude
    let y_scale = y.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let f_scale = k1.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut h = if f_scale > 0.0 {
        dir * (0.01 * y_scale / f_scale).min(span.abs())
    } else {
        span * 0.1
    };

    for _ in 0..settings.max_steps {
        if (s1 - s) * dir <= 0.0 {
            return Ok(y);
        }
        if (h / (s1 - s)).abs() > 1.0 {
            h = s1 - s;
        }
        let k2 = f(s + C2 * h, &stage(&y, h, &[(A21, &k1)]));
        let k3 = f(s + C3 * h, &stage(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(s + C4 * h, &stage(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            s + C5 * h,
            &stage(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            s + h,
            &stage(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = stage(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(s + h, &y_new);

        let mut err_sq = 0.0;
        for i in 0..y.len() {
            let e = E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i];
            let scale = settings.atol
                + settings.rtol * y[i].norm().max(y_new[i].norm());
            err_sq += (e.norm() * h.abs() / scale).powi(2);
        }
        let err = (err_sq / y.len() as f64).sqrt();

        if err <= 1.0 {
            s += h;
            y = y_new;
            k1 = k7;
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        if h.abs() < settings.h_min {
            return Err(Error::StepFailure(s));
        }
    }
    Err(Error::StepFailure(s))
}

fn stage(y: &CVec, h: f64, terms: &[(f64, &CVec)]) -> CVec {
    let mut out = y.clone();
    for (c, k) in terms {
        let w = *c * h;
        for i in 0..out.len() {
            out[i] += k[i] * w;
        }
    }
    out
}

/// Continue the matrix solution of `dΦ/dy = Φ A(y)` along a polygonal path.
///
/// Each straight segment `y(s) = p + s (q − p)` is integrated as
/// `dΦ/ds = Φ A(y(s)) (q − p)`. The path must stay clear of the poles of
/// `A`; the homotopy class of the polygon is all that matters for the
/// resulting monodromy.
pub fn continue_matrix_ode<F>(
    a_of_y: &F,
    path: &[C64],
    phi0: &CMat,
    settings: &OdeSettings,
) -> Result<CMat>
where
    F: Fn(C64) -> CMat,
{
    let n = phi0.nrows();
    let mut flat = CVec::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            flat[i * n + j] = phi0[(i, j)];
        }
    }
    for seg in path.windows(2) {
        let (p, q) = (seg[0], seg[1]);
        let dy = q - p;
        if dy.norm() == 0.0 {
            continue;
        }
        let rhs = |s: f64, y: &CVec| -> CVec {
            let a = a_of_y(p + dy * s);
            let mut out = CVec::zeros(n * n);
            // row-wise: (Phi A)_{ij} = sum_k Phi_{ik} A_{kj}
            for i in 0..n {
                for j in 0..n {
                    let mut acc = C64::new(0.0, 0.0);
                    for k in 0..n {
                        acc += y[i * n + k] * a[(k, j)];
                    }
                    out[i * n + j] = acc * dy;
                }
            }
            out
        };
        flat = integrate(&rhs, 0.0, 1.0, flat, settings)?;
    }
    let mut out = CMat::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = flat[i * n + j];
        }
    }
    Ok(out)
}

/// Accumulated continuous logarithm of `g(y)` along a polygonal path:
/// returns `log g(end)` reached from the principal `log g(start)` by adding
/// principal logs of consecutive ratios. Segments must be short enough that
/// `g` never makes a half-turn within one of them.
pub fn continuous_log_along<G>(g: &G, path: &[C64]) -> C64
where
    G: Fn(C64) -> C64,
{
    let mut acc = g(path[0]).ln();
    for seg in path.windows(2) {
        let ratio = g(seg[1]) / g(seg[0]);
        acc += ratio.ln();
    }
    acc
}
