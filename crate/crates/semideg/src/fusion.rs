//! Fusion/braiding matrix algebra.
//!
//! The change of basis between conformal-block bases diagonalizing monodromy
//! around different punctures is a closed trigonometric matrix
//!
//! ```text
//! F_{lj}(σ', a, σ) = Π_{k≠l} sin π((a+1)/N + σ'^(j) − σ^(k)) / sin π(σ^(k) − σ^(l)),
//! ```
//!
//! with inverse `F^{-1}(σ', a, σ) = F(−σ, a, −σ')`, diagonal braiding
//! matrices `B`, `B'`, and a two-sided diagonal decomposition `F = X W Y^{-1}`
//! linking it to the Vandermonde-type connection matrices of the monodromy
//! parameterization. Normalization constants are Barnes-G ratios evaluated
//! in log space so that nothing overflows before the final exponential.

use crate::linalg::{diag, fro_dist, identity, inverse, max_norm, CMat};
use crate::specialfn::log_barnes_g;
use crate::theta::ThetaVector;
use crate::{C64, Error, Result, c64};
use rand::Rng;
use std::f64::consts::PI;

/// Sine factors smaller than this are hard errors: the identities degrade
/// uncontrollably near the zeros.
pub const SINE_TOL: f64 = 1e-10;

/// Arguments `(σ', a, σ)` of the fusion matrix.
#[derive(Debug, Clone)]
pub struct FusionContext {
    pub sigma_out: ThetaVector,
    pub sigma_in: ThetaVector,
    pub a: C64,
}

fn sin_pi_checked(z: C64) -> Result<C64> {
    let s = (z * PI).sin();
    if s.norm() < SINE_TOL {
        return Err(Error::SineFactorZero(z));
    }
    Ok(s)
}

fn log_g(z: C64) -> Result<C64> {
    log_barnes_g(z).map_err(|_| Error::NormPole(format!("Barnes G zero at argument {z}")))
}

/// Log of the normalization constant `N(σ', a h₁, σ)`:
/// `Σ_{l,j} log G(1 − a/N + σ^(l) − σ'^(j))
///  − Σ_{k<m} [log G(1 + σ^(k) − σ^(m)) + log G(1 − σ'^(k) + σ'^(m))]`.
pub fn log_norm_n(sigma_out: &ThetaVector, a: C64, sigma_in: &ThetaVector) -> Result<C64> {
    let n = sigma_in.len();
    let nf = n as f64;
    let mut acc = C64::new(0.0, 0.0);
    for l in 0..n {
        for j in 0..n {
            acc += log_g(c64(1.0, 0.0) - a / nf + sigma_in.get(l) - sigma_out.get(j))?;
        }
    }
    for k in 0..n {
        for m in k + 1..n {
            acc -= log_g(c64(1.0, 0.0) + sigma_in.get(k) - sigma_in.get(m))?;
            acc -= log_g(c64(1.0, 0.0) - sigma_out.get(k) + sigma_out.get(m))?;
        }
    }
    Ok(acc)
}

/// Log of the variant normalization with the `+a/N` sign pattern, the one
/// that stays regular for the degenerate field.
pub fn log_norm_ncheck(sigma_out: &ThetaVector, a: C64, sigma_in: &ThetaVector) -> Result<C64> {
    let n = sigma_in.len();
    let nf = n as f64;
    let mut acc = C64::new(0.0, 0.0);
    for l in 0..n {
        for j in 0..n {
            acc += log_g(c64(1.0, 0.0) + a / nf - sigma_in.get(l) + sigma_out.get(j))?;
        }
    }
    for k in 0..n {
        for m in k + 1..n {
            acc -= log_g(c64(1.0, 0.0) + sigma_in.get(k) - sigma_in.get(m))?;
            acc -= log_g(c64(1.0, 0.0) - sigma_out.get(k) + sigma_out.get(m))?;
        }
    }
    Ok(acc)
}

/// `N(σ', a h₁, σ)`.
pub fn norm_n(sigma_out: &ThetaVector, a: C64, sigma_in: &ThetaVector) -> Result<C64> {
    Ok(log_norm_n(sigma_out, a, sigma_in)?.exp())
}

/// `Ň(σ', a h₁, σ)`.
pub fn norm_ncheck(sigma_out: &ThetaVector, a: C64, sigma_in: &ThetaVector) -> Result<C64> {
    Ok(log_norm_ncheck(sigma_out, a, sigma_in)?.exp())
}

/// The trigonometric fusion matrix `F(σ', a, σ)`; rows run over `σ`,
/// columns over `σ'`.
pub fn fusion_f(ctx: &FusionContext) -> Result<CMat> {
    let n = ctx.sigma_in.len();
    let nf = n as f64;
    let mut out = CMat::zeros((n, n));
    for l in 0..n {
        for j in 0..n {
            let mut v = c64(1.0, 0.0);
            for k in 0..n {
                if k == l {
                    continue;
                }
                let num = (ctx.a + c64(1.0, 0.0)) / nf + ctx.sigma_out.get(j) - ctx.sigma_in.get(k);
                let den = ctx.sigma_in.get(k) - ctx.sigma_in.get(l);
                v *= sin_pi_checked(num)? / sin_pi_checked(den)?;
            }
            out[(l, j)] = v;
        }
    }
    Ok(out)
}

/// `F^{-1}(σ', a, σ) = F(−σ, a, −σ')` in closed form.
pub fn fusion_f_inv(ctx: &FusionContext) -> Result<CMat> {
    fusion_f(&FusionContext {
        sigma_out: ctx.sigma_in.negated(),
        sigma_in: ctx.sigma_out.negated(),
        a: ctx.a,
    })
}

/// Diagonal braiding matrix `B(σ) = diag(e^{iπσ^(l)})`.
pub fn braiding_b(sigma: &ThetaVector) -> CMat {
    let entries: Vec<C64> = sigma
        .components()
        .iter()
        .map(|s| (C64::new(0.0, PI) * s).exp())
        .collect();
    diag(&entries)
}

/// Diagonal braiding matrix `B'(σ) = diag(e^{iπ(σ^(j) − (N−1)/N)})`.
pub fn braiding_bp(sigma: &ThetaVector) -> CMat {
    let n = sigma.len() as f64;
    let entries: Vec<C64> = sigma
        .components()
        .iter()
        .map(|s| (C64::new(0.0, PI) * (s - c64((n - 1.0) / n, 0.0))).exp())
        .collect();
    diag(&entries)
}

/// The diagonal factors of `F(σ_cur, a − 1, σ_prev) = X W Y^{-1}`, where `W`
/// is the exponential Vandermonde-ratio connection matrix for the same
/// `(σ_prev, σ_cur, a)` triple and `σ̂ = σ_cur + (a/N)·𝟙`:
///
/// ```text
/// 1/x^(s) = e^{iπ(N−1) σp^(s)} Π_m sin π(σ̂^(m) − σp^(s)) Π_{m≠s} sin π(σp^(m) − σp^(s)),
/// 1/y^(s) = e^{iπ(N−1) σ̂^(s)} Π_m sin π(σ̂^(s) − σp^(m)) Π_{m≠s} sin π(σ̂^(m) − σ̂^(s)).
/// ```
pub fn xy_diagonals(
    sigma_prev: &ThetaVector,
    sigma_cur: &ThetaVector,
    a: C64,
) -> Result<(CMat, CMat)> {
    let n = sigma_prev.len();
    let nf = n as f64;
    let hat: Vec<C64> = sigma_cur.components().iter().map(|s| s + a / nf).collect();
    let mut x = vec![C64::new(0.0, 0.0); n];
    let mut y = vec![C64::new(0.0, 0.0); n];
    for s in 0..n {
        let mut xin = (C64::new(0.0, PI * (nf - 1.0)) * sigma_prev.get(s)).exp();
        for m in 0..n {
            xin *= sin_pi_checked(hat[m] - sigma_prev.get(s))?;
        }
        for m in 0..n {
            if m != s {
                xin *= sin_pi_checked(sigma_prev.get(m) - sigma_prev.get(s))?;
            }
        }
        x[s] = c64(1.0, 0.0) / xin;

        let mut yin = (C64::new(0.0, PI * (nf - 1.0)) * hat[s]).exp();
        for m in 0..n {
            yin *= sin_pi_checked(hat[s] - sigma_prev.get(m))?;
        }
        for m in 0..n {
            if m != s {
                yin *= sin_pi_checked(hat[m] - hat[s])?;
            }
        }
        y[s] = c64(1.0, 0.0) / yin;
    }
    Ok((diag(&x), diag(&y)))
}

/// Sign matrix `D_m = diag((−1)^{δ_{km}})` raised to the `N−1` power.
fn d_sign(m: usize, n: usize) -> CMat {
    let entries: Vec<C64> = (0..n)
        .map(|k| {
            if k == m && (n - 1) % 2 == 1 {
                c64(-1.0, 0.0)
            } else {
                c64(1.0, 0.0)
            }
        })
        .collect();
    diag(&entries)
}

/// Max residual over the weight- and root-shift identities of the fusion
/// matrix:
///
/// * `F(σ', a, σ ± h_m) = D_m^{N−1} F(σ', a ± 1, σ)`
/// * `F(σ' ± h_m, a, σ) = F(σ', a ∓ 1, σ) D_m^{N−1}`
/// * `F(σ', a, σ + h_m − h_s) = D_m^{N−1} D_s^{N−1} F(σ', a, σ)`
/// * `F(σ' + h_m − h_s, a, σ) = F(σ', a, σ) D_m^{N−1} D_s^{N−1}`
pub fn check_shift_identities(ctx: &FusionContext, m: usize, s: usize) -> Result<f64> {
    let n = ctx.sigma_in.len();
    let dm = d_sign(m, n);
    let ds = d_sign(s, n);
    let mut worst = 0.0f64;
    let mut upd = |lhs: &CMat, rhs: &CMat| {
        worst = worst.max(fro_dist(lhs, rhs) / max_norm(rhs).max(1.0));
    };

    for sign in [1.0, -1.0] {
        let lhs = fusion_f(&FusionContext {
            sigma_out: ctx.sigma_out.clone(),
            sigma_in: ctx.sigma_in.shift_by_weight(m, sign),
            a: ctx.a,
        })?;
        let rhs = dm.dot(&fusion_f(&FusionContext {
            sigma_out: ctx.sigma_out.clone(),
            sigma_in: ctx.sigma_in.clone(),
            a: ctx.a + c64(sign, 0.0),
        })?);
        upd(&lhs, &rhs);

        let lhs = fusion_f(&FusionContext {
            sigma_out: ctx.sigma_out.shift_by_weight(m, sign),
            sigma_in: ctx.sigma_in.clone(),
            a: ctx.a,
        })?;
        let rhs = fusion_f(&FusionContext {
            sigma_out: ctx.sigma_out.clone(),
            sigma_in: ctx.sigma_in.clone(),
            a: ctx.a - c64(sign, 0.0),
        })?
        .dot(&dm);
        upd(&lhs, &rhs);
    }

    let base = fusion_f(ctx)?;
    let lhs = fusion_f(&FusionContext {
        sigma_out: ctx.sigma_out.clone(),
        sigma_in: ctx.sigma_in.shift_by_root(m, s),
        a: ctx.a,
    })?;
    let rhs = dm.dot(&ds).dot(&base);
    upd(&lhs, &rhs);

    let lhs = fusion_f(&FusionContext {
        sigma_out: ctx.sigma_out.shift_by_root(m, s),
        sigma_in: ctx.sigma_in.clone(),
        a: ctx.a,
    })?;
    let rhs = base.dot(&dm.dot(&ds));
    upd(&lhs, &rhs);

    Ok(worst)
}

/// Residual of the boundary identity used to make the composite monodromy
/// blocks independent of the reference fusion channel `m`:
/// `C_m B'(−θ + h_m) F^{-1}(−θ + h_m, a, σ) = −B(−θ) F^{-1}(−θ, a − 1, σ)`
/// with `(C_m)_{jj} = (−1)^{N δ_{jm}}`.
pub fn check_channel_identity(
    theta: &ThetaVector,
    a: C64,
    sigma: &ThetaVector,
    m: usize,
) -> Result<f64> {
    let n = theta.len();
    let mtheta = theta.negated();
    let shifted = mtheta.shift_by_weight(m, 1.0);
    let cm_entries: Vec<C64> = (0..n)
        .map(|j| {
            if j == m && n % 2 == 1 {
                c64(-1.0, 0.0)
            } else {
                c64(1.0, 0.0)
            }
        })
        .collect();
    let cm = diag(&cm_entries);
    let lhs = cm.dot(&braiding_bp(&shifted)).dot(&fusion_f_inv(&FusionContext {
        sigma_out: shifted.clone(),
        sigma_in: sigma.clone(),
        a,
    })?);
    let rhs = braiding_b(&mtheta)
        .dot(&fusion_f_inv(&FusionContext {
            sigma_out: mtheta.clone(),
            sigma_in: sigma.clone(),
            a: a - c64(1.0, 0.0),
        })?)
        .mapv(|z| -z);
    Ok(fro_dist(&lhs, &rhs) / max_norm(&rhs).max(1.0))
}

/// Draw a traceless exponent vector whose pairwise differences stay clear of
/// the integer lattice (so every sine factor is safely non-zero).
pub fn random_admissible_sigma<R: Rng>(rng: &mut R, n: usize) -> ThetaVector {
    loop {
        let comps: Vec<C64> = (0..n)
            .map(|_| c64(rng.gen_range(-0.35..0.35), rng.gen_range(-0.12..0.12)))
            .collect();
        let v = ThetaVector::projected(comps);
        let mut ok = true;
        'outer: for i in 0..n {
            for j in 0..n {
                if i != j {
                    let d = v.get(i) - v.get(j);
                    let frac = d - c64(d.re.round(), 0.0);
                    if frac.norm() < 0.04 {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            return v;
        }
    }
}

/// Random semi-degenerate charge bounded away from the degeneration loci of
/// the identities under ±1 shifts.
pub fn random_charge<R: Rng>(rng: &mut R) -> C64 {
    c64(rng.gen_range(0.12..0.82), rng.gen_range(-0.1..0.1))
}

/// Per-identity worst residuals over a random sweep; used by the CLI
/// battery and the acceptance suite.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct BatteryResiduals {
    pub inverse: f64,
    pub shifts: f64,
    pub decomposition: f64,
    pub channel: f64,
    pub degenerate_draws: usize,
}

/// Run the identity battery at rank `n` over `draws` random parameter draws.
///
/// Draws that land within guard distance of a sine zero are counted, not
/// propagated as failures.
pub fn identity_battery(n: usize, draws: usize, seed: u64) -> BatteryResiduals {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = BatteryResiduals::default();
    for _ in 0..draws {
        let ctx = FusionContext {
            sigma_out: random_admissible_sigma(&mut rng, n),
            sigma_in: random_admissible_sigma(&mut rng, n),
            a: random_charge(&mut rng),
        };
        let m = rng.gen_range(0..n);
        let s = (m + 1 + rng.gen_range(0..n - 1)) % n;
        let run = || -> Result<(f64, f64, f64, f64)> {
            let f = fusion_f(&ctx)?;
            let finv = fusion_f_inv(&ctx)?;
            let inv_resid = fro_dist(&finv.dot(&f), &identity(n));
            // cross-check the closed form against a numeric inverse
            let inv_resid = inv_resid.max(fro_dist(&finv, &inverse(&f)?));
            let shift_resid = check_shift_identities(&ctx, m, s)?;
            // decomposition F(σ_cur, a − 1, σ_prev) = X W Y^{-1}
            let w = crate::monodromy::build_wm(&ctx.sigma_in, &ctx.sigma_out, ctx.a)?;
            let (x, y) = xy_diagonals(&ctx.sigma_in, &ctx.sigma_out, ctx.a)?;
            let f_shifted = fusion_f(&FusionContext {
                sigma_out: ctx.sigma_out.clone(),
                sigma_in: ctx.sigma_in.clone(),
                a: ctx.a - c64(1.0, 0.0),
            })?;
            let decomp_resid = fro_dist(&f_shifted, &x.dot(&w).dot(&inverse(&y)?))
                / max_norm(&f_shifted).max(1.0);
            let channel_resid =
                check_channel_identity(&ctx.sigma_out, ctx.a, &ctx.sigma_in, m)?;
            Ok((inv_resid, shift_resid, decomp_resid, channel_resid))
        };
        match run() {
            Ok((i, sh, d, ch)) => {
                out.inverse = out.inverse.max(i);
                out.shifts = out.shifts.max(sh);
                out.decomposition = out.decomposition.max(d);
                out.channel = out.channel.max(ch);
            }
            Err(Error::SineFactorZero(_)) => out.degenerate_draws += 1,
            Err(e) => panic!("unexpected battery failure: {e}"),
        }
    }
    out
}
