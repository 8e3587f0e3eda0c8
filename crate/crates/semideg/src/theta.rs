//! Traceless exponent vectors and `sl_N` weight/root utilities.

use crate::{C64, Error, Result, c64};
use serde::{Deserialize, Serialize};

/// Vector of local exponents `(θ^(1), ..., θ^(N))` with components summing
/// to zero. This is the diagonal of a traceless residue or the logarithm
/// spectrum of a monodromy matrix divided by `2πi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThetaVector {
    components: Vec<C64>,
}

/// Tolerance for the zero-sum invariant.
pub const TRACE_TOL: f64 = 1e-12;

/// Inputs closer than this to a degenerate locus (coincident exponents,
/// integer differences) are rejected instead of treated as limits.
pub const DEGENERACY_TOL: f64 = 1e-6;

impl ThetaVector {
    /// Build from components, enforcing the zero-sum invariant.
    pub fn new(components: Vec<C64>) -> Result<Self> {
        let sum: C64 = components.iter().sum();
        if sum.norm() > TRACE_TOL * (1.0 + components.iter().map(|z| z.norm()).sum::<f64>()) {
            return Err(Error::InvalidInput(format!(
                "exponent components must sum to zero (got {sum})"
            )));
        }
        Ok(Self { components })
    }

    /// Build from arbitrary components by subtracting the mean.
    pub fn projected(mut components: Vec<C64>) -> Self {
        let mean: C64 = components.iter().sum::<C64>() / components.len() as f64;
        for z in components.iter_mut() {
            *z -= mean;
        }
        Self { components }
    }

    /// The zero vector of length `n`.
    pub fn zero(n: usize) -> Self {
        Self { components: vec![C64::new(0.0, 0.0); n] }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn get(&self, i: usize) -> C64 {
        self.components[i]
    }

    /// `(θ, θ) = Σ (θ^(j))²`.
    pub fn norm_sq(&self) -> C64 {
        self.components.iter().map(|z| z * z).sum()
    }

    /// Euclidean pairing `(θ, φ)`.
    pub fn pairing(&self, other: &Self) -> C64 {
        self.components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn negated(&self) -> Self {
        Self { components: self.components.iter().map(|z| -z).collect() }
    }

    /// Component-wise sum; both vectors stay traceless so no re-check.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(other.components.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Shift by an integer vector (root-lattice move).
    pub fn shift_by_ints(&self, w: &[i64]) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(w.iter())
                .map(|(z, &k)| z + c64(k as f64, 0.0))
                .collect(),
        }
    }

    /// Shift by `+h_m - h_s` (integer root vector of `sl_N`).
    pub fn shift_by_root(&self, m: usize, s: usize) -> Self {
        let mut components = self.components.clone();
        components[m] += c64(1.0, 0.0);
        components[s] -= c64(1.0, 0.0);
        Self { components }
    }

    /// Shift by the weight `h_s` of the first fundamental representation,
    /// `h_s^(k) = δ_{sk} − 1/N`. The result is again traceless.
    pub fn shift_by_weight(&self, s: usize, sign: f64) -> Self {
        let n = self.components.len() as f64;
        let mut components = self.components.clone();
        for (k, z) in components.iter_mut().enumerate() {
            let h = if k == s { 1.0 - 1.0 / n } else { -1.0 / n };
            *z += c64(sign * h, 0.0);
        }
        Self { components }
    }

    /// Reject exponent vectors whose pairwise differences come within
    /// `DEGENERACY_TOL` of an integer (including 0: coincident exponents).
    pub fn check_generic(&self) -> Result<()> {
        let n = self.components.len();
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    continue;
                }
                let d = self.components[j] - self.components[k];
                let nearest = d.re.round();
                if (d - c64(nearest, 0.0)).norm() < DEGENERACY_TOL {
                    return Err(Error::ResonantExponents(d));
                }
            }
        }
        Ok(())
    }

    /// Max distance of any pairwise difference to the nearest *non-zero*
    /// integer; used by the non-resonance guard of the 3-point solution.
    pub fn check_nonresonant(&self) -> Result<()> {
        let n = self.components.len();
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    continue;
                }
                let d = self.components[j] - self.components[k];
                if d.norm() < DEGENERACY_TOL {
                    return Err(Error::DegenerateSpectrum(d));
                }
                let nearest = d.re.round();
                if nearest != 0.0 && (d - c64(nearest, 0.0)).norm() < DEGENERACY_TOL {
                    return Err(Error::ResonantExponents(d));
                }
            }
        }
        Ok(())
    }

    /// `exp(2πi θ^(j))` for all components.
    pub fn exponentials(&self) -> Vec<C64> {
        self.components
            .iter()
            .map(|z| (C64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp())
            .collect()
    }
}

/// Weight `h_s` of the first fundamental representation of `sl_N` as a real
/// vector: `h_s^(k) = δ_{sk} − 1/N` (0-based `s`).
pub fn weight_h(s: usize, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| if k == s { 1.0 - 1.0 / n as f64 } else { -1.0 / n as f64 })
        .collect()
}

/// `h_1² = (N−1)/N`, the squared norm of any fundamental weight `h_s`.
pub fn weight_norm_sq(n: usize) -> f64 {
    (n as f64 - 1.0) / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonzero_trace() {
        assert!(ThetaVector::new(vec![c64(0.5, 0.0), c64(0.2, 0.0)]).is_err());
        assert!(ThetaVector::new(vec![c64(0.5, 0.1), c64(-0.5, -0.1)]).is_ok());
    }

    #[test]
    fn weight_is_traceless_and_normed() {
        for n in 2..=5 {
            let h = weight_h(0, n);
            assert!(h.iter().sum::<f64>().abs() < 1e-15);
            let sq: f64 = h.iter().map(|x| x * x).sum();
            assert!((sq - weight_norm_sq(n)).abs() < 1e-15);
        }
    }

    #[test]
    fn weight_shift_keeps_trace() {
        let th = ThetaVector::new(vec![c64(0.3, 0.1), c64(-0.1, 0.0), c64(-0.2, -0.1)]).unwrap();
        let shifted = th.shift_by_weight(1, 1.0);
        let sum: C64 = shifted.components().iter().sum();
        assert!(sum.norm() < 1e-14);
        assert!((shifted.get(1) - th.get(1) - c64(2.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn resonance_guard() {
        let th = ThetaVector::new(vec![c64(0.5 + 1e-9, 0.0), c64(-0.5, 0.0), c64(-1e-9, 0.0)])
            .unwrap();
        // difference of first two components is 1 + 2e-9: resonant
        assert!(th.check_nonresonant().is_err());
        let ok = ThetaVector::new(vec![c64(0.31, 0.0), c64(-0.11, 0.0), c64(-0.2, 0.0)]).unwrap();
        assert!(ok.check_nonresonant().is_ok());
    }
}
