//! Small dense complex-matrix helpers on top of `ndarray`.
//!
//! Matrices in this crate are tiny (N ≤ 8 in practice), so plain
//! partial-pivot LU is used for solve/inverse/determinant while
//! eigendecompositions go through LAPACK (`zgeev` via `ndarray-linalg`).

use crate::{C64, Error, Result};
use ndarray::{Array1, Array2, Axis};
use ndarray_linalg::Eig;

pub type CMat = Array2<C64>;
pub type CVec = Array1<C64>;

/// `N x N` identity.
pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

/// Diagonal matrix from a slice of entries.
pub fn diag(entries: &[C64]) -> CMat {
    Array2::from_diag(&Array1::from(entries.to_vec()))
}

/// Frobenius norm.
pub fn fro_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Max-abs entry norm.
pub fn max_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `||a - b||_F`.
pub fn fro_dist(a: &CMat, b: &CMat) -> f64 {
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        s += (x - y).norm_sqr();
    }
    s.sqrt()
}

struct Lu {
    lu: CMat,
    perm: Vec<usize>,
    sign: f64,
}

fn lu_decompose(a: &CMat) -> Result<Lu> {
    let n = a.nrows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for col in 0..n {
        let mut p = col;
        let mut best = lu[(col, col)].norm();
        for r in col + 1..n {
            let v = lu[(r, col)].norm();
            if v > best {
                best = v;
                p = r;
            }
        }
        if best < 1e-300 {
            return Err(Error::SingularMatrix(best));
        }
        if p != col {
            for c in 0..n {
                lu.swap((col, c), (p, c));
            }
            perm.swap(col, p);
            sign = -sign;
        }
        let piv = lu[(col, col)];
        for r in col + 1..n {
            let f = lu[(r, col)] / piv;
            lu[(r, col)] = f;
            for c in col + 1..n {
                let sub = f * lu[(col, c)];
                lu[(r, c)] -= sub;
            }
        }
    }
    Ok(Lu { lu, perm, sign })
}

impl Lu {
    fn solve_vec(&self, b: &CVec) -> CVec {
        let n = self.perm.len();
        let mut x = CVec::zeros(n);
        for i in 0..n {
            x[i] = b[self.perm[i]];
        }
        for i in 0..n {
            for j in 0..i {
                let sub = self.lu[(i, j)] * x[j];
                x[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let sub = self.lu[(i, j)] * x[j];
                x[i] -= sub;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Solve `A x = b`.
pub fn solve(a: &CMat, b: &CVec) -> Result<CVec> {
    Ok(lu_decompose(a)?.solve_vec(b))
}

/// Matrix inverse by column-wise LU solves.
pub fn inverse(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    let lu = lu_decompose(a)?;
    let mut out = CMat::zeros((n, n));
    for col in 0..n {
        let mut e = CVec::zeros(n);
        e[col] = C64::new(1.0, 0.0);
        let x = lu.solve_vec(&e);
        out.column_mut(col).assign(&x);
    }
    Ok(out)
}

/// Determinant via LU.
pub fn det(a: &CMat) -> Result<C64> {
    let lu = lu_decompose(a)?;
    let n = a.nrows();
    let mut d = C64::new(lu.sign, 0.0);
    for i in 0..n {
        d *= lu.lu[(i, i)];
    }
    Ok(d)
}

/// Eigenvalues and eigenvector columns, sorted deterministically.
///
/// Sort key is the principal argument of the eigenvalue with a tie-break on
/// its real part, which gives a stable ordering for spectra on or near the
/// unit circle where multisets from two computations must line up pairwise.
pub fn eig_sorted(a: &CMat) -> Result<(Vec<C64>, CMat)> {
    let (vals, vecs) = a
        .eig()
        .map_err(|e| Error::InvalidInput(format!("eigendecomposition failed: {e}")))?;
    let n = vals.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| {
        let ki = (vals[i].arg(), vals[i].re);
        let kj = (vals[j].arg(), vals[j].re);
        ki.partial_cmp(&kj).unwrap_or(std::cmp::Ordering::Equal)
    });
    let sorted_vals: Vec<C64> = idx.iter().map(|&i| vals[i]).collect();
    let mut sorted_vecs = CMat::zeros((n, n));
    for (out_col, &i) in idx.iter().enumerate() {
        sorted_vecs.column_mut(out_col).assign(&vecs.column(i));
    }
    Ok((sorted_vals, sorted_vecs))
}

/// Eigenvalues only, sorted as in [`eig_sorted`].
pub fn eigvals_sorted(a: &CMat) -> Result<Vec<C64>> {
    Ok(eig_sorted(a)?.0)
}

/// Eigenpairs reordered so that eigenvalue `j` is the one closest to
/// `targets[j]`. Fails if the greedy assignment is ambiguous, i.e. two
/// targets grab the same eigenvalue.
pub fn eig_matched(a: &CMat, targets: &[C64]) -> Result<(Vec<C64>, CMat)> {
    let (vals, vecs) = eig_sorted(a)?;
    let n = vals.len();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for t in targets {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (i, v) in vals.iter().enumerate() {
            if !used[i] {
                let d = (v - t).norm();
                if d < best_d {
                    best_d = d;
                    best = i;
                }
            }
        }
        used[best] = true;
        order.push(best);
    }
    let out_vals: Vec<C64> = order.iter().map(|&i| vals[i]).collect();
    let mut out_vecs = CMat::zeros((n, n));
    for (col, &i) in order.iter().enumerate() {
        out_vecs.column_mut(col).assign(&vecs.column(i));
    }
    Ok((out_vals, out_vecs))
}

/// Max pairwise distance between two eigenvalue multisets after canonical
/// sorting.
pub fn spectrum_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    let key = |z: &C64| (z.arg(), z.re);
    sa.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap_or(std::cmp::Ordering::Equal));
    sb.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap_or(std::cmp::Ordering::Equal));
    sa.iter()
        .zip(sb.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Factor `Q_{kl} = L_k * R_l` for diagonal vectors `L`, `R` (fixed by
/// `L_0 = Q_{00} / R_0`, `R_0 = 1` up to the inherent scalar freedom).
/// Returns `(L, R, residual)` where the residual is the max entrywise
/// mismatch relative to the largest |Q| entry.
pub fn rank_one_factor(q: &CMat) -> (Vec<C64>, Vec<C64>, f64) {
    let n = q.nrows();
    let l: Vec<C64> = (0..n).map(|k| q[(k, 0)]).collect();
    let r: Vec<C64> = (0..n).map(|j| q[(0, j)] / q[(0, 0)]).collect();
    let scale = max_norm(q).max(1e-300);
    let mut resid = 0.0f64;
    for k in 0..n {
        for j in 0..n {
            resid = resid.max((q[(k, j)] - l[k] * r[j]).norm() / scale);
        }
    }
    (l, r, resid)
}

/// Best diagonal `D` with `D a D^{-1} ≈ b`, read off the first column with a
/// fallback to the largest-modulus column. Returns `None` when the reference
/// entries are too small to fix the gauge.
pub fn diagonal_gauge(a: &CMat, b: &CMat) -> Option<Vec<C64>> {
    let n = a.nrows();
    // (D a D^{-1})_{jk} = d_j/d_k a_{jk}; use column `c` to read d_j/d_c.
    let mut best_c = 0;
    let mut best = -1.0;
    for c in 0..n {
        let m = a
            .column(c)
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        if m > best {
            best = m;
            best_c = c;
        }
    }
    if best < 1e-12 {
        return None;
    }
    let mut d = vec![C64::new(0.0, 0.0); n];
    for j in 0..n {
        d[j] = b[(j, best_c)] / a[(j, best_c)];
    }
    let dc = d[best_c];
    if dc.norm() < 1e-12 {
        return None;
    }
    for v in d.iter_mut() {
        *v /= dc;
    }
    Some(d)
}

/// Conjugate `m` by the diagonal `d`: returns `D m D^{-1}`.
pub fn conj_by_diag(d: &[C64], m: &CMat) -> CMat {
    let n = m.nrows();
    let mut out = m.clone();
    for j in 0..n {
        for k in 0..n {
            out[(j, k)] = d[j] * m[(j, k)] / d[k];
        }
    }
    out
}

/// Gauge-fixed distance between two tuples of matrices under simultaneous
/// diagonal conjugation: fits `D` on the first pair and reports the max
/// Frobenius mismatch of `D a_i D^{-1}` vs `b_i` over all pairs, normalized
/// by the largest norm involved.
pub fn tuple_distance_diag_conj(a: &[CMat], b: &[CMat]) -> f64 {
    assert_eq!(a.len(), b.len());
    let Some(d) = a
        .iter()
        .zip(b.iter())
        .find_map(|(x, y)| diagonal_gauge(x, y))
    else {
        return f64::INFINITY;
    };
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        let scale = fro_norm(y).max(1.0);
        worst = worst.max(fro_dist(&conj_by_diag(&d, x), y) / scale);
    }
    worst
}

/// Distance between two matrix tuples up to *global* conjugation:
/// solves `G a_i = b_i G` for a common `G` in a least-squares sense via the
/// stacked Sylvester system's smallest singular vector, then reports the
/// normalized residual of the intertwining equations.
pub fn tuple_distance_conj(a: &[CMat], b: &[CMat]) -> f64 {
    use ndarray_linalg::SVD;
    assert_eq!(a.len(), b.len());
    let n = a[0].nrows();
    let rows = a.len() * n * n;
    let mut sys = Array2::<C64>::zeros((rows, n * n));
    // (G a - b G)_{ij} = sum_{kl} (delta_{ik} a_{lj} - delta_{jl} b_{ik}) g_{kl}
    for (q, (am, bm)) in a.iter().zip(b.iter()).enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = q * n * n + i * n + j;
                for k in 0..n {
                    for l in 0..n {
                        let mut v = C64::new(0.0, 0.0);
                        if i == k {
                            v += am[(l, j)];
                        }
                        if j == l {
                            v -= bm[(i, k)];
                        }
                        sys[(row, k * n + l)] += v;
                    }
                }
            }
        }
    }
    let Ok((_, _, Some(vt))) = sys.svd(false, true) else {
        return f64::INFINITY;
    };
    let g_flat = vt.row(vt.nrows() - 1);
    let mut g = CMat::zeros((n, n));
    for k in 0..n {
        for l in 0..n {
            g[(k, l)] = g_flat[k * n + l].conj();
        }
    }
    let gn = fro_norm(&g).max(1e-300);
    let mut worst = 0.0f64;
    for (am, bm) in a.iter().zip(b.iter()) {
        let resid = fro_dist(&g.dot(am), &bm.dot(&g)) / (gn * fro_norm(bm).max(1.0));
        worst = worst.max(resid);
    }
    worst
}
