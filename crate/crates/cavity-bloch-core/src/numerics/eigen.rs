#[allow(unused_imports)]
use num_traits::Float;

use super::hermitian::HermitianMatrix;
use crate::error::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

const MAX_QL_SWEEPS: usize = 60;

/// All eigenvalues of a Hermitian matrix, ascending.
///
/// The input is checked against the Hermiticity tolerance and symmetrised, reduced
/// to real tridiagonal form by Householder reflections and finished with implicit
/// QL. The operation sequence is fixed, so equal input bits give equal output bits.
pub fn hermitian_eigvals(m: &HermitianMatrix) -> Result<Vec<f64>> {
    let fingerprint = m.fingerprint();
    let a = m.clone().validated()?;
    let n = a.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut w = a.as_slice().to_vec();
    let (d, e) = householder_tridiagonal(n, &mut w);
    ql_implicit(d, e).ok_or(Error::Convergence { fingerprint, dim: n })
}

/// Eigenvalues of the real symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i+1`), ascending.
pub fn tridiagonal_eigvals(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(Error::precondition(
            "tridiagonal_eigvals",
            format!("diag length {n} needs off-diagonal length {}, got {}", n.max(1) - 1, off.len()),
        ));
    }
    let mut e = off.to_vec();
    e.push(0.0);
    ql_implicit(diag.to_vec(), e).ok_or_else(|| {
        let mut h = HermitianMatrix::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            h.set(i, i, Complex64::new(d, 0.0));
        }
        for (i, &x) in off.iter().enumerate() {
            h.set(i, i + 1, Complex64::new(x, 0.0));
            h.set(i + 1, i, Complex64::new(x, 0.0));
        }
        Error::Convergence { fingerprint: h.fingerprint(), dim: n }
    })
}

/// Eigen-decomposition of a small real symmetric matrix (row-major) by cyclic Jacobi.
///
/// Returns ascending eigenvalues and the matching orthonormal eigenvectors as the
/// columns of a row-major `n x n` matrix.
pub fn symmetric_eigen(n: usize, a: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || a.len() != n * n {
        return Err(Error::precondition("symmetric_eigen", "need a non-empty square matrix"));
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for i in 0..n {
        for j in 0..i {
            if (a[i * n + j] - a[j * n + i]).abs() > 1e-12 * scale {
                let h = HermitianMatrix::from_real(n, a)?;
                return Err(Error::NonHermitian { residual: h.hermiticity_residual(), fingerprint: h.fingerprint() });
            }
        }
    }
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut converged = false;
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        if off == 0.0 {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                // negligible against both diagonal entries: drop it
                let g = 100.0 * apq.abs();
                if m[p * n + p].abs() + g == m[p * n + p].abs() && m[q * n + q].abs() + g == m[q * n + q].abs() {
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    continue;
                }
                rotated = true;
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        if !rotated || off.sqrt() <= f64::EPSILON * f64::EPSILON * scale {
            converged = true;
            break;
        }
    }
    if !converged {
        let h = HermitianMatrix::from_real(n, a)?;
        return Err(Error::Convergence { fingerprint: h.fingerprint(), dim: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x * n + x].total_cmp(&m[y * n + y]));
    let vals = order.iter().map(|&k| m[k * n + k]).collect();
    let mut vecs = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vecs[row * n + col] = v[row * n + k];
        }
    }
    Ok((vals, vecs))
}

/// Householder reduction of a Hermitian matrix (row-major, destroyed) to a real
/// symmetric tridiagonal matrix with the same spectrum. Returns `(diag, off)` where
/// `off` has length `n` and a trailing zero.
fn householder_tridiagonal(n: usize, w: &mut [Complex64]) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut p = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        d[k] = w[k * n + k].re;
        let alpha = (k + 1..n).map(|i| w[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        e[k] = alpha;
        if alpha == 0.0 {
            continue;
        }
        let x0 = w[(k + 1) * n + k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        for i in k + 1..n {
            v[i] = w[i * n + k];
        }
        v[k + 1] += phase * alpha;
        let vn = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        for vi in v.iter_mut().take(n).skip(k + 1) {
            *vi /= vn;
        }
        for i in k + 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in k + 1..n {
                acc += w[i * n + j] * v[j];
            }
            p[i] = acc;
        }
        let mut s = 0.0;
        for i in k + 1..n {
            s += (v[i].conj() * p[i]).re;
        }
        for i in k + 1..n {
            p[i] -= v[i] * s;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                w[i * n + j] -= (v[i] * p[j].conj() + p[i] * v[j].conj()) * 2.0;
            }
        }
    }
    if n >= 2 {
        d[n - 2] = w[(n - 2) * n + n - 2].re;
        e[n - 2] = w[(n - 1) * n + n - 2].norm();
    }
    d[n - 1] = w[(n - 1) * n + n - 1].re;
    (d, e)
}

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
fn ql_implicit(mut d: Vec<f64>, mut e: Vec<f64>) -> Option<Vec<f64>> {
    let n = d.len();
    let anorm = d.iter().chain(e.iter()).fold(0.0f64, |m, x| m.max(x.abs()));
    let tiny = f64::EPSILON * f64::EPSILON * anorm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= tiny {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_SWEEPS {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    if d.iter().any(|x| !x.is_finite()) {
        return None;
    }
    d.sort_by(f64::total_cmp);
    Some(d)
}
