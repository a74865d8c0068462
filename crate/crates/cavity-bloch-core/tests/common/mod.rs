#![allow(dead_code)]

use cavity_bloch_core::numerics::HermitianMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Dense complex matrix product, row-major `n x n`.
pub fn matmul(n: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

pub fn adjoint(n: usize, a: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            c[j * n + i] = a[i * n + j].conj();
        }
    }
    c
}

/// `exp(x)` by scaling and squaring with a Taylor series.
pub fn expm(n: usize, x: &[Complex64]) -> Vec<Complex64> {
    let norm: f64 = x.iter().map(|v| v.norm()).sum::<f64>().max(1e-300);
    let mut s = 0;
    while norm / (1u64 << s) as f64 > 0.25 {
        s += 1;
    }
    let scale = 1.0 / (1u64 << s) as f64;
    let xs: Vec<Complex64> = x.iter().map(|v| v * scale).collect();
    let mut result = vec![Complex64::new(0.0, 0.0); n * n];
    let mut term = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        result[i * n + i] = Complex64::new(1.0, 0.0);
        term[i * n + i] = Complex64::new(1.0, 0.0);
    }
    for k in 1..40 {
        term = matmul(n, &term, &xs);
        for v in term.iter_mut() {
            *v /= k as f64;
        }
        for (r, t) in result.iter_mut().zip(&term) {
            *r += t;
        }
    }
    for _ in 0..s {
        result = matmul(n, &result, &result);
    }
    result
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> HermitianMatrix {
    let mut h = HermitianMatrix::zeros(n);
    for i in 0..n {
        h.set(i, i, Complex64::new(scale * rng.gen_range(-1.0..1.0), 0.0));
        for j in i + 1..n {
            let v = Complex64::new(scale * rng.gen_range(-1.0..1.0), scale * rng.gen_range(-1.0..1.0));
            h.set(i, j, v);
            h.set(j, i, v.conj());
        }
    }
    h
}

/// Random unitary from Gram-Schmidt on a random complex matrix (columns orthonormal).
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        for c in &cols {
            let dot: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= dot * ci;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    let mut u = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            u[i * n + j] = c[i];
        }
    }
    u
}

/// Eigenvalues of a Hermitian matrix through its real `2n x 2n` embedding
/// `[[Re, -Im], [Im, Re]]` and a cyclic Jacobi solver; each eigenvalue appears twice.
pub fn embedded_eigvals(h: &HermitianMatrix) -> Vec<f64> {
    let n = h.dim();
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let v = h.get(i, j);
            a[i * m + j] = v.re;
            a[(i + n) * m + j + n] = v.re;
            a[i * m + j + n] = -v.im;
            a[(i + n) * m + j] = v.im;
        }
    }
    let vals = jacobi(m, a);
    vals.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

/// Textbook cyclic Jacobi, independent of the library implementation.
pub fn jacobi(n: usize, mut a: Vec<f64>) -> Vec<f64> {
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i * n + j].powi(2)).sum();
        let diag: f64 = (0..n).map(|i| a[i * n + i].powi(2)).sum();
        if off <= 1e-34 * diag || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    d.sort_by(f64::total_cmp);
    d
}
