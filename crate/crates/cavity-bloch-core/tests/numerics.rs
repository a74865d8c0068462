mod common;

use cavity_bloch_core::numerics::*;
use cavity_bloch_core::Error;
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn binomial(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn laguerre_series(j: u32, a: i32, x: f64) -> f64 {
    let mut fact = 1.0;
    let mut sum = 0.0;
    for k in 0..=j as i64 {
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(j as i64 + a as i64, j as i64 - k) * x.powi(k as i32) / fact;
    }
    sum
}

#[test]
fn laguerre_low_orders() {
    for k in [0, 1, 3, 7] {
        for x in [0.0, 0.5, 4.0, 20.0] {
            assert_eq!(laguerre_assoc(0, k, x).unwrap(), 1.0);
        }
    }
    for x in [0.0, 0.3, 2.0] {
        assert!((laguerre_assoc(1, 0, x).unwrap() - (1.0 - x)).abs() < 1e-15);
    }
}

#[test]
fn laguerre_matches_explicit_series() {
    let v = laguerre_assoc(5, 2, 0.7).unwrap();
    assert!((v - laguerre_series(5, 2, 0.7)).abs() < 1e-12, "{v}");
    for (j, a, x) in [(3, -2, 1.3), (8, 4, 2.5), (10, 0, 0.1)] {
        let v = laguerre_assoc(j, a, x).unwrap();
        assert!((v - laguerre_series(j, a, x)).abs() < 1e-10 * (1.0 + v.abs()), "j={j} a={a}");
    }
}

#[test]
fn laguerre_rejects_bad_arguments() {
    assert!(matches!(laguerre_assoc(2, -3, 1.0), Err(Error::Domain { .. })));
    assert!(laguerre_assoc(2, 0, -1.0).is_err());
}

#[test]
fn displacement_simple_cases() {
    for i in 0..6 {
        for j in 0..6 {
            let d = displacement_matrix_element(i, j, Complex64::new(0.0, 0.0)).unwrap();
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((d - Complex64::new(expect, 0.0)).norm() < 1e-15);
        }
    }
    let a = Complex64::new(0.4, -0.9);
    let d = displacement_matrix_element(0, 0, a).unwrap();
    assert!((d.re - (-a.norm_sqr() / 2.0).exp()).abs() < 1e-15 && d.im.abs() < 1e-15);
}

#[test]
fn displacement_matches_matrix_exponential() {
    let alpha = Complex64::new(0.3, 0.2);
    let big = 90;
    let mut x = vec![Complex64::new(0.0, 0.0); big * big];
    for n in 0..big - 1 {
        let s = ((n + 1) as f64).sqrt();
        x[(n + 1) * big + n] += alpha * s;
        x[n * big + n + 1] -= alpha.conj() * s;
    }
    let ex = expm(big, &x);
    let d = displacement_matrix(40, alpha).unwrap();
    for i in 0..40 {
        for j in 0..40 {
            let diff = (d[i * 40 + j] - ex[i * big + j]).norm();
            assert!(diff < 1e-8, "({i},{j}) differs by {diff}");
        }
    }
}

#[test]
fn displacement_truncated_unitarity() {
    for alpha in [Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.6), Complex64::new(0.0, 0.9)] {
        let n = 64;
        let d = displacement_matrix(n, alpha).unwrap();
        let p = matmul(n, &d, &adjoint(n, &d));
        for i in 0..16 {
            for j in 0..16 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((p[i * n + j] - Complex64::new(expect, 0.0)).norm() < 1e-8);
            }
        }
    }
}

#[test]
fn displacement_high_levels_stay_finite() {
    let d = displacement_matrix_element(64, 3, Complex64::new(2.0, 1.0)).unwrap();
    assert!(d.re.is_finite() && d.im.is_finite() && d.norm() <= 1.0 + 1e-12);
}

#[test]
fn eigvals_small_cases() {
    let id = HermitianMatrix::from_real(3, &[1., 0., 0., 0., 1., 0., 0., 0., 1.]).unwrap();
    assert_eq!(hermitian_eigvals(&id).unwrap(), vec![1.0, 1.0, 1.0]);
    let px = HermitianMatrix::from_real(2, &[0., 1., 1., 0.]).unwrap();
    let e = hermitian_eigvals(&px).unwrap();
    assert!((e[0] + 1.0).abs() < 1e-15 && (e[1] - 1.0).abs() < 1e-15);
}

#[test]
fn eigvals_trace_identity() {
    let mut r = rng(11);
    let h = random_hermitian(&mut r, 6, 1.0);
    let sum: f64 = hermitian_eigvals(&h).unwrap().iter().sum();
    assert!((sum - h.trace()).abs() < 1e-10);
}

#[test]
fn eigvals_match_jacobi_embedding() {
    let mut r = rng(12);
    for n in [1, 2, 5, 17, 40] {
        let h = random_hermitian(&mut r, n, 3.0);
        let a = hermitian_eigvals(&h).unwrap();
        let b = embedded_eigvals(&h);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-10, "n={n}: {x} vs {y}");
        }
    }
}

#[test]
fn tridiagonal_matches_dense() {
    let d = [1.0, -2.0, 0.5, 3.0, 0.0];
    let e = [0.3, 1.1, -0.7, 0.2];
    let mut dense = vec![0.0; 25];
    for i in 0..5 {
        dense[i * 5 + i] = d[i];
        if i < 4 {
            dense[i * 5 + i + 1] = e[i];
            dense[(i + 1) * 5 + i] = e[i];
        }
    }
    let a = tridiagonal_eigvals(&d, &e).unwrap();
    let b = jacobi(5, dense);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn symmetric_eigen_vectors_diagonalize() {
    let a = vec![4.0, 1.0, 0.5, 1.0, 3.0, -0.2, 0.5, -0.2, 1.0];
    let (vals, vecs) = symmetric_eigen(3, &a).unwrap();
    for g in 0..3 {
        for i in 0..3 {
            let av: f64 = (0..3).map(|k| a[i * 3 + k] * vecs[k * 3 + g]).sum();
            assert!((av - vals[g] * vecs[i * 3 + g]).abs() < 1e-12);
        }
    }
}

#[test]
fn non_hermitian_input_is_rejected_with_fingerprint() {
    let data = vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(2.0, 0.0),
    ];
    let m = HermitianMatrix::from_row_major(2, data).unwrap();
    match m.validated() {
        Err(Error::NonHermitian { residual, .. }) => assert!(residual > 0.1),
        other => panic!("expected NonHermitian, got {other:?}"),
    }
}

#[test]
fn eigen_is_deterministic() {
    let mut r = rng(5);
    let h = random_hermitian(&mut r, 30, 1.0);
    let a = hermitian_eigvals(&h).unwrap();
    let b = hermitian_eigvals(&h.clone()).unwrap();
    assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
}

proptest! {
    #[test]
    fn laguerre_recurrence(j in 1u32..32, a in 0i32..6, x in 0.0f64..50.0) {
        let l0 = laguerre_assoc(j - 1, a, x).unwrap();
        let l1 = laguerre_assoc(j, a, x).unwrap();
        let l2 = laguerre_assoc(j + 1, a, x).unwrap();
        let lhs = (j + 1) as f64 * l2;
        let rhs = (2.0 * j as f64 + a as f64 + 1.0 - x) * l1 - (j as f64 + a as f64) * l0;
        let scale = 1.0 + lhs.abs().max(rhs.abs()).max(((2 * j) as f64 + 50.0) * l1.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
    }

    #[test]
    fn displacement_conjugation_rule(i in 0u32..12, j in 0u32..12, re in -1.5f64..1.5, im in -1.5f64..1.5) {
        let a = Complex64::new(re, im);
        let dij = displacement_matrix_element(i, j, a).unwrap();
        let dji_neg = displacement_matrix_element(j, i, -a).unwrap();
        prop_assert!((dij - dji_neg.conj()).norm() < 1e-13);
    }

    #[test]
    fn eigvals_unitary_invariance(seed in 0u64..1000, n in 2usize..9) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, n, 2.0);
        let u = random_unitary(&mut r, n);
        let uh = matmul(n, &u, h.as_slice());
        let conj = matmul(n, &uh, &adjoint(n, &u));
        let m = HermitianMatrix::from_row_major(n, conj).unwrap().validated().unwrap();
        let a = hermitian_eigvals(&h).unwrap();
        let b = hermitian_eigvals(&m).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn eigvals_sorted_and_trace(seed in 0u64..1000, n in 1usize..25) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, n, 1.0);
        let e = hermitian_eigvals(&h).unwrap();
        prop_assert_eq!(e.len(), n);
        prop_assert!(e.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!((e.iter().sum::<f64>() - h.trace()).abs() < 1e-10 * n as f64);
    }
}
