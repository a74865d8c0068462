use cavity_bloch_core::cavity_gas::CavitySetup;
use cavity_bloch_core::constants::{EPS0, PER_CM2, THZ};
use cavity_bloch_core::response::*;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn setup() -> CavitySetup {
    CavitySetup::new(2.0 * PI * 0.208 * THZ, 1.3e12 * PER_CM2, 0.336).unwrap()
}

const VOLUME: f64 = 1e-12;

#[test]
fn chi_aa_parity() {
    let s = setup();
    let wt = s.omega_tilde();
    let w = default_grid(wt);
    let c = chi_aa(&w, default_eta(wt), wt, VOLUME).unwrap();
    let n = w.len();
    let scale = c.value.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for i in 0..n {
        let j = n - 1 - i;
        assert!((c.value[i].re - c.value[j].re).abs() <= 1e-12 * scale);
        assert!((c.value[i].im + c.value[j].im).abs() <= 1e-12 * scale);
    }
}

#[test]
fn chi_aa_poles_at_dressed_frequency() {
    let wt = 3.0e12;
    let w = symmetric_grid(2.0 * wt, 8001);
    let eta = wt / 100.0;
    let c = chi_aa(&w, eta, wt, VOLUME).unwrap();
    let step = w[1] - w[0];
    let i = resonance_index(&w, &c.re(), 0.0).unwrap();
    assert!((w[i] - wt).abs() <= eta + step);
    let i = resonance_index(&w, &c.im(), 0.0).unwrap();
    assert!((w[i] - wt).abs() <= step);
    let neg: Vec<f64> = w.iter().map(|x| -x).collect();
    let j = resonance_index(&neg, &c.im(), 0.0).unwrap();
    assert!((w[j] + wt).abs() <= step);
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn chi_aa_is_laplace_transform_of_time_kernel() {
    let wt = 1.0e12;
    let eta = wt / 100.0;
    let t_max = 40.0 / eta;
    let n = 800_000;
    for w in [0.3 * wt, 0.97 * wt, wt, 1.4 * wt, -2.0 * wt] {
        let re = simpson(|t| chi_aa_time(t, wt, VOLUME) * (w * t).cos() * (-eta * t).exp(), 0.0, t_max, n);
        let im = simpson(|t| chi_aa_time(t, wt, VOLUME) * (w * t).sin() * (-eta * t).exp(), 0.0, t_max, n);
        let direct = chi_aa(&[w], eta, wt, VOLUME).unwrap().value[0];
        let err = (Complex64::new(re, im) - direct).norm() / direct.norm();
        assert!(err < 1e-6, "w = {w}: {err}");
    }
}

#[test]
fn maxwell_identity_time_and_frequency() {
    let wt = 2.5e12;
    for k in 0..200 {
        let t = k as f64 * 0.037 / wt;
        let h = 1e-3 / wt;
        let d = |h: f64| (chi_aa_time(t + h, wt, VOLUME) - chi_aa_time(t - h, wt, VOLUME)) / (2.0 * h);
        let t_far = t.max(2.0 * h);
        let _ = t_far;
        if t < 2.0 * h {
            continue;
        }
        let deriv = (4.0 * d(h / 2.0) - d(h)) / 3.0;
        let expect = chi_ea_time(t, wt, VOLUME);
        let scale = 1.0 / (EPS0 * VOLUME);
        assert!((-deriv - expect).abs() < 1e-10 * scale, "t = {t}");
    }
    assert_eq!(chi_ea_time(-1.0, wt, VOLUME), 0.0);
    let w = default_grid(wt);
    let eta = default_eta(wt);
    let a = chi_aa(&w, eta, wt, VOLUME).unwrap();
    let e = chi_ea(&w, eta, wt, VOLUME).unwrap();
    for ((x, va), ve) in w.iter().zip(&a.value).zip(&e.value) {
        let iz = Complex64::new(0.0, 1.0) * Complex64::new(*x, eta);
        assert!((iz * va - ve).norm() <= 1e-12 * ve.norm().max(1e-300));
    }
}

#[test]
fn chi_ea_poles() {
    let wt = 1e12;
    let w = symmetric_grid(3.0 * wt, 6001);
    let e = chi_ea(&w, wt / 100.0, wt, VOLUME).unwrap();
    let i = resonance_index(&w, &e.re(), 0.0).unwrap();
    assert!((w[i] - wt).abs() <= 2.0 * (w[1] - w[0]));
}

#[test]
fn current_responses_scale() {
    let s = setup();
    let wt = s.omega_tilde();
    let w = symmetric_grid(3.0 * wt, 101);
    let eta = default_eta(wt);
    let f = current_factor(&s, 5.0);
    let aa = chi_aa(&w, eta, wt, VOLUME).unwrap();
    let jj = chi_jj(&w, eta, &s, 5.0, VOLUME).unwrap();
    let jj2 = chi_jj(&w, eta, &s, 10.0, VOLUME).unwrap();
    let (ja, aj) = chi_mixed(&w, eta, &s, 5.0, VOLUME).unwrap();
    let (ja2, _) = chi_mixed(&w, eta, &s, 10.0, VOLUME).unwrap();
    for i in 0..w.len() {
        assert!((jj.value[i] - aa.value[i] * f * f).norm() <= 1e-14 * jj.value[i].norm());
        assert!((jj2.value[i] - jj.value[i] * 4.0).norm() <= 1e-14 * jj2.value[i].norm());
        assert_eq!(ja.value[i], aj.value[i]);
        assert!((ja.value[i] + aa.value[i] * f).norm() <= 1e-14 * ja.value[i].norm());
        assert!((ja2.value[i] - ja.value[i] * 2.0).norm() <= 1e-14 * ja2.value[i].norm());
    }
}

#[test]
fn conductivity_vanishes_without_carriers() {
    let s = CavitySetup::new(1e12, 1e-30, 1.0).unwrap();
    let w = symmetric_grid(3e12, 101);
    let c = optical_conductivity(&w, 1e10, &s).unwrap();
    assert!(c.value.iter().all(|v| v.norm() < 1e-40));
}

#[test]
fn conductivity_closed_form_parts() {
    let s = setup();
    let wp2 = s.omega_p().powi(2);
    let w0 = s.omega_cav;
    let wt2 = s.omega_tilde().powi(2);
    let eta = default_eta(s.omega_tilde());
    let w = default_grid(s.omega_tilde());
    let c = optical_conductivity(&w, eta, &s).unwrap();
    for (x, v) in w.iter().zip(&c.value) {
        // i eps0 wp^2 (z^2 - w0^2) / (z (z^2 - w~^2)), expanded in real arithmetic
        let (ar, ai) = (x * x - eta * eta - w0 * w0, 2.0 * x * eta);
        let (br, bi) = (x * x - eta * eta - wt2, 2.0 * x * eta);
        let (dr, di) = (x * br - eta * bi, x * bi + eta * br);
        let den = dr * dr + di * di;
        let qr = (ar * dr + ai * di) / den;
        let qi = (ai * dr - ar * di) / den;
        let re = -EPS0 * wp2 * qi;
        let im = EPS0 * wp2 * qr;
        let scale = v.norm();
        assert!((v.re - re).abs() <= 1e-12 * scale && (v.im - im).abs() <= 1e-12 * scale, "w = {x}");
    }
}

#[test]
fn conductivity_resonance_beyond_drude() {
    let s = setup();
    let wt = s.omega_tilde();
    let eta = default_eta(wt);
    let w = default_grid(wt);
    let sig = optical_conductivity(&w, eta, &s).unwrap();
    let dru = drude_conductivity(&w, eta, &s).unwrap();
    let extra: Vec<f64> = sig.value.iter().zip(&dru.value).map(|(a, b)| (a - b).re).collect();
    let i = resonance_index(&w, &extra, 10.0 * eta).unwrap();
    assert!((w[i] - wt).abs() <= w[1] - w[0]);
    let neg: Vec<f64> = w.iter().map(|x| -x).collect();
    let j = resonance_index(&neg, &extra, 10.0 * eta).unwrap();
    assert!((w[j] + wt).abs() <= w[1] - w[0]);
}

#[test]
fn dc_values() {
    assert_eq!(dc_suppression(0.0).unwrap().ratio, 1.0);
    assert_eq!(dc_suppression(1.0).unwrap().ratio, 0.0);
    assert!((dc_suppression(0.2).unwrap().ratio - 0.8).abs() < 1e-15);
    assert!(dc_suppression(1.0).unwrap().mass_ratio.is_infinite());
    assert!(dc_suppression(1.2).is_err());
    let s = setup();
    let wt = s.omega_tilde();
    for eta in [wt / 10.0, wt / 100.0, wt / 1e4] {
        let r = dc_ratio_at_eta(&s, eta).unwrap();
        let expect = 1.0 - s.gamma() / (1.0 + eta * eta / (wt * wt));
        assert!((r - expect).abs() < 1e-12);
    }
    assert!((dc_ratio_at_eta(&s, wt * 1e-7).unwrap() - (1.0 - s.gamma())).abs() < 1e-12);
}

#[test]
fn absorption_sign_and_scaling() {
    let wt = 1e12;
    let w = symmetric_grid(4.0 * wt, 801);
    let c = chi_aa(&w, wt / 50.0, wt, VOLUME).unwrap();
    for (x, v) in w.iter().zip(&c.value) {
        if *x > 0.0 {
            assert!(v.im <= 0.0);
            assert!(absorption_rate(*x, v.im, 2.0) >= 0.0);
            let r1 = absorption_rate(*x, v.im, 1.0);
            assert!((absorption_rate(*x, v.im, 3.0) - 9.0 * r1).abs() <= 1e-12 * r1.abs());
        }
    }
    assert_eq!(absorption_rate(1.0, -1.0, 0.0), 0.0);
}

#[test]
fn kramers_kronig_reconstructs_real_part() {
    let wt = 1.0e12;
    let eta = wt / 100.0;
    let points = 80_001;
    let w = symmetric_grid(20.0 * wt, points);
    let c = chi_aa(&w, eta, wt, VOLUME).unwrap();
    let at: Vec<usize> = (0..points).filter(|&i| w[i].abs() <= 10.0 * wt && i % 20 == 0).collect();
    let kk = kramers_kronig_real(&w, &c.im(), &at).unwrap();
    let re = c.re();
    let peak = re.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let worst = at.iter().zip(&kk).map(|(&i, v)| (v - re[i]).abs()).fold(0.0, f64::max);
    assert!(worst / peak < 0.01, "{}", worst / peak);
}

#[test]
fn kramers_kronig_rejects_bad_grids() {
    assert!(kramers_kronig_real(&[0.0, 1.0, 3.0], &[0.0; 3], &[1]).is_err());
    assert!(kramers_kronig_real(&[0.0, 1.0, 2.0], &[0.0; 3], &[5]).is_err());
}

#[test]
fn shared_poles() {
    let s = setup();
    let wt = s.omega_tilde();
    let eta = default_eta(wt);
    let w = default_grid(wt);
    let n = 7.0;
    let aa = chi_aa(&w, eta, wt, VOLUME).unwrap();
    let jj = chi_jj(&w, eta, &s, n, VOLUME).unwrap();
    let (ja, _) = chi_mixed(&w, eta, &s, n, VOLUME).unwrap();
    let sig = optical_conductivity(&w, eta, &s).unwrap();
    let dru = drude_conductivity(&w, eta, &s).unwrap();
    let extra: Vec<Complex64> = sig.value.iter().zip(&dru.value).map(|(a, b)| a - b).collect();
    let cut = 10.0 * eta;
    let absorptive = [
        resonance_index(&w, &aa.im(), cut),
        resonance_index(&w, &jj.im(), cut),
        resonance_index(&w, &ja.im(), cut),
        resonance_index(&w, &extra.iter().map(|v| v.re).collect::<Vec<_>>(), cut),
    ];
    let reactive = [
        resonance_index(&w, &aa.re(), cut),
        resonance_index(&w, &jj.re(), cut),
        resonance_index(&w, &ja.re(), cut),
        resonance_index(&w, &extra.iter().map(|v| v.im).collect::<Vec<_>>(), cut),
    ];
    assert!(absorptive.iter().all(|i| *i == absorptive[0]), "{absorptive:?}");
    assert!(reactive.iter().all(|i| *i == reactive[0]), "{reactive:?}");
    let i = absorptive[0].unwrap();
    assert!((w[i] - wt).abs() <= w[1] - w[0]);
}

#[test]
fn invalid_inputs() {
    assert!(chi_aa(&[0.0, 1.0], 0.0, 1.0, 1.0).is_err());
    assert!(chi_aa(&[1.0, 0.0], 0.1, 1.0, 1.0).is_err());
    assert!(chi_aa(&[], 0.1, 1.0, 1.0).is_err());
}

proptest! {
    #[test]
    fn dc_ratio_is_one_minus_gamma(gamma in 0.0f64..=1.0) {
        prop_assert!((dc_suppression(gamma).unwrap().ratio - (1.0 - gamma)).abs() < 1e-15);
    }

    #[test]
    fn chi_aa_parity_random(wt in 1e10f64..1e14, w in 0.0f64..5.0, r in 0.001f64..0.5) {
        let x = w * wt;
        let eta = r * wt;
        let c = chi_aa(&[-x, x + 1e-300], eta, wt, VOLUME).unwrap();
        let (a, b) = (c.value[0], c.value[1]);
        prop_assert!((a.re - b.re).abs() <= 1e-10 * a.norm());
        prop_assert!((a.im + b.im).abs() <= 1e-10 * a.norm());
    }
}
