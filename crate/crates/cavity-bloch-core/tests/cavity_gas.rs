mod common;

use cavity_bloch_core::cavity_gas::*;
use cavity_bloch_core::constants::{E_CHARGE, EPS0, HBAR, M_E, PER_CM2, THZ};
use common::*;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Setup whose collective coupling equals `gamma` at cavity frequency `omega`.
fn setup_with_gamma(omega: f64, gamma: f64, mass_ratio: f64) -> CavitySetup {
    let wp2 = gamma / (1.0 - gamma) * omega * omega;
    let l_z = 2.0 * PI * cavity_bloch_core::constants::C_LIGHT / omega;
    let n2d = wp2 * mass_ratio * M_E * EPS0 * l_z / (E_CHARGE * E_CHARGE);
    CavitySetup::new(omega, n2d, mass_ratio).unwrap()
}

#[test]
fn dressed_and_coupling_examples() {
    assert_eq!(dressed_frequency(7.0, 0.0), 7.0);
    assert_eq!(dressed_frequency(3.0, 4.0), 5.0);
    assert!(rel_err(dressed_frequency(2.0, 2.0), 2.0 * 2f64.sqrt()) < 1e-15);
    assert_eq!(collective_coupling(3.0, 0.0).unwrap(), 0.0);
    assert_eq!(collective_coupling(0.0, 3.0).unwrap(), 1.0);
    assert_eq!(collective_coupling(2.0, 2.0).unwrap(), 0.5);
    assert!(collective_coupling(0.0, 0.0).is_err());
}

#[test]
fn setup_derived_quantities() {
    let s = CavitySetup::new(2.0 * PI * 0.208 * THZ, 1.3e12 * PER_CM2, 0.336).unwrap();
    assert!(rel_err(s.omega_tilde(), s.omega_cav.hypot(s.omega_p())) < 1e-15);
    assert!(rel_err(s.gamma(), s.omega_p().powi(2) / s.omega_tilde().powi(2)) < 1e-14);
    let back = CavitySetup::from_mirror_distance(s.mirror_distance(), s.n2d, s.mass_ratio).unwrap();
    assert!(rel_err(back.omega_cav, s.omega_cav) < 1e-15);
    assert!(CavitySetup::new(1.0, -1.0, 1.0).is_err());
}

#[test]
fn ground_state_photonic_offset() {
    let s = setup_with_gamma(1e13, 0.3, 1.0);
    let e = single_mode_energy(&s, &GasEigenstateLabel::ground(1e-20), 4.0 / s.n2d).unwrap();
    assert!(rel_err(e, 1e-20 + HBAR * s.omega_tilde()) < 1e-14);
}

#[test]
fn single_mode_preconditions() {
    let s = setup_with_gamma(1e13, 0.3, 1.0);
    assert!(single_mode_energy(&s, &GasEigenstateLabel::ground(0.0), 0.5 / s.n2d).is_err());
    let bad = GasEigenstateLabel { k_collective: [0.0, 0.0], occupations: vec![0], kinetic_sum: 0.0 };
    assert!(single_mode_energy(&s, &bad, 2.0 / s.n2d).is_err());
}

#[test]
fn weak_coupling_decouples() {
    let s = setup_with_gamma(1e13, 1e-14, 1.0);
    let label = GasEigenstateLabel { k_collective: [1e8, -2e8], occupations: vec![2, 1], kinetic_sum: 3e-21 };
    let e = single_mode_energy(&s, &label, 2.0 / s.n2d).unwrap();
    let bare = 3e-21 + HBAR * s.omega_cav * (2.5 + 1.5);
    assert!(rel_err(e, bare) < 1e-12);
}

#[test]
fn photon_occupation_examples() {
    let w = 1e13;
    let v = ground_state_photon_occupation(w, w).unwrap();
    let expect = (3.0 - 2.0 * 2f64.sqrt()) / (2.0 * 2f64.sqrt());
    assert!((v - expect).abs() < 1e-15 && (v - 0.060660).abs() < 1e-6);
    assert!(ground_state_photon_occupation(w, 1e-6 * w).unwrap() < 1e-12);
    let a = ground_state_photon_occupation(w, 1e5 * w).unwrap();
    let b = ground_state_photon_occupation(w, 2e5 * w).unwrap();
    assert!((b / a - 2.0).abs() < 2e-3);
    assert!(ground_state_photon_occupation(0.0, w).is_err());
}

#[test]
fn stability_examples() {
    assert_eq!(stability_classify(0.2), Stability::Stable);
    assert_eq!(stability_classify(1.0), Stability::Critical);
    assert_eq!(stability_classify(1.3), Stability::Unstable);
    assert_eq!(stability_classify(1.0 + 5e-13), Stability::Critical);
    assert_eq!(stability_classify(1.0 + 2e-12), Stability::Unstable);
    let w = 2.0;
    assert_eq!(no_a2_coupling(w, 1.0).unwrap(), (0.25, Stability::Stable));
    assert_eq!(no_a2_coupling(w, 2.0).unwrap(), (1.0, Stability::Critical));
    assert_eq!(no_a2_coupling(w, 4.0).unwrap(), (4.0, Stability::Unstable));
}

/// Two electrons, one polarization of one mode, Fock space truncated at `n_ph` bare photons.
fn fock_levels(s: &CavitySetup, area: f64, k: [f64; 2], n_ph: usize) -> Vec<f64> {
    let m = s.mass();
    let n = s.electrons(area);
    let w = s.omega_cav;
    let volume = area * s.mirror_distance();
    let a0 = (HBAR / (2.0 * EPS0 * volume * w)).sqrt();
    let kin: f64 = k.iter().map(|ki| HBAR * HBAR * ki * ki / (2.0 * m)).sum();
    let lin = E_CHARGE * HBAR * (k[0] + k[1]) / m * a0;
    let quad = n * E_CHARGE * E_CHARGE * a0 * a0 / (2.0 * m);
    let d = n_ph + 1;
    // x = a + a^dagger
    let mut x = vec![0.0; d * d];
    for i in 0..d - 1 {
        let s = ((i + 1) as f64).sqrt();
        x[(i + 1) * d + i] = s;
        x[i * d + i + 1] = s;
    }
    let mut h = vec![0.0; d * d];
    for i in 0..d {
        h[i * d + i] += kin + HBAR * w * (i as f64 + 0.5);
        for j in 0..d {
            h[i * d + j] += lin * x[i * d + j];
            let x2: f64 = (0..d).map(|l| x[i * d + l] * x[l * d + j]).sum();
            h[i * d + j] += quad * x2;
        }
    }
    jacobi(d, h)
}

#[test]
fn fock_oracle_two_electrons() {
    for gamma in [0.05, 0.2, 0.35, 0.5] {
        let s = setup_with_gamma(2e13, gamma, 0.5);
        let area = 2.0 / s.n2d;
        let wt = s.omega_tilde();
        let kmag = (HBAR * wt * s.mass() * 2.0 / (gamma * HBAR * HBAR)).sqrt() * 0.7;
        let k = [kmag, -0.3 * kmag];
        let levels = fock_levels(&s, area, k, 60);
        let doubled = fock_levels(&s, area, k, 120);
        let kin: f64 = k.iter().map(|ki| HBAR * HBAR * ki * ki / (2.0 * s.mass())).sum();
        for nph in 0..4u32 {
            let label = GasEigenstateLabel { k_collective: [k[0] + k[1], 0.0], occupations: vec![nph, 0], kinetic_sum: kin };
            let analytic = single_mode_energy(&s, &label, area).unwrap() - 0.5 * HBAR * wt;
            let brute = levels[nph as usize];
            assert!(rel_err(brute, analytic) < 1e-6, "gamma {gamma} n {nph}: {brute} vs {analytic}");
            assert!(rel_err(doubled[nph as usize], brute) < 1e-9);
        }
    }
}

#[test]
fn many_mode_two_parallel_modes_closed_form() {
    let wp = 3e13;
    let (w1, w2) = (2e13, 5e13);
    let modes = [Mode { omega: w1, polarization: [1.0, 0.0] }, Mode { omega: w2, polarization: [1.0, 0.0] }];
    let r = many_mode_spectrum(&modes, wp, [0.0, 0.0], &[0, 0], 0.0, 1.0).unwrap();
    let (t1, t2) = (w1 * w1 + wp * wp, w2 * w2 + wp * wp);
    let disc = ((t1 - t2).powi(2) + 4.0 * wp.powi(4)).sqrt();
    let lo = ((t1 + t2 - disc) / 2.0).sqrt();
    let hi = ((t1 + t2 + disc) / 2.0).sqrt();
    assert!(rel_err(r.normal_frequencies[0], lo) < 1e-10);
    assert!(rel_err(r.normal_frequencies[1], hi) < 1e-10);
}

#[test]
fn many_mode_single_and_orthogonal_reduce_to_single_mode() {
    let s = setup_with_gamma(1.5e13, 0.4, 0.7);
    let area = 10.0 / s.n2d;
    let volume = area * s.mirror_distance();
    let g = many_mode_coupling(volume, s.mass_ratio);
    let k = [3e8, -1e8];
    let kin = 2e-21;
    let label = GasEigenstateLabel { k_collective: k, occupations: vec![1, 3], kinetic_sum: kin };
    let single = single_mode_energy(&s, &label, area).unwrap();

    let modes = [
        Mode { omega: s.omega_cav, polarization: [1.0, 0.0] },
        Mode { omega: s.omega_cav, polarization: [0.0, 1.0] },
    ];
    let r = many_mode_spectrum(&modes, s.omega_p(), k, &[1, 3], kin, g).unwrap();
    assert!(rel_err(r.energy, single) < 1e-12);
    for f in &r.normal_frequencies {
        assert!(rel_err(*f, s.omega_tilde()) < 1e-12);
    }

    let one = many_mode_spectrum(&modes[..1], s.omega_p(), [k[0], 0.0], &[1], kin, g).unwrap();
    let label_x = GasEigenstateLabel { k_collective: [k[0], 0.0], occupations: vec![1, 0], kinetic_sum: kin };
    let single_x = single_mode_energy(&s, &label_x, area).unwrap() - 0.5 * HBAR * s.omega_tilde();
    assert!(rel_err(one.energy, single_x) < 1e-12);
}

#[test]
fn many_mode_rejects_bad_input() {
    let m = [Mode { omega: 1.0, polarization: [0.6, 0.6] }];
    assert!(many_mode_spectrum(&m, 1.0, [0.0, 0.0], &[0], 0.0, 1.0).is_err());
    let m = [Mode { omega: 1.0, polarization: [1.0, 0.0] }];
    assert!(many_mode_spectrum(&m, 1.0, [0.0, 0.0], &[0, 1], 0.0, 1.0).is_err());
}

proptest! {
    #[test]
    fn gamma_in_unit_interval(w in 0.0f64..1e15, wp in 0.0f64..1e15) {
        prop_assume!(w > 0.0 || wp > 0.0);
        let g = collective_coupling(w, wp).unwrap();
        prop_assert!((0.0..=1.0).contains(&g));
    }

    #[test]
    fn no_a2_coupling_unbounded(r in 0.0f64..1000.0) {
        let (g, _) = no_a2_coupling(1.0, r).unwrap();
        prop_assert!(rel_err(g + 1e-300, r * r + 1e-300) < 1e-14);
    }

    #[test]
    fn ground_energy_independent_of_gamma(g1 in 0.01f64..0.95, g2 in 0.01f64..0.95) {
        let s1 = setup_with_gamma(1e13, g1, 1.0);
        let s2 = setup_with_gamma(1e13, g2, 1.0);
        let l = GasEigenstateLabel { k_collective: [0.0, 0.0], occupations: vec![0, 0], kinetic_sum: 1e-20 };
        let e1 = single_mode_energy(&s1, &l, 3.0 / s1.n2d).unwrap() - HBAR * s1.omega_tilde();
        let e2 = single_mode_energy(&s2, &l, 3.0 / s2.n2d).unwrap() - HBAR * s2.omega_tilde();
        prop_assert!(rel_err(e1, e2) < 1e-12);
    }

    #[test]
    fn occupation_monotone_in_density(a in 0.0f64..5.0, b in 0.0f64..5.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let x = ground_state_photon_occupation(1.0, lo).unwrap();
        let y = ground_state_photon_occupation(1.0, hi).unwrap();
        prop_assert!(x >= 0.0 && x <= y);
    }

    #[test]
    fn many_mode_trace(seed in 0u64..500, m in 1usize..7) {
        use rand::Rng;
        let mut r = rng(seed);
        let wp = r.gen_range(0.0..3.0);
        let modes: Vec<Mode> = (0..m).map(|_| {
            let phi: f64 = r.gen_range(0.0..PI);
            Mode { omega: r.gen_range(0.5..4.0), polarization: [phi.cos(), phi.sin()] }
        }).collect();
        let occ = vec![0; m];
        let s = many_mode_spectrum(&modes, wp, [0.0, 0.0], &occ, 0.0, 1.0).unwrap();
        let lhs: f64 = s.normal_frequencies.iter().map(|f| f * f).sum();
        let rhs: f64 = modes.iter().map(|md| md.omega * md.omega + wp * wp).sum();
        prop_assert!(rel_err(lhs, rhs) < 1e-10);
    }
}
