#[allow(unused_imports)]
use num_traits::Float;

use crate::constants::{E_CHARGE, HBAR, M_E};
use crate::error::{Error, Result};
use crate::lattice::{field_for_flux_ratio, Lattice2D};
use crate::numerics::{hermitian_eigvals, tridiagonal_eigvals, HermitianMatrix};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use num_complex::Complex64;

const SQUARE_TOL: f64 = 1e-12;

/// Rejects non-square lattices.
pub fn require_square(lat: &Lattice2D, op: &'static str) -> Result<()> {
    if (lat.theta - FRAC_PI_2).abs() > SQUARE_TOL || (lat.a1 - lat.a2).abs() > SQUARE_TOL * lat.a1 {
        return Err(Error::precondition(op, "square lattice required"));
    }
    Ok(())
}

fn check_flux(flux_ratio: f64, op: &'static str) -> Result<()> {
    if !(flux_ratio > 0.0 && flux_ratio.is_finite()) {
        return Err(Error::precondition(op, format!("flux ratio {flux_ratio} must be > 0")));
    }
    Ok(())
}

/// Open chain `E U_n = U_{n-1} + U_{n+1} + 2 cos(2 pi beta (c + n) - psi) U_n` for `|n| <= n_max`,
/// with hopping `hop` and on-site amplitude `amp` (both 1 for the plain Harper equation).
pub fn harper_chain_eigvals(beta: f64, c: f64, psi: f64, hop: f64, amp: f64, n_max: u32) -> Result<Vec<f64>> {
    let nm = n_max as i32;
    let diag: Vec<f64> = (-nm..=nm).map(|n| 2.0 * amp * (2.0 * PI * beta * (c + n as f64) - psi).cos()).collect();
    let off = vec![hop; diag.len().saturating_sub(1)];
    tridiagonal_eigvals(&diag, &off)
}

/// Harper-scaled eigenvalues at flux ratio `Phi/Phi0` and `k_x` on a square lattice.
pub fn harper_eigvals(flux_ratio: f64, k_x: f64, lat: &Lattice2D, n_max: u32) -> Result<Vec<f64>> {
    check_flux(flux_ratio, "harper_eigvals")?;
    require_square(lat, "harper_eigvals")?;
    let c = lat.a1 * k_x / (2.0 * PI);
    harper_chain_eigvals(1.0 / flux_ratio, c, 0.0, 1.0, 1.0, n_max)
}

/// `t(Phi) = V e^{-pi Phi0 / (2 Phi)}` with `V` the nearest-neighbour Fourier coefficient (J).
pub fn harper_hopping(flux_ratio: f64, v_coef: f64) -> f64 {
    v_coef * (-PI / (2.0 * flux_ratio)).exp()
}

/// Unscaled energies `hbar w_c/2 + t(Phi) E` (J), with `w_c = eB/m_e` at the field giving `flux_ratio`.
pub fn harper_unscaled(flux_ratio: f64, k_x: f64, lat: &Lattice2D, n_max: u32, v_coef: f64) -> Result<Vec<f64>> {
    let scaled = harper_eigvals(flux_ratio, k_x, lat, n_max)?;
    let omega_c = E_CHARGE * field_for_flux_ratio(lat, flux_ratio) / M_E;
    let t = harper_hopping(flux_ratio, v_coef);
    Ok(scaled.into_iter().map(|e| 0.5 * HBAR * omega_c + t * e).collect())
}

/// Magnetic-unit-cell Harper bands at reciprocal flux `Phi0/Phi = p/q`: the `q x q`
/// Bloch matrix with `U_{n+q} = e^{i theta} U_n` and offset `c = a k_x / 2 pi`.
pub fn harper_bloch_eigvals(p: u32, q: u32, c: f64, theta: f64) -> Result<Vec<f64>> {
    if q == 0 {
        return Err(Error::precondition("harper_bloch_eigvals", "q must be >= 1"));
    }
    let beta = p as f64 / q as f64;
    let qi = q as i64;
    let mut h = HermitianMatrix::zeros(q as usize);
    for n in 0..qi {
        let d = 2.0 * (2.0 * PI * beta * (c + n as f64)).cos();
        h.add(n as usize, n as usize, Complex64::new(d, 0.0));
        for step in [-1i64, 1] {
            let target = n + step;
            let wraps = target.div_euclid(qi);
            let col = target.rem_euclid(qi) as usize;
            h.add(n as usize, col, Complex64::from_polar(1.0, wraps as f64 * theta));
        }
    }
    hermitian_eigvals(&h.validated()?)
}

/// Per-index `[min, max]` of eigenvalue lists sampled over a k grid.
pub fn band_intervals(samples: &[Vec<f64>]) -> Vec<(f64, f64)> {
    let len = samples.iter().map(Vec::len).min().unwrap_or(0);
    (0..len)
        .map(|b| {
            samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s[b]), hi.max(s[b])))
        })
        .collect()
}

/// Merges intervals whose separation does not exceed `threshold`; returns clusters in ascending order.
pub fn cluster_bands(intervals: &[(f64, f64)], threshold: f64) -> Vec<(f64, f64)> {
    let mut sorted = intervals.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in sorted {
        match out.last_mut() {
            Some(last) if lo - last.1 <= threshold => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Number of consecutive spacings above `threshold` in an ascending list.
pub fn count_gaps(sorted: &[f64], threshold: f64) -> usize {
    sorted.windows(2).filter(|w| w[1] - w[0] > threshold).count()
}
