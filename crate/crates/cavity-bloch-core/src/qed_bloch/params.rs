#[allow(unused_imports)]
use num_traits::Float;

use crate::constants::{HBAR, M_E};
use crate::error::{Error, Result};
use alloc::format;

/// Polaritonic parameters of an electron in a magnetic field coupled to a cavity mode.
/// Masses `m_p = m_e/w_p^2`, `m_c = m_e/w_c^2` carry units kg s^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonParams {
    pub omega_p: f64,
    pub omega_c: f64,
    /// `M = (m_p + m_c)/2`.
    pub big_m: f64,
    /// `1/M = 2 w_p^2 w_c^2 / (m_e (w_p^2 + w_c^2))`, finite as `w_p -> 0`.
    pub inv_big_m: f64,
    /// `mu = m_p m_c / M = 2 m_e / Omega^2`.
    pub mu: f64,
    /// `Omega = sqrt(w_p^2 + w_c^2)`.
    pub omega: f64,
    /// `g = w_p / w_c`.
    pub g: f64,
}

pub fn polariton_params(omega_p: f64, omega_c: f64) -> Result<PolaritonParams> {
    if !(omega_p > 0.0 && omega_c > 0.0 && omega_p.is_finite() && omega_c.is_finite()) {
        return Err(Error::precondition(
            "polariton_params",
            format!("w_p = {omega_p}, w_c = {omega_c}: both must be > 0 (coordinate transform singular)"),
        ));
    }
    let wp2 = omega_p * omega_p;
    let wc2 = omega_c * omega_c;
    let om2 = wp2 + wc2;
    Ok(PolaritonParams {
        omega_p,
        omega_c,
        big_m: 0.5 * (M_E / wp2 + M_E / wc2),
        inv_big_m: 2.0 * (wp2 / om2) * wc2 / M_E,
        mu: 2.0 * M_E / om2,
        omega: omega_p.hypot(omega_c),
        g: omega_p / omega_c,
    })
}

/// `hbar^2 k_z^2/2m* + hbar^2 k_w^2/2M + hbar Omega (j + 1/2)` (J).
pub fn landau_polariton_energy(p: &PolaritonParams, k_w: f64, k_z: f64, j: u32, mass_ratio: f64) -> f64 {
    HBAR * HBAR * k_z * k_z / (2.0 * mass_ratio * M_E)
        + 0.5 * HBAR * HBAR * k_w * k_w * p.inv_big_m
        + HBAR * p.omega * (j as f64 + 0.5)
}

/// Lower-branch frequency `hbar k_w^2/2M` at `k_w^2 = m_e/(2 hbar w_p)`:
/// `w_p w_c^2 / (2 (w_p^2 + w_c^2))`, rising monotonically to `w_p/2`.
pub fn lower_polariton_frequency(omega_p: f64, omega_c: f64) -> f64 {
    let r = omega_c * omega_c / (omega_p * omega_p + omega_c * omega_c);
    0.5 * omega_p * r
}

/// Wavenumber at which the lower branch is read off.
pub fn lower_polariton_wavenumber(omega_p: f64) -> f64 {
    (M_E / (2.0 * HBAR * omega_p)).sqrt()
}

/// Large-field ceiling of the lower branch, `w_p/2`.
pub fn lower_polariton_ceiling(omega_p: f64) -> f64 {
    0.5 * omega_p
}

/// Screening function `(2 + 3g^2) / (2 (1+g^2)^{3/2})`.
pub fn screening_chi(g: f64) -> Result<f64> {
    if !(g >= 0.0) {
        return Err(Error::precondition("screening_chi", format!("g = {g} must be >= 0")));
    }
    let s = 1.0 + g * g;
    Ok((2.0 + 3.0 * g * g) / (2.0 * s * s.sqrt()))
}

/// Screened effective mass ratio `m*/chi(g)`.
pub fn screened_mass_ratio(mass_ratio: f64, g: f64) -> Result<f64> {
    Ok(mass_ratio / screening_chi(g)?)
}

/// Electronic share of the Landau-polariton ladder, `hbar w_c chi(g) (j + 1/2)`.
pub fn electronic_screened_energy(omega_c: f64, g: f64, j: u32) -> Result<f64> {
    Ok(HBAR * omega_c * screening_chi(g)? * (j as f64 + 0.5))
}
