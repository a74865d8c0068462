//! Landau levels, filling, Hall conductance and free-gas reference quantities.

#[allow(unused_imports)]
use num_traits::Float;

use crate::constants::{CONDUCTANCE_QUANTUM, E_CHARGE, FLUX_QUANTUM, HBAR, M_E};
use crate::error::{Error, Result};
use alloc::format;
use core::f64::consts::PI;

/// Cyclotron frequency `e B / (mass_ratio m_e)` (rad/s).
pub fn cyclotron_frequency(b_field: f64, mass_ratio: f64) -> f64 {
    E_CHARGE * b_field / (mass_ratio * M_E)
}

/// Landau level energy `hbar^2 k_z^2 / 2m* + hbar w_c (n + 1/2)` (J).
pub fn landau_energy(n: u32, k_z: f64, b_field: f64, mass_ratio: f64) -> f64 {
    let wc = cyclotron_frequency(b_field, mass_ratio);
    HBAR * HBAR * k_z * k_z / (2.0 * mass_ratio * M_E) + HBAR * wc * (n as f64 + 0.5)
}

/// Filling factor `n2d (h/e) / B`.
pub fn filling_factor(n2d: f64, b_field: f64) -> Result<f64> {
    if !(b_field > 0.0) {
        return Err(Error::domain("filling_factor", format!("B = {b_field} T must be > 0")));
    }
    Ok(n2d * FLUX_QUANTUM / b_field)
}

/// Hall and longitudinal conductances for `nu` filled levels (S).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HallConductance {
    pub sigma_xy: f64,
    pub sigma_yy: f64,
}

/// `sigma_xy = nu e^2/h`; the longitudinal component vanishes for filled levels.
pub fn hall_conductance(nu: u32) -> HallConductance {
    HallConductance { sigma_xy: nu as f64 * CONDUCTANCE_QUANTUM, sigma_yy: 0.0 }
}

/// Default Lorentzian broadening `hbar w_c / 100` (J).
pub fn default_dos_broadening(b_field: f64, mass_ratio: f64) -> f64 {
    HBAR * cyclotron_frequency(b_field, mass_ratio) / 100.0
}

/// Landau-level density of states per area, `(eB/2 pi hbar) sum_n L(E - hbar w_c (n+1/2))`
/// with unit-weight Lorentzians of half-width `eta`; 1/(J m^2). No spin factor.
pub fn landau_dos(energy: f64, b_field: f64, eta: f64, n_max: u32) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(Error::precondition("landau_dos", format!("eta = {eta} must be > 0")));
    }
    let hw = HBAR * cyclotron_frequency(b_field, 1.0);
    let sum: f64 = (0..=n_max)
        .map(|n| {
            let x = energy - hw * (n as f64 + 0.5);
            eta / PI / (x * x + eta * eta)
        })
        .sum();
    Ok(E_CHARGE * b_field / (2.0 * PI * HBAR) * sum)
}

/// 3D free-electron-gas reference quantities (spin degenerate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeGas3d {
    pub k_f: f64,
    pub e_f: f64,
    pub energy_density: f64,
}

impl FreeGas3d {
    /// `sqrt(2)/pi^2 (m_e/hbar^2)^{3/2} sqrt(E)` below the Fermi energy, 0 above; 1/(J m^3).
    pub fn dos_at(&self, energy: f64) -> f64 {
        if energy < 0.0 || energy > self.e_f {
            return 0.0;
        }
        2f64.sqrt() / (PI * PI) * (M_E / (HBAR * HBAR)).powf(1.5) * energy.sqrt()
    }
}

/// `k_F = (3 pi^2 n)^{1/3}`, `E_F = hbar^2 k_F^2/2m_e`, energy density `hbar^2 k_F^5/(10 pi^2 m_e)`.
pub fn free_gas_3d(n3d: f64) -> Result<FreeGas3d> {
    if !(n3d > 0.0) {
        return Err(Error::precondition("free_gas_3d", format!("n3d = {n3d} must be > 0")));
    }
    let k_f = (3.0 * PI * PI * n3d).cbrt();
    Ok(FreeGas3d {
        k_f,
        e_f: HBAR * HBAR * k_f * k_f / (2.0 * M_E),
        energy_density: HBAR * HBAR * k_f.powi(5) / (10.0 * PI * PI * M_E),
    })
}

/// 2D Fermi disk (spin degenerate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fermi2d {
    pub k_f: f64,
    pub energy_density: f64,
}

/// `k_F = sqrt(2 pi n2d)`; energy density `hbar^2 k_F^4 / (8 pi m_e)` (J/m^2).
pub fn fermi_2d(n2d: f64) -> Result<Fermi2d> {
    if !(n2d > 0.0) {
        return Err(Error::precondition("fermi_2d", format!("n2d = {n2d} must be > 0")));
    }
    let k_f = (2.0 * PI * n2d).sqrt();
    Ok(Fermi2d { k_f, energy_density: HBAR * HBAR * k_f.powi(4) / (8.0 * PI * M_E) })
}
