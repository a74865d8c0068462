#[allow(unused_imports)]
use num_traits::Float;

use super::params::PolaritonParams;
use crate::constants::{HBAR, M_E};
use crate::lattice::Lattice2D;
use core::f64::consts::SQRT_2;
use num_complex::Complex64;

/// `G^w_{m,n} = G_{m,n} / (sqrt2 w_c)`.
pub fn g_w(lat: &Lattice2D, m: f64, n: f64, omega_c: f64) -> f64 {
    lat.g_mn(m, n) / (SQRT_2 * omega_c)
}

/// `G^v_{m,n} = m_p G_{m,n} / (sqrt2 M w_c) = sqrt2 w_c G_{m,n} / Omega^2`.
pub fn g_v(lat: &Lattice2D, m: f64, n: f64, p: &PolaritonParams) -> f64 {
    SQRT_2 * p.omega_c * lat.g_mn(m, n) / (p.omega * p.omega)
}

/// Displacement argument of the central equation,
/// `-sqrt(mu Omega/2hbar) A0_dn - i sqrt(hbar/(2 mu Omega)) G^v_{dm,dn}`.
pub fn alpha_matrix(dn: i32, dm: i32, lat: &Lattice2D, p: &PolaritonParams) -> Complex64 {
    let a0 = HBAR * lat.g_x(dn as f64) / (SQRT_2 * M_E);
    let mu_omega = 2.0 * M_E / p.omega;
    let re = -(mu_omega / (2.0 * HBAR)).sqrt() * a0;
    let im = -(HBAR / (2.0 * mu_omega)).sqrt() * g_v(lat, dm as f64, dn as f64, p);
    Complex64::new(re, im)
}

/// Displacement argument of the LLB equation, `sqrt(hbar/(2 m_e w_c)) (-G^x_dn - i G_{dm,dn})`.
pub fn beta_matrix(dn: i32, dm: i32, lat: &Lattice2D, omega_c: f64) -> Complex64 {
    let l = (HBAR / (2.0 * M_E * omega_c)).sqrt();
    Complex64::new(-l * lat.g_x(dn as f64), -l * lat.g_mn(dm as f64, dn as f64))
}
