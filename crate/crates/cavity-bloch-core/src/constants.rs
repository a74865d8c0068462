//! CODATA 2018 constants (SI) and unit conversions used throughout the crate.

use core::f64::consts::PI;

/// Elementary charge (C), exact.
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Planck constant (J s), exact.
pub const H_PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant (J s).
pub const HBAR: f64 = H_PLANCK / (2.0 * PI);
/// Speed of light in vacuum (m/s), exact.
pub const C_LIGHT: f64 = 299_792_458.0;
/// Electron mass (kg).
pub const M_E: f64 = 9.109_383_701_5e-31;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Magnetic flux quantum h/e (Wb).
pub const FLUX_QUANTUM: f64 = H_PLANCK / E_CHARGE;
/// Conductance quantum e²/h (S).
pub const CONDUCTANCE_QUANTUM: f64 = E_CHARGE * E_CHARGE / H_PLANCK;

/// One ångström in metres.
pub const ANGSTROM: f64 = 1e-10;
/// One electronvolt in joules.
pub const EV: f64 = E_CHARGE;
/// One terahertz in hertz.
pub const THZ: f64 = 1e12;
/// Areal density: one per cm² in per m².
pub const PER_CM2: f64 = 1e4;
