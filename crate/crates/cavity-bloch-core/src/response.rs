//! Kubo response functions of the cavity-coupled electron gas.

#[allow(unused_imports)]
use num_traits::Float;

use crate::cavity_gas::CavitySetup;
use crate::constants::{E_CHARGE, EPS0};
use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

/// Frequency grid (rad/s, ascending) with complex response values and broadening.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseSample {
    pub w: Vec<f64>,
    pub value: Vec<Complex64>,
    pub eta: f64,
}

impl ResponseSample {
    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    /// Sample with every value multiplied by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self { w: self.w.clone(), value: self.value.iter().map(|v| v * factor).collect(), eta: self.eta }
    }

    pub fn re(&self) -> Vec<f64> {
        self.value.iter().map(|v| v.re).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.value.iter().map(|v| v.im).collect()
    }
}

/// Conductivity sample; values in S/m.
pub type ConductivitySample = ResponseSample;

fn check_grid(op: &'static str, w: &[f64], eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::precondition(op, format!("eta = {eta} must be > 0")));
    }
    if w.is_empty() || w.iter().any(|x| !x.is_finite()) {
        return Err(Error::precondition(op, "frequency grid must be non-empty and finite"));
    }
    if w.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::precondition(op, "frequency grid must be strictly ascending"));
    }
    Ok(())
}

fn sample(op: &'static str, w: &[f64], eta: f64, f: impl Fn(Complex64) -> Complex64) -> Result<ResponseSample> {
    check_grid(op, w, eta)?;
    let value = w.iter().map(|&x| f(Complex64::new(x, eta))).collect();
    Ok(ResponseSample { w: w.to_vec(), value, eta })
}

/// Symmetric uniform grid of `points` samples over `[-w_max, w_max]`.
pub fn symmetric_grid(w_max: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    (0..n).map(|i| -w_max + 2.0 * w_max * i as f64 / (n - 1) as f64).collect()
}

/// Default grid: 4001 points over `[-5 w~, 5 w~]`.
pub fn default_grid(omega_tilde: f64) -> Vec<f64> {
    symmetric_grid(5.0 * omega_tilde, 4001)
}

/// Default broadening `w~ / 100`.
pub fn default_eta(omega_tilde: f64) -> f64 {
    omega_tilde / 100.0
}

/// Vector-potential response
/// `-(1/(2 eps0 w~ V)) [1/(w + w~ + i eta) - 1/(w - w~ + i eta)]`.
pub fn chi_aa(w: &[f64], eta: f64, omega_tilde: f64, volume: f64) -> Result<ResponseSample> {
    let pre = -1.0 / (2.0 * EPS0 * omega_tilde * volume);
    sample("chi_aa", w, eta, |z| (1.0 / (z + omega_tilde) - 1.0 / (z - omega_tilde)) * pre)
}

/// Electric-field response to the vector potential,
/// `(i/(2 eps0 V)) [1/(w + w~ + i eta) + 1/(w - w~ + i eta)]`.
pub fn chi_ea(w: &[f64], eta: f64, omega_tilde: f64, volume: f64) -> Result<ResponseSample> {
    let pre = Complex64::new(0.0, 1.0 / (2.0 * EPS0 * volume));
    sample("chi_ea", w, eta, |z| (1.0 / (z + omega_tilde) + 1.0 / (z - omega_tilde)) * pre)
}

/// Retarded time kernel `chi^A_A(t) = -Theta(t) sin(w~ t) / (eps0 w~ V)`.
pub fn chi_aa_time(t: f64, omega_tilde: f64, volume: f64) -> f64 {
    if t < 0.0 {
        return 0.0;
    }
    -(omega_tilde * t).sin() / (EPS0 * omega_tilde * volume)
}

/// Retarded time kernel `chi^E_A(t) = Theta(t) cos(w~ t) / (eps0 V)`.
pub fn chi_ea_time(t: f64, omega_tilde: f64, volume: f64) -> f64 {
    if t < 0.0 {
        return 0.0;
    }
    (omega_tilde * t).cos() / (EPS0 * volume)
}

/// `e^2 N / m*`, the factor linking current and vector-potential responses.
pub fn current_factor(setup: &CavitySetup, electrons: f64) -> f64 {
    E_CHARGE * E_CHARGE * electrons / setup.mass()
}

/// Current-current response `(e^2 N / m*)^2 chi^A_A`.
pub fn chi_jj(w: &[f64], eta: f64, setup: &CavitySetup, electrons: f64, volume: f64) -> Result<ResponseSample> {
    let f = current_factor(setup, electrons);
    Ok(chi_aa(w, eta, setup.omega_tilde(), volume)?.scaled(Complex64::new(f * f, 0.0)))
}

/// Mixed responses `(chi^J_A, chi^A_J)`, both equal to `-(e^2 N / m*) chi^A_A`.
pub fn chi_mixed(
    w: &[f64],
    eta: f64,
    setup: &CavitySetup,
    electrons: f64,
    volume: f64,
) -> Result<(ResponseSample, ResponseSample)> {
    let f = current_factor(setup, electrons);
    let ja = chi_aa(w, eta, setup.omega_tilde(), volume)?.scaled(Complex64::new(-f, 0.0));
    let aj = ja.clone();
    Ok((ja, aj))
}

/// Optical conductivity
/// `i eps0 wp^2/(w + i eta) - i eps0 wp^4 / ((w + i eta) 2 w~) [1/(w + w~ + i eta) - 1/(w - w~ + i eta)]`.
pub fn optical_conductivity(w: &[f64], eta: f64, setup: &CavitySetup) -> Result<ConductivitySample> {
    let wp2 = setup.omega_p() * setup.omega_p();
    let wt = setup.omega_tilde();
    let i = Complex64::new(0.0, 1.0);
    sample("optical_conductivity", w, eta, |z| {
        i * EPS0 * wp2 / z - i * EPS0 * wp2 * wp2 / (z * 2.0 * wt) * (1.0 / (z + wt) - 1.0 / (z - wt))
    })
}

/// The Drude term `i eps0 wp^2 / (w + i eta)` of the optical conductivity.
pub fn drude_conductivity(w: &[f64], eta: f64, setup: &CavitySetup) -> Result<ConductivitySample> {
    let wp2 = setup.omega_p() * setup.omega_p();
    let i = Complex64::new(0.0, 1.0);
    sample("drude_conductivity", w, eta, |z| i * EPS0 * wp2 / z)
}

/// Zero-frequency conductivity at finite `eta` relative to the uncoupled Drude value
/// `eps0 wp^2 / eta`; equals `1 - gamma / (1 + eta^2 / w~^2)`.
pub fn dc_ratio_at_eta(setup: &CavitySetup, eta: f64) -> Result<f64> {
    let s = optical_conductivity(&[0.0], eta, setup)?;
    let wp = setup.omega_p();
    Ok(s.value[0].re / (EPS0 * wp * wp / eta))
}

/// Cavity suppression of the DC conductivity and the matching mass enhancement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcSuppression {
    /// `sigma_dc / sigma_dc^0 = 1 - gamma`.
    pub ratio: f64,
    /// `m*(gamma) / m* = 1 / (1 - gamma)` (infinite at gamma = 1).
    pub mass_ratio: f64,
}

pub fn dc_suppression(gamma: f64) -> Result<DcSuppression> {
    if !(gamma >= 0.0) {
        return Err(Error::domain("dc_suppression", format!("gamma = {gamma} must be >= 0")));
    }
    if gamma > 1.0 {
        return Err(Error::unbounded("dc_suppression", format!("gamma = {gamma} > 1: unstable, no ground state")));
    }
    let ratio = 1.0 - gamma;
    Ok(DcSuppression { ratio, mass_ratio: 1.0 / ratio })
}

/// Absorption rate `-w Im chi^A_A(w) |J_ext|^2` (W).
pub fn absorption_rate(w: f64, chi_aa_im: f64, j_ext: f64) -> f64 {
    -w * chi_aa_im * j_ext * j_ext
}

/// Principal-value Hilbert transform on a uniform grid:
/// `Re chi(w_i) = (1/pi) P int Im chi(w') / (w' - w_i) dw'`, evaluated at the
/// requested indices. Trapezoid rule on the regularised integrand: the singular sample
/// is excluded and replaced by its limit `f'(w_i)` (central difference), which removes
/// the `O(h f')` bias of plain point skipping.
pub fn kramers_kronig_real(w: &[f64], im: &[f64], at: &[usize]) -> Result<Vec<f64>> {
    if w.len() != im.len() || w.len() < 3 {
        return Err(Error::precondition("kramers_kronig_real", "grid and values must match, >= 3 points"));
    }
    let h = (w[w.len() - 1] - w[0]) / (w.len() - 1) as f64;
    let uniform = w.windows(2).all(|p| ((p[1] - p[0]) - h).abs() <= 1e-9 * h.abs());
    if !uniform {
        return Err(Error::precondition("kramers_kronig_real", "grid must be uniform"));
    }
    let last = w.len() - 1;
    at.iter()
        .map(|&i| {
            if i > last {
                return Err(Error::precondition("kramers_kronig_real", format!("index {i} outside grid")));
            }
            let mut acc = 0.0;
            for (j, (&wj, &fj)) in w.iter().zip(im).enumerate() {
                if j == i {
                    if i > 0 && i < last {
                        acc += 0.5 * (im[i + 1] - im[i - 1]) / h;
                    }
                    continue;
                }
                let weight = if j == 0 || j == last { 0.5 } else { 1.0 };
                acc += weight * fj / (wj - w[i]);
            }
            Ok(acc * h / PI)
        })
        .collect()
}

/// Index of the largest `|values|` among grid points with `w > w_min`.
pub fn resonance_index(w: &[f64], values: &[f64], w_min: f64) -> Option<usize> {
    w.iter()
        .zip(values)
        .enumerate()
        .filter(|(_, (&x, _))| x > w_min)
        .fold(None, |best: Option<(usize, f64)>, (i, (_, &v))| match best {
            Some((_, b)) if b >= v.abs() => best,
            _ => Some((i, v.abs())),
        })
        .map(|(i, _)| i)
}
