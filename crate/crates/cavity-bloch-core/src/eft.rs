//! Effective theory of the 2D electron gas coupled to the continuum of in-plane
//! cavity modes: coupling window, Landau pole, mass renormalisation, Casimir pressure
//! and the continuum vector-potential response.

#[allow(unused_imports)]
use num_traits::Float;

use crate::constants::{C_LIGHT, E_CHARGE, EPS0, HBAR, M_E};
use crate::error::{Error, Result};
use crate::response::ResponseSample;
use alloc::format;
use core::f64::consts::PI;
use num_complex::Complex64;

/// Continuum-mode setup. The upper cutoff is `Lambda = w~(k_z)^2 Lambda0` (rad^2/s^2);
/// `Lambda0` is stored through its logarithm so that values near the Landau pole
/// (`e^{1/(N alpha)}`) stay representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EftSetup {
    /// Mirror distance (m).
    pub l_z: f64,
    /// Areal density (1/m^2).
    pub n2d: f64,
    /// Number of electrons.
    pub electrons: f64,
    /// Effective mass over the bare electron mass.
    pub mass_ratio: f64,
    ln_lambda0: f64,
}

impl EftSetup {
    /// Validated setup; `Lambda0` must satisfy `1 <= Lambda0 <= e^{1/(N alpha)}`.
    pub fn new(l_z: f64, n2d: f64, electrons: f64, mass_ratio: f64, lambda0: f64) -> Result<Self> {
        if !(lambda0 > 0.0) {
            return Err(Error::precondition("EftSetup::new", format!("Lambda0 = {lambda0} must be >= 1")));
        }
        Self::with_ln_lambda0(l_z, n2d, electrons, mass_ratio, lambda0.ln())
    }

    /// As [`EftSetup::new`] with `ln Lambda0` given directly.
    pub fn with_ln_lambda0(l_z: f64, n2d: f64, electrons: f64, mass_ratio: f64, ln_lambda0: f64) -> Result<Self> {
        for (name, v) in [("L_z", l_z), ("n2d", n2d), ("N", electrons), ("mass_ratio", mass_ratio)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::precondition("EftSetup::new", format!("{name} = {v} must be positive")));
            }
        }
        let s = Self { l_z, n2d, electrons, mass_ratio, ln_lambda0 };
        s.check_window()?;
        Ok(s)
    }

    /// Rejects cutoffs outside `[1, e^{1/(N alpha)}]`, reporting the window.
    pub fn check_window(&self) -> Result<()> {
        let upper = self.ln_pole_multiplier();
        if !(self.ln_lambda0 >= 0.0 && self.ln_lambda0 <= upper) {
            return Err(Error::precondition(
                "effective_coupling",
                format!(
                    "cutoff outside stability window 1 <= Lambda0 <= e^(1/(N alpha)): ln Lambda0 = {:.6e}, allowed [0, {:.6e}]",
                    self.ln_lambda0, upper
                ),
            ));
        }
        Ok(())
    }

    pub fn mass(&self) -> f64 {
        self.mass_ratio * M_E
    }

    pub fn ln_lambda0(&self) -> f64 {
        self.ln_lambda0
    }

    pub fn lambda0(&self) -> f64 {
        self.ln_lambda0.exp()
    }

    /// `alpha = e^2 / (4 pi c^2 eps0 m L_z)`.
    pub fn alpha(&self) -> f64 {
        E_CHARGE * E_CHARGE / (4.0 * PI * C_LIGHT * C_LIGHT * EPS0 * self.mass() * self.l_z)
    }

    /// `k_z = pi / L_z`.
    pub fn kappa_z(&self) -> f64 {
        PI / self.l_z
    }

    /// `w_p = sqrt(e^2 n2d / (m eps0 L_z))`.
    pub fn omega_p(&self) -> f64 {
        (E_CHARGE * E_CHARGE * self.n2d / (self.mass() * EPS0 * self.l_z)).sqrt()
    }

    /// Lower cutoff frequency `w~(k_z) = sqrt(c^2 k_z^2 + w_p^2)`.
    pub fn omega_tilde_kz(&self) -> f64 {
        (C_LIGHT * self.kappa_z()).hypot(self.omega_p())
    }

    /// Upper cutoff `Lambda` (rad^2/s^2).
    pub fn cutoff(&self) -> f64 {
        let w = self.omega_tilde_kz();
        w * w * self.lambda0()
    }

    /// `1 / (N alpha)`, the logarithm of the Landau-pole multiplier.
    pub fn ln_pole_multiplier(&self) -> f64 {
        1.0 / (self.electrons * self.alpha())
    }

    /// Same geometry with another cutoff multiplier.
    pub fn with_lambda0(&self, lambda0: f64) -> Result<Self> {
        Self::new(self.l_z, self.n2d, self.electrons, self.mass_ratio, lambda0)
    }
}

/// `g = N alpha ln Lambda0`, in `[0, 1]` inside the window.
pub fn effective_coupling(setup: &EftSetup) -> Result<f64> {
    setup.check_window()?;
    Ok(setup.electrons * setup.alpha() * setup.ln_lambda0())
}

/// Landau pole `w~(k_z)^2 e^{1/(N alpha)}` (rad^2/s^2; may be `inf` for tiny couplings).
pub fn landau_pole(setup: &EftSetup) -> f64 {
    let w = setup.omega_tilde_kz();
    w * w * setup.ln_pole_multiplier().exp()
}

/// Renormalised mass `m / (1 - alpha ln Lambda0)` (kg).
pub fn renormalized_mass(setup: &EftSetup) -> Result<f64> {
    let x = setup.alpha() * setup.ln_lambda0();
    if !(x < 1.0) || !(setup.ln_lambda0() >= 0.0) {
        return Err(Error::unbounded(
            "renormalized_mass",
            format!("alpha ln Lambda0 = {x}: cutoff at or beyond the pole, mass diverges"),
        ));
    }
    Ok(setup.mass() / (1.0 - x))
}

/// Chemical potential `hbar^2 k_F^2 / (2 m(Lambda))` (J).
pub fn chemical_potential(setup: &EftSetup, k_f: f64) -> Result<f64> {
    if !(k_f > 0.0) {
        return Err(Error::precondition("chemical_potential", format!("k_F = {k_f} must be > 0")));
    }
    Ok(HBAR * HBAR * k_f * k_f / (2.0 * renormalized_mass(setup)?))
}

/// Photon zero-point energy per area `hbar (Lambda0^{3/2} - 1) w~^3 / (6 pi c^2)` (J/m^2).
pub fn photon_energy_density(setup: &EftSetup) -> f64 {
    let w = setup.omega_tilde_kz();
    HBAR * (setup.lambda0().powf(1.5) - 1.0) * w * w * w / (6.0 * PI * C_LIGHT * C_LIGHT)
}

/// Casimir pressure on the mirrors (N/m^2, positive = repulsive):
/// `hbar (Lambda0^{3/2}-1)/(4 pi c^2) (2 pi^2 c^2/L^3 + e^2 n/(m eps0 L^2)) sqrt(pi^2 c^2/L^2 + e^2 n/(m eps0 L))`.
pub fn casimir_pressure(setup: &EftSetup) -> f64 {
    let l = setup.l_z;
    let c2 = C_LIGHT * C_LIGHT;
    let q = E_CHARGE * E_CHARGE * setup.n2d / (setup.mass() * EPS0);
    HBAR * (setup.lambda0().powf(1.5) - 1.0) / (4.0 * PI * c2)
        * (2.0 * PI * PI * c2 / (l * l * l) + q / (l * l))
        * (PI * PI * c2 / (l * l) + q / l).sqrt()
}

/// Continuum vector-potential response at finite `eta > 0` (closed log/arctan form).
pub fn eft_chi_aa(w: &[f64], eta: f64, setup: &EftSetup) -> Result<ResponseSample> {
    if !(eta > 0.0) {
        return Err(Error::precondition("eft_chi_aa", format!("eta = {eta} must be > 0 (use eft_chi_aa_im_limit)")));
    }
    if w.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::precondition("eft_chi_aa", "frequency grid must be strictly ascending"));
    }
    let lo = setup.omega_tilde_kz();
    let hi = setup.cutoff().sqrt();
    let c2 = C_LIGHT * C_LIGHT;
    let re_pre = 1.0 / (8.0 * PI * c2 * EPS0 * setup.l_z);
    let im_pre = 1.0 / (4.0 * PI * c2 * EPS0 * setup.l_z);
    let e2 = eta * eta;
    let value = w
        .iter()
        .map(|&x| {
            let sq = |d: f64| d * d + e2;
            let re = re_pre * ((sq(x - lo) / sq(x - hi)).ln() + (sq(x + lo) / sq(x + hi)).ln());
            let im = im_pre
                * (((hi + x) / eta).atan() - ((lo + x) / eta).atan() + ((lo - x) / eta).atan()
                    - ((hi - x) / eta).atan());
            Complex64::new(re, im)
        })
        .collect();
    Ok(ResponseSample { w: w.to_vec(), value, eta })
}

/// The `eta -> 0` imaginary part: `-sign(w) / (4 c^2 eps0 L_z)` for `w~(k_z) < |w| < sqrt(Lambda)`, else 0.
pub fn eft_chi_aa_im_limit(w: f64, setup: &EftSetup) -> f64 {
    let lo = setup.omega_tilde_kz();
    let hi = setup.cutoff().sqrt();
    let plateau = 1.0 / (4.0 * C_LIGHT * C_LIGHT * EPS0 * setup.l_z);
    if w > lo && w < hi {
        -plateau
    } else if w < -lo && w > -hi {
        plateau
    } else {
        0.0
    }
}

/// Height of the absorption plateau, `1 / (4 c^2 eps0 L_z)`.
pub fn absorption_plateau(setup: &EftSetup) -> f64 {
    1.0 / (4.0 * C_LIGHT * C_LIGHT * EPS0 * setup.l_z)
}
