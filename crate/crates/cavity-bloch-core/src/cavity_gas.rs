//! Free electron gas coupled to cavity modes: exact spectra, couplings, stability.

#[allow(unused_imports)]
use num_traits::Float;

use crate::constants::{C_LIGHT, E_CHARGE, EPS0, HBAR, M_E};
use crate::error::{Error, Result};
use crate::numerics::symmetric_eigen;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Cavity and 2D material parameters. `omega_cav = 2 pi c / L_z`; `n_e = n2d / L_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavitySetup {
    /// Fundamental cavity frequency (rad/s).
    pub omega_cav: f64,
    /// Areal carrier density (1/m^2).
    pub n2d: f64,
    /// Effective mass over the bare electron mass.
    pub mass_ratio: f64,
}

impl CavitySetup {
    pub fn new(omega_cav: f64, n2d: f64, mass_ratio: f64) -> Result<Self> {
        for (name, v) in [("omega_cav", omega_cav), ("n2d", n2d), ("mass_ratio", mass_ratio)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::precondition("CavitySetup::new", format!("{name} = {v} must be positive")));
            }
        }
        Ok(Self { omega_cav, n2d, mass_ratio })
    }

    /// Setup from the mirror distance `l_z` (m).
    pub fn from_mirror_distance(l_z: f64, n2d: f64, mass_ratio: f64) -> Result<Self> {
        if !(l_z > 0.0) {
            return Err(Error::precondition("CavitySetup::from_mirror_distance", format!("L_z = {l_z} must be positive")));
        }
        Self::new(2.0 * PI * C_LIGHT / l_z, n2d, mass_ratio)
    }

    /// Mirror distance `2 pi c / omega_cav` (m).
    pub fn mirror_distance(&self) -> f64 {
        2.0 * PI * C_LIGHT / self.omega_cav
    }

    /// Effective mass (kg).
    pub fn mass(&self) -> f64 {
        self.mass_ratio * M_E
    }

    /// Volume density `n2d / L_z` (1/m^3).
    pub fn n3d(&self) -> f64 {
        self.n2d / self.mirror_distance()
    }

    /// Diamagnetic (plasma) frequency `sqrt(e^2 n_e / (m* eps0))` (rad/s).
    pub fn omega_p(&self) -> f64 {
        (E_CHARGE * E_CHARGE * self.n3d() / (self.mass() * EPS0)).sqrt()
    }

    /// Dressed cavity frequency (rad/s).
    pub fn omega_tilde(&self) -> f64 {
        dressed_frequency(self.omega_cav, self.omega_p())
    }

    /// Collective coupling `gamma`.
    pub fn gamma(&self) -> f64 {
        collective_coupling(self.omega_cav, self.omega_p()).unwrap_or(0.0)
    }

    /// Number of electrons on an area (m^2).
    pub fn electrons(&self, area: f64) -> f64 {
        self.n2d * area
    }
}

/// `sqrt(omega^2 + omega_p^2)`.
pub fn dressed_frequency(omega: f64, omega_p: f64) -> f64 {
    omega.hypot(omega_p)
}

/// `gamma = omega_p^2 / (omega^2 + omega_p^2)`.
pub fn collective_coupling(omega: f64, omega_p: f64) -> Result<f64> {
    let wt2 = omega * omega + omega_p * omega_p;
    if wt2 == 0.0 {
        return Err(Error::domain("collective_coupling", "omega and omega_p both zero"));
    }
    Ok(omega_p * omega_p / wt2)
}

/// Eigenstate label of the single-mode problem: collective momentum, photon
/// occupations (one per polarization) and the summed kinetic energy.
#[derive(Debug, Clone, PartialEq)]
pub struct GasEigenstateLabel {
    /// `K = sum_j k_j` (1/m).
    pub k_collective: [f64; 2],
    /// Photon numbers, one per mode.
    pub occupations: Vec<u32>,
    /// `sum_j hbar^2 k_j^2 / 2m*` (J).
    pub kinetic_sum: f64,
}

impl GasEigenstateLabel {
    /// Fermi-disk ground state: `K = 0`, no photons, two polarizations.
    pub fn ground(kinetic_sum: f64) -> Self {
        Self { k_collective: [0.0, 0.0], occupations: vec![0, 0], kinetic_sum }
    }
}

/// Single cavity mode with polarizations `x` and `y`:
/// `sum_l [hbar w~ (n_l + 1/2) - (gamma/N)(hbar e_l . K)^2 / 2m*] + kinetic_sum`.
pub fn single_mode_energy(setup: &CavitySetup, label: &GasEigenstateLabel, area: f64) -> Result<f64> {
    let n = setup.electrons(area);
    if !(n >= 1.0) {
        return Err(Error::precondition("single_mode_energy", format!("N = n2d * area = {n} must be >= 1")));
    }
    if label.occupations.len() != 2 {
        return Err(Error::precondition(
            "single_mode_energy",
            format!("need 2 polarization occupations, got {}", label.occupations.len()),
        ));
    }
    let wt = setup.omega_tilde();
    let gamma = setup.gamma();
    let m = setup.mass();
    let mut e = label.kinetic_sum;
    for (l, &occ) in label.occupations.iter().enumerate() {
        let proj = HBAR * label.k_collective[l];
        e += HBAR * wt * (occ as f64 + 0.5) - gamma / n * proj * proj / (2.0 * m);
    }
    Ok(e)
}

/// Ground-state virtual photon number `(w~ - w)^2 / (2 w w~)`.
pub fn ground_state_photon_occupation(omega: f64, omega_p: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::unbounded("ground_state_photon_occupation", "omega = 0: occupation diverges"));
    }
    let wt = dressed_frequency(omega, omega_p);
    let d = wt - omega;
    Ok(d * d / (2.0 * omega * wt))
}

/// Stability of the coupled gas as a function of the coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Critical,
    Unstable,
}

impl Stability {
    pub fn name(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Critical => "critical",
            Stability::Unstable => "unstable",
        }
    }
}

/// Tolerance around `gamma = 1` classified as critical.
pub const CRITICAL_TOL: f64 = 1e-12;

/// Stable below 1, critical within `1e-12` of 1, unstable above.
pub fn stability_classify(gamma: f64) -> Stability {
    if gamma < 1.0 - CRITICAL_TOL {
        Stability::Stable
    } else if gamma <= 1.0 + CRITICAL_TOL {
        Stability::Critical
    } else {
        Stability::Unstable
    }
}

/// Coupling without the diamagnetic term, `gamma' = omega_p^2 / omega^2`, and its class.
pub fn no_a2_coupling(omega: f64, omega_p: f64) -> Result<(f64, Stability)> {
    if !(omega > 0.0) {
        return Err(Error::domain("no_a2_coupling", "omega must be > 0"));
    }
    let g = omega_p * omega_p / (omega * omega);
    Ok((g, stability_classify(g)))
}

/// One cavity mode: bare frequency (rad/s) and unit in-plane polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub omega: f64,
    pub polarization: [f64; 2],
}

/// Normal-mode solution of the many-mode problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ManyModeSpectrum {
    /// Total energy (J).
    pub energy: f64,
    /// Normal frequencies `Omega_g` (rad/s), ascending.
    pub normal_frequencies: Vec<f64>,
    /// Rotated polarizations `sum_a e_a U_{a g}`.
    pub rotated_polarizations: Vec<[f64; 2]>,
}

/// Light-matter coupling `e hbar / (m* sqrt(eps0 V))` entering the many-mode energy.
pub fn many_mode_coupling(volume: f64, mass_ratio: f64) -> f64 {
    E_CHARGE * HBAR / (mass_ratio * M_E * (EPS0 * volume).sqrt())
}

/// Many-mode spectrum from the frequency matrix
/// `W_ab = w~_a^2 delta_ab + w_p^2 (e_a . e_b)(1 - delta_ab)`:
/// `E = kinetic - sum_g (g e~_g . K)^2 / (2 Omega_g^2) + sum_g hbar Omega_g (n_g + 1/2)`.
pub fn many_mode_spectrum(
    modes: &[Mode],
    omega_p: f64,
    k_collective: [f64; 2],
    occupations: &[u32],
    kinetic_sum: f64,
    coupling: f64,
) -> Result<ManyModeSpectrum> {
    let m = modes.len();
    if m == 0 || occupations.len() != m {
        return Err(Error::precondition(
            "many_mode_spectrum",
            format!("need M >= 1 modes and M occupations, got {m} and {}", occupations.len()),
        ));
    }
    for (a, md) in modes.iter().enumerate() {
        let norm = md.polarization[0].hypot(md.polarization[1]);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::precondition("many_mode_spectrum", format!("polarization of mode {a} has norm {norm}")));
        }
        if !(md.omega >= 0.0) {
            return Err(Error::precondition("many_mode_spectrum", format!("mode {a} frequency must be >= 0")));
        }
    }
    let wp2 = omega_p * omega_p;
    let mut w = vec![0.0; m * m];
    for a in 0..m {
        for b in 0..m {
            w[a * m + b] = if a == b {
                modes[a].omega * modes[a].omega + wp2
            } else {
                let dot = modes[a].polarization[0] * modes[b].polarization[0]
                    + modes[a].polarization[1] * modes[b].polarization[1];
                wp2 * dot
            };
        }
    }
    let (vals, vecs) = symmetric_eigen(m, &w)?;
    let mut freqs = Vec::with_capacity(m);
    let mut pols = Vec::with_capacity(m);
    let mut energy = kinetic_sum;
    for g in 0..m {
        if !(vals[g] > 0.0) {
            return Err(Error::unbounded("many_mode_spectrum", format!("normal mode {g} has Omega^2 = {}", vals[g])));
        }
        let om = vals[g].sqrt();
        let mut pol = [0.0; 2];
        for a in 0..m {
            pol[0] += modes[a].polarization[0] * vecs[a * m + g];
            pol[1] += modes[a].polarization[1] * vecs[a * m + g];
        }
        let proj = coupling * (pol[0] * k_collective[0] + pol[1] * k_collective[1]);
        energy += -proj * proj / (2.0 * vals[g]) + HBAR * om * (occupations[g] as f64 + 0.5);
        freqs.push(om);
        pols.push(pol);
    }
    Ok(ManyModeSpectrum { energy, normal_frequencies: freqs, rotated_polarizations: pols })
}

/// Diamagnetic frequency in the form used with a measured cavity frequency:
/// `sqrt(e^2 n2d w_cav / (2 pi c m* eps0))` (rad/s), `omega_cav` in rad/s.
pub fn plasma_frequency_from_cavity(n2d: f64, omega_cav: f64, mass_ratio: f64) -> f64 {
    (E_CHARGE * E_CHARGE * n2d * omega_cav / (2.0 * PI * C_LIGHT * mass_ratio * M_E * EPS0)).sqrt()
}
