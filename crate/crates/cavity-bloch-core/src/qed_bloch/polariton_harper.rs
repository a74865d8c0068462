#[allow(unused_imports)]
use num_traits::Float;

use super::central::BasisTruncation;
use super::harper::{count_gaps, harper_chain_eigvals, require_square};
use crate::constants::{E_CHARGE, HBAR, M_E};
use crate::error::{Error, Result};
use crate::lattice::{field_for_flux_ratio, Lattice2D};
use crate::numerics::{hermitian_eigvals, HermitianMatrix};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};
use num_complex::Complex64;

/// Polaritonic hopping functions `t1` (along n), `t2` (along m) and their ratios to `S = t1 + t2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonHoppings {
    /// `ln(t1 / V)`.
    pub ln_t1: f64,
    /// `ln(t2 / V)`.
    pub ln_t2: f64,
    pub t1_over_s: f64,
    pub t2_over_s: f64,
    /// Reciprocal flux seen by the m-hopping phase, `Phi0 / (Phi (1 + g^2))`.
    pub beta_g: f64,
}

impl PolaritonHoppings {
    /// `S(Phi, g)` in units of the coefficient `V`.
    pub fn s_over_v(&self) -> f64 {
        self.ln_t1.exp() + self.ln_t2.exp()
    }
}

pub fn polariton_hoppings(flux_ratio: f64, g: f64) -> Result<PolaritonHoppings> {
    if !(flux_ratio > 0.0 && flux_ratio.is_finite()) {
        return Err(Error::precondition("polariton_hoppings", format!("flux ratio {flux_ratio} must be > 0")));
    }
    if !(g >= 0.0 && g.is_finite()) {
        return Err(Error::precondition("polariton_hoppings", format!("g = {g} must be >= 0")));
    }
    let s = 1.0 + g * g;
    let r = 1.0 / flux_ratio;
    let ln_t1 = -PI * r / (2.0 * s.sqrt());
    let ln_t2 = -PI * r / (2.0 * s * s.sqrt());
    let top = ln_t1.max(ln_t2);
    let (e1, e2) = ((ln_t1 - top).exp(), (ln_t2 - top).exp());
    Ok(PolaritonHoppings { ln_t1, ln_t2, t1_over_s: e1 / (e1 + e2), t2_over_s: e2 / (e1 + e2), beta_g: r / s })
}

/// Options for the full `(n, m)` polaritonic Harper block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonHarperOptions {
    /// Nearest-neighbour Fourier coefficient `V` (J); only enters through the kinetic term.
    pub v_coef: f64,
    /// Keep `hbar^2 (sqrt2 w_c k_w + G^y_m)^2 / (2 m_e (1 + g^-2))` on the diagonal.
    pub include_kinetic: bool,
}

/// Lowest-Landau-polariton block over `(n, m)`, index `(n + n_max)(2n_max+1) + m + n_max`,
/// eigenvalues in units of `S(Phi, g)`. At `g = 0` the kinetic prefactor `g^2/(1+g^2)` is exactly 0.
pub fn polariton_harper_eigvals(
    flux_ratio: f64,
    g: f64,
    k: (f64, f64),
    lat: &Lattice2D,
    trunc: &BasisTruncation,
    opts: &PolaritonHarperOptions,
) -> Result<Vec<f64>> {
    require_square(lat, "polariton_harper_eigvals")?;
    let hop = polariton_hoppings(flux_ratio, g)?;
    let dim = trunc.fourier_len().pow(2);
    if dim > trunc.cap {
        return Err(Error::precondition(
            "polariton_harper_eigvals",
            format!("matrix dimension {dim} exceeds the configured cap {}", trunc.cap),
        ));
    }
    let (k_x, k_w) = k;
    let c = lat.a1 * k_x / (2.0 * PI);
    let nm = trunc.n_max as i32;
    let nf = trunc.fourier_len();
    let index = |n: i32, m: i32| (n + nm) as usize * nf + (m + nm) as usize;
    let kinetic_scale = if opts.include_kinetic {
        if !(opts.v_coef > 0.0) {
            return Err(Error::precondition("polariton_harper_eigvals", "kinetic term needs V > 0"));
        }
        let omega_c = E_CHARGE * field_for_flux_ratio(lat, flux_ratio) / M_E;
        let s_joules = opts.v_coef * hop.s_over_v();
        Some((omega_c, HBAR * HBAR / (2.0 * M_E) * (g * g / (1.0 + g * g)) / s_joules))
    } else {
        None
    };
    let mut h = HermitianMatrix::zeros(dim);
    for n in -nm..=nm {
        let phi = 2.0 * PI * hop.beta_g * (c + n as f64);
        for m in -nm..=nm {
            let row = index(n, m);
            if let Some((omega_c, scale)) = kinetic_scale {
                let q = SQRT_2 * omega_c * k_w + lat.g_y(m as f64);
                h.add(row, row, Complex64::new(scale * q * q, 0.0));
            }
            for dn in [-1, 1] {
                if (n + dn).abs() <= nm {
                    h.add(row, index(n + dn, m), Complex64::new(hop.t1_over_s, 0.0));
                }
            }
            for dm in [-1i32, 1] {
                if (m + dm).abs() <= nm {
                    h.add(row, index(n, m + dm), Complex64::from_polar(hop.t2_over_s, dm as f64 * phi));
                }
            }
        }
    }
    hermitian_eigvals(&h.validated()?)
}

/// Reduced chain for states uniform in `m` up to the phase `psi` (kinetic term dropped):
/// `(t1/S)(U_{n-1} + U_{n+1}) + 2 (t2/S) cos(2 pi beta_g (c + n) - psi) U_n`, `c = a k_x / 2 pi`.
pub fn polariton_harper_reduced(flux_ratio: f64, g: f64, c: f64, psi: f64, n_max: u32) -> Result<Vec<f64>> {
    let hop = polariton_hoppings(flux_ratio, g)?;
    harper_chain_eigvals(hop.beta_g, c, psi, hop.t1_over_s, hop.t2_over_s, n_max)
}

/// Gap-count proxy for the extent of the polaritonic butterfly in `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowProxy {
    pub n_max: u32,
    /// `k_x` samples over `[-pi/a, pi/a)`.
    pub k_points: usize,
    pub g_samples: usize,
    /// Minimum spacing (units of `S`) counted as a gap.
    pub gap_threshold: f64,
    /// Median gap count at which the pattern is still considered present.
    pub min_gaps: f64,
    /// Running-median width (odd).
    pub median_width: usize,
}

impl Default for WindowProxy {
    fn default() -> Self {
        Self { n_max: 30, k_points: 32, g_samples: 300, gap_threshold: 0.1, min_gaps: 3.0, median_width: 9 }
    }
}

/// Result of [`butterfly_window_edge`].
#[derive(Debug, Clone, PartialEq)]
pub struct WindowEstimate {
    /// Largest sampled `g` whose smoothed gap count still reaches `min_gaps` (0 if none).
    pub edge: f64,
    pub g: Vec<f64>,
    pub gap_counts: Vec<usize>,
    pub smoothed: Vec<f64>,
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let h = v.len() / 2;
    if v.len() % 2 == 1 {
        v[h]
    } else {
        0.5 * (v[h - 1] + v[h])
    }
}

/// Sweeps `g` over `(0, g_max]`, counting gaps in the `k_x`-union spectrum of the reduced chain.
pub fn butterfly_window_edge(flux_ratio: f64, g_max: f64, proxy: &WindowProxy) -> Result<WindowEstimate> {
    if !(g_max > 0.0) || proxy.g_samples == 0 || proxy.k_points == 0 {
        return Err(Error::precondition("butterfly_window_edge", "g_max, g_samples and k_points must be positive"));
    }
    let ng = proxy.g_samples;
    let g: Vec<f64> = (1..=ng).map(|i| g_max * i as f64 / ng as f64).collect();
    let mut gap_counts = Vec::with_capacity(ng);
    for &gi in &g {
        let mut all = Vec::new();
        for k in 0..proxy.k_points {
            let c = k as f64 / proxy.k_points as f64 - 0.5;
            all.extend(polariton_harper_reduced(flux_ratio, gi, c, 0.0, proxy.n_max)?);
        }
        all.sort_by(f64::total_cmp);
        gap_counts.push(count_gaps(&all, proxy.gap_threshold));
    }
    let h = proxy.median_width / 2;
    let smoothed: Vec<f64> = (0..ng)
        .map(|i| {
            let lo = i.saturating_sub(h);
            let hi = (i + h + 1).min(ng);
            let mut w: Vec<f64> = gap_counts[lo..hi].iter().map(|&c| c as f64).collect();
            median(&mut w)
        })
        .collect();
    let edge = smoothed.iter().rposition(|&s| s >= proxy.min_gaps).map_or(0.0, |i| g[i]);
    Ok(WindowEstimate { edge, g, gap_counts, smoothed })
}
