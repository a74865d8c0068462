use super::central::BasisTruncation;
use crate::error::{Error, Result};
use crate::lattice::Lattice2D;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

/// Quantity varied along the sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    /// `Phi/Phi0`.
    FluxRatio,
    /// Reciprocal flux `Phi0/Phi`.
    ReciprocalFlux,
    /// Light-matter coupling `g`.
    CouplingG,
    /// Index into the k grid.
    KPoint,
}

impl AxisKind {
    pub fn name(self) -> &'static str {
        match self {
            AxisKind::FluxRatio => "flux_ratio",
            AxisKind::ReciprocalFlux => "reciprocal_flux",
            AxisKind::CouplingG => "coupling_g",
            AxisKind::KPoint => "k_point",
        }
    }
}

/// Energy units of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingMode {
    /// Joules.
    RawJoules,
    /// `(E - hbar w_c/2) / t(Phi)`.
    HarperScaled,
    /// Units of `S(Phi, g) = t1 + t2`.
    PolaritonScaled,
}

impl ScalingMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalingMode::RawJoules => "raw_joules",
            ScalingMode::HarperScaled => "harper_scaled",
            ScalingMode::PolaritonScaled => "polariton_scaled",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            ScalingMode::RawJoules => "J",
            ScalingMode::HarperScaled => "t(Phi)",
            ScalingMode::PolaritonScaled => "S(Phi,g)",
        }
    }
}

/// A sample that could not be solved; the sweep continues past it.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFailure {
    pub axis_index: usize,
    pub k_index: usize,
    pub message: String,
}

/// Spectra indexed `[axis][k][eigenvalue]`, each innermost list ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    pub axis_kind: AxisKind,
    pub scaling: ScalingMode,
    pub axis: Vec<f64>,
    pub k_grid: Vec<[f64; 2]>,
    /// Failed samples hold an empty list.
    pub spectra: Vec<Vec<Vec<f64>>>,
    pub failures: Vec<PointFailure>,
    pub truncation: Option<BasisTruncation>,
    pub lattice: Option<Lattice2D>,
}

impl SpectrumGrid {
    /// Eigenvalues at one axis point, concatenated in k order.
    pub fn union(&self, axis_index: usize) -> Vec<f64> {
        self.spectra[axis_index].iter().flatten().copied().collect()
    }

    pub fn point_count(&self) -> usize {
        self.spectra.iter().flatten().map(Vec::len).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }

    /// Copy keeping only eigenvalues within `[e_min, e_max]`.
    pub fn windowed(&self, e_min: f64, e_max: f64) -> SpectrumGrid {
        let spectra = self
            .spectra
            .iter()
            .map(|row| row.iter().map(|s| s.iter().copied().filter(|e| *e >= e_min && *e <= e_max).collect()).collect())
            .collect();
        SpectrumGrid { spectra, ..self.clone() }
    }

    pub fn with_metadata(mut self, truncation: Option<BasisTruncation>, lattice: Option<Lattice2D>) -> Self {
        self.truncation = truncation;
        self.lattice = lattice;
        self
    }
}

/// `nk` points `(k_x, 0)` on `[-pi/a1, pi/a1)`.
pub fn kx_grid(lat: &Lattice2D, nk: usize) -> Vec<[f64; 2]> {
    (0..nk).map(|i| [-PI / lat.a1 + 2.0 * PI / lat.a1 * i as f64 / nk as f64, 0.0]).collect()
}

/// `(k_x, k_w)` product grid with `k_w` over one period `G^y_1 / (sqrt2 w_c)`.
pub fn kxw_grid(lat: &Lattice2D, nk: usize, nw: usize, omega_c: f64) -> Vec<[f64; 2]> {
    let period = lat.g_y(1.0) / (SQRT_2 * omega_c);
    let mut out = Vec::with_capacity(nk * nw);
    for kx in kx_grid(lat, nk) {
        for j in 0..nw {
            out.push([kx[0], period * j as f64 / nw as f64]);
        }
    }
    out
}

fn check_axis(axis: &[f64]) -> Result<()> {
    let up = axis.windows(2).all(|w| w[1] > w[0]);
    let down = axis.windows(2).all(|w| w[1] < w[0]);
    if axis.is_empty() || !(up || down) || axis.iter().any(|x| !x.is_finite()) {
        return Err(Error::precondition("sweep", "axis must be non-empty, finite and strictly monotone"));
    }
    Ok(())
}

fn assemble_grid(
    axis_kind: AxisKind,
    scaling: ScalingMode,
    axis: &[f64],
    k_grid: &[[f64; 2]],
    results: Vec<Result<Vec<f64>>>,
) -> SpectrumGrid {
    let nk = k_grid.len();
    let mut spectra = Vec::with_capacity(axis.len());
    let mut failures = Vec::new();
    let mut it = results.into_iter();
    for a in 0..axis.len() {
        let mut row = Vec::with_capacity(nk);
        for k in 0..nk {
            match it.next() {
                Some(Ok(mut v)) => {
                    v.sort_by(f64::total_cmp);
                    row.push(v);
                }
                Some(Err(e)) => {
                    failures.push(PointFailure { axis_index: a, k_index: k, message: e.to_string() });
                    row.push(Vec::new());
                }
                None => row.push(Vec::new()),
            }
        }
        spectra.push(row);
    }
    SpectrumGrid {
        axis_kind,
        scaling,
        axis: axis.to_vec(),
        k_grid: k_grid.to_vec(),
        spectra,
        failures,
        truncation: None,
        lattice: None,
    }
}

/// Evaluates `solve(axis value, k)` on every (axis, k) pair in order, on the calling thread.
pub fn sweep_serial<F>(
    axis_kind: AxisKind,
    scaling: ScalingMode,
    axis: &[f64],
    k_grid: &[[f64; 2]],
    solve: F,
) -> Result<SpectrumGrid>
where
    F: Fn(f64, [f64; 2]) -> Result<Vec<f64>>,
{
    check_axis(axis)?;
    let results = axis.iter().flat_map(|&x| k_grid.iter().map(move |&k| (x, k))).map(|(x, k)| solve(x, k)).collect();
    Ok(assemble_grid(axis_kind, scaling, axis, k_grid, results))
}

/// As [`sweep_serial`], spread over the current rayon pool when the `parallel` feature is on.
/// Every sample is an independent pure task and results are merged by index, so the
/// output does not depend on the thread count.
#[cfg(feature = "parallel")]
pub fn sweep<F>(
    axis_kind: AxisKind,
    scaling: ScalingMode,
    axis: &[f64],
    k_grid: &[[f64; 2]],
    solve: F,
) -> Result<SpectrumGrid>
where
    F: Fn(f64, [f64; 2]) -> Result<Vec<f64>> + Sync,
{
    use rayon::prelude::*;
    check_axis(axis)?;
    let nk = k_grid.len();
    let results = (0..axis.len() * nk).into_par_iter().map(|t| solve(axis[t / nk], k_grid[t % nk])).collect();
    Ok(assemble_grid(axis_kind, scaling, axis, k_grid, results))
}

#[cfg(not(feature = "parallel"))]
pub fn sweep<F>(
    axis_kind: AxisKind,
    scaling: ScalingMode,
    axis: &[f64],
    k_grid: &[[f64; 2]],
    solve: F,
) -> Result<SpectrumGrid>
where
    F: Fn(f64, [f64; 2]) -> Result<Vec<f64>> + Sync,
{
    sweep_serial(axis_kind, scaling, axis, k_grid, solve)
}
