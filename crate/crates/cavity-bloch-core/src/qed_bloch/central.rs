#[allow(unused_imports)]
use num_traits::Float;

use super::coupling::{alpha_matrix, beta_matrix, g_v, g_w};
use super::params::PolaritonParams;
use crate::constants::{HBAR, M_E};
use crate::error::{Error, Result};
use crate::lattice::{FourierPotential, Lattice2D};
use crate::numerics::{displacement_matrix, hermitian_eigvals, HermitianMatrix};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};
use num_complex::Complex64;

/// Largest dense matrix the assemblers will build unless a larger cap is configured.
pub const DEFAULT_DIMENSION_CAP: usize = 8192;

/// Fourier window `|n|, |m| <= n_max` and level window `0..=j_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisTruncation {
    pub n_max: u32,
    pub j_max: u32,
    pub cap: usize,
}

impl BasisTruncation {
    pub fn new(n_max: u32, j_max: u32) -> Result<Self> {
        Self::with_cap(n_max, j_max, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(n_max: u32, j_max: u32, cap: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::precondition("BasisTruncation", "n_max must be >= 1"));
        }
        Ok(Self { n_max, j_max, cap })
    }

    pub fn fourier_len(&self) -> usize {
        2 * self.n_max as usize + 1
    }

    pub fn levels(&self) -> usize {
        self.j_max as usize + 1
    }

    /// `(2 n_max + 1)^d (j_max + 1)`.
    pub fn dimension(&self, d: u32) -> usize {
        self.fourier_len().pow(d) * self.levels()
    }

    /// Dimension for `d` Fourier directions, rejected above the cap.
    pub fn checked_dimension(&self, d: u32) -> Result<usize> {
        let dim = self.dimension(d);
        if dim > self.cap {
            return Err(Error::precondition(
                "BasisTruncation",
                format!("matrix dimension {dim} exceeds the configured cap {}", self.cap),
            ));
        }
        Ok(dim)
    }
}

fn check_potential(pot: &FourierPotential, op: &'static str) -> Result<()> {
    if !pot.is_real() {
        return Err(Error::precondition(op, "potential violates V_{-n,-m} = conj(V_{n,m})"));
    }
    Ok(())
}

/// Coefficient with its precomputed displacement block.
struct Term {
    dn: i32,
    dm: i32,
    v: Complex64,
    block: Vec<Complex64>,
}

/// `G^x_{(n+n')/2}` with the half index kept as the integer sum `n + n'`.
fn half_gx(lat: &Lattice2D, n_sum: i32) -> f64 {
    PI * n_sum as f64 / lat.a1
}

fn ladder(i: usize) -> f64 {
    i as f64 + 0.5
}

/// Full central equation over the basis `(n, m, j)`, index `((n + n_max)(2n_max+1) + m + n_max)(j_max+1) + j`.
pub fn assemble_central_matrix(
    pot: &FourierPotential,
    p: &PolaritonParams,
    k: (f64, f64),
    trunc: &BasisTruncation,
) -> Result<HermitianMatrix> {
    check_potential(pot, "assemble_central_matrix")?;
    let dim = trunc.checked_dimension(2)?;
    let lat = pot.lattice;
    let nl = trunc.levels();
    let nf = trunc.fourier_len();
    let nm = trunc.n_max as i32;
    let terms = pot
        .iter()
        .map(|((dn, dm), v)| Ok(Term { dn, dm, v, block: displacement_matrix(nl, alpha_matrix(dn, dm, &lat, p))? }))
        .collect::<Result<Vec<_>>>()?;
    let (k_x, k_w) = k;
    let mut h = HermitianMatrix::zeros(dim);
    let index = |n: i32, m: i32, j: usize| (((n + nm) as usize * nf) + (m + nm) as usize) * nl + j;
    for n in -nm..=nm {
        for m in -nm..=nm {
            let kin = k_w + g_w(&lat, m as f64, n as f64, p.omega_c);
            let kinetic = 0.5 * HBAR * HBAR * kin * kin * p.inv_big_m;
            for i in 0..nl {
                h.add(index(n, m, i), index(n, m, i), Complex64::new(kinetic + HBAR * p.omega * ladder(i), 0.0));
            }
            for t in &terms {
                let (n2, m2) = (n - t.dn, m - t.dm);
                if n2.abs() > nm || m2.abs() > nm {
                    continue;
                }
                let a = HBAR * (k_x + half_gx(&lat, n + n2)) / (SQRT_2 * M_E);
                let phase = Complex64::from_polar(1.0, -g_v(&lat, t.dm as f64, t.dn as f64, p) * a);
                let c = t.v * phase;
                for i in 0..nl {
                    for j in 0..nl {
                        h.add(index(n, m, i), index(n2, m2, j), c * t.block[i * nl + j]);
                    }
                }
            }
        }
    }
    h.validated()
}

/// Central equation restricted to states uniform in `m` up to the Bloch phase `psi`
/// (basis `(n, j)`), with the kinetic term taken at `m = 0`. Exact when the kinetic term
/// is `m`-independent, which holds as `g -> 0`; in that limit it reduces to the LLB matrix.
pub fn assemble_central_reduced(
    pot: &FourierPotential,
    p: &PolaritonParams,
    k: (f64, f64),
    psi: f64,
    trunc: &BasisTruncation,
) -> Result<HermitianMatrix> {
    check_potential(pot, "assemble_central_reduced")?;
    let dim = trunc.checked_dimension(1)?;
    let lat = pot.lattice;
    let nl = trunc.levels();
    let nm = trunc.n_max as i32;
    let terms = pot
        .iter()
        .filter(|((_, dm), _)| dm.abs() <= nm)
        .map(|((dn, dm), v)| Ok(Term { dn, dm, v, block: displacement_matrix(nl, alpha_matrix(dn, dm, &lat, p))? }))
        .collect::<Result<Vec<_>>>()?;
    let (k_x, k_w) = k;
    let mut h = HermitianMatrix::zeros(dim);
    let index = |n: i32, j: usize| (n + nm) as usize * nl + j;
    for n in -nm..=nm {
        let kin = k_w + g_w(&lat, 0.0, n as f64, p.omega_c);
        let kinetic = 0.5 * HBAR * HBAR * kin * kin * p.inv_big_m;
        for i in 0..nl {
            h.add(index(n, i), index(n, i), Complex64::new(kinetic + HBAR * p.omega * ladder(i), 0.0));
        }
        for t in &terms {
            let n2 = n - t.dn;
            if n2.abs() > nm {
                continue;
            }
            let a = HBAR * (k_x + half_gx(&lat, n + n2)) / (SQRT_2 * M_E);
            let arg = -g_v(&lat, t.dm as f64, t.dn as f64, p) * a - t.dm as f64 * psi;
            let c = t.v * Complex64::from_polar(1.0, arg);
            for i in 0..nl {
                for j in 0..nl {
                    h.add(index(n, i), index(n2, j), c * t.block[i * nl + j]);
                }
            }
        }
    }
    h.validated()
}

/// Landau-level-Bloch matrix over the basis `(n, j)`, index `(n + n_max)(j_max+1) + j`.
pub fn assemble_llb_matrix(
    pot: &FourierPotential,
    omega_c: f64,
    k_x: f64,
    trunc: &BasisTruncation,
) -> Result<HermitianMatrix> {
    check_potential(pot, "assemble_llb_matrix")?;
    if !(omega_c > 0.0) {
        return Err(Error::precondition("assemble_llb_matrix", format!("w_c = {omega_c} must be > 0")));
    }
    let dim = trunc.checked_dimension(1)?;
    let lat = pot.lattice;
    let nl = trunc.levels();
    let nm = trunc.n_max as i32;
    let terms = pot
        .iter()
        .filter(|((_, dm), _)| dm.abs() <= nm)
        .map(|((dn, dm), v)| Ok(Term { dn, dm, v, block: displacement_matrix(nl, beta_matrix(dn, dm, &lat, omega_c))? }))
        .collect::<Result<Vec<_>>>()?;
    let mut h = HermitianMatrix::zeros(dim);
    let index = |n: i32, j: usize| (n + nm) as usize * nl + j;
    for n in -nm..=nm {
        for i in 0..nl {
            h.add(index(n, i), index(n, i), Complex64::new(HBAR * omega_c * ladder(i), 0.0));
        }
        for t in &terms {
            let n2 = n - t.dn;
            if n2.abs() > nm {
                continue;
            }
            let arg = -HBAR * (k_x + half_gx(&lat, n + n2)) * lat.g_mn(t.dm as f64, t.dn as f64) / (M_E * omega_c);
            let c = t.v * Complex64::from_polar(1.0, arg);
            for i in 0..nl {
                for j in 0..nl {
                    h.add(index(n, i), index(n2, j), c * t.block[i * nl + j]);
                }
            }
        }
    }
    h.validated()
}

/// Eigenvalues (J) of the full central equation.
pub fn central_eigvals(
    pot: &FourierPotential,
    p: &PolaritonParams,
    k: (f64, f64),
    trunc: &BasisTruncation,
) -> Result<Vec<f64>> {
    hermitian_eigvals(&assemble_central_matrix(pot, p, k, trunc)?)
}

/// Eigenvalues (J) of the LLB matrix.
pub fn llb_eigvals(pot: &FourierPotential, omega_c: f64, k_x: f64, trunc: &BasisTruncation) -> Result<Vec<f64>> {
    hermitian_eigvals(&assemble_llb_matrix(pot, omega_c, k_x, trunc)?)
}
