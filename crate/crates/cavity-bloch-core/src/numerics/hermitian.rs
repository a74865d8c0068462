#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Relative tolerance on `|A - A^H|` accepted before symmetrisation.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Dense square complex matrix expected to be Hermitian (row-major storage).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// All-zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    /// Builds every entry independently from `f(i, j)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Wraps row-major entries; fails if the length is not a square of a positive integer.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::precondition(
                "HermitianMatrix::from_row_major",
                format!("need dim >= 1 and {} entries, got dim {dim} and {}", dim * dim, data.len()),
            ));
        }
        Ok(Self { dim, data })
    }

    /// Real symmetric matrix from row-major real entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_row_major(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] += v;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `max |A_ij - conj(A_ji)|` relative to the largest entry (0 for the zero matrix).
    pub fn hermiticity_residual(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst / scale
    }

    /// Replaces the matrix by `(A + A^H)/2`.
    pub fn symmetrize(&mut self) {
        for i in 0..self.dim {
            let d = self.get(i, i);
            self.set(i, i, Complex64::new(d.re, 0.0));
            for j in (i + 1)..self.dim {
                let v = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                self.set(i, j, v);
                self.set(j, i, v.conj());
            }
        }
    }

    /// Checks the Hermiticity tolerance and returns the symmetrised matrix.
    pub fn validated(mut self) -> Result<Self> {
        let residual = self.hermiticity_residual();
        if !(residual <= HERMITICITY_TOL) {
            return Err(Error::NonHermitian { residual, fingerprint: self.fingerprint() });
        }
        self.symmetrize();
        Ok(self)
    }

    /// FNV-1a hash of the entry bit patterns, used to identify a matrix in diagnostics.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bits: u64| {
            for b in bits.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(self.dim as u64);
        for z in &self.data {
            eat(z.re.to_bits());
            eat(z.im.to_bits());
        }
        h
    }
}
