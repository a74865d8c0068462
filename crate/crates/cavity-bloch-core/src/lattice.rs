//! 2D Bravais geometry, reciprocal vectors, flux bookkeeping and cosine potentials.

#[allow(unused_imports)]
use num_traits::Float;

use crate::constants::{ANGSTROM, E_CHARGE, EV, H_PLANCK};
use crate::error::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::format;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use num_complex::Complex64;

const GEOMETRY_TOL: f64 = 1e-9;

/// Primitive cell with `a1` along x and `a2` at angle `theta` to it (lengths in metres).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice2D {
    pub a1: f64,
    pub a2: f64,
    pub theta: f64,
}

/// Reciprocal basis with `b_i . a_j = 2 pi delta_ij` (1/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocalVectors {
    pub b1: [f64; 2],
    pub b2: [f64; 2],
}

impl Lattice2D {
    pub fn new(a1: f64, a2: f64, theta: f64) -> Result<Self> {
        if !(a1 > 0.0 && a1.is_finite() && a2 > 0.0 && a2.is_finite()) {
            return Err(Error::precondition("Lattice2D::new", format!("a1 = {a1}, a2 = {a2} must be positive")));
        }
        if !(theta > 0.0 && theta < PI) || theta.sin() < 1e-12 {
            return Err(Error::precondition("Lattice2D::new", format!("theta = {theta} must lie in (0, pi)")));
        }
        Ok(Self { a1, a2, theta })
    }

    /// Square lattice of side `a`.
    pub fn square(a: f64) -> Result<Self> {
        Self::new(a, a, FRAC_PI_2)
    }

    /// Primitive vectors as Cartesian 2-vectors.
    pub fn primitive_vectors(&self) -> ([f64; 2], [f64; 2]) {
        ([self.a1, 0.0], [self.a2 * self.theta.cos(), self.a2 * self.theta.sin()])
    }

    /// Unit-cell area `a1 a2 sin(theta)`.
    pub fn cell_area(&self) -> f64 {
        self.a1 * self.a2 * self.theta.sin()
    }

    /// `G^x_n = 2 pi n / a1`.
    pub fn g_x(&self, n: f64) -> f64 {
        2.0 * PI * n / self.a1
    }

    /// `G^y_m = 2 pi m / a2`.
    pub fn g_y(&self, m: f64) -> f64 {
        2.0 * PI * m / self.a2
    }

    /// y-component of the reciprocal vector `n b1 + m b2`:
    /// `G_{m,n} = G^y_m / sin(theta) - G^x_n cos(theta) / sin(theta)`.
    pub fn g_mn(&self, m: f64, n: f64) -> f64 {
        let (s, c) = self.theta.sin_cos();
        self.g_y(m) / s - self.g_x(n) * c / s
    }

    /// Same lattice with `a1` enlarged `p` times (magnetic unit cell).
    pub fn enlarged(&self, p: u32) -> Self {
        Self { a1: self.a1 * p as f64, ..*self }
    }
}

/// Reciprocal vectors `b1 = (2pi/a1, -2pi cos/(a1 sin))`, `b2 = (0, 2pi/(a2 sin))`.
pub fn reciprocal_vectors(lat: &Lattice2D) -> Result<ReciprocalVectors> {
    let (s, c) = lat.theta.sin_cos();
    if s.abs() < 1e-12 {
        return Err(Error::precondition("reciprocal_vectors", "degenerate lattice: sin(theta) ~ 0"));
    }
    Ok(ReciprocalVectors {
        b1: [2.0 * PI / lat.a1, -2.0 * PI * c / (lat.a1 * s)],
        b2: [0.0, 2.0 * PI / (lat.a2 * s)],
    })
}

/// Flux through the primitive cell in units of the flux quantum `h/e`.
pub fn flux_ratio(lat: &Lattice2D, b_field: f64) -> f64 {
    b_field * lat.cell_area() * E_CHARGE / H_PLANCK
}

/// Magnetic field (T) giving the flux ratio `ratio` through the primitive cell.
pub fn field_for_flux_ratio(lat: &Lattice2D, ratio: f64) -> f64 {
    ratio * H_PLANCK / (E_CHARGE * lat.cell_area())
}

/// Outcome of the magnetic-translation closure test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MtgVerdict {
    /// True when the magnetic translations on the `p`-enlarged cell form an abelian group.
    pub abelian: bool,
    /// Distance of `p Phi/Phi0` from the nearest integer.
    pub flux_residual: f64,
    /// Distance of `a2 cos(theta) / a1` from the nearest integer.
    pub geometry_residual: f64,
}

/// Closure of magnetic translations on the cell enlarged `p` times along `a1`.
pub fn mtg_flux_condition(lat: &Lattice2D, b_field: f64, p: u32) -> Result<MtgVerdict> {
    if p == 0 {
        return Err(Error::precondition("mtg_flux_condition", "p must be >= 1"));
    }
    let pf = p as f64 * flux_ratio(lat, b_field);
    let flux_residual = (pf - pf.round()).abs();
    let shear = lat.a2 * lat.theta.cos() / lat.a1;
    let geometry_residual = (shear - shear.round()).abs();
    Ok(MtgVerdict {
        abelian: flux_residual <= GEOMETRY_TOL && geometry_residual <= GEOMETRY_TOL,
        flux_residual,
        geometry_residual,
    })
}

/// The five 2D Bravais classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BravaisKind {
    Oblique,
    Rectangular,
    CenteredRectangular,
    Hexagonal,
    Square,
}

impl BravaisKind {
    pub const ALL: [BravaisKind; 5] = [
        BravaisKind::Oblique,
        BravaisKind::Rectangular,
        BravaisKind::CenteredRectangular,
        BravaisKind::Hexagonal,
        BravaisKind::Square,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BravaisKind::Oblique => "oblique",
            BravaisKind::Rectangular => "rectangular",
            BravaisKind::CenteredRectangular => "centered-rectangular",
            BravaisKind::Hexagonal => "hexagonal",
            BravaisKind::Square => "square",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Default angle for the class (75 degrees for centered-rectangular).
    pub fn default_theta(self) -> f64 {
        match self {
            BravaisKind::Oblique | BravaisKind::Hexagonal => FRAC_PI_3,
            BravaisKind::Rectangular | BravaisKind::Square => FRAC_PI_2,
            BravaisKind::CenteredRectangular => 75.0f64.to_radians(),
        }
    }

    /// Reference geometry used for the butterfly figures (a around 2-3 angstrom).
    pub fn reference_lattice(self) -> Lattice2D {
        let (a1, a2) = match self {
            BravaisKind::Oblique | BravaisKind::Rectangular => (3.0, 2.0),
            _ => (2.0, 2.0),
        };
        Lattice2D { a1: a1 * ANGSTROM, a2: a2 * ANGSTROM, theta: self.default_theta() }
    }

    /// Checks that the lattice belongs to this class.
    pub fn check(self, lat: &Lattice2D) -> Result<()> {
        let same = (lat.a1 - lat.a2).abs() <= GEOMETRY_TOL * lat.a1.max(lat.a2);
        let near = |x: f64| (lat.theta - x).abs() <= GEOMETRY_TOL;
        let right = near(FRAC_PI_2);
        let hex = near(FRAC_PI_3) || near(2.0 * FRAC_PI_3);
        let ok = match self {
            BravaisKind::Oblique => true,
            BravaisKind::Rectangular => right,
            BravaisKind::Square => right && same,
            BravaisKind::Hexagonal => hex && same,
            BravaisKind::CenteredRectangular => same && !right && !hex,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::precondition(
                "bravais_cosine_potential",
                format!(
                    "{} potential incompatible with a1 = {:e} m, a2 = {:e} m, theta = {} rad",
                    self.name(),
                    lat.a1,
                    lat.a2,
                    lat.theta
                ),
            ))
        }
    }
}

/// Sparse Fourier series `V(r) = sum V_{n,m} exp(i (n b1 + m b2) . r)` (coefficients in J).
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPotential {
    pub lattice: Lattice2D,
    coefficients: BTreeMap<(i32, i32), Complex64>,
}

impl FourierPotential {
    pub fn new(lattice: Lattice2D) -> Self {
        Self { lattice, coefficients: BTreeMap::new() }
    }

    /// Zero potential on the given lattice.
    pub fn zero(lattice: Lattice2D) -> Self {
        Self::new(lattice)
    }

    /// Sets `V_{n,m}` and its partner `V_{-n,-m} = conj(V_{n,m})`.
    pub fn set_pair(&mut self, n: i32, m: i32, v: Complex64) {
        self.coefficients.insert((n, m), v);
        self.coefficients.insert((-n, -m), v.conj());
    }

    pub fn get(&self, n: i32, m: i32) -> Complex64 {
        self.coefficients.get(&(n, m)).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Nonzero coefficients in `(n, m)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((i32, i32), Complex64)> + '_ {
        self.coefficients.iter().map(|(&k, &v)| (k, v)).filter(|(_, v)| v.norm() > 0.0)
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest `|n|` among nonzero coefficients.
    pub fn max_n(&self) -> i32 {
        self.iter().map(|((n, _), _)| n.abs()).max().unwrap_or(0)
    }

    /// Largest `|m|` among nonzero coefficients.
    pub fn max_m(&self) -> i32 {
        self.iter().map(|((_, m), _)| m.abs()).max().unwrap_or(0)
    }

    /// True when every coefficient satisfies `V_{-n,-m} = conj(V_{n,m})` exactly.
    pub fn is_real(&self) -> bool {
        self.coefficients.iter().all(|(&(n, m), &v)| self.get(-n, -m) == v.conj())
    }

    /// Potential value (J) at Cartesian position `r` (m).
    pub fn value_at(&self, r: [f64; 2]) -> f64 {
        let rv = match reciprocal_vectors(&self.lattice) {
            Ok(rv) => rv,
            Err(_) => return f64::NAN,
        };
        self.iter()
            .map(|((n, m), v)| {
                let gx = n as f64 * rv.b1[0] + m as f64 * rv.b2[0];
                let gy = n as f64 * rv.b1[1] + m as f64 * rv.b2[1];
                (v * Complex64::from_polar(1.0, gx * r[0] + gy * r[1])).re
            })
            .sum()
    }
}

/// Cosine potential of strength `v0` (J) for a Bravais class: `V0/2` at `(+-1,0)`,
/// `(0,+-1)` and, for the hexagonal class, also at `(1,-1)`, `(-1,1)`.
pub fn bravais_cosine_potential(kind: BravaisKind, v0: f64, lat: &Lattice2D) -> Result<FourierPotential> {
    if !(v0 > 0.0 && v0.is_finite()) {
        return Err(Error::precondition("bravais_cosine_potential", format!("V0 = {v0} must be positive")));
    }
    kind.check(lat)?;
    let half = Complex64::new(v0 / 2.0, 0.0);
    let mut pot = FourierPotential::new(*lat);
    pot.set_pair(1, 0, half);
    pot.set_pair(0, 1, half);
    if kind == BravaisKind::Hexagonal {
        pot.set_pair(1, -1, half);
    }
    Ok(pot)
}

/// Square cosine potential with the nearest-neighbour coefficient set to `v_coef`
/// directly (the Harper-reduction convention `V_{+-1,0} = V_{0,+-1} = V0`).
pub fn square_potential_with_coefficient(a: f64, v_coef: f64) -> Result<FourierPotential> {
    let lat = Lattice2D::square(a)?;
    let c = Complex64::new(v_coef, 0.0);
    let mut pot = FourierPotential::new(lat);
    pot.set_pair(1, 0, c);
    pot.set_pair(0, 1, c);
    Ok(pot)
}

/// `V0 = 3 eV`, the potential strength of the reference figures.
pub const REFERENCE_V0: f64 = 3.0 * EV;
