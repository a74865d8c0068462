//! Boundary units. Every quantity is converted to SI once, at parse time.

use cavity_bloch_core::constants::{ANGSTROM, EV, PER_CM2, THZ};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Area,
    Energy,
    Field,
    /// Angular frequency in SI; `THz`/`GHz`/`Hz` inputs are ordinary frequencies.
    Frequency,
    Density2d,
    Angle,
}

impl Dimension {
    /// SI unit written into output headers.
    pub fn si(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Area => "m^2",
            Dimension::Energy => "J",
            Dimension::Field => "T",
            Dimension::Frequency => "rad/s",
            Dimension::Density2d => "m^-2",
            Dimension::Angle => "rad",
        }
    }

    /// Units accepted in configs, as listed in error messages.
    pub fn accepted(self) -> &'static str {
        match self {
            Dimension::Length => "Å, nm, um, m",
            Dimension::Area => "Å^2, nm^2, um^2, cm^2, m^2",
            Dimension::Energy => "eV, meV, J",
            Dimension::Field => "T",
            Dimension::Frequency => "THz, GHz, Hz, rad/s",
            Dimension::Density2d => "cm^-2, m^-2",
            Dimension::Angle => "deg, rad",
        }
    }

    fn factor(self, unit: &str) -> Option<f64> {
        let f = match (self, unit) {
            (Dimension::Length, "Å" | "A" | "angstrom") => ANGSTROM,
            (Dimension::Length, "nm") => 1e-9,
            (Dimension::Length, "um" | "µm" | "μm") => 1e-6,
            (Dimension::Length, "m") => 1.0,
            (Dimension::Area, "Å^2" | "A^2" | "Å²") => ANGSTROM * ANGSTROM,
            (Dimension::Area, "nm^2" | "nm²") => 1e-18,
            (Dimension::Area, "um^2" | "µm^2" | "μm^2" | "µm²") => 1e-12,
            (Dimension::Area, "cm^2" | "cm²") => 1e-4,
            (Dimension::Area, "m^2" | "m²") => 1.0,
            (Dimension::Energy, "eV") => EV,
            (Dimension::Energy, "meV") => 1e-3 * EV,
            (Dimension::Energy, "J") => 1.0,
            (Dimension::Field, "T") => 1.0,
            (Dimension::Frequency, "THz") => 2.0 * PI * THZ,
            (Dimension::Frequency, "GHz") => 2.0 * PI * 1e9,
            (Dimension::Frequency, "Hz") => 2.0 * PI,
            (Dimension::Frequency, "rad/s") => 1.0,
            (Dimension::Density2d, "cm^-2" | "cm⁻²" | "1/cm^2") => PER_CM2,
            (Dimension::Density2d, "m^-2" | "1/m^2") => 1.0,
            (Dimension::Angle, "deg" | "°") => PI / 180.0,
            (Dimension::Angle, "rad") => 1.0,
            _ => return None,
        };
        Some(f)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dimension::Length => "length",
            Dimension::Area => "area",
            Dimension::Energy => "energy",
            Dimension::Field => "magnetic field",
            Dimension::Frequency => "frequency",
            Dimension::Density2d => "areal density",
            Dimension::Angle => "angle",
        };
        f.write_str(s)
    }
}

/// Parses `"<number> <unit>"` into SI.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let text = text.trim();
    let split = text.find(|c: char| c.is_whitespace()).ok_or_else(|| {
        format!("'{text}' has no unit; expected a {dim} in one of: {}", dim.accepted())
    })?;
    let (num, unit) = text.split_at(split);
    let value: f64 = num.parse().map_err(|_| format!("'{num}' is not a number"))?;
    let unit = unit.trim();
    let factor = dim
        .factor(unit)
        .ok_or_else(|| format!("unit '{unit}' is not a {dim} unit (expected one of: {})", dim.accepted()))?;
    if !value.is_finite() {
        return Err(format!("'{num}' is not finite"));
    }
    Ok(value * factor)
}
