//! Run configuration: a TOML file of flat keys plus an optional `[output]` section.
//! Dimensioned values are strings with a unit (`a = "2 Å"`); dimensionless values are
//! bare numbers. Parsing reports every violation, not just the first.

use crate::units::{parse_quantity, Dimension};
use cavity_bloch_core::cavity_gas::CavitySetup;
use cavity_bloch_core::eft::EftSetup;
use cavity_bloch_core::lattice::{BravaisKind, Lattice2D};
use cavity_bloch_core::qed_bloch::BasisTruncation;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gas,
    Response,
    Conductivity,
    Eft,
    Landau,
    Polariton,
    Butterfly,
    PolaritonButterfly,
    MtgCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gas => "gas",
            Command::Response => "response",
            Command::Conductivity => "conductivity",
            Command::Eft => "eft",
            Command::Landau => "landau",
            Command::Polariton => "polariton",
            Command::Butterfly => "butterfly",
            Command::PolaritonButterfly => "polariton-butterfly",
            Command::MtgCheck => "mtg-check",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Self::value_variants().iter().copied().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
    SvgScatter,
}

impl OutputFormat {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            "svg-scatter" => Some(OutputFormat::SvgScatter),
            _ => None,
        }
    }
}

/// One broken rule, naming the key (or precondition) involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub key: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResponseFunction {
    ChiAa,
    ChiEa,
    ChiJj,
    ChiJa,
}

impl ResponseFunction {
    pub fn name(self) -> &'static str {
        match self {
            ResponseFunction::ChiAa => "chi_aa",
            ResponseFunction::ChiEa => "chi_ea",
            ResponseFunction::ChiJj => "chi_jj",
            ResponseFunction::ChiJa => "chi_ja",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    /// Broadening (rad/s); `None` means `w~ / 100`.
    pub eta: Option<f64>,
    /// Half-width of the symmetric grid (rad/s); `None` means `4 w~`.
    pub w_max: Option<f64>,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ButterflyModel {
    Harper,
    Llb,
    Central,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolaritonModel {
    Reduced,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KSampling {
    Uniform,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Params {
    Gas { setup: CavitySetup, area: f64 },
    Response { setup: CavitySetup, area: f64, function: ResponseFunction, grid: SpectralGrid },
    Conductivity { setup: CavitySetup, grid: SpectralGrid },
    Eft { setup: EftSetup },
    Landau { n2d: f64, mass_ratio: f64, b_min: f64, b_max: f64, points: usize },
    Polariton { omega_p: f64, mass_ratio: f64, b_min: f64, b_max: f64, points: usize },
    Butterfly {
        kind: BravaisKind,
        lattice: Lattice2D,
        v0: f64,
        reciprocal: bool,
        axis_min: f64,
        axis_max: f64,
        points: usize,
        model: ButterflyModel,
        raw: bool,
        g: f64,
        trunc: BasisTruncation,
        k_points: usize,
        k_sampling: KSampling,
        window: Option<(f64, f64)>,
    },
    PolaritonButterfly {
        lattice: Lattice2D,
        flux_ratio: f64,
        g_min: f64,
        g_max: f64,
        points: usize,
        model: PolaritonModel,
        v_coef: f64,
        kinetic: bool,
        psi: f64,
        n_max: u32,
        k_points: usize,
        k_sampling: KSampling,
    },
    MtgCheck { lattice: Lattice2D, b_field: f64, p: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// The config text exactly as read; echoed into every result.
    pub source: String,
    pub params: Params,
    pub output: OutputSpec,
}

/// Parses and validates `source` for `command`.
pub fn parse_config(command: Command, source: &str) -> Result<RunConfig, Vec<Violation>> {
    let table: toml::Table = source.parse().map_err(|e: toml::de::Error| {
        vec![Violation { key: "syntax".into(), message: e.message().trim().to_string() }]
    })?;
    let mut r = Reader::new(&table);
    if let Some(c) = r.string("command") {
        match Command::parse(&c) {
            Some(c) if c == command => {}
            Some(c) => r.violate("command", format!("config is for '{}', run as '{}'", c.name(), command.name())),
            None => r.violate("command", format!("unknown command '{c}'")),
        }
    }
    let output = r.output_section();
    let params = match command {
        Command::Gas => gas(&mut r),
        Command::Response => response(&mut r),
        Command::Conductivity => conductivity(&mut r),
        Command::Eft => eft(&mut r),
        Command::Landau => landau(&mut r),
        Command::Polariton => polariton(&mut r),
        Command::Butterfly => butterfly(&mut r),
        Command::PolaritonButterfly => polariton_butterfly(&mut r),
        Command::MtgCheck => mtg_check(&mut r),
    };
    r.unknown_keys();
    match params {
        Some(params) if r.violations.is_empty() => {
            Ok(RunConfig { command, source: source.to_string(), params, output })
        }
        _ => {
            if r.violations.is_empty() {
                r.violate("config", "incomplete configuration".to_string());
            }
            Err(r.violations)
        }
    }
}

struct Reader<'a> {
    table: &'a toml::Table,
    used: BTreeSet<String>,
    violations: Vec<Violation>,
}

impl<'a> Reader<'a> {
    fn new(table: &'a toml::Table) -> Self {
        Self { table, used: BTreeSet::new(), violations: Vec::new() }
    }

    fn violate(&mut self, key: &str, message: String) {
        self.violations.push(Violation { key: key.to_string(), message });
    }

    fn fail<T>(&mut self, key: &str, message: String) -> Option<T> {
        self.violate(key, message);
        None
    }

    fn get(&mut self, key: &str) -> Option<&'a toml::Value> {
        self.used.insert(key.to_string());
        self.table.get(key)
    }

    fn has(&self, key: &str) -> bool {
        self.table.contains_key(key)
    }

    fn missing<T>(&mut self, key: &str) -> Option<T> {
        self.fail(key, "required key is missing".to_string())
    }

    fn string(&mut self, key: &str) -> Option<String> {
        match self.get(key)? {
            toml::Value::String(s) => Some(s.clone()),
            other => self.fail(key, format!("expected a string, got {}", other.type_str())),
        }
    }

    fn quantity_opt(&mut self, key: &str, dim: Dimension) -> Result<Option<f64>, ()> {
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => match parse_quantity(s, dim) {
                Ok(v) => Ok(Some(v)),
                Err(e) => {
                    self.violate(key, e);
                    Err(())
                }
            },
            Some(other) => {
                self.violate(
                    key,
                    format!("expected a {dim} with unit (e.g. \"1 {}\"), got {}", first_unit(dim), other.type_str()),
                );
                Err(())
            }
        }
    }

    fn quantity(&mut self, key: &str, dim: Dimension) -> Option<f64> {
        match self.quantity_opt(key, dim) {
            Ok(Some(v)) => Some(v),
            Ok(None) => self.missing(key),
            Err(()) => None,
        }
    }

    fn positive_quantity(&mut self, key: &str, dim: Dimension) -> Option<f64> {
        let v = self.quantity(key, dim)?;
        self.positive(key, v)
    }

    fn positive(&mut self, key: &str, v: f64) -> Option<f64> {
        if v > 0.0 {
            Some(v)
        } else {
            self.fail(key, format!("must be > 0, got {v}"))
        }
    }

    fn number_opt(&mut self, key: &str) -> Result<Option<f64>, ()> {
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::Float(x)) if x.is_finite() => Ok(Some(*x)),
            Some(toml::Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(toml::Value::String(s)) => {
                self.violate(key, format!("'{s}' given for a dimensionless key; write a bare number"));
                Err(())
            }
            Some(other) => {
                self.violate(key, format!("expected a finite number, got {}", other.type_str()));
                Err(())
            }
        }
    }

    /// Plot-window bound: a string with an energy unit (J in the output) or a bare
    /// number in the spectrum's own unit.
    fn energy_or_number(&mut self, key: &str) -> Result<Option<f64>, ()> {
        if matches!(self.table.get(key), Some(toml::Value::String(_))) {
            self.quantity_opt(key, Dimension::Energy)
        } else {
            self.number_opt(key)
        }
    }

    fn number(&mut self, key: &str) -> Option<f64> {
        match self.number_opt(key) {
            Ok(Some(v)) => Some(v),
            Ok(None) => self.missing(key),
            Err(()) => None,
        }
    }

    fn number_or(&mut self, key: &str, default: f64) -> Option<f64> {
        self.number_opt(key).ok().map(|v| v.unwrap_or(default))
    }

    fn count_or(&mut self, key: &str, default: usize, min: usize) -> Option<usize> {
        let v = match self.get(key) {
            None => return Some(default),
            Some(toml::Value::Integer(i)) => *i,
            Some(other) => return self.fail(key, format!("expected an integer, got {}", other.type_str())),
        };
        if v < min as i64 || v > u32::MAX as i64 {
            return self.fail(key, format!("must be an integer >= {min}, got {v}"));
        }
        Some(v as usize)
    }

    fn boolean_or(&mut self, key: &str, default: bool) -> Option<bool> {
        match self.get(key) {
            None => Some(default),
            Some(toml::Value::Boolean(b)) => Some(*b),
            Some(other) => self.fail(key, format!("expected true or false, got {}", other.type_str())),
        }
    }

    fn choice_or<T: Copy>(&mut self, key: &str, options: &[(&str, T)], default: T) -> Option<T> {
        if !self.has(key) {
            self.used.insert(key.to_string());
            return Some(default);
        }
        let s = self.string(key)?;
        match options.iter().find(|(n, _)| *n == s) {
            Some((_, v)) => Some(*v),
            None => {
                let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
                self.fail(key, format!("'{s}' is not one of: {}", names.join(", ")))
            }
        }
    }

    fn range(&mut self, lo_key: &str, hi_key: &str, lo: Option<f64>, hi: Option<f64>) -> Option<(f64, f64)> {
        let (lo, hi) = (lo?, hi?);
        if lo < hi {
            Some((lo, hi))
        } else {
            self.fail(hi_key, format!("must exceed {lo_key} ({lo} >= {hi})"))
        }
    }

    fn output_section(&mut self) -> OutputSpec {
        let mut out = OutputSpec::default();
        let Some(value) = self.get("output") else { return out };
        let Some(section) = value.as_table() else {
            self.violate("output", "expected a section [output]".to_string());
            return out;
        };
        for (k, v) in section {
            match (k.as_str(), v) {
                ("path", toml::Value::String(s)) => out.path = Some(PathBuf::from(s)),
                ("format", toml::Value::String(s)) => match OutputFormat::parse(s) {
                    Some(f) => out.format = Some(f),
                    None => self.violate("output.format", format!("'{s}' is not one of: csv, json, svg-scatter")),
                },
                ("path" | "format", other) => {
                    self.violate(&format!("output.{k}"), format!("expected a string, got {}", other.type_str()))
                }
                _ => self.violate(&format!("output.{k}"), "unknown key".to_string()),
            }
        }
        out
    }

    fn unknown_keys(&mut self) {
        let unknown: Vec<String> = self.table.keys().filter(|k| !self.used.contains(*k)).cloned().collect();
        for k in unknown {
            self.violate(&k, "unknown key".to_string());
        }
    }

    fn check<T, E: fmt::Display>(&mut self, key: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => self.fail(key, e.to_string()),
        }
    }

    /// Cavity from `omega_cav` or `l_z` (exactly one), `n2d` and `mass_ratio`.
    fn cavity(&mut self) -> Option<CavitySetup> {
        let w = self.quantity_opt("omega_cav", Dimension::Frequency);
        let l = self.quantity_opt("l_z", Dimension::Length);
        let n2d = self.positive_quantity("n2d", Dimension::Density2d);
        let mass = self.number_or("mass_ratio", 1.0);
        let (w, l) = (w.ok()?, l.ok()?);
        let (n2d, mass) = (n2d?, mass?);
        match (w, l) {
            (Some(w), None) => self.check("omega_cav", CavitySetup::new(w, n2d, mass)),
            (None, Some(l)) => self.check("l_z", CavitySetup::from_mirror_distance(l, n2d, mass)),
            (Some(_), Some(_)) => self.fail("omega_cav", "give either omega_cav or l_z, not both".to_string()),
            (None, None) => self.fail("omega_cav", "required key is missing (or give l_z)".to_string()),
        }
    }

    fn spectral_grid(&mut self) -> Option<SpectralGrid> {
        let eta = self.quantity_opt("eta", Dimension::Frequency);
        let w_max = self.quantity_opt("w_max", Dimension::Frequency);
        let points = self.count_or("points", 2001, 2);
        let (eta, w_max) = (eta.ok()?, w_max.ok()?);
        if let Some(e) = eta {
            self.positive("eta", e)?;
        }
        if let Some(w) = w_max {
            self.positive("w_max", w)?;
        }
        Some(SpectralGrid { eta, w_max, points: points? })
    }

    /// Lattice from `lattice` (class), `a`, optional `a2` and `theta`.
    fn lattice(&mut self) -> Option<(BravaisKind, Lattice2D)> {
        let name = if self.has("lattice") { self.string("lattice") } else { self.missing("lattice") };
        let a = self.positive_quantity("a", Dimension::Length);
        let a2 = self.quantity_opt("a2", Dimension::Length);
        let theta = self.quantity_opt("theta", Dimension::Angle);
        let name = name?;
        let Some(kind) = BravaisKind::parse(&name) else {
            let names: Vec<&str> = BravaisKind::ALL.iter().map(|k| k.name()).collect();
            return self.fail("lattice", format!("'{name}' is not one of: {}", names.join(", ")));
        };
        let (a, a2, theta) = (a?, a2.ok()?, theta.ok()?);
        let default_a2 = match kind {
            BravaisKind::Oblique | BravaisKind::Rectangular => {
                let r = kind.reference_lattice();
                a * r.a2 / r.a1
            }
            _ => a,
        };
        let lat = self.check("a", Lattice2D::new(a, a2.unwrap_or(default_a2), theta.unwrap_or(kind.default_theta())))?;
        self.check("lattice", kind.check(&lat))?;
        Some((kind, lat))
    }

    fn truncation(&mut self, default_j: usize) -> Option<BasisTruncation> {
        let n = self.count_or("n_max", 30, 1);
        let j = self.count_or("j_max", default_j, 0);
        let (n, j) = (n?, j?);
        let t = self.check("n_max", BasisTruncation::new(n as u32, j as u32))?;
        self.check("n_max", t.checked_dimension(1))?;
        Some(t)
    }

    fn k_sampling(&mut self) -> Option<KSampling> {
        self.choice_or("k_grid", &[("uniform", KSampling::Uniform), ("random", KSampling::Random)], KSampling::Uniform)
    }
}

fn first_unit(dim: Dimension) -> &'static str {
    dim.accepted().split(',').next().unwrap_or("")
}

fn gas(r: &mut Reader) -> Option<Params> {
    let setup = r.cavity();
    let area = r.quantity_opt("area", Dimension::Area);
    let setup = setup?;
    let area = r.positive("area", area.ok()?.unwrap_or(1e-12))?;
    if setup.electrons(area) < 1.0 {
        return r.fail("area", format!("n2d * area = {:e} electrons; need at least 1", setup.electrons(area)));
    }
    Some(Params::Gas { setup, area })
}

fn response(r: &mut Reader) -> Option<Params> {
    let setup = r.cavity();
    let area = r.quantity_opt("area", Dimension::Area);
    let function = r.choice_or(
        "function",
        &[
            ("chi_aa", ResponseFunction::ChiAa),
            ("chi_ea", ResponseFunction::ChiEa),
            ("chi_jj", ResponseFunction::ChiJj),
            ("chi_ja", ResponseFunction::ChiJa),
        ],
        ResponseFunction::ChiAa,
    );
    let grid = r.spectral_grid();
    let area = r.positive("area", area.ok()?.unwrap_or(1e-12))?;
    Some(Params::Response { setup: setup?, area, function: function?, grid: grid? })
}

fn conductivity(r: &mut Reader) -> Option<Params> {
    let setup = r.cavity();
    let grid = r.spectral_grid();
    Some(Params::Conductivity { setup: setup?, grid: grid? })
}

fn eft(r: &mut Reader) -> Option<Params> {
    let l_z = r.positive_quantity("l_z", Dimension::Length);
    let n2d = r.positive_quantity("n2d", Dimension::Density2d);
    let electrons = r.number("electrons");
    let mass = r.number_or("mass_ratio", 1.0);
    let lambda0 = r.number_opt("lambda0");
    let ln_lambda0 = r.number_opt("ln_lambda0");
    let (l_z, n2d, electrons, mass) = (l_z?, n2d?, electrons?, mass?);
    let electrons = r.positive("electrons", electrons)?;
    let mass = r.positive("mass_ratio", mass)?;
    let ln = match (lambda0.ok()?, ln_lambda0.ok()?) {
        (Some(l), None) if l > 0.0 => l.ln(),
        (Some(l), None) => return r.fail("lambda0", format!("must be >= 1, got {l}")),
        (None, Some(ln)) => ln,
        (Some(_), Some(_)) => return r.fail("lambda0", "give either lambda0 or ln_lambda0, not both".to_string()),
        (None, None) => return r.missing("lambda0"),
    };
    let key = if r.has("lambda0") { "lambda0" } else { "ln_lambda0" };
    let setup = r.check(key, EftSetup::with_ln_lambda0(l_z, n2d, electrons, mass, ln))?;
    Some(Params::Eft { setup })
}

fn field_range(r: &mut Reader) -> (Option<(f64, f64)>, Option<usize>) {
    let lo = r.positive_quantity("b_min", Dimension::Field);
    let hi = r.positive_quantity("b_max", Dimension::Field);
    let points = r.count_or("points", 200, 1);
    (r.range("b_min", "b_max", lo, hi), points)
}

fn landau(r: &mut Reader) -> Option<Params> {
    let n2d = r.positive_quantity("n2d", Dimension::Density2d);
    let mass = r.number_or("mass_ratio", 1.0);
    let (range, points) = field_range(r);
    let mass_ratio = r.positive("mass_ratio", mass?)?;
    let (b_min, b_max) = range?;
    Some(Params::Landau { n2d: n2d?, mass_ratio, b_min, b_max, points: points? })
}

fn polariton(r: &mut Reader) -> Option<Params> {
    let direct = r.quantity_opt("omega_p", Dimension::Frequency);
    let mass = r.number_or("mass_ratio", 1.0);
    let omega_p = if r.has("omega_cav") || r.has("l_z") || r.has("n2d") {
        let setup = r.cavity();
        if matches!(direct, Ok(Some(_))) {
            return r.fail("omega_p", "give either omega_p or the cavity keys, not both".to_string());
        }
        setup.map(|s| {
            cavity_bloch_core::cavity_gas::plasma_frequency_from_cavity(s.n2d, s.omega_cav, s.mass_ratio)
        })
    } else {
        match direct {
            Ok(Some(w)) => r.positive("omega_p", w),
            Ok(None) => r.missing("omega_p"),
            Err(()) => None,
        }
    };
    let (range, points) = field_range(r);
    let (b_min, b_max) = range?;
    let mass_ratio = r.positive("mass_ratio", mass?)?;
    Some(Params::Polariton { omega_p: omega_p?, mass_ratio, b_min, b_max, points: points? })
}

fn butterfly(r: &mut Reader) -> Option<Params> {
    let lattice = r.lattice();
    let v0 = r.positive_quantity("V0", Dimension::Energy);
    let reciprocal = r.choice_or("axis", &[("flux_ratio", false), ("reciprocal_flux", true)], false);
    let lo = r.number("axis_min");
    let hi = r.number("axis_max");
    let points = r.count_or("points", 400, 1);
    let model = r.choice_or(
        "model",
        &[("harper", ButterflyModel::Harper), ("llb", ButterflyModel::Llb), ("central", ButterflyModel::Central)],
        ButterflyModel::Harper,
    );
    let raw = r.choice_or("scaling", &[("harper", false), ("raw", true)], false);
    let g = r.number_or("g", 1e-8);
    let trunc = r.truncation(0);
    let k_points = r.count_or("k_points", 32, 1);
    let k_sampling = r.k_sampling();
    let e_min = r.energy_or_number("e_min");
    let e_max = r.energy_or_number("e_max");
    let (kind, lattice) = lattice?;
    let lo = r.positive("axis_min", lo?)?;
    let (axis_min, axis_max) = r.range("axis_min", "axis_max", Some(lo), hi)?;
    let model = model?;
    if model == ButterflyModel::Harper && kind != BravaisKind::Square {
        return r.fail("model", format!("the Harper model needs a square lattice, got {}", kind.name()));
    }
    let g = g?;
    if g.is_nan() || g <= 0.0 {
        return r.fail("g", format!("must be > 0, got {g}"));
    }
    let window = match (e_min.ok()?, e_max.ok()?) {
        (Some(a), Some(b)) => Some(r.range("e_min", "e_max", Some(a), Some(b))?),
        (None, None) => None,
        _ => return r.fail("e_max", "e_min and e_max go together".to_string()),
    };
    Some(Params::Butterfly {
        kind,
        lattice,
        v0: v0?,
        reciprocal: reciprocal?,
        axis_min,
        axis_max,
        points: points?,
        model,
        raw: raw?,
        g,
        trunc: trunc?,
        k_points: k_points?,
        k_sampling: k_sampling?,
        window,
    })
}

fn polariton_butterfly(r: &mut Reader) -> Option<Params> {
    let a = r.quantity_opt("a", Dimension::Length);
    let flux = r.number("flux_ratio");
    let g_min = r.number_or("g_min", 0.0);
    let g_max = r.number("g_max");
    let points = r.count_or("points", 300, 1);
    let model = r.choice_or("model", &[("reduced", PolaritonModel::Reduced), ("full", PolaritonModel::Full)], PolaritonModel::Reduced);
    let v0 = r.quantity_opt("V0", Dimension::Energy);
    let kinetic = r.boolean_or("kinetic", false);
    let psi = r.number_or("psi", 0.0);
    let n_max = r.count_or("n_max", 30, 1);
    let k_points = r.count_or("k_points", 32, 1);
    let k_sampling = r.k_sampling();
    let lattice = r.check("a", Lattice2D::square(a.ok()?.unwrap_or(2e-10)))?;
    let flux_ratio = r.positive("flux_ratio", flux?)?;
    let g_min = g_min?;
    if g_min < 0.0 {
        return r.fail("g_min", format!("must be >= 0, got {g_min}"));
    }
    let (g_min, g_max) = r.range("g_min", "g_max", Some(g_min), g_max)?;
    let (model, kinetic) = (model?, kinetic?);
    if kinetic && model == PolaritonModel::Reduced {
        return r.fail("kinetic", "the kinetic term needs model = \"full\"".to_string());
    }
    let v0 = v0.ok()?.unwrap_or(cavity_bloch_core::lattice::REFERENCE_V0);
    let n_max = n_max?;
    if model == PolaritonModel::Full {
        let t = r.check("n_max", BasisTruncation::new(n_max as u32, 0))?;
        if t.fourier_len().pow(2) > t.cap {
            return r.fail("n_max", format!("(2 n_max + 1)^2 = {} exceeds the cap {}", t.fourier_len().pow(2), t.cap));
        }
    }
    Some(Params::PolaritonButterfly {
        lattice,
        flux_ratio,
        g_min,
        g_max,
        points: points?,
        model,
        v_coef: 0.5 * v0,
        kinetic,
        psi: psi?,
        n_max: n_max as u32,
        k_points: k_points?,
        k_sampling: k_sampling?,
    })
}

fn mtg_check(r: &mut Reader) -> Option<Params> {
    let lattice = r.lattice();
    let b = r.quantity_opt("b_field", Dimension::Field);
    let flux = r.number_opt("flux_ratio");
    let p = r.count_or("p", 1, 1);
    let (_, lattice) = lattice?;
    let b_field = match (b.ok()?, flux.ok()?) {
        (Some(b), None) => r.positive("b_field", b)?,
        (None, Some(f)) => cavity_bloch_core::lattice::field_for_flux_ratio(&lattice, r.positive("flux_ratio", f)?),
        (Some(_), Some(_)) => return r.fail("b_field", "give either b_field or flux_ratio, not both".to_string()),
        (None, None) => return r.missing("b_field"),
    };
    Some(Params::MtgCheck { lattice, b_field, p: p? as u32 })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUTTERFLY: &str = "lattice = \"square\"\na = \"2 Å\"\nV0 = \"3 eV\"\naxis_min = 0.01\naxis_max = 2.0\npoints = 400\n";

    #[test]
    fn minimal_butterfly_is_valid() {
        let c = parse_config(Command::Butterfly, BUTTERFLY).unwrap();
        assert_eq!(c.source, BUTTERFLY);
        match c.params {
            Params::Butterfly { v0, lattice, points, .. } => {
                assert_eq!(points, 400);
                assert!((lattice.a1 - 2e-10).abs() < 1e-25);
                assert!((v0 / cavity_bloch_core::constants::EV - 3.0).abs() < 1e-12);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn missing_key_is_the_single_violation() {
        let src = BUTTERFLY.replace("V0 = \"3 eV\"\n", "");
        let v = parse_config(Command::Butterfly, &src).unwrap_err();
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].key, "V0");
    }

    #[test]
    fn all_violations_are_collected() {
        let src = "lattice = \"square\"\na = \"2 eV\"\nV0 = 3\naxis_min = 0.01\naxis_max = 2.0\ncolour = 1\n";
        let v = parse_config(Command::Butterfly, src).unwrap_err();
        let keys: Vec<&str> = v.iter().map(|x| x.key.as_str()).collect();
        assert!(keys.contains(&"a") && keys.contains(&"V0") && keys.contains(&"colour"), "{v:?}");
    }

    #[test]
    fn eft_cutoff_window() {
        let src = "l_z = \"2 um\"\nn2d = \"1e12 cm^-2\"\nelectrons = 1e5\nln_lambda0 = 1e9\n";
        let v = parse_config(Command::Eft, src).unwrap_err();
        assert_eq!(v.len(), 1);
        assert!(v[0].message.contains("stability window"), "{}", v[0]);
    }
}
