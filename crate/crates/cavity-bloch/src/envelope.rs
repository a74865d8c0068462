use crate::config::Command;
use cavity_bloch_core::qed_bloch::SpectrumGrid;
use serde::{Deserialize, Serialize};

/// Bumped on any change to the payload layout.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// One run: what was asked, when, and what came out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub schema_version: String,
    pub command: Command,
    /// Config bytes as read.
    pub config_echo: String,
    /// RFC 3339, UTC. The only field that differs between identical runs.
    pub produced_at: String,
    pub seed: u64,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Payload {
    Spectrum(SpectrumPayload),
    Response(ResponsePayload),
    Table(TablePayload),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPayload {
    pub axis_name: String,
    pub axis_unit: String,
    pub scaling: String,
    pub energy_unit: String,
    pub axis: Vec<f64>,
    /// `(k_x [1/m], k_w [s/m])` samples.
    pub k_grid: Vec<[f64; 2]>,
    /// `spectra[axis][k]`, each ascending.
    pub spectra: Vec<Vec<Vec<f64>>>,
    pub failures: Vec<FailureRecord>,
    pub truncation: Option<TruncationRecord>,
    pub lattice: Option<LatticeRecord>,
    /// Plot window `[e_min, e_max]` in `energy_unit`; spectra are stored in full.
    pub window: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub axis_index: usize,
    pub k_index: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationRecord {
    pub n_max: u32,
    pub j_max: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub kind: String,
    /// m
    pub a1: f64,
    /// m
    pub a2: f64,
    /// rad
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponsePayload {
    /// Broadening (rad/s).
    pub eta: f64,
    /// Real frequency grid (rad/s).
    pub w: Vec<f64>,
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub unit: String,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TablePayload {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
    /// Non-numeric results (verdicts, class names).
    pub labels: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Label {
    pub key: String,
    pub value: String,
}

impl TablePayload {
    pub fn new(columns: &[(&str, &str)]) -> Self {
        Self {
            columns: columns.iter().map(|(n, u)| Column { name: n.to_string(), unit: u.to_string() }).collect(),
            rows: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn label(&mut self, key: &str, value: impl Into<String>) {
        self.labels.push(Label { key: key.to_string(), value: value.into() });
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }
}

impl SpectrumPayload {
    pub fn from_grid(grid: &SpectrumGrid, axis_unit: &str) -> Self {
        Self {
            axis_name: grid.axis_kind.name().to_string(),
            axis_unit: axis_unit.to_string(),
            scaling: grid.scaling.name().to_string(),
            energy_unit: grid.scaling.unit().to_string(),
            axis: grid.axis.clone(),
            k_grid: grid.k_grid.clone(),
            spectra: grid.spectra.clone(),
            failures: grid
                .failures
                .iter()
                .map(|f| FailureRecord { axis_index: f.axis_index, k_index: f.k_index, message: f.message.clone() })
                .collect(),
            truncation: grid.truncation.map(|t| TruncationRecord { n_max: t.n_max, j_max: t.j_max }),
            lattice: None,
            window: None,
        }
    }

    pub fn point_count(&self) -> usize {
        self.spectra.iter().flatten().map(Vec::len).sum()
    }
}
