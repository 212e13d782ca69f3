//! Serializable report shapes and deterministic file writers.
//!
//! JSON is written with stable key order (struct declaration order, maps
//! are `BTreeMap`) and a trailing newline; CSV has a header row, `,`
//! separators and `.` decimal points. No timestamps or environment data
//! appear in any output, so identical runs produce identical bytes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hermann_core::austere::LineOffsets;
use hermann_core::orbitgeom::PfFamily;
use hermann_core::sympair::RootSystemRecord;

use crate::Failure;

#[derive(Debug, serde::Serialize)]
pub struct PropertyReport {
    pub schema: u32,
    pub entry: String,
    pub params: BTreeMap<String, usize>,
    pub w: Vec<f64>,
    pub w_display: Vec<String>,
    pub xi: Vec<f64>,
    pub regular: bool,
    pub totally_geodesic: bool,
    pub austere_finite: bool,
    pub austere_pf: bool,
    pub minimal: bool,
    pub mean_curvature_norm: f64,
    pub tangent_dim: usize,
    pub normal_dim: usize,
    /// Merged principal-curvature vectors with multiplicities.
    pub curvature_vectors: Vec<VectorEntry>,
    /// Per-line lifted-spectrum offsets backing the austere_pf verdict.
    pub pf_line_offsets: Vec<LineOffsets>,
}

#[derive(Debug, serde::Serialize)]
pub struct VectorEntry {
    pub vector: Vec<f64>,
    pub mult: usize,
}

#[derive(Debug, serde::Serialize)]
pub struct PfReport {
    pub schema: u32,
    pub entry: String,
    pub w: Vec<f64>,
    pub xi: Vec<f64>,
    /// Nonzero eigenvalue families; zero is always present with infinite
    /// multiplicity and is omitted here.
    pub families: Vec<PfFamily>,
}

#[derive(Debug, serde::Serialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub entry: String,
    pub params: BTreeMap<String, usize>,
    pub grid: usize,
    pub golden_ok: bool,
    pub golden_mismatches: Vec<String>,
    pub checks: Vec<hermann_core::austere::ImplicationCheck>,
    pub lift_only_points: Vec<Vec<f64>>,
    pub skipped: usize,
    pub points_checked: usize,
    pub ok: bool,
}

#[derive(Debug, serde::Serialize)]
pub struct SpectrumRow {
    pub value: f64,
    pub mult: usize,
    pub root_index: Option<usize>,
    pub eps_index: Option<usize>,
    pub eps_angle: Option<f64>,
}

#[derive(Debug, serde::Serialize)]
pub struct SpectrumReport {
    pub schema: u32,
    pub entry: String,
    pub w: Vec<f64>,
    pub xi: Vec<f64>,
    pub rows: Vec<SpectrumRow>,
}

#[derive(Debug, serde::Serialize)]
pub struct TruncationRow {
    pub block: &'static str,
    pub root_index: usize,
    pub eps_index: usize,
    pub alpha_xi: f64,
    pub theta: Option<f64>,
    pub n: usize,
    pub symmetry_defect: f64,
    pub deviation: f64,
}

#[derive(Debug, serde::Serialize)]
pub struct TruncationTable {
    pub schema: u32,
    pub entry: String,
    pub w: Vec<f64>,
    pub xi: Vec<f64>,
    pub compare: usize,
    pub rows: Vec<TruncationRow>,
}

#[derive(Debug, serde::Serialize)]
pub struct CatalogList {
    pub schema: u32,
    pub entries: Vec<hermann_core::catalog::CatalogEntryInfo>,
}

#[derive(Debug, serde::Serialize)]
pub struct CatalogExport {
    pub schema: u32,
    pub entry: String,
    pub params: BTreeMap<String, usize>,
    /// Closed-form expected roots, when the family has them.
    pub expected_roots: Option<Vec<hermann_core::catalog::ExpectedRoot>>,
    /// Root system actually extracted from the built pair.
    pub extracted: RootSystemRecord,
}

fn opt(v: Option<impl ToString>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SpectrumRow {
    fn csv(&self) -> Vec<String> {
        vec![
            self.value.to_string(),
            self.mult.to_string(),
            opt(self.root_index),
            opt(self.eps_index),
            opt(self.eps_angle),
        ]
    }
}

impl TruncationRow {
    fn csv(&self) -> Vec<String> {
        vec![
            self.block.to_string(),
            self.root_index.to_string(),
            self.eps_index.to_string(),
            self.alpha_xi.to_string(),
            opt(self.theta),
            self.n.to_string(),
            self.symmetry_defect.to_string(),
            self.deviation.to_string(),
        ]
    }
}

pub fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, Failure> {
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::config(format!("out: cannot serialize {name}: {e}")))?;
    text.push('\n');
    write_file(&path, &text)?;
    Ok(path)
}

pub fn write_csv(
    dir: &Path,
    name: &str,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<PathBuf, Failure> {
    let path = dir.join(name);
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_file(&path, &text)?;
    Ok(path)
}

pub fn spectrum_files(
    dir: &Path,
    report: &SpectrumReport,
    format: crate::config::Format,
) -> Result<PathBuf, Failure> {
    match format {
        crate::config::Format::Json => write_json(dir, "finite_spectrum.json", report),
        crate::config::Format::Csv => write_csv(
            dir,
            "finite_spectrum.csv",
            &["value", "mult", "root_index", "eps_index", "eps_angle"],
            report.rows.iter().map(SpectrumRow::csv),
        ),
    }
}

pub fn truncation_files(
    dir: &Path,
    table: &TruncationTable,
    format: crate::config::Format,
) -> Result<PathBuf, Failure> {
    match format {
        crate::config::Format::Json => write_json(dir, "truncation.json", table),
        crate::config::Format::Csv => write_csv(
            dir,
            "truncation.csv",
            &[
                "block",
                "root_index",
                "eps_index",
                "alpha_xi",
                "theta",
                "n",
                "symmetry_defect",
                "deviation",
            ],
            table.rows.iter().map(TruncationRow::csv),
        ),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .map_err(|e| Failure::config(format!("out: cannot create {}: {e}", parent.display())))?;
    }
    std::fs::write(path, text)
        .map_err(|e| Failure::config(format!("out: cannot write {}: {e}", path.display())))
}
