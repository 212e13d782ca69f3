//! Python bindings: build catalog entries, read their root data, and
//! evaluate orbit spectra and property verdicts.

// The pymethods/pyfunction macros expand `?` on PyResult into an identity
// error conversion, which trips this lint on every fallible binding.
#![allow(clippy::useless_conversion)]

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hermann_core::austere::{orbit_verdicts, sample_points, verify_implications};
use hermann_core::catalog::{build_entry, list_catalog, verify_entry, BuiltEntry};
use hermann_core::orbitgeom::{
    classify_phases, curvature_vectors, finite_spectrum, merge_vectors, perp_block_deviation,
    pf_spectrum, top_block_matrix, truncation_report, PfFamily,
};
use hermann_core::Tolerances;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Property verdicts for the orbit through one point.
#[pyclass(frozen)]
struct Verdicts {
    #[pyo3(get)]
    regular: bool,
    #[pyo3(get)]
    totally_geodesic: bool,
    #[pyo3(get)]
    austere_finite: bool,
    #[pyo3(get)]
    austere_pf: bool,
    #[pyo3(get)]
    minimal: bool,
    #[pyo3(get)]
    mean_curvature_norm: f64,
}

#[pymethods]
impl Verdicts {
    fn __repr__(&self) -> String {
        format!(
            "Verdicts(regular={}, totally_geodesic={}, austere_finite={}, austere_pf={}, \
             minimal={}, mean_curvature_norm={:.3e})",
            self.regular,
            self.totally_geodesic,
            self.austere_finite,
            self.austere_pf,
            self.minimal,
            self.mean_curvature_norm,
        )
    }
}

/// A built catalog entry: validated involution pair plus its refined
/// restricted root system.
#[pyclass]
struct Entry {
    inner: BuiltEntry,
}

#[pymethods]
impl Entry {
    #[new]
    fn new(name: &str, params: BTreeMap<String, usize>) -> PyResult<Self> {
        let inner = build_entry(name, &params, Tolerances::default()).map_err(err)?;
        Ok(Entry { inner })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn description(&self) -> String {
        self.inner.description.clone()
    }

    #[getter]
    fn params(&self) -> BTreeMap<String, usize> {
        self.inner.params.clone()
    }

    #[getter]
    fn t_dim(&self) -> usize {
        self.inner.root_system.t_dim
    }

    /// Dimension table of the canonical splits.
    fn dims(&self) -> BTreeMap<String, usize> {
        let d = &self.inner.root_system.dims;
        BTreeMap::from([
            ("dim_g".to_string(), d.dim_g),
            ("dim_k".to_string(), d.dim_k),
            ("dim_m".to_string(), d.dim_m),
            ("dim_h".to_string(), d.dim_h),
            ("dim_p".to_string(), d.dim_p),
            ("dim_mp".to_string(), d.dim_mp),
            ("dim_m0".to_string(), d.dim_m0),
            ("dim_k0".to_string(), d.dim_k0),
        ])
    }

    /// Positive roots as `(alpha, m_alpha, [(eps_angle, mult), ...])`.
    #[allow(clippy::type_complexity)]
    fn roots(&self) -> Vec<(Vec<f64>, usize, Vec<(f64, usize)>)> {
        self.inner
            .root_system
            .positive_roots
            .iter()
            .map(|r| {
                (
                    r.alpha.iter().cloned().collect(),
                    r.m_alpha,
                    r.eps_components.iter().map(|c| (c.eps_angle, c.mult)).collect(),
                )
            })
            .collect()
    }

    /// Collinear root groups as lists of `(root_index, ratio)`.
    fn lines(&self) -> Vec<Vec<(usize, u8)>> {
        self.inner.root_system.lines.iter().map(|l| l.members.clone()).collect()
    }

    /// Property verdicts for the orbit through `w`.
    fn verdicts(&self, w: Vec<f64>) -> PyResult<Verdicts> {
        let v = orbit_verdicts(&self.inner.pair, &self.inner.root_system, &w).map_err(err)?;
        Ok(Verdicts {
            regular: v.regular,
            totally_geodesic: v.totally_geodesic,
            austere_finite: v.austere_finite,
            austere_pf: v.austere_lift,
            minimal: v.minimal,
            mean_curvature_norm: v.mean_curvature_norm,
        })
    }

    /// Principal curvatures in direction `xi` as `(value, mult)` pairs.
    fn finite_spectrum(&self, w: Vec<f64>, xi: Vec<f64>) -> PyResult<Vec<(f64, usize)>> {
        let rs = &self.inner.root_system;
        let table = classify_phases(&self.inner.pair, rs, &w).map_err(err)?;
        let spec = finite_spectrum(rs, &table, &xi).map_err(err)?;
        Ok(spec.into_iter().map(|s| (s.value, s.mult)).collect())
    }

    /// Merged principal-curvature vectors as `(vector, mult)` pairs.
    #[allow(clippy::type_complexity)]
    fn curvature_vectors(&self, w: Vec<f64>) -> PyResult<Vec<(Vec<f64>, usize)>> {
        let rs = &self.inner.root_system;
        let table = classify_phases(&self.inner.pair, rs, &w).map_err(err)?;
        let raw: Vec<_> = curvature_vectors(rs, &table)
            .map_err(err)?
            .into_iter()
            .map(|cv| (cv.vector, cv.mult))
            .collect();
        Ok(merge_vectors(&raw, 1e-9)
            .into_iter()
            .map(|(v, m)| (v.iter().cloned().collect(), m))
            .collect())
    }

    /// Eigenvalue families of the path-lifted shape operator in direction
    /// `xi`, as `(kind, alpha_xi, theta_or_None, mult)`. Zero always
    /// belongs to the spectrum with infinite multiplicity.
    #[allow(clippy::type_complexity)]
    fn pf_families(
        &self,
        w: Vec<f64>,
        xi: Vec<f64>,
    ) -> PyResult<Vec<(String, f64, Option<f64>, usize)>> {
        let rs = &self.inner.root_system;
        let table = classify_phases(&self.inner.pair, rs, &w).map_err(err)?;
        let spec = pf_spectrum(rs, &table, &xi).map_err(err)?;
        Ok(spec
            .families
            .into_iter()
            .map(|f| match f {
                PfFamily::Arctan { alpha_xi, theta, mult, .. } => {
                    ("arctan".to_string(), alpha_xi, Some(theta), mult)
                }
                PfFamily::Harmonic { alpha_xi, mult, .. } => {
                    ("harmonic".to_string(), alpha_xi, None, mult)
                }
            })
            .collect())
    }

    /// Tangent and normal dimensions of the orbit through `w`.
    fn tangent_normal(&self, w: Vec<f64>) -> PyResult<(usize, usize)> {
        let table = classify_phases(&self.inner.pair, &self.inner.root_system, &w).map_err(err)?;
        Ok((table.tangent_dim, table.normal_dim))
    }

    /// Run the implication suite over a sample grid; returns
    /// `(ok, points_checked, skipped)`.
    fn verify(&self, grid: usize) -> PyResult<(bool, usize, usize)> {
        let points = sample_points(self.inner.root_system.t_dim, grid, Tolerances::default().seed);
        let rep = verify_implications(&self.inner.pair, &self.inner.root_system, &points)
            .map_err(err)?;
        Ok((rep.ok, rep.points_checked, rep.skipped))
    }

    /// Compare the extracted data with the entry's closed form; returns
    /// `(ok, mismatches)`.
    fn golden(&self) -> (bool, Vec<String>) {
        let rep = verify_entry(&self.inner);
        (rep.ok, rep.mismatches)
    }

    fn __repr__(&self) -> String {
        let kv: Vec<String> = self.inner.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("Entry({} {})", self.inner.name, kv.join(" "))
    }
}

/// Available entry families as `(name, params, description)`.
#[pyfunction]
fn catalog() -> Vec<(String, String, String)> {
    list_catalog()
        .into_iter()
        .map(|i| (i.name.to_string(), i.params.to_string(), i.description.to_string()))
        .collect()
}

/// Parse an angle given as a rational multiple of pi, e.g. "pi/8".
#[pyfunction]
fn parse_angle(s: &str) -> PyResult<f64> {
    hermann_core::angles::parse_angle(s).map_err(err)
}

/// Render an angle as a rational multiple of pi when possible.
#[pyfunction]
fn format_angle(x: f64) -> String {
    hermann_core::angles::format_angle(x)
}

/// Eigenvalues of the truncated tangent block, descending by magnitude.
#[pyfunction]
fn top_block_eigenvalues(alpha_xi: f64, theta: f64, n: usize) -> PyResult<Vec<f64>> {
    if n == 0 {
        return Err(err("truncation order must be positive"));
    }
    let m = top_block_matrix(alpha_xi, theta, n);
    let mut vals: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().cloned().collect();
    vals.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap());
    Ok(vals)
}

/// Max deviation of the `compare` leading truncated eigenvalues from the
/// closed-form family values.
#[pyfunction]
fn truncation_deviation(alpha_xi: f64, theta: f64, n: usize, compare: usize) -> PyResult<f64> {
    if n == 0 {
        return Err(err("truncation order must be positive"));
    }
    Ok(truncation_report(alpha_xi, theta, n, compare).top_deviation)
}

/// Deviation of the truncated perpendicular block from its exact pairs.
#[pyfunction]
fn perp_deviation(alpha_xi: f64, n: usize) -> PyResult<f64> {
    if n == 0 {
        return Err(err("truncation order must be positive"));
    }
    Ok(perp_block_deviation(alpha_xi, n))
}

#[pymodule]
fn hermann_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Entry>()?;
    m.add_class::<Verdicts>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(parse_angle, m)?)?;
    m.add_function(wrap_pyfunction!(format_angle, m)?)?;
    m.add_function(wrap_pyfunction!(top_block_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(truncation_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(perp_deviation, m)?)?;
    Ok(())
}
