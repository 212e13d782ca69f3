//! Orbit geometry at a point of the flat: phase classification of the
//! refined root data, principal curvature spectra of the finite orbit and
//! of its path-space lift, truncated operator blocks, and the
//! curvature-adapted consistency check.
//!
//! Conventions. A point `w` and a normal direction `xi` are given by
//! coordinates over the orthonormalized t basis. Every refined component
//! (root alpha, circle angle eps) carries a phase
//! `theta = <alpha, w> + eps/2`. Components whose phase lies on the
//! pi-lattice contribute normal directions ("perpendicular"); all others
//! are tangent ("top"). A tangent component whose phase avoids the
//! half-pi lattice has a nonzero principal curvature and is flagged as a
//! "star" component; at the half-pi lattice the curvature is exactly zero.

use crate::error::{Error, Result};
use crate::liealg::{RMatrix, RVector};
use crate::sympair::{InvolutionPair, RootSystemData};
use serde::{Deserialize, Serialize};

const PI: f64 = std::f64::consts::PI;

/// Tangency class of one refined component at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseClass {
    /// Tangent component; `star` marks a nonzero principal curvature.
    Top { star: bool },
    /// Phase on the pi-lattice: contributes normal directions.
    Perp,
}

/// One refined component with its phase at the chosen point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseEntry {
    pub root_index: usize,
    pub eps_index: usize,
    pub alpha: Vec<f64>,
    pub eps_angle: f64,
    pub mult: usize,
    pub theta: f64,
    pub class: PhaseClass,
}

/// Phase classification of all refined components at a point of the flat.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseTable {
    pub w: Vec<f64>,
    pub entries: Vec<PhaseEntry>,
    /// Transverse centralizer components: (angle, m-part dimension) with
    /// angle nonzero. These directions are tangent with zero curvature.
    pub m0_transverse: Vec<(f64, usize)>,
    pub tangent_dim: usize,
    pub normal_dim: usize,
    /// True when no component is perpendicular.
    pub regular: bool,
}

/// Classify every refined component at the point `w`.
pub fn classify_phases(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    w: &[f64],
) -> Result<PhaseTable> {
    if !rs.refined {
        return Err(Error::InvalidInput(
            "root system must be refined before phase classification".into(),
        ));
    }
    if w.len() != rs.t_dim {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, t has dimension {}",
            w.len(),
            rs.t_dim
        )));
    }
    let tol = pair.model().tolerances();
    let mut entries = Vec::new();
    let mut top_mult = 0usize;
    let mut perp_mult = 0usize;
    for (ri, root) in rs.positive_roots.iter().enumerate() {
        let aw = root.value_at(w);
        for (ei, comp) in root.eps_components.iter().enumerate() {
            let theta = aw + 0.5 * comp.eps_angle;
            let on_pi = tol.lattice_member(theta, PI).map_err(|d| Error::PhaseAmbiguity {
                root: ri.to_string(),
                eps_angle: comp.eps_angle,
                theta,
                distance: d,
                lattice: "pi".into(),
            })?;
            let class = if on_pi {
                perp_mult += comp.mult;
                PhaseClass::Perp
            } else {
                let on_half = tol.lattice_member(theta, PI / 2.0).map_err(|d| {
                    Error::PhaseAmbiguity {
                        root: ri.to_string(),
                        eps_angle: comp.eps_angle,
                        theta,
                        distance: d,
                        lattice: "pi/2".into(),
                    }
                })?;
                top_mult += comp.mult;
                PhaseClass::Top { star: !on_half }
            };
            entries.push(PhaseEntry {
                root_index: ri,
                eps_index: ei,
                alpha: root.alpha.iter().cloned().collect(),
                eps_angle: comp.eps_angle,
                mult: comp.mult,
                theta,
                class,
            });
        }
    }
    let m0_transverse: Vec<(f64, usize)> = rs
        .g0
        .iter()
        .filter(|c| c.eps_angle != 0.0 && c.dim_m > 0)
        .map(|c| (c.eps_angle, c.dim_m))
        .collect();
    let m0t_dim: usize = m0_transverse.iter().map(|&(_, d)| d).sum();
    let tangent_dim = top_mult + m0t_dim;
    let normal_dim = rs.t_dim + perp_mult;
    if tangent_dim + normal_dim != rs.dims.dim_m {
        return Err(Error::Bookkeeping {
            context: "phase classification".into(),
            details: format!(
                "tangent {tangent_dim} + normal {normal_dim} != dim m {}",
                rs.dims.dim_m
            ),
        });
    }
    let regular = perp_mult == 0;
    Ok(PhaseTable {
        w: w.to_vec(),
        entries,
        m0_transverse,
        tangent_dim,
        normal_dim,
        regular,
    })
}

// ----- finite orbit spectrum ----------------------------------------------------

/// One eigenvalue block of the finite shape operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub mult: usize,
    /// Source component: Some((root, eps)) or None for a transverse
    /// centralizer block.
    pub source: Option<(usize, usize)>,
}

/// Shape operator eigenvalues of the finite orbit in direction `xi`.
///
/// Tangent components contribute `-<alpha, xi> * cot(theta)`; transverse
/// centralizer components contribute zeros. Values of components on the
/// half-pi lattice are exactly zero by construction.
pub fn finite_spectrum(
    rs: &RootSystemData,
    table: &PhaseTable,
    xi: &[f64],
) -> Result<Vec<SpectrumEntry>> {
    if xi.len() != rs.t_dim {
        return Err(Error::InvalidInput(format!(
            "direction has {} coordinates, t has dimension {}",
            xi.len(),
            rs.t_dim
        )));
    }
    let mut out = Vec::new();
    for e in &table.entries {
        if let PhaseClass::Top { star } = e.class {
            let axi: f64 = e.alpha.iter().zip(xi).map(|(a, b)| a * b).sum();
            let value = if star { -axi * cot(e.theta) } else { 0.0 };
            out.push(SpectrumEntry {
                value,
                mult: e.mult,
                source: Some((e.root_index, e.eps_index)),
            });
        }
    }
    for &(_, d) in &table.m0_transverse {
        out.push(SpectrumEntry { value: 0.0, mult: d, source: None });
    }
    Ok(out)
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// A principal curvature vector (coordinates over the t basis) with its
/// multiplicity.
#[derive(Debug, Clone)]
pub struct CurvatureVector {
    pub vector: RVector,
    pub mult: usize,
    pub source: Option<(usize, usize)>,
}

/// Principal curvature vectors of the finite orbit: `-cot(theta) * alpha`
/// per tangent component, zero vectors for the half-pi lattice and the
/// transverse centralizer blocks.
pub fn curvature_vectors(rs: &RootSystemData, table: &PhaseTable) -> Result<Vec<CurvatureVector>> {
    let c = rs.t_dim;
    let mut out = Vec::new();
    for e in &table.entries {
        if let PhaseClass::Top { star } = e.class {
            let v = if star {
                RVector::from_iterator(c, e.alpha.iter().map(|a| -a * cot(e.theta)))
            } else {
                RVector::zeros(c)
            };
            out.push(CurvatureVector {
                vector: v,
                mult: e.mult,
                source: Some((e.root_index, e.eps_index)),
            });
        }
    }
    for &(_, d) in &table.m0_transverse {
        out.push(CurvatureVector { vector: RVector::zeros(c), mult: d, source: None });
    }
    Ok(out)
}

/// Merge a list of vectors with multiplicities up to the given tolerance,
/// summing multiplicities; output sorted by (norm, coordinates).
pub fn merge_vectors(entries: &[(RVector, usize)], tol: f64) -> Vec<(RVector, usize)> {
    let mut merged: Vec<(RVector, usize)> = Vec::new();
    for (v, m) in entries {
        if let Some(slot) = merged.iter_mut().find(|(u, _)| (u.clone() - v).norm() <= tol) {
            slot.1 += m;
        } else {
            merged.push((v.clone(), *m));
        }
    }
    merged.sort_by(|a, b| {
        let ka = sort_key(&a.0);
        let kb = sort_key(&b.0);
        ka.partial_cmp(&kb).unwrap()
    });
    merged
}

fn sort_key(v: &RVector) -> Vec<f64> {
    let mut k: Vec<f64> = v.iter().map(|x| (x / 1e-9).round() * 1e-9).collect();
    k.insert(0, (v.norm() / 1e-9).round() * 1e-9);
    k
}

// ----- path-lifted spectrum -----------------------------------------------------

/// One eigenvalue family of the path-lifted shape operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum PfFamily {
    /// Values `-alpha_xi / (theta + m*pi)` over integer `m`.
    Arctan {
        root_index: usize,
        eps_index: usize,
        alpha_xi: f64,
        theta: f64,
        mult: usize,
    },
    /// Values `alpha_xi / (n*pi)` over nonzero integer `n`; present only
    /// for perpendicular components.
    Harmonic {
        root_index: usize,
        eps_index: usize,
        alpha_xi: f64,
        mult: usize,
    },
}

/// Eigenvalue families of the path-lifted shape operator in direction
/// `xi`. Zero always belongs to the spectrum with infinite multiplicity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PfSpectrum {
    pub families: Vec<PfFamily>,
}

pub fn pf_spectrum(rs: &RootSystemData, table: &PhaseTable, xi: &[f64]) -> Result<PfSpectrum> {
    if xi.len() != rs.t_dim {
        return Err(Error::InvalidInput(format!(
            "direction has {} coordinates, t has dimension {}",
            xi.len(),
            rs.t_dim
        )));
    }
    let mut families = Vec::new();
    for e in &table.entries {
        let axi: f64 = e.alpha.iter().zip(xi).map(|(a, b)| a * b).sum();
        match e.class {
            PhaseClass::Top { .. } => families.push(PfFamily::Arctan {
                root_index: e.root_index,
                eps_index: e.eps_index,
                alpha_xi: axi,
                theta: e.theta,
                mult: e.mult,
            }),
            PhaseClass::Perp => families.push(PfFamily::Harmonic {
                root_index: e.root_index,
                eps_index: e.eps_index,
                alpha_xi: axi,
                mult: e.mult,
            }),
        }
    }
    Ok(PfSpectrum { families })
}

/// Materialize the values of one family for indices bounded by `window`.
pub fn materialize_family(family: &PfFamily, window: i64) -> Vec<(f64, usize)> {
    let mut out = Vec::new();
    match family {
        PfFamily::Arctan { alpha_xi, theta, mult, .. } => {
            for m in -window..=window {
                out.push((-alpha_xi / (theta + (m as f64) * PI), *mult));
            }
        }
        PfFamily::Harmonic { alpha_xi, mult, .. } => {
            for n in (-window..=window).filter(|&n| n != 0) {
                out.push((alpha_xi / ((n as f64) * PI), *mult));
            }
        }
    }
    out
}

/// Merge scalar values with multiplicities up to `tol`, sorted ascending.
pub fn merge_scalars(entries: &[(f64, usize)], tol: f64) -> Vec<(f64, usize)> {
    let mut merged: Vec<(f64, usize)> = Vec::new();
    for &(v, m) in entries {
        if let Some(slot) = merged.iter_mut().find(|(u, _)| (*u - v).abs() <= tol) {
            slot.1 += m;
        } else {
            merged.push((v, m));
        }
    }
    merged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    merged
}

// ----- truncated operator blocks -------------------------------------------------

/// Truncated matrix of the path-lifted shape operator on one tangent
/// component, in the orthonormal basis (constant section, then sine and
/// cosine sections per frequency). Exactly symmetric by construction.
///
/// Index layout: 0 is the constant section; for n = 1..=n_max, column
/// 2n-1 is the sine section and column 2n the cosine section.
pub fn top_block_matrix(alpha_xi: f64, theta: f64, n_max: usize) -> RMatrix {
    let size = 2 * n_max + 1;
    let mut m = RMatrix::zeros(size, size);
    m[(0, 0)] = -alpha_xi * cot(theta);
    let sqrt2 = std::f64::consts::SQRT_2;
    for n in 1..=n_max {
        let c = alpha_xi / ((n as f64) * PI);
        let u = 2 * n - 1;
        let v = 2 * n;
        m[(0, u)] = sqrt2 * c;
        m[(u, 0)] = sqrt2 * c;
        m[(u, v)] = -c;
        m[(v, u)] = -c;
    }
    m
}

/// Truncated matrix on one perpendicular component: block diagonal with
/// one 2x2 antidiagonal block per frequency; eigenvalues are exactly
/// `alpha_xi / (n*pi)` in pairs of opposite sign.
pub fn perp_block_matrix(alpha_xi: f64, n_max: usize) -> RMatrix {
    let size = 2 * n_max;
    let mut m = RMatrix::zeros(size, size);
    for n in 1..=n_max {
        let c = alpha_xi / ((n as f64) * PI);
        let u = 2 * (n - 1);
        let v = u + 1;
        m[(u, v)] = -c;
        m[(v, u)] = -c;
    }
    m
}

/// Convergence report of a truncated tangent block against the closed-form
/// family values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruncationReport {
    pub n_max: usize,
    /// `|M - M^T|`; zero because the block is built symmetric.
    pub symmetry_defect: f64,
    /// Max deviation of the `compare` largest (by magnitude) eigenvalues
    /// from the closed-form values.
    pub top_deviation: f64,
}

/// Compare the `compare` largest (by magnitude) eigenvalues of the
/// truncated tangent block with the closed-form family values.
pub fn truncation_report(
    alpha_xi: f64,
    theta: f64,
    n_max: usize,
    compare: usize,
) -> TruncationReport {
    let m = top_block_matrix(alpha_xi, theta, n_max);
    let symmetry_defect = (&m - m.transpose()).norm();
    let se = m.symmetric_eigen();
    let mut got: Vec<f64> = se.eigenvalues.iter().cloned().collect();
    got.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap());

    let exact: Vec<f64> = (-(4 * n_max as i64)..=(4 * n_max as i64))
        .map(|k| -alpha_xi / (theta + (k as f64) * PI))
        .collect();

    // Match each leading eigenvalue to the nearest unused closed-form
    // value; positional comparison would mis-pair the members of the
    // equal-magnitude +-v doublets that arise on the half-pi lattice.
    let k = compare.min(got.len()).min(exact.len());
    let mut used = vec![false; exact.len()];
    let mut dev = 0.0f64;
    for &g in &got[..k] {
        let mut best: Option<(usize, f64)> = None;
        for (j, &e) in exact.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (g - e).abs();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("closed-form list is nonempty");
        used[j] = true;
        dev = dev.max(d);
    }
    TruncationReport { n_max, symmetry_defect, top_deviation: dev }
}

/// Largest-magnitude eigenvalue deviation of the perpendicular block from
/// its exact pairs.
pub fn perp_block_deviation(alpha_xi: f64, n_max: usize) -> f64 {
    let m = perp_block_matrix(alpha_xi, n_max);
    let se = m.symmetric_eigen();
    let mut got: Vec<f64> = se.eigenvalues.iter().cloned().collect();
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut exact: Vec<f64> = Vec::new();
    for n in 1..=n_max {
        let c = alpha_xi / ((n as f64) * PI);
        exact.push(c);
        exact.push(-c);
    }
    exact.sort_by(|a, b| a.partial_cmp(b).unwrap());
    got.iter()
        .zip(&exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max)
}

// ----- curvature-adapted check ---------------------------------------------------

/// Result of checking that the shape operator commutes with the normal
/// Jacobi operator on the tangent frame.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurvatureAdaptedReport {
    pub commutator_norm: f64,
    pub frame_orthonormality: f64,
    pub invariance_residual: f64,
    pub ok: bool,
}

/// Build the tangent frame from the refined component bases, assemble the
/// shape operator (diagonal) and the normal Jacobi operator (from raw
/// adjoint matrices), and measure their commutator.
pub fn curvature_adapted_check(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    table: &PhaseTable,
    xi: &[f64],
) -> Result<CurvatureAdaptedReport> {
    let model = pair.model();
    let tol = model.tolerances();
    let dim = model.dim();
    let spectrum = finite_spectrum(rs, table, xi)?;

    // Tangent frame columns and the matching diagonal curvature values.
    let mut cols: Vec<RVector> = Vec::new();
    let mut diag: Vec<f64> = Vec::new();
    let mut spec_iter = spectrum.iter();
    for e in &table.entries {
        if let PhaseClass::Top { .. } = e.class {
            let s = spec_iter.next().expect("spectrum aligned with table");
            let basis = &rs.positive_roots[e.root_index].eps_components[e.eps_index].m_basis_o;
            for j in 0..basis.ncols() {
                cols.push(basis.column(j).clone_owned());
                diag.push(s.value);
            }
        }
    }
    for comp in rs.g0.iter().filter(|c| c.eps_angle != 0.0 && c.dim_m > 0) {
        for j in 0..comp.m_basis_o.ncols() {
            cols.push(comp.m_basis_o.column(j).clone_owned());
            diag.push(0.0);
        }
    }
    let nt = cols.len();
    if nt != table.tangent_dim {
        return Err(Error::Bookkeeping {
            context: "curvature-adapted check".into(),
            details: format!("frame has {nt} columns, tangent dimension is {}", table.tangent_dim),
        });
    }
    if nt == 0 {
        return Ok(CurvatureAdaptedReport {
            commutator_norm: 0.0,
            frame_orthonormality: 0.0,
            invariance_residual: 0.0,
            ok: true,
        });
    }
    let mut frame = RMatrix::zeros(dim, nt);
    for (j, c) in cols.iter().enumerate() {
        frame.set_column(j, c);
    }
    let frame_orthonormality =
        (frame.transpose() * &frame - RMatrix::identity(nt, nt)).norm();

    // Normal Jacobi operator from raw adjoint matrices.
    let xi_o = pair.t_point_frame(xi)?;
    let ad_xi = model.ad_matrix_ortho(&xi_o)?;
    let jac = -(&ad_xi * &ad_xi);
    let jac_frame = frame.transpose() * &jac * &frame;
    let invariance_residual = (&jac * &frame - &frame * &jac_frame).norm();

    let a = RMatrix::from_diagonal(&RVector::from_vec(diag));
    let commutator_norm = (&a * &jac_frame - &jac_frame * &a).norm();
    let ok = commutator_norm < tol.cluster * 10.0
        && frame_orthonormality < tol.cluster
        && invariance_residual < tol.cluster * 10.0;
    Ok(CurvatureAdaptedReport {
        commutator_norm,
        frame_orthonormality,
        invariance_residual,
        ok,
    })
}
