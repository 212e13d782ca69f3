//! Verdicts about an orbit at a point of the flat: austere property of
//! the finite orbit and of its path-space lift, total geodesy,
//! minimality, plus cross-checks of the structural implications between
//! them and a windowed numerical oracle for the lifted criterion.
//!
//! The lifted criterion works per collinear root family ("line"): a
//! member `lambda * beta` (lambda = 1 or 2) with phase `theta`
//! contributes the offsets `(theta + j*pi)/lambda mod pi` for
//! `j = 0..lambda`, each with the component multiplicity. The lifted
//! orbit is austere exactly when every line's offset multiset is
//! invariant under `o -> pi - o` modulo pi.

use crate::error::{Error, Result};
use crate::liealg::RVector;
use crate::orbitgeom::{
    classify_phases, curvature_vectors, merge_scalars, merge_vectors, materialize_family,
    pf_spectrum, PhaseClass, PhaseTable,
};
use crate::sympair::{InvolutionPair, RootSystemData};
use serde::{Deserialize, Serialize};

const PI: f64 = std::f64::consts::PI;

/// Offsets contributed by a line member with ratio `lambda` and phase
/// `theta`, folded into `[0, pi)`.
pub fn ap_offsets(theta: f64, lambda: u8) -> Vec<f64> {
    (0..lambda)
        .map(|j| ((theta + (j as f64) * PI) / (lambda as f64)).rem_euclid(PI))
        .collect()
}

/// Distance between two angles modulo pi.
fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Merge angles modulo pi with multiplicities, sorted ascending.
fn merge_circular(entries: &[(f64, usize)], tol: f64) -> Vec<(f64, usize)> {
    let mut merged: Vec<(f64, usize)> = Vec::new();
    for &(o, m) in entries {
        if let Some(slot) = merged.iter_mut().find(|(u, _)| circ_dist(*u, o) <= tol) {
            slot.1 += m;
        } else {
            merged.push((o.rem_euclid(PI), m));
        }
    }
    merged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    merged
}

// ----- finite orbit -------------------------------------------------------------

/// Austere verdict for the finite orbit: the merged multiset of principal
/// curvature vectors must be invariant under negation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AustereFiniteReport {
    /// Merged curvature vectors (coordinates over t) with multiplicities.
    pub vectors: Vec<(Vec<f64>, usize)>,
    pub austere: bool,
    /// First vector whose negation is missing or has the wrong
    /// multiplicity, if any.
    pub violation: Option<Vec<f64>>,
}

pub fn austere_finite(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    table: &PhaseTable,
) -> Result<AustereFiniteReport> {
    let tol = pair.model().tolerances().vector_merge;
    let raw = curvature_vectors(rs, table)?;
    let merged = merge_vectors(
        &raw.iter().map(|c| (c.vector.clone(), c.mult)).collect::<Vec<_>>(),
        tol,
    );
    let mut austere = true;
    let mut violation = None;
    for (v, m) in &merged {
        let neg = -v;
        let partner = merged.iter().find(|(u, _)| (u - &neg).norm() <= tol);
        if partner.map(|(_, pm)| *pm) != Some(*m) {
            austere = false;
            violation = Some(v.iter().cloned().collect());
            break;
        }
    }
    Ok(AustereFiniteReport {
        vectors: merged
            .into_iter()
            .map(|(v, m)| (v.iter().cloned().collect(), m))
            .collect(),
        austere,
        violation,
    })
}

/// The finite orbit is totally geodesic exactly when no tangent component
/// carries a nonzero principal curvature.
pub fn totally_geodesic(table: &PhaseTable) -> bool {
    table
        .entries
        .iter()
        .all(|e| !matches!(e.class, PhaseClass::Top { star: true }))
}

/// Mean curvature verdict for the finite orbit (shared by its lift).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinimalReport {
    /// Multiplicity-weighted sum of the curvature vectors, t coordinates.
    pub mean_vector: Vec<f64>,
    pub norm: f64,
    /// Scale of the individual contributions the norm is compared to.
    pub scale: f64,
    pub minimal: bool,
}

pub fn minimal_orbit(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    table: &PhaseTable,
) -> Result<MinimalReport> {
    let tol = pair.model().tolerances().vector_merge;
    let raw = curvature_vectors(rs, table)?;
    let mut h = RVector::zeros(rs.t_dim);
    let mut scale = 1.0f64;
    for c in &raw {
        h += &c.vector * (c.mult as f64);
        scale += c.vector.norm() * (c.mult as f64);
    }
    let norm = h.norm();
    Ok(MinimalReport {
        mean_vector: h.iter().cloned().collect(),
        norm,
        scale,
        minimal: norm <= tol * scale,
    })
}

// ----- lifted orbit -------------------------------------------------------------

/// Offset multiset of one line at the chosen point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineOffsets {
    pub line_index: usize,
    /// Coordinates of the line's shortest root.
    pub base_alpha: Vec<f64>,
    /// Merged offsets in `[0, pi)` with multiplicities.
    pub offsets: Vec<(f64, usize)>,
    pub symmetric: bool,
}

/// Austere verdict for the lifted orbit via the per-line offset
/// criterion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AusterePfReport {
    pub lines: Vec<LineOffsets>,
    pub austere: bool,
}

pub fn austere_pf(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    table: &PhaseTable,
) -> Result<AusterePfReport> {
    let tol = pair.model().tolerances().vector_merge;
    let mut lines = Vec::new();
    let mut austere = true;
    for (li, line) in rs.lines.iter().enumerate() {
        let mut raw: Vec<(f64, usize)> = Vec::new();
        for &(ri, lambda) in &line.members {
            for e in table.entries.iter().filter(|e| e.root_index == ri) {
                if matches!(e.class, PhaseClass::Top { .. }) {
                    for o in ap_offsets(e.theta, lambda) {
                        raw.push((o, e.mult));
                    }
                }
            }
        }
        let merged = merge_circular(&raw, tol);
        let mut symmetric = true;
        for &(o, m) in &merged {
            let target = PI - o;
            let partner = merged.iter().find(|(u, _)| circ_dist(*u, target) <= 2.0 * tol);
            if partner.map(|(_, pm)| *pm) != Some(m) {
                symmetric = false;
                break;
            }
        }
        if !symmetric {
            austere = false;
        }
        lines.push(LineOffsets {
            line_index: li,
            base_alpha: rs.positive_roots[line.base_index].alpha.iter().cloned().collect(),
            offsets: merged,
            symmetric,
        });
    }
    Ok(AusterePfReport { lines, austere })
}

/// Windowed numerical oracle for the lifted austere criterion: materialize
/// every eigenvalue family up to the window, drop values below the
/// smallest magnitude every family covers completely, and check the
/// remaining multiset for sign symmetry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowedCheck {
    pub window: i64,
    pub cutoff: f64,
    pub values_checked: usize,
    pub symmetric: bool,
}

pub fn austere_pf_windowed(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    table: &PhaseTable,
    xi: &[f64],
    window: i64,
) -> Result<WindowedCheck> {
    if window < 2 {
        return Err(Error::InvalidInput("window must be at least 2".into()));
    }
    let tol = pair.model().tolerances().vector_merge;
    let pf = pf_spectrum(rs, table, xi)?;
    let scale_of = |f: &crate::orbitgeom::PfFamily| -> f64 {
        match f {
            crate::orbitgeom::PfFamily::Arctan { alpha_xi, .. } => alpha_xi.abs(),
            crate::orbitgeom::PfFamily::Harmonic { alpha_xi, .. } => alpha_xi.abs(),
        }
    };
    let a_max = pf.families.iter().map(&scale_of).fold(0.0f64, f64::max);
    if a_max == 0.0 {
        return Ok(WindowedCheck { window, cutoff: 0.0, values_checked: 0, symmetric: true });
    }
    let cutoff = a_max / (((window - 1) as f64) * PI);
    let mut values: Vec<(f64, usize)> = Vec::new();
    for f in &pf.families {
        for (v, m) in materialize_family(f, window) {
            if v.abs() > cutoff {
                values.push((v, m));
            }
        }
    }
    let vmax = values.iter().map(|(v, _)| v.abs()).fold(0.0f64, f64::max);
    let tol_abs = tol * (1.0 + vmax);
    let merged = merge_scalars(&values, tol_abs);
    let mut symmetric = true;
    for &(v, m) in &merged {
        let partner = merged.iter().find(|(u, _)| (u + v).abs() <= tol_abs);
        if partner.map(|(_, pm)| *pm) != Some(m) {
            symmetric = false;
            break;
        }
    }
    Ok(WindowedCheck {
        window,
        cutoff,
        values_checked: merged.iter().map(|(_, m)| m).sum(),
        symmetric,
    })
}

// ----- combined verdicts ----------------------------------------------------------

/// All verdicts for the orbit through one point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitVerdicts {
    pub w: Vec<f64>,
    pub regular: bool,
    pub totally_geodesic: bool,
    pub austere_finite: bool,
    pub austere_lift: bool,
    pub minimal: bool,
    pub mean_curvature_norm: f64,
}

pub fn orbit_verdicts(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    w: &[f64],
) -> Result<OrbitVerdicts> {
    let table = classify_phases(pair, rs, w)?;
    let fin = austere_finite(pair, rs, &table)?;
    let lift = austere_pf(pair, rs, &table)?;
    let minimal = minimal_orbit(pair, rs, &table)?;
    Ok(OrbitVerdicts {
        w: w.to_vec(),
        regular: table.regular,
        totally_geodesic: totally_geodesic(&table),
        austere_finite: fin.austere,
        austere_lift: lift.austere,
        minimal: minimal.minimal,
        mean_curvature_norm: minimal.norm,
    })
}

/// True when no line carries a double root.
pub fn is_reduced(rs: &RootSystemData) -> bool {
    rs.lines.iter().all(|l| l.members.len() == 1)
}

/// True when the two involutions are the same operator.
pub fn sigma_equals_tau(pair: &InvolutionPair) -> bool {
    let d = (pair.sigma() - pair.tau()).norm();
    d < pair.model().tolerances().structural * 100.0
}

// ----- implication checks ----------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImplicationCheck {
    pub name: String,
    pub applicable: bool,
    pub points_checked: usize,
    pub violations: Vec<String>,
}

/// Report of the implication suite over a set of points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub checks: Vec<ImplicationCheck>,
    /// Points where the lifted orbit is austere but the finite one is not.
    pub lift_only_points: Vec<Vec<f64>>,
    /// Points skipped because a phase fell into the ambiguity band.
    pub skipped: usize,
    pub points_checked: usize,
    pub ok: bool,
}

/// Check the structural implications between the verdicts on a set of
/// points of the flat:
///
/// - totally geodesic implies finite-austere implies minimal (always);
/// - finite-austere implies lift-austere when the involutions commute;
/// - finite-austere and lift-austere agree when no line has a double root;
/// - with equal involutions, austere and totally geodesic all agree;
/// - a line's shorter root never has smaller multiplicity than its double.
pub fn verify_implications(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    points: &[Vec<f64>],
) -> Result<ImplicationReport> {
    let commuting = pair.involutions_commute();
    let reduced = is_reduced(rs);
    let equal = sigma_equals_tau(pair);

    let mut tg_austere = ImplicationCheck {
        name: "totally-geodesic-implies-finite-austere".into(),
        applicable: true,
        points_checked: 0,
        violations: Vec::new(),
    };
    let mut austere_minimal = ImplicationCheck {
        name: "finite-austere-implies-minimal".into(),
        applicable: true,
        points_checked: 0,
        violations: Vec::new(),
    };
    let mut lift_up = ImplicationCheck {
        name: "finite-austere-lifts-when-involutions-commute".into(),
        applicable: commuting,
        points_checked: 0,
        violations: Vec::new(),
    };
    let mut reduced_equiv = ImplicationCheck {
        name: "reduced-system-equivalence".into(),
        applicable: reduced,
        points_checked: 0,
        violations: Vec::new(),
    };
    let mut equal_rigidity = ImplicationCheck {
        name: "equal-involutions-rigidity".into(),
        applicable: equal,
        points_checked: 0,
        violations: Vec::new(),
    };
    let mut mult_inequality = ImplicationCheck {
        name: "double-root-multiplicity-drop".into(),
        applicable: rs.lines.iter().any(|l| l.members.len() == 2),
        points_checked: 0,
        violations: Vec::new(),
    };
    if mult_inequality.applicable {
        mult_inequality.points_checked = 1;
        for line in rs.lines.iter().filter(|l| l.members.len() == 2) {
            let base = rs.positive_roots[line.members[0].0].m_alpha;
            let dbl = rs.positive_roots[line.members[1].0].m_alpha;
            if base <= dbl {
                mult_inequality
                    .violations
                    .push(format!("line {}: {base} <= {dbl}", line.base_index));
            }
        }
    }

    let mut lift_only_points = Vec::new();
    let mut skipped = 0usize;
    let mut points_checked = 0usize;
    for w in points {
        let v = match orbit_verdicts(pair, rs, w) {
            Ok(v) => v,
            Err(Error::PhaseAmbiguity { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        points_checked += 1;

        tg_austere.points_checked += 1;
        if v.totally_geodesic && !v.austere_finite {
            tg_austere.violations.push(format!("{:?}", v.w));
        }
        austere_minimal.points_checked += 1;
        if v.austere_finite && !v.minimal {
            austere_minimal.violations.push(format!("{:?}", v.w));
        }
        if commuting {
            lift_up.points_checked += 1;
            if v.austere_finite && !v.austere_lift {
                lift_up.violations.push(format!("{:?}", v.w));
            }
        }
        if reduced {
            reduced_equiv.points_checked += 1;
            if v.austere_finite != v.austere_lift {
                reduced_equiv.violations.push(format!("{:?}", v.w));
            }
        }
        if equal {
            equal_rigidity.points_checked += 1;
            if !(v.austere_finite == v.austere_lift && v.austere_lift == v.totally_geodesic) {
                equal_rigidity.violations.push(format!("{:?}", v.w));
            }
        }
        if v.austere_lift && !v.austere_finite {
            lift_only_points.push(v.w.clone());
        }
    }

    let checks = vec![
        tg_austere,
        austere_minimal,
        lift_up,
        reduced_equiv,
        equal_rigidity,
        mult_inequality,
    ];
    let ok = checks.iter().all(|c| c.violations.is_empty());
    Ok(ImplicationReport { checks, lift_only_points, skipped, points_checked, ok })
}

/// First point where the lifted orbit is austere while the finite orbit
/// is not.
pub fn search_lift_only_point(
    pair: &InvolutionPair,
    rs: &RootSystemData,
    points: &[Vec<f64>],
) -> Result<Option<OrbitVerdicts>> {
    for w in points {
        match orbit_verdicts(pair, rs, w) {
            Ok(v) => {
                if v.austere_lift && !v.austere_finite {
                    return Ok(Some(v));
                }
            }
            Err(Error::PhaseAmbiguity { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Deterministic sample of points of the flat: small multiples of pi/8 on
/// every coordinate first (including diagonals), then seeded uniform
/// draws from `[0, pi)^t_dim`.
pub fn sample_points(t_dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::Rng;
    use rand::SeedableRng;
    let mut out: Vec<Vec<f64>> = Vec::new();
    if t_dim == 0 {
        return out;
    }
    let lattice = [PI / 8.0, PI / 4.0, 3.0 * PI / 8.0, PI / 2.0, 0.0];
    // Full product for small flats, diagonals and axes otherwise.
    if lattice.len().pow(t_dim as u32) <= 4 * count.max(1) && t_dim <= 4 {
        let mut idx = vec![0usize; t_dim];
        loop {
            out.push(idx.iter().map(|&i| lattice[i]).collect());
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < lattice.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == t_dim {
                    break;
                }
            }
            if k == t_dim {
                break;
            }
        }
    } else {
        for &c in &lattice {
            out.push(vec![c; t_dim]);
            for k in 0..t_dim {
                let mut p = vec![0.0; t_dim];
                p[k] = c;
                out.push(p);
            }
        }
    }
    out.retain(|p| p.iter().any(|&c| c != 0.0));
    out.truncate(count);
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
    while out.len() < count {
        out.push((0..t_dim).map(|_| rng.gen_range(0.0..PI)).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{block_sign_matrix, linear_map_matrix, su_basis, su_index_sym};
    use crate::liealg::{AlgebraElement, LieAlgebraModel};
    use crate::sympair::{extract_root_system, refine_by_sigma_tau};
    use crate::tol::Tolerances;

    fn su_conj_pair(p: usize, q: usize) -> (InvolutionPair, RootSystemData) {
        let n = p + q;
        let model = LieAlgebraModel::new(su_basis(n), 0.5, Tolerances::default()).unwrap();
        let ipq = block_sign_matrix(p, q);
        let sigma = linear_map_matrix(&model, |x| &ipq * x * &ipq).unwrap();
        let tau = linear_map_matrix(&model, |x| x.map(|z| z.conj())).unwrap();
        let t: Vec<AlgebraElement> = (0..q)
            .map(|i| {
                let mut c = vec![0.0; model.dim()];
                c[su_index_sym(n, i, p + i)] = 1.0;
                AlgebraElement::new(c)
            })
            .collect();
        let pair = InvolutionPair::new(model, sigma, tau, &t).unwrap();
        let rs = extract_root_system(&pair).unwrap();
        let rs = refine_by_sigma_tau(&pair, rs).unwrap();
        (pair, rs)
    }

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() < tol, "{what}: {a} vs {b}");
    }

    #[test]
    fn offsets_of_a_double_member() {
        let o = ap_offsets(3.0 * PI / 4.0, 2);
        assert_eq!(o.len(), 2);
        assert_close(o[0], 3.0 * PI / 8.0, 1e-12, "first offset");
        assert_close(o[1], 7.0 * PI / 8.0, 1e-12, "second offset");
        let o1 = ap_offsets(5.0 * PI / 8.0 + PI, 1);
        assert_close(o1[0], 5.0 * PI / 8.0, 1e-12, "wrapped single offset");
    }

    #[test]
    fn su21_verdicts_at_pi_eighth() {
        let (pair, rs) = su_conj_pair(2, 1);
        let v = orbit_verdicts(&pair, &rs, &[PI / 8.0]).unwrap();
        assert!(v.regular);
        assert!(!v.totally_geodesic);
        assert!(!v.austere_finite);
        assert!(v.austere_lift);
        assert!(v.minimal);
        assert!(v.mean_curvature_norm < 1e-12);
    }

    #[test]
    fn su21_offset_multiset_at_pi_eighth() {
        let (pair, rs) = su_conj_pair(2, 1);
        let table = classify_phases(&pair, &rs, &[PI / 8.0]).unwrap();
        let rep = austere_pf(&pair, &rs, &table).unwrap();
        assert_eq!(rep.lines.len(), 1);
        let offs: Vec<f64> = rep.lines[0].offsets.iter().map(|&(o, _)| o).collect();
        let expected = [PI / 8.0, 3.0 * PI / 8.0, 5.0 * PI / 8.0, 7.0 * PI / 8.0];
        assert_eq!(offs.len(), expected.len());
        for (o, e) in offs.iter().zip(&expected) {
            assert_close(*o, *e, 1e-9, "offset");
        }
        assert!(rep.lines[0].offsets.iter().all(|&(_, m)| m == 1));
        assert!(rep.austere);
    }

    #[test]
    fn su41_breaks_lift_austerity_at_pi_eighth() {
        let (pair, rs) = su_conj_pair(4, 1);
        let v = orbit_verdicts(&pair, &rs, &[PI / 8.0]).unwrap();
        assert!(!v.austere_lift); // multiplicities 3 vs 1 cannot pair up
        assert!(!v.austere_finite);
        assert!(!v.minimal);
        // mean curvature: 3(-cot(pi/8)) + 3(-cot(5pi/8)) + 2(-2cot(3pi/4))
        // = -6/sqrt2... computed directly:
        let sq2 = std::f64::consts::SQRT_2;
        let expect = (3.0 * (-(sq2 + 1.0)) + 3.0 * (sq2 - 1.0) + 2.0f64).abs();
        assert_close(v.mean_curvature_norm, expect, 1e-9, "mean curvature");
    }

    #[test]
    fn su32_diagonal_point_is_lift_only() {
        let (pair, rs) = su_conj_pair(3, 2);
        let v = orbit_verdicts(&pair, &rs, &[PI / 8.0, PI / 8.0]).unwrap();
        assert!(!v.regular);
        assert!(v.austere_lift);
        assert!(!v.austere_finite);
        assert!(v.minimal);
    }

    #[test]
    fn totally_geodesic_point_su21() {
        let (pair, rs) = su_conj_pair(2, 1);
        let v = orbit_verdicts(&pair, &rs, &[PI / 2.0]).unwrap();
        assert!(v.totally_geodesic);
        assert!(v.austere_finite);
        assert!(v.austere_lift);
        assert!(v.minimal);
        assert!(!v.regular); // the eps-pi component of the short root is perpendicular
    }

    #[test]
    fn windowed_oracle_agrees_with_offset_criterion() {
        let (pair, rs) = su_conj_pair(2, 1);
        for w in [0.3f64, PI / 8.0, 0.7, PI / 2.0, 1.1] {
            let table = classify_phases(&pair, &rs, &[w]).unwrap();
            let offset_verdict = austere_pf(&pair, &rs, &table).unwrap().austere;
            let windowed = austere_pf_windowed(&pair, &rs, &table, &[1.0], 60).unwrap();
            assert_eq!(
                windowed.symmetric, offset_verdict,
                "disagreement at w = {w}: windowed {windowed:?}"
            );
            assert!(windowed.values_checked > 50);
        }
    }

    #[test]
    fn implication_suite_su21() {
        let (pair, rs) = su_conj_pair(2, 1);
        let points = sample_points(rs.t_dim, 80, 0x5eed_0001);
        let rep = verify_implications(&pair, &rs, &points).unwrap();
        assert!(rep.ok, "{:#?}", rep.checks);
        assert!(rep.points_checked >= 75);
        assert!(!rep.lift_only_points.is_empty());
        // involutions commute here, so the lift check must have run
        let lift = rep
            .checks
            .iter()
            .find(|c| c.name.contains("lifts-when"))
            .unwrap();
        assert!(lift.applicable);
        let mult = rep
            .checks
            .iter()
            .find(|c| c.name.contains("multiplicity-drop"))
            .unwrap();
        assert!(mult.applicable);
        assert!(mult.violations.is_empty());
    }

    #[test]
    fn implication_suite_su32() {
        let (pair, rs) = su_conj_pair(3, 2);
        let points = sample_points(rs.t_dim, 60, 0x5eed_0001);
        let rep = verify_implications(&pair, &rs, &points).unwrap();
        assert!(rep.ok, "{:#?}", rep.checks);
        assert!(!rep.lift_only_points.is_empty());
    }

    #[test]
    fn counterexample_search_finds_the_diagonal_point() {
        let (pair, rs) = su_conj_pair(2, 1);
        let points = sample_points(rs.t_dim, 40, 0x5eed_0001);
        let found = search_lift_only_point(&pair, &rs, &points).unwrap();
        let v = found.expect("expected a lift-only point");
        assert!(v.austere_lift && !v.austere_finite);
    }

    #[test]
    fn sample_points_are_deterministic_and_lattice_first() {
        let a = sample_points(2, 50, 7);
        let b = sample_points(2, 50, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        assert!(a.contains(&vec![PI / 8.0, PI / 8.0]));
        let c = sample_points(2, 50, 8);
        assert_ne!(a, c);
    }
}
