//! Built-in algebra pairs with verified construction data and golden
//! records.
//!
//! Matrix-level helpers live here too: the standard anti-Hermitian basis of
//! su(n) and the block-sign involutions built from it.

use crate::error::Result;
use crate::liealg::{C64, CMatrix, LieAlgebraModel, RMatrix};

/// Coefficient matrix (model coordinates) of a linear map given at the
/// matrix level: column j holds the expansion of `f(basis_j)`.
pub fn linear_map_matrix(
    model: &LieAlgebraModel,
    f: impl Fn(&CMatrix) -> CMatrix,
) -> Result<RMatrix> {
    let d = model.dim();
    let mut out = RMatrix::zeros(d, d);
    for j in 0..d {
        let img = f(&model.basis()[j]);
        let coords = model.expand_matrix(&img)?;
        out.set_column(j, &coords.coords);
    }
    Ok(out)
}

/// Standard basis of su(n), ordered as: real antisymmetric `E_ij - E_ji`
/// for i < j (lexicographic), then `i(E_ij + E_ji)` for i < j, then the
/// diagonal `i(E_kk - E_{k+1,k+1})` for k = 1..n-1.
///
/// With metric scale 1/2 the off-diagonal generators are orthonormal and
/// the diagonal ones are unit length but mutually non-orthogonal.
pub fn su_basis(n: usize) -> Vec<CMatrix> {
    assert!(n >= 2, "su(n) needs n >= 2");
    let mut out = Vec::with_capacity(n * n - 1);
    let zero = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = zero.clone();
            m[(i, j)] = C64::new(1.0, 0.0);
            m[(j, i)] = C64::new(-1.0, 0.0);
            out.push(m);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = zero.clone();
            m[(i, j)] = C64::new(0.0, 1.0);
            m[(j, i)] = C64::new(0.0, 1.0);
            out.push(m);
        }
    }
    for k in 0..(n - 1) {
        let mut m = zero.clone();
        m[(k, k)] = C64::new(0.0, 1.0);
        m[(k + 1, k + 1)] = C64::new(0.0, -1.0);
        out.push(m);
    }
    out
}

/// Index of `E_ij - E_ji` (i < j) in [`su_basis`] order.
pub fn su_index_antisym(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    pair_rank(n, i, j)
}

/// Index of `i(E_ij + E_ji)` (i < j) in [`su_basis`] order.
pub fn su_index_sym(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    n * (n - 1) / 2 + pair_rank(n, i, j)
}

/// Index of `i(E_kk - E_{k+1,k+1})` in [`su_basis`] order.
pub fn su_index_diag(n: usize, k: usize) -> usize {
    debug_assert!(k < n - 1);
    n * (n - 1) + k
}

fn pair_rank(n: usize, i: usize, j: usize) -> usize {
    // rank of (i, j), i < j, in lexicographic order over 0..n
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Diagonal sign matrix with -1 in the first `p` entries and +1 in the
/// remaining `q` entries.
pub fn block_sign_matrix(p: usize, q: usize) -> CMatrix {
    let n = p + q;
    let mut m = CMatrix::zeros(n, n);
    for k in 0..n {
        let s = if k < p { -1.0 } else { 1.0 };
        m[(k, k)] = C64::new(s, 0.0);
    }
    m
}

// ----- entry construction ---------------------------------------------------------

use crate::error::Error;
use crate::liealg::{AlgebraElement, RVector};
use crate::sympair::{
    extract_root_system, refine_by_sigma_tau, root_sort_key, InvolutionPair, RootSystemData,
};
use crate::tol::Tolerances;
use std::collections::BTreeMap;

const PI: f64 = std::f64::consts::PI;

/// A catalog entry built into a validated involution pair with its
/// refined root system.
#[derive(Debug, Clone)]
pub struct BuiltEntry {
    pub name: String,
    pub params: BTreeMap<String, usize>,
    pub description: String,
    pub pair: InvolutionPair,
    pub root_system: RootSystemData,
}

/// One row of the catalog listing.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CatalogEntryInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

/// Available entry families.
pub fn list_catalog() -> Vec<CatalogEntryInfo> {
    vec![
        CatalogEntryInfo {
            name: "su-pq-so",
            params: "p>=q>=1",
            description: "su(p+q) with the block-sign conjugation and entrywise \
                          conjugation involutions; flat of dimension q",
        },
        CatalogEntryInfo {
            name: "su-so-diag",
            params: "n>=2",
            description: "su(n) with both involutions equal to entrywise \
                          conjugation; diagonal flat of dimension n-1",
        },
        CatalogEntryInfo {
            name: "su-ad-ad",
            params: "n>=2, p+q=n, r+s=n",
            description: "su(n) with two block-sign involutions; flat of \
                          dimension min(p, q, r, s)",
        },
    ]
}

fn get_param(params: &BTreeMap<String, usize>, key: &str) -> Result<usize> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::InvalidInput(format!("missing parameter `{key}`")))
}

/// Resolve an entry name to its canonical form. Underscores are accepted in
/// place of hyphens, and `sigma-eq-tau` is an alias for `su-so-diag`.
pub fn canonical_entry_name(name: &str) -> String {
    let norm = name.replace('_', "-");
    match norm.as_str() {
        "sigma-eq-tau" => "su-so-diag".to_string(),
        _ => norm,
    }
}

/// Build a catalog entry from its name and integer parameters.
pub fn build_entry(
    name: &str,
    params: &BTreeMap<String, usize>,
    tol: Tolerances,
) -> Result<BuiltEntry> {
    match canonical_entry_name(name).as_str() {
        "su-pq-so" => {
            let p = get_param(params, "p")?;
            let q = get_param(params, "q")?;
            build_su_pq_so(p, q, tol)
        }
        "su-so-diag" => {
            let n = get_param(params, "n")?;
            build_su_so_diag(n, tol)
        }
        "su-ad-ad" => {
            let n = get_param(params, "n")?;
            let p = get_param(params, "p")?;
            let q = get_param(params, "q")?;
            let r = get_param(params, "r")?;
            let s = get_param(params, "s")?;
            build_su_ad_ad(n, p, q, r, s, tol)
        }
        other => Err(Error::UnknownEntry(other.to_string())),
    }
}

fn finish_entry(
    name: &str,
    params: BTreeMap<String, usize>,
    description: String,
    pair: InvolutionPair,
) -> Result<BuiltEntry> {
    let rs = extract_root_system(&pair)?;
    let rs = refine_by_sigma_tau(&pair, rs)?;
    Ok(BuiltEntry {
        name: name.to_string(),
        params,
        description,
        pair,
        root_system: rs,
    })
}

fn su_model(n: usize, tol: Tolerances) -> Result<LieAlgebraModel> {
    LieAlgebraModel::new(su_basis(n), 0.5, tol)
}

fn unit_elements(dim: usize, indices: &[usize]) -> Vec<AlgebraElement> {
    indices
        .iter()
        .map(|&i| {
            let mut c = vec![0.0; dim];
            c[i] = 1.0;
            AlgebraElement::new(c)
        })
        .collect()
}

fn build_su_pq_so(p: usize, q: usize, tol: Tolerances) -> Result<BuiltEntry> {
    if q < 1 || p < q {
        return Err(Error::UnusableEntry(format!(
            "su-pq-so needs p >= q >= 1, got p={p}, q={q}"
        )));
    }
    let n = p + q;
    let model = su_model(n, tol)?;
    let ipq = block_sign_matrix(p, q);
    let sigma = linear_map_matrix(&model, |x| &ipq * x * &ipq)?;
    let tau = linear_map_matrix(&model, |x| x.map(|z| z.conj()))?;
    let t_idx: Vec<usize> = (0..q).map(|i| su_index_sym(n, i, p + i)).collect();
    let t = unit_elements(model.dim(), &t_idx);
    let pair = InvolutionPair::new(model, sigma, tau, &t)?;
    let mut params = BTreeMap::new();
    params.insert("p".to_string(), p);
    params.insert("q".to_string(), q);
    finish_entry(
        "su-pq-so",
        params,
        format!("su({n}), block signs ({p},{q}) against entrywise conjugation"),
        pair,
    )
}

fn build_su_so_diag(n: usize, tol: Tolerances) -> Result<BuiltEntry> {
    if n < 2 {
        return Err(Error::UnusableEntry(format!("su-so-diag needs n >= 2, got n={n}")));
    }
    let model = su_model(n, tol)?;
    let conj = linear_map_matrix(&model, |x| x.map(|z| z.conj()))?;
    let t_idx: Vec<usize> = (0..n - 1).map(|k| su_index_diag(n, k)).collect();
    let t = unit_elements(model.dim(), &t_idx);
    let pair = InvolutionPair::new(model, conj.clone(), conj, &t)?;
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n);
    finish_entry(
        "su-so-diag",
        params,
        format!("su({n}), both involutions entrywise conjugation"),
        pair,
    )
}

fn build_su_ad_ad(
    n: usize,
    p: usize,
    q: usize,
    r: usize,
    s: usize,
    tol: Tolerances,
) -> Result<BuiltEntry> {
    if n < 2 || p + q != n || r + s != n || p == 0 || q == 0 || r == 0 || s == 0 {
        return Err(Error::UnusableEntry(format!(
            "su-ad-ad needs p+q = r+s = n with all blocks nonempty, got \
             n={n}, p={p}, q={q}, r={r}, s={s}"
        )));
    }
    let model = su_model(n, tol)?;
    let ipq = block_sign_matrix(p, q);
    let irs = block_sign_matrix(r, s);
    let sigma = linear_map_matrix(&model, |x| &ipq * x * &ipq)?;
    let tau = linear_map_matrix(&model, |x| &irs * x * &irs)?;
    // Flat: pair the common minus-block indices with the common plus-block
    // indices; its dimension is min(p, q, r, s) for interval blocks.
    let lo = p.min(r);
    let hi = p.max(r);
    let t_dim = lo.min(n - hi);
    if t_dim == 0 {
        return Err(Error::UnusableEntry(
            "su-ad-ad blocks leave no common off-diagonal flat".into(),
        ));
    }
    let t_idx: Vec<usize> = (0..t_dim).map(|i| su_index_sym(n, i, hi + i)).collect();
    let t = unit_elements(model.dim(), &t_idx);
    let pair = InvolutionPair::new(model, sigma, tau, &t)?;
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n);
    params.insert("p".to_string(), p);
    params.insert("q".to_string(), q);
    params.insert("r".to_string(), r);
    params.insert("s".to_string(), s);
    finish_entry(
        "su-ad-ad",
        params,
        format!("su({n}), block signs ({p},{q}) against block signs ({r},{s})"),
        pair,
    )
}

// ----- expected data --------------------------------------------------------------

/// Closed-form root datum used to verify a built entry.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ExpectedRoot {
    pub alpha: Vec<f64>,
    pub m_alpha: usize,
    /// (circle angle, multiplicity), sorted by angle.
    pub eps: Vec<(f64, usize)>,
}

/// Closed-form expected positive roots for entries that have them, in the
/// canonical extraction order.
pub fn expected_roots(name: &str, params: &BTreeMap<String, usize>) -> Option<Vec<ExpectedRoot>> {
    match name {
        "su-pq-so" => {
            let p = *params.get("p")?;
            let q = *params.get("q")?;
            let mut roots: Vec<ExpectedRoot> = Vec::new();
            let coord = |entries: &[(usize, f64)]| -> Vec<f64> {
                let mut v = vec![0.0; q];
                for &(k, c) in entries {
                    v[k] = c;
                }
                v
            };
            if p > q {
                let m = p - q;
                for i in 0..q {
                    roots.push(ExpectedRoot {
                        alpha: coord(&[(i, 1.0)]),
                        m_alpha: 2 * m,
                        eps: vec![(0.0, m), (PI, m)],
                    });
                }
            }
            for i in 0..q {
                for j in (i + 1)..q {
                    roots.push(ExpectedRoot {
                        alpha: coord(&[(i, 1.0), (j, -1.0)]),
                        m_alpha: 2,
                        eps: vec![(0.0, 1), (PI, 1)],
                    });
                    roots.push(ExpectedRoot {
                        alpha: coord(&[(i, 1.0), (j, 1.0)]),
                        m_alpha: 2,
                        eps: vec![(0.0, 1), (PI, 1)],
                    });
                }
            }
            for i in 0..q {
                roots.push(ExpectedRoot {
                    alpha: coord(&[(i, 2.0)]),
                    m_alpha: 1,
                    eps: vec![(PI, 1)],
                });
            }
            sort_expected(&mut roots);
            Some(roots)
        }
        "su-ad-ad" => {
            let (n, p, q, r, s) = (
                *params.get("n")?,
                *params.get("p")?,
                *params.get("q")?,
                *params.get("r")?,
                *params.get("s")?,
            );
            if (n, p, q, r, s) == (4, 2, 2, 3, 1) {
                Some(vec![
                    ExpectedRoot {
                        alpha: vec![1.0],
                        m_alpha: 4,
                        eps: vec![(0.0, 2), (PI, 2)],
                    },
                    ExpectedRoot { alpha: vec![2.0], m_alpha: 1, eps: vec![(0.0, 1)] },
                ])
            } else {
                None
            }
        }
        _ => None,
    }
}

fn sort_expected(roots: &mut [ExpectedRoot]) {
    roots.sort_by(|a, b| {
        let ka = root_sort_key(&RVector::from_vec(a.alpha.clone()));
        let kb = root_sort_key(&RVector::from_vec(b.alpha.clone()));
        ka.partial_cmp(&kb).unwrap()
    });
}

/// Result of verifying a built entry against its closed-form data.
#[derive(Debug, Clone)]
pub struct GoldenReport {
    pub entry: String,
    pub mismatches: Vec<String>,
    pub ok: bool,
}

/// Verify a built entry against whatever closed-form data exists for it:
/// the full root table when available, plus structural facts per family.
pub fn verify_entry(entry: &BuiltEntry) -> GoldenReport {
    let mut mm: Vec<String> = Vec::new();
    let rs = &entry.root_system;

    if let Some(expected) = expected_roots(&entry.name, &entry.params) {
        if rs.positive_roots.len() != expected.len() {
            mm.push(format!(
                "{} positive roots, expected {}",
                rs.positive_roots.len(),
                expected.len()
            ));
        } else {
            for (k, (got, want)) in rs.positive_roots.iter().zip(&expected).enumerate() {
                for (a, b) in got.alpha.iter().zip(&want.alpha) {
                    if (a - b).abs() > 1e-9 {
                        mm.push(format!("root {k}: coordinates {:?} vs {:?}", vecf(&got.alpha), want.alpha));
                        break;
                    }
                }
                if got.m_alpha != want.m_alpha {
                    mm.push(format!("root {k}: multiplicity {} vs {}", got.m_alpha, want.m_alpha));
                }
                let got_eps: Vec<(f64, usize)> =
                    got.eps_components.iter().map(|c| (c.eps_angle, c.mult)).collect();
                if got_eps.len() != want.eps.len()
                    || got_eps
                        .iter()
                        .zip(&want.eps)
                        .any(|((a, m), (b, w))| (a - b).abs() > 1e-9 || m != w)
                {
                    mm.push(format!("root {k}: components {got_eps:?} vs {:?}", want.eps));
                }
            }
        }
    }

    match entry.name.as_str() {
        "su-pq-so" => {
            let q = entry.params["q"];
            if rs.t_dim != q {
                mm.push(format!("flat dimension {} vs q = {q}", rs.t_dim));
            }
            if rs.dims.dim_m0 != q {
                mm.push(format!("centralizer m part {} vs q = {q}", rs.dims.dim_m0));
            }
        }
        "su-so-diag" => {
            let n = entry.params["n"];
            let want = n * (n - 1) / 2;
            if rs.positive_roots.len() != want {
                mm.push(format!("{} positive roots, expected {want}", rs.positive_roots.len()));
            }
            for (k, root) in rs.positive_roots.iter().enumerate() {
                if root.m_alpha != 1 {
                    mm.push(format!("root {k}: multiplicity {} vs 1", root.m_alpha));
                }
                if (root.norm() - 2.0).abs() > 1e-9 {
                    mm.push(format!("root {k}: norm {} vs 2", root.norm()));
                }
                let comps: Vec<(f64, usize)> =
                    root.eps_components.iter().map(|c| (c.eps_angle, c.mult)).collect();
                if comps != vec![(0.0, 1)] {
                    mm.push(format!("root {k}: components {comps:?} vs [(0, 1)]"));
                }
            }
            if !rs.lines.iter().all(|l| l.members.len() == 1) {
                mm.push("double roots in a diagonal entry".into());
            }
            if rs.dims.dim_k0 != 0 {
                mm.push(format!("centralizer k part {} vs 0", rs.dims.dim_k0));
            }
        }
        "su-ad-ad" => {
            let (p, q, r, s) = (
                entry.params["p"],
                entry.params["q"],
                entry.params["r"],
                entry.params["s"],
            );
            let want = p.min(q).min(r).min(s);
            if rs.t_dim != want {
                mm.push(format!("flat dimension {} vs min(p,q,r,s) = {want}", rs.t_dim));
            }
        }
        _ => {}
    }

    GoldenReport { entry: entry.name.clone(), ok: mm.is_empty(), mismatches: mm }
}

fn vecf(v: &RVector) -> Vec<f64> {
    v.iter().cloned().collect()
}

/// Named points of the flat usable from the command line.
pub fn named_point(name: &str, t_dim: usize) -> Option<Vec<f64>> {
    match name {
        "origin" => Some(vec![0.0; t_dim]),
        "pi8" => Some(vec![PI / 8.0; t_dim]),
        "pi4" => Some(vec![PI / 4.0; t_dim]),
        _ => None,
    }
}
