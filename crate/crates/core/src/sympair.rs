//! Pairs of involutions on a metric Lie algebra: canonical eigenspace
//! splits, maximal abelian subspaces, restricted root systems and their
//! refinement by the spectrum of the composed involution.
//!
//! Conventions. For an involution pair (sigma, tau) the four canonical
//! eigenspaces are k/m for sigma (+1/-1) and h/p for tau (+1/-1). A
//! maximal abelian subspace t of m intersect p is fixed, and the algebra
//! decomposes into joint eigenspaces of `ad(t)`. Restricted roots are real
//! functionals on t written as coordinate rows over the orthonormalized
//! t-basis. Each complex root space splits further under sigma
//! composed-with tau into unit-circle eigenvalue components; the component
//! angle is stored in (-pi, pi]. The centralizer of t splits the same way
//! with angles folded into [0, pi].

use crate::error::{Error, Result};
use crate::liealg::{
    joint_eigen_decomposition, joint_null_space, orthonormalize_real, AlgebraElement, C64,
    CMatrix, LieAlgebraModel, RMatrix, RVector,
};
use crate::tol::Tolerances;
use serde::{Deserialize, Serialize};

/// Residuals of the three involution laws for a candidate map.
#[derive(Debug, Clone)]
pub struct InvolutionReport {
    /// `|theta^2 - id|`.
    pub involution_residual: f64,
    /// Worst defect of `theta[x,y] = [theta x, theta y]` over basis pairs.
    pub automorphism_residual: f64,
    /// `|theta^T G theta - G|` relative to `|G|`.
    pub isometry_residual: f64,
    pub passes: bool,
}

/// Check the involution laws for `theta` given in model coordinates.
pub fn validate_involution(model: &LieAlgebraModel, theta: &RMatrix) -> Result<InvolutionReport> {
    let d = model.dim();
    if theta.nrows() != d || theta.ncols() != d {
        return Err(Error::InvalidInput(format!(
            "involution matrix is {}x{}, expected {d}x{d}",
            theta.nrows(),
            theta.ncols()
        )));
    }
    let tol = model.tolerances();
    let idem = (theta * theta - RMatrix::identity(d, d)).norm() / (d as f64).sqrt();

    let gram = model.gram();
    let iso = (theta.transpose() * gram * theta - gram).norm() / (1.0 + gram.norm());

    let mut auto_res = 0.0f64;
    for i in 0..d {
        let ad_i = model.ad_matrix(&AlgebraElement { coords: unit(d, i) })?;
        let ad_theta_i =
            model.ad_matrix(&AlgebraElement { coords: theta.column(i).clone_owned() })?;
        for j in 0..d {
            if i == j {
                continue;
            }
            let lhs = theta * ad_i.column(j).clone_owned();
            let rhs = &ad_theta_i * theta.column(j).clone_owned();
            auto_res = auto_res.max((lhs - rhs).norm());
        }
    }
    let passes = idem < tol.structural * 10.0
        && iso < tol.structural * 10.0
        && auto_res < tol.structural * 100.0;
    Ok(InvolutionReport {
        involution_residual: idem,
        automorphism_residual: auto_res,
        isometry_residual: iso,
        passes,
    })
}

fn unit(d: usize, i: usize) -> RVector {
    let mut v = RVector::zeros(d);
    v[i] = 1.0;
    v
}

/// Split the frame into the +1 and -1 eigenspaces of a symmetric
/// involution given in frame coordinates. Returns orthonormal column
/// bases (plus, minus).
pub fn canonical_split(theta_o: &RMatrix, tol: &Tolerances) -> Result<(RMatrix, RMatrix)> {
    let sym = (theta_o + theta_o.transpose()) * 0.5;
    let se = sym.symmetric_eigen();
    let mut plus: Vec<RVector> = Vec::new();
    let mut minus: Vec<RVector> = Vec::new();
    for (i, &lam) in se.eigenvalues.iter().enumerate() {
        if (lam - 1.0).abs() < tol.cluster {
            plus.push(se.eigenvectors.column(i).clone_owned());
        } else if (lam + 1.0).abs() < tol.cluster {
            minus.push(se.eigenvectors.column(i).clone_owned());
        } else {
            return Err(Error::NotInvolution {
                check: "eigenvalue".into(),
                residual: (lam.abs() - 1.0).abs(),
            });
        }
    }
    Ok((columns_to_matrix(&plus, theta_o.nrows()), columns_to_matrix(&minus, theta_o.nrows())))
}

fn columns_to_matrix(cols: &[RVector], rows: usize) -> RMatrix {
    let mut m = RMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

/// Certificate produced by the maximal-abelian verification.
#[derive(Debug, Clone)]
pub struct MaximalAbelianCertificate {
    pub pairwise_bracket_residual: f64,
    /// Dimension of the centralizer of t inside m intersect p.
    pub centralizer_dim: usize,
    pub t_dim: usize,
    /// Worst distance of a centralizer vector from span(t).
    pub span_residual: f64,
    pub ok: bool,
}

/// A validated pair of involutions with the canonical splits and a
/// verified maximal abelian subspace.
#[derive(Debug, Clone)]
pub struct InvolutionPair {
    model: LieAlgebraModel,
    sigma: RMatrix,
    tau: RMatrix,
    pub(crate) sigma_o: RMatrix,
    pub(crate) tau_o: RMatrix,
    k_o: RMatrix,
    m_o: RMatrix,
    h_o: RMatrix,
    p_o: RMatrix,
    mp_o: RMatrix,
    pub(crate) t_o: RMatrix,
    pub(crate) ad_t_o: Vec<RMatrix>,
    maximality: MaximalAbelianCertificate,
}

impl InvolutionPair {
    /// Validate both involutions, build the four canonical splits,
    /// orthonormalize the supplied maximal abelian subspace and verify
    /// its maximality.
    pub fn new(
        model: LieAlgebraModel,
        sigma: RMatrix,
        tau: RMatrix,
        t_basis: &[AlgebraElement],
    ) -> Result<Self> {
        let tol_cfg = model.tolerances().clone();
        for (name, theta) in [("sigma", &sigma), ("tau", &tau)] {
            let rep = validate_involution(&model, theta)?;
            if !rep.passes {
                return Err(Error::NotInvolution {
                    check: format!(
                        "{name}: involution {:.3e}, automorphism {:.3e}, isometry {:.3e}",
                        rep.involution_residual, rep.automorphism_residual, rep.isometry_residual
                    ),
                    residual: rep
                        .involution_residual
                        .max(rep.automorphism_residual)
                        .max(rep.isometry_residual),
                });
            }
        }
        let sigma_o = model.op_to_ortho(&sigma);
        let tau_o = model.op_to_ortho(&tau);
        let (k_o, m_o) = canonical_split(&sigma_o, &tol_cfg)?;
        let (h_o, p_o) = canonical_split(&tau_o, &tol_cfg)?;

        // m intersect p as the joint kernel of the projections onto k and h.
        let mp_o = {
            let ops = [k_o.transpose(), h_o.transpose()];
            let cols = joint_null_space(&ops, 1e-9);
            columns_to_matrix(&cols, model.dim())
        };

        // t: membership, orthonormalization, maximality.
        let mut t_cols: Vec<RVector> = Vec::new();
        for (i, te) in t_basis.iter().enumerate() {
            let y = model.to_ortho(&te.coords);
            let proj = &mp_o * (mp_o.transpose() * &y);
            let res = (&y - proj).norm() / (1.0 + y.norm());
            if res > tol_cfg.structural * 10.0 {
                return Err(Error::OutsideSubspace {
                    context: format!("t basis vector {i} vs m intersect p"),
                    residual: res,
                });
            }
            t_cols.push(y);
        }
        let t_on = orthonormalize_real(&t_cols, 1e-9);
        if t_on.len() != t_cols.len() {
            return Err(Error::RankMismatch {
                context: "t basis".into(),
                expected: t_cols.len(),
                found: t_on.len(),
            });
        }
        let t_o = columns_to_matrix(&t_on, model.dim());

        let mut ad_t_o = Vec::with_capacity(t_on.len());
        for y in &t_on {
            ad_t_o.push(model.ad_matrix_ortho(y)?);
        }

        let maximality = verify_maximal_abelian_frame(&model, &t_o, &ad_t_o, &mp_o, &tol_cfg)?;
        if !maximality.ok {
            return Err(Error::NotMaximalAbelian(format!(
                "centralizer of t in m intersect p has dimension {} (t has {}), span residual {:.3e}",
                maximality.centralizer_dim, maximality.t_dim, maximality.span_residual
            )));
        }

        Ok(InvolutionPair {
            model,
            sigma,
            tau,
            sigma_o,
            tau_o,
            k_o,
            m_o,
            h_o,
            p_o,
            mp_o,
            t_o,
            ad_t_o,
            maximality,
        })
    }

    pub fn model(&self) -> &LieAlgebraModel {
        &self.model
    }

    pub fn sigma(&self) -> &RMatrix {
        &self.sigma
    }

    pub fn tau(&self) -> &RMatrix {
        &self.tau
    }

    pub fn maximality(&self) -> &MaximalAbelianCertificate {
        &self.maximality
    }

    pub fn dim_k(&self) -> usize {
        self.k_o.ncols()
    }

    pub fn dim_m(&self) -> usize {
        self.m_o.ncols()
    }

    pub fn dim_h(&self) -> usize {
        self.h_o.ncols()
    }

    pub fn dim_p(&self) -> usize {
        self.p_o.ncols()
    }

    pub fn dim_mp(&self) -> usize {
        self.mp_o.ncols()
    }

    pub fn t_dim(&self) -> usize {
        self.t_o.ncols()
    }

    /// Orthonormalized t basis, model coordinates.
    pub fn t_basis(&self) -> Vec<AlgebraElement> {
        self.cols_to_elements(&self.t_o)
    }

    pub fn k_basis(&self) -> Vec<AlgebraElement> {
        self.cols_to_elements(&self.k_o)
    }

    pub fn m_basis(&self) -> Vec<AlgebraElement> {
        self.cols_to_elements(&self.m_o)
    }

    pub fn h_basis(&self) -> Vec<AlgebraElement> {
        self.cols_to_elements(&self.h_o)
    }

    pub fn p_basis(&self) -> Vec<AlgebraElement> {
        self.cols_to_elements(&self.p_o)
    }

    pub fn mp_basis(&self) -> Vec<AlgebraElement> {
        self.cols_to_elements(&self.mp_o)
    }

    /// Whether sigma and tau commute as operators.
    pub fn involutions_commute(&self) -> bool {
        let c = (&self.sigma_o * &self.tau_o - &self.tau_o * &self.sigma_o).norm();
        c < self.model.tolerances().structural * 100.0
    }

    pub(crate) fn cols_to_elements(&self, m: &RMatrix) -> Vec<AlgebraElement> {
        (0..m.ncols())
            .map(|j| AlgebraElement { coords: self.model.from_ortho(&m.column(j).clone_owned()) })
            .collect()
    }

    /// Frame-coordinate element of t from coordinates over the t basis.
    pub(crate) fn t_point_frame(&self, w: &[f64]) -> Result<RVector> {
        if w.len() != self.t_dim() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, t has dimension {}",
                w.len(),
                self.t_dim()
            )));
        }
        let mut y = RVector::zeros(self.model.dim());
        for (k, &c) in w.iter().enumerate() {
            y += self.t_o.column(k) * c;
        }
        Ok(y)
    }
}

/// Verify that the span of `t_o` is maximal abelian inside m intersect p.
///
/// (a) pairwise brackets of the t basis vanish; (b) the joint kernel of
/// the restricted adjoint operators equals span(t) exactly.
fn verify_maximal_abelian_frame(
    model: &LieAlgebraModel,
    t_o: &RMatrix,
    ad_t_o: &[RMatrix],
    mp_o: &RMatrix,
    tol: &Tolerances,
) -> Result<MaximalAbelianCertificate> {
    let t_dim = t_o.ncols();
    let mut pairwise = 0.0f64;
    for (i, ad_i) in ad_t_o.iter().enumerate() {
        for j in (i + 1)..t_dim {
            let b = ad_i * t_o.column(j).clone_owned();
            pairwise = pairwise.max(b.norm());
        }
    }
    // ad(t_i) maps m intersect p into k intersect h; the centralizer is the
    // joint kernel of the stacked restrictions.
    let restricted: Vec<RMatrix> = ad_t_o.iter().map(|a| a * mp_o).collect();
    let kernel = if restricted.is_empty() {
        (0..mp_o.ncols())
            .map(|j| {
                let mut v = RVector::zeros(mp_o.ncols());
                v[j] = 1.0;
                v
            })
            .collect::<Vec<_>>()
    } else {
        joint_null_space(&restricted, 1e-9)
    };
    let centralizer_dim = kernel.len();
    let mut span_residual = 0.0f64;
    for v in &kernel {
        let ambient = mp_o * v;
        let proj = t_o * (t_o.transpose() * &ambient);
        span_residual = span_residual.max((ambient - proj).norm());
    }
    let ok = pairwise < tol.structural * 100.0
        && centralizer_dim == t_dim
        && span_residual < tol.cluster;
    let _ = model;
    Ok(MaximalAbelianCertificate {
        pairwise_bracket_residual: pairwise,
        centralizer_dim,
        t_dim,
        span_residual,
        ok,
    })
}

/// Public wrapper taking model-coordinate bases.
pub fn verify_maximal_abelian(
    pair: &InvolutionPair,
    t_basis: &[AlgebraElement],
) -> Result<MaximalAbelianCertificate> {
    let model = pair.model();
    let mut cols = Vec::new();
    for te in t_basis {
        cols.push(model.to_ortho(&te.coords));
    }
    let t_on = orthonormalize_real(&cols, 1e-9);
    let t_o = columns_to_matrix(&t_on, model.dim());
    let mut ad = Vec::new();
    for y in &t_on {
        ad.push(model.ad_matrix_ortho(y)?);
    }
    verify_maximal_abelian_frame(model, &t_o, &ad, &pair.mp_o, model.tolerances())
}

// ----- root system data --------------------------------------------------------

/// One unit-circle component of a root space.
#[derive(Debug, Clone)]
pub struct EpsComponent {
    /// Argument of the component eigenvalue, in (-pi, pi].
    pub eps_angle: f64,
    /// Real dimension of the m part (equals the k part).
    pub mult: usize,
    /// Orthonormal basis of the m part, frame coordinates (columns).
    pub(crate) m_basis_o: RMatrix,
    /// Image of the m basis under the root rotation map, spanning the k part.
    pub(crate) k_basis_o: RMatrix,
}

/// A positive restricted root with its multiplicity data.
#[derive(Debug, Clone)]
pub struct RootDatum {
    /// Coordinates of the root functional over the orthonormal t basis.
    pub alpha: RVector,
    /// Complex dimension of the root space.
    pub m_alpha: usize,
    /// Unit-circle refinement; empty until [`refine_by_sigma_tau`] runs.
    pub eps_components: Vec<EpsComponent>,
    /// Orthonormal complex basis of the root space, frame coordinates.
    pub(crate) complex_basis: CMatrix,
}

impl RootDatum {
    /// Metric-dual vector of the root as coordinates over the t basis
    /// (identical to `alpha` because the t basis is orthonormal).
    pub fn alpha_coords(&self) -> &RVector {
        &self.alpha
    }

    pub fn norm(&self) -> f64 {
        self.alpha.norm()
    }

    /// Root value on a t point given by coordinates.
    pub fn value_at(&self, w: &[f64]) -> f64 {
        self.alpha.iter().zip(w).map(|(a, b)| a * b).sum()
    }
}

/// One unit-circle component of the centralizer of t.
#[derive(Debug, Clone)]
pub struct G0Component {
    /// Component angle folded into [0, pi].
    pub eps_angle: f64,
    pub dim_k: usize,
    pub dim_m: usize,
    pub(crate) m_basis_o: RMatrix,
}

/// A maximal collinear family of positive roots.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootLine {
    /// Index of the shortest root on the line.
    pub base_index: usize,
    /// (root index, integer ratio to the base root), base first.
    pub members: Vec<(usize, u8)>,
}

/// Dimension bookkeeping carried along for validation and reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub dim_g: usize,
    pub dim_k: usize,
    pub dim_m: usize,
    pub dim_h: usize,
    pub dim_p: usize,
    pub dim_mp: usize,
    pub dim_m0: usize,
    pub dim_k0: usize,
}

/// Restricted root system of an involution pair.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub positive_roots: Vec<RootDatum>,
    pub g0: Vec<G0Component>,
    pub lines: Vec<RootLine>,
    /// Regular element of t certifying the choice of positive roots.
    pub witness: RVector,
    pub t_dim: usize,
    pub dims: DimensionTable,
    /// True once the unit-circle refinement has been computed.
    pub refined: bool,
    pub(crate) g0_basis_o: RMatrix,
}

impl RootSystemData {
    /// Total multiplicity of the m parts over all positive roots.
    pub fn total_root_multiplicity(&self) -> usize {
        self.positive_roots.iter().map(|r| r.m_alpha).sum()
    }

    /// Line membership of a positive root: (line index, ratio to base).
    pub fn line_of(&self, root_index: usize) -> Option<(usize, u8)> {
        for (li, line) in self.lines.iter().enumerate() {
            for &(ri, lam) in &line.members {
                if ri == root_index {
                    return Some((li, lam));
                }
            }
        }
        None
    }
}

/// Extract the restricted root system of the pair: joint eigenspaces of
/// the adjoint operators of the t basis on the complexified algebra,
/// clustered, sign-paired, and ordered by a deterministic regular witness.
pub fn extract_root_system(pair: &InvolutionPair) -> Result<RootSystemData> {
    let model = pair.model();
    let tol = model.tolerances();
    let dim = model.dim();
    let c = pair.t_dim();

    let dims_partial = |dim_m0: usize, dim_k0: usize| DimensionTable {
        dim_g: dim,
        dim_k: pair.dim_k(),
        dim_m: pair.dim_m(),
        dim_h: pair.dim_h(),
        dim_p: pair.dim_p(),
        dim_mp: pair.dim_mp(),
        dim_m0,
        dim_k0,
    };

    if c == 0 {
        // No roots; the centralizer is the whole algebra.
        let g0_basis_o = RMatrix::identity(dim, dim);
        return Ok(RootSystemData {
            positive_roots: Vec::new(),
            g0: Vec::new(),
            lines: Vec::new(),
            witness: RVector::zeros(0),
            t_dim: 0,
            dims: dims_partial(pair.dim_m(), pair.dim_k()),
            refined: false,
            g0_basis_o,
        });
    }

    let ops: Vec<CMatrix> = pair
        .ad_t_o
        .iter()
        .map(|a| {
            let mut m = CMatrix::zeros(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] = C64::new(a[(i, j)], 0.0);
                }
            }
            m
        })
        .collect();
    let spaces = joint_eigen_decomposition(&ops, tol)?;

    // Split into the zero cluster and root clusters, guarding ambiguity.
    struct RawCluster {
        a: RVector,
        basis: CMatrix,
    }
    let mut zero_dim = 0usize;
    let mut clusters: Vec<RawCluster> = Vec::new();
    for s in &spaces {
        let mut a = RVector::zeros(c);
        for (k, mu) in s.eigen_tuple.iter().enumerate() {
            if mu.re.abs() > tol.cluster * (1.0 + mu.norm()) {
                return Err(Error::Bookkeeping {
                    context: "root extraction".into(),
                    details: format!("eigenvalue {mu} is not purely imaginary"),
                });
            }
            a[k] = mu.im;
        }
        let sup = a.amax();
        if sup < tol.cluster {
            zero_dim += s.basis.ncols();
        } else if sup < tol.guard * tol.cluster {
            return Err(Error::ClusterAmbiguity {
                separation: sup,
                lo: tol.cluster,
                hi: tol.guard * tol.cluster,
            });
        } else {
            clusters.push(RawCluster { a, basis: s.basis.clone() });
        }
    }

    // Sign pairing.
    let mut used = vec![false; clusters.len()];
    for i in 0..clusters.len() {
        if used[i] {
            continue;
        }
        let mut partner = None;
        for j in 0..clusters.len() {
            if j == i || used[j] {
                continue;
            }
            if (&clusters[i].a + &clusters[j].a).amax() < tol.cluster * (1.0 + clusters[i].a.amax())
            {
                partner = Some(j);
                break;
            }
        }
        let j = partner.ok_or_else(|| {
            Error::RootPairing(format!("no negation partner for root tuple {:?}", vec_of(&clusters[i].a)))
        })?;
        if clusters[i].basis.ncols() != clusters[j].basis.ncols() {
            return Err(Error::RootPairing(format!(
                "paired roots have multiplicities {} and {}",
                clusters[i].basis.ncols(),
                clusters[j].basis.ncols()
            )));
        }
        used[i] = true;
        used[j] = true;
    }

    // Deterministic regular witness.
    let witness = find_regular_witness(c, clusters.iter().map(|cl| &cl.a), tol)?;

    // Positive side, canonical order.
    let mut positive: Vec<RootDatum> = clusters
        .iter()
        .filter(|cl| cl.a.dot(&witness) > 0.0)
        .map(|cl| RootDatum {
            alpha: cl.a.clone(),
            m_alpha: cl.basis.ncols(),
            eps_components: Vec::new(),
            complex_basis: cl.basis.clone(),
        })
        .collect();
    positive.sort_by(|x, y| root_sort_key(&x.alpha).partial_cmp(&root_sort_key(&y.alpha)).unwrap());

    if 2 * positive.len() != clusters.len() {
        return Err(Error::RootPairing(format!(
            "{} root clusters but {} positive roots",
            clusters.len(),
            positive.len()
        )));
    }

    let lines = build_lines(&positive, tol)?;

    // Real centralizer basis and bookkeeping.
    let g0_cols = joint_null_space(&pair.ad_t_o, 1e-9);
    let g0_basis_o = columns_to_matrix(&g0_cols, dim);
    if g0_basis_o.ncols() != zero_dim {
        return Err(Error::Bookkeeping {
            context: "centralizer".into(),
            details: format!(
                "real kernel dimension {} vs complex zero cluster {}",
                g0_basis_o.ncols(),
                zero_dim
            ),
        });
    }
    let total_mult: usize = positive.iter().map(|r| r.m_alpha).sum();
    if zero_dim + 2 * total_mult != dim {
        return Err(Error::Bookkeeping {
            context: "dimension partition".into(),
            details: format!("{zero_dim} + 2*{total_mult} != {dim}"),
        });
    }
    let dim_m0 = pair
        .dim_m()
        .checked_sub(total_mult)
        .ok_or_else(|| Error::Bookkeeping {
            context: "m partition".into(),
            details: "root multiplicities exceed dim m".into(),
        })?;
    let dim_k0 = pair
        .dim_k()
        .checked_sub(total_mult)
        .ok_or_else(|| Error::Bookkeeping {
            context: "k partition".into(),
            details: "root multiplicities exceed dim k".into(),
        })?;

    Ok(RootSystemData {
        positive_roots: positive,
        g0: Vec::new(),
        lines,
        witness,
        t_dim: c,
        dims: dims_partial(dim_m0, dim_k0),
        refined: false,
        g0_basis_o,
    })
}

fn vec_of(v: &RVector) -> Vec<f64> {
    v.iter().cloned().collect()
}

pub(crate) fn root_sort_key(a: &RVector) -> Vec<f64> {
    let mut k: Vec<f64> = a.iter().map(|x| (x / 1e-6).round() * 1e-6).collect();
    k.insert(0, (a.norm() / 1e-6).round() * 1e-6);
    k
}

fn find_regular_witness<'a>(
    c: usize,
    roots: impl Iterator<Item = &'a RVector> + Clone,
    tol: &Tolerances,
) -> Result<RVector> {
    use rand::Rng;
    use rand::SeedableRng;
    let mut candidates: Vec<RVector> = Vec::new();
    let mut v0 = RVector::zeros(c);
    for k in 0..c {
        v0[k] = std::f64::consts::PI.powi(-(k as i32));
    }
    candidates.push(v0.normalize());
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(tol.seed ^ 0x77aa_1234);
    for _ in 0..tol.retries {
        let v = RVector::from_fn(c, |_, _| rng.gen_range(-1.0..1.0f64));
        if v.norm() > 1e-3 {
            candidates.push(v.normalize());
        }
    }
    for cand in &candidates {
        let ok = roots
            .clone()
            .all(|a| a.dot(cand).abs() > 1e-6 * a.norm().max(1.0));
        if ok {
            return Ok(cand.clone());
        }
    }
    Err(Error::NoRegularWitness { attempts: tol.retries + 1 })
}

fn build_lines(positive: &[RootDatum], tol: &Tolerances) -> Result<Vec<RootLine>> {
    let mut assigned = vec![false; positive.len()];
    let mut lines = Vec::new();
    for i in 0..positive.len() {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        assigned[i] = true;
        let ui = &positive[i].alpha / positive[i].alpha.norm();
        for j in (i + 1)..positive.len() {
            if assigned[j] {
                continue;
            }
            let uj = &positive[j].alpha / positive[j].alpha.norm();
            let cosang = ui.dot(&uj).abs();
            if (1.0 - cosang).abs() < 1e-9 {
                members.push(j);
                assigned[j] = true;
            }
        }
        // Identify the base and the integer ratios.
        let base = *members
            .iter()
            .min_by(|&&x, &&y| positive[x].norm().partial_cmp(&positive[y].norm()).unwrap())
            .unwrap();
        let base_norm = positive[base].norm();
        let mut tagged = Vec::new();
        for &m in &members {
            let ratio = positive[m].norm() / base_norm;
            let lam = ratio.round();
            if (ratio - lam).abs() > tol.cluster * 10.0 || !(lam == 1.0 || lam == 2.0) {
                return Err(Error::CollinearRatio { ratio });
            }
            tagged.push((m, lam as u8));
        }
        tagged.sort_by_key(|&(_, lam)| lam);
        if tagged.len() > 2 {
            return Err(Error::CollinearRatio { ratio: tagged.len() as f64 });
        }
        lines.push(RootLine { base_index: base, members: tagged });
    }
    lines.sort_by_key(|l| l.base_index);
    Ok(lines)
}

/// Compute the unit-circle refinement of every root space and of the
/// centralizer, and validate the paired rotation bases.
pub fn refine_by_sigma_tau(pair: &InvolutionPair, mut rs: RootSystemData) -> Result<RootSystemData> {
    let model = pair.model();
    let tol = model.tolerances().clone();
    let dim = model.dim();
    let st = &pair.sigma_o * &pair.tau_o;
    let ts = &pair.tau_o * &pair.sigma_o;
    let rho_plus = &st + &ts;
    let rho_minus = &st - &ts;
    let p_m = (RMatrix::identity(dim, dim) - &pair.sigma_o) * 0.5;
    let p_k = (RMatrix::identity(dim, dim) + &pair.sigma_o) * 0.5;

    let st_c = {
        let mut m = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = C64::new(st[(i, j)], 0.0);
            }
        }
        m
    };

    for (ri, root) in rs.positive_roots.iter_mut().enumerate() {
        let z = &root.complex_basis;
        let mloc = z.ncols();
        let r = z.adjoint() * &st_c * z;
        let unit_defect = (r.adjoint() * &r - CMatrix::identity(mloc, mloc)).norm();
        if unit_defect > tol.structural * 100.0 {
            return Err(Error::Bookkeeping {
                context: format!("root {ri} refinement"),
                details: format!("restricted composed involution is not unitary ({unit_defect:.3e})"),
            });
        }
        // Diagonalize the unitary restriction through its commuting
        // Hermitian and skew parts.
        let groups: Vec<(C64, CMatrix)> = if mloc == 1 {
            vec![(r[(0, 0)], CMatrix::identity(1, 1))]
        } else {
            let h1 = (&r + r.adjoint()) * C64::new(0.5, 0.0);
            let h2 = (&r - r.adjoint()) * C64::new(0.0, -0.5);
            let spaces = joint_eigen_decomposition(&[h1, h2], &tol)?;
            spaces
                .iter()
                .map(|s| {
                    let eps = C64::new(s.eigen_tuple[0].re, s.eigen_tuple[1].re);
                    (eps, s.basis.clone())
                })
                .collect()
        };

        let a = root.alpha.clone();
        let alpha_norm2 = a.norm_squared();
        let mut ad_alpha = RMatrix::zeros(dim, dim);
        for (k, adk) in pair.ad_t_o.iter().enumerate() {
            ad_alpha += adk * a[k];
        }

        let mut comps: Vec<EpsComponent> = Vec::new();
        let mut total = 0usize;
        for (eps_raw, v) in groups {
            if (eps_raw.norm() - 1.0).abs() > tol.cluster * 10.0 {
                return Err(Error::Bookkeeping {
                    context: format!("root {ri} refinement"),
                    details: format!("component eigenvalue {eps_raw} is off the unit circle"),
                });
            }
            let eps = if eps_raw.im.abs() < tol.cluster {
                C64::new(eps_raw.re.signum(), 0.0)
            } else {
                eps_raw / C64::new(eps_raw.norm(), 0.0)
            };
            let eps_angle = if eps.im == 0.0 {
                if eps.re > 0.0 {
                    0.0
                } else {
                    std::f64::consts::PI
                }
            } else {
                eps.im.atan2(eps.re)
            };
            let w = z * &v; // ambient complex basis of the component
            let mult = w.ncols();

            // Real span {Re w_j, Im w_j}, projected to the m side.
            let mut cand: Vec<RVector> = Vec::new();
            for j in 0..mult {
                let col = w.column(j);
                cand.push(&p_m * col.map(|x| x.re));
                cand.push(&p_m * col.map(|x| x.im));
            }
            let y_cols = orthonormalize_real(&cand, 1e-6);
            if y_cols.len() != mult {
                return Err(Error::RankMismatch {
                    context: format!("root {ri} eps {eps_angle:.6} m part"),
                    expected: mult,
                    found: y_cols.len(),
                });
            }
            let y = columns_to_matrix(&y_cols, dim);
            let x = &ad_alpha * &y / alpha_norm2;

            // Validations of the rotation pair structure.
            let mut worst = 0.0f64;
            worst = worst.max((&pair.sigma_o * &x - &x).norm()); // x in k
            worst = worst.max((x.transpose() * &x - RMatrix::identity(mult, mult)).norm());
            for (k, adk) in pair.ad_t_o.iter().enumerate() {
                worst = worst.max((adk * &y - &x * a[k]).norm() / (1.0 + a[k].abs()));
                worst = worst.max((adk * &x + &y * a[k]).norm() / (1.0 + a[k].abs()));
            }
            worst = worst.max((&rho_plus * &y - &y * (2.0 * eps.re)).norm());
            worst = worst.max((&rho_minus * &y - &x * (2.0 * eps.im)).norm());
            if worst > tol.cluster * 10.0 {
                return Err(Error::Bookkeeping {
                    context: format!("root {ri} eps {eps_angle:.6}"),
                    details: format!("rotation pair residual {worst:.3e}"),
                });
            }
            total += mult;
            comps.push(EpsComponent { eps_angle, mult, m_basis_o: y, k_basis_o: x });
        }
        if total != root.m_alpha {
            return Err(Error::Bookkeeping {
                context: format!("root {ri}"),
                details: format!("component multiplicities {total} != m(alpha) {}", root.m_alpha),
            });
        }
        comps.sort_by(|p, q| p.eps_angle.partial_cmp(&q.eps_angle).unwrap());
        root.eps_components = comps;
    }

    // Centralizer refinement through the symmetric part of the composed
    // involution, then the sigma split of every eigenspace.
    let g = &rs.g0_basis_o;
    let d0 = g.ncols();
    let mut g0_comps: Vec<G0Component> = Vec::new();
    if d0 > 0 {
        let r0 = g.transpose() * &rho_plus * g;
        let inv_res = (&rho_plus * g - g * &r0).norm();
        if inv_res > tol.structural * 100.0 {
            return Err(Error::Bookkeeping {
                context: "centralizer refinement".into(),
                details: format!("centralizer is not invariant ({inv_res:.3e})"),
            });
        }
        let r0 = (&r0 + r0.transpose()) * 0.5;
        let se = r0.symmetric_eigen();
        let clusters = cluster_scalars(se.eigenvalues.iter().cloned(), &tol)?;
        for (value, idxs) in clusters {
            if !(-2.0 - 1e-6..=2.0 + 1e-6).contains(&value) {
                return Err(Error::Bookkeeping {
                    context: "centralizer refinement".into(),
                    details: format!("symmetric part eigenvalue {value} outside [-2, 2]"),
                });
            }
            let eps_angle = (value / 2.0).clamp(-1.0, 1.0).acos();
            let eps_angle = if eps_angle < tol.cluster { 0.0 } else { eps_angle };
            let mut amb: Vec<RVector> = Vec::new();
            for &i in &idxs {
                amb.push(g * se.eigenvectors.column(i).clone_owned());
            }
            let m_cols: Vec<RVector> =
                orthonormalize_real(&amb.iter().map(|v| &p_m * v).collect::<Vec<_>>(), 1e-6);
            let k_cols: Vec<RVector> =
                orthonormalize_real(&amb.iter().map(|v| &p_k * v).collect::<Vec<_>>(), 1e-6);
            if m_cols.len() + k_cols.len() != idxs.len() {
                return Err(Error::RankMismatch {
                    context: format!("centralizer eps angle {eps_angle:.6}"),
                    expected: idxs.len(),
                    found: m_cols.len() + k_cols.len(),
                });
            }
            g0_comps.push(G0Component {
                eps_angle,
                dim_k: k_cols.len(),
                dim_m: m_cols.len(),
                m_basis_o: columns_to_matrix(&m_cols, dim),
            });
        }
        g0_comps.sort_by(|p, q| p.eps_angle.partial_cmp(&q.eps_angle).unwrap());
    }

    // The fixed component of the centralizer's m part must be exactly t.
    let fixed_dim: usize = g0_comps
        .iter()
        .filter(|cmp| cmp.eps_angle == 0.0)
        .map(|cmp| cmp.dim_m)
        .sum();
    if fixed_dim != rs.t_dim {
        return Err(Error::Bookkeeping {
            context: "centralizer refinement".into(),
            details: format!("fixed m component has dimension {fixed_dim}, t has {}", rs.t_dim),
        });
    }
    for cmp in g0_comps.iter().filter(|cmp| cmp.eps_angle == 0.0) {
        let proj = &pair.t_o * (pair.t_o.transpose() * &cmp.m_basis_o);
        let res = (&cmp.m_basis_o - proj).norm();
        if res > tol.cluster {
            return Err(Error::Bookkeeping {
                context: "centralizer refinement".into(),
                details: format!("fixed m component is not span(t) ({res:.3e})"),
            });
        }
    }
    let m0_total: usize = g0_comps.iter().map(|cmp| cmp.dim_m).sum();
    let k0_total: usize = g0_comps.iter().map(|cmp| cmp.dim_k).sum();
    if m0_total != rs.dims.dim_m0 || k0_total != rs.dims.dim_k0 {
        return Err(Error::Bookkeeping {
            context: "centralizer refinement".into(),
            details: format!(
                "m0/k0 split {m0_total}/{k0_total} vs bookkeeping {}/{}",
                rs.dims.dim_m0, rs.dims.dim_k0
            ),
        });
    }

    rs.g0 = g0_comps;
    rs.refined = true;
    Ok(rs)
}

/// Cluster scalars with the ambiguity guard; returns (centroid, indices).
fn cluster_scalars(
    values: impl Iterator<Item = f64>,
    tol: &Tolerances,
) -> Result<Vec<(f64, Vec<usize>)>> {
    let mut clusters: Vec<(f64, Vec<usize>)> = Vec::new();
    for (i, v) in values.enumerate() {
        let mut best: Option<(usize, f64)> = None;
        for (c, (cen, _)) in clusters.iter().enumerate() {
            let d = (v - cen).abs();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((c, d));
            }
        }
        match best {
            Some((c, d)) if d < tol.cluster * 10.0 => {
                let n = clusters[c].1.len() as f64;
                clusters[c].0 = (clusters[c].0 * n + v) / (n + 1.0);
                clusters[c].1.push(i);
            }
            _ => clusters.push((v, vec![i])),
        }
    }
    for i in 0..clusters.len() {
        for j in (i + 1)..clusters.len() {
            let d = (clusters[i].0 - clusters[j].0).abs();
            if d < tol.guard * tol.cluster * 10.0 {
                return Err(Error::ClusterAmbiguity {
                    separation: d,
                    lo: tol.cluster * 10.0,
                    hi: tol.guard * tol.cluster * 10.0,
                });
            }
        }
    }
    clusters.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(clusters)
}

/// Rotation map of a root: `x -> [alpha_vec, x] / <alpha, alpha>`.
///
/// Restricted to a root space it squares to minus the identity, is an
/// isometry, and exchanges the m and k parts of every component.
pub fn psi_map(
    pair: &InvolutionPair,
    root: &RootDatum,
    x: &AlgebraElement,
) -> Result<AlgebraElement> {
    let model = pair.model();
    let tol = model.tolerances();
    let y = model.to_ortho(&x.coords);

    // Membership in the m part of the root space.
    let total: usize = root.eps_components.iter().map(|c| c.mult).sum();
    if total == 0 {
        return Err(Error::InvalidInput("root has no refined components".into()));
    }
    let mut proj = RVector::zeros(y.len());
    for comp in &root.eps_components {
        proj += &comp.m_basis_o * (comp.m_basis_o.transpose() * &y);
    }
    let res = (&y - &proj).norm() / (1.0 + y.norm());
    if res > tol.cluster * 10.0 {
        return Err(Error::OutsideSubspace { context: "root space m part".into(), residual: res });
    }

    let mut ad_alpha = RMatrix::zeros(y.len(), y.len());
    for (k, adk) in pair.ad_t_o.iter().enumerate() {
        ad_alpha += adk * root.alpha[k];
    }
    let out = ad_alpha * y / root.alpha.norm_squared();

    // The image must land in the combined k parts of the components.
    let mut kproj = RVector::zeros(out.len());
    for comp in &root.eps_components {
        kproj += &comp.k_basis_o * (comp.k_basis_o.transpose() * &out);
    }
    let kres = (&out - &kproj).norm() / (1.0 + out.norm());
    if kres > tol.cluster * 10.0 {
        return Err(Error::OutsideSubspace {
            context: "root space k part (rotation image)".into(),
            residual: kres,
        });
    }
    Ok(AlgebraElement { coords: model.from_ortho(&out) })
}

/// Worst residuals of the stored rotation-pair data, recomputed from the
/// refined components.
#[derive(Debug, Clone, Copy)]
pub struct BasisRelationReport {
    /// Worst residual over the bracket relations `[eta, y] = alpha(eta) x`,
    /// `[eta, x] = -alpha(eta) y` and the composed-involution relations on
    /// every component.
    pub relation_residual: f64,
    /// Worst orthonormality defect of a component basis or of its image
    /// under the rotation map.
    pub isometry_residual: f64,
}

/// Recompute the validation battery for every refined root component.
pub fn basis_relation_report(
    pair: &InvolutionPair,
    rs: &RootSystemData,
) -> Result<BasisRelationReport> {
    if !rs.refined {
        return Err(Error::InvalidInput("root system is not refined".into()));
    }
    let dim = pair.model().dim();
    let st = &pair.sigma_o * &pair.tau_o;
    let ts = &pair.tau_o * &pair.sigma_o;
    let rho_plus = &st + &ts;
    let rho_minus = &st - &ts;

    let mut relation = 0.0f64;
    let mut isometry = 0.0f64;
    for root in &rs.positive_roots {
        let a = &root.alpha;
        let mut ad_alpha = RMatrix::zeros(dim, dim);
        for (k, adk) in pair.ad_t_o.iter().enumerate() {
            ad_alpha += adk * a[k];
        }
        for comp in &root.eps_components {
            let y = &comp.m_basis_o;
            let x = &comp.k_basis_o;
            let eye = RMatrix::identity(comp.mult, comp.mult);
            isometry = isometry.max((y.transpose() * y - &eye).norm());
            isometry = isometry.max((x.transpose() * x - &eye).norm());
            relation = relation.max((&ad_alpha * y / a.norm_squared() - x).norm());
            for (k, adk) in pair.ad_t_o.iter().enumerate() {
                relation = relation.max((adk * y - x * a[k]).norm() / (1.0 + a[k].abs()));
                relation = relation.max((adk * x + y * a[k]).norm() / (1.0 + a[k].abs()));
            }
            let eps_re = comp.eps_angle.cos();
            let eps_im = comp.eps_angle.sin();
            relation = relation.max((&rho_plus * y - y * (2.0 * eps_re)).norm());
            relation = relation.max((&rho_minus * y - x * (2.0 * eps_im)).norm());
        }
    }
    Ok(BasisRelationReport { relation_residual: relation, isometry_residual: isometry })
}

// ----- serialization -----------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EpsRecord {
    pub angle: f64,
    pub mult: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RootRecord {
    pub alpha: Vec<f64>,
    pub m_alpha: usize,
    pub eps: Vec<EpsRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct G0Record {
    pub angle: f64,
    pub dim_k: usize,
    pub dim_m: usize,
}

/// Serializable snapshot of a root system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootSystemRecord {
    pub schema: u32,
    pub t_dim: usize,
    pub witness: Vec<f64>,
    pub positive_roots: Vec<RootRecord>,
    pub g0: Vec<G0Record>,
    pub lines: Vec<RootLine>,
    pub dims: DimensionTable,
}

impl RootSystemData {
    pub fn to_record(&self) -> RootSystemRecord {
        RootSystemRecord {
            schema: 1,
            t_dim: self.t_dim,
            witness: vec_of(&self.witness),
            positive_roots: self
                .positive_roots
                .iter()
                .map(|r| RootRecord {
                    alpha: vec_of(&r.alpha),
                    m_alpha: r.m_alpha,
                    eps: r
                        .eps_components
                        .iter()
                        .map(|c| EpsRecord { angle: c.eps_angle, mult: c.mult })
                        .collect(),
                })
                .collect(),
            g0: self
                .g0
                .iter()
                .map(|c| G0Record { angle: c.eps_angle, dim_k: c.dim_k, dim_m: c.dim_m })
                .collect(),
            lines: self.lines.clone(),
            dims: self.dims.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{block_sign_matrix, linear_map_matrix, su_basis, su_index_sym};
    use crate::liealg::AlgebraElement;

    const PI: f64 = std::f64::consts::PI;

    /// su(p+q) with the block-sign conjugation and entrywise conjugation
    /// involutions; t spanned by the symmetric generators pairing index i
    /// with index p+i.
    fn su_conj_pair(p: usize, q: usize) -> InvolutionPair {
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
        InvolutionPair::new(model, sigma, tau, &t).unwrap()
    }

    fn refined(pair: &InvolutionPair) -> RootSystemData {
        let rs = extract_root_system(pair).unwrap();
        refine_by_sigma_tau(pair, rs).unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() < tol, "{what}: {a} vs {b}");
    }

    #[test]
    fn block_sign_and_conjugation_are_involutions() {
        let model = LieAlgebraModel::new(su_basis(3), 0.5, Tolerances::default()).unwrap();
        let ipq = block_sign_matrix(2, 1);
        for theta in [
            linear_map_matrix(&model, |x| &ipq * x * &ipq).unwrap(),
            linear_map_matrix(&model, |x| x.map(|z| z.conj())).unwrap(),
        ] {
            let rep = validate_involution(&model, &theta).unwrap();
            assert!(rep.passes, "{rep:?}");
            assert!(rep.involution_residual < 1e-12);
            assert!(rep.automorphism_residual < 1e-12);
            assert!(rep.isometry_residual < 1e-12);
        }
    }

    #[test]
    fn coordinate_swap_is_not_an_automorphism() {
        // Swapping two su(2) generators preserves the metric and squares to
        // the identity but breaks the bracket.
        let model = LieAlgebraModel::new(su_basis(2), 0.5, Tolerances::default()).unwrap();
        let mut swap = RMatrix::identity(3, 3);
        swap[(0, 0)] = 0.0;
        swap[(1, 1)] = 0.0;
        swap[(0, 1)] = 1.0;
        swap[(1, 0)] = 1.0;
        let rep = validate_involution(&model, &swap).unwrap();
        assert!(rep.involution_residual < 1e-12);
        assert!(rep.isometry_residual < 1e-12);
        assert!(rep.automorphism_residual > 1.0);
        assert!(!rep.passes);
    }

    #[test]
    fn canonical_split_dimensions_su21() {
        let pair = su_conj_pair(2, 1);
        assert_eq!(pair.model().dim(), 8);
        assert_eq!(pair.dim_k(), 4); // block-diagonal subalgebra
        assert_eq!(pair.dim_m(), 4); // off-diagonal block, 2pq
        assert_eq!(pair.dim_h(), 3); // real antisymmetric part
        assert_eq!(pair.dim_p(), 5); // imaginary symmetric part
        assert_eq!(pair.dim_mp(), 2); // pq
        assert_eq!(pair.t_dim(), 1);
        assert!(pair.involutions_commute());
        let cert = pair.maximality();
        assert!(cert.ok);
        assert_eq!(cert.centralizer_dim, 1);
        assert!(cert.pairwise_bracket_residual < 1e-12);
        assert!(cert.span_residual < 1e-9);
    }

    #[test]
    fn non_maximal_t_is_rejected() {
        let n = 5;
        let model = LieAlgebraModel::new(su_basis(n), 0.5, Tolerances::default()).unwrap();
        let ipq = block_sign_matrix(3, 2);
        let sigma = linear_map_matrix(&model, |x| &ipq * x * &ipq).unwrap();
        let tau = linear_map_matrix(&model, |x| x.map(|z| z.conj())).unwrap();
        let mut c = vec![0.0; model.dim()];
        c[su_index_sym(n, 0, 3)] = 1.0;
        let err = InvolutionPair::new(model, sigma, tau, &[AlgebraElement::new(c)]).unwrap_err();
        match err {
            Error::NotMaximalAbelian(_) => {}
            other => panic!("expected NotMaximalAbelian, got {other:?}"),
        }
    }

    #[test]
    fn su21_root_system() {
        let pair = su_conj_pair(2, 1);
        let rs = refined(&pair);
        assert_eq!(rs.t_dim, 1);
        assert_eq!(rs.positive_roots.len(), 2);

        let r1 = &rs.positive_roots[0]; // length 1
        assert_close(r1.alpha[0], 1.0, 1e-9, "short root value");
        assert_eq!(r1.m_alpha, 2);
        assert_eq!(r1.eps_components.len(), 2);
        assert_close(r1.eps_components[0].eps_angle, 0.0, 1e-9, "short eps 0");
        assert_eq!(r1.eps_components[0].mult, 1);
        assert_close(r1.eps_components[1].eps_angle, PI, 1e-9, "short eps pi");
        assert_eq!(r1.eps_components[1].mult, 1);

        let r2 = &rs.positive_roots[1]; // length 2
        assert_close(r2.alpha[0], 2.0, 1e-9, "long root value");
        assert_eq!(r2.m_alpha, 1);
        assert_eq!(r2.eps_components.len(), 1);
        assert_close(r2.eps_components[0].eps_angle, PI, 1e-9, "long eps pi");

        assert_eq!(rs.lines.len(), 1);
        assert_eq!(rs.lines[0].members, vec![(0, 1), (1, 2)]);

        assert_eq!(rs.dims.dim_m0, 1);
        assert_eq!(rs.dims.dim_k0, 1);
        // centralizer: the m part is exactly t (fixed), the k part is a
        // one-dimensional diagonal piece negated by the composed involution.
        let g0m: Vec<(f64, usize)> = rs
            .g0
            .iter()
            .filter(|c| c.dim_m > 0)
            .map(|c| (c.eps_angle, c.dim_m))
            .collect();
        assert_eq!(g0m, vec![(0.0, 1)]);
        let g0k: Vec<(f64, usize)> = rs
            .g0
            .iter()
            .filter(|c| c.dim_k > 0)
            .map(|c| (c.eps_angle, c.dim_k))
            .collect();
        assert_eq!(g0k.len(), 1);
        assert_close(g0k[0].0, PI, 1e-9, "k0 angle");
        assert_eq!(g0k[0].1, 1);
    }

    #[test]
    fn su32_root_system_golden() {
        let pair = su_conj_pair(3, 2);
        let rs = refined(&pair);
        assert_eq!(rs.t_dim, 2);
        assert_eq!(
            rs.dims,
            DimensionTable {
                dim_g: 24,
                dim_k: 12,
                dim_m: 12,
                dim_h: 10,
                dim_p: 14,
                dim_mp: 6,
                dim_m0: 2,
                dim_k0: 2,
            }
        );

        // Canonical order: by norm, then lexicographic coordinates.
        type GoldenRoot = (Vec<f64>, usize, Vec<(f64, usize)>);
        let expected: Vec<GoldenRoot> = vec![
            (vec![0.0, 1.0], 2, vec![(0.0, 1), (PI, 1)]),
            (vec![1.0, 0.0], 2, vec![(0.0, 1), (PI, 1)]),
            (vec![1.0, -1.0], 2, vec![(0.0, 1), (PI, 1)]),
            (vec![1.0, 1.0], 2, vec![(0.0, 1), (PI, 1)]),
            (vec![0.0, 2.0], 1, vec![(PI, 1)]),
            (vec![2.0, 0.0], 1, vec![(PI, 1)]),
        ];
        assert_eq!(rs.positive_roots.len(), expected.len());
        for (r, (alpha, m, eps)) in rs.positive_roots.iter().zip(&expected) {
            for (k, &a) in alpha.iter().enumerate() {
                assert_close(r.alpha[k], a, 1e-9, "root coordinate");
            }
            assert_eq!(r.m_alpha, *m);
            assert_eq!(r.eps_components.len(), eps.len());
            for (c, (ang, mult)) in r.eps_components.iter().zip(eps) {
                assert_close(c.eps_angle, *ang, 1e-9, "eps angle");
                assert_eq!(c.mult, *mult);
            }
        }

        // Collinear families: the two short/long pairs plus two singletons.
        assert_eq!(rs.lines.len(), 4);
        assert_eq!(rs.lines[0].members, vec![(0, 1), (4, 2)]);
        assert_eq!(rs.lines[1].members, vec![(1, 1), (5, 2)]);
        assert_eq!(rs.lines[2].members, vec![(2, 1)]);
        assert_eq!(rs.lines[3].members, vec![(3, 1)]);

        // Centralizer: m part is t (angle 0), k part sits at angle pi.
        let m_comps: Vec<(f64, usize)> =
            rs.g0.iter().filter(|c| c.dim_m > 0).map(|c| (c.eps_angle, c.dim_m)).collect();
        assert_eq!(m_comps, vec![(0.0, 2)]);
        let k_total: usize = rs.g0.iter().map(|c| c.dim_k).sum();
        assert_eq!(k_total, 2);
        for c in rs.g0.iter().filter(|c| c.dim_k > 0) {
            assert_close(c.eps_angle, PI, 1e-9, "k0 angle");
        }
    }

    #[test]
    fn witness_separates_all_roots() {
        let pair = su_conj_pair(3, 2);
        let rs = extract_root_system(&pair).unwrap();
        assert_eq!(rs.witness.len(), 2);
        for r in &rs.positive_roots {
            let v = r.alpha.dot(&rs.witness);
            assert!(v > 1e-6, "witness value {v} for root {:?}", r.alpha);
        }
    }

    #[test]
    fn abelian_algebra_with_negation_involutions() {
        // Diagonal subalgebra of su(3): abelian, both involutions = -id,
        // so t is the whole algebra and there are no roots.
        let full = su_basis(3);
        let basis = vec![full[6].clone(), full[7].clone()];
        let model = LieAlgebraModel::new(basis, 0.5, Tolerances::default()).unwrap();
        let neg = -RMatrix::identity(2, 2);
        let t: Vec<AlgebraElement> = vec![
            AlgebraElement::new(vec![1.0, 0.0]),
            AlgebraElement::new(vec![0.0, 1.0]),
        ];
        let pair = InvolutionPair::new(model, neg.clone(), neg, &t).unwrap();
        assert_eq!(pair.dim_k(), 0);
        assert_eq!(pair.dim_m(), 2);
        assert_eq!(pair.t_dim(), 2);
        let rs = refined(&pair);
        assert!(rs.positive_roots.is_empty());
        assert!(rs.lines.is_empty());
        assert_eq!(rs.dims.dim_m0, 2);
        assert_eq!(rs.dims.dim_k0, 0);
        assert_eq!(rs.g0.len(), 1);
        assert_eq!(rs.g0[0].eps_angle, 0.0);
        assert_eq!(rs.g0[0].dim_m, 2);
        assert_eq!(rs.g0[0].dim_k, 0);
        assert!(rs.refined);
    }

    #[test]
    fn rotation_map_squares_to_minus_identity() {
        let pair = su_conj_pair(2, 1);
        let rs = refined(&pair);
        let model = pair.model();
        let root = &rs.positive_roots[0];

        // alpha_vec in model coordinates.
        let t_el = &pair.t_basis()[0];
        let alpha_vec = AlgebraElement { coords: &t_el.coords * root.alpha[0] };

        for comp in &root.eps_components {
            let y = AlgebraElement {
                coords: model.from_ortho(&comp.m_basis_o.column(0).clone_owned()),
            };
            let x = psi_map(&pair, root, &y).unwrap();
            // x lies in k: fixed by sigma.
            let sx = pair.sigma() * &x.coords;
            assert!((&sx - &x.coords).norm() < 1e-9);
            // unit length, orthogonal to y
            assert_close(model.norm(&x).unwrap(), 1.0, 1e-9, "psi isometry");
            assert!(model.inner(&x, &y).unwrap().abs() < 1e-9);
            // [alpha_vec, x] = -<alpha, alpha> y
            let back = model.bracket(&alpha_vec, &x).unwrap();
            let expect = &y.coords * (-root.alpha.norm_squared());
            assert!((&back.coords - expect).norm() < 1e-9);
        }

        // Vectors outside the root space are rejected.
        let off = psi_map(&pair, root, t_el);
        assert!(matches!(off, Err(Error::OutsideSubspace { .. })));
    }

    #[test]
    fn record_serialization_roundtrip() {
        let pair = su_conj_pair(2, 1);
        let rs = refined(&pair);
        let rec = rs.to_record();
        let json = serde_json::to_string_pretty(&rec).unwrap();
        let back: RootSystemRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.schema, 1);
        assert_eq!(back.t_dim, rec.t_dim);
        assert_eq!(back.positive_roots, rec.positive_roots);
        assert_eq!(back.g0, rec.g0);
        assert_eq!(back.dims, rec.dims);
    }
}
