//! Compact matrix Lie algebra models: bases, brackets, invariant metrics,
//! adjoint operators and joint eigendecompositions of commuting normal
//! operators.
//!
//! A model holds a real basis of anti-Hermitian matrices together with the
//! trace-form metric `<X, Y> = -scale * Re tr(XY)`. All spectral work runs
//! in an orthonormalized coordinate frame derived from the Gram matrix via
//! Cholesky, so callers may supply bases with a non-identity Gram.

use crate::error::{Error, Result};
use crate::tol::Tolerances;
use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;
pub type CVector = DVector<C64>;

/// An algebra element as real coordinates over the model basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub coords: RVector,
}

impl AlgebraElement {
    pub fn new(coords: Vec<f64>) -> Self {
        AlgebraElement { coords: RVector::from_vec(coords) }
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraElement { coords: RVector::zeros(dim) }
    }
}

/// A linear operator expressed on an explicit subspace basis.
#[derive(Debug, Clone)]
pub struct LinearOperatorOnSubspace {
    /// Basis of the invariant subspace, in model coordinates.
    pub subspace: Vec<AlgebraElement>,
    /// Matrix of the operator with respect to `subspace`.
    pub matrix: RMatrix,
}

/// One joint eigenspace of a family of commuting normal operators.
#[derive(Debug, Clone)]
pub struct JointEigenSpace {
    /// Eigenvalue of each input operator on this space, in input order.
    pub eigen_tuple: Vec<C64>,
    /// Orthonormal complex basis, one column per dimension.
    pub basis: CMatrix,
}

/// Compact matrix Lie algebra with an ad-invariant trace-form metric.
#[derive(Debug, Clone)]
pub struct LieAlgebraModel {
    dim: usize,
    matrix_size: usize,
    basis: Vec<CMatrix>,
    metric_scale: f64,
    gram: RMatrix,
    /// Lower Cholesky factor `L` with `gram = L L^T`.
    chol_l: RMatrix,
    chol_l_inv: RMatrix,
    /// Adjoint matrix of each basis generator, model coordinates.
    ad_gens: Vec<RMatrix>,
    tol: Tolerances,
}

impl LieAlgebraModel {
    /// Build and validate a model from anti-Hermitian generator matrices.
    ///
    /// Checks: shapes, Gram positive definiteness, closure of the bracket
    /// in the span, and ad-invariance of the metric.
    pub fn new(basis: Vec<CMatrix>, metric_scale: f64, tol: Tolerances) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidInput("empty basis".into()));
        }
        if metric_scale.is_nan() || metric_scale <= 0.0 {
            return Err(Error::InvalidInput("metric scale must be positive".into()));
        }
        let n = basis[0].nrows();
        for (i, b) in basis.iter().enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::InvalidInput(format!(
                    "basis matrix {i} is {}x{}, expected {n}x{n}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        let dim = basis.len();
        let mut gram = RMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let v = trace_form(&basis[i], &basis[j], metric_scale);
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        let chol = nalgebra::Cholesky::new(gram.clone()).ok_or(Error::GramNotPositiveDefinite)?;
        let chol_l = chol.l();
        let chol_l_inv = chol_l
            .clone()
            .try_inverse()
            .ok_or(Error::GramNotPositiveDefinite)?;

        let mut model = LieAlgebraModel {
            dim,
            matrix_size: n,
            basis,
            metric_scale,
            gram,
            chol_l,
            chol_l_inv,
            ad_gens: Vec::new(),
            tol,
        };

        // Closure: expand every pairwise commutator in the basis and record
        // the structure coefficients as adjoint generator columns.
        let mut ad_gens = vec![RMatrix::zeros(dim, dim); dim];
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                if i < j {
                    let m = commutator(&model.basis[i], &model.basis[j]);
                    let coords = model.expand_matrix(&m).map_err(|e| match e {
                        Error::OutsideSubspace { residual, .. } => {
                            Error::BracketNotClosed { i, j, residual }
                        }
                        other => other,
                    })?;
                    ad_gens[i].set_column(j, &coords.coords);
                } else {
                    let col = -&ad_gens[j].column(i).clone_owned();
                    ad_gens[i].set_column(j, &col);
                }
            }
        }
        model.ad_gens = ad_gens;

        // Ad-invariance of the metric: G * ad(b_i) must be skew.
        for (i, ad) in model.ad_gens.iter().enumerate() {
            let s = &model.gram * ad;
            let defect = (&s + s.transpose()).norm();
            let scale = 1.0 + s.norm();
            if defect > model.tol.structural * scale {
                return Err(Error::MetricNotInvariant { index: i, residual: defect / scale });
            }
        }
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    pub fn metric_scale(&self) -> f64 {
        self.metric_scale
    }

    pub fn gram(&self) -> &RMatrix {
        &self.gram
    }

    /// Worst normalized residuals of the structural facts enforced at
    /// construction, recomputed from scratch: bracket closure in the span
    /// and ad-invariance of the metric.
    pub fn structure_residuals(&self) -> (f64, f64) {
        let mut closure = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let m = commutator(&self.basis[i], &self.basis[j]);
                let mut rhs = RVector::zeros(self.dim);
                for (k, b) in self.basis.iter().enumerate() {
                    rhs[k] = trace_form(b, &m, self.metric_scale);
                }
                let coords = self.solve_gram(&rhs);
                let mut recon = CMatrix::zeros(self.matrix_size, self.matrix_size);
                for (k, b) in self.basis.iter().enumerate() {
                    recon += b * C64::new(coords[k], 0.0);
                }
                closure = closure.max((&m - recon).norm() / (1.0 + m.norm()));
            }
        }
        let mut invariance = 0.0f64;
        for ad in &self.ad_gens {
            let s = &self.gram * ad;
            let defect = (&s + s.transpose()).norm() / (1.0 + s.norm());
            invariance = invariance.max(defect);
        }
        (closure, invariance)
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    /// Realize an element as an explicit matrix.
    pub fn realize(&self, x: &AlgebraElement) -> Result<CMatrix> {
        self.check_len(x)?;
        let mut m = CMatrix::zeros(self.matrix_size, self.matrix_size);
        for (i, b) in self.basis.iter().enumerate() {
            m += b * C64::new(x.coords[i], 0.0);
        }
        Ok(m)
    }

    /// Expand a matrix in the basis; errors if it leaves the span.
    pub fn expand_matrix(&self, m: &CMatrix) -> Result<AlgebraElement> {
        let mut rhs = RVector::zeros(self.dim);
        for (i, b) in self.basis.iter().enumerate() {
            rhs[i] = trace_form(b, m, self.metric_scale);
        }
        let coords = self.solve_gram(&rhs);
        let mut recon = CMatrix::zeros(self.matrix_size, self.matrix_size);
        for (i, b) in self.basis.iter().enumerate() {
            recon += b * C64::new(coords[i], 0.0);
        }
        let residual = (m - recon).norm() / (1.0 + m.norm());
        if residual > self.tol.structural {
            return Err(Error::OutsideSubspace { context: "basis span".into(), residual });
        }
        Ok(AlgebraElement { coords })
    }

    /// Bracket `[x, y]` computed as a matrix commutator and re-expanded.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let mx = self.realize(x)?;
        let my = self.realize(y)?;
        self.expand_matrix(&commutator(&mx, &my))
    }

    /// Invariant inner product of two elements.
    pub fn inner(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok((x.coords.transpose() * &self.gram * &y.coords)[(0, 0)])
    }

    pub fn norm(&self, x: &AlgebraElement) -> Result<f64> {
        Ok(self.inner(x, x)?.max(0.0).sqrt())
    }

    /// Adjoint matrix of `x` acting on the whole algebra, model coordinates.
    pub fn ad_matrix(&self, x: &AlgebraElement) -> Result<RMatrix> {
        self.check_len(x)?;
        let mut a = RMatrix::zeros(self.dim, self.dim);
        for (i, g) in self.ad_gens.iter().enumerate() {
            if x.coords[i] != 0.0 {
                a += g * x.coords[i];
            }
        }
        Ok(a)
    }

    /// Restrict `ad(x)` to a subspace; errors if the subspace is not
    /// invariant within tolerance.
    pub fn ad_operator(
        &self,
        x: &AlgebraElement,
        subspace: &[AlgebraElement],
    ) -> Result<LinearOperatorOnSubspace> {
        let k = subspace.len();
        if k == 0 {
            return Ok(LinearOperatorOnSubspace { subspace: Vec::new(), matrix: RMatrix::zeros(0, 0) });
        }
        let a = self.ad_matrix(x)?;
        let mut s = RMatrix::zeros(self.dim, k);
        for (j, v) in subspace.iter().enumerate() {
            self.check_len(v)?;
            s.set_column(j, &v.coords);
        }
        let sub_gram = s.transpose() * &self.gram * &s;
        let chol = nalgebra::Cholesky::new(sub_gram).ok_or_else(|| {
            Error::InvalidInput("subspace basis is linearly dependent".into())
        })?;
        let images = &a * &s;
        let rhs = s.transpose() * &self.gram * &images;
        let mut matrix = RMatrix::zeros(k, k);
        let mut worst = 0.0f64;
        for j in 0..k {
            let y = chol.solve(&rhs.column(j).clone_owned());
            let recon = &s * &y;
            let img = images.column(j).clone_owned();
            let diff = &img - recon;
            let res_g = (diff.transpose() * &self.gram * &diff)[(0, 0)].max(0.0).sqrt();
            let scale = 1.0 + (img.transpose() * &self.gram * &img)[(0, 0)].max(0.0).sqrt();
            worst = worst.max(res_g / scale);
            matrix.set_column(j, &y);
        }
        if worst > self.tol.structural * 10.0 {
            return Err(Error::NotInvariantSubspace { residual: worst });
        }
        Ok(LinearOperatorOnSubspace { subspace: subspace.to_vec(), matrix })
    }

    fn solve_gram(&self, rhs: &RVector) -> RVector {
        // gram = L L^T, solve via the cached factors.
        let y = &self.chol_l_inv * rhs;
        self.chol_l_inv.transpose() * y
    }

    fn check_len(&self, x: &AlgebraElement) -> Result<()> {
        if x.coords.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "coordinate length {} does not match dimension {}",
                x.coords.len(),
                self.dim
            )));
        }
        Ok(())
    }

    // ----- orthonormal frame -------------------------------------------------

    /// Model coordinates -> orthonormal-frame coordinates.
    pub fn to_ortho(&self, x: &RVector) -> RVector {
        self.chol_l.transpose() * x
    }

    /// Orthonormal-frame coordinates -> model coordinates.
    pub fn from_ortho(&self, y: &RVector) -> RVector {
        self.chol_l_inv.transpose() * y
    }

    /// Conjugate an operator given in model coordinates into the frame.
    pub fn op_to_ortho(&self, a: &RMatrix) -> RMatrix {
        self.chol_l.transpose() * a * self.chol_l_inv.transpose()
    }

    /// Adjoint matrix of an element given in frame coordinates, acting on
    /// frame coordinates.
    pub fn ad_matrix_ortho(&self, y: &RVector) -> Result<RMatrix> {
        let x = AlgebraElement { coords: self.from_ortho(y) };
        Ok(self.op_to_ortho(&self.ad_matrix(&x)?))
    }
}

/// `-scale * Re tr(a b)`.
pub(crate) fn trace_form(a: &CMatrix, b: &CMatrix, scale: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            let x = a[(i, k)];
            let y = b[(k, i)];
            acc += x.re * y.re - x.im * y.im;
        }
    }
    -scale * acc
}

pub(crate) fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

// ----- subspace utilities ----------------------------------------------------

/// Modified Gram-Schmidt on real columns; drops vectors whose remainder is
/// below `drop_tol` relative to the original norm.
pub fn orthonormalize_real(cols: &[RVector], drop_tol: f64) -> Vec<RVector> {
    let mut out: Vec<RVector> = Vec::new();
    for c in cols {
        let orig = c.norm();
        if orig == 0.0 {
            continue;
        }
        let mut v = c.clone();
        for _ in 0..2 {
            for u in &out {
                let p = u.dot(&v);
                v -= u * p;
            }
        }
        if v.norm() > drop_tol * (1.0 + orig) {
            let n = v.norm();
            out.push(v / n);
        }
    }
    out
}

/// Modified Gram-Schmidt on complex columns.
pub fn orthonormalize_complex(cols: &CMatrix, drop_tol: f64) -> CMatrix {
    let n = cols.nrows();
    let mut out: Vec<CVector> = Vec::new();
    for j in 0..cols.ncols() {
        let c = cols.column(j).clone_owned();
        let orig = c.norm();
        if orig == 0.0 {
            continue;
        }
        let mut v = c;
        for _ in 0..2 {
            for u in &out {
                let p = u.dotc(&v);
                v -= u * p;
            }
        }
        if v.norm() > drop_tol * (1.0 + orig) {
            let nn = v.norm();
            out.push(v / C64::new(nn, 0.0));
        }
    }
    let mut m = CMatrix::zeros(n, out.len());
    for (j, v) in out.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Orthonormal basis of the null space of `m`, via the symmetric
/// eigendecomposition of `m^T m`.
pub fn null_space(m: &RMatrix, rank_tol: f64) -> Vec<RVector> {
    let g = m.transpose() * m;
    let se = g.symmetric_eigen();
    let smax = se.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    // Squared singular values of an exact kernel come back at eigensolver
    // noise (~ dim * machine eps relative to the largest eigenvalue), so
    // the squared cut cannot be tighter than ~1e-13 relative.
    let thresh = (1.0 + smax) * (rank_tol * rank_tol).max(1e-13);
    let mut out = Vec::new();
    for (i, &lam) in se.eigenvalues.iter().enumerate() {
        if lam < thresh {
            out.push(se.eigenvectors.column(i).clone_owned());
        }
    }
    orthonormalize_real(&out, 1e-12)
}

/// Orthonormal basis of the joint null space of several operators.
pub fn joint_null_space(ops: &[RMatrix], rank_tol: f64) -> Vec<RVector> {
    if ops.is_empty() {
        return Vec::new();
    }
    let cols = ops[0].ncols();
    let rows: usize = ops.iter().map(|o| o.nrows()).sum();
    let mut stacked = RMatrix::zeros(rows, cols);
    let mut r = 0;
    for o in ops {
        stacked.view_mut((r, 0), (o.nrows(), cols)).copy_from(o);
        r += o.nrows();
    }
    null_space(&stacked, rank_tol)
}

// ----- joint eigendecomposition ----------------------------------------------

/// Simultaneously diagonalize a family of commuting normal complex
/// operators.
///
/// A generic random real-linear combination of the Hermitian and
/// skew-Hermitian parts is diagonalized; each operator's eigenvalue is then
/// read off every eigenvector and validated against its residual, with a
/// bounded number of fresh draws on failure. Eigenvalue tuples are clustered
/// and the clusters' mutual separation is checked against the ambiguity
/// band.
pub fn joint_eigen_decomposition(ops: &[CMatrix], tol: &Tolerances) -> Result<Vec<JointEigenSpace>> {
    if ops.is_empty() {
        return Err(Error::InvalidInput("no operators given".into()));
    }
    let n = ops[0].nrows();
    for (idx, a) in ops.iter().enumerate() {
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::InvalidInput(format!(
                "operator {idx} is {}x{}, expected {n}x{n}",
                a.nrows(),
                a.ncols()
            )));
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let norms: Vec<f64> = ops.iter().map(|a| a.norm()).collect();
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            let c = (&ops[i] * &ops[j] - &ops[j] * &ops[i]).norm();
            let scale = 1.0 + norms[i] * norms[j];
            if c > tol.structural * scale {
                return Err(Error::NonCommuting { i, j, residual: c / scale });
            }
        }
    }
    for (i, a) in ops.iter().enumerate() {
        let c = (a * a.adjoint() - a.adjoint() * a).norm();
        let scale = 1.0 + norms[i] * norms[i];
        if c > tol.structural * scale {
            return Err(Error::NotNormal { index: i, residual: c / scale });
        }
    }

    let herm: Vec<CMatrix> = ops.iter().map(|a| (a + a.adjoint()) * C64::new(0.5, 0.0)).collect();
    let skew: Vec<CMatrix> = ops
        .iter()
        .map(|a| (a - a.adjoint()) * C64::new(0.0, -0.5))
        .collect();

    let mut last_reason = String::new();
    for attempt in 0..tol.retries {
        let mut rng =
            ChaCha20Rng::seed_from_u64(tol.seed.wrapping_add(0x9e37_79b9 * attempt as u64));
        let mut h = CMatrix::zeros(n, n);
        for k in 0..ops.len() {
            let t: f64 = rng.gen_range(-1.0..1.0);
            let s: f64 = rng.gen_range(-1.0..1.0);
            h += &herm[k] * C64::new(t, 0.0);
            h += &skew[k] * C64::new(s, 0.0);
        }
        // Symmetrize against roundoff before the Hermitian solve.
        let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
        let se = h.symmetric_eigen();

        let mut tuples: Vec<Vec<C64>> = Vec::with_capacity(n);
        let mut ok = true;
        'vecs: for j in 0..n {
            let v = se.eigenvectors.column(j).clone_owned();
            let mut tuple = Vec::with_capacity(ops.len());
            for (k, a) in ops.iter().enumerate() {
                let av = a * &v;
                let mu = v.dotc(&av);
                let res = (&av - &v * mu).norm();
                if res > tol.cluster * (1.0 + norms[k]) {
                    last_reason = format!(
                        "eigenvector {j} residual {res:.3e} on operator {k} (attempt {attempt})"
                    );
                    ok = false;
                    break 'vecs;
                }
                tuple.push(mu);
            }
            tuples.push(tuple);
        }
        if !ok {
            continue;
        }

        return cluster_joint(tuples, &se.eigenvectors, &norms, tol);
    }
    Err(Error::EigenRetriesExhausted { attempts: tol.retries, reason: last_reason })
}

fn cluster_joint(
    tuples: Vec<Vec<C64>>,
    vectors: &CMatrix,
    norms: &[f64],
    tol: &Tolerances,
) -> Result<Vec<JointEigenSpace>> {
    let n = tuples.len();
    let dist = |a: &[C64], b: &[C64]| -> f64 {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(k, (x, y))| (x - y).norm() / (1.0 + norms[k]))
            .fold(0.0, f64::max)
    };
    // Greedy clustering on the relative tuple distance.
    let mut centroids: Vec<Vec<C64>> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (j, t) in tuples.iter().enumerate() {
        let mut best: Option<(usize, f64)> = None;
        for (c, cen) in centroids.iter().enumerate() {
            let d = dist(t, cen);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((c, d));
            }
        }
        match best {
            Some((c, d)) if d < tol.cluster => {
                let m = members[c].len() as f64;
                for (k, cen) in centroids[c].iter_mut().enumerate() {
                    *cen = (*cen * C64::new(m, 0.0) + t[k]) / C64::new(m + 1.0, 0.0);
                }
                members[c].push(j);
            }
            _ => {
                centroids.push(t.clone());
                members.push(vec![j]);
            }
        }
    }
    // Ambiguity band between distinct clusters.
    for i in 0..centroids.len() {
        for j in (i + 1)..centroids.len() {
            let d = dist(&centroids[i], &centroids[j]);
            if d < tol.guard * tol.cluster {
                return Err(Error::ClusterAmbiguity {
                    separation: d,
                    lo: tol.cluster,
                    hi: tol.guard * tol.cluster,
                });
            }
        }
    }
    let mut spaces: Vec<JointEigenSpace> = Vec::with_capacity(centroids.len());
    let mut total = 0usize;
    for (c, idxs) in members.iter().enumerate() {
        let mut cols = CMatrix::zeros(vectors.nrows(), idxs.len());
        for (jj, &j) in idxs.iter().enumerate() {
            cols.set_column(jj, &vectors.column(j));
        }
        let basis = orthonormalize_complex(&cols, 1e-9);
        if basis.ncols() != idxs.len() {
            return Err(Error::RankMismatch {
                context: format!("joint eigenspace {c}"),
                expected: idxs.len(),
                found: basis.ncols(),
            });
        }
        total += basis.ncols();
        spaces.push(JointEigenSpace { eigen_tuple: centroids[c].clone(), basis });
    }
    if total != n {
        return Err(Error::RankMismatch {
            context: "joint eigenspace direct sum".into(),
            expected: n,
            found: total,
        });
    }
    spaces.sort_by(|a, b| tuple_key(&a.eigen_tuple).partial_cmp(&tuple_key(&b.eigen_tuple)).unwrap());
    Ok(spaces)
}

fn tuple_key(t: &[C64]) -> Vec<f64> {
    let mut k = Vec::with_capacity(2 * t.len());
    for z in t {
        k.push((z.re / 1e-9).round() * 1e-9);
        k.push((z.im / 1e-9).round() * 1e-9);
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{su_basis, su_index_sym};
    use proptest::prelude::*;

    fn su2_model() -> LieAlgebraModel {
        // basis {i sx, i sy, i sz} from the Pauli matrices, metric scale 1/2
        let i = C64::new(0.0, 1.0);
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let isx = CMatrix::from_row_slice(2, 2, &[o, i, i, o]);
        let isy = CMatrix::from_row_slice(2, 2, &[o, one, -one, o]);
        let isz = CMatrix::from_row_slice(2, 2, &[i, o, o, -i]);
        LieAlgebraModel::new(vec![isx, isy, isz], 0.5, Tolerances::default()).unwrap()
    }

    fn su3_model() -> LieAlgebraModel {
        LieAlgebraModel::new(su_basis(3), 0.5, Tolerances::default()).unwrap()
    }

    #[test]
    fn pauli_bracket_matches_matrix_commutator() {
        let m = su2_model();
        let x = AlgebraElement::new(vec![0.5, 0.0, 0.0]);
        let y = AlgebraElement::new(vec![0.0, 0.5, 0.0]);
        let b = m.bracket(&x, &y).unwrap();
        // oracle: [i sx / 2, i sy / 2] = -i sz / 2, computed by hand from
        // the 2x2 commutator
        let expect = [0.0, 0.0, -0.5];
        for (k, e) in expect.iter().enumerate() {
            assert!((b.coords[k] - e).abs() < 1e-12, "coord {k}: {}", b.coords[k]);
        }
        // antisymmetry
        let b2 = m.bracket(&y, &x).unwrap();
        assert!((&b.coords + &b2.coords).norm() < 1e-12);
    }

    #[test]
    fn pauli_norms_are_one() {
        let m = su2_model();
        for k in 0..3 {
            let mut c = vec![0.0; 3];
            c[k] = 1.0;
            let e = AlgebraElement::new(c);
            assert!((m.inner(&e, &e).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_closed_basis() {
        // {i sx, i sy} alone does not close: [i sx, i sy] = -2 i sz
        let full = su2_model();
        let basis = vec![full.basis()[0].clone(), full.basis()[1].clone()];
        match LieAlgebraModel::new(basis, 0.5, Tolerances::default()) {
            Err(Error::BracketNotClosed { .. }) => {}
            other => panic!("expected closure failure, got {other:?}"),
        }
    }

    #[test]
    fn rejects_dependent_basis() {
        let full = su2_model();
        let basis = vec![
            full.basis()[0].clone(),
            full.basis()[1].clone(),
            full.basis()[2].clone(),
            full.basis()[2].clone() * C64::new(2.0, 0.0),
        ];
        match LieAlgebraModel::new(basis, 0.5, Tolerances::default()) {
            Err(Error::GramNotPositiveDefinite) => {}
            other => panic!("expected Gram failure, got {other:?}"),
        }
    }

    #[test]
    fn su3_diagonal_gram_overlaps() {
        // adjacent diagonal generators overlap at -1/2 under scale 1/2
        let m = su3_model();
        let d1 = AlgebraElement::new({
            let mut c = vec![0.0; 8];
            c[6] = 1.0;
            c
        });
        let d2 = AlgebraElement::new({
            let mut c = vec![0.0; 8];
            c[7] = 1.0;
            c
        });
        assert!((m.inner(&d1, &d1).unwrap() - 1.0).abs() < 1e-12);
        assert!((m.inner(&d1, &d2).unwrap() + 0.5).abs() < 1e-12);
        // frame round trip
        let y = m.to_ortho(&d2.coords);
        let back = m.from_ortho(&y);
        assert!((back - &d2.coords).norm() < 1e-12);
    }

    #[test]
    fn ad_operator_requires_invariant_subspace() {
        let m = su2_model();
        let z = AlgebraElement::new(vec![1.0, 0.0, 0.0]);
        // span{i sy} is not ad(i sx)-invariant
        let sub = vec![AlgebraElement::new(vec![0.0, 1.0, 0.0])];
        match m.ad_operator(&z, &sub) {
            Err(Error::NotInvariantSubspace { .. }) => {}
            other => panic!("expected invariance failure, got {other:?}"),
        }
        // the whole algebra is invariant; ad(i sx) rotates (i sy, i sz)
        let all = vec![
            AlgebraElement::new(vec![1.0, 0.0, 0.0]),
            AlgebraElement::new(vec![0.0, 1.0, 0.0]),
            AlgebraElement::new(vec![0.0, 0.0, 1.0]),
        ];
        let op = m.ad_operator(&z, &all).unwrap();
        let a = &op.matrix;
        assert!((a[(2, 1)] + 2.0).abs() < 1e-12 && (a[(1, 2)] - 2.0).abs() < 1e-12, "{a}");
    }

    #[test]
    fn zero_element_has_zero_ad() {
        let m = su2_model();
        let z = AlgebraElement::zero(3);
        assert!(m.ad_matrix(&z).unwrap().norm() < 1e-15);
    }

    /// Frozen oracle: the adjoint of the first sign-pair generator of the
    /// su(3) split (p, q) = (2, 1) has eigenvalues {0 x2, +-i x2, +-2i x1},
    /// computed independently by a dense Hermitian eigensolve of the
    /// explicitly assembled 8x8 adjoint matrix.
    #[test]
    fn su3_adjoint_spectrum_oracle() {
        let m = su3_model();
        let mut c = vec![0.0; 8];
        c[su_index_sym(3, 0, 2)] = 1.0;
        let e1 = AlgebraElement::new(c);
        assert!((m.inner(&e1, &e1).unwrap() - 1.0).abs() < 1e-12);

        // oracle path: assemble ad(e1) column by column from raw matrix
        // commutators in the orthonormal frame, then eigensolve i*ad
        let a = m.op_to_ortho(&m.ad_matrix(&e1).unwrap());
        let n = m.dim();
        let mut h = CMatrix::zeros(n, n);
        for r in 0..n {
            for cc in 0..n {
                h[(r, cc)] = C64::new(0.0, a[(r, cc)]);
            }
        }
        let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().cloned().collect();
        ev.sort_by(f64::total_cmp);
        // i*ad(e1) spectrum: {-2, -1, -1, 0, 0, 1, 1, 2}
        let expect = [-2.0, -1.0, -1.0, 0.0, 0.0, 1.0, 1.0, 2.0];
        for (x, e) in ev.iter().zip(expect.iter()) {
            assert!((x - e).abs() < 1e-9, "{ev:?}");
        }

        // engine path agrees
        let spaces = joint_eigen_decomposition(
            &[to_complex(&a)],
            &Tolerances::default(),
        )
        .unwrap();
        let mut got: Vec<(f64, usize)> = spaces
            .iter()
            .map(|s| (s.eigen_tuple[0].im, s.basis.ncols()))
            .collect();
        got.sort_by(|x, y| x.0.total_cmp(&y.0));
        let want = [(-2.0, 1), (-1.0, 2), (0.0, 2), (1.0, 2), (2.0, 1)];
        assert_eq!(got.len(), want.len(), "{got:?}");
        for ((v, mult), (wv, wm)) in got.iter().zip(want.iter()) {
            assert!((v - wv).abs() < 1e-9 && mult == wm, "{got:?}");
        }
    }

    #[test]
    fn joint_eigen_on_diagonal_pair() {
        let d1 = CMatrix::from_diagonal(&CVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(3.0, 0.0),
        ]));
        let d2 = CMatrix::from_diagonal(&CVector::from_vec(vec![
            C64::new(0.0, 2.0),
            C64::new(0.0, -2.0),
            C64::new(0.0, 0.0),
        ]));
        let spaces = joint_eigen_decomposition(&[d1, d2], &Tolerances::default()).unwrap();
        assert_eq!(spaces.len(), 3);
        let dims: usize = spaces.iter().map(|s| s.basis.ncols()).sum();
        assert_eq!(dims, 3);
    }

    #[test]
    fn joint_eigen_rejects_non_commuting() {
        let m = su2_model();
        let ax = m.ad_matrix(&AlgebraElement::new(vec![1.0, 0.0, 0.0])).unwrap();
        let ay = m.ad_matrix(&AlgebraElement::new(vec![0.0, 1.0, 0.0])).unwrap();
        match joint_eigen_decomposition(&[to_complex(&ax), to_complex(&ay)], &Tolerances::default())
        {
            Err(Error::NonCommuting { .. }) => {}
            other => panic!("expected commutation failure, got {other:?}"),
        }
    }

    #[test]
    fn joint_eigen_rejects_non_normal() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = C64::new(1.0, 0.0);
        match joint_eigen_decomposition(&[a], &Tolerances::default()) {
            Err(Error::NotNormal { .. }) => {}
            other => panic!("expected normality failure, got {other:?}"),
        }
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = RMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let ns = null_space(&m, 1e-9);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((m.clone() * v).norm() < 1e-9);
        }
    }

    pub(super) fn to_complex(a: &RMatrix) -> CMatrix {
        let mut m = CMatrix::zeros(a.nrows(), a.ncols());
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                m[(i, j)] = C64::new(a[(i, j)], 0.0);
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn bracket_is_antisymmetric_and_jacobi(
            xs in prop::collection::vec(-2.0f64..2.0, 8),
            ys in prop::collection::vec(-2.0f64..2.0, 8),
            zs in prop::collection::vec(-2.0f64..2.0, 8),
        ) {
            let m = su3_model();
            let x = AlgebraElement::new(xs);
            let y = AlgebraElement::new(ys);
            let z = AlgebraElement::new(zs);
            let xy = m.bracket(&x, &y).unwrap();
            let yx = m.bracket(&y, &x).unwrap();
            prop_assert!((&xy.coords + &yx.coords).norm() < 1e-9);
            let a = m.bracket(&x, &m.bracket(&y, &z).unwrap()).unwrap();
            let b = m.bracket(&y, &m.bracket(&z, &x).unwrap()).unwrap();
            let c = m.bracket(&z, &xy).unwrap();
            prop_assert!((&a.coords + &b.coords + &c.coords).norm() < 1e-8);
        }

        #[test]
        fn metric_is_ad_skew(
            xs in prop::collection::vec(-2.0f64..2.0, 8),
            ys in prop::collection::vec(-2.0f64..2.0, 8),
            zs in prop::collection::vec(-2.0f64..2.0, 8),
        ) {
            let m = su3_model();
            let x = AlgebraElement::new(xs);
            let y = AlgebraElement::new(ys);
            let z = AlgebraElement::new(zs);
            let zx_y = m.inner(&m.bracket(&z, &x).unwrap(), &y).unwrap();
            let x_zy = m.inner(&x, &m.bracket(&z, &y).unwrap()).unwrap();
            prop_assert!((zx_y + x_zy).abs() < 1e-8);
        }
    }
}
