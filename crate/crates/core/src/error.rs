//! Error type shared by all modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failures are loud and carry the offending residual or witness; nothing
/// in the crate silently rounds an ambiguous quantity into a verdict.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("gram matrix is not positive definite")]
    GramNotPositiveDefinite,

    #[error("basis does not close under the bracket: [b{i}, b{j}] leaves the span (residual {residual:.3e})")]
    BracketNotClosed { i: usize, j: usize, residual: f64 },

    #[error("metric is not ad-invariant (residual {residual:.3e} at generator {index})")]
    MetricNotInvariant { index: usize, residual: f64 },

    #[error("map is not an involutive automorphism ({check} residual {residual:.3e})")]
    NotInvolution { check: String, residual: f64 },

    #[error("operators {i} and {j} do not commute (residual {residual:.3e})")]
    NonCommuting { i: usize, j: usize, residual: f64 },

    #[error("operator {index} is not normal (residual {residual:.3e})")]
    NotNormal { index: usize, residual: f64 },

    #[error("joint eigendecomposition failed after {attempts} random draws: {reason}")]
    EigenRetriesExhausted { attempts: u32, reason: String },

    #[error("eigenvalue clusters separated by {separation:.3e}, inside the ambiguity band [{lo:.3e}, {hi:.3e})")]
    ClusterAmbiguity { separation: f64, lo: f64, hi: f64 },

    #[error("phase {theta:.12} for root {root} at eps angle {eps_angle:.12} lies {distance:.3e} from the {lattice} lattice, inside the ambiguity band")]
    PhaseAmbiguity { root: String, eps_angle: f64, theta: f64, distance: f64, lattice: String },

    #[error("subspace is not invariant under the operator (residual {residual:.3e})")]
    NotInvariantSubspace { residual: f64 },

    #[error("element lies outside the expected subspace (residual {residual:.3e} in {context})")]
    OutsideSubspace { context: String, residual: f64 },

    #[error("rank mismatch in {context}: expected {expected}, found {found}")]
    RankMismatch { context: String, expected: usize, found: usize },

    #[error("candidate subspace is not maximal abelian: {0}")]
    NotMaximalAbelian(String),

    #[error("root pairing failed: {0}")]
    RootPairing(String),

    #[error("collinear roots with norm ratio {ratio:.6} are neither equal nor 2:1")]
    CollinearRatio { ratio: f64 },

    #[error("no regular witness found after {attempts} attempts")]
    NoRegularWitness { attempts: u32 },

    #[error("multiplicity bookkeeping failed in {context}: {details}")]
    Bookkeeping { context: String, details: String },

    #[error("golden record mismatch for {entry}: {details}")]
    GoldenMismatch { entry: String, details: String },

    #[error("catalog entry unusable: {0}")]
    UnusableEntry(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("angle syntax error in `{0}`")]
    AngleSyntax(String),
}
