//! Centralized numeric tolerances.
//!
//! Every "equals" claim in this crate carries an explicit absolute tolerance;
//! they all live here so that the comparison policy is auditable in one place.

/// Relative Hermitian-symmetry tolerance: a matrix counts as Hermitian when
/// `max |m_ij - conj(m_ji)| <= HERMITIAN_REL * max |m_ij|`.
pub const HERMITIAN_REL: f64 = 1e-12;

/// Jacobi convergence: stop when the off-diagonal Frobenius mass falls below
/// `EIG_OFFDIAG_REL * ||M||_F`.
pub const EIG_OFFDIAG_REL: f64 = 1e-14;

/// Eigendecomposition reconstruction defect, per dimension (`tol * n`).
pub const EIG_RECON_PER_N: f64 = 1e-10;

/// Unitarity defect of an eigenvector basis.
pub const UNITARITY: f64 = 1e-10;

/// Eigenvalues above `-PSD_LAMBDA_MIN` are clamped to zero; anything below is
/// rejected as not positive semidefinite.
pub const PSD_LAMBDA_MIN: f64 = 1e-10;

/// `sqrt(M)^2 = M` defect, per dimension.
pub const PSD_SQRT_PER_N: f64 = 1e-9;

/// Projection idempotency defect (`P^2 = P`), per dimension.
pub const PROJECTION_PER_N: f64 = 1e-9;

/// Reflection defect (`R^2 = I`), per dimension.
pub const REFLECTION_PER_N: f64 = 1e-9;

/// Trace-versus-rank agreement for projections.
pub const PROJECTION_TRACE: f64 = 1e-8;

/// Parseval defect `S S* = I` for frame synthesis arrays.
pub const PARSEVAL: f64 = 1e-10;

/// Equal-norm defect `||f_j||^2 = k/n`.
pub const EQUAL_NORM: f64 = 1e-10;

/// Equiangularity defect `| |<f_i,f_j>| - c |`.
pub const EQUIANGULAR: f64 = 1e-9;

/// Operator-norm comparisons between independently computed quantities.
pub const NORM_CMP: f64 = 1e-9;

/// Contraction slack: `||A|| <= 1 + CONTRACTION_SLACK` is accepted.
pub const CONTRACTION_SLACK: f64 = 1e-10;

/// Singular values below this threshold count as zero (rank decisions).
pub const RANK_SV: f64 = 1e-8;

/// Eigenvalues with `|lambda|` below this threshold are excluded from the
/// nonzero spectrum sigma'.
pub const SIGMA_PRIME: f64 = 1e-8;

/// Agreement between the direct and the spectral route to `||PSP||`.
pub const PSP_DUAL_PATH: f64 = 1e-8;

/// Canonical block-form reconstruction defect, per dimension.
pub const CANONICAL_PER_N: f64 = 1e-8;

/// Slack allowed in the within-block weight inequality of balanced
/// weight partitions.
pub const ETE_SLACK: f64 = 1e-12;

/// Agreement between the matrix-product trace and the double-sum trace.
pub const TRACE_PATHS: f64 = 1e-10;

/// Round-trip defect for reflection <-> projection conversions.
pub const ROUND_TRIP: f64 = 1e-12;

/// Stored-versus-recomputed bound certificate values.
pub const CERTIFICATE_REEVAL: f64 = 1e-12;
