//! A numerical laboratory for finite-dimensional matrix paving: partition
//! searches and certificates over conference matrices and frame projections,
//! diagonal-symmetry scans on equiangular Grams, and truncated Laurent
//! operators built from fat-Cantor symbols.
//!
//! The crate is organized along the objects it studies:
//!
//! - [`matrix`]: dense complex linear algebra (Jacobi eigensolver, operator
//!   norms, PSD square roots, principal compressions);
//! - [`frames`]: harmonic and difference-set frames, Paley conference
//!   matrices, Gram projections, and the forced-dependency block frames;
//! - [`transforms`]: dilation to reflections, the affine reflection <->
//!   projection maps, paving refinement, and certificate transfer to
//!   nearly-half diagonals;
//! - [`paving`]: exhaustive and local partition search, balanced weight
//!   partitions, independent-set partitions, Riesz block bounds, and the
//!   closed-form lower-bound certificates;
//! - [`symmetry`]: canonical block form against a diagonal symmetry, the
//!   spectral route to `||PSP||`, minimizing scans, and the trace suite;
//! - [`laurent`]: exact interval sets, Fourier coefficients, Toeplitz
//!   truncations, and bi-density diagnostics;
//! - [`experiments`]: the registered, seed-stamped experiment reports and
//!   their offline verifier.

pub mod experiments;
pub mod frames;
pub mod laurent;
pub mod matrix;
pub mod paving;
pub mod sampling;
pub mod symmetry;
pub mod tol;
pub mod transforms;

pub use frames::{ConferenceMatrix, DifferenceSet, FrameSpec, GramProjection};
pub use matrix::{
    hermitian_eig, hermitian_eigenvalues, operator_norm, principal_compression, psd_sqrt, Matrix,
    MatrixError, MatrixJson, SpectralDecomposition,
};
pub use paving::{BoundCertificate, Partition, PavedOperator};
pub use symmetry::SymmetryVector;
