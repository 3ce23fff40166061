//! Dense complex linear algebra: Hermitian eigendecomposition, operator
//! norms, PSD square roots, and principal compressions.
//!
//! Everything is stored as a row-major `Vec<Complex64>`; purely real inputs
//! (conference matrices, real frames) are carried with zero imaginary parts
//! so there is a single scalar type throughout. The eigensolver is a cyclic
//! Jacobi iteration, which is unconditionally stable at the dense sizes this
//! crate works with (n up to a few hundred).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tol;

/// Errors from the dense linear-algebra layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: |m[{i}][{j}] - conj(m[{j}][{i}])| = {defect:.3e} exceeds {limit:.3e}")]
    NotHermitian {
        i: usize,
        j: usize,
        defect: f64,
        limit: f64,
    },
    #[error("dimension mismatch: left is {lhs_rows}x{lhs_cols}, right is {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("entry count {got} does not match {rows}x{cols}")]
    InvalidData { rows: usize, cols: usize, got: usize },
    #[error("matrix dimensions must be at least 1x1")]
    Empty,
    #[error("not positive semidefinite: smallest eigenvalue {lambda_min:.3e}")]
    NotPsd { lambda_min: f64 },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index block must be nonempty")]
    EmptyBlock,
    #[error("duplicate index {index} in block")]
    DuplicateIndex { index: usize },
    #[error("Jacobi sweep limit reached: off-diagonal mass {off:.3e} above threshold {threshold:.3e}")]
    ConvergenceFailure { off: f64, threshold: f64 },
}

/// Dense rectangular matrix over complex doubles, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::InvalidData {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a square matrix from real row slices; rows must be equal length.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        if r == 0 {
            return Err(MatrixError::Empty);
        }
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::InvalidData {
                    rows: r,
                    cols: c,
                    got: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(r, c, data)
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(x, 0.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let lhs_row = i * rhs.cols;
                let rhs_row = k * rhs.cols;
                for j in 0..rhs.cols {
                    out.data[lhs_row + j] += a * rhs.data[rhs_row + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(
        &self,
        rhs: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::DimensionMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self.get(i, i)).sum()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self.get(i, i)).collect()
    }

    /// Largest entrywise deviation from the identity.
    pub fn identity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.get(i, j) - want).norm());
            }
        }
        worst
    }

    /// Largest `|m_ij - conj(m_ji)|` together with the entry pair attaining it.
    pub fn hermitian_defect(&self) -> (f64, (usize, usize)) {
        let mut worst = 0.0f64;
        let mut at = (0, 0);
        for i in 0..self.rows {
            for j in i..self.cols.min(self.rows) {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                if d > worst {
                    worst = d;
                    at = (i, j);
                }
            }
        }
        (worst, at)
    }

    /// Checks the relative Hermitian-symmetry invariant.
    pub fn require_hermitian(&self) -> Result<(), MatrixError> {
        self.require_square()?;
        let (defect, (i, j)) = self.hermitian_defect();
        let limit = tol::HERMITIAN_REL * self.max_abs();
        if defect > limit {
            return Err(MatrixError::NotHermitian {
                i,
                j,
                defect,
                limit,
            });
        }
        Ok(())
    }

    /// Exact Hermitian average `(M + M*)/2`, with real diagonal.
    pub fn hermitize(&self) -> Result<Self, MatrixError> {
        let n = self.require_square()?;
        let mut out = self.clone();
        for i in 0..n {
            for j in i..n {
                let avg = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                let avg = if i == j {
                    Complex64::new(avg.re, 0.0)
                } else {
                    avg
                };
                out.set(i, j, avg);
                out.set(j, i, avg.conj());
            }
        }
        Ok(out)
    }
}

/// Eigenvalues (ascending) and a unitary eigenvector basis.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub basis: Matrix,
}

impl SpectralDecomposition {
    /// Entrywise defect of `basis* . basis = I`.
    pub fn unitarity_defect(&self) -> f64 {
        self.basis
            .adjoint()
            .mul(&self.basis)
            .expect("square basis")
            .identity_defect()
    }

    /// Entrywise defect of `basis . diag(eigenvalues) . basis*` against `m`.
    pub fn reconstruction_defect(&self, m: &Matrix) -> f64 {
        let n = self.eigenvalues.len();
        let mut scaled = self.basis.clone();
        for j in 0..n {
            for i in 0..n {
                let v = scaled.get(i, j) * self.eigenvalues[j];
                scaled.set(i, j, v);
            }
        }
        let rebuilt = scaled.mul(&self.basis.adjoint()).expect("square");
        rebuilt.sub(m).expect("same shape").max_abs()
    }
}

const MAX_JACOBI_SWEEPS: usize = 64;

/// Cyclic Jacobi on a Hermitian matrix. Each rotation annihilates one
/// off-diagonal pair through a phased plane rotation; sweeps repeat until the
/// off-diagonal Frobenius mass falls below `EIG_OFFDIAG_REL * ||M||_F`.
/// Output is deterministic for identical input.
fn jacobi(m: &Matrix, with_vectors: bool) -> Result<(Vec<f64>, Option<Matrix>), MatrixError> {
    m.require_hermitian()?;
    let n = m.rows();
    let work = m.hermitize()?;
    let mut a: Vec<Complex64> = work.data.clone();
    let frob = work.frobenius_norm();
    let threshold = tol::EIG_OFFDIAG_REL * frob;
    let mut v = if with_vectors {
        Some(Matrix::identity(n))
    } else {
        None
    };

    if frob > 0.0 && n > 1 {
        // Elements below this can be skipped without stalling convergence:
        // if every |a_pq| <= threshold/n the global mass is already below
        // the stopping threshold.
        let skip = threshold / n as f64;
        let mut converged = false;
        for _sweep in 0..MAX_JACOBI_SWEEPS {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q].norm_sqr();
                }
            }
            let off = (2.0 * off).sqrt();
            if off <= threshold {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    let beta = a[p * n + q];
                    let ab = beta.norm();
                    if ab <= skip {
                        continue;
                    }
                    let alpha = a[p * n + p].re;
                    let gamma = a[q * n + q].re;
                    let u = beta / ab;
                    let theta = (gamma - alpha) / (2.0 * ab);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (theta * theta + 1.0).sqrt())
                    } else {
                        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    let su = s * u;
                    let su_conj = su.conj();

                    // Column rotation: (col p, col q) <- (c p - s u* q, s p + c u* q).
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = akp * c - akq * su_conj;
                        a[k * n + q] = akp * s + akq * (c * u.conj());
                    }
                    // Row rotation: (row p, row q) <- (c p - s u q, s p + c u q).
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = apk * c - aqk * su;
                        a[q * n + k] = apk * s + aqk * (c * u);
                    }
                    // The rotation is constructed to zero this pair exactly.
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

                    if let Some(vm) = v.as_mut() {
                        for k in 0..n {
                            let vkp = vm.get(k, p);
                            let vkq = vm.get(k, q);
                            vm.set(k, p, vkp * c - vkq * su_conj);
                            vm.set(k, q, vkp * s + vkq * (c * u.conj()));
                        }
                    }
                }
            }
        }
        if !converged {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q].norm_sqr();
                }
            }
            let off = (2.0 * off).sqrt();
            if off > threshold {
                return Err(MatrixError::ConvergenceFailure { off, threshold });
            }
        }
    }

    // Sort eigenvalues ascending; ties keep original index order so the
    // output is reproducible.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i * n + i]
            .re
            .partial_cmp(&a[j * n + j].re)
            .expect("finite eigenvalues")
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
    let basis = v.map(|vm| {
        let mut b = Matrix::zeros(n, n);
        for (newj, &oldj) in order.iter().enumerate() {
            for i in 0..n {
                b.set(i, newj, vm.get(i, oldj));
            }
        }
        b
    });
    Ok((eigenvalues, basis))
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(m: &Matrix) -> Result<SpectralDecomposition, MatrixError> {
    let (eigenvalues, basis) = jacobi(m, true)?;
    Ok(SpectralDecomposition {
        eigenvalues,
        basis: basis.expect("vectors requested"),
    })
}

/// Eigenvalues only (ascending); cheaper than `hermitian_eig` when the basis
/// is not needed, e.g. inside norm computations and paving searches.
pub fn hermitian_eigenvalues(m: &Matrix) -> Result<Vec<f64>, MatrixError> {
    Ok(jacobi(m, false)?.0)
}

/// Largest singular value, computed as `sqrt(lambda_max(M* M))`. For
/// Hermitian input this equals the largest absolute eigenvalue.
pub fn operator_norm(m: &Matrix) -> f64 {
    let gram = m.adjoint().mul(m).expect("adjoint dims always match");
    let vals = hermitian_eigenvalues(&gram).expect("M*M is Hermitian by construction");
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Hermitian PSD square root. Eigenvalues within `PSD_LAMBDA_MIN` of zero are
/// clamped to zero before the root — a square root of a spurious 1e-13 would
/// be 3e-7, far above the eigenvalue error itself — and anything below
/// `-PSD_LAMBDA_MIN` is rejected.
pub fn psd_sqrt(m: &Matrix) -> Result<Matrix, MatrixError> {
    let dec = hermitian_eig(m)?;
    let lambda_min = dec.eigenvalues.first().copied().unwrap_or(0.0);
    if lambda_min < -tol::PSD_LAMBDA_MIN {
        return Err(MatrixError::NotPsd { lambda_min });
    }
    let n = dec.eigenvalues.len();
    let mut scaled = dec.basis.clone();
    for j in 0..n {
        let lambda = dec.eigenvalues[j];
        let root = if lambda <= tol::PSD_LAMBDA_MIN {
            0.0
        } else {
            lambda.sqrt()
        };
        for i in 0..n {
            let v = scaled.get(i, j) * root;
            scaled.set(i, j, v);
        }
    }
    scaled.mul(&dec.basis.adjoint())?.hermitize()
}

/// The `|block| x |block|` submatrix on the given rows/columns. The block is
/// sorted internally; duplicates and out-of-range indices are rejected.
pub fn principal_compression(m: &Matrix, block: &[usize]) -> Result<Matrix, MatrixError> {
    let n = m.require_square()?;
    if block.is_empty() {
        return Err(MatrixError::EmptyBlock);
    }
    let mut idx = block.to_vec();
    idx.sort_unstable();
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return Err(MatrixError::DuplicateIndex { index: w[0] });
        }
    }
    if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
        return Err(MatrixError::IndexOutOfRange { index: bad, n });
    }
    let b = idx.len();
    let mut out = Matrix::zeros(b, b);
    for (oi, &i) in idx.iter().enumerate() {
        for (oj, &j) in idx.iter().enumerate() {
            out.set(oi, oj, m.get(i, j));
        }
    }
    Ok(out)
}

/// Matrix exchange format: row-major real and imaginary parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            re: m.data.iter().map(|z| z.re).collect(),
            im: m.data.iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = MatrixError;

    fn try_from(j: MatrixJson) -> Result<Self, MatrixError> {
        if j.re.len() != j.im.len() {
            return Err(MatrixError::InvalidData {
                rows: j.rows,
                cols: j.cols,
                got: j.im.len(),
            });
        }
        let data = j
            .re
            .iter()
            .zip(&j.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        Matrix::new(j.rows, j.cols, data)
    }
}
