//! Frame and projection constructions: harmonic equal-norm Parseval frames,
//! difference-set equiangular frames, Paley conference matrices, half-diagonal
//! conference projections, and the two-block frames whose large index sets
//! force dependent vectors.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{hermitian_eig, Matrix, MatrixError, MatrixJson};
use crate::tol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("frequency set must be a nonempty subset of 0..{n}")]
    EmptyFrequencySet { n: usize },
    #[error("frequency {d} out of range for modulus {n}")]
    FrequencyOutOfRange { d: usize, n: usize },
    #[error("not a Parseval frame: |S S* - I| = {defect:.3e} at entry ({i},{j})")]
    NotParseval { defect: f64, i: usize, j: usize },
    #[error("not a projection: |G^2 - G| = {defect:.3e} exceeds {limit:.3e}")]
    NotProjection { defect: f64, limit: f64 },
    #[error("projection trace {trace:.6} is not within {limit:.1e} of an integer rank")]
    NonIntegerRank { trace: f64, limit: f64 },
    #[error("{q} is not prime")]
    NotPrime { q: u64 },
    #[error("{q} is not congruent to 1 mod 4")]
    BadResidueClass { q: u64 },
    #[error("conference matrix invariant failed: {reason}")]
    BadConferenceMatrix { reason: String },
    #[error("difference-set search budget exceeded: n = {n} above limit {limit}")]
    SearchBudgetExceeded { n: usize, limit: usize },
    #[error("parameters infeasible: {reason}")]
    Infeasible { reason: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A finite frame given by its synthesis array (columns are the frame
/// vectors) plus the metadata the experiments key on.
#[derive(Debug, Clone)]
pub struct FrameSpec {
    /// Ambient dimension.
    pub dim: usize,
    /// Number of frame vectors.
    pub count: usize,
    /// `dim x count` array whose j-th column is the frame vector f_j.
    pub synthesis: Matrix,
    /// Squared norms of the frame vectors.
    pub norm_sq: Vec<f64>,
    /// Set when every vector has squared norm dim/count within tolerance.
    pub equal_norm: bool,
    /// Common off-diagonal Gram modulus, when the frame is equiangular.
    pub equiangular_c: Option<f64>,
    /// Construction family, carried through serialization.
    pub family: String,
}

impl FrameSpec {
    /// Wraps a synthesis array, measuring the equal-norm and equiangular
    /// metadata from the entries.
    pub fn from_synthesis(synthesis: Matrix, family: &str) -> Self {
        let dim = synthesis.rows();
        let count = synthesis.cols();
        let norm_sq: Vec<f64> = (0..count)
            .map(|j| (0..dim).map(|i| synthesis.get(i, j).norm_sqr()).sum())
            .collect();
        let target = dim as f64 / count as f64;
        let equal_norm = norm_sq.iter().all(|&s| (s - target).abs() <= tol::EQUAL_NORM);
        let equiangular_c = measure_equiangularity(&synthesis, dim, count);
        FrameSpec {
            dim,
            count,
            synthesis,
            norm_sq,
            equal_norm,
            equiangular_c,
            family: family.to_string(),
        }
    }

    /// Largest entrywise defect of `S S* = I`.
    pub fn parseval_defect(&self) -> f64 {
        self.synthesis
            .mul(&self.synthesis.adjoint())
            .expect("dims")
            .identity_defect()
    }

    pub fn is_parseval(&self) -> bool {
        self.parseval_defect() <= tol::PARSEVAL
    }
}

/// Equiangular tight-frame modulus `sqrt(k(n-k) / (n^2 (n-1)))`.
pub fn equiangular_modulus(dim: usize, count: usize) -> f64 {
    let k = dim as f64;
    let n = count as f64;
    (k * (n - k) / (n * n * (n - 1.0))).sqrt()
}

fn measure_equiangularity(synthesis: &Matrix, dim: usize, count: usize) -> Option<f64> {
    if count < 2 || dim >= count {
        return None;
    }
    let c = equiangular_modulus(dim, count);
    for i in 0..count {
        for j in (i + 1)..count {
            let mut ip = Complex64::new(0.0, 0.0);
            for t in 0..dim {
                ip += synthesis.get(t, i).conj() * synthesis.get(t, j);
            }
            if (ip.norm() - c).abs() > tol::EQUIANGULAR {
                return None;
            }
        }
    }
    Some(c)
}

/// Gram matrix of a Parseval frame, stored together with its rank and the
/// largest diagonal entry.
#[derive(Debug, Clone)]
pub struct GramProjection {
    pub n: usize,
    pub rank: usize,
    pub gram: Matrix,
    pub diag_max: f64,
}

impl GramProjection {
    /// Validates idempotency and integer trace, then records the rank and the
    /// diagonal maximum.
    pub fn new(gram: Matrix) -> Result<Self, FrameError> {
        let n = gram.require_square()?;
        gram.require_hermitian()?;
        let limit = tol::PROJECTION_PER_N * n as f64;
        let defect = gram.mul(&gram)?.sub(&gram)?.max_abs();
        if defect > limit {
            return Err(FrameError::NotProjection { defect, limit });
        }
        let trace = gram.trace().re;
        let rank = trace.round();
        if (trace - rank).abs() > tol::PROJECTION_TRACE {
            return Err(FrameError::NonIntegerRank {
                trace,
                limit: tol::PROJECTION_TRACE,
            });
        }
        let diag_max = gram
            .diagonal()
            .iter()
            .map(|z| z.re)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(GramProjection {
            n,
            rank: rank as usize,
            gram,
            diag_max,
        })
    }

    pub fn real_diagonal(&self) -> Vec<f64> {
        self.gram.diagonal().iter().map(|z| z.re).collect()
    }
}

/// A (n, k, lambda) difference set in Z_n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSet {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub elements: Vec<usize>,
}

/// Checks that every nonzero residue arises exactly `lambda` times as a
/// difference of elements.
pub fn is_difference_set(n: usize, elements: &[usize]) -> Option<usize> {
    if n < 2 || elements.len() < 2 {
        return None;
    }
    let mut counts = vec![0usize; n];
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            if i != j {
                counts[(a + n - b) % n] += 1;
            }
        }
    }
    let lambda = counts[1];
    if lambda > 0 && counts[1..].iter().all(|&c| c == lambda) {
        Some(lambda)
    } else {
        None
    }
}

/// Symmetric conference matrix: zero diagonal, +-1 off-diagonal entries,
/// `C^2 = (n-1) I` held exactly in integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConferenceMatrix {
    pub order: usize,
    entries: Vec<i64>,
}

impl ConferenceMatrix {
    pub fn new(order: usize, entries: Vec<i64>) -> Result<Self, FrameError> {
        if entries.len() != order * order {
            return Err(FrameError::BadConferenceMatrix {
                reason: format!("entry count {} for order {order}", entries.len()),
            });
        }
        let c = ConferenceMatrix { order, entries };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), FrameError> {
        let n = self.order;
        for i in 0..n {
            if self.get(i, i) != 0 {
                return Err(FrameError::BadConferenceMatrix {
                    reason: format!("diagonal entry ({i},{i}) is {}", self.get(i, i)),
                });
            }
            for j in 0..n {
                if i != j && self.get(i, j).abs() != 1 {
                    return Err(FrameError::BadConferenceMatrix {
                        reason: format!("off-diagonal entry ({i},{j}) is {}", self.get(i, j)),
                    });
                }
                if self.get(i, j) != self.get(j, i) {
                    return Err(FrameError::BadConferenceMatrix {
                        reason: format!("asymmetric at ({i},{j})"),
                    });
                }
            }
        }
        // C^2 = (n-1) I, checked in exact integers.
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for k in 0..n {
                    s += self.get(i, k) * self.get(k, j);
                }
                let want = if i == j { (n - 1) as i64 } else { 0 };
                if s != want {
                    return Err(FrameError::BadConferenceMatrix {
                        reason: format!("(C^2)[{i}][{j}] = {s}, expected {want}"),
                    });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.order;
        let data = self
            .entries
            .iter()
            .map(|&e| Complex64::new(e as f64, 0.0))
            .collect();
        Matrix::new(n, n, data).expect("validated dims")
    }

    /// The zero-diagonal reflection `C / sqrt(n-1)`.
    pub fn reflection(&self) -> Matrix {
        self.to_matrix().scale(1.0 / ((self.order - 1) as f64).sqrt())
    }
}

/// Harmonic frame on Z_n restricted to the frequencies in `freqs`: vector j
/// has entries `omega^(j d) / sqrt(n)` for d in the set, `omega = exp(2 pi i / n)`.
/// Always an equal-norm Parseval (count = n, dim = |freqs|) frame.
pub fn harmonic_frame(n: usize, freqs: &[usize]) -> Result<FrameSpec, FrameError> {
    if freqs.is_empty() || n == 0 {
        return Err(FrameError::EmptyFrequencySet { n });
    }
    let mut d = freqs.to_vec();
    d.sort_unstable();
    d.dedup();
    if d.len() != freqs.len() {
        return Err(FrameError::Infeasible {
            reason: "repeated frequency".into(),
        });
    }
    if let Some(&bad) = d.iter().find(|&&x| x >= n) {
        return Err(FrameError::FrequencyOutOfRange { d: bad, n });
    }
    let k = d.len();
    let scale = 1.0 / (n as f64).sqrt();
    let mut synthesis = Matrix::zeros(k, n);
    for j in 0..n {
        for (row, &freq) in d.iter().enumerate() {
            // omega^(j d), reduced mod n before the trig call for accuracy.
            let phase = TAU * ((j * freq) % n) as f64 / n as f64;
            synthesis.set(row, j, Complex64::from_polar(scale, phase));
        }
    }
    Ok(FrameSpec::from_synthesis(synthesis, "harmonic"))
}

const DIFFERENCE_SET_DEFAULT_LIMIT: usize = 40;

/// Exhaustive backtracking search for the lexicographically smallest
/// difference set with smallest element 0. Returns `Ok(None)` when provably
/// none exists, and a budget error when `n` is beyond `limit`
/// (`None` limit = 40).
pub fn find_difference_set(
    n: usize,
    k: usize,
    limit: Option<usize>,
) -> Result<Option<DifferenceSet>, FrameError> {
    let limit = limit.unwrap_or(DIFFERENCE_SET_DEFAULT_LIMIT);
    if n < 2 || k < 2 || k >= n {
        return Ok(None);
    }
    // Divisibility obstruction: lambda = k(k-1)/(n-1) must be an integer.
    if (k * (k - 1)) % (n - 1) != 0 {
        return Ok(None);
    }
    if n > limit {
        return Err(FrameError::SearchBudgetExceeded { n, limit });
    }
    let lambda = k * (k - 1) / (n - 1);
    let mut chosen = vec![0usize];
    let mut counts = vec![0usize; n];
    if backtrack_ds(n, k, lambda, &mut chosen, &mut counts) {
        debug_assert_eq!(is_difference_set(n, &chosen), Some(lambda));
        Ok(Some(DifferenceSet {
            n,
            k,
            lambda,
            elements: chosen,
        }))
    } else {
        Ok(None)
    }
}

fn backtrack_ds(
    n: usize,
    k: usize,
    lambda: usize,
    chosen: &mut Vec<usize>,
    counts: &mut [usize],
) -> bool {
    if chosen.len() == k {
        return true;
    }
    let start = chosen.last().copied().unwrap_or(0) + 1;
    let remaining = k - chosen.len();
    if start + remaining > n + 1 {
        return false;
    }
    for cand in start..=(n - remaining) {
        // Apply the candidate's differences one at a time so that repeated
        // residues from the same candidate are caught by the lambda cap.
        let mut applied = 0;
        let mut ok = true;
        for &e in chosen.iter() {
            let d1 = (cand + n - e) % n;
            let d2 = (e + n - cand) % n;
            counts[d1] += 1;
            counts[d2] += 1;
            applied += 1;
            if counts[d1] > lambda || counts[d2] > lambda {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(cand);
            if backtrack_ds(n, k, lambda, chosen, counts) {
                return true;
            }
            chosen.pop();
        }
        for &e in chosen.iter().take(applied) {
            counts[(cand + n - e) % n] -= 1;
            counts[(e + n - cand) % n] -= 1;
        }
    }
    false
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Symmetric conference matrix of order q+1 from the quadratic-residue
/// character on Z_q; requires q an odd prime with q = 1 mod 4.
pub fn paley_conference(q: u64) -> Result<ConferenceMatrix, FrameError> {
    if !is_prime(q) {
        return Err(FrameError::NotPrime { q });
    }
    if q % 4 != 1 {
        return Err(FrameError::BadResidueClass { q });
    }
    let qs = q as usize;
    let n = qs + 1;
    // chi(a) = +1 for nonzero squares, -1 for non-squares.
    let mut chi = vec![-1i64; qs];
    chi[0] = 0;
    for x in 1..qs {
        chi[(x * x) % qs] = 1;
    }
    let mut entries = vec![0i64; n * n];
    for j in 1..n {
        entries[j] = 1;
        entries[j * n] = 1;
    }
    for i in 1..n {
        for j in 1..n {
            if i != j {
                entries[i * n + j] = chi[(i + qs - j) % qs];
            }
        }
    }
    ConferenceMatrix::new(n, entries)
}

/// Half-diagonal projection `P = (I + C/sqrt(n-1)) / 2`. The diagonal is
/// exactly 1/2 because the conference matrix has an exactly zero diagonal.
pub fn conference_projection(c: &ConferenceMatrix) -> Result<GramProjection, FrameError> {
    let n = c.order;
    let scale = 1.0 / ((n - 1) as f64).sqrt();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                0.5
            } else {
                0.5 * (c.get(i, j) as f64) * scale
            };
            gram.set(i, j, Complex64::new(v, 0.0));
        }
    }
    GramProjection::new(gram)
}

/// Gram matrix `G_ij = <f_j, f_i> = (S* S)_ij` of a Parseval frame.
pub fn gram_projection(frame: &FrameSpec) -> Result<GramProjection, FrameError> {
    let ss = frame.synthesis.mul(&frame.synthesis.adjoint())?;
    let mut worst = 0.0f64;
    let mut at = (0, 0);
    for i in 0..frame.dim {
        for j in 0..frame.dim {
            let want = if i == j { 1.0 } else { 0.0 };
            let d = (ss.get(i, j) - want).norm();
            if d > worst {
                worst = d;
                at = (i, j);
            }
        }
    }
    if worst > tol::PARSEVAL {
        return Err(FrameError::NotParseval {
            defect: worst,
            i: at.0,
            j: at.1,
        });
    }
    let gram = frame.synthesis.adjoint().mul(&frame.synthesis)?;
    GramProjection::new(gram)
}

/// Recovers a Parseval synthesis from a Gram projection by spectral
/// factorization: the rows of the rank-many unit-eigenvalue eigenvectors.
pub fn synthesis_from_gram(g: &GramProjection, family: &str) -> Result<FrameSpec, FrameError> {
    let dec = hermitian_eig(&g.gram)?;
    let n = g.n;
    let k = g.rank.max(1);
    // Eigenvalues ascend, so the rank-k range sits in the last k columns.
    let mut synthesis = Matrix::zeros(k, n);
    for (row, col) in ((n - k)..n).enumerate() {
        for j in 0..n {
            synthesis.set(row, j, dec.basis.get(j, col).conj());
        }
    }
    Ok(FrameSpec::from_synthesis(synthesis, family))
}

/// Guarantee attached to a two-block frame: inside the leading block, any
/// index set larger than the block dimension supports a kernel vector of the
/// Gram matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DependencyCertificate {
    /// Length of the leading block (r*k + 1 vectors).
    pub first_block_len: usize,
    /// Dimension spanned by the leading block.
    pub sub_dim: usize,
    /// Any index set of this size or more inside the leading block is
    /// linearly dependent, so the Gram compression of I - P there has norm 1.
    pub dependent_at: usize,
}

#[derive(Debug, Clone)]
pub struct BlockFrame {
    pub frame: FrameSpec,
    pub certificate: DependencyCertificate,
}

/// Two independent equal-norm Parseval frames stacked block-diagonally:
/// r*k + 1 vectors spanning a k-dimensional coordinate subspace of C^n, and
/// 2n - (r*k + 1) vectors spanning the complementary n-k dimensions. Inside
/// the leading block every set of k+1 vectors is dependent by dimension
/// count, which is what makes large blocks unpavable.
pub fn block_frame(n: usize, k: usize, r: usize) -> Result<BlockFrame, FrameError> {
    if r < 2 || k == 0 || k >= n || r * k + 1 > 2 * n {
        return Err(FrameError::Infeasible {
            reason: format!("need r >= 2, 0 < k < n, r*k+1 <= 2n; got n={n}, k={k}, r={r}"),
        });
    }
    let first = r * k + 1;
    let second = 2 * n - first;
    if second < n - k {
        return Err(FrameError::Infeasible {
            reason: format!("second block has {second} vectors for dimension {}", n - k),
        });
    }
    let head = harmonic_frame(first, &(0..k).collect::<Vec<_>>())?;
    let tail = harmonic_frame(second, &(0..(n - k)).collect::<Vec<_>>())?;
    let mut synthesis = Matrix::zeros(n, 2 * n);
    for j in 0..first {
        for i in 0..k {
            synthesis.set(i, j, head.synthesis.get(i, j));
        }
    }
    for j in 0..second {
        for i in 0..(n - k) {
            synthesis.set(k + i, first + j, tail.synthesis.get(i, j));
        }
    }
    let frame = FrameSpec::from_synthesis(synthesis, "block");
    Ok(BlockFrame {
        frame,
        certificate: DependencyCertificate {
            first_block_len: first,
            sub_dim: k,
            dependent_at: k + 1,
        },
    })
}

/// Serialized frame: synthesis in the matrix exchange format plus family
/// metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameSpecJson {
    pub n: usize,
    pub k: usize,
    pub synthesis: MatrixJson,
    pub family: String,
    pub params: serde_json::Value,
}

impl FrameSpecJson {
    pub fn from_frame(f: &FrameSpec, params: serde_json::Value) -> Self {
        FrameSpecJson {
            n: f.count,
            k: f.dim,
            synthesis: MatrixJson::from(&f.synthesis),
            family: f.family.clone(),
            params,
        }
    }
}
