//! Diagonal-symmetry analysis of projections: the canonical block form of a
//! projection against a +-1 diagonal, the spectral route to `||PSP||`,
//! minimizing scans over sign vectors, inequality certificates for uniform
//! equiangular Grams, and the cross-partition trace suite.

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::GramProjection;
use crate::matrix::{
    hermitian_eig, hermitian_eigenvalues, operator_norm, principal_compression, Matrix,
    MatrixError,
};
use crate::tol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("sign vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("sign vector entries must be +1 or -1, found {value} at index {index}")]
    BadSign { index: usize, value: i8 },
    #[error("exhaustive scan over {n} signs is beyond the supported 24; use a sampling strategy")]
    ExhaustiveScopeExceeded { n: usize },
    #[error("canonical form reconstruction defect {defect:.3e} exceeds {limit:.3e}")]
    ReconstructionDefect { defect: f64, limit: f64 },
    #[error("theorem requires n > 2k, got n = {n}, k = {k}")]
    NotApplicable { n: u64, k: u64 },
    #[error("index set must be a nonempty proper subset of 0..{n}")]
    BadSplit { n: usize },
    #[error("trace paths disagree: |{product:.12} - {double_sum:.12}| exceeds {limit:.1e}")]
    TraceMismatch {
        product: f64,
        double_sum: f64,
        limit: f64,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A +-1 sign vector encoding the diagonal symmetry `S = diag(signs)`.
/// Canonical form fixes `signs[0] = +1`, since S and -S act identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryVector {
    signs: Vec<i8>,
}

impl SymmetryVector {
    pub fn new(signs: Vec<i8>) -> Result<Self, SymmetryError> {
        if let Some((index, &value)) = signs.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(SymmetryError::BadSign { index, value });
        }
        Ok(SymmetryVector { signs })
    }

    /// All +1 signs.
    pub fn all_plus(n: usize) -> Self {
        SymmetryVector { signs: vec![1; n] }
    }

    /// Builds the canonical vector from a bitmask over indices `1..n`
    /// (bit set = -1); index 0 is always +1.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut signs = vec![1i8; n];
        for (i, s) in signs.iter_mut().enumerate().skip(1) {
            if (mask >> (i - 1)) & 1 == 1 {
                *s = -1;
            }
        }
        SymmetryVector { signs }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn negated(&self) -> Self {
        SymmetryVector {
            signs: self.signs.iter().map(|&s| -s).collect(),
        }
    }

    /// Flips globally so that the leading sign is +1.
    pub fn canonicalized(&self) -> Self {
        if self.signs.first().copied() == Some(-1) {
            self.negated()
        } else {
            self.clone()
        }
    }

    pub fn plus_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.signs[i] == 1).collect()
    }

    pub fn minus_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.signs[i] == -1).collect()
    }
}

fn require_dims(p: &GramProjection, s: &SymmetryVector) -> Result<(), SymmetryError> {
    if s.len() != p.n {
        return Err(SymmetryError::LengthMismatch {
            got: s.len(),
            expected: p.n,
        });
    }
    Ok(())
}

/// `||P S P||` by direct evaluation of the product. Invariant under `S -> -S`.
pub fn psp_norm(p: &GramProjection, s: &SymmetryVector) -> Result<f64, SymmetryError> {
    require_dims(p, s)?;
    let n = p.n;
    // S P scales row i by sign i; P (S P) completes the product.
    let mut sp = p.gram.clone();
    for i in 0..n {
        if s.signs[i] == -1 {
            for j in 0..n {
                sp.set(i, j, -sp.get(i, j));
            }
        }
    }
    let psp = p.gram.mul(&sp)?;
    Ok(operator_norm(&psp))
}

/// Canonical block form of a projection against a diagonal symmetry: after
/// permuting the +1 indices first (and negating S if they are the majority),
/// unitaries U1 (on the +1 side) and U2 (on the -1 side) reduce P to
///
/// ```text
/// [ D1   D2  0  ]
/// [ D2   D3  0  ]
/// [ 0    0   D4 ]
/// ```
///
/// with nonnegative diagonals; paired entries satisfy `D1 + D3 = 1` and
/// `D2^2 = D1 (1 - D1)`, and D4 is a 0/1 diagonal.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// Number of +1 signs after normalization (m <= n - m).
    pub m: usize,
    /// n - 2m.
    pub l: usize,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    pub d3: Vec<f64>,
    pub d4: Vec<f64>,
    /// Unitary on the +1 block; absent when m = 0.
    pub u1: Option<Matrix>,
    /// Unitary on the -1 block.
    pub u2: Matrix,
    /// Whether the symmetry was negated to enforce m <= n - m.
    pub flipped: bool,
    /// The +1-indices-first permutation applied before the block reduction.
    pub permutation: Vec<usize>,
}

pub fn canonical_form(
    p: &GramProjection,
    s: &SymmetryVector,
) -> Result<CanonicalForm, SymmetryError> {
    require_dims(p, s)?;
    let n = p.n;
    let plus = s.plus_indices();
    let flipped = plus.len() > n - plus.len();
    let eff = if flipped { s.negated() } else { s.clone() };
    let plus = eff.plus_indices();
    let minus = eff.minus_indices();
    let m = plus.len();
    let l = n - 2 * m;

    let permutation: Vec<usize> = plus.iter().chain(minus.iter()).copied().collect();
    let mut perm_gram = Matrix::zeros(n, n);
    for (pi, &i) in permutation.iter().enumerate() {
        for (pj, &j) in permutation.iter().enumerate() {
            perm_gram.set(pi, pj, p.gram.get(i, j));
        }
    }

    // The -1 side block and its diagonalization.
    let c_block = principal_compression(&perm_gram, &(m..n).collect::<Vec<_>>())?;
    let c_dec = hermitian_eig(&c_block)?;

    // Pair the m eigenvalues with the largest gamma(1-gamma) against the +1
    // side; the remaining n-2m belong to the decoupled 0/1 diagonal.
    let nm = n - m;
    let mut order: Vec<usize> = (0..nm).collect();
    let score = |i: usize| {
        let g = c_dec.eigenvalues[i];
        g * (1.0 - g)
    };
    order.sort_by(|&a, &b| {
        score(b)
            .partial_cmp(&score(a))
            .expect("finite scores")
            .then(a.cmp(&b))
    });
    let mut u2 = Matrix::zeros(nm, nm);
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..nm {
            u2.set(i, newj, c_dec.basis.get(i, oldj));
        }
    }
    let gammas: Vec<f64> = order.iter().map(|&j| c_dec.eigenvalues[j]).collect();
    let d3: Vec<f64> = gammas.iter().take(m).copied().collect();
    let d4: Vec<f64> = gammas.iter().skip(m).copied().collect();
    let d2: Vec<f64> = d3.iter().map(|&g| (g * (1.0 - g)).max(0.0).sqrt()).collect();

    let (d1, u1) = if m == 0 {
        (Vec::new(), None)
    } else {
        let a_block = principal_compression(&perm_gram, &(0..m).collect::<Vec<_>>())?;
        let mut b_block = Matrix::zeros(m, nm);
        for i in 0..m {
            for j in 0..nm {
                b_block.set(i, j, perm_gram.get(i, m + j));
            }
        }
        // Columns of B U2 on the paired side are U1 columns scaled by D2.
        let x = b_block.mul(&u2)?;
        let mut u1 = Matrix::zeros(m, m);
        let mut fixed = vec![false; m];
        for i in 0..m {
            if d2[i] > tol::RANK_SV {
                for row in 0..m {
                    u1.set(row, i, x.get(row, i) / d2[i]);
                }
                fixed[i] = true;
            }
        }
        // Complete the unfixed columns to a unitary by Gram-Schmidt over the
        // standard basis.
        for i in 0..m {
            if fixed[i] {
                continue;
            }
            let mut placed = false;
            for cand in 0..m {
                let mut v: Vec<Complex64> = (0..m)
                    .map(|row| {
                        if row == cand {
                            Complex64::new(1.0, 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    })
                    .collect();
                for j in 0..m {
                    if j == i || fixed[j] || j < i {
                        // Project out every already-present column.
                        let col: Vec<Complex64> = (0..m).map(|row| u1.get(row, j)).collect();
                        if col.iter().all(|z| z.norm() == 0.0) {
                            continue;
                        }
                        let ip: Complex64 =
                            (0..m).map(|row| col[row].conj() * v[row]).sum();
                        for row in 0..m {
                            v[row] -= col[row] * ip;
                        }
                    }
                }
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm > 0.5 {
                    for (row, z) in v.iter().enumerate() {
                        u1.set(row, i, z / norm);
                    }
                    fixed[i] = true;
                    placed = true;
                    break;
                }
            }
            if !placed {
                return Err(SymmetryError::ReconstructionDefect {
                    defect: f64::INFINITY,
                    limit: tol::CANONICAL_PER_N * n as f64,
                });
            }
        }
        // A1 = U1* A U1 is diagonal on the coupled coordinates; diagonalize
        // the decoupled residual block and fold the rotation into U1.
        let mut a1 = u1.adjoint().mul(&a_block)?.mul(&u1)?;
        let free: Vec<usize> = (0..m).filter(|&i| d2[i] <= tol::RANK_SV).collect();
        if !free.is_empty() {
            let sub = principal_compression(&a1, &free)?;
            let sub_dec = hermitian_eig(&sub.hermitize()?)?;
            let mut w = Matrix::identity(m);
            for (cj, &j) in free.iter().enumerate() {
                for (ci, &i) in free.iter().enumerate() {
                    w.set(i, j, sub_dec.basis.get(ci, cj));
                }
            }
            u1 = u1.mul(&w)?;
            a1 = w.adjoint().mul(&a1)?.mul(&w)?;
        }
        let d1: Vec<f64> = (0..m).map(|i| a1.get(i, i).re).collect();
        (d1, Some(u1))
    };

    let form = CanonicalForm {
        m,
        l,
        d1,
        d2,
        d3,
        d4,
        u1,
        u2,
        flipped,
        permutation,
    };
    let limit = tol::CANONICAL_PER_N * n as f64;
    let defect = form.reconstruction_defect(p)?;
    if defect > limit {
        return Err(SymmetryError::ReconstructionDefect { defect, limit });
    }
    Ok(form)
}

impl CanonicalForm {
    /// Largest entrywise deviation of `U* P_perm U` from the block pattern.
    pub fn reconstruction_defect(&self, p: &GramProjection) -> Result<f64, SymmetryError> {
        let n = p.n;
        let m = self.m;
        let nm = n - m;
        let mut perm_gram = Matrix::zeros(n, n);
        for (pi, &i) in self.permutation.iter().enumerate() {
            for (pj, &j) in self.permutation.iter().enumerate() {
                perm_gram.set(pi, pj, p.gram.get(i, j));
            }
        }
        let mut u = Matrix::zeros(n, n);
        if let Some(u1) = &self.u1 {
            for i in 0..m {
                for j in 0..m {
                    u.set(i, j, u1.get(i, j));
                }
            }
        }
        for i in 0..nm {
            for j in 0..nm {
                u.set(m + i, m + j, self.u2.get(i, j));
            }
        }
        let t = u.adjoint().mul(&perm_gram)?.mul(&u)?;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let want = if i == j {
                    if i < m {
                        self.d1[i]
                    } else if i < 2 * m {
                        self.d3[i - m]
                    } else {
                        self.d4[i - 2 * m]
                    }
                } else if i < m && j >= m && j < 2 * m && j - m == i {
                    self.d2[i]
                } else if j < m && i >= m && i < 2 * m && i - m == j {
                    self.d2[j]
                } else {
                    0.0
                };
                worst = worst.max((t.get(i, j) - want).norm());
            }
        }
        Ok(worst)
    }
}

/// `||PSP||` through the block spectra: the maximum of `|1 - 2 lambda|` over
/// the nonzero spectra of the two diagonal compressions of P (the +1 side and
/// the -1 side). Eigenvalues within `SIGMA_PRIME` of zero are excluded; an
/// eigenvalue at 1 (in particular any nonzero decoupled 0/1 entry) forces the
/// value 1. For projections this equals `psp_norm`.
pub fn psp_norm_via_spectra(
    p: &GramProjection,
    s: &SymmetryVector,
) -> Result<f64, SymmetryError> {
    require_dims(p, s)?;
    let eff = {
        let plus = s.plus_indices();
        if plus.len() > p.n - plus.len() {
            s.negated()
        } else {
            s.clone()
        }
    };
    let mut best = 0.0f64;
    for side in [eff.plus_indices(), eff.minus_indices()] {
        if side.is_empty() {
            continue;
        }
        let block = principal_compression(&p.gram, &side)?;
        for lambda in hermitian_eigenvalues(&block.hermitize()?)? {
            if lambda.abs() > tol::SIGMA_PRIME {
                best = best.max((1.0 - 2.0 * lambda).abs());
            }
        }
    }
    Ok(best)
}

/// How a symmetry scan explores the sign-vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanStrategy {
    /// All 2^(n-1) canonical sign vectors; supported up to n = 24.
    Exhaustive,
    /// A seeded uniform sample of canonical sign vectors.
    Random { samples: u64, seed: u64 },
    /// Seeded single-sign flips accepted on strict decrease, with restarts.
    GreedyFlip { seed: u64, restarts: u32 },
}

/// Outcome of a symmetry scan, with enough provenance to reproduce it.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub best: SymmetryVector,
    pub value: f64,
    pub scanned: u64,
    pub strategy: String,
    pub seed: Option<u64>,
}

/// Lexicographic tie-break key: earlier indices weigh more, +1 before -1.
fn lex_key(mask: u64, n: usize) -> u64 {
    let mut key = 0u64;
    for bit in 0..(n - 1) {
        key = (key << 1) | ((mask >> bit) & 1);
    }
    key
}

/// Minimizes `||PSP||` over diagonal symmetries with the given strategy.
/// Exhaustive scans fix `signs[0] = +1` (sign-flip invariance halves the
/// space) and resolve ties toward the lexicographically smallest vector.
/// Results are deterministic given the strategy parameters.
pub fn min_symmetry_norm(
    p: &GramProjection,
    strategy: &ScanStrategy,
) -> Result<ScanResult, SymmetryError> {
    let n = p.n;
    let mut best: Option<(f64, u64)> = None;
    let consider = |value: f64, mask: u64, best: &mut Option<(f64, u64)>| {
        let better = match best {
            None => true,
            Some((bv, bm)) => {
                value < *bv || (value == *bv && lex_key(mask, n) < lex_key(*bm, n))
            }
        };
        if better {
            *best = Some((value, mask));
        }
    };

    let (scanned, strategy_name, seed) = match strategy {
        ScanStrategy::Exhaustive => {
            if n > 24 {
                return Err(SymmetryError::ExhaustiveScopeExceeded { n });
            }
            let total = 1u64 << (n - 1);
            for mask in 0..total {
                let s = SymmetryVector::from_mask(n, mask);
                let v = psp_norm(p, &s)?;
                consider(v, mask, &mut best);
            }
            (total, "exhaustive".to_string(), None)
        }
        ScanStrategy::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let width = (n - 1).min(63);
            let mask_bits = if width == 0 { 0 } else { (1u64 << width) - 1 };
            for _ in 0..*samples {
                let mask = rng.next_u64() & mask_bits;
                let s = SymmetryVector::from_mask(n, mask);
                let v = psp_norm(p, &s)?;
                consider(v, mask, &mut best);
            }
            (*samples, "random".to_string(), Some(*seed))
        }
        ScanStrategy::GreedyFlip { seed, restarts } => {
            let mut scanned = 0u64;
            let width = (n - 1).min(63);
            let mask_bits = if width == 0 { 0 } else { (1u64 << width) - 1 };
            for restart in 0..*restarts {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    seed.wrapping_add((restart as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)),
                );
                let mut mask = rng.next_u64() & mask_bits;
                let mut value = psp_norm(p, &SymmetryVector::from_mask(n, mask))?;
                scanned += 1;
                loop {
                    let mut improved = false;
                    for bit in 0..width {
                        let cand = mask ^ (1u64 << bit);
                        let v = psp_norm(p, &SymmetryVector::from_mask(n, cand))?;
                        scanned += 1;
                        if v < value {
                            mask = cand;
                            value = v;
                            improved = true;
                        }
                    }
                    if !improved {
                        break;
                    }
                }
                consider(value, mask, &mut best);
            }
            (scanned, "greedy-flip".to_string(), Some(*seed))
        }
    };

    let (value, mask) = best.expect("scan visited at least one vector");
    Ok(ScanResult {
        best: SymmetryVector::from_mask(n, mask),
        value,
        scanned,
        strategy: strategy_name,
        seed,
    })
}

/// Exact integer comparison of `(k-1) n^2` against `4 k^2 (n-1)`. When the
/// left side is strictly larger, no diagonal symmetry can bring `||PSP||`
/// down to `2k/n` on any uniform equiangular (n, k) Gram, which contradicts
/// the small-norm conjecture for projections.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureACertificate {
    pub n: u64,
    pub k: u64,
    /// `(k-1) n^2`
    pub lhs: i128,
    /// `4 k^2 (n-1)`
    pub rhs: i128,
    pub is_counterexample: bool,
}

pub fn conjecture_a_certificate(n: u64, k: u64) -> Result<ConjectureACertificate, SymmetryError> {
    if n <= 2 * k {
        return Err(SymmetryError::NotApplicable { n, k });
    }
    let lhs = (k as i128 - 1) * (n as i128) * (n as i128);
    let rhs = 4 * (k as i128) * (k as i128) * (n as i128 - 1);
    Ok(ConjectureACertificate {
        n,
        k,
        lhs,
        rhs,
        is_counterexample: lhs > rhs,
    })
}

/// Equiangular extras for the trace report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquiangularTraceBounds {
    /// The common off-diagonal modulus c.
    pub c: f64,
    /// `m (n-m) c^2` for the actual split size m.
    pub cross_energy: f64,
    /// `k (n-k) / (4 (n-1))`, the cap on the cross energy.
    pub cross_energy_cap: f64,
    /// `(n-k)/(n-1)`: any epsilon with `eps (2-eps)` above this is excluded.
    pub epsilon_relation_cap: f64,
}

/// Cross-partition trace data: `Tr(Q_R P Q_T P Q_R)` computed by the matrix
/// product and by the double sum of squared off-block Gram moduli, together
/// with the thresholds the trace is compared against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceReport {
    pub n: usize,
    pub k: usize,
    pub r_size: usize,
    pub trace_product: f64,
    pub trace_double_sum: f64,
    /// `(k/4)(1 - k/n)`.
    pub bound_quarter: f64,
    /// `k eps (2 - eps) / 4` for the caller-supplied epsilon.
    pub bound_for_epsilon: Option<f64>,
    pub equiangular: Option<EquiangularTraceBounds>,
}

pub fn conjecture_b_trace_suite(
    g: &GramProjection,
    r_set: &[usize],
    epsilon: Option<f64>,
) -> Result<TraceReport, SymmetryError> {
    let n = g.n;
    let mut in_r = vec![false; n];
    for &i in r_set {
        if i >= n {
            return Err(SymmetryError::BadSplit { n });
        }
        in_r[i] = true;
    }
    let m = in_r.iter().filter(|&&b| b).count();
    if m == 0 || m == n || m != r_set.len() {
        return Err(SymmetryError::BadSplit { n });
    }

    // Route one: the literal product Q_R P Q_T P Q_R.
    let mut q_r = Matrix::zeros(n, n);
    let mut q_t = Matrix::zeros(n, n);
    for i in 0..n {
        if in_r[i] {
            q_r.set(i, i, Complex64::new(1.0, 0.0));
        } else {
            q_t.set(i, i, Complex64::new(1.0, 0.0));
        }
    }
    let product = q_r
        .mul(&g.gram)?
        .mul(&q_t)?
        .mul(&g.gram)?
        .mul(&q_r)?;
    let trace_product = product.trace().re;

    // Route two: sum of |<f_i, f_j>|^2 over i in R, j in T.
    let mut trace_double_sum = 0.0f64;
    for i in 0..n {
        if !in_r[i] {
            continue;
        }
        for j in 0..n {
            if !in_r[j] {
                trace_double_sum += g.gram.get(i, j).norm_sqr();
            }
        }
    }
    if (trace_product - trace_double_sum).abs() > tol::TRACE_PATHS {
        return Err(SymmetryError::TraceMismatch {
            product: trace_product,
            double_sum: trace_double_sum,
            limit: tol::TRACE_PATHS,
        });
    }

    let k = g.rank;
    let kf = k as f64;
    let nf = n as f64;
    let bound_quarter = kf / 4.0 * (1.0 - kf / nf);
    let bound_for_epsilon = epsilon.map(|e| kf * e * (2.0 - e) / 4.0);

    // Detect equiangularity from the off-diagonal moduli.
    let c_formula = crate::frames::equiangular_modulus(k, n);
    let mut equiangular = true;
    for i in 0..n {
        for j in (i + 1)..n {
            if (g.gram.get(i, j).norm() - c_formula).abs() > tol::EQUIANGULAR {
                equiangular = false;
            }
        }
    }
    let equiangular = equiangular.then(|| {
        let mf = m.min(n - m) as f64;
        EquiangularTraceBounds {
            c: c_formula,
            cross_energy: mf * (nf - mf) * c_formula * c_formula,
            cross_energy_cap: kf * (nf - kf) / (4.0 * (nf - 1.0)),
            epsilon_relation_cap: (nf - kf) / (nf - 1.0),
        }
    });

    Ok(TraceReport {
        n,
        k,
        r_size: m,
        trace_product,
        trace_double_sum,
        bound_quarter,
        bound_for_epsilon,
        equiangular,
    })
}

/// The symmetry-scan JSON surface: integer certificate sides where the
/// equiangular theorem applies, plus the scan outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReportJson {
    pub n: usize,
    pub k: usize,
    pub lhs: Option<i128>,
    pub rhs: Option<i128>,
    pub is_counterexample: Option<bool>,
    pub scanned: u64,
    pub min_norm: f64,
    pub argmin_signs: Vec<i8>,
    pub strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

pub fn scan_report(p: &GramProjection, scan: &ScanResult) -> ScanReportJson {
    let cert = if p.n as u64 > 2 * p.rank as u64 {
        conjecture_a_certificate(p.n as u64, p.rank as u64).ok()
    } else {
        None
    };
    ScanReportJson {
        n: p.n,
        k: p.rank,
        lhs: cert.as_ref().map(|c| c.lhs),
        rhs: cert.as_ref().map(|c| c.rhs),
        is_counterexample: cert.as_ref().map(|c| c.is_counterexample),
        scanned: scan.scanned,
        min_norm: scan.value,
        argmin_signs: scan.best.signs().to_vec(),
        strategy: scan.strategy.clone(),
        seed: scan.seed,
    }
}
