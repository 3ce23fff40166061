//! Partition search and certification: exhaustive and local-search paving,
//! balanced weight partitions, independent-set partitions, Riesz block
//! bounds, and closed-form lower-bound certificates.
//!
//! Paving is evaluated on the full matrix including its diagonal; callers
//! that want the zero-diagonal convention subtract the diagonal first.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::{synthesis_from_gram, FrameError, GramProjection};
use crate::matrix::{
    hermitian_eigenvalues, operator_norm, principal_compression, Matrix, MatrixError,
};
use crate::tol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PavingError {
    #[error("invalid partition: {reason}")]
    PartitionInvalid { reason: String },
    #[error("partition covers 0..{partition_n} but the matrix has dimension {matrix_n}")]
    SizeMismatch { partition_n: usize, matrix_n: usize },
    #[error("{partitions} set partitions exceed the budget of {max}; use local_search_pave for this size")]
    BudgetExceeded { partitions: u128, max: u128 },
    #[error("not a symmetric nonnegative weight matrix with zero diagonal: {reason}")]
    NotWeightMatrix { reason: String },
    #[error("diagonal entry {index} is {value:.6}, below the required 1/r = {required:.6}")]
    DiagonalTooSmall {
        index: usize,
        value: f64,
        required: f64,
    },
    #[error("no partition into {r} independent sets was found")]
    NotPartitionable { r: usize },
    #[error("r must be at least {min}")]
    RankTooSmall { min: usize },
    #[error("internal invariant violated: {what}")]
    InvariantViolated { what: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// An ordered list of disjoint sorted index blocks covering `0..n`.
/// Canonical form: every block ascending, blocks ordered by smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PavingError> {
        let mut seen = vec![false; n];
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(PavingError::PartitionInvalid {
                    reason: "empty block".into(),
                });
            }
            let mut b = block;
            b.sort_unstable();
            for &i in &b {
                if i >= n {
                    return Err(PavingError::PartitionInvalid {
                        reason: format!("index {i} out of range for n = {n}"),
                    });
                }
                if seen[i] {
                    return Err(PavingError::PartitionInvalid {
                        reason: format!("index {i} appears in two blocks"),
                    });
                }
                seen[i] = true;
            }
            canonical.push(b);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(PavingError::PartitionInvalid {
                reason: format!("index {missing} is not covered"),
            });
        }
        canonical.sort_by_key(|b| b[0]);
        Ok(Partition {
            n,
            blocks: canonical,
        })
    }

    /// Builds the partition from per-index block labels; empty labels vanish.
    pub fn from_assignment(labels: &[usize]) -> Self {
        let n = labels.len();
        let r = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); r];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i);
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b[0]);
        Partition { n, blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn single_block(n: usize) -> Self {
        Partition {
            n,
            blocks: vec![(0..n).collect()],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    /// Common refinement `{A_i intersect B_j}` with empty intersections dropped.
    pub fn refine(&self, other: &Partition) -> Result<Partition, PavingError> {
        if self.n != other.n {
            return Err(PavingError::SizeMismatch {
                partition_n: other.n,
                matrix_n: self.n,
            });
        }
        let mut blocks = Vec::new();
        for a in &self.blocks {
            for b in &other.blocks {
                let cut: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
                if !cut.is_empty() {
                    blocks.push(cut);
                }
            }
        }
        Partition::new(self.n, blocks)
    }

    /// Restriction to the indices `0..m`; blocks that miss the prefix vanish.
    pub fn restrict_prefix(&self, m: usize) -> Result<Partition, PavingError> {
        let mut blocks = Vec::new();
        for b in &self.blocks {
            let cut: Vec<usize> = b.iter().copied().filter(|&i| i < m).collect();
            if !cut.is_empty() {
                blocks.push(cut);
            }
        }
        Partition::new(m, blocks)
    }
}

/// Search provenance carried into serialized pavings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<u32>,
}

impl Provenance {
    pub fn direct() -> Self {
        Provenance {
            strategy: "direct".into(),
            seed: None,
            restarts: None,
        }
    }
}

/// A matrix together with a partition and the certified per-block
/// compression norms; `epsilon` is exactly the largest of them.
#[derive(Debug, Clone)]
pub struct PavedOperator {
    pub operator: Matrix,
    pub partition: Partition,
    pub per_block_norms: Vec<f64>,
    pub epsilon: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PavedOperatorJson {
    pub partition: Vec<Vec<usize>>,
    pub per_block_norms: Vec<f64>,
    pub epsilon: f64,
    pub provenance: Provenance,
}

impl PavedOperator {
    pub fn to_json(&self) -> PavedOperatorJson {
        PavedOperatorJson {
            partition: self.partition.blocks().to_vec(),
            per_block_norms: self.per_block_norms.clone(),
            epsilon: self.epsilon,
            provenance: self.provenance.clone(),
        }
    }
}

fn block_norm(t: &Matrix, block: &[usize]) -> Result<f64, PavingError> {
    Ok(operator_norm(&principal_compression(t, block)?))
}

/// Per-block compression norms of `t` under `p`; `epsilon` is their maximum.
pub fn paving_norm(t: &Matrix, p: &Partition) -> Result<PavedOperator, PavingError> {
    let n = t.require_square()?;
    if p.n() != n {
        return Err(PavingError::SizeMismatch {
            partition_n: p.n(),
            matrix_n: n,
        });
    }
    let mut norms = Vec::with_capacity(p.r());
    for block in p.blocks() {
        norms.push(block_norm(t, block)?);
    }
    let epsilon = norms.iter().copied().fold(0.0, f64::max);
    Ok(PavedOperator {
        operator: t.clone(),
        partition: p.clone(),
        per_block_norms: norms,
        epsilon,
        provenance: Provenance::direct(),
    })
}

/// Number of set partitions of `n` into at most `r` blocks (sum of Stirling
/// numbers of the second kind), saturating at `u128::MAX`.
pub fn partitions_at_most(n: usize, r: usize) -> u128 {
    if n == 0 || r == 0 {
        return 0;
    }
    // s[j] = S(i, j) rolled over i.
    let mut s = vec![0u128; r + 1];
    s[1] = 1;
    for _i in 2..=n {
        for j in (1..=r).rev() {
            let lower = if j >= 2 { s[j - 1] } else { 0 };
            s[j] = (j as u128).saturating_mul(s[j]).saturating_add(lower);
        }
    }
    s[1..=r].iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Default exhaustive scope: n <= 14 for r = 2, n <= 11 for r = 3, and a flat
/// partition-count cap otherwise.
fn default_budget_allows(n: usize, r: usize) -> bool {
    match r {
        0 | 1 => true,
        2 => n <= 14,
        3 => n <= 11,
        _ => partitions_at_most(n, r) <= 30_000,
    }
}

/// Visits every restricted-growth string over `n` indices with at most `r`
/// labels, in lexicographic order, so each set partition is seen exactly once.
fn for_each_rgs(n: usize, r: usize, mut visit: impl FnMut(&[u8])) {
    let mut a = vec![0u8; n];
    let mut prefix_max = vec![0u8; n];
    loop {
        visit(&a);
        // Advance to the next string: rightmost position that can grow.
        let mut i = n;
        loop {
            if i <= 1 {
                return;
            }
            i -= 1;
            let cap = (prefix_max[i - 1] + 1).min((r - 1) as u8);
            if a[i] < cap {
                a[i] += 1;
                prefix_max[i] = prefix_max[i - 1].max(a[i]);
                for j in (i + 1)..n {
                    a[j] = 0;
                    prefix_max[j] = prefix_max[j - 1];
                }
                break;
            }
        }
    }
}

fn blocks_of_rgs(a: &[u8]) -> Vec<Vec<usize>> {
    let r = a.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); r];
    for (i, &l) in a.iter().enumerate() {
        blocks[l as usize].push(i);
    }
    blocks
}

/// Global minimum of epsilon over all partitions into at most `r` blocks,
/// subject to the default search budget. Ties go to the first partition in
/// canonical enumeration order, so the result is deterministic.
pub fn exhaustive_pave(t: &Matrix, r: usize) -> Result<PavedOperator, PavingError> {
    let n = t.require_square()?;
    if !default_budget_allows(n, r) {
        return Err(PavingError::BudgetExceeded {
            partitions: partitions_at_most(n, r),
            max: partitions_at_most(n.min(14), r),
        });
    }
    exhaustive_pave_unchecked(t, r)
}

/// Exhaustive paving with an explicit partition-count budget.
pub fn exhaustive_pave_with_budget(
    t: &Matrix,
    r: usize,
    max_partitions: u128,
) -> Result<PavedOperator, PavingError> {
    let n = t.require_square()?;
    let count = partitions_at_most(n, r);
    if count > max_partitions {
        return Err(PavingError::BudgetExceeded {
            partitions: count,
            max: max_partitions,
        });
    }
    exhaustive_pave_unchecked(t, r)
}

fn exhaustive_pave_unchecked(t: &Matrix, r: usize) -> Result<PavedOperator, PavingError> {
    let n = t.require_square()?;
    if r == 0 {
        return Err(PavingError::RankTooSmall { min: 1 });
    }
    let mut best_eps = f64::INFINITY;
    let mut best_rgs: Vec<u8> = Vec::new();
    let mut failure: Option<PavingError> = None;
    for_each_rgs(n, r, |a| {
        if failure.is_some() {
            return;
        }
        // Partial-max pruning: once a block reaches the incumbent epsilon the
        // partition cannot strictly improve.
        let blocks = blocks_of_rgs(a);
        let mut worst = 0.0f64;
        for b in &blocks {
            match block_norm(t, b) {
                Ok(v) => {
                    worst = worst.max(v);
                    if worst >= best_eps {
                        return;
                    }
                }
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
        }
        if worst < best_eps {
            best_eps = worst;
            best_rgs = a.to_vec();
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let labels: Vec<usize> = best_rgs.iter().map(|&l| l as usize).collect();
    let partition = Partition::from_assignment(&labels);
    let mut paved = paving_norm(t, &partition)?;
    paved.provenance = Provenance {
        strategy: "exhaustive".into(),
        seed: None,
        restarts: None,
    };
    Ok(paved)
}

/// Seeded multi-restart hill climbing. The base neighborhood moves one index
/// to another block slot, enriched with pairwise label swaps once single
/// moves stall; a step is accepted on a strict lexicographic decrease of
/// (epsilon, sum of block norms). Deterministic given (seed, restarts).
pub fn local_search_pave(
    t: &Matrix,
    r: usize,
    seed: u64,
    restarts: u32,
) -> Result<PavedOperator, PavingError> {
    use rand::{Rng, SeedableRng};

    let n = t.require_square()?;
    if r == 0 || n < r {
        return Err(PavingError::RankTooSmall { min: r.max(1) });
    }
    let restarts = restarts.max(1);
    let mut best: Option<(f64, Vec<usize>)> = None;

    for restart in 0..restarts {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
            seed.wrapping_add((restart as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)),
        );
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        let mut state = ClimbState::build(t, r, labels)?;

        loop {
            if state.sweep_moves(t)? {
                continue;
            }
            if !state.sweep_swaps(t)? {
                break;
            }
        }

        let better = match &best {
            None => true,
            Some((beps, blabels)) => {
                state.eps < *beps
                    || (state.eps == *beps
                        && canonical_key(&state.labels) < canonical_key(blabels))
            }
        };
        if better {
            best = Some((state.eps, state.labels));
        }
    }

    let (_, labels) = best.expect("at least one restart");
    let partition = Partition::from_assignment(&labels);
    let mut paved = paving_norm(t, &partition)?;
    paved.provenance = Provenance {
        strategy: "local".into(),
        seed: Some(seed),
        restarts: Some(restarts),
    };
    Ok(paved)
}

struct ClimbState {
    labels: Vec<usize>,
    norms: Vec<f64>,
    eps: f64,
    total: f64,
    r: usize,
}

impl ClimbState {
    fn build(t: &Matrix, r: usize, labels: Vec<usize>) -> Result<Self, PavingError> {
        let n = labels.len();
        let mut norms = vec![0.0f64; r];
        for slot in 0..r {
            let idx: Vec<usize> = (0..n).filter(|&i| labels[i] == slot).collect();
            norms[slot] = if idx.is_empty() {
                0.0
            } else {
                block_norm(t, &idx)?
            };
        }
        let eps = norms.iter().copied().fold(0.0, f64::max);
        let total = norms.iter().sum();
        Ok(ClimbState {
            labels,
            norms,
            eps,
            total,
            r,
        })
    }

    fn slot_norm(&self, t: &Matrix, slot: usize, skip: &[usize], add: &[usize]) -> Result<f64, PavingError> {
        let n = self.labels.len();
        let mut idx: Vec<usize> = (0..n)
            .filter(|&j| self.labels[j] == slot && !skip.contains(&j))
            .collect();
        idx.extend_from_slice(add);
        idx.sort_unstable();
        if idx.is_empty() {
            Ok(0.0)
        } else {
            block_norm(t, &idx)
        }
    }

    fn accept(&mut self, cand: Vec<f64>, new_labels: &[(usize, usize)]) -> bool {
        let cand_eps = cand.iter().copied().fold(0.0, f64::max);
        let cand_total: f64 = cand.iter().sum();
        if cand_eps < self.eps || (cand_eps == self.eps && cand_total < self.total) {
            for &(i, to) in new_labels {
                self.labels[i] = to;
            }
            self.norms = cand;
            self.eps = cand_eps;
            self.total = cand_total;
            true
        } else {
            false
        }
    }

    /// One pass of single-index moves; true when something improved.
    fn sweep_moves(&mut self, t: &Matrix) -> Result<bool, PavingError> {
        let n = self.labels.len();
        let mut improved = false;
        for i in 0..n {
            let from = self.labels[i];
            for to in 0..self.r {
                if to == from {
                    continue;
                }
                let nf = self.slot_norm(t, from, &[i], &[])?;
                let nt = self.slot_norm(t, to, &[], &[i])?;
                let mut cand = self.norms.clone();
                cand[from] = nf;
                cand[to] = nt;
                if self.accept(cand, &[(i, to)]) {
                    improved = true;
                    break;
                }
            }
        }
        Ok(improved)
    }

    /// One pass of pairwise label swaps; true when something improved.
    fn sweep_swaps(&mut self, t: &Matrix) -> Result<bool, PavingError> {
        let n = self.labels.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (self.labels[i], self.labels[j]);
                if a == b {
                    continue;
                }
                let na = self.slot_norm(t, a, &[i], &[j])?;
                let nb = self.slot_norm(t, b, &[j], &[i])?;
                let mut cand = self.norms.clone();
                cand[a] = na;
                cand[b] = nb;
                if self.accept(cand, &[(i, b), (j, a)]) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

fn canonical_key(labels: &[usize]) -> Vec<Vec<usize>> {
    Partition::from_assignment(labels).blocks().to_vec()
}

/// Balanced weight partition: every index ends up with a within-block row sum
/// no larger than its row sum into any other block. The loop moves the
/// smallest violating index to the lowest-indexed minimizing block; the total
/// intra-block weight strictly decreases, so it terminates.
pub fn bhkw_partition(w: &Matrix, r: usize) -> Result<Partition, PavingError> {
    let n = w.require_square()?;
    if r == 0 {
        return Err(PavingError::RankTooSmall { min: 1 });
    }
    let scale = w.max_abs();
    for i in 0..n {
        for j in 0..n {
            let z = w.get(i, j);
            if z.im.abs() > tol::HERMITIAN_REL * scale.max(1.0) {
                return Err(PavingError::NotWeightMatrix {
                    reason: format!("entry ({i},{j}) has imaginary part {:.3e}", z.im),
                });
            }
            if z.re < 0.0 {
                return Err(PavingError::NotWeightMatrix {
                    reason: format!("entry ({i},{j}) is negative"),
                });
            }
            if (z.re - w.get(j, i).re).abs() > tol::HERMITIAN_REL * scale.max(1.0) {
                return Err(PavingError::NotWeightMatrix {
                    reason: format!("asymmetric at ({i},{j})"),
                });
            }
        }
        if w.get(i, i).re.abs() > tol::HERMITIAN_REL * scale.max(1.0) {
            return Err(PavingError::NotWeightMatrix {
                reason: format!("diagonal entry {i} is nonzero"),
            });
        }
    }

    let weight = |i: usize, j: usize| w.get(i, j).re;
    let mut assign: Vec<usize> = (0..n).map(|i| i % r).collect();
    let row_sum = |assign: &[usize], i: usize, slot: usize| -> f64 {
        (0..n)
            .filter(|&m| m != i && assign[m] == slot)
            .map(|m| weight(i, m))
            .sum()
    };

    // Each move strictly lowers the total intra-block weight over a finite
    // state space, which bounds the loop; the explicit cap is a backstop.
    let max_moves = 4 * n * n * r + 64;
    let mut moves = 0usize;
    loop {
        let mut moved = false;
        'outer: for i in 0..n {
            let own = row_sum(&assign, i, assign[i]);
            let mut best_slot = assign[i];
            let mut best_sum = own;
            for slot in 0..r {
                if slot == assign[i] {
                    continue;
                }
                let s = row_sum(&assign, i, slot);
                if s < best_sum {
                    best_sum = s;
                    best_slot = slot;
                }
            }
            if best_slot != assign[i] {
                assign[i] = best_slot;
                moved = true;
                moves += 1;
                if moves > max_moves {
                    return Err(PavingError::InvariantViolated {
                        what: "weight-balancing loop exceeded its move bound".into(),
                    });
                }
                break 'outer;
            }
        }
        if !moved {
            break;
        }
    }

    // Post-check the inequality set before returning.
    for i in 0..n {
        let own = row_sum(&assign, i, assign[i]);
        for slot in 0..r {
            if slot != assign[i] && own > row_sum(&assign, i, slot) + tol::ETE_SLACK {
                return Err(PavingError::InvariantViolated {
                    what: format!("index {i} still prefers block {slot}"),
                });
            }
        }
    }
    Ok(Partition::from_assignment(&assign))
}

/// Splits the frame vectors behind a Gram projection into at most `r`
/// linearly independent sets, provided every diagonal entry is at least 1/r.
/// Uses augmenting exchange chains, with exhaustive enumeration as a fallback
/// for n <= 10.
pub fn rado_horn_partition(g: &GramProjection, r: usize) -> Result<Partition, PavingError> {
    if r == 0 {
        return Err(PavingError::RankTooSmall { min: 1 });
    }
    let n = g.n;
    let required = 1.0 / r as f64 - tol::ETE_SLACK;
    for (i, d) in g.real_diagonal().iter().enumerate() {
        if *d < required {
            return Err(PavingError::DiagonalTooSmall {
                index: i,
                value: *d,
                required: 1.0 / r as f64,
            });
        }
    }
    let frame = synthesis_from_gram(g, "recovered")?;
    let synth = &frame.synthesis;
    let k = frame.dim;

    let independent = |set: &[usize]| -> Result<bool, PavingError> {
        if set.is_empty() {
            return Ok(true);
        }
        if set.len() > k {
            return Ok(false);
        }
        // Smallest singular value of the synthesis sub-array.
        let mut cols = Matrix::zeros(k, set.len());
        for (cj, &j) in set.iter().enumerate() {
            for i in 0..k {
                cols.set(i, cj, synth.get(i, j));
            }
        }
        let gram = cols.adjoint().mul(&cols)?;
        let vals = hermitian_eigenvalues(&gram)?;
        let sv_min = vals.first().copied().unwrap_or(0.0).max(0.0).sqrt();
        Ok(sv_min > tol::RANK_SV)
    };

    match augmenting_partition(n, r, &independent)? {
        Some(blocks) => Partition::new(n, blocks.into_iter().filter(|b| !b.is_empty()).collect()),
        None => {
            if n <= 10 {
                exhaustive_independent_partition(n, r, &independent)
            } else {
                Err(PavingError::NotPartitionable { r })
            }
        }
    }
}

fn augmenting_partition(
    n: usize,
    r: usize,
    independent: &dyn Fn(&[usize]) -> Result<bool, PavingError>,
) -> Result<Option<Vec<Vec<usize>>>, PavingError> {
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); r];
    let with = |b: &[usize], x: usize| -> Vec<usize> {
        let mut v = b.to_vec();
        v.push(x);
        v.sort_unstable();
        v
    };

    'elements: for x in 0..n {
        // Direct insertion.
        for j in 0..r {
            if independent(&with(&blocks[j], x))? {
                blocks[j] = with(&blocks[j], x);
                continue 'elements;
            }
        }
        // Breadth-first exchange chains: `pending` elements need a home; an
        // element y may displace w in block j when (B_j - w) + y stays
        // independent.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n + 1]; // (displacer, block)
        let mut visited = vec![false; n + 1];
        visited[x] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(x);
        let mut terminal: Option<(usize, usize)> = None; // (element, block with room)
        'bfs: while let Some(y) = queue.pop_front() {
            for j in 0..r {
                if blocks[j].contains(&y) {
                    continue;
                }
                if independent(&with(&blocks[j], y))? {
                    terminal = Some((y, j));
                    break 'bfs;
                }
                for wi in 0..blocks[j].len() {
                    let w = blocks[j][wi];
                    if visited[w] {
                        continue;
                    }
                    let mut swapped: Vec<usize> =
                        blocks[j].iter().copied().filter(|&z| z != w).collect();
                    swapped.push(y);
                    swapped.sort_unstable();
                    if independent(&swapped)? {
                        visited[w] = true;
                        parent[w] = Some((y, j));
                        queue.push_back(w);
                    }
                }
            }
        }
        let Some((mut y, j_final)) = terminal else {
            return Ok(None);
        };
        // Unwind the chain: place y, then let each displacer take the slot it
        // claimed, back to x.
        blocks[j_final] = with(&blocks[j_final], y);
        while let Some((displacer, block)) = parent[y] {
            blocks[block].retain(|&z| z != y);
            blocks[block] = with(&blocks[block], displacer);
            y = displacer;
        }
        // Exchange chains can interact in degenerate numeric cases; verify.
        for j in 0..r {
            if !independent(&blocks[j])? {
                return Ok(None);
            }
        }
    }
    Ok(Some(blocks))
}

fn exhaustive_independent_partition(
    n: usize,
    r: usize,
    independent: &dyn Fn(&[usize]) -> Result<bool, PavingError>,
) -> Result<Partition, PavingError> {
    let mut found: Option<Vec<Vec<usize>>> = None;
    let mut failure: Option<PavingError> = None;
    for_each_rgs(n, r, |a| {
        if found.is_some() || failure.is_some() {
            return;
        }
        let blocks = blocks_of_rgs(a);
        for b in &blocks {
            match independent(b) {
                Ok(true) => {}
                Ok(false) => return,
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
        }
        found = Some(blocks);
    });
    if let Some(e) = failure {
        return Err(e);
    }
    match found {
        Some(blocks) => Partition::new(n, blocks),
        None => Err(PavingError::NotPartitionable { r }),
    }
}

/// Per-block Riesz floors: `c_B = lambda_min` of the Gram compression, and
/// the induced paving level of `I - G`, which is `max_B (1 - c_B)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RieszBound {
    pub block_floors: Vec<f64>,
    pub block_levels: Vec<f64>,
    pub epsilon: f64,
}

pub fn riesz_paving_bound(g: &GramProjection, p: &Partition) -> Result<RieszBound, PavingError> {
    if p.n() != g.n {
        return Err(PavingError::SizeMismatch {
            partition_n: p.n(),
            matrix_n: g.n,
        });
    }
    let mut floors = Vec::with_capacity(p.r());
    for block in p.blocks() {
        let comp = principal_compression(&g.gram, block)?;
        let vals = hermitian_eigenvalues(&comp)?;
        floors.push(vals.first().copied().unwrap_or(0.0));
    }
    let levels: Vec<f64> = floors.iter().map(|&c| 1.0 - c).collect();
    let epsilon = levels.iter().copied().fold(0.0, f64::max);
    Ok(RieszBound {
        block_floors: floors,
        block_levels: levels,
        epsilon,
    })
}

/// The closed-form lower-bound families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// Zero-diagonal reflections from conference matrices: the Schur square
    /// of a size-d compression has norm (d-1)/(n-1).
    Conference,
    /// Asymptotic class bound for half-diagonal projections.
    HalfProjection,
    /// A big enough block of a rank-k projection Gram has compression norm 1.
    BigBlock,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub kind: CertificateKind,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub bound: f64,
    pub derivation: String,
}

fn ceil_div(n: usize, r: usize) -> usize {
    n.div_ceil(r)
}

impl BoundCertificate {
    /// Re-evaluates the bound formula from (n, k, r).
    pub fn recompute(&self) -> f64 {
        match self.kind {
            CertificateKind::Conference => {
                (((ceil_div(self.n, self.r) - 1) as f64) / ((self.n - 1) as f64)).sqrt()
            }
            CertificateKind::HalfProjection => self.r as f64 / (2.0 * (self.r as f64 - 1.0)),
            CertificateKind::BigBlock => {
                if ceil_div(self.n, self.r) >= self.n - self.k + 1 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// The stored value must match the formula and lie in [0, 1].
    pub fn revalidate(&self) -> bool {
        (self.bound - self.recompute()).abs() <= tol::CERTIFICATE_REEVAL
            && (0.0..=1.0).contains(&self.bound)
    }
}

/// Emits the three certificate families for an (n, k) projection Gram paved
/// into r blocks: the conference-reflection bound, the half-diagonal class
/// bound, and the big-block size obstruction.
pub fn bound_certificates(
    n: usize,
    k: usize,
    r: usize,
) -> Result<Vec<BoundCertificate>, PavingError> {
    if r < 2 {
        return Err(PavingError::RankTooSmall { min: 2 });
    }
    if n < 2 || k > n {
        return Err(PavingError::PartitionInvalid {
            reason: format!("need n >= 2 and k <= n, got n={n}, k={k}"),
        });
    }
    let d = ceil_div(n, r);
    let conference = BoundCertificate {
        kind: CertificateKind::Conference,
        n,
        k,
        r,
        bound: (((d - 1) as f64) / ((n - 1) as f64)).sqrt(),
        derivation: format!(
            "a partition into {r} blocks has a block of size d >= ceil({n}/{r}) = {d}; \
             on a zero-diagonal reflection from a conference matrix the Schur square of \
             that compression is (J_d - I)/({n}-1) with norm (d-1)/(n-1), so \
             epsilon^2 >= ({d}-1)/({n}-1)"
        ),
    };
    let half = BoundCertificate {
        kind: CertificateKind::HalfProjection,
        n,
        k,
        r,
        bound: r as f64 / (2.0 * (r as f64 - 1.0)),
        derivation: format!(
            "for frames with n = m*{r} vectors in dimension k = m*({r}-1)+1 the diagonal \
             excess over 1/2 is delta = (m*({r}-2)+2)/(2*m*{r}) (recomputed from the \
             actual diagonal value k/n), and the forced block of size m = n-k+1 has \
             compression norm 1, giving epsilon >= m*{r}/(m*(2*{r}-2)+2) -> {r}/(2*({r}-1)) \
             as m grows; at r = 2 the class cannot be paved below 1"
        ),
    };
    let big_applicable = d >= n - k + 1;
    let big = BoundCertificate {
        kind: CertificateKind::BigBlock,
        n,
        k,
        r,
        bound: if big_applicable { 1.0 } else { 0.0 },
        derivation: if big_applicable {
            format!(
                "some block has size >= ceil({n}/{r}) = {d} >= n-k+1 = {}; a coordinate \
                 subspace of that size meets the rank-{k} range, so the compression \
                 has norm 1",
                n - k + 1
            )
        } else {
            format!(
                "ceil({n}/{r}) = {d} is below n-k+1 = {}; the size obstruction does \
                 not trigger",
                n - k + 1
            )
        },
    };
    Ok(vec![conference, half, big])
}
