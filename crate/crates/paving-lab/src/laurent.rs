//! Finite truncations of Laurent operators with indicator-type symbols:
//! fat-Cantor-style interval sets of measure exactly 1/2, closed-form Fourier
//! coefficients, symmetric Toeplitz truncations, and exact bi-density
//! diagnostics at dyadic resolution.
//!
//! All set geometry is exact: interval endpoints and measures are rationals,
//! and only the Fourier evaluation drops to floating point.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{Matrix, MatrixError};

/// Exact scalar for interval endpoints and measures.
pub type Rat = Ratio<i128>;

pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaurentError {
    #[error("intervals must satisfy 0 <= a < b <= 1 and be disjoint, violated at interval {index}")]
    BadIntervals { index: usize },
    #[error("stage must be between 1 and {max}")]
    BadStage { max: u32 },
    #[error("cell width must be a unit fraction 1/m with m >= 1, got {num}/{den}")]
    BadCellWidth { num: i128, den: i128 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A sorted disjoint union of half-open rational subintervals of [0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet {
    intervals: Vec<(Rat, Rat)>,
}

impl IntervalSet {
    pub fn new(mut intervals: Vec<(Rat, Rat)>) -> Result<Self, LaurentError> {
        intervals.sort();
        let one: Rat = Ratio::one();
        for (index, w) in intervals.iter().enumerate() {
            if w.0 < Ratio::zero() || w.0 >= w.1 || w.1 > one {
                return Err(LaurentError::BadIntervals { index });
            }
        }
        for index in 1..intervals.len() {
            if intervals[index].0 < intervals[index - 1].1 {
                return Err(LaurentError::BadIntervals { index });
            }
        }
        Ok(IntervalSet { intervals })
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    /// Exact Lebesgue measure.
    pub fn measure(&self) -> Rat {
        self.intervals
            .iter()
            .fold(Ratio::zero(), |acc, (a, b)| acc + (b - a))
    }

    /// Exact measure of the intersection with `[lo, hi)`.
    pub fn measure_within(&self, lo: Rat, hi: Rat) -> Rat {
        let mut total: Rat = Ratio::zero();
        for (a, b) in &self.intervals {
            let left = if *a > lo { *a } else { lo };
            let right = if *b < hi { *b } else { hi };
            if left < right {
                total = total + (right - left);
            }
        }
        total
    }
}

const MAX_STAGE: u32 = 12;

/// Finite stage of the fat-Cantor construction. Each stage refines both
/// families at once: every maximal gap receives a centered set-piece of
/// fraction f, and every maximal set-piece donates a centered hole of
/// fraction f/2 back to the complement, with f chosen so the cumulative
/// measure lands on `(1/2)(1 - 2^-t)` before the last stage and on exactly
/// 1/2 at the last. Splitting both families keeps every maximal piece
/// narrower than `2^(1-s)` after stage s, so every dyadic cell of that width
/// meets the set and its complement in positive measure.
pub fn fat_cantor_stage(s: u32) -> Result<IntervalSet, LaurentError> {
    if s < 1 || s > MAX_STAGE {
        return Err(LaurentError::BadStage { max: MAX_STAGE });
    }
    let half: Rat = rat(1, 2);
    let two: Rat = rat(2, 1);
    // Alternating maximal pieces of [0,1); the flag marks set membership.
    let mut pieces: Vec<(Rat, Rat, bool)> = vec![(Ratio::zero(), Ratio::one(), false)];
    let mut covered: Rat = Ratio::zero();
    for t in 1..=s {
        let target: Rat = if t < s {
            half * (Ratio::one() - rat(1, 1i128 << t))
        } else {
            half
        };
        let delta = target - covered;
        let gap_total: Rat = Ratio::one() - covered;
        // Net gain: f * gaps - (f/2) * set = delta.
        let frac = delta / (gap_total - covered / two);
        let hole_frac = frac / two;
        let mut next = Vec::with_capacity(3 * pieces.len());
        for (a, b, inside) in pieces {
            let len = b - a;
            let center_frac = if inside { hole_frac } else { frac };
            let ins = center_frac * len;
            let mid = (a + b) / two;
            let lo = mid - ins / two;
            let hi = mid + ins / two;
            next.push((a, lo, inside));
            next.push((lo, hi, !inside));
            next.push((hi, b, inside));
        }
        pieces = next;
        covered = target;
    }
    IntervalSet::new(
        pieces
            .into_iter()
            .filter(|&(_, _, inside)| inside)
            .map(|(a, b, _)| (a, b))
            .collect(),
    )
}

/// Fourier coefficients `c(n) = integral over E of exp(-2 pi i n t) dt` for
/// `n = -max_freq ..= max_freq`, by the exact closed form on each interval.
/// `c(0)` is the measure itself.
pub fn fourier_coefficients(e: &IntervalSet, max_freq: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(2 * max_freq + 1);
    for idx in 0..=(2 * max_freq) {
        let n = idx as i64 - max_freq as i64;
        out.push(fourier_coefficient(e, n));
    }
    out
}

fn fourier_coefficient(e: &IntervalSet, n: i64) -> Complex64 {
    if n == 0 {
        return Complex64::new(e.measure().to_f64().expect("measure fits f64"), 0.0);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let two_pi_n = TAU * n as f64;
    for (a, b) in e.intervals() {
        let af = a.to_f64().expect("endpoint fits f64");
        let bf = b.to_f64().expect("endpoint fits f64");
        // (exp(-2 pi i n a) - exp(-2 pi i n b)) / (2 pi i n)
        let ea = Complex64::from_polar(1.0, -two_pi_n * af);
        let eb = Complex64::from_polar(1.0, -two_pi_n * bf);
        sum += (ea - eb) / Complex64::new(0.0, two_pi_n);
    }
    sum
}

/// Symbol choice for a truncated Laurent matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    /// The indicator of E; the truncation compresses an orthogonal projection.
    Indicator,
    /// `2 chi_E - 1`; for measure 1/2 the truncation has an exactly zero
    /// diagonal and compresses a reflection.
    Reflection,
}

#[derive(Debug, Clone)]
pub struct SymbolSpec {
    pub kind: SymbolKind,
    pub support: IntervalSet,
}

/// A centered `(2N+1) x (2N+1)` Toeplitz truncation with its diagonal
/// coefficient list.
#[derive(Debug, Clone)]
pub struct ToeplitzMatrix {
    pub half_bandwidth: usize,
    /// Coefficients a(-N ..= N), indexed by n + N.
    pub coefficients: Vec<Complex64>,
    pub matrix: Matrix,
}

/// Builds the truncation of the Laurent operator with the given symbol:
/// entry (j, k) is the symbol coefficient a(j - k). Real symbols make the
/// result Hermitian; the reflection symbol at measure 1/2 has an exactly zero
/// diagonal.
pub fn truncated_laurent(spec: &SymbolSpec, half_bandwidth: usize) -> ToeplitzMatrix {
    let n = half_bandwidth;
    let chi = fourier_coefficients(&spec.support, 2 * n);
    let coeff = |off: i64| -> Complex64 {
        let base = chi[(off + 2 * n as i64) as usize];
        match spec.kind {
            SymbolKind::Indicator => base,
            SymbolKind::Reflection => {
                if off == 0 {
                    // 2 m(E) - 1, exact when the measure is exactly 1/2.
                    Complex64::new(2.0 * base.re - 1.0, 0.0)
                } else {
                    base * 2.0
                }
            }
        }
    };
    let dim = 2 * n + 1;
    let mut matrix = Matrix::zeros(dim, dim);
    for j in 0..dim {
        for k in 0..dim {
            matrix.set(j, k, coeff(j as i64 - k as i64));
        }
    }
    let coefficients = (-(n as i64)..=(n as i64)).map(coeff).collect();
    ToeplitzMatrix {
        half_bandwidth: n,
        coefficients,
        matrix,
    }
}

/// Exact per-cell split of mass between E and its complement at resolution h.
#[derive(Debug, Clone)]
pub struct BidensityReport {
    pub cell_width: Rat,
    /// Per cell: (measure inside E, measure outside E).
    pub cells: Vec<(Rat, Rat)>,
    pub min_inside: Rat,
    pub min_outside: Rat,
}

impl BidensityReport {
    /// True when every cell meets both E and its complement in positive
    /// measure, so no continuous function squeezed between the trivial
    /// envelopes exists at this resolution.
    pub fn bidense(&self) -> bool {
        self.min_inside > Ratio::zero() && self.min_outside > Ratio::zero()
    }
}

pub fn bidensity_report(e: &IntervalSet, h: Rat) -> Result<BidensityReport, LaurentError> {
    let inv = h.recip();
    if h <= Ratio::zero() || h > Ratio::one() || !inv.is_integer() {
        return Err(LaurentError::BadCellWidth {
            num: *h.numer(),
            den: *h.denom(),
        });
    }
    let cells_count = inv.to_integer();
    let mut cells = Vec::with_capacity(cells_count as usize);
    let mut min_inside: Option<Rat> = None;
    let mut min_outside: Option<Rat> = None;
    for j in 0..cells_count {
        let lo = rat(j, 1) * h;
        let hi = rat(j + 1, 1) * h;
        let inside = e.measure_within(lo, hi);
        let outside = h - inside;
        min_inside = Some(match min_inside {
            Some(v) if v <= inside => v,
            _ => inside,
        });
        min_outside = Some(match min_outside {
            Some(v) if v <= outside => v,
            _ => outside,
        });
        cells.push((inside, outside));
    }
    Ok(BidensityReport {
        cell_width: h,
        cells,
        min_inside: min_inside.expect("at least one cell"),
        min_outside: min_outside.expect("at least one cell"),
    })
}

/// Interval-set exchange format: flat `[a_num, a_den, b_num, b_den]` rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntervalSetJson {
    pub intervals: Vec<[i128; 4]>,
}

impl From<&IntervalSet> for IntervalSetJson {
    fn from(e: &IntervalSet) -> Self {
        IntervalSetJson {
            intervals: e
                .intervals()
                .iter()
                .map(|(a, b)| [*a.numer(), *a.denom(), *b.numer(), *b.denom()])
                .collect(),
        }
    }
}

impl TryFrom<IntervalSetJson> for IntervalSet {
    type Error = LaurentError;

    fn try_from(j: IntervalSetJson) -> Result<Self, LaurentError> {
        let intervals = j
            .intervals
            .iter()
            .map(|row| (Ratio::new(row[0], row[1]), Ratio::new(row[2], row[3])))
            .collect();
        IntervalSet::new(intervals)
    }
}

/// Coefficient bound `|c(n)| <= (number of intervals) / (pi |n|)`.
pub fn coefficient_decay_bound(e: &IntervalSet, n: i64) -> f64 {
    debug_assert!(n != 0);
    e.intervals().len() as f64 / (std::f64::consts::PI * n.unsigned_abs() as f64)
}
