//! Seeded generators for test fixtures and experiment inputs. Every consumer
//! records the seed it passed in, so runs are reproducible bit for bit.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frames::GramProjection;
use crate::matrix::{hermitian_eig, operator_norm, Matrix};
use crate::paving::Partition;
use crate::symmetry::SymmetryVector;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random Hermitian matrix with entries uniform in the unit square.
pub fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
        for j in (i + 1)..n {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    m
}

/// Random Hermitian contraction: a random Hermitian matrix rescaled to a
/// random norm in (0, 1].
pub fn random_hermitian_contraction(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let m = random_hermitian(n, rng);
    let norm = operator_norm(&m);
    let target = rng.gen_range(0.2..1.0);
    if norm == 0.0 {
        m
    } else {
        m.scale(target / norm)
    }
}

/// Random Hermitian contraction with an exactly zero diagonal.
pub fn random_zero_diagonal_contraction(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = random_hermitian_contraction(n, rng);
    for i in 0..n {
        m.set(i, i, Complex64::new(0.0, 0.0));
    }
    let norm = operator_norm(&m);
    if norm > 1.0 {
        m = m.scale(1.0 / (norm + 1e-12));
    }
    m
}

/// Random rank-k orthogonal projection, built from the eigenbasis of a random
/// Hermitian matrix.
pub fn random_projection(n: usize, k: usize, rng: &mut ChaCha8Rng) -> GramProjection {
    assert!(k >= 1 && k <= n);
    let h = random_hermitian(n, rng);
    let dec = hermitian_eig(&h).expect("random Hermitian decomposes");
    let mut v = Matrix::zeros(n, k);
    for (col, src) in ((n - k)..n).enumerate() {
        for i in 0..n {
            v.set(i, col, dec.basis.get(i, src));
        }
    }
    let gram = v.mul(&v.adjoint()).expect("dims");
    GramProjection::new(gram.hermitize().expect("square"))
        .expect("V V* of an isometry is a projection")
}

/// Random partition of 0..n into at most r blocks (uniform labels).
pub fn random_partition(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Partition {
    loop {
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        let p = Partition::from_assignment(&labels);
        if p.r() >= 1 {
            return p;
        }
    }
}

/// Random sign vector (not canonicalized).
pub fn random_symmetry(n: usize, rng: &mut ChaCha8Rng) -> SymmetryVector {
    let signs: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    SymmetryVector::new(signs).expect("signs are +-1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;

    #[test]
    fn seeded_generators_reproduce() {
        let a = random_hermitian(5, &mut rng(3));
        let b = random_hermitian(5, &mut rng(3));
        assert_eq!(a, b);
    }

    #[test]
    fn contraction_is_contraction() {
        for seed in 0..5 {
            let m = random_hermitian_contraction(6, &mut rng(seed));
            assert!(operator_norm(&m) <= 1.0 + tol::CONTRACTION_SLACK);
            m.require_hermitian().unwrap();
        }
    }

    #[test]
    fn random_projection_is_projection_of_requested_rank() {
        for seed in 0..5 {
            let p = random_projection(7, 3, &mut rng(seed));
            assert_eq!(p.rank, 3);
        }
    }
}
