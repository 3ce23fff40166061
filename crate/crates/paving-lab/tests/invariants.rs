//! Cross-module invariants on seeded random inputs: decomposition round
//! trips, norm consistency, dual-path agreement, search-oracle consistency,
//! and the certificate soundness checks that tie the closed-form bounds to
//! exhaustive search results.

use paving_lab::frames::{
    conference_projection, find_difference_set, gram_projection, harmonic_frame,
    is_difference_set, paley_conference, GramProjection,
};
use paving_lab::laurent::{fat_cantor_stage, fourier_coefficients, rat, bidensity_report};
use paving_lab::matrix::{
    hermitian_eig, hermitian_eigenvalues, operator_norm, principal_compression, Matrix,
};
use paving_lab::paving::{
    bhkw_partition, exhaustive_pave, exhaustive_pave_with_budget, local_search_pave, paving_norm,
    riesz_paving_bound, Partition,
};
use paving_lab::sampling;
use paving_lab::symmetry::{psp_norm, psp_norm_via_spectra};
use paving_lab::transforms::{dilate, projection_from_reflection};
use paving_lab::tol;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;

#[test]
fn eigendecomposition_round_trip_on_seeded_hermitians() {
    let mut rng = sampling::rng(0xE16);
    for trial in 0..200 {
        let n = 1 + (trial % 32);
        let m = sampling::random_hermitian(n, &mut rng);
        let dec = hermitian_eig(&m).unwrap();
        assert!(
            dec.reconstruction_defect(&m) <= tol::EIG_RECON_PER_N * n as f64,
            "trial {trial}, n = {n}"
        );
        assert!(dec.unitarity_defect() <= tol::UNITARITY, "trial {trial}");
        for w in dec.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }
}

#[test]
fn operator_norm_consistency() {
    let mut rng = sampling::rng(0x0401);
    for trial in 0..50 {
        let n = 2 + (trial % 10);
        let m = sampling::random_hermitian(n, &mut rng);
        let a = operator_norm(&m);
        let b = operator_norm(&m.adjoint());
        assert!((a - b).abs() <= 1e-10);
        let eigs = hermitian_eigenvalues(&m).unwrap();
        let spectral = eigs.iter().map(|l| l.abs()).fold(0.0, f64::max);
        assert!((a - spectral).abs() <= 1e-10, "trial {trial}");
    }
}

#[test]
fn compression_monotone_on_nested_blocks_of_psd_matrices() {
    let mut rng = sampling::rng(0xC0);
    for trial in 0..40 {
        let n = 4 + (trial % 6);
        let h = sampling::random_hermitian(n, &mut rng);
        let psd = h.mul(&h.adjoint()).unwrap().hermitize().unwrap();
        let inner: Vec<usize> = (0..n / 2).collect();
        let outer: Vec<usize> = (0..(n / 2 + rng.gen_range(1..=n - n / 2))).collect();
        let small = operator_norm(&principal_compression(&psd, &inner).unwrap());
        let large = operator_norm(&principal_compression(&psd, &outer).unwrap());
        assert!(small <= large + 1e-10, "trial {trial}");
    }
}

#[test]
fn psd_sqrt_fixes_random_projections() {
    let mut rng = sampling::rng(0x50D);
    for trial in 0..20 {
        let n = 2 + (trial % 7);
        let k = 1 + (trial % n);
        let p = sampling::random_projection(n, k, &mut rng);
        let s = paving_lab::matrix::psd_sqrt(&p.gram).unwrap();
        assert!(s.sub(&p.gram).unwrap().max_abs() <= tol::PSD_SQRT_PER_N);
    }
}

#[test]
fn harmonic_equiangularity_matches_difference_set_search() {
    // Over every (n, k) in reach, the harmonic frame on the canonical
    // difference set is equiangular, and a frame on a non-difference-set is
    // not (whenever a difference set with those parameters exists at all).
    for n in 4..=15usize {
        for k in 2..n {
            let found = match find_difference_set(n, k, None) {
                Ok(v) => v,
                Err(_) => continue,
            };
            if let Some(ds) = found {
                let frame = harmonic_frame(n, &ds.elements).unwrap();
                assert!(
                    frame.equiangular_c.is_some(),
                    "difference set ({n},{k}) must give an equiangular frame"
                );
                assert_eq!(is_difference_set(n, &ds.elements), Some(ds.lambda));
            }
            // A frequency block 0..k is almost never a difference set; when
            // it is not, the frame must not be equiangular.
            let block: Vec<usize> = (0..k).collect();
            if is_difference_set(n, &block).is_none() && k < n - 1 {
                let frame = harmonic_frame(n, &block).unwrap();
                assert!(
                    frame.equiangular_c.is_none(),
                    "(n,k) = ({n},{k}) frequency block should not be equiangular"
                );
            }
        }
    }
}

#[test]
fn local_search_matches_exhaustive_on_most_seeded_contractions() {
    let mut rng = sampling::rng(0x10CA1);
    let mut matched = 0usize;
    let trials = 100usize;
    for trial in 0..trials {
        let n = 4 + (trial % 7); // up to 10
        let t = sampling::random_zero_diagonal_contraction(n, &mut rng);
        let best = exhaustive_pave(&t, 2).unwrap();
        let found = local_search_pave(&t, 2, trial as u64, 8).unwrap();
        assert!(
            found.epsilon >= best.epsilon - 1e-12,
            "local search cannot beat the exhaustive optimum (trial {trial})"
        );
        if found.epsilon <= best.epsilon + 1e-9 {
            matched += 1;
        }
    }
    assert!(
        matched >= 90,
        "local search matched the optimum only {matched}/{trials} times"
    );
}

#[test]
fn conference_certificates_are_sound_for_small_orders() {
    for q in [5u64, 13, 17] {
        let c = paley_conference(q).unwrap();
        let n = c.order;
        let reflection = c.reflection();
        let paved = exhaustive_pave_with_budget(&reflection, 2, 1 << 17).unwrap();
        let bound = (((n / 2 - 1) as f64) / ((n - 1) as f64)).sqrt();
        assert!(
            paved.epsilon >= bound - 1e-9,
            "order {n}: epsilon {} below bound {bound}",
            paved.epsilon
        );
    }
}

#[test]
fn big_block_soundness_for_conference_projection() {
    let p = conference_projection(&paley_conference(5).unwrap()).unwrap();
    // Every 2-partition of six indices has a block of at least three.
    for mask in 0..32u64 {
        let labels: Vec<usize> = (0..6)
            .map(|i| {
                if i == 0 {
                    0
                } else {
                    ((mask >> (i - 1)) & 1) as usize
                }
            })
            .collect();
        let p2 = Partition::from_assignment(&labels);
        let largest = p2.blocks().iter().map(Vec::len).max().unwrap();
        assert!(largest >= 3);
    }
    // Every block of size >= 4 has compression norm 1.
    let idx: Vec<usize> = (0..6).collect();
    for a in 0..6 {
        for b in (a + 1)..6 {
            let block: Vec<usize> = idx.iter().copied().filter(|&i| i != a && i != b).collect();
            let norm = operator_norm(&principal_compression(&p.gram, &block).unwrap());
            assert!((norm - 1.0).abs() <= 1e-9, "block {block:?}");
        }
    }
}

#[test]
fn bhkw_inequalities_hold_on_seeded_weights() {
    let mut rng = sampling::rng(0xB4);
    for trial in 0..100 {
        let n = 4 + (trial % 21); // up to 24
        let r = 2 + (trial % 2);
        let mut w = Matrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = rng.gen_range(0.0..1.0);
                w.set(i, j, Complex64::new(v, 0.0));
                w.set(j, i, Complex64::new(v, 0.0));
            }
        }
        let partition = bhkw_partition(&w, r).unwrap();
        let blocks = partition.blocks();
        let row_sum = |i: usize, b: &[usize]| -> f64 {
            b.iter()
                .filter(|&&m| m != i)
                .map(|&m| w.get(i, m).re)
                .sum()
        };
        for (bi, block) in blocks.iter().enumerate() {
            for &i in block {
                let own = row_sum(i, block);
                for (bj, other) in blocks.iter().enumerate() {
                    if bi != bj {
                        assert!(
                            own <= row_sum(i, other) + tol::ETE_SLACK,
                            "trial {trial}: index {i}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn riesz_bound_equals_complement_paving_norm() {
    let mut rng = sampling::rng(0x51E52);
    for trial in 0..100 {
        let n = 3 + (trial % 10); // up to 12
        let k = 1 + (trial % n);
        let g = sampling::random_projection(n, k, &mut rng);
        let p = sampling::random_partition(n, 2 + trial % 3, &mut rng);
        let riesz = riesz_paving_bound(&g, &p).unwrap();
        let complement = Matrix::identity(n).sub(&g.gram).unwrap();
        let paved = paving_norm(&complement, &p).unwrap();
        assert!(
            (riesz.epsilon - paved.epsilon).abs() <= 1e-9,
            "trial {trial}: {} vs {}",
            riesz.epsilon,
            paved.epsilon
        );
    }
}

#[test]
fn dilation_pavings_restrict_to_the_contraction() {
    let mut rng = sampling::rng(0xD11A);
    for trial in 0..30 {
        let n = 2 + (trial % 7); // up to 8
        let a = sampling::random_hermitian_contraction(n, &mut rng);
        let r = dilate(&a).unwrap();
        // The dilated matrix has 2n <= 16 indices; raise the budget past the
        // 2^15 two-block partitions.
        let paved = exhaustive_pave_with_budget(&r, 2, 1 << 15).unwrap();
        let restricted = paved.partition.restrict_prefix(n).unwrap();
        let eps_a = paving_norm(&a, &restricted).unwrap().epsilon;
        assert!(
            eps_a <= paved.epsilon + 1e-9,
            "trial {trial}: {} vs {}",
            eps_a,
            paved.epsilon
        );
    }
}

#[test]
fn affine_norm_transfer_on_reflection_compressions() {
    let mut rng = sampling::rng(0xAFF1);
    for trial in 0..30 {
        let n = 2 + (trial % 6);
        let a = sampling::random_hermitian_contraction(n, &mut rng);
        let r = dilate(&a).unwrap();
        let p = projection_from_reflection(&r).unwrap();
        let block: Vec<usize> = (0..2 * n).filter(|_| rng.gen_bool(0.5)).collect();
        if block.is_empty() {
            continue;
        }
        let norm_r = operator_norm(&principal_compression(&r, &block).unwrap());
        let norm_p = operator_norm(&principal_compression(&p, &block).unwrap());
        assert!(
            norm_p <= (1.0 + norm_r) / 2.0 + 1e-10,
            "trial {trial}: {norm_p} vs {norm_r}"
        );
    }
}

#[test]
fn psp_dual_paths_agree_on_seeded_projections() {
    let mut rng = sampling::rng(0xD0A1);
    for trial in 0..200 {
        let n = 2 + (trial % 11); // up to 12
        let k = 1 + (trial % n);
        let p = sampling::random_projection(n, k, &mut rng);
        let s = sampling::random_symmetry(n, &mut rng);
        let direct = psp_norm(&p, &s).unwrap();
        let spectral = psp_norm_via_spectra(&p, &s).unwrap();
        assert!(
            (direct - spectral).abs() <= tol::PSP_DUAL_PATH,
            "trial {trial} (n={n}, k={k}): {direct} vs {spectral}"
        );
    }
}

#[test]
fn interval_symmetries_stay_above_the_counterexample_threshold() {
    // Besides random sampling, probe the (31,6) equiangular Gram with every
    // balanced cyclic interval symmetry: minus-blocks {s, .., s+len-1 mod 31}
    // for both balanced lengths and all 31 starts.
    let ds = find_difference_set(31, 6, None).unwrap().unwrap();
    let frame = harmonic_frame(31, &ds.elements).unwrap();
    let gram = gram_projection(&frame).unwrap();
    let threshold = 12.0 / 31.0 + 1e-6;
    let mut probed = 0usize;
    for len in [15usize, 16] {
        for start in 0..31usize {
            let mut signs = vec![1i8; 31];
            for offset in 0..len {
                signs[(start + offset) % 31] = -1;
            }
            let s = paving_lab::symmetry::SymmetryVector::new(signs).unwrap();
            let value = psp_norm(&gram, &s).unwrap();
            assert!(
                value > threshold,
                "interval symmetry start {start}, length {len}: {value}"
            );
            probed += 1;
        }
    }
    assert_eq!(probed, 62);
}

#[test]
fn fourier_coefficients_match_quadrature() {
    // Composite Simpson on each interval of the smooth integrand, as an
    // independent oracle for the closed form.
    fn quad_coefficient(e: &paving_lab::laurent::IntervalSet, n: i64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (a, b) in e.intervals() {
            let a = a.to_f64().unwrap();
            let b = b.to_f64().unwrap();
            let panels = 2000usize;
            let h = (b - a) / panels as f64;
            let f = |t: f64| Complex64::from_polar(1.0, -std::f64::consts::TAU * n as f64 * t);
            let mut sum = f(a) + f(b);
            for i in 1..panels {
                let t = a + i as f64 * h;
                sum += f(t) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            total += sum * (h / 3.0);
        }
        total
    }

    for stage in [1u32, 2, 3] {
        let e = fat_cantor_stage(stage).unwrap();
        let max_freq = 8usize;
        let closed = fourier_coefficients(&e, max_freq);
        for n in -(max_freq as i64)..=(max_freq as i64) {
            if n == 0 {
                continue;
            }
            let q = quad_coefficient(&e, n);
            let c = closed[(n + max_freq as i64) as usize];
            assert!(
                (q - c).norm() <= 1e-9,
                "stage {stage}, n = {n}: {c} vs {q}"
            );
        }
    }
}

#[test]
fn fat_cantor_bidensity_at_native_resolution() {
    for s in [2u32, 3, 4, 5] {
        let e = fat_cantor_stage(s).unwrap();
        let h = rat(1, 1i128 << (s - 1)); // 2^(1-s)
        let rep = bidensity_report(&e, h).unwrap();
        assert!(rep.bidense(), "stage {s}");
    }
}

#[test]
fn truncation_nesting_monotone_norms() {
    use paving_lab::laurent::{truncated_laurent, SymbolKind, SymbolSpec};
    let spec = SymbolSpec {
        kind: SymbolKind::Reflection,
        support: fat_cantor_stage(3).unwrap(),
    };
    let mut last = 0.0f64;
    for nb in [1usize, 2, 4, 8, 16] {
        let t = truncated_laurent(&spec, nb);
        // The smaller truncation is a principal compression of the larger.
        let norm = operator_norm(&t.matrix);
        assert!(norm + 1e-10 >= last, "bandwidth {nb}");
        last = norm;
    }
}

#[test]
fn truncations_pass_paving_validation() {
    use paving_lab::laurent::{truncated_laurent, SymbolKind, SymbolSpec};
    let spec = SymbolSpec {
        kind: SymbolKind::Reflection,
        support: fat_cantor_stage(3).unwrap(),
    };
    let t = truncated_laurent(&spec, 6);
    t.matrix.require_hermitian().unwrap();
    for z in t.matrix.diagonal() {
        assert_eq!(z, Complex64::new(0.0, 0.0));
    }
    let paved = local_search_pave(&t.matrix, 2, 0, 4).unwrap();
    assert!(paved.epsilon <= 1.0 + 1e-9);
}

#[test]
fn gram_projection_of_harmonic_frames_is_projection() {
    for (n, freqs) in [(6usize, vec![0usize, 1, 2]), (9, vec![0, 1, 2, 3, 4, 5, 6]), (12, vec![0, 2, 5])] {
        let f = harmonic_frame(n, &freqs).unwrap();
        assert!(f.parseval_defect() <= tol::PARSEVAL);
        let g = gram_projection(&f).unwrap();
        assert_eq!(g.rank, freqs.len());
        let _ = GramProjection::new(g.gram.clone()).unwrap();
    }
}
