mod common;

use common::oracles::sine_kernel_density;
use std::f64::consts::TAU;
use zpl_core::polyzeros::{critical_points, expand_clusters, poly_radial_lambdas};
use zpl_core::rmt::{ensemble_statistics, irregular_sum, periodic_gaps, sample_cue_angles, CueSample};

#[test]
fn regeneration_is_bit_identical() {
    for (n, seed) in [(1, 0), (7, 42), (64, 123_456_789)] {
        let a = sample_cue_angles(n, seed).unwrap();
        let b = sample_cue_angles(n, seed).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.angles.len(), n);
        assert!(a.angles.windows(2).all(|w| w[0] <= w[1]));
        assert!(a.angles.iter().all(|x| (0.0..TAU).contains(x)));
    }
    assert_ne!(sample_cue_angles(8, 1).unwrap().angles, sample_cue_angles(8, 2).unwrap().angles);
}

#[test]
fn dimension_bounds() {
    assert!(sample_cue_angles(0, 1).is_err());
    assert!(sample_cue_angles(257, 1).is_err());
    assert!(ensemble_statistics(1, 3, 0).is_err());
}

#[test]
fn one_by_one_is_uniform() {
    let mut u: Vec<f64> = (0..10_000u64).map(|s| sample_cue_angles(1, s).unwrap().angles[0] / TAU).collect();
    u.sort_by(f64::total_cmp);
    let n = u.len() as f64;
    let ks = u
        .iter()
        .enumerate()
        .map(|(i, &v)| ((i + 1) as f64 / n - v).abs().max((v - i as f64 / n).abs()))
        .fold(0.0, f64::max);
    assert!(ks < 0.02, "KS distance {ks}");
}

#[test]
fn gaps_sum_to_the_circle() {
    for seed in 0..20 {
        let s = sample_cue_angles(30, seed).unwrap();
        let lambdas = periodic_gaps(&s).unwrap();
        assert_eq!(lambdas.len(), 30);
        let total: f64 = lambdas.iter().sum::<f64>() / 30.0;
        assert!((total - TAU).abs() < 1e-12);
        let mean = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
        assert!((mean - TAU).abs() < 1e-12);
    }
}

#[test]
fn pair_correlation_follows_the_sine_kernel() {
    let n = 50;
    let samples = 2000;
    let width = 0.2;
    let bins = 16; // [0, 3.2)
    let mut hist = vec![0usize; bins];
    for seed in 0..samples {
        let a = sample_cue_angles(n, seed).unwrap().angles;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = (a[j] - a[i]).rem_euclid(TAU);
                let x = d.min(TAU - d) * n as f64 / TAU;
                let b = (x / width) as usize;
                if b < bins {
                    hist[b] += 1;
                }
            }
        }
    }
    for (b, &count) in hist.iter().enumerate() {
        let (lo, hi) = (b as f64 * width, (b + 1) as f64 * width);
        if lo < 0.2 || hi > 3.0 + 1e-9 {
            continue;
        }
        // each unordered distance is seen from both ends, on both sides
        let density = count as f64 / (samples as f64 * n as f64 * 2.0 * width);
        let steps = 200;
        let oracle = (0..steps)
            .map(|k| sine_kernel_density(lo + (k as f64 + 0.5) * width / steps as f64))
            .sum::<f64>()
            / steps as f64;
        assert!((density - oracle).abs() < 0.05, "bin [{lo:.1}, {hi:.1}): {density:.4} vs {oracle:.4}");
    }
}

#[test]
fn degree_two_closed_form() {
    for seed in 0..25 {
        let e = ensemble_statistics(2, 1, seed).unwrap();
        let s = sample_cue_angles(2, seed).unwrap();
        let half = (s.angles[1] - s.angles[0]) / 2.0;
        let expected = 2.0 * (1.0 - half.cos().abs());
        assert_eq!(e.lambda_primes.len(), 1);
        assert!((e.lambda_primes[0] - expected).abs() < 1e-12, "{} vs {expected}", e.lambda_primes[0]);
        let p = s.points();
        let crit = critical_points(&p, 1e-10).unwrap();
        assert!((crit[0].center - (p[0] + p[1]) / 2.0).norm() < 1e-14);
    }
}

#[test]
fn ensemble_pool_sizes() {
    let e = ensemble_statistics(12, 5, 77).unwrap();
    assert_eq!(e.lambdas.len(), 60);
    assert_eq!(e.lambda_primes.len(), 55);
    assert_eq!(e.seeds, vec![77, 78, 79, 80, 81]);
    assert!(e.lambda_primes.iter().all(|&l| l >= -1e-9));
    let empty = ensemble_statistics(12, 0, 77).unwrap();
    assert!(empty.lambdas.is_empty() && empty.lambda_primes.is_empty() && empty.seeds.is_empty());
    assert_eq!(ensemble_statistics(12, 5, 77).unwrap(), e);
}

#[test]
fn statistics_are_rotation_invariant() {
    let s = sample_cue_angles(40, 9).unwrap();
    for phi in [0.3, 2.0, 5.9] {
        let mut turned: Vec<f64> = s.angles.iter().map(|a| (a + phi).rem_euclid(TAU)).collect();
        turned.sort_by(f64::total_cmp);
        let r = CueSample { dimension: 40, angles: turned, seed: s.seed };
        let mut g0 = periodic_gaps(&s).unwrap();
        let mut g1 = periodic_gaps(&r).unwrap();
        g0.sort_by(f64::total_cmp);
        g1.sort_by(f64::total_cmp);
        assert!(g0.iter().zip(&g1).all(|(a, b)| (a - b).abs() < 1e-10));

        let lp = |x: &CueSample| {
            let c = expand_clusters(&critical_points(&x.points(), 1e-8).unwrap());
            poly_radial_lambdas(&c, 40, true).unwrap()
        };
        assert!(lp(&s).iter().zip(&lp(&r)).all(|(a, b)| (a - b).abs() < 1e-10));

        let j0 = 5;
        let target = (s.angles[j0] + phi).rem_euclid(TAU);
        let j1 = r.angles.iter().position(|&a| (a - target).abs() < 1e-12).unwrap();
        let v0 = irregular_sum(&s.angles, j0, 0.1, 3.0, 40.0 / TAU).unwrap();
        let v1 = irregular_sum(&r.angles, j1, 0.1, 3.0, 40.0 / TAU).unwrap();
        assert!((v0 - v1).abs() < 1e-10);
    }
}

#[test]
fn irregular_sum_examples() {
    let v = irregular_sum(&[0.0, 1.0, 2.0], 0, 0.0, 3.0, 1.0).unwrap();
    assert!((v + 1.5).abs() < 1e-15);
    let sym = [1.0, 1.5, 2.0];
    assert!(irregular_sum(&sym, 1, 0.0, 3.0, 1.0).unwrap().abs() < 1e-15);
    // across angle 0 the difference wraps
    let w = irregular_sum(&[0.1, TAU - 0.1], 0, 0.0, 1.0, 1.0).unwrap();
    assert!((w - 5.0).abs() < 1e-9);
    assert!(irregular_sum(&sym, 3, 0.0, 1.0, 1.0).is_err());
    assert!(irregular_sum(&sym, 0, 1.0, 1.0, 1.0).is_err());
}

#[test]
fn largest_irregular_sum_is_finite() {
    // angles have mean spacing 2π/N, so N plays the role of log γ and the
    // cutoffs 1/log γ < |Δ| < 1 carry over unscaled
    let n = 100;
    let mut worst: f64 = 0.0;
    for seed in 0..200 {
        let a = sample_cue_angles(n, seed).unwrap().angles;
        for j in 0..n {
            let v = irregular_sum(&a, j, 1.0 / n as f64, 1.0, 1.0).unwrap();
            worst = worst.max(v.abs() / n as f64);
        }
    }
    println!("max |irregular sum| / N over 200 CUE(100) samples: {worst:.3}");
    assert!(worst.is_finite());
}
