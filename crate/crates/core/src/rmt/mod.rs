//! Eigenangles of Haar-random unitary matrices (the circular unitary
//! ensemble) and ensemble statistics of their characteristic polynomials.
//!
//! Sampling: an N×N matrix of independent standard complex Gaussians drawn
//! by Box–Muller from a ChaCha8 stream seeded with `seed_from_u64(seed)`,
//! orthonormalized column by column with modified Gram–Schmidt, then
//! diagonalized by a complex Schur decomposition.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

use crate::error::{domain, Error, Result};
use crate::polyzeros::{critical_points, expand_clusters, poly_gap_lambdas, poly_radial_lambdas, ZeroConfiguration};

/// Largest matrix dimension sampled.
pub const MAX_DIMENSION: usize = 256;
/// Root-finder tolerance used for ensemble derivative zeros.
pub const ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CueSample {
    pub dimension: usize,
    /// Sorted, in [0, 2π).
    pub angles: Vec<f64>,
    pub seed: u64,
}

impl CueSample {
    pub fn configuration(&self) -> Result<ZeroConfiguration> {
        ZeroConfiguration::from_angles(self.angles.clone(), true, format!("cue-n{}-seed{}", self.dimension, self.seed))
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect()
    }
}

fn uniform_open(rng: &mut ChaCha8Rng) -> f64 {
    // 53 random bits mapped into (0, 1]
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A standard complex Gaussian (independent N(0,1) real and imaginary parts).
fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let u1 = uniform_open(rng);
    let u2 = uniform_open(rng);
    Complex64::from_polar((-2.0 * u1.ln()).sqrt(), TAU * u2)
}

/// The Haar unitary for `seed`, as used by [`sample_cue_angles`].
pub fn haar_unitary(n: usize, seed: u64) -> Result<DMatrix<Complex64>> {
    if n == 0 || n > MAX_DIMENSION {
        return domain(format!("dimension must be in 1..={MAX_DIMENSION}, got {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // column-major fill
    let mut q = DMatrix::from_fn(n, n, |_, _| Complex64::new(0.0, 0.0));
    for j in 0..n {
        for i in 0..n {
            q[(i, j)] = complex_gaussian(&mut rng);
        }
    }
    // Gram–Schmidt leaves R with a positive real diagonal, which is the
    // phase convention that makes Q Haar distributed.
    for j in 0..n {
        for k in 0..j {
            let r: Complex64 = (0..n).map(|i| q[(i, k)].conj() * q[(i, j)]).sum();
            for i in 0..n {
                let v = q[(i, k)];
                q[(i, j)] -= r * v;
            }
        }
        let norm = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Numerical("rank-deficient Gaussian matrix".into()));
        }
        for i in 0..n {
            q[(i, j)] /= norm;
        }
    }
    Ok(q)
}

/// Sorted eigenangles of a Haar-random N×N unitary.
pub fn sample_cue_angles(n: usize, seed: u64) -> Result<CueSample> {
    let q = haar_unitary(n, seed)?;
    let schur = Schur::try_new(q, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical(format!("Schur iteration failed for seed {seed}")))?;
    let (_, t) = schur.unpack();
    let mut angles: Vec<f64> = t
        .diagonal()
        .iter()
        .map(|z| {
            let a = z.arg();
            if a < 0.0 {
                (a + TAU) % TAU
            } else {
                a
            }
        })
        .collect();
    angles.sort_by(f64::total_cmp);
    Ok(CueSample { dimension: n, angles, seed })
}

/// N·(θ_{j+1} − θ_j) around the full circle, including the gap across 0.
pub fn periodic_gaps(sample: &CueSample) -> Result<Vec<f64>> {
    poly_gap_lambdas(&sample.configuration()?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleResult {
    pub dimension: usize,
    pub sample_count: usize,
    pub lambdas: Vec<f64>,
    pub lambda_primes: Vec<f64>,
    pub seeds: Vec<u64>,
}

/// Pooled λ (periodic gaps) and λ′ = N(1 − |z|) over the derivative zeros of
/// the characteristic polynomials of `sample_count` samples with seeds
/// `base_seed`, `base_seed + 1`, ….
pub fn ensemble_statistics(n: usize, sample_count: usize, base_seed: u64) -> Result<EnsembleResult> {
    if n < 2 {
        return domain("ensemble needs N >= 2");
    }
    let seeds: Vec<u64> = (0..sample_count as u64).map(|i| base_seed.wrapping_add(i)).collect();
    let per_sample: Vec<(Vec<f64>, Vec<f64>)> = seeds
        .par_iter()
        .map(|&seed| {
            one_sample(n, seed).map_err(|e| Error::Sample { seed, source: Box::new(e) })
        })
        .collect::<Result<_>>()?;
    let mut lambdas = Vec::with_capacity(sample_count * n);
    let mut lambda_primes = Vec::with_capacity(sample_count * (n - 1));
    for (l, lp) in per_sample {
        lambdas.extend(l);
        lambda_primes.extend(lp);
    }
    Ok(EnsembleResult { dimension: n, sample_count, lambdas, lambda_primes, seeds })
}

fn one_sample(n: usize, seed: u64) -> Result<(Vec<f64>, Vec<f64>)> {
    let sample = sample_cue_angles(n, seed)?;
    let gaps = periodic_gaps(&sample)?;
    let crit = expand_clusters(&critical_points(&sample.points(), ROOT_TOL)?);
    let radial = poly_radial_lambdas(&crit, n, false)?;
    Ok((gaps, radial))
}

/// Σ 1/(u_j − u_n) over n ≠ j with inner < |u_j − u_n| < outer, where
/// u = scale·angle and angle differences are wrapped into (−π, π].
pub fn irregular_sum(angles: &[f64], j: usize, inner: f64, outer: f64, scale: f64) -> Result<f64> {
    if j >= angles.len() {
        return domain(format!("index {j} outside {} angles", angles.len()));
    }
    if !(inner >= 0.0 && outer > inner) {
        return domain("need 0 <= inner < outer");
    }
    let mut sum = 0.0;
    for (k, &a) in angles.iter().enumerate() {
        if k == j {
            continue;
        }
        let d = scale * wrap(angles[j] - a);
        if d.abs() > inner && d.abs() < outer {
            sum += 1.0 / d;
        }
    }
    Ok(sum)
}

fn wrap(d: f64) -> f64 {
    let r = d.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}
