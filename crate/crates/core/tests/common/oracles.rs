//! Reference implementations that share no code with the library.

use num_complex::Complex64;
use std::f64::consts::PI;

/// ζ(s) = η(s)/(1 − 2^{1−s}), with the alternating series for η summed to
/// N ≳ 20|s| terms and its tail removed by repeated averaging of
/// consecutive partial sums.
pub fn zeta_eta(s: Complex64) -> Complex64 {
    const AVERAGES: usize = 16;
    let n = (20.0 * s.norm()).max(2000.0) as usize;
    let mut partial = Complex64::new(0.0, 0.0);
    let mut tail = Vec::with_capacity(AVERAGES + 1);
    for k in 1..=n + AVERAGES {
        let term = (-s * (k as f64).ln()).exp();
        if k % 2 == 1 {
            partial += term;
        } else {
            partial -= term;
        }
        if k >= n {
            tail.push(partial);
        }
    }
    while tail.len() > 1 {
        tail = tail.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    tail[0] / (one - two.powc(one - s))
}

/// log Γ(z) for Re z > 0 (any branch; only exp of it is used), by upward
/// recurrence and the Stirling series.
pub fn ln_gamma(mut z: Complex64) -> Complex64 {
    const B: [f64; 8] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0];
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 20.0 {
        shift -= z.ln();
        z += 1.0;
    }
    let mut v = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln();
    let z2 = z * z;
    let mut zp = z;
    for (k, b) in B.iter().enumerate() {
        let k = (k + 1) as f64;
        v += *b / (2.0 * k * (2.0 * k - 1.0)) / zp;
        zp *= z2;
    }
    v + shift
}

/// χ(s) with ζ(s) = χ(s)·ζ(1 − s).
pub fn chi(s: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let pi = Complex64::new(PI, 0.0);
    two.powc(s) * pi.powc(s - one) * (s * PI / 2.0).sin() * ln_gamma(one - s).exp()
}

/// Riemann–Siegel θ(t) = arg Γ(1/4 + it/2) − (t/2)·log π (continuous in t).
pub fn rs_theta(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, t / 2.0)).im - t / 2.0 * PI.ln()
}

/// Sine-kernel pair density 1 − (sin πx / πx)².
pub fn sine_kernel_density(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let s = (PI * x).sin() / (PI * x);
    1.0 - s * s
}

/// Λ(n) for n ≤ limit by marking prime powers from an Eratosthenes sieve.
pub fn mangoldt_table(limit: usize) -> Vec<f64> {
    let mut composite = vec![false; limit + 1];
    let mut out = vec![0.0; limit + 1];
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= limit {
            composite[m] = true;
            m += p;
        }
        let lp = (p as f64).ln();
        let mut q = p;
        while q <= limit {
            out[q] = lp;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    out
}

/// 200 points spread over 0.4 ≤ Re s ≤ 3, 0 ≤ Im s ≤ 5000, avoiding the
/// pole and the line Re s = 1 where the eta denominator vanishes.
pub fn oracle_grid() -> Vec<Complex64> {
    let mut pts = Vec::new();
    let sigmas = [0.4, 0.55, 0.75, 0.9, 1.25, 1.6, 2.0, 2.5, 3.0, 0.65];
    for (i, &sigma) in sigmas.iter().enumerate() {
        for k in 0..20 {
            // quadratic spacing puts more points at low height
            let u = (k as f64 + 0.37 * i as f64 / sigmas.len() as f64) / 19.4;
            pts.push(Complex64::new(sigma, 1.0 + 4995.0 * u * u));
        }
    }
    pts
}
