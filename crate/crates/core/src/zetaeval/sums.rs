use num_complex::Complex64;
use serde::Serialize;

use super::{log_deriv, EvalConfig};
use crate::error::{domain, Result};
use crate::zetalab::{short_window, ZeroTable};

/// Σ_{|γ−t| ≤ window} 1/(s − ρ) with ρ = ½ + iγ and t = Im s.
pub fn zpz_zero_expansion(s: Complex64, table: &ZeroTable, window: f64) -> Result<Complex64> {
    if !(s.re > 0.5 && s.re <= 1.0) {
        return domain(format!("zero expansion needs 1/2 < Re s <= 1, got {}", s.re));
    }
    if !(window >= 0.0) {
        return domain("window must be non-negative");
    }
    let t = s.im;
    table.require_upto(t + window + 1.0)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for &g in &table.ordinates()[table.index_range(t - window, t + window)] {
        sum += 1.0 / (s - Complex64::new(0.5, g));
    }
    Ok(sum)
}

/// The zero expansion over the short window X(t) = C*·log log t / log t.
pub fn short_sum(s: Complex64, table: &ZeroTable, c_star: f64) -> Result<Complex64> {
    let window = short_window(s.im, c_star)?;
    zpz_zero_expansion(s, table, window)
}

/// max |ζ′/ζ(s) − short_sum(s)| / log γ_c over five equally spaced t with
/// |t − γ_c| ≤ A/log γ_c, where s = ½ + 1/log γ_c + it.
///
/// A zero γ_c is admitted to Z(T) when this stays under a fixed threshold.
pub fn short_sum_residual(table: &ZeroTable, center: usize, c_star: f64, a: f64, cfg: &EvalConfig) -> Result<f64> {
    let Some(gc) = table.get(center) else {
        return domain(format!("index {center} outside table of {}", table.len()));
    };
    let lg = gc.ln();
    let mut worst: f64 = 0.0;
    for k in -2..=2 {
        let t = gc + a / lg * k as f64 / 2.0;
        let s = Complex64::new(0.5 + 1.0 / lg, t);
        let diff = log_deriv(s, cfg)? - short_sum(s, table, c_star)?;
        worst = worst.max(diff.norm() / lg);
    }
    Ok(worst)
}

/// Λ(n) by trial division.
pub fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (m as f64).ln()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Λ(n) for n ≤ x and Λ(n)·log(x²/n)/log x for x < n < x²; 0 from x² on.
pub fn lambda_x(n: u64, x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return domain("lambda_x needs x >= 2");
    }
    if n == 0 {
        return domain("lambda_x needs n >= 1");
    }
    Ok(taper(n, x, von_mangoldt(n)))
}

fn taper(n: u64, x: f64, lambda: f64) -> f64 {
    let nf = n as f64;
    if nf >= x * x {
        0.0
    } else if nf <= x {
        lambda
    } else {
        lambda * (x * x / nf).ln() / x.ln()
    }
}

/// Λ(n) for all n ≤ limit, through a smallest-prime-factor table.
#[derive(Debug, Clone)]
pub struct MangoldtSieve {
    spf: Vec<u32>,
}

impl MangoldtSieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Self { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    pub fn lambda(&self, n: usize) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let p = self.spf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirichletConfig {
    pub x: f64,
    pub k: u32,
}

impl DirichletConfig {
    pub fn new(x: f64, k: u32) -> Result<Self> {
        if !(x >= 2.0) {
            return domain(format!("x = {x} must be at least 2"));
        }
        if k == 0 {
            return domain("k must be positive");
        }
        Ok(Self { x, k })
    }

    /// x = T^{1/(100k)}.
    pub fn from_height(t: f64, k: u32) -> Result<Self> {
        if k == 0 || !(t > 1.0) {
            return domain("from_height needs T > 1 and k > 0");
        }
        Self::new(t.powf(1.0 / (100.0 * k as f64)), k)
    }
}

/// A [`DirichletConfig`] with Λ sieved up to x².
#[derive(Debug, Clone)]
pub struct DirichletApprox {
    cfg: DirichletConfig,
    sieve: MangoldtSieve,
}

impl DirichletApprox {
    pub fn new(cfg: DirichletConfig) -> Self {
        let limit = (cfg.x * cfg.x).ceil() as usize;
        Self { cfg, sieve: MangoldtSieve::new(limit) }
    }

    pub fn config(&self) -> &DirichletConfig {
        &self.cfg
    }

    pub fn sieve(&self) -> &MangoldtSieve {
        &self.sieve
    }
}

/// −Σ_{n<x²} Λ_x(n) n^{−s}; with `primes_only` the prime powers p^j, j ≥ 2,
/// are dropped.
pub fn dirichlet_sum(s: Complex64, approx: &DirichletApprox, primes_only: bool) -> Complex64 {
    let x = approx.cfg.x;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 2..=approx.sieve.limit() {
        if primes_only && !approx.sieve.is_prime(n) {
            continue;
        }
        let w = taper(n as u64, x, approx.sieve.lambda(n));
        if w != 0.0 {
            sum += (-s * (n as f64).ln()).exp() * w;
        }
    }
    -sum
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Trapezoid value of ∫_T^{2T} |Σ_{p≤x} a(p) p^{−½−it}|^{2k} dt against
/// k!·T·(Σ |a(p)|²/p)^k. `coeffs` pairs each prime with a(p).
pub fn sound_moment_check(coeffs: &[(u64, Complex64)], k: u32, t: f64, x: f64, step: f64) -> Result<SoundCheck> {
    if k == 0 {
        return domain("k must be positive");
    }
    if !(x >= 2.0) || !(t >= x) {
        return domain("need 2 <= x <= T");
    }
    if x.powi(k as i32) > t / t.ln() {
        return domain(format!("x^k = {} exceeds T/log T = {}", x.powi(k as i32), t / t.ln()));
    }
    if !(step > 0.0) || step > 0.01 * std::f64::consts::TAU / x.ln() {
        return domain("step must resolve the fastest oscillation: step <= 0.01*2π/log x");
    }
    for &(p, _) in coeffs {
        if p as f64 > x || !is_prime(p) {
            return domain(format!("{p} is not a prime <= x"));
        }
    }
    let terms: Vec<(f64, Complex64)> =
        coeffs.iter().map(|&(p, a)| ((p as f64).ln(), a / (p as f64).sqrt())).collect();
    let n = (t / step).ceil() as usize;
    let h = t / n as f64;
    let f = |u: f64| {
        let v: Complex64 = terms.iter().map(|&(lp, c)| c * Complex64::from_polar(1.0, -u * lp)).sum();
        v.norm_sqr().powi(k as i32)
    };
    let mut lhs = 0.5 * (f(t) + f(2.0 * t));
    for i in 1..n {
        lhs += f(t + h * i as f64);
    }
    lhs *= h;
    let mass: f64 = coeffs.iter().map(|&(p, a)| a.norm_sqr() / p as f64).sum();
    let factorial: f64 = (1..=k).map(f64::from).product();
    let rhs = factorial * t * mass.powi(k as i32);
    let ratio = if rhs == 0.0 { 0.0 } else { lhs / rhs };
    Ok(SoundCheck { lhs, rhs, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn von_mangoldt_small() {
        let ln = |v: f64| v.ln();
        let expected = [0.0, 0.0, ln(2.0), ln(3.0), ln(2.0), ln(5.0), 0.0, ln(7.0), ln(2.0), ln(3.0), 0.0];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(von_mangoldt(n as u64), *e, "n = {n}");
        }
        let sieve = MangoldtSieve::new(1000);
        for n in 0..=1000 {
            assert_eq!(sieve.lambda(n), von_mangoldt(n as u64), "n = {n}");
        }
    }

    #[test]
    fn lambda_x_cases() {
        assert_eq!(lambda_x(8, 10.0).unwrap(), 2f64.ln());
        let v = lambda_x(25, 10.0).unwrap();
        assert!((v - 5f64.ln() * 4f64.ln() / 10f64.ln()).abs() < 1e-15);
        assert_eq!(lambda_x(100, 10.0).unwrap(), 0.0);
        assert!(lambda_x(5, 1.5).is_err());
    }

    #[test]
    fn dirichlet_x_two_has_two_terms() {
        let approx = DirichletApprox::new(DirichletConfig::new(2.0, 1).unwrap());
        let s = Complex64::new(2.0, 1.0);
        let expected = -(lambda_x(2, 2.0).unwrap() * (-s * 2f64.ln()).exp()
            + lambda_x(3, 2.0).unwrap() * (-s * 3f64.ln()).exp());
        assert!((dirichlet_sum(s, &approx, false) - expected).norm() < 1e-15);
    }

    #[test]
    fn from_height_relation() {
        let c = DirichletConfig::from_height(1e300, 1).unwrap();
        assert!((c.x - 1e3).abs() < 1e-9);
        assert!(DirichletConfig::from_height(100.0, 1).is_err());
    }

    #[test]
    fn sound_trivial_cases() {
        let zero = [(2, Complex64::new(0.0, 0.0)), (3, Complex64::new(0.0, 0.0))];
        let r = sound_moment_check(&zero, 1, 1000.0, 10.0, 1e-3).unwrap();
        assert_eq!((r.lhs, r.ratio), (0.0, 0.0));

        let a = Complex64::new(1.5, -0.5);
        let r = sound_moment_check(&[(7, a)], 1, 1000.0, 10.0, 1e-2).unwrap();
        let exact = 1000.0 * a.norm_sqr() / 7.0;
        assert!((r.lhs - exact).abs() <= 1e-3 * exact);
    }

    #[test]
    fn sound_preconditions() {
        let one = [(2, Complex64::new(1.0, 0.0))];
        assert!(sound_moment_check(&one, 1, 1000.0, 10.0, 0.1).is_err());
        assert!(sound_moment_check(&one, 3, 1000.0, 10.0, 1e-3).is_err());
        assert!(sound_moment_check(&[(9, Complex64::new(1.0, 0.0))], 1, 1000.0, 10.0, 1e-3).is_err());
        assert!(sound_moment_check(&[(11, Complex64::new(1.0, 0.0))], 1, 1000.0, 10.0, 1e-3).is_err());
    }

    #[test]
    fn zero_expansion_single_zero() {
        let table = ZeroTable::from_ordinates(vec![100.0, 200.0]).unwrap();
        let lt = 100f64.ln();
        let s = Complex64::new(0.5 + 1.0 / lt, 100.0);
        let v = zpz_zero_expansion(s, &table, 1.0).unwrap();
        assert!((v - lt).norm() < 1e-12);
        assert_eq!(zpz_zero_expansion(s, &table, 0.5).unwrap(), v);
        let off = Complex64::new(0.6, 100.5);
        assert_eq!(zpz_zero_expansion(off, &table, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert!(zpz_zero_expansion(Complex64::new(0.5, 100.0), &table, 1.0).is_err());
        assert!(zpz_zero_expansion(Complex64::new(0.7, 199.5), &table, 1.0).is_err());
    }
}
