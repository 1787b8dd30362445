use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

use super::{log_deriv, zeta_d1_d2, zeta_derivs, EvalConfig};
use crate::error::{domain, Error, Result};
use crate::zetalab::{classify_case, m_truncated_at, nearest_zero, CaseTag, ZeroTable, DEFAULT_C_STAR, DEFAULT_EPS};

/// Left edge of the contour used to count zeros of ζ′.
pub const CONTOUR_SIGMA_LO: f64 = 0.25;
/// Right edge; nonreal zeros of ζ′ stay left of σ = 3.
pub const CONTOUR_SIGMA_HI: f64 = 3.0;

const NEWTON_MAX_ITER: usize = 60;
const NEWTON_MAX_STEP: f64 = 0.5;
const NEWTON_ACCEPT: f64 = 1e-8;
const DEDUP: f64 = 1e-6;
const SEED_STEP: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecordConfig {
    pub eps: f64,
    pub c_star: f64,
}

impl Default for RecordConfig {
    fn default() -> Self {
        Self { eps: DEFAULT_EPS, c_star: DEFAULT_C_STAR }
    }
}

/// A zero ρ′ = β′ + iγ′ of ζ′ with its pairing data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivZeroRecord {
    pub beta_prime: f64,
    pub gamma_prime: f64,
    pub lambda_prime: f64,
    pub paired_index: usize,
    pub gamma_c: f64,
    pub case_tag: CaseTag,
    pub m_trunc: f64,
    pub moment_residual: f64,
    pub newton_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedFailure {
    pub sigma: f64,
    pub seed: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DerivZeroSearch {
    pub records: Vec<DerivZeroRecord>,
    pub failures: Vec<SeedFailure>,
}

fn newton(seed: Complex64, cfg: &EvalConfig) -> Result<(Complex64, f64)> {
    let mut z = seed;
    for _ in 0..NEWTON_MAX_ITER {
        let (d1, d2) = zeta_d1_d2(z, cfg)?;
        if d2.norm() == 0.0 {
            return Err(Error::Numerical(format!("ζ″ vanishes at {z}")));
        }
        let mut step = d1 / d2;
        if step.norm() > NEWTON_MAX_STEP {
            step *= NEWTON_MAX_STEP / step.norm();
        }
        z -= step;
        if step.norm() <= 1e-12 + 1e-13 * z.norm() {
            let residual = zeta_derivs(z, 1, cfg)?.norm();
            if residual >= NEWTON_ACCEPT {
                return Err(Error::NoConvergence { iterations: NEWTON_MAX_ITER, residual });
            }
            return Ok((z, residual));
        }
    }
    // steps can stall at the noise floor; accept if ζ′ is small enough there
    let residual = zeta_derivs(z, 1, cfg)?.norm();
    if residual < NEWTON_ACCEPT {
        return Ok((z, residual));
    }
    Err(Error::NoConvergence { iterations: NEWTON_MAX_ITER, residual })
}

/// Zeros of ζ′ with t_min < γ′ < t_max, by Newton's method on ζ′/ζ″.
///
/// Each table gap is split into pieces of height at most 0.4 and every
/// piece midpoint t seeds σ ∈ {½ + 1/log t, 1, 1.6, 2.2}. Seeds further
/// than about one unit in t from a zero tend to escape to the right.
///
/// Seeds that fail are listed in `failures`; the caller can compare the
/// record count with [`count_deriv_zeros`].
pub fn find_deriv_zeros(
    table: &ZeroTable,
    t_min: f64,
    t_max: f64,
    cfg: &EvalConfig,
    rec: &RecordConfig,
) -> Result<DerivZeroSearch> {
    if !(10.0..=5000.0).contains(&t_min) || !(t_min..=5000.0).contains(&t_max) {
        return domain(format!("need 10 <= t_min <= t_max <= 5000, got [{t_min}, {t_max}]"));
    }
    if t_min == t_max {
        return Ok(DerivZeroSearch::default());
    }
    table.require_upto(t_max + 2.0)?;
    let g = table.ordinates();
    let seeds: Vec<Complex64> = g
        .windows(2)
        .filter(|w| w[1] >= t_min - 1.0 && w[0] <= t_max + 1.0)
        .flat_map(|w| {
            let n = ((w[1] - w[0]) / SEED_STEP).ceil().max(1.0) as usize;
            (0..n).map(move |i| w[0] + (w[1] - w[0]) * (i as f64 + 0.5) / n as f64)
        })
        .flat_map(|t| [0.5 + 1.0 / t.ln(), 1.0, 1.6, 2.2].map(|sigma| Complex64::new(sigma, t)))
        .collect();
    let outcomes: Vec<(Complex64, Result<(Complex64, f64)>)> =
        seeds.par_iter().map(|&z| (z, newton(z, cfg))).collect();

    let mut found: Vec<(Complex64, f64)> = Vec::new();
    let mut failures = Vec::new();
    for (seed, outcome) in outcomes {
        match outcome {
            Ok(z) => found.push(z),
            Err(e) => failures.push(SeedFailure { sigma: seed.re, seed: seed.im, reason: e.to_string() }),
        }
    }
    found.retain(|(z, _)| z.im > t_min && z.im < t_max);
    found.sort_by(|a, b| a.0.im.total_cmp(&b.0.im).then(a.0.re.total_cmp(&b.0.re)));
    let mut unique: Vec<(Complex64, f64)> = Vec::new();
    for (z, r) in found {
        if !unique.iter().rev().take_while(|(u, _)| z.im - u.im < DEDUP).any(|(u, _)| (z - u).norm() < DEDUP) {
            unique.push((z, r));
        }
    }

    let mut records = Vec::with_capacity(unique.len());
    for (z, newton_residual) in unique {
        records.push(build_record(table, z, newton_residual, cfg, rec)?);
    }
    Ok(DerivZeroSearch { records, failures })
}

fn build_record(
    table: &ZeroTable,
    z: Complex64,
    newton_residual: f64,
    cfg: &EvalConfig,
    rec: &RecordConfig,
) -> Result<DerivZeroRecord> {
    let (beta_prime, gamma_prime) = (z.re, z.im);
    let (paired_index, gamma_c) = nearest_zero(table, gamma_prime)?;
    // a zero left of the critical line would be a genuine finding; keep it
    // visible instead of failing the classification
    let case_tag = classify_case(beta_prime.max(0.5), gamma_prime, gamma_c, rec.eps)?;
    let m_trunc = m_truncated_at(table, paired_index, rec.c_star, gamma_prime)?;
    let moment_residual =
        moment_residual_with(gamma_prime, paired_index, table, rec.c_star, |s| log_deriv(s, cfg))?;
    Ok(DerivZeroRecord {
        beta_prime,
        gamma_prime,
        lambda_prime: (beta_prime - 0.5) * gamma_prime.ln(),
        paired_index,
        gamma_c,
        case_tag,
        m_trunc,
        moment_residual,
        newton_residual,
    })
}

/// |M_{γ_c}/i + ζ′/ζ(s)| / log T at s = ½ + 1/log T + iγ′, T = γ′.
pub fn moment_residual(record: &DerivZeroRecord, table: &ZeroTable, c_star: f64, cfg: &EvalConfig) -> Result<f64> {
    moment_residual_with(record.gamma_prime, record.paired_index, table, c_star, |s| log_deriv(s, cfg))
}

/// [`moment_residual`] with the logarithmic derivative supplied by the caller.
pub fn moment_residual_with(
    gamma_prime: f64,
    paired_index: usize,
    table: &ZeroTable,
    c_star: f64,
    log_deriv: impl Fn(Complex64) -> Result<Complex64>,
) -> Result<f64> {
    if !(gamma_prime > std::f64::consts::E) {
        return domain("moment residual needs γ′ > e");
    }
    let m = m_truncated_at(table, paired_index, c_star, gamma_prime)?;
    let lt = gamma_prime.ln();
    let s = Complex64::new(0.5 + 1.0 / lt, gamma_prime);
    let value = Complex64::new(0.0, -m) + log_deriv(s)?;
    Ok(value.norm() / lt)
}

/// Number of zeros of ζ′ in the open rectangle (σ_lo, σ_hi) × (t_lo, t_hi),
/// by the argument principle with adaptive bisection of the boundary.
pub fn count_deriv_zeros(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64, cfg: &EvalConfig) -> Result<usize> {
    if !(sigma_lo < sigma_hi && t_lo < t_hi) {
        return domain("empty rectangle");
    }
    let f = |z: Complex64| -> Result<Complex64> {
        let d = zeta_derivs(z, 1, cfg)?;
        if d.norm() < 1e-14 {
            return Err(Error::Numerical(format!("ζ′ vanishes on the contour near {z}")));
        }
        Ok(d)
    };
    let corners = [
        Complex64::new(sigma_lo, t_lo),
        Complex64::new(sigma_hi, t_lo),
        Complex64::new(sigma_hi, t_hi),
        Complex64::new(sigma_lo, t_hi),
    ];
    let mut total = 0.0;
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        let pieces = ((b - a).norm() / 0.05).ceil().max(1.0) as usize;
        let mut za = a;
        let mut fa = f(za)?;
        for k in 1..=pieces {
            let zb = a + (b - a) * (k as f64 / pieces as f64);
            let fb = f(zb)?;
            total += arg_change(&f, za, fa, zb, fb, 0)?;
            za = zb;
            fa = fb;
        }
    }
    let turns = total / TAU;
    let n = turns.round();
    if (turns - n).abs() > 0.1 || n < 0.0 {
        return Err(Error::Numerical(format!("winding number {turns} is not close to a non-negative integer")));
    }
    Ok(n as usize)
}

fn arg_change(
    f: &impl Fn(Complex64) -> Result<Complex64>,
    a: Complex64,
    fa: Complex64,
    b: Complex64,
    fb: Complex64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let d1 = (fm / fa).arg();
    let d2 = (fb / fm).arg();
    let whole = (fb / fa).arg();
    if d1.abs() < PI / 6.0 && d2.abs() < PI / 6.0 && (d1 + d2 - whole).abs() < 1e-9 {
        return Ok(d1 + d2);
    }
    if depth >= 40 {
        return Err(Error::Numerical(format!("argument tracking did not resolve near {m}")));
    }
    Ok(arg_change(f, a, fa, m, fm, depth + 1)? + arg_change(f, m, fm, b, fb, depth + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_finds_the_lowest_zero() {
        let (z, r) = newton(Complex64::new(0.9, 23.0), &EvalConfig::default()).unwrap();
        assert!((z - Complex64::new(2.463161869, 23.29832049)).norm() < 1e-8, "{z}");
        assert!(r < 1e-8);
    }

    #[test]
    fn single_zero_moment_residual_closed_form() {
        let table = ZeroTable::from_ordinates(vec![100.0, 120.0]).unwrap();
        let gp: f64 = 100.05;
        let lt = gp.ln();
        let rho = Complex64::new(0.5, 100.0);
        let r = moment_residual_with(gp, 0, &table, 2.0, |s| Ok(1.0 / (s - rho))).unwrap();
        let closed = (1.0 / Complex64::new(1.0 / lt, gp - 100.0)).norm() / lt;
        assert!((r - closed).abs() < 1e-14);
        assert!(r <= 1.0);
    }
}
