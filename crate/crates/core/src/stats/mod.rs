//! Empirical CDFs, power-law fits in log-log coordinates, and the counting
//! functions on either side of the small-gap implication.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::zetaeval::DerivZeroRecord;
use crate::zetalab::ZeroTable;

/// Grid points used by [`fit_exponent`].
pub const FIT_GRID: usize = 20;
/// Fewest samples inside a fit window.
pub const MIN_FIT_SAMPLES: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return domain("empirical CDF of an empty sample");
        }
        if values.iter().any(|v| v.is_nan()) {
            return domain("sample contains NaN");
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sorted })
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    pub fn count(&self) -> usize {
        self.sorted.len()
    }

    /// Fraction of the sample ≤ ν.
    pub fn eval(&self, nu: f64) -> f64 {
        self.count_le(nu) as f64 / self.sorted.len() as f64
    }

    pub fn count_le(&self, nu: f64) -> usize {
        self.sorted.partition_point(|&v| v <= nu)
    }

    /// Samples in the closed interval [lo, hi].
    pub fn count_between(&self, lo: f64, hi: f64) -> usize {
        self.count_le(hi).saturating_sub(self.sorted.partition_point(|&v| v < lo))
    }
}

pub fn empirical_cdf(values: &[f64]) -> Result<EmpiricalCdf> {
    EmpiricalCdf::new(values)
}

/// m̂(ν) ≈ κ·ν^α fitted on a log-log grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub kappa: f64,
    pub alpha: f64,
    pub nu_lo: f64,
    pub nu_hi: f64,
    pub rms_residual: f64,
    pub samples_in_window: usize,
    pub grid_points_used: usize,
}

/// Least-squares line through (log ν, log m̂(ν)) at 20 geometrically spaced
/// ν in [ν_lo, ν_hi]. Grid points where m̂ vanishes are skipped.
pub fn fit_exponent(cdf: &EmpiricalCdf, nu_lo: f64, nu_hi: f64) -> Result<PowerLawFit> {
    if !(nu_lo > 0.0 && nu_hi > nu_lo && nu_hi.is_finite()) {
        return domain(format!("fit window [{nu_lo}, {nu_hi}] needs 0 < lo < hi < ∞"));
    }
    let inside = cdf.count_between(nu_lo, nu_hi);
    if inside < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "{inside} samples in [{nu_lo}, {nu_hi}], need at least {MIN_FIT_SAMPLES} (sample size {})",
            cdf.count()
        )));
    }
    let ratio = (nu_hi / nu_lo).powf(1.0 / (FIT_GRID - 1) as f64);
    let points: Vec<(f64, f64)> = (0..FIT_GRID)
        .map(|i| nu_lo * ratio.powi(i as i32))
        .filter_map(|nu| {
            let m = cdf.eval(nu);
            (m > 0.0).then(|| (nu.ln(), m.ln()))
        })
        .collect();
    if points.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "m̂ vanishes on all but {} grid points of [{nu_lo}, {nu_hi}]",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let alpha = sxy / sxx;
    let intercept = my - alpha * mx;
    let rms = (points.iter().map(|p| (p.1 - intercept - alpha * p.0).powi(2)).sum::<f64>() / n).sqrt();
    Ok(PowerLawFit {
        kappa: intercept.exp(),
        alpha,
        nu_lo,
        nu_hi,
        rms_residual: rms,
        samples_in_window: inside,
        grid_points_used: points.len(),
    })
}

/// κ′ = 2π(κ/β)(2/π)^β.
pub fn kappa_prime_relation(kappa: f64, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return domain("β must be positive");
    }
    Ok(2.0 * PI * (kappa / beta) * (2.0 / PI).powf(beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypothesisCount {
    pub nu: f64,
    pub t: f64,
    pub count: usize,
    /// −log(count/(T log T)); infinite when the count is 0.
    pub implied_c: f64,
}

/// #{0 < γ′ < T : (β′ − ½) log γ′ ≤ ν} and the constant C it implies.
pub fn hypothesis_count(records: &[DerivZeroRecord], nu: f64, t: f64) -> Result<HypothesisCount> {
    if !(t > 1.0) {
        return domain("T must exceed 1");
    }
    if nu.is_nan() {
        return domain("ν is NaN");
    }
    let count = records
        .iter()
        .filter(|r| r.gamma_prime > 0.0 && r.gamma_prime < t && r.lambda_prime <= nu)
        .count();
    let implied_c = if count == 0 { f64::INFINITY } else { -(count as f64 / (t * t.ln())).ln() };
    Ok(HypothesisCount { nu, t, count, implied_c })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallGapCount {
    pub count: usize,
    /// count / (T log T / log log T).
    pub normalized: f64,
}

/// #{γ_n ≤ T : (γ_{n+1} − γ_n) log γ_n ≤ ν}; an ordinate with no successor
/// in the table is not counted.
pub fn small_gap_count(table: &ZeroTable, nu: f64, t: f64) -> Result<SmallGapCount> {
    if !(t > std::f64::consts::E.exp()) {
        return domain("T must exceed e^e so that log log T > 1");
    }
    if nu.is_nan() {
        return domain("ν is NaN");
    }
    table.require_upto(t)?;
    let g = table.ordinates();
    let count = g
        .windows(2)
        .take_while(|w| w[0] <= t)
        .filter(|w| (w[1] - w[0]) * w[0].ln() <= nu)
        .count();
    let normalized = count as f64 / (t * t.ln() / t.ln().ln());
    Ok(SmallGapCount { count, normalized })
}
