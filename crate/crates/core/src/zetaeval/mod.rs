//! Direct evaluation of ζ and its first two derivatives at moderate
//! heights, the two approximations of ζ′/ζ (a short sum over zeros and a
//! tapered Dirichlet series over prime powers), and the search for zeros
//! of ζ′.
//!
//! ζ is summed by Euler–Maclaurin with `M = ⌈factor·(|t| + 10)⌉` terms and
//! `K` Bernoulli corrections. Derivatives come from the Cauchy integral on a
//! circle of radius 1/8 sampled at 64 equally spaced nodes; the trapezoid
//! rule is spectrally accurate there since ζ is analytic away from s = 1.

pub mod cache;
mod dzeros;
mod sums;

pub use dzeros::{
    count_deriv_zeros, find_deriv_zeros, moment_residual, moment_residual_with, DerivZeroRecord, DerivZeroSearch,
    RecordConfig, SeedFailure, CONTOUR_SIGMA_HI, CONTOUR_SIGMA_LO,
};
pub use sums::{
    dirichlet_sum, lambda_x, short_sum, short_sum_residual, sound_moment_check, von_mangoldt, zpz_zero_expansion,
    DirichletApprox, DirichletConfig, MangoldtSieve, SoundCheck,
};

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{domain, Error, Result};

/// Real parts accepted by [`zeta`].
pub const BOX_RE_MIN: f64 = 0.1;
pub const BOX_RE_MAX: f64 = 3.2;
/// Largest |Im s| accepted by [`zeta`].
pub const BOX_IM_MAX: f64 = 5000.0;

/// Membership threshold on [`short_sum_residual`] for the third well-spacing
/// condition.
pub const SHORT_SUM_RESIDUAL_BOUND: f64 = 0.5;
/// Bound on [`moment_residual`] for records paired with a well-spaced zero,
/// 10 < γ′ < 200.
pub const MOMENT_RESIDUAL_BOUND: f64 = 0.8;

/// B₂, B₄, …, B₂₄.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Tuning of the ζ evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    pub em_cutoff_factor: f64,
    pub bernoulli_terms: usize,
    pub deriv_radius: f64,
    pub deriv_nodes: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { em_cutoff_factor: 1.0, bernoulli_terms: 12, deriv_radius: 0.125, deriv_nodes: 64 }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.em_cutoff_factor > 0.0) {
            return domain("em_cutoff_factor must be positive");
        }
        if self.bernoulli_terms == 0 || self.bernoulli_terms > BERNOULLI.len() {
            return domain(format!("bernoulli_terms must be in 1..={}", BERNOULLI.len()));
        }
        if !(self.deriv_radius > 0.0) || self.deriv_nodes < 8 {
            return domain("derivative circle needs a positive radius and at least 8 nodes");
        }
        Ok(())
    }

    /// Stable text form, used in cache keys and output metadata.
    pub fn canonical(&self) -> String {
        format!(
            "em_cutoff_factor={:?};bernoulli_terms={};deriv_radius={:?};deriv_nodes={}",
            self.em_cutoff_factor, self.bernoulli_terms, self.deriv_radius, self.deriv_nodes
        )
    }
}

fn check_box(s: Complex64) -> Result<()> {
    if !(BOX_RE_MIN..=BOX_RE_MAX).contains(&s.re) || !(s.im.abs() <= BOX_IM_MAX) {
        return domain(format!(
            "s = {s} outside the evaluation box {BOX_RE_MIN} <= Re s <= {BOX_RE_MAX}, |Im s| <= {BOX_IM_MAX}"
        ));
    }
    Ok(())
}

/// ζ(s) by Euler–Maclaurin summation.
pub fn zeta(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    check_box(s)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    Ok(zeta_em(s, cfg))
}

fn zeta_em(s: Complex64, cfg: &EvalConfig) -> Complex64 {
    let m = (cfg.em_cutoff_factor * (s.im.abs() + 10.0)).ceil().max(2.0) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..m {
        sum += (-s * (n as f64).ln()).exp();
    }
    let mf = m as f64;
    let ln_m = mf.ln();
    let m_pow = (-s * ln_m).exp(); // m^{-s}
    let one = Complex64::new(1.0, 0.0);
    sum += m_pow * mf / (s - one) + m_pow * 0.5;
    // T_k = s(s+1)…(s+2k−2) m^{−s−2k+1} / (2k)!
    let mut t_k = s * m_pow / (2.0 * mf);
    for (k, b) in BERNOULLI.iter().take(cfg.bernoulli_terms).enumerate() {
        let k = k + 1;
        sum += t_k * *b;
        let kk = 2.0 * k as f64;
        t_k *= (s + (kk - 1.0)) * (s + kk) / ((kk + 1.0) * (kk + 2.0) * mf * mf);
    }
    sum
}

fn check_circle(s: Complex64, cfg: &EvalConfig) -> Result<()> {
    let r = cfg.deriv_radius;
    if s.re - r < BOX_RE_MIN || s.re + r > BOX_RE_MAX || s.im.abs() + r > BOX_IM_MAX {
        return domain(format!("derivative circle of radius {r} about {s} leaves the evaluation box"));
    }
    if (s - 1.0).norm() < r + 0.25 {
        return domain(format!("derivative circle about {s} passes within 1/4 of the pole"));
    }
    Ok(())
}

/// Samples ζ on the derivative circle and returns the Taylor coefficients
/// ζ′(s) and ζ″(s).
fn circle_derivs(s: Complex64, cfg: &EvalConfig) -> (Complex64, Complex64) {
    let n = cfg.deriv_nodes;
    let r = cfg.deriv_radius;
    let mut c1 = Complex64::new(0.0, 0.0);
    let mut c2 = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let theta = TAU * j as f64 / n as f64;
        let w = Complex64::from_polar(1.0, theta);
        let f = zeta_em(s + w * r, cfg);
        let wc = w.conj();
        c1 += f * wc;
        c2 += f * wc * wc;
    }
    let nf = n as f64;
    (c1 / (nf * r), c2 * 2.0 / (nf * r * r))
}

/// ζ′(s) (`order` 1) or ζ″(s) (`order` 2).
pub fn zeta_derivs(s: Complex64, order: u8, cfg: &EvalConfig) -> Result<Complex64> {
    check_circle(s, cfg)?;
    let (d1, d2) = circle_derivs(s, cfg);
    match order {
        1 => Ok(d1),
        2 => Ok(d2),
        _ => domain("derivative order must be 1 or 2"),
    }
}

/// (ζ′(s), ζ″(s)) from one set of circle samples.
pub fn zeta_d1_d2(s: Complex64, cfg: &EvalConfig) -> Result<(Complex64, Complex64)> {
    check_circle(s, cfg)?;
    Ok(circle_derivs(s, cfg))
}

/// ζ′(s)/ζ(s).
pub fn log_deriv(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let z = zeta(s, cfg)?;
    if z.norm() <= 1e-12 {
        return Err(Error::Numerical(format!("|ζ(s)| = {:e} too small at s = {s}", z.norm())));
    }
    let d = zeta_derivs(s, 1, cfg)?;
    Ok(d / z)
}
