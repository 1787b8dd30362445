//! Unit-circle zero configurations and the zeros of their derivatives.
//!
//! A configuration of N points e^{iθ_k} determines the monic polynomial
//! ∏(z − e^{iθ_k}). Its normalized gaps N·(θ_{k+1} − θ_k) play the role of
//! the zeta gaps (γ_{j+1} − γ_j)·log γ_j, and N·(1 − |z|) for a zero z of the
//! derivative plays the role of (β′ − ½)·log γ′.

mod roots;

pub use roots::{critical_points, find_roots, RootCluster, BUDGET_PER_DEGREE, CLUSTER_TOL, INIT_RADIUS};

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{domain, Result};

/// Largest degree handled.
pub const MAX_DEGREE: usize = 1024;

/// How arc endpoints are treated by [`build_arc_config`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointMode {
    /// Zeros at both ends, spacing (end − start)/(N − 1).
    BothInclusive,
    /// Spacing (end − start)/N, the end itself excluded.
    Periodic,
}

impl std::str::FromStr for EndpointMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" | "both-inclusive" => Ok(Self::BothInclusive),
            "periodic" => Ok(Self::Periodic),
            other => domain(format!("unknown endpoint mode '{other}'")),
        }
    }
}

impl std::fmt::Display for EndpointMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::BothInclusive => "both-inclusive",
            Self::Periodic => "periodic",
        })
    }
}

/// Angles of N points on the unit circle, strictly ascending in [0, 2π).
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroConfiguration {
    angles: Vec<f64>,
    wraps: bool,
    label: String,
}

impl ZeroConfiguration {
    /// Validates and wraps a list of angles. `wraps` marks a full-circle
    /// configuration, whose gap list includes the gap across angle 0.
    pub fn from_angles(angles: Vec<f64>, wraps: bool, label: impl Into<String>) -> Result<Self> {
        if angles.is_empty() {
            return domain("configuration needs at least one angle");
        }
        if angles.len() > MAX_DEGREE {
            return domain(format!("degree {} exceeds {MAX_DEGREE}", angles.len()));
        }
        if angles.iter().any(|a| !(0.0..TAU).contains(a)) {
            return domain("angles must lie in [0, 2π)");
        }
        if angles.windows(2).any(|w| w[0] >= w[1]) {
            return domain("angles must be strictly ascending");
        }
        Ok(Self { angles, wraps, label: label.into() })
    }

    /// Reduces arbitrary angles into [0, 2π), sorts, then validates.
    pub fn from_unsorted(angles: impl IntoIterator<Item = f64>, wraps: bool, label: impl Into<String>) -> Result<Self> {
        let mut reduced: Vec<f64> = angles.into_iter().map(reduce_angle).collect();
        reduced.sort_by(f64::total_cmp);
        Self::from_angles(reduced, wraps, label)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn degree(&self) -> usize {
        self.angles.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn wraps(&self) -> bool {
        self.wraps
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    /// The same configuration turned by `phi` radians.
    pub fn rotated(&self, phi: f64) -> Result<Self> {
        Self::from_unsorted(self.angles.iter().map(|a| a + phi), self.wraps, format!("{} rotated {phi}", self.label))
    }
}

fn reduce_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// N equally spaced angles on the arc from `arc_start` to `arc_end`.
pub fn build_arc_config(degree: usize, arc_start: f64, arc_end: f64, mode: EndpointMode) -> Result<ZeroConfiguration> {
    if degree == 0 {
        return domain("degree must be at least 1");
    }
    if !(arc_start.is_finite() && arc_end.is_finite()) || arc_end <= arc_start {
        return domain("arc_end must exceed arc_start");
    }
    let width = arc_end - arc_start;
    if width > TAU * (1.0 + 4.0 * f64::EPSILON) {
        return domain("arc longer than the full circle");
    }
    let label = format!("arc(N={degree}, {arc_start}..{arc_end}, {mode})");
    let angles: Vec<f64> = match mode {
        EndpointMode::BothInclusive if degree == 1 => vec![arc_start],
        EndpointMode::BothInclusive => {
            let step = width / (degree - 1) as f64;
            (0..degree).map(|k| arc_start + k as f64 * step).collect()
        }
        EndpointMode::Periodic => {
            let step = width / degree as f64;
            (0..degree).map(|k| arc_start + k as f64 * step).collect()
        }
    };
    let full_circle = (width - TAU).abs() <= 4.0 * f64::EPSILON * TAU;
    ZeroConfiguration::from_unsorted(angles, mode == EndpointMode::Periodic && full_circle, label)
}

/// Dense polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Trailing (highest-power) exact zeros are dropped; the zero polynomial
    /// is kept as a single zero coefficient.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm_sqr() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    /// Monic polynomial with the given roots, expanded one linear factor at a time.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= r * ck;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].norm_sqr() == 0.0
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// p(z) and p′(z) in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

/// Result of [`differentiate`]; `degenerate` is set when the input was constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative {
    pub poly: Polynomial,
    pub degenerate: bool,
}

pub fn differentiate(p: &Polynomial) -> Derivative {
    if p.degree() == 0 {
        return Derivative { poly: Polynomial::new(vec![Complex64::new(0.0, 0.0)]), degenerate: true };
    }
    let coeffs = p.coeffs().iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
    Derivative { poly: Polynomial::new(coeffs), degenerate: false }
}

/// Monic polynomial of a [`ZeroConfiguration`], keeping the zeros alongside
/// the coefficients.
#[derive(Debug, Clone)]
pub struct UnitPolynomial {
    poly: Polynomial,
    roots: Vec<Complex64>,
}

impl UnitPolynomial {
    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn coeffs(&self) -> &[Complex64] {
        self.poly.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn derivative(&self) -> Derivative {
        differentiate(&self.poly)
    }

    /// Zeros of the derivative, from the zeros of the polynomial.
    pub fn derivative_roots(&self, tol: f64) -> Result<Vec<RootCluster>> {
        critical_points(&self.roots, tol)
    }
}

pub fn poly_from_config(config: &ZeroConfiguration) -> UnitPolynomial {
    let roots = config.points();
    UnitPolynomial { poly: Polynomial::from_roots(&roots), roots }
}

/// Image of a point under r e^{iθ} ↦ (θ, N(1 − r)), with the display
/// scaling 2πN(1 − r) alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnrolledPoint {
    pub theta: f64,
    pub radius: f64,
    pub normalized_radial: f64,
    pub display_height: f64,
}

pub fn unroll(points: &[Complex64], degree: usize) -> Result<Vec<UnrolledPoint>> {
    if degree == 0 {
        return domain("degree must be at least 1");
    }
    let n = degree as f64;
    Ok(points
        .iter()
        .map(|z| {
            let radius = z.norm();
            let normalized_radial = n * (1.0 - radius);
            UnrolledPoint {
                theta: reduce_angle(z.arg()),
                radius,
                normalized_radial,
                display_height: TAU * normalized_radial,
            }
        })
        .collect())
}

/// Normalized gaps N·(θ_{j+1} − θ_j); wrapping configurations include the
/// gap across angle 0.
pub fn poly_gap_lambdas(config: &ZeroConfiguration) -> Result<Vec<f64>> {
    let n = config.degree();
    if n < 2 {
        return domain("gap lambdas need degree >= 2");
    }
    let scale = n as f64;
    let a = config.angles();
    let mut gaps: Vec<f64> = a.windows(2).map(|w| scale * (w[1] - w[0])).collect();
    if config.wraps() {
        gaps.push(scale * (a[0] + TAU - a[n - 1]));
    }
    Ok(gaps)
}

/// λ′ = N·(1 − |z|) for each derivative zero.
pub fn poly_radial_lambdas(deriv_roots: &[Complex64], degree: usize, sorted: bool) -> Result<Vec<f64>> {
    if degree < 2 {
        return domain("radial lambdas need degree >= 2");
    }
    let n = degree as f64;
    let mut out: Vec<f64> = deriv_roots.iter().map(|z| n * (1.0 - z.norm())).collect();
    if sorted {
        out.sort_by(f64::total_cmp);
    }
    Ok(out)
}

/// Expands clusters into one point per unit of multiplicity.
pub fn expand_clusters(clusters: &[RootCluster]) -> Vec<Complex64> {
    clusters
        .iter()
        .flat_map(|c| std::iter::repeat(c.center).take(c.multiplicity))
        .collect()
}
