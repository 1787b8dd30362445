//! Simultaneous (Aberth–Ehrlich) root iteration.
//!
//! Two front ends share one engine: [`find_roots`] works from coefficients,
//! [`critical_points`] finds the zeros of p′ directly from the zeros of p
//! through the logarithmic derivative, which stays well conditioned for
//! clustered unit-circle zeros whose coefficients span hundreds of decades.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::Polynomial;
use crate::error::{domain, Error, Result};

/// Radius of the circle the iterates start on.
pub const INIT_RADIUS: f64 = 0.9;
/// Sweep budget per unit of degree.
pub const BUDGET_PER_DEGREE: usize = 200;
/// Default distance below which approximations are merged into one cluster.
pub const CLUSTER_TOL: f64 = 1e-7;

const ANGLE_OFFSET: f64 = 0.4;

/// A root, or a group of numerically coincident roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

/// One Newton quotient and whether the iterate already sits at the
/// rounding-error floor of the function.
struct NewtonStep {
    ratio: Complex64,
    at_floor: bool,
}

fn initial_guesses(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(INIT_RADIUS, TAU * k as f64 / n as f64 + ANGLE_OFFSET))
        .collect()
}

/// Runs Aberth sweeps (Gauss–Seidel order) until every iterate is frozen or
/// the budget runs out. Returns the iterates and whether all froze.
fn aberth<F>(n: usize, step: F) -> (Vec<Complex64>, bool)
where
    F: Fn(Complex64) -> NewtonStep,
{
    let mut w = initial_guesses(n);
    let mut frozen = vec![false; n];
    let budget = BUDGET_PER_DEGREE * n.max(1);
    for _ in 0..budget {
        let mut active = false;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let NewtonStep { ratio, at_floor } = step(w[i]);
            if at_floor {
                frozen[i] = true;
                continue;
            }
            active = true;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &wj) in w.iter().enumerate() {
                if j != i {
                    let d = w[i] - wj;
                    if d.norm_sqr() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let delta = if denom.norm_sqr() > 0.0 { ratio / denom } else { ratio };
            w[i] -= delta;
            if !delta.is_finite() {
                // restart this iterate somewhere harmless
                w[i] = Complex64::from_polar(INIT_RADIUS * 0.5, i as f64);
            } else if delta.norm() <= 4.0 * f64::EPSILON * w[i].norm() {
                frozen[i] = true;
            }
        }
        if !active {
            return (w, true);
        }
    }
    let all = frozen.iter().all(|&f| f);
    (w, all)
}

/// Single-linkage clustering of approximations closer than `tol`.
fn cluster(points: &[Complex64], tol: f64) -> Vec<RootCluster> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (points[i] - points[j]).norm() < tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += points[i];
                g.2 += 1;
            }
            None => groups.push((r, points[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, sum, m)| RootCluster { center: sum / m as f64, multiplicity: m })
        .collect()
}

fn sort_clusters(clusters: &mut [RootCluster]) {
    clusters.sort_by(|a, b| {
        a.center
            .arg()
            .rem_euclid(TAU)
            .total_cmp(&b.center.arg().rem_euclid(TAU))
            .then(a.center.norm().total_cmp(&b.center.norm()))
    });
}

/// All roots of `p`, with approximations closer than `tol` merged into
/// clusters. Multiplicities sum to the degree.
pub fn find_roots(p: &Polynomial, tol: f64) -> Result<Vec<RootCluster>> {
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let degree = p.degree();
    if degree == 0 {
        return domain("find_roots needs degree >= 1");
    }
    let lead = p.coeffs()[degree];
    if lead.norm_sqr() == 0.0 {
        return domain("leading coefficient is zero");
    }
    let monic: Vec<Complex64> = p.coeffs().iter().map(|c| c / lead).collect();
    // exact roots at the origin
    let zeros_at_origin = monic.iter().take_while(|c| c.norm_sqr() == 0.0).count();
    let reduced = Polynomial::new(monic[zeros_at_origin..].to_vec());
    let n = reduced.degree();
    let abs_coeffs: Vec<f64> = reduced.coeffs().iter().map(|c| c.norm()).collect();
    let floor_factor = 2.0 * (n as f64 + 1.0) * f64::EPSILON;

    let mut approx = Vec::with_capacity(degree);
    approx.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(zeros_at_origin));
    if n > 0 {
        let step = |z: Complex64| {
            let (v, dv) = reduced.eval_with_derivative(z);
            let bound = horner_abs(&abs_coeffs, z.norm()) * floor_factor;
            NewtonStep { ratio: if dv.norm_sqr() > 0.0 { v / dv } else { v }, at_floor: v.norm() <= bound }
        };
        let (mut w, _) = aberth(n, step);
        polish(&mut w, |z| {
            let (v, dv) = reduced.eval_with_derivative(z);
            (dv.norm_sqr() > 0.0).then(|| v / dv)
        });
        approx.extend(w);
    }

    let mut clusters = cluster(&approx, tol);
    let scale = p.max_coeff_abs() * (degree as f64 + 1.0);
    let mut worst: f64 = 0.0;
    for c in &clusters {
        let r = p.eval(c.center).norm() / scale;
        worst = worst.max(r);
    }
    if !(worst <= tol) {
        return Err(Error::NoConvergence { iterations: BUDGET_PER_DEGREE * degree, residual: worst });
    }
    sort_clusters(&mut clusters);
    Ok(clusters)
}

/// Zeros of p′ where p = ∏(z − roots[k]), found without forming coefficients.
///
/// The Newton quotient for p′ is p′/p″ = S₁/(S₁² − S₂) with
/// S₁ = Σ 1/(z − z_k) and S₂ = Σ 1/(z − z_k)².
pub fn critical_points(roots: &[Complex64], tol: f64) -> Result<Vec<RootCluster>> {
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let n = roots.len();
    if n == 0 {
        return domain("critical_points needs at least one root");
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let floor_factor = 2.0 * n as f64 * f64::EPSILON;
    let sums = |z: Complex64| {
        let mut s1 = Complex64::new(0.0, 0.0);
        let mut s2 = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for &r in roots {
            let inv = (z - r).inv();
            s1 += inv;
            s2 += inv * inv;
            mag += inv.norm();
        }
        (s1, s2, mag)
    };
    let step = |z: Complex64| {
        let (s1, s2, mag) = sums(z);
        if !s1.is_finite() {
            // sitting on a zero of p: nudge off it
            return NewtonStep { ratio: Complex64::new(1e-9, 1e-9), at_floor: false };
        }
        let denom = s1 * s1 - s2;
        let ratio = if denom.norm_sqr() > 0.0 { s1 / denom } else { s1 };
        NewtonStep { ratio, at_floor: s1.norm() <= mag * floor_factor }
    };
    let (mut w, _) = aberth(n - 1, step);
    polish(&mut w, |z| {
        let (s1, s2, _) = sums(z);
        let denom = s1 * s1 - s2;
        (s1.is_finite() && denom.norm_sqr() > 0.0).then(|| s1 / denom)
    });

    // residual of p′/p at each iterate, relative to its rounding floor
    let mut worst: f64 = 0.0;
    for &z in &w {
        let (s1, _, mag) = sums(z);
        let rel = s1.norm() / mag;
        worst = worst.max(rel);
    }
    if !(worst <= tol) {
        return Err(Error::NoConvergence { iterations: BUDGET_PER_DEGREE * (n - 1), residual: worst });
    }
    let mut clusters = cluster(&w, tol);
    sort_clusters(&mut clusters);
    Ok(clusters)
}

/// Two Newton steps on isolated iterates. Iterates with a near neighbour are
/// left alone: Newton is slow and erratic at multiple roots.
fn polish<F>(w: &mut [Complex64], newton: F)
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    let snapshot = w.to_vec();
    for (i, z) in w.iter_mut().enumerate() {
        let isolated = snapshot
            .iter()
            .enumerate()
            .all(|(j, &o)| j == i || (o - *z).norm() > 1e-6 * (1.0 + z.norm()));
        if !isolated {
            continue;
        }
        for _ in 0..2 {
            match newton(*z) {
                Some(d) if d.is_finite() && d.norm() < 1e-3 => *z -= d,
                _ => break,
            }
        }
    }
}

fn horner_abs(abs_coeffs: &[f64], r: f64) -> f64 {
    abs_coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c)
}
