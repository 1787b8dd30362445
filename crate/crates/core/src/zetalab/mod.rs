//! Combinatorial statistics on tables of zeta-zero ordinates.
//!
//! Everything here is a pure function of a [`ZeroTable`]: normalized gaps,
//! the reciprocal-gap window sums, zero counts N(t), the count discrepancy
//! N(γ, l₁, l₂), the well-spacing filter, pairing of a ζ′ zero with its
//! nearest ζ zero, and the three-way case split on (β′, γ′, γ_c).

mod table;

pub use table::ZeroTable;
pub(crate) use table::sha256_hex;

use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{domain, Error, Result};

/// Default ε of the well-spacing filter.
pub const DEFAULT_EPS: f64 = 0.3;
/// Default C* of the short windows C*·log log γ / log γ.
pub const DEFAULT_C_STAR: f64 = 2.0;
/// Default discrepancy constant C. Calibrated on synthetic CUE-spaced
/// tables (`cargo run --example calibrate -p zpl-core`): the 99.5th
/// percentile of max_{l₁<l₂} N(γ_n, l₁, l₂)/log log T, rounded up.
pub const DEFAULT_C: f64 = 1.0;
/// Default A of the window |t − γ| ≤ A/log γ.
pub const DEFAULT_A: f64 = 2.0;

/// λ_j = (γ_{j+1} − γ_j)·log γ_j at 0-based `index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRecord {
    pub index: usize,
    pub gamma: f64,
    pub lambda: f64,
}

/// Constants of the well-spacing conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FilterConfig {
    pub eps: f64,
    pub c_star: f64,
    pub c: f64,
    pub a: f64,
    /// Height T.
    pub t: f64,
}

impl FilterConfig {
    pub fn new(eps: f64, c_star: f64, c: f64, a: f64, t: f64) -> Result<Self> {
        let cfg = Self { eps, c_star, c, a, t };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_defaults(t: f64) -> Result<Self> {
        Self::new(DEFAULT_EPS, DEFAULT_C_STAR, DEFAULT_C, DEFAULT_A, t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.c > 0.0 && self.a > 0.0) {
            return domain("eps, C and A must be positive");
        }
        if !(self.c_star > 1.0) {
            return domain("C* must exceed 1");
        }
        if !(self.t > std::f64::consts::E) {
            return domain("height T must exceed e so that log log T > 0");
        }
        Ok(())
    }

    /// K = 4·C*·⌊log log T⌋ (rounded down to an integer).
    pub fn k(&self) -> usize {
        (4.0 * self.c_star * self.t.ln().ln().floor()).floor().max(0.0) as usize
    }

    /// δ(ε) = 8/ε².
    pub fn delta(&self) -> f64 {
        8.0 / (self.eps * self.eps)
    }

    /// Largest |l| in the discrepancy condition: ⌊log T / (C*·log log T)⌋.
    pub fn l_max(&self) -> i64 {
        (self.t.ln() / (self.c_star * self.t.ln().ln())).floor() as i64
    }
}

/// Short window X(γ) = C*·log log γ / log γ.
pub fn short_window(gamma: f64, c_star: f64) -> Result<f64> {
    if !(gamma > std::f64::consts::E) {
        return domain(format!("short window needs γ > e, got {gamma}"));
    }
    Ok(c_star * gamma.ln().ln() / gamma.ln())
}

pub fn gap_lambdas(table: &ZeroTable) -> Result<Vec<GapRecord>> {
    if table.len() < 2 {
        return domain("gap lambdas need at least two ordinates");
    }
    Ok(table
        .ordinates()
        .windows(2)
        .enumerate()
        .map(|(index, w)| GapRecord { index, gamma: w[0], lambda: (w[1] - w[0]) * w[0].ln() })
        .collect())
}

/// Fraction of `values` that are ≤ ν.
pub fn m_hat(values: &[f64], nu: f64) -> Result<f64> {
    if values.is_empty() {
        return domain("m_hat of an empty sample");
    }
    let below = values.iter().filter(|&&v| v <= nu).count();
    Ok(below as f64 / values.len() as f64)
}

/// Σ 1/(γ_j − γ_n) over n ≠ j with inner < |γ_j − γ_n| < outer (both strict).
pub fn m_window_sum(table: &ZeroTable, j: usize, inner: f64, outer: f64) -> Result<f64> {
    let g = table.ordinates();
    let Some(&center) = g.get(j) else {
        return domain(format!("index {j} outside table of {}", g.len()));
    };
    if !(inner >= 0.0 && inner < outer) {
        return domain("need 0 <= inner < outer");
    }
    let term = |n: usize| {
        let d = center - g[n];
        (d.abs() > inner).then(|| 1.0 / d)
    };
    let mut sum = 0.0;
    for n in (0..j).rev().take_while(|&n| center - g[n] < outer) {
        sum += term(n).unwrap_or(0.0);
    }
    for n in (j + 1..g.len()).take_while(|&n| g[n] - center < outer) {
        sum += term(n).unwrap_or(0.0);
    }
    Ok(sum)
}

/// Σ 1/(γ − γ_c) over 0 < |γ − γ_c| ≤ X(γ_c), the pure-zero version of M_{γ_c}.
pub fn m_truncated(table: &ZeroTable, center: usize, c_star: f64) -> Result<f64> {
    let g = table.get(center).ok_or_else(|| Error::Domain(format!("index {center} outside table")))?;
    m_truncated_at(table, center, c_star, g)
}

/// M_{γ_c} = Σ 1/(γ − γ_ref) over 0 < |γ − γ_c| ≤ X(γ_c); `gamma_ref` is γ′
/// for a ζ′ zero paired with γ_c.
pub fn m_truncated_at(table: &ZeroTable, center: usize, c_star: f64, gamma_ref: f64) -> Result<f64> {
    let g = table.ordinates();
    let Some(&gc) = g.get(center) else {
        return domain(format!("index {center} outside table of {}", g.len()));
    };
    if !(c_star > 1.0) {
        return domain("C* must exceed 1");
    }
    let x = short_window(gc, c_star)?;
    if x >= 1.0 {
        return domain(format!("window {x} >= 1 at γ = {gc}: height too small"));
    }
    table.require_upto(gc + x)?;
    let mut sum = 0.0;
    for n in (0..center).rev().take_while(|&n| gc - g[n] <= x) {
        sum += 1.0 / (g[n] - gamma_ref);
    }
    for n in (center + 1..g.len()).take_while(|&n| g[n] - gc <= x) {
        sum += 1.0 / (g[n] - gamma_ref);
    }
    Ok(sum)
}

/// N(t) = #{γ_n ≤ t}.
pub fn count_n(table: &ZeroTable, t: f64) -> Result<usize> {
    table.require_upto(t)?;
    Ok(table.ordinates().partition_point(|&g| g <= t))
}

/// N(γ, l₁, l₂) at γ = γ_n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscrepancyRecord {
    pub n: usize,
    pub l1: i64,
    pub l2: i64,
    pub value: f64,
}

/// N(γ + l₂h) − N(γ + l₁h) − (l₂ − l₁)·C*·log log γ / 2π with
/// h = C*·log log γ / log γ and γ = γ_n.
pub fn discrepancy(table: &ZeroTable, n: usize, l1: i64, l2: i64, c_star: f64) -> Result<DiscrepancyRecord> {
    if l1 >= l2 {
        return domain("discrepancy needs l1 < l2");
    }
    let gamma = table.get(n).ok_or_else(|| Error::Domain(format!("index {n} outside table")))?;
    let value = raw_discrepancy(table, gamma, l1, l2, c_star)?;
    Ok(DiscrepancyRecord { n, l1, l2, value })
}

fn raw_discrepancy(table: &ZeroTable, gamma: f64, l1: i64, l2: i64, c_star: f64) -> Result<f64> {
    let h = short_window(gamma, c_star)?;
    let upper = count_n(table, gamma + l2 as f64 * h)? as f64;
    let lower = count_n(table, gamma + l1 as f64 * h)? as f64;
    Ok(upper - lower - (l2 - l1) as f64 * c_star * gamma.ln().ln() / TAU)
}

/// Indices n with γ_n ≤ T whose neighbouring gaps are all at least
/// ε/(2 log γ_n) and whose count discrepancies stay below C·log log T.
///
/// The gap condition runs over the gaps (γ_{n+m−1}, γ_{n+m}) for
/// 0 < |m| ≤ K, skipping gaps below the start of the table. The short-sum
/// condition on ζ′/ζ is evaluated separately (see
/// [`crate::zetaeval::short_sum_residual`]).
pub fn wellspaced_filter(table: &ZeroTable, cfg: &FilterConfig) -> Result<Vec<usize>> {
    cfg.validate()?;
    let g = table.ordinates();
    table.require_upto(cfg.t + 1.0)?;
    let k = cfg.k() as i64;
    let l_max = cfg.l_max();
    let bound = cfg.c * cfg.t.ln().ln();
    let candidates = g.partition_point(|&x| x <= cfg.t);
    let mut passing = Vec::new();
    'outer: for n in 0..candidates {
        let gn = g[n];
        if gn <= std::f64::consts::E {
            continue;
        }
        let min_gap = cfg.eps / (2.0 * gn.ln());
        for m in (-k..=k).filter(|&m| m != 0) {
            let hi = n as i64 + m;
            let lo = hi - 1;
            if lo < 0 {
                continue;
            }
            let (lo, hi) = (lo as usize, hi as usize);
            if hi >= g.len() {
                // roughly where the missing neighbour would sit
                let needed = gn + (hi + 1 - g.len()) as f64 * TAU / gn.ln() + (table.last() - gn).max(0.0);
                return Err(Error::Coverage { needed, available: table.last() });
            }
            if g[hi] - g[lo] < min_gap {
                continue 'outer;
            }
        }
        for l1 in -l_max..=l_max {
            for l2 in (l1 + 1)..=l_max {
                if raw_discrepancy(table, gn, l1, l2, cfg.c_star)? > bound {
                    continue 'outer;
                }
            }
        }
        passing.push(n);
    }
    Ok(passing)
}

/// The table entry closest to `gamma_prime`; exact ties go to the smaller
/// ordinate.
pub fn nearest_zero(table: &ZeroTable, gamma_prime: f64) -> Result<(usize, f64)> {
    table.require_upto(gamma_prime)?;
    let g = table.ordinates();
    let above = g.partition_point(|&x| x < gamma_prime);
    if above == 0 {
        return Ok((0, g[0]));
    }
    let below = above - 1;
    if above == g.len() {
        return Ok((below, g[below]));
    }
    let (d_below, d_above) = (gamma_prime - g[below], g[above] - gamma_prime);
    Ok(if d_above < d_below { (above, g[above]) } else { (below, g[below]) })
}

/// Which of the three regimes a ζ′ zero falls in, relative to its nearest ζ zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// β′ − ½ > |γ′ − γ_c|.
    Case1,
    /// Not case 1, and |γ′ − γ_c| > δ(ε)/log γ′.
    Case2,
    /// Not case 1, and |γ′ − γ_c| ≤ δ(ε)/log γ′.
    Case3,
}

impl CaseTag {
    pub fn number(self) -> u8 {
        match self {
            Self::Case1 => 1,
            Self::Case2 => 2,
            Self::Case3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Self::Case1),
            2 => Some(Self::Case2),
            3 => Some(Self::Case3),
            _ => None,
        }
    }
}

pub fn classify_case(beta_prime: f64, gamma_prime: f64, gamma_c: f64, eps: f64) -> Result<CaseTag> {
    if !(beta_prime >= 0.5) {
        return domain("classify_case needs β′ >= 1/2");
    }
    if !(gamma_prime > 10.0) {
        return domain("classify_case needs γ′ > 10");
    }
    if !(eps > 0.0) {
        return domain("ε must be positive");
    }
    let dist = (gamma_prime - gamma_c).abs();
    let delta = 8.0 / (eps * eps);
    Ok(if beta_prime - 0.5 > dist {
        CaseTag::Case1
    } else if dist > delta / gamma_prime.ln() {
        CaseTag::Case2
    } else {
        CaseTag::Case3
    })
}

/// (β′ − ½) / ((γ′ − γ_c)²·log γ′).
pub fn twosided_ratio(beta_prime: f64, gamma_prime: f64, gamma_c: f64) -> Result<f64> {
    let d = gamma_prime - gamma_c;
    if d == 0.0 {
        return Err(Error::Numerical("twosided ratio undefined for γ′ = γ_c".into()));
    }
    if !(gamma_prime > 1.0) {
        return domain("twosided ratio needs γ′ > 1");
    }
    Ok((beta_prime - 0.5) / (d * d * gamma_prime.ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn table(v: &[f64]) -> ZeroTable {
        ZeroTable::from_ordinates(v.to_vec()).unwrap()
    }

    /// Equal spacing 2π/log T around height T.
    fn equally_spaced(t: f64, count: usize) -> ZeroTable {
        let h = TAU / t.ln();
        let start = t - h * (count / 2) as f64;
        table(&(0..count).map(|i| start + i as f64 * h).collect::<Vec<_>>())
    }

    #[test]
    fn gap_lambda_examples() {
        let g = gap_lambdas(&table(&[E, E + 1.0])).unwrap();
        assert_eq!(g.len(), 1);
        assert!((g[0].lambda - 1.0).abs() < 1e-15);

        let real = table(&[14.134725142, 21.022039639, 25.010857580]);
        let g = gap_lambdas(&real).unwrap();
        assert_eq!(g.len(), 2);
        assert!((g[0].lambda - 18.24).abs() < 0.01, "{}", g[0].lambda);

        let t = 1.0e4;
        let eq = equally_spaced(t, 21);
        for r in gap_lambdas(&eq).unwrap() {
            assert!((r.lambda - TAU / t.ln() * r.gamma.ln()).abs() < 1e-9);
            assert!((r.lambda - TAU).abs() < 1e-3);
        }
        assert!(gap_lambdas(&table(&[5.0])).is_err());
    }

    #[test]
    fn m_hat_examples() {
        let v = [1.0, 2.0, 3.0];
        assert_eq!(m_hat(&v, f64::INFINITY).unwrap(), 1.0);
        assert_eq!(m_hat(&v, 0.0).unwrap(), 0.0);
        assert!((m_hat(&v, 2.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(m_hat(&[], 1.0).is_err());
    }

    #[test]
    fn window_sum_examples() {
        let t = table(&[9.5, 10.0, 10.5]);
        // 0-based index 1 is the middle point
        assert_eq!(m_window_sum(&t, 1, 0.0, 1.0).unwrap(), 0.0);
        // first point: 10.5 is exactly 1.0 away and excluded
        assert_eq!(m_window_sum(&t, 0, 0.0, 1.0).unwrap(), -2.0);
        assert!(m_window_sum(&t, 3, 0.0, 1.0).is_err());
        assert!(m_window_sum(&t, 0, 1.0, 1.0).is_err());
        // the inner cutoff is strict too
        assert_eq!(m_window_sum(&t, 0, 0.5, 1.5).unwrap(), -1.0);
    }

    #[test]
    fn window_sum_negates_under_mirroring() {
        let base = [20.0, 20.3, 20.45, 21.0, 21.1, 21.7, 22.05];
        let center = 21.0;
        let mirrored: Vec<f64> = base.iter().rev().map(|g| 2.0 * center - g).collect();
        let a = m_window_sum(&table(&base), 3, 0.0, 1.0).unwrap();
        let b = m_window_sum(&table(&mirrored), 3, 0.0, 1.0).unwrap();
        assert!(a != 0.0);
        assert!((a + b).abs() < 1e-10);
    }

    #[test]
    fn truncated_sum_examples() {
        let x = short_window(100.0, 2.0).unwrap();
        let sym = table(&[100.0 - 0.3 * x, 100.0, 100.0 + 0.3 * x, 150.0]);
        assert!(m_truncated(&sym, 1, 2.0).unwrap().abs() < 1e-12);
        let d = 0.5 * x;
        let one = table(&[90.0, 100.0, 100.0 + d, 150.0]);
        assert!((m_truncated(&one, 1, 2.0).unwrap() - 1.0 / d).abs() < 1e-9);
        // the outer bound is inclusive
        let mut top = 100.0 + x;
        while top - 100.0 > x {
            top = f64::from_bits(top.to_bits() - 1);
        }
        let edge = table(&[90.0, 100.0, top, 150.0]);
        assert!((m_truncated(&edge, 1, 2.0).unwrap() - 1.0 / x).abs() < 1e-9);
        // γ below e has no window
        assert!(m_truncated(&table(&[2.0, 3.0]), 0, 2.0).is_err());
        // window of size >= 1 is refused
        assert!(m_truncated(&table(&[16.0, 40.0]), 0, 3.0).is_err());
    }

    #[test]
    fn count_examples() {
        let t = table(&[14.134725142, 21.022039639, 25.010857580]);
        assert_eq!(count_n(&t, 14.1).unwrap(), 0);
        assert_eq!(count_n(&t, 21.022039639).unwrap(), 2);
        assert!(count_n(&t, 30.0).is_err());
    }

    #[test]
    fn discrepancy_on_equal_spacing_is_small() {
        let t = 1.0e4;
        let eq = equally_spaced(t, 101);
        for (l1, l2) in [(-3, 3), (-1, 0), (0, 2), (1, 3)] {
            let d = discrepancy(&eq, 50, l1, l2, 2.0).unwrap();
            assert!(d.value.abs() <= 1.0, "{l1},{l2}: {}", d.value);
        }
        assert!(discrepancy(&eq, 50, 1, 1, 2.0).is_err());
        assert!(discrepancy(&eq, 50, 2, 1, 2.0).is_err());
    }

    #[test]
    fn discrepancy_telescopes() {
        let eq = equally_spaced(5.0e3, 60);
        let a = discrepancy(&eq, 30, -2, 0, 2.0).unwrap().value;
        let b = discrepancy(&eq, 30, 0, 3, 2.0).unwrap().value;
        let c = discrepancy(&eq, 30, -2, 3, 2.0).unwrap().value;
        assert!((a + b - c).abs() < 1e-10);
    }

    #[test]
    fn filter_on_equal_spacing_passes_everything() {
        let t = 5.0e3;
        let eq = equally_spaced(t, 200);
        // candidates are those up to T, neighbours well inside the table
        let cfg = FilterConfig::new(0.1, 2.0, 1.0, 2.0, t).unwrap();
        let pass = wellspaced_filter(&eq, &cfg).unwrap();
        let k = cfg.k();
        let candidates = eq.ordinates().partition_point(|&g| g <= t);
        let expect: Vec<usize> = (0..candidates).collect();
        assert_eq!(pass, expect);
        assert!(k > 0);
    }

    #[test]
    fn filter_excludes_neighbourhood_of_a_small_gap() {
        let t: f64 = 5.0e3;
        let h = TAU / t.ln();
        let cfg = FilterConfig::new(0.3, 2.0, 5.0, 2.0, t).unwrap();
        let k = cfg.k();
        let mut v: Vec<f64> = (0..300).map(|i| t - 150.0 * h + i as f64 * h).collect();
        // shrink the gap between entries 100 and 101 to ε/(4 log γ)
        let g = 100;
        let tiny = cfg.eps / (4.0 * v[g].ln());
        let shift = h - tiny;
        for x in v.iter_mut().skip(g + 1) {
            *x -= shift;
        }
        let tab = table(&v);
        let pass = wellspaced_filter(&tab, &cfg).unwrap();
        let candidates = tab.ordinates().partition_point(|&x| x <= t);
        let excluded: Vec<usize> = (0..candidates).filter(|n| !pass.contains(n)).collect();
        let expect: Vec<usize> = (g + 1 - k..=g + 1 + k).filter(|&n| n != g + 1).collect();
        assert_eq!(excluded.len(), 2 * k);
        assert_eq!(excluded, expect);
    }

    #[test]
    fn filter_needs_margin() {
        let eq = equally_spaced(5.0e3, 30);
        let cfg = FilterConfig::with_defaults(5.0e3).unwrap();
        assert!(matches!(wellspaced_filter(&eq, &cfg), Err(Error::Coverage { .. })));
    }

    #[test]
    fn nearest_zero_examples() {
        let t = table(&[14.134725142, 21.022039639, 25.010857580, 30.424876126]);
        let mid = (14.134725142 + 21.022039639) / 2.0;
        assert_eq!(nearest_zero(&t, mid).unwrap().0, 0);
        assert_eq!(nearest_zero(&t, 25.010857580).unwrap().0, 2);
        assert_eq!(nearest_zero(&t, 23.0).unwrap().0, 1);
        assert!(nearest_zero(&t, 31.0).is_err());
        // exact tie on dyadic values
        let d = table(&[10.0, 11.0, 12.0]);
        assert_eq!(nearest_zero(&d, 11.5).unwrap(), (1, 11.0));
    }

    #[test]
    fn case_examples() {
        assert_eq!(classify_case(0.51, 20.0, 20.005, 1.0).unwrap(), CaseTag::Case1);
        let g = 10f64.exp();
        assert_eq!(classify_case(0.5, g, g - 1.0, 1.0).unwrap(), CaseTag::Case2);
        assert_eq!(classify_case(0.501, g, g + 0.1, 1.0).unwrap(), CaseTag::Case3);
        assert!(classify_case(0.49, g, g, 1.0).is_err());
        assert!(classify_case(0.6, 5.0, 5.0, 1.0).is_err());
    }

    #[test]
    fn twosided_examples() {
        let (g, gc): (f64, f64) = (100.0, 100.2);
        let b = 0.5 + 0.04 * g.ln();
        assert!((twosided_ratio(b, g, gc).unwrap() - 1.0).abs() < 1e-12);
        let b2 = 0.5 + 2.0 * 0.04 * g.ln();
        assert!((twosided_ratio(b2, g, gc).unwrap() - 2.0).abs() < 1e-12);
        assert!(twosided_ratio(0.6, 50.0, 50.0).is_err());
    }

    #[test]
    fn filter_config_derived_constants() {
        let cfg = FilterConfig::with_defaults(5000.0).unwrap();
        // log log 5000 = 2.14..., so K = 4·2·2
        assert_eq!(cfg.k(), 16);
        assert!((cfg.delta() - 8.0 / 0.09).abs() < 1e-12);
        assert_eq!(cfg.l_max(), 1);
        assert!(FilterConfig::new(0.3, 1.0, 1.0, 2.0, 5000.0).is_err());
        assert!(FilterConfig::new(0.3, 2.0, 1.0, 2.0, 2.0).is_err());
    }
}
