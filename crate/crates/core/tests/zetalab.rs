mod common;

use common::real_table;
use proptest::prelude::*;
use std::f64::consts::TAU;
use std::sync::OnceLock;
use zpl_core::zetalab::{
    count_n, discrepancy, gap_lambdas, m_hat, m_truncated, m_window_sum, nearest_zero, short_window,
    wellspaced_filter, FilterConfig, ZeroTable, DEFAULT_C,
};

fn table() -> &'static ZeroTable {
    static T: OnceLock<ZeroTable> = OnceLock::new();
    T.get_or_init(real_table)
}

#[test]
fn table_shape() {
    let t = table();
    assert_eq!(t.len(), 10_000);
    assert!((t.first() - 14.134725141734693).abs() < 1e-9);
    assert!((t.last() - 9877.782654004).abs() < 1e-6);
    assert!(t.ordinates().windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn count_to_one_hundred() {
    let t = table();
    assert_eq!(count_n(t, 100.0).unwrap(), 29);
    // Riemann–von Mangoldt main terms
    let x: f64 = 100.0;
    let rvm = x / TAU * (x / (TAU * std::f64::consts::E)).ln() + 7.0 / 8.0;
    assert!((29.0 - rvm).abs() <= 2.0, "{rvm}");
    assert!(count_n(t, 1e4).is_err());
}

#[test]
fn nearest_zero_of_the_first_derivative_zero() {
    let (i, g) = nearest_zero(table(), 23.298320490).unwrap();
    assert_eq!(i, 2);
    assert!((g - 25.010857580146).abs() < 1e-9);
}

#[test]
fn window_sum_of_the_first_zero_is_empty() {
    assert_eq!(m_window_sum(table(), 0, 0.0, 1.0).unwrap(), 0.0);
}

#[test]
fn truncated_sum_near_the_top_of_the_table() {
    let t = table();
    // the last index whose window fits below the final ordinate
    let j = (0..t.len())
        .rev()
        .find(|&j| {
            let g = t.ordinates()[j];
            g + short_window(g, 2.0).unwrap() <= t.last()
        })
        .unwrap();
    assert!(j >= 9990);
    let v = m_truncated(t, j, 2.0).unwrap();
    let g = t.ordinates()[j];
    println!("M at index {j} (γ = {g:.3}): {v:.4}, |M|/log γ = {:.4}", v.abs() / g.ln());
    assert!(v.is_finite());
    // brute force over the whole table
    let x = short_window(g, 2.0).unwrap();
    let brute: f64 = t
        .ordinates()
        .iter()
        .enumerate()
        .filter(|&(n, &h)| n != j && (h - g).abs() <= x)
        .map(|(_, &h)| 1.0 / (h - g))
        .sum();
    assert!((v - brute).abs() <= 1e-12 * brute.abs().max(1.0));
    assert!(m_truncated(t, t.len() - 1, 2.0).is_err());
}

#[test]
fn discrepancy_at_index_five_thousand() {
    let t = table();
    let d = discrepancy(t, 4999, -3, 3, 2.0).unwrap();
    let g = t.ordinates()[4999];
    println!("discrepancy at γ = {g:.3}: {:.4}", d.value);
    assert!(d.value <= DEFAULT_C * g.ln().ln());
}

#[test]
fn gap_records_cover_the_table() {
    let t = table();
    let recs = gap_lambdas(t).unwrap();
    assert_eq!(recs.len(), t.len() - 1);
    let g = t.ordinates();
    assert_eq!(recs[0].lambda, (g[1] - g[0]) * g[0].ln());
    assert!(recs.iter().all(|r| r.lambda > 0.0));
}

#[test]
fn most_zeros_up_to_five_thousand_are_well_spaced() {
    let t = table();
    let cfg = FilterConfig::with_defaults(5000.0).unwrap();
    let pass = wellspaced_filter(t, &cfg).unwrap();
    let total = count_n(t, 5000.0).unwrap();
    let frac = pass.len() as f64 / total as f64;
    println!("well-spaced up to 5000: {} of {total} ({frac:.3})", pass.len());
    assert!(frac >= 0.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discrepancy_telescopes(n in 100usize..9500, l1 in -6i64..0, l2 in 0i64..3, l3 in 3i64..7) {
        let t = table();
        let a = discrepancy(t, n, l1, l2, 2.0).unwrap().value;
        let b = discrepancy(t, n, l2, l3, 2.0).unwrap().value;
        let c = discrepancy(t, n, l1, l3, 2.0).unwrap().value;
        prop_assert!((a + b - c).abs() <= 1e-9);
    }

    #[test]
    fn m_hat_is_monotone(a in 0.0f64..5.0, b in 0.0f64..5.0) {
        let lambdas: Vec<f64> = gap_lambdas(table()).unwrap().into_iter().map(|r| r.lambda).collect();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(m_hat(&lambdas, lo).unwrap() <= m_hat(&lambdas, hi).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn larger_eps_filters_more(e1 in 0.05f64..0.9, e2 in 0.05f64..0.9, t in 100.0f64..1500.0) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let a = wellspaced_filter(table(), &FilterConfig::new(lo, 2.0, DEFAULT_C, 2.0, t).unwrap()).unwrap();
        let b = wellspaced_filter(table(), &FilterConfig::new(hi, 2.0, DEFAULT_C, 2.0, t).unwrap()).unwrap();
        prop_assert!(b.iter().all(|i| a.binary_search(i).is_ok()));
    }
}
