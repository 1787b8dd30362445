//! Measures the quantities whose thresholds are frozen in the test suites.
//!
//! cargo run --release -p zpl-core --example calibrate -- [section ...]
//! Sections: dzeros, zpz, discrepancy, arc, sound, cue, dirichlet.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::PathBuf;

use zpl_core::polyzeros::{build_arc_config, critical_points, expand_clusters, poly_radial_lambdas, EndpointMode};
use zpl_core::rmt::{ensemble_statistics, sample_cue_angles};
use zpl_core::stats::{empirical_cdf, fit_exponent};
use zpl_core::zetaeval::{
    count_deriv_zeros, dirichlet_sum, find_deriv_zeros, log_deriv, short_sum, short_sum_residual, sound_moment_check,
    zpz_zero_expansion, DirichletApprox, DirichletConfig, EvalConfig, RecordConfig, CONTOUR_SIGMA_HI,
    CONTOUR_SIGMA_LO,
};
use zpl_core::zetalab::{
    discrepancy, twosided_ratio, wellspaced_filter, CaseTag, FilterConfig, ZeroTable, DEFAULT_A, DEFAULT_C_STAR,
};
use zpl_core::Complex64;

fn table() -> ZeroTable {
    ZeroTable::load(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/zeros_10k.txt")).unwrap()
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let want = |s: &str| args.is_empty() || args.iter().any(|a| a == s);
    if want("dzeros") {
        dzeros();
    }
    if want("zpz") {
        zpz();
    }
    if want("discrepancy") {
        discrepancy_constant();
    }
    if want("arc") {
        arc();
    }
    if want("sound") {
        sound();
    }
    if want("dirichlet") {
        dirichlet();
    }
    if want("cue") {
        cue();
    }
}

fn dzeros() {
    let t = table();
    let cfg = EvalConfig::default();
    let rec = RecordConfig::default();
    for (lo, hi) in [(10.0, 100.0), (10.0, 200.0), (10.0, 500.0)] {
        let start = std::time::Instant::now();
        let search = find_deriv_zeros(&t, lo, hi, &cfg, &rec).unwrap();
        let found = start.elapsed();
        let oracle = count_deriv_zeros(CONTOUR_SIGMA_LO, CONTOUR_SIGMA_HI, lo, hi, &cfg).unwrap();
        println!(
            "dzeros ({lo}, {hi}): records {} oracle {oracle} failures {} search {:.1?} total {:.1?}",
            search.records.len(),
            search.failures.len(),
            found,
            start.elapsed()
        );
        let min_beta = search.records.iter().map(|r| r.beta_prime).fold(f64::INFINITY, f64::min);
        let max_newton = search.records.iter().map(|r| r.newton_residual).fold(0.0, f64::max);
        println!("  min beta' {min_beta:.6} max newton residual {max_newton:e}");
        for f in &search.failures {
            println!("  failure at seed {:.3}+{:.4}i: {}", f.sigma, f.seed, f.reason);
        }
        let filter = FilterConfig::with_defaults(hi).unwrap();
        let passing = wellspaced_filter(&t, &filter).unwrap();
        let mut res: Vec<f64> = search
            .records
            .iter()
            .filter(|r| passing.binary_search(&r.paired_index).is_ok())
            .map(|r| r.moment_residual)
            .collect();
        res.sort_by(f64::total_cmp);
        println!(
            "  moment residual over {} filtered records: median {:.3} max {:.3}",
            res.len(),
            res.get(res.len() / 2).copied().unwrap_or(f64::NAN),
            res.last().copied().unwrap_or(f64::NAN)
        );
        let all_max = search.records.iter().map(|r| r.moment_residual).fold(0.0, f64::max);
        println!("  moment residual over all records: max {all_max:.3}");
        let ratios: Vec<f64> = search
            .records
            .iter()
            .filter(|r| r.case_tag == CaseTag::Case3)
            .map(|r| twosided_ratio(r.beta_prime, r.gamma_prime, r.gamma_c).unwrap())
            .collect();
        let cases = [CaseTag::Case1, CaseTag::Case2, CaseTag::Case3]
            .map(|c| search.records.iter().filter(|r| r.case_tag == c).count());
        println!(
            "  cases {cases:?}; case-3 two-sided ratio range [{:.4}, {:.4}]",
            ratios.iter().copied().fold(f64::INFINITY, f64::min),
            ratios.iter().copied().fold(0.0, f64::max)
        );
    }
    for (lo, hi) in [(14.134725142, 21.022039639), (21.022039639, 25.010857580)] {
        println!(
            "contour count in ({lo}, {hi}): {}",
            count_deriv_zeros(CONTOUR_SIGMA_LO, CONTOUR_SIGMA_HI, lo, hi, &cfg).unwrap()
        );
    }
    // zeros of ζ′ right of σ = 3 would escape the contour
    println!(
        "contour count in [3, 3.1] x (10, 500): {}",
        count_deriv_zeros(3.0, 3.05, 10.0, 500.0, &cfg).unwrap()
    );
}

fn zpz() {
    let t = table();
    let cfg = EvalConfig::default();
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let tt = 490.0 + 20.0 * k as f64 / 199.0;
        let s = Complex64::new(0.5 + 1.0 / tt.ln(), tt);
        let l = log_deriv(s, &cfg).unwrap();
        let e = zpz_zero_expansion(s, &t, 1.0).unwrap();
        worst = worst.max((l - e).norm() / tt.ln());
    }
    println!("zpz: max |log_deriv - expansion(1)|/log t over t in [490, 510]: {worst:.4}");

    for height in [200.0, 500.0, 5000.0] {
        let filter = FilterConfig::with_defaults(height).unwrap();
        let passing = wellspaced_filter(&t, &filter).unwrap();
        let mut consistency: f64 = 0.0;
        let mut residuals = Vec::new();
        for &n in &passing {
            let g = t.ordinates()[n];
            if g < 14.0 {
                continue;
            }
            let s = Complex64::new(0.5 + 1.0 / g.ln(), g);
            let a = short_sum(s, &t, DEFAULT_C_STAR).unwrap();
            let b = zpz_zero_expansion(s, &t, 1.0).unwrap();
            consistency = consistency.max((a - b).norm() / g.ln());
            if height <= 500.0 || n % 25 == 0 {
                residuals.push(short_sum_residual(&t, n, DEFAULT_C_STAR, DEFAULT_A, &cfg).unwrap());
            }
        }
        residuals.sort_by(f64::total_cmp);
        let q = |p: f64| residuals[((residuals.len() - 1) as f64 * p) as usize];
        println!(
            "T = {height}: {} pass the filter; short/window-1 consistency max {consistency:.3}; \
             short-sum residual over {}: median {:.3} p90 {:.3} p99 {:.3} max {:.3}",
            passing.len(),
            residuals.len(),
            q(0.5),
            q(0.9),
            q(0.99),
            q(1.0)
        );
    }
}

fn discrepancy_constant() {
    let t = table();
    for height in [200.0, 500.0, 5000.0] {
        let f = FilterConfig::with_defaults(height).unwrap();
        let l = f.l_max();
        let mut worst: f64 = 0.0;
        let candidates = t.ordinates().partition_point(|&g| g <= height);
        for n in 0..candidates {
            for l1 in -l..=l {
                for l2 in l1 + 1..=l {
                    let d = discrepancy(&t, n, l1, l2, f.c_star).unwrap();
                    worst = worst.max(d.value);
                }
            }
        }
        println!(
            "real table T = {height}: l_max {l} K {} max N(γ,l1,l2) {worst:.3} = {:.3} log log T",
            f.k(),
            worst / height.ln().ln()
        );
        for c in [0.5, 1.0, 1.5, 2.0] {
            let cfg = FilterConfig::new(f.eps, f.c_star, c, f.a, height).unwrap();
            let pass = wellspaced_filter(&t, &cfg).unwrap().len();
            println!("  C = {c}: {pass}/{candidates} pass ({:.3})", pass as f64 / candidates as f64);
        }
    }
    // synthetic tables: CUE eigenangles mapped to mean spacing 2π/log T
    for height in [500.0, 5000.0] {
        let mut pass_frac = Vec::new();
        for seed in 0..5u64 {
            let n = 256;
            let s = sample_cue_angles(n, seed).unwrap();
            let spacing = TAU / (height as f64).ln();
            let ord: Vec<f64> =
                s.angles.iter().map(|a| height - 128.0 * spacing + a * n as f64 / TAU * spacing).collect();
            let syn = ZeroTable::from_ordinates(ord).unwrap();
            let inner = height + 60.0 * spacing;
            let lo_index = syn.ordinates().partition_point(|&g| g < height - 60.0 * spacing);
            let cand = syn.ordinates().partition_point(|&g| g <= height) - lo_index;
            let mut row = Vec::new();
            for c in [0.5, 1.0, 1.5, 2.0] {
                let cfg = FilterConfig::new(0.3, 2.0, c, 2.0, height).unwrap();
                let pass = wellspaced_filter(&syn, &cfg).unwrap().into_iter().filter(|&i| i >= lo_index).count();
                row.push(pass as f64 / cand as f64);
            }
            let _ = inner;
            pass_frac.push(row);
        }
        println!("synthetic CUE tables at T = {height}: pass fractions for C = 0.5, 1, 1.5, 2 per seed: {pass_frac:.3?}");
    }
}

fn arc() {
    let cfg = build_arc_config(501, 0.0, FRAC_PI_2, EndpointMode::BothInclusive).unwrap();
    let crit = expand_clusters(&critical_points(&cfg.points(), 1e-10).unwrap());
    let lp = poly_radial_lambdas(&crit, 501, true).unwrap();
    let cdf = empirical_cdf(&lp).unwrap();
    let mut worst = f64::INFINITY;
    for k in 0..10 {
        let nu = 0.1 + 0.1 * k as f64;
        let r = cdf.eval(nu) / (nu * nu);
        worst = worst.min(r);
        println!("arc N=501: nu {nu:.1} m' {:.4} m'/nu^2 {r:.4}", cdf.eval(nu));
    }
    println!("arc N=501: min lambda' {:.4}, min m'/nu^2 {worst:.4}", lp[0]);
}

fn sound() {
    let primes: Vec<u64> = (2..=50).filter(|&p| (2..p).all(|d| p % d != 0)).collect();
    let coeffs: Vec<(u64, Complex64)> = primes.iter().map(|&p| (p, Complex64::new(1.0, 0.0))).collect();
    let step = 0.01 * TAU / 50f64.ln();
    let r = sound_moment_check(&coeffs, 1, 1e4, 50.0, step).unwrap();
    println!("sound: lhs {:.3} rhs {:.3} ratio {:.4}", r.lhs, r.rhs, r.ratio);
}

fn dirichlet() {
    let cfg = EvalConfig::default();
    let s = Complex64::new(2.0, 0.0);
    let target = log_deriv(s, &cfg).unwrap();
    for x in [125.0, 250.0, 500.0, 1000.0] {
        let a = DirichletApprox::new(DirichletConfig::new(x, 1).unwrap());
        let full = dirichlet_sum(s, &a, false);
        let primes = dirichlet_sum(s, &a, true);
        println!("dirichlet x {x}: error {:e}, prime-only differs by {:e}", (full - target).norm(), (full - primes).norm());
    }
}

fn cue() {
    let start = std::time::Instant::now();
    let e = ensemble_statistics(100, 300, 1).unwrap();
    println!("cue N=100x300 took {:.1?}", start.elapsed());
    let m = fit_exponent(&empirical_cdf(&e.lambdas).unwrap(), 0.5, 2.0).unwrap();
    let mp = fit_exponent(&empirical_cdf(&e.lambda_primes).unwrap(), 0.3, 1.5).unwrap();
    println!("cue m: alpha {:.4} kappa {:.4} (pi/6 = {:.4}) rms {:.4}", m.alpha, m.kappa, PI / 6.0, m.rms_residual);
    println!("cue m': alpha {:.4} kappa {:.4} (8/(9pi) = {:.4}) rms {:.4}", mp.alpha, mp.kappa, 8.0 / (9.0 * PI), mp.rms_residual);
    for base in [1001u64, 2001, 3001] {
        let e = ensemble_statistics(100, 300, base).unwrap();
        let m = fit_exponent(&empirical_cdf(&e.lambdas).unwrap(), 0.5, 2.0).unwrap();
        let mp = fit_exponent(&empirical_cdf(&e.lambda_primes).unwrap(), 0.3, 1.5).unwrap();
        let lo = fit_exponent(&empirical_cdf(&e.lambda_primes).unwrap(), 0.1, 0.5).unwrap();
        println!("cue base seed {base}: alpha {:.4}, alpha' {:.4}, alpha' on [0.1, 0.5] {:.4}", m.alpha, mp.alpha, lo.alpha);
    }
    let mut ks: f64 = 0.0;
    let mut a: Vec<f64> = (0..10_000u64).map(|s| sample_cue_angles(1, s).unwrap().angles[0] / TAU).collect();
    a.sort_by(f64::total_cmp);
    for (i, v) in a.iter().enumerate() {
        ks = ks.max(((i + 1) as f64 / a.len() as f64 - v).abs()).max((v - i as f64 / a.len() as f64).abs());
    }
    println!("cue N=1 KS distance over 10^4 seeds: {ks:.4}");
}
