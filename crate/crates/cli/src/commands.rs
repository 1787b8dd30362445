use std::collections::BTreeSet;
use std::f64::consts::TAU;

use serde_json::{json, Value};
use zpl_core::polyzeros::{
    build_arc_config, critical_points, expand_clusters, poly_gap_lambdas, poly_radial_lambdas, unroll, EndpointMode,
    MAX_DEGREE,
};
use zpl_core::rmt::{ensemble_statistics, MAX_DIMENSION};
use zpl_core::stats::{empirical_cdf, fit_exponent, hypothesis_count, kappa_prime_relation, small_gap_count, PowerLawFit};
use zpl_core::zetaeval::cache::{find_deriv_zeros_cached, fmt12, records_from_csv, records_to_csv, HEADER};
use zpl_core::zetaeval::{
    find_deriv_zeros, short_sum_residual, DerivZeroRecord, EvalConfig, RecordConfig, MOMENT_RESIDUAL_BOUND,
    SHORT_SUM_RESIDUAL_BOUND,
};
use zpl_core::zetalab::{gap_lambdas, m_hat, m_truncated, m_window_sum, wellspaced_filter, FilterConfig, ZeroTable};

use crate::config::{Command, RunConfig};
use crate::output::{Emitter, Scatter, Series};
use crate::CliError;

const ARC_ROOT_TOL: f64 = 1e-10;

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    match cfg.command {
        Command::Arc => arc(cfg),
        Command::Cue => cue(cfg),
        _ => zeta(cfg),
    }
}

fn fit_json(fit: &PowerLawFit) -> Value {
    serde_json::to_value(fit).expect("fit serializes")
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

fn arc(cfg: &RunConfig) -> Result<(), CliError> {
    let n = cfg.degree;
    if !(2..=MAX_DEGREE).contains(&n) {
        return Err(CliError::usage(format!("--degree must be in 2..={MAX_DEGREE}, got {n}")));
    }
    let mode = if cfg.arc.periodic { EndpointMode::Periodic } else { EndpointMode::BothInclusive };
    let config = build_arc_config(n, cfg.arc.start, cfg.arc.end, mode)?;
    let zeros = config.points();
    let mut crit = expand_clusters(&critical_points(&zeros, ARC_ROOT_TOL)?);
    crit.sort_by(|a, b| a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm())));
    let uz = unroll(&zeros, n)?;
    let ud = unroll(&crit, n)?;
    let lambdas = poly_gap_lambdas(&config)?;
    let lambda_primes = poly_radial_lambdas(&crit, n, true)?;

    let out = Emitter::new(cfg, &[])?;
    out.csv(
        &format!("arc-N{n}-zeros.csv"),
        "index,theta,re,im",
        zeros.iter().zip(&uz).enumerate().map(|(i, (z, u))| {
            format!("{i},{},{},{}", fmt12(u.theta), fmt12(z.re), fmt12(z.im))
        }),
    )?;
    out.csv(
        &format!("arc-N{n}-dzeros.csv"),
        "index,re,im,theta,radius,lambda_prime,display_height",
        crit.iter().zip(&ud).enumerate().map(|(i, (z, u))| {
            format!(
                "{i},{},{},{},{},{},{}",
                fmt12(z.re),
                fmt12(z.im),
                fmt12(u.theta),
                fmt12(u.radius),
                fmt12(u.normalized_radial),
                fmt12(u.display_height)
            )
        }),
    )?;
    out.svg(
        &format!("arc-N{n}-unrolled.svg"),
        &Scatter {
            title: format!("degree {n}: zeros and derivative zeros, unrolled"),
            x_label: "θ".into(),
            y_label: "2πN(1 − r)".into(),
            series: vec![
                Series { label: "zeros".into(), color: "#1f4e9c", points: uz.iter().map(|u| (u.theta, u.display_height)).collect() },
                Series {
                    label: "derivative zeros".into(),
                    color: "#c0392b",
                    points: ud.iter().map(|u| (u.theta, u.display_height)).collect(),
                },
            ],
        },
    )?;
    let (lo, hi) = cfg.fit;
    let m_prime: Vec<Value> = grid(lo, hi, 10)
        .map(|nu| {
            let m = m_hat(&lambda_primes, nu)?;
            Ok(json!({ "nu": nu, "m_hat_prime": m, "ratio_to_nu_squared": m / (nu * nu) }))
        })
        .collect::<Result<_, CliError>>()?;
    let min_lambda = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
    out.json(
        &format!("arc-N{n}-summary.json"),
        json!({
            "degree": n,
            "derivative_zero_count": crit.len(),
            "min_lambda": min_lambda,
            "min_lambda_prime": lambda_primes[0],
            "m_hat_prime": m_prime,
        }),
    )?;
    Ok(())
}

fn cue(cfg: &RunConfig) -> Result<(), CliError> {
    let n = cfg.degree;
    if !(2..=MAX_DIMENSION).contains(&n) {
        return Err(CliError::usage(format!("--degree must be in 2..={MAX_DIMENSION}, got {n}")));
    }
    if cfg.samples == 0 {
        return Err(CliError::usage("--samples must be positive"));
    }
    let e = ensemble_statistics(n, cfg.samples, cfg.seed)?;
    let mut lambdas = e.lambdas.clone();
    lambdas.sort_by(f64::total_cmp);
    let fit = fit_exponent(&empirical_cdf(&lambdas)?, cfg.fit.0, cfg.fit.1)?;
    let fit_p = fit_exponent(&empirical_cdf(&e.lambda_primes)?, cfg.fit_prime.0, cfg.fit_prime.1)?;

    let out = Emitter::new(cfg, &[])?;
    out.csv(&format!("cue-N{n}-lambdas.csv"), "lambda", lambdas.iter().map(|&l| fmt12(l)))?;
    out.csv(&format!("cue-N{n}-lambda-primes.csv"), "lambda_prime", e.lambda_primes.iter().map(|&l| fmt12(l)))?;
    out.json(&format!("cue-N{n}-fit-m.json"), fit_json(&fit))?;
    out.json(
        &format!("cue-N{n}-fit-m-prime.json"),
        json!({
            "fit": fit_json(&fit_p),
            "kappa_prime_from_m_fit": kappa_prime_relation(fit.kappa, fit.alpha)?,
            "alpha_prime_from_m_fit": fit.alpha / 2.0,
        }),
    )?;
    Ok(())
}

fn range_of(cfg: &RunConfig) -> (f64, f64) {
    cfg.range.unwrap_or((f64::NEG_INFINITY, f64::INFINITY))
}

fn zeta(cfg: &RunConfig) -> Result<(), CliError> {
    let path = cfg.table.as_ref().ok_or_else(|| CliError::usage("--table is required for zeta subcommands"))?;
    let table = ZeroTable::load(path)?;
    let out = Emitter::new(cfg, &[("table_sha256", table.digest().to_string())])?;
    match cfg.command {
        Command::Gaps => gaps(cfg, &table, &out),
        Command::Msum => msum(cfg, &table, &out),
        Command::Filter => filter(cfg, &table, &out),
        Command::Dzeros => dzeros(cfg, &table, &out),
        Command::Residuals => residuals(cfg, &table, &out),
        Command::Hypothesis => hypothesis(cfg, &table, &out),
        Command::Arc | Command::Cue => unreachable!(),
    }
}

fn gaps(cfg: &RunConfig, table: &ZeroTable, out: &Emitter) -> Result<(), CliError> {
    let (lo, hi) = range_of(cfg);
    let recs: Vec<_> = gap_lambdas(table)?.into_iter().filter(|r| r.gamma >= lo && r.gamma <= hi).collect();
    out.csv(
        "zeta-gaps.csv",
        "index,gamma,lambda",
        recs.iter().map(|r| format!("{},{},{}", r.index, fmt12(r.gamma), fmt12(r.lambda))),
    )?;
    let count = recs.len();
    let summary = if count == 0 {
        json!({ "count": 0 })
    } else {
        let mean_gamma = recs.iter().map(|r| r.gamma).sum::<f64>() / count as f64;
        json!({
            "count": count,
            "mean_gamma": mean_gamma,
            "mean_lambda": recs.iter().map(|r| r.lambda).sum::<f64>() / count as f64,
            "density_prediction": TAU * mean_gamma.ln() / (mean_gamma / TAU).ln(),
            "min_lambda": recs.iter().map(|r| r.lambda).fold(f64::INFINITY, f64::min),
        })
    };
    out.json("zeta-gaps.json", summary)?;
    Ok(())
}

fn msum(cfg: &RunConfig, table: &ZeroTable, out: &Emitter) -> Result<(), CliError> {
    let (lo, hi) = range_of(cfg);
    let (inner, outer) = cfg.window;
    if !(inner >= 0.0 && inner < outer) {
        return Err(CliError::usage("--window needs 0 <= INNER < OUTER"));
    }
    let indices: Vec<usize> = match cfg.index {
        Some(j) if j < table.len() => vec![j],
        Some(j) => return Err(CliError::usage(format!("--index {j} outside the table (length {})", table.len()))),
        None => (0..table.len()).filter(|&j| (lo..=hi).contains(&table.ordinates()[j])).collect(),
    };
    let rows = indices
        .iter()
        .map(|&j| {
            let g = table.ordinates()[j];
            let m = m_window_sum(table, j, inner, outer)?;
            let mt = m_truncated(table, j, cfg.c_star)?;
            Ok(format!("{j},{},{},{},{}", fmt12(g), fmt12(m), fmt12(mt), fmt12(mt / g.ln())))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    out.csv("zeta-msum.csv", "index,gamma,m_window,m_truncated,m_truncated_over_log", rows)?;
    Ok(())
}

fn filter_config(cfg: &RunConfig, t: f64) -> Result<FilterConfig, CliError> {
    Ok(FilterConfig::new(cfg.eps, cfg.c_star, cfg.c, cfg.a, t)?)
}

/// Indices passing all three well-spacing conditions, with the short-sum
/// residual of each candidate.
fn wellspaced(cfg: &RunConfig, table: &ZeroTable, lo: f64, hi: f64) -> Result<Vec<(usize, f64, bool)>, CliError> {
    let fc = filter_config(cfg, hi)?;
    let ev = EvalConfig::default();
    wellspaced_filter(table, &fc)?
        .into_iter()
        .filter(|&j| table.ordinates()[j] >= lo)
        .map(|j| {
            let r = short_sum_residual(table, j, cfg.c_star, cfg.a, &ev)?;
            Ok((j, r, r <= SHORT_SUM_RESIDUAL_BOUND))
        })
        .collect()
}

fn filter(cfg: &RunConfig, table: &ZeroTable, out: &Emitter) -> Result<(), CliError> {
    let (lo, hi) = cfg.range.expect("zeta filter has a default range");
    let cands = wellspaced(cfg, table, lo, hi)?;
    let total = table.index_range(lo, hi).len();
    out.csv(
        "zeta-filter.csv",
        "index,gamma,short_sum_residual,in_z",
        cands.iter().map(|&(j, r, ok)| format!("{j},{},{},{}", fmt12(table.ordinates()[j]), fmt12(r), ok as u8)),
    )?;
    let in_z = cands.iter().filter(|c| c.2).count();
    out.json(
        "zeta-filter.json",
        json!({
            "zeros_in_range": total,
            "spacing_and_count_pass": cands.len(),
            "in_z": in_z,
            "fraction_in_z": if total > 0 { in_z as f64 / total as f64 } else { 0.0 },
            "short_sum_residual_bound": SHORT_SUM_RESIDUAL_BOUND,
        }),
    )?;
    Ok(())
}

/// Records of the range, from the cache when one is configured. Fresh
/// searches pass through the cache text format so that a later cached run
/// reports identical values.
fn search(cfg: &RunConfig, table: &ZeroTable) -> Result<Vec<DerivZeroRecord>, CliError> {
    let (lo, hi) = cfg.range.expect("zeta subcommands that search have a default range");
    let ev = EvalConfig::default();
    let rec = RecordConfig { eps: cfg.eps, c_star: cfg.c_star };
    let (found, hit) = match &cfg.cache {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            find_deriv_zeros_cached(dir, table, lo, hi, &ev, &rec)?
        }
        None => (find_deriv_zeros(table, lo, hi, &ev, &rec)?, false),
    };
    eprintln!("{} ζ′ zeros in ({lo}, {hi}){}", found.records.len(), if hit { ", from cache" } else { "" });
    if !found.failures.is_empty() {
        // most seeds away from a zero escape to the right; that is expected
        eprintln!("{} Newton seeds did not converge", found.failures.len());
    }
    Ok(records_from_csv(&records_to_csv(&found.records), table)?)
}

fn dzeros(cfg: &RunConfig, table: &ZeroTable, out: &Emitter) -> Result<(), CliError> {
    let recs = search(cfg, table)?;
    let csv = records_to_csv(&recs);
    let rows = csv.lines().skip(1).map(str::to_string);
    out.csv("zeta-dzeros.csv", HEADER, rows)?;
    let mut cases = [0usize; 3];
    for r in &recs {
        cases[r.case_tag.number() as usize - 1] += 1;
    }
    out.json(
        "zeta-dzeros.json",
        json!({
            "count": recs.len(),
            "min_beta_prime": recs.iter().map(|r| r.beta_prime).fold(f64::INFINITY, f64::min),
            "max_newton_residual": recs.iter().map(|r| r.newton_residual).fold(0.0, f64::max),
            "case_counts": { "1": cases[0], "2": cases[1], "3": cases[2] },
        }),
    )?;
    Ok(())
}

fn residuals(cfg: &RunConfig, table: &ZeroTable, out: &Emitter) -> Result<(), CliError> {
    let (lo, hi) = cfg.range.expect("default range");
    let recs = search(cfg, table)?;
    let good: BTreeSet<usize> = wellspaced(cfg, table, lo, hi)?.into_iter().filter(|c| c.2).map(|c| c.0).collect();
    out.csv(
        "zeta-residuals.csv",
        "gamma_prime,gamma_c,paired_index,wellspaced,moment_residual",
        recs.iter().map(|r| {
            format!(
                "{},{},{},{},{}",
                fmt12(r.gamma_prime),
                fmt12(r.gamma_c),
                r.paired_index,
                good.contains(&r.paired_index) as u8,
                fmt12(r.moment_residual)
            )
        }),
    )?;
    let mut kept: Vec<f64> = recs.iter().filter(|r| good.contains(&r.paired_index)).map(|r| r.moment_residual).collect();
    kept.sort_by(f64::total_cmp);
    let q = |p: f64| kept.get(((kept.len() as f64 - 1.0) * p).round() as usize).copied();
    let max_kept = kept.last().copied();
    out.json(
        "zeta-residuals.json",
        json!({
            "records": recs.len(),
            "wellspaced_records": kept.len(),
            "max_all": recs.iter().map(|r| r.moment_residual).fold(0.0, f64::max),
            "max_wellspaced": max_kept,
            "median_wellspaced": q(0.5),
            "p90_wellspaced": q(0.9),
            "bound": MOMENT_RESIDUAL_BOUND,
            "within_bound": max_kept.is_none_or(|m| m <= MOMENT_RESIDUAL_BOUND),
        }),
    )?;
    Ok(())
}

fn hypothesis(cfg: &RunConfig, table: &ZeroTable, out: &Emitter) -> Result<(), CliError> {
    let (_, t) = cfg.range.expect("default range");
    let recs = search(cfg, table)?;
    let rows = cfg
        .nu
        .iter()
        .map(|&nu| {
            let h = hypothesis_count(&recs, nu, t)?;
            let g = small_gap_count(table, nu, t)?;
            Ok(format!("{},{},{},{},{}", fmt12(nu), h.count, fmt12(h.implied_c), g.count, fmt12(g.normalized)))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    out.csv("zeta-hypothesis.csv", "nu,dzero_count,implied_c,small_gap_count,small_gap_normalized", rows)?;
    Ok(())
}
