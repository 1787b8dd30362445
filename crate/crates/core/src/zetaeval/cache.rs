//! On-disk cache of ζ′ zero records.

use std::io::Write;
use std::path::{Path, PathBuf};

use super::{find_deriv_zeros, DerivZeroRecord, DerivZeroSearch, EvalConfig, RecordConfig};
use crate::error::{Error, Result};
use crate::zetalab::{nearest_zero, sha256_hex, CaseTag, ZeroTable};

pub const HEADER: &str = "gamma_prime,beta_prime,lambda_prime,gamma_c,case,M_trunc,moment_residual,newton_residual";

/// Twelve significant digits in scientific notation.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn records_to_csv(records: &[DerivZeroRecord]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in records {
        let fields = [
            fmt12(r.gamma_prime),
            fmt12(r.beta_prime),
            fmt12(r.lambda_prime),
            fmt12(r.gamma_c),
            r.case_tag.number().to_string(),
            fmt12(r.m_trunc),
            fmt12(r.moment_residual),
            fmt12(r.newton_residual),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Parses [`records_to_csv`] output; the pairing index is recovered from
/// `table`.
pub fn records_from_csv(text: &str, table: &ZeroTable) -> Result<Vec<DerivZeroRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        _ => return Err(Error::Parse { line: 1, message: "missing or unexpected header".into() }),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| Error::Parse { line: i + 1, message };
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 8 {
            return Err(bad(format!("expected 8 fields, found {}", cols.len())));
        }
        let num = |k: usize| cols[k].trim().parse::<f64>().map_err(|_| bad(format!("field {} not a number", k + 1)));
        let case_tag = cols[4]
            .trim()
            .parse::<u8>()
            .ok()
            .and_then(CaseTag::from_number)
            .ok_or_else(|| bad("case must be 1, 2 or 3".into()))?;
        let gamma_c = num(3)?;
        let (paired_index, _) = nearest_zero(table, gamma_c)?;
        out.push(DerivZeroRecord {
            gamma_prime: num(0)?,
            beta_prime: num(1)?,
            lambda_prime: num(2)?,
            gamma_c,
            case_tag,
            m_trunc: num(5)?,
            moment_residual: num(6)?,
            newton_residual: num(7)?,
            paired_index,
        });
    }
    Ok(out)
}

/// Hex digest of everything that determines a search result.
pub fn cache_key(table_digest: &str, t_min: f64, t_max: f64, cfg: &EvalConfig, rec: &RecordConfig) -> String {
    let text = format!(
        "table={table_digest};t_min={t_min:?};t_max={t_max:?};{};eps={:?};c_star={:?}",
        cfg.canonical(),
        rec.eps,
        rec.c_star
    );
    sha256_hex(text.as_bytes())
}

pub fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("dzeros-{key}.csv"))
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

/// Cached [`find_deriv_zeros`]. Returns the search and whether it came
/// from the cache; cached searches carry no seed failures.
pub fn find_deriv_zeros_cached(
    dir: &Path,
    table: &ZeroTable,
    t_min: f64,
    t_max: f64,
    cfg: &EvalConfig,
    rec: &RecordConfig,
) -> Result<(DerivZeroSearch, bool)> {
    let path = cache_path(dir, &cache_key(table.digest(), t_min, t_max, cfg, rec));
    if let Ok(text) = std::fs::read_to_string(&path) {
        let records = records_from_csv(&text, table)?;
        return Ok((DerivZeroSearch { records, failures: Vec::new() }, true));
    }
    let search = find_deriv_zeros(table, t_min, t_max, cfg, rec)?;
    atomic_write(&path, records_to_csv(&search.records).as_bytes())?;
    Ok((search, false))
}
