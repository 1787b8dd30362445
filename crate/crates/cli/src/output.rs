use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::{json, Map, Value};
use zpl_core::zetaeval::cache::atomic_write;

use crate::config::RunConfig;
use crate::CliError;

pub const TOOL: &str = concat!("zpl ", env!("CARGO_PKG_VERSION"));

/// Writes artifacts into the output directory, each prefixed with the same
/// metadata: tool version, configuration echo and input digests.
pub struct Emitter {
    dir: PathBuf,
    meta: Vec<(String, String)>,
}

impl Emitter {
    pub fn new(cfg: &RunConfig, inputs: &[(&str, String)]) -> Result<Self, CliError> {
        std::fs::create_dir_all(&cfg.out)?;
        let mut meta = vec![("tool".to_string(), TOOL.to_string())];
        meta.extend(cfg.echo().into_iter().map(|(k, v)| (k.to_string(), v)));
        meta.extend(inputs.iter().map(|(k, v)| (format!("input.{k}"), v.clone())));
        Ok(Self { dir: cfg.out.clone(), meta })
    }

    fn write(&self, name: &str, body: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        atomic_write(&path, body.as_bytes())?;
        eprintln!("wrote {}", path.display());
        Ok(path)
    }

    /// `# key: value` lines ahead of the header row.
    pub fn csv(&self, name: &str, header: &str, rows: impl IntoIterator<Item = String>) -> Result<PathBuf, CliError> {
        let mut body = String::new();
        for (k, v) in &self.meta {
            writeln!(body, "# {k}: {v}").unwrap();
        }
        body.push_str(header);
        body.push('\n');
        for r in rows {
            body.push_str(&r);
            body.push('\n');
        }
        self.write(name, &body)
    }

    /// `{"meta": {...}, "data": ...}`, pretty-printed with sorted keys.
    pub fn json(&self, name: &str, data: Value) -> Result<PathBuf, CliError> {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let mut body = serde_json::to_string_pretty(&json!({ "meta": meta, "data": data })).unwrap();
        body.push('\n');
        self.write(name, &body)
    }

    pub fn svg(&self, name: &str, plot: &Scatter) -> Result<PathBuf, CliError> {
        let comment: String =
            self.meta.iter().map(|(k, v)| format!("  {k}: {}\n", v.replace("--", "- -"))).collect();
        self.write(name, &plot.render(&comment))
    }
}

pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
}

/// Scatter plot on a fixed 800×500 viewport.
pub struct Scatter {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

const W: f64 = 800.0;
const H: f64 = 500.0;
const MARGIN: f64 = 60.0;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Scatter {
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let pts = self.series.iter().flat_map(|s| s.points.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            return (0.0, 1.0, 0.0, 1.0);
        }
        let pad = |lo: f64, hi: f64| {
            let d = if hi > lo { 0.05 * (hi - lo) } else { 0.5 };
            (lo - d, hi + d)
        };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        (x0, x1, y0, y1)
    }

    pub fn render(&self, comment: &str) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
        let py = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);
        let mut s = String::new();
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#).unwrap();
        writeln!(s, "<!--\n{comment}-->").unwrap();
        writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
        writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            W - 2.0 * MARGIN,
            H - 2.0 * MARGIN
        )
        .unwrap();
        writeln!(s, r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{}</text>"#, W / 2.0, esc(&self.title))
            .unwrap();
        writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#, W / 2.0, H - 15.0, esc(&self.x_label))
            .unwrap();
        writeln!(
            s,
            r#"<text x="18" y="{}" text-anchor="middle" font-size="13" transform="rotate(-90 18 {})">{}</text>"#,
            H / 2.0,
            H / 2.0,
            esc(&self.y_label)
        )
        .unwrap();
        for (v, x, y, anchor) in [
            (x0, px(x0), H - MARGIN + 16.0, "start"),
            (x1, px(x1), H - MARGIN + 16.0, "end"),
            (y0, MARGIN - 6.0, py(y0), "end"),
            (y1, MARGIN - 6.0, py(y1) + 10.0, "end"),
        ] {
            writeln!(s, r#"<text x="{x:.1}" y="{y:.1}" text-anchor="{anchor}" font-size="11">{v:.3}</text>"#).unwrap();
        }
        for (k, series) in self.series.iter().enumerate() {
            writeln!(s, r#"<g fill="{}">"#, series.color).unwrap();
            for &(x, y) in &series.points {
                writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#, px(x), py(y)).unwrap();
            }
            writeln!(s, "</g>").unwrap();
            let ly = MARGIN + 16.0 + 16.0 * k as f64;
            writeln!(
                s,
                r#"<circle cx="{:.1}" cy="{:.1}" r="4" fill="{}"/><text x="{:.1}" y="{:.1}" font-size="12">{}</text>"#,
                W - MARGIN - 120.0,
                ly - 4.0,
                series.color,
                W - MARGIN - 110.0,
                ly,
                esc(&series.label)
            )
            .unwrap();
        }
        s.push_str("</svg>\n");
        s
    }
}
