use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::path::{Path, PathBuf};

use zpl_core::zetalab::{DEFAULT_A, DEFAULT_C, DEFAULT_C_STAR, DEFAULT_EPS};

use crate::CliError;

/// Raw option values, from flags or from a config file. Every field is a
/// string until [`RunConfig::resolve`] parses it.
#[derive(Debug, Clone, Default)]
pub struct Settings(BTreeMap<String, String>);

pub const KEYS: [&str; 17] = [
    "a", "arc", "c", "cache", "cstar", "degree", "eps", "fit", "fit_prime", "nu", "out", "range", "samples", "seed",
    "table", "window", "index",
];

impl Settings {
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(key.to_string(), value.into());
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// `key = value` lines; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Self, CliError> {
        let mut out = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", n + 1)))?;
            let key = k.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!("config line {}: unknown key '{}'", n + 1, k.trim())));
            }
            out.set(&key, v.trim());
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_file(&text)
    }

    /// Entries of `over` replace those of `self`.
    pub fn overlay(mut self, over: Settings) -> Self {
        self.0.extend(over.0);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Command {
    Arc,
    Cue,
    Gaps,
    Msum,
    Filter,
    Dzeros,
    Residuals,
    Hypothesis,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Arc => "arc",
            Command::Cue => "cue",
            Command::Gaps => "zeta gaps",
            Command::Msum => "zeta msum",
            Command::Filter => "zeta filter",
            Command::Dzeros => "zeta dzeros",
            Command::Residuals => "zeta residuals",
            Command::Hypothesis => "zeta hypothesis",
        }
    }

    fn is_zeta(self) -> bool {
        !matches!(self, Command::Arc | Command::Cue)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
    pub periodic: bool,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub degree: usize,
    pub arc: Arc,
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
    pub c_star: f64,
    pub c: f64,
    pub a: f64,
    pub range: Option<(f64, f64)>,
    pub fit: (f64, f64),
    pub fit_prime: (f64, f64),
    pub window: (f64, f64),
    pub index: Option<usize>,
    pub nu: Vec<f64>,
    pub table: Option<PathBuf>,
    pub out: PathBuf,
    pub cache: Option<PathBuf>,
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim().parse().map_err(|_| CliError::usage(format!("--{key}: cannot parse '{v}'")))
}

fn pair(key: &str, v: &str) -> Result<(f64, f64), CliError> {
    let (lo, hi) = v.split_once(':').ok_or_else(|| CliError::usage(format!("--{key}: expected LO:HI, got '{v}'")))?;
    let p = (num(key, lo)?, num(key, hi)?);
    if !(p.0 < p.1) {
        return Err(CliError::usage(format!("--{key}: need LO < HI, got '{v}'")));
    }
    Ok(p)
}

fn parse_arc(v: &str) -> Result<Arc, CliError> {
    match v {
        "quarter" => Ok(Arc { start: 0.0, end: FRAC_PI_2, periodic: false }),
        "half" => Ok(Arc { start: 0.0, end: TAU / 2.0, periodic: false }),
        "full" => Ok(Arc { start: 0.0, end: TAU, periodic: true }),
        _ => {
            let (start, end) = pair("arc", v)?;
            Ok(Arc { start, end, periodic: false })
        }
    }
}

impl RunConfig {
    pub fn resolve(command: Command, s: &Settings, env_cache: Option<PathBuf>) -> Result<Self, CliError> {
        let opt = |k: &str| s.get(k);
        let degree = match opt("degree") {
            Some(v) => num("degree", v)?,
            None if command == Command::Cue => 100,
            None => 16,
        };
        let default_fit = if command == Command::Cue { "0.5:2" } else { "0.1:1" };
        let range = match opt("range") {
            Some(v) => Some(pair("range", v)?),
            None if matches!(command, Command::Gaps | Command::Msum) => None,
            None if command.is_zeta() => Some((10.0, 200.0)),
            None => None,
        };
        let nu = opt("nu")
            .unwrap_or("0.1,0.25,0.5,1,2")
            .split(',')
            .map(|x| num("nu", x))
            .collect::<Result<Vec<f64>, _>>()?;
        let cfg = RunConfig {
            command,
            degree,
            arc: parse_arc(opt("arc").unwrap_or("quarter"))?,
            samples: num("samples", opt("samples").unwrap_or("300"))?,
            seed: num("seed", opt("seed").unwrap_or("1"))?,
            eps: opt("eps").map_or(Ok(DEFAULT_EPS), |v| num("eps", v))?,
            c_star: opt("cstar").map_or(Ok(DEFAULT_C_STAR), |v| num("cstar", v))?,
            c: opt("c").map_or(Ok(DEFAULT_C), |v| num("c", v))?,
            a: opt("a").map_or(Ok(DEFAULT_A), |v| num("a", v))?,
            range,
            fit: pair("fit", opt("fit").unwrap_or(default_fit))?,
            fit_prime: pair("fit_prime", opt("fit_prime").unwrap_or("0.3:1.5"))?,
            window: {
                let v = opt("window").unwrap_or("0:1");
                let (lo, hi) = v
                    .split_once(':')
                    .ok_or_else(|| CliError::usage(format!("--window: expected INNER:OUTER, got '{v}'")))?;
                (num("window", lo)?, num("window", hi)?)
            },
            index: opt("index").map(|v| num("index", v)).transpose()?,
            nu,
            table: opt("table").map(PathBuf::from),
            out: PathBuf::from(opt("out").unwrap_or("zpl-out")),
            cache: opt("cache").map(PathBuf::from).or(env_cache),
        };
        Ok(cfg)
    }

    /// Constants and inputs in a fixed order, for the metadata block of
    /// every artifact. The cache directory is left out: it changes where
    /// results are kept, not what they are.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let p = |(lo, hi): (f64, f64)| format!("{lo}:{hi}");
        vec![
            ("command", self.command.name().to_string()),
            ("degree", self.degree.to_string()),
            ("arc", format!("{}:{}{}", self.arc.start, self.arc.end, if self.arc.periodic { " periodic" } else { "" })),
            ("samples", self.samples.to_string()),
            ("seed", self.seed.to_string()),
            ("fit", p(self.fit)),
            ("fit_prime", p(self.fit_prime)),
            ("table", self.table.as_ref().map_or(String::new(), |t| t.display().to_string())),
            ("range", self.range.map_or("all".to_string(), p)),
            ("eps", self.eps.to_string()),
            ("cstar", self.c_star.to_string()),
            ("c", self.c.to_string()),
            ("a", self.a.to_string()),
            ("window", format!("{}:{}", self.window.0, self.window.1)),
            ("index", self.index.map_or("all".to_string(), |i| i.to_string())),
            ("nu", self.nu.iter().map(f64::to_string).collect::<Vec<_>>().join(",")),
        ]
    }
}
