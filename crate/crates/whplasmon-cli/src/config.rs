//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_complex::Complex64;
use whplasmon::{MediumParams, NystromConfig, QuadratureConfig};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Sample points in units of 1/|k|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn parse(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(bad(format!("grid {s:?}: expected x_min:x_max:points:lin|log")));
        }
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad(format!("grid {s:?}: bad number {t:?}")));
        let g = Grid {
            x_min: num(parts[0])?,
            x_max: num(parts[1])?,
            points: parts[2].parse().map_err(|_| bad(format!("grid {s:?}: bad point count")))?,
            spacing: match parts[3] {
                "lin" | "linear" => Spacing::Linear,
                "log" => Spacing::Log,
                o => return Err(bad(format!("grid {s:?}: unknown spacing {o:?}"))),
            },
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> CliResult<()> {
        if !(self.x_min > 0.0) || !self.x_max.is_finite() {
            return Err(bad(format!("grid needs 0 < x_min (got {})", self.x_min)));
        }
        match self.points {
            0 => Err(bad("grid needs at least one point".into())),
            1 if self.x_max != self.x_min => Err(bad("a one-point grid needs x_min = x_max".into())),
            1 => Ok(()),
            _ if self.x_max <= self.x_min => Err(bad("grid must be strictly increasing".into())),
            _ => Ok(()),
        }
    }

    /// Grid values, still in units of 1/|k|.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.x_min];
        }
        let n = (self.points - 1) as f64;
        (0..self.points)
            .map(|j| {
                let t = j as f64 / n;
                match self.spacing {
                    Spacing::Linear => self.x_min + (self.x_max - self.x_min) * t,
                    Spacing::Log => self.x_min * (self.x_max / self.x_min).powf(t),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: MediumParams<f64>,
    pub grid: Grid,
    pub quadrature: QuadratureConfig<f64>,
    pub oracle: NystromConfig<f64>,
    /// Comparison window for the oracle, in units of 1/|k|.
    pub window: (f64, f64),
    /// Relative RMS threshold for the oracle comparison.
    pub max_rms: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub const KEYS: [&str; 11] = [
    "k", "varsigma", "theta_deg", "grid", "rel_tol", "format", "out", "oracle_kL", "oracle_N", "window", "max_rms",
];

impl RunConfig {
    /// Builds a configuration from `key = value` settings; later entries win.
    pub fn from_settings(settings: &BTreeMap<String, String>) -> CliResult<Self> {
        for key in settings.keys() {
            if !KEYS.contains(&key.as_str()) {
                return Err(bad(format!("unknown key {key:?}")));
            }
        }
        let get = |k: &str| settings.get(k).map(String::as_str);
        let float = |k: &str, d: f64| -> CliResult<f64> {
            get(k).map_or(Ok(d), |v| v.trim().parse().map_err(|_| bad(format!("{k}: bad number {v:?}"))))
        };
        let k = get("k").map_or(Ok(Complex64::new(1.0, 0.0)), parse_complex)?;
        let varsigma = get("varsigma").map_or(Ok(Complex64::new(0.002, 0.2)), parse_complex)?;
        let theta = float("theta_deg", 20.0)?.to_radians();
        let params = MediumParams::new(k, varsigma, theta)?;
        let rel_tol = float("rel_tol", 1e-8)?;
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(bad(format!("rel_tol must lie in (0, 1), got {rel_tol}")));
        }
        let grid = Grid::parse(get("grid").unwrap_or("0.1:30:300:log"))?;
        let n = get("oracle_N").map_or(Ok(4000), |v| {
            v.trim().parse::<usize>().map_err(|_| bad(format!("oracle_N: bad count {v:?}")))
        })?;
        let oracle = NystromConfig::new(float("oracle_kL", 40.0)?, n);
        let window = match get("window") {
            None => (2.0, 20.0),
            Some(w) => {
                let (a, b) = w.split_once(':').ok_or_else(|| bad(format!("window {w:?}: expected lo:hi")))?;
                let p = |t: &str| t.trim().parse::<f64>().map_err(|_| bad(format!("window {w:?}")));
                (p(a)?, p(b)?)
            }
        };
        if !(window.0 < window.1) {
            return Err(bad("window must satisfy lo < hi".into()));
        }
        let format = match get("format").unwrap_or("csv") {
            "csv" => Format::Csv,
            "json" => Format::Json,
            o => return Err(bad(format!("unknown format {o:?}"))),
        };
        Ok(Self {
            params,
            grid,
            quadrature: QuadratureConfig::with_rel_tol(rel_tol),
            oracle,
            window,
            max_rms: float("max_rms", 0.05)?,
            format,
            out: get("out").map(PathBuf::from),
        })
    }
}

/// Parses a flat `key = value` file; `#` starts a comment.
pub fn parse_settings(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("line {}: expected key = value", n + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (spaces ignored, `j` accepted for `i`).
pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || bad(format!("bad complex number {s:?}"));
    if t.is_empty() {
        return Err(err());
    }
    let num = |u: &str| -> CliResult<f64> {
        match u {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => u.parse().map_err(|_| err()),
        }
    };
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(t.parse().map_err(|_| err())?, 0.0));
    };
    let b = body.as_bytes();
    let split = (1..b.len())
        .rev()
        .find(|&j| (b[j] == b'+' || b[j] == b'-') && !matches!(b[j - 1], b'e' | b'E'));
    match split {
        Some(j) => Ok(Complex64::new(body[..j].parse().map_err(|_| err())?, num(&body[j..])?)),
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}

/// `a+bi` with shortest round-trip components.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn bad(msg: String) -> CliError {
    CliError::Config(msg)
}
