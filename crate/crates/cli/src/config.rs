//! Flat key=value run configuration.
//!
//! A config file holds one `key = value` per line; `#` starts a comment. A file
//! written by this tool can be fed back as a config: only the lines between
//! `# [config]` and `# [end config]` are read (or the `config` object of a JSON
//! output). Command-line flags override file values.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::figures::FigureId;

pub const CONFIG_BEGIN: &str = "# [config]";
pub const CONFIG_END: &str = "# [end config]";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}:{line}: {reason}")]
    Syntax {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("{path}:{line}: unknown key `{key}`")]
    UnknownKey {
        path: String,
        line: usize,
        key: String,
    },

    #[error("invalid value `{value}` for `{key}`{origin}: {reason}")]
    Value {
        key: &'static str,
        value: String,
        origin: Origin,
        reason: String,
    },

    #[error("invalid `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },

    #[error("config file is for command `{found}` but `{expected}` was requested")]
    CommandMismatch { found: String, expected: String },

    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Default,
    Flag,
    File { path: String, line: usize },
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Default => f.write_str(" (default)"),
            Origin::Flag => f.write_str(" (command line)"),
            Origin::File { path, line } => write!(f, " ({path}:{line})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Single,
    Ensemble,
    Sweep,
    Mc,
    Figure,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Single => "single",
            Command::Ensemble => "ensemble",
            Command::Sweep => "sweep",
            Command::Mc => "mc",
            Command::Figure => "figure",
        }
    }

    /// Keys that affect this command, in echo order.
    fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Single | Command::Ensemble => &[
                "geometry",
                "beta",
                "delta",
                "n",
                "drive_re",
                "drive_im",
                "ratio",
                "observable",
                "theta",
                "tau_max",
                "omega_max",
                "grid_width",
                "grid_points",
                "format",
            ],
            Command::Sweep => &[
                "geometry",
                "beta",
                "delta",
                "n",
                "drive_re",
                "drive_im",
                "ratio",
                "observable",
                "grid_width",
                "grid_points",
                "format",
            ],
            Command::Mc => &["beta", "n", "samples", "seed", "format"],
            Command::Figure => &["figure", "grid_width", "grid_points", "format"],
        }
    }
}

pub const KNOWN_KEYS: &[&str] = &[
    "command",
    "geometry",
    "beta",
    "delta",
    "n",
    "drive_re",
    "drive_im",
    "ratio",
    "observable",
    "theta",
    "tau_max",
    "omega_max",
    "grid_width",
    "grid_points",
    "samples",
    "seed",
    "format",
    "figure",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    External,
    Waveguide,
    Bragg,
    AntiBragg,
    Combined,
}

impl Geometry {
    pub fn name(self) -> &'static str {
        match self {
            Geometry::External => "external",
            Geometry::Waveguide => "waveguide",
            Geometry::Bragg => "bragg",
            Geometry::AntiBragg => "antibragg",
            Geometry::Combined => "combined",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "external" => Geometry::External,
            "waveguide" => Geometry::Waveguide,
            "bragg" => Geometry::Bragg,
            "antibragg" | "anti_bragg" => Geometry::AntiBragg,
            "combined" => Geometry::Combined,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    G2Trace,
    G2Zero,
    PsiIncohSpectrum,
    PsiIncohZero,
    Squeezing,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::G2Trace => "g2_trace",
            Observable::G2Zero => "g2_zero",
            Observable::PsiIncohSpectrum => "psi_incoh_spectrum",
            Observable::PsiIncohZero => "psi_incoh_zero",
            Observable::Squeezing => "squeezing",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "g2_trace" => Observable::G2Trace,
            "g2_zero" | "sweep" => Observable::G2Zero,
            "psi_incoh_spectrum" => Observable::PsiIncohSpectrum,
            "psi_incoh_zero" => Observable::PsiIncohZero,
            "squeezing" => Observable::Squeezing,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    pub fn extension(self) -> &'static str {
        self.name()
    }
}

/// Emitter counts: `7`, `1:300` (inclusive), `1:300:2` (with step) or `2,4,10`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountSpec {
    One(usize),
    Range {
        start: usize,
        end: usize,
        step: usize,
    },
    List(Vec<usize>),
}

impl CountSpec {
    fn parse(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{}` is not a non-negative integer", t.trim()))
        };
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let (start, end, step) = match parts.as_slice() {
                [a, b] => (num(a)?, num(b)?, 1),
                [a, b, c] => (num(a)?, num(b)?, num(c)?),
                _ => return Err("expected start:end or start:end:step".into()),
            };
            if step == 0 || end < start {
                return Err("range must have start <= end and a positive step".into());
            }
            Ok(CountSpec::Range { start, end, step })
        } else if s.contains(',') {
            let v = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
            Ok(CountSpec::List(v))
        } else {
            Ok(CountSpec::One(num(s)?))
        }
    }

    pub fn values(&self) -> Vec<usize> {
        match self {
            CountSpec::One(n) => vec![*n],
            CountSpec::Range { start, end, step } => (*start..=*end).step_by(*step).collect(),
            CountSpec::List(v) => v.clone(),
        }
    }

    pub fn single(&self) -> Option<usize> {
        match self {
            CountSpec::One(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for CountSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountSpec::One(n) => write!(f, "{n}"),
            CountSpec::Range {
                start,
                end,
                step: 1,
            } => write!(f, "{start}:{end}"),
            CountSpec::Range { start, end, step } => write!(f, "{start}:{end}:{step}"),
            CountSpec::List(v) => {
                let s: Vec<String> = v.iter().map(|n| n.to_string()).collect();
                f.write_str(&s.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub geometry: Geometry,
    pub beta: f64,
    pub delta: f64,
    pub n: CountSpec,
    pub drive_re: f64,
    pub drive_im: f64,
    pub ratio: f64,
    pub observable: Observable,
    pub theta: f64,
    pub tau_max: f64,
    pub omega_max: f64,
    pub grid_width: f64,
    pub grid_points: usize,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub figure: Option<FigureId>,
}

/// Raw values with where each came from.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, (String, Origin)>,
}

impl RawConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, path: &str) -> Result<Self, ConfigError> {
        if text.trim_start().starts_with('{') {
            return Self::parse_json(text, path);
        }
        let mut raw = RawConfig::default();
        let echoed = text.lines().any(|l| l.trim_end() == CONFIG_BEGIN);
        let mut inside = false;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim_end();
            let body = if echoed {
                if line == CONFIG_BEGIN {
                    inside = true;
                    continue;
                }
                if line == CONFIG_END {
                    break;
                }
                if !inside {
                    continue;
                }
                line.strip_prefix('#').unwrap_or(line).trim()
            } else {
                line.split('#').next().unwrap_or("").trim()
            };
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| ConfigError::Syntax {
                path: path.to_string(),
                line: line_no,
                reason: format!("expected key=value, got `{body}`"),
            })?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey {
                    path: path.to_string(),
                    line: line_no,
                    key: key.to_string(),
                });
            }
            raw.entries.insert(
                key.to_string(),
                (
                    value.trim().to_string(),
                    Origin::File {
                        path: path.to_string(),
                        line: line_no,
                    },
                ),
            );
        }
        Ok(raw)
    }

    fn parse_json(text: &str, path: &str) -> Result<Self, ConfigError> {
        let syntax = |reason: String| ConfigError::Syntax {
            path: path.to_string(),
            line: 1,
            reason,
        };
        let doc: serde_json::Value =
            serde_json::from_str(text).map_err(|e| syntax(e.to_string()))?;
        let obj = doc
            .get("config")
            .and_then(|c| c.as_object())
            .ok_or_else(|| syntax("JSON input has no `config` object".into()))?;
        let mut raw = RawConfig::default();
        for (key, value) in obj {
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(ConfigError::UnknownKey {
                    path: path.to_string(),
                    line: 1,
                    key: key.clone(),
                });
            }
            let value = value
                .as_str()
                .ok_or_else(|| syntax(format!("value of `{key}` must be a string")))?;
            raw.entries.insert(
                key.clone(),
                (
                    value.to_string(),
                    Origin::File {
                        path: path.to_string(),
                        line: 1,
                    },
                ),
            );
        }
        Ok(raw)
    }

    pub fn set_flag(&mut self, key: &str, value: Option<&str>) {
        if let Some(v) = value {
            self.entries
                .insert(key.to_string(), (v.trim().to_string(), Origin::Flag));
        }
    }

    fn get(&self, key: &str) -> Option<&(String, Origin)> {
        self.entries.get(key)
    }

    pub fn resolve(&self, command: Command) -> Result<RunConfig, ConfigError> {
        if let Some((found, _)) = self.get("command") {
            if found != command.name() {
                return Err(ConfigError::CommandMismatch {
                    found: found.clone(),
                    expected: command.name().to_string(),
                });
            }
        }
        let default_geometry = if command == Command::Single {
            "external"
        } else {
            "waveguide"
        };
        let default_observable = match command {
            Command::Single => "g2_trace",
            _ => "g2_zero",
        };
        let default_n = match command {
            Command::Sweep => "1:300",
            Command::Mc => "2,4,10",
            _ => "1",
        };
        let r = Resolver { raw: self };
        let cfg = RunConfig {
            command,
            geometry: r.parse("geometry", default_geometry, |s| {
                Geometry::parse(s).ok_or_else(|| "expected external, waveguide, bragg, antibragg or combined".into())
            })?,
            beta: r.number("beta", "0.01")?,
            delta: r.number("delta", "0")?,
            n: r.parse("n", default_n, CountSpec::parse)?,
            drive_re: r.number("drive_re", "0.01")?,
            drive_im: r.number("drive_im", "0")?,
            ratio: r.number("ratio", "1")?,
            observable: r.parse("observable", default_observable, |s| {
                Observable::parse(s).ok_or_else(|| {
                    "expected g2_trace, g2_zero, psi_incoh_spectrum, psi_incoh_zero, squeezing or sweep".into()
                })
            })?,
            theta: r.number("theta", "0")?,
            tau_max: r.positive("tau_max", "10")?,
            omega_max: r.positive("omega_max", "10")?,
            grid_width: r.positive("grid_width", "20")?,
            grid_points: r.parse("grid_points", "16384", |s| {
                s.parse::<usize>().map_err(|_| "expected a positive integer".into())
            })?,
            samples: r.parse("samples", "100000", |s| {
                s.parse::<usize>().map_err(|_| "expected a positive integer".into())
            })?,
            seed: r.parse("seed", "0", |s| s.parse::<u64>().map_err(|_| "expected an unsigned integer".into()))?,
            format: r.parse("format", "csv", |s| match s {
                "csv" => Ok(Format::Csv),
                "json" => Ok(Format::Json),
                _ => Err("expected csv or json".into()),
            })?,
            figure: match self.get("figure") {
                None if command == Command::Figure => {
                    return Err(ConfigError::Value {
                        key: "figure",
                        value: String::new(),
                        origin: Origin::Default,
                        reason: format!("a figure id is required ({})", FigureId::names().join(", ")),
                    })
                }
                None => None,
                Some(_) => Some(r.parse("figure", "", |s| {
                    FigureId::parse(s).ok_or_else(|| format!("expected one of {}", FigureId::names().join(", ")))
                })?),
            },
        };
        Ok(cfg)
    }
}

struct Resolver<'a> {
    raw: &'a RawConfig,
}

impl Resolver<'_> {
    fn parse<T>(
        &self,
        key: &'static str,
        default: &str,
        f: impl Fn(&str) -> Result<T, String>,
    ) -> Result<T, ConfigError> {
        let (value, origin) = match self.raw.get(key) {
            Some((v, o)) => (v.as_str(), o.clone()),
            None => (default, Origin::Default),
        };
        f(value).map_err(|reason| ConfigError::Value {
            key,
            value: value.to_string(),
            origin,
            reason,
        })
    }

    fn number(&self, key: &'static str, default: &str) -> Result<f64, ConfigError> {
        self.parse(key, default, |s| match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err("expected a finite number".into()),
        })
    }

    fn positive(&self, key: &'static str, default: &str) -> Result<f64, ConfigError> {
        self.parse(key, default, |s| match s.parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
            _ => Err("expected a positive number".into()),
        })
    }
}

impl RunConfig {
    /// Resolved `key=value` pairs in a fixed order; feeding them back as a
    /// config reproduces this run.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("command", self.command.name().to_string())];
        for &key in self.command.keys() {
            let value = match key {
                "geometry" => self.geometry.name().to_string(),
                "beta" => self.beta.to_string(),
                "delta" => self.delta.to_string(),
                "n" => self.n.to_string(),
                "drive_re" => self.drive_re.to_string(),
                "drive_im" => self.drive_im.to_string(),
                "ratio" => self.ratio.to_string(),
                "observable" => self.observable.name().to_string(),
                "theta" => self.theta.to_string(),
                "tau_max" => self.tau_max.to_string(),
                "omega_max" => self.omega_max.to_string(),
                "grid_width" => self.grid_width.to_string(),
                "grid_points" => self.grid_points.to_string(),
                "samples" => self.samples.to_string(),
                "seed" => self.seed.to_string(),
                "format" => self.format.name().to_string(),
                "figure" => self
                    .figure
                    .map(|f| f.name())
                    .unwrap_or_default()
                    .to_string(),
                _ => unreachable!("unlisted key {key}"),
            };
            out.push((key, value));
        }
        out
    }
}
