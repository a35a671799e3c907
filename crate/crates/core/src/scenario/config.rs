//! `key = value` scenario documents.
//!
//! ```text
//! # fig2 preset on a finer grid
//! scenario = fig2
//! grid.n = 32768
//! output.formats = csv, svg
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use thiserror::Error;

use crate::PhysicsParams;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{origin}: unknown key `{key}`")]
    UnknownKey { origin: Origin, key: String },
    #[error("{origin}: key `{key}` given twice")]
    Duplicate { origin: Origin, key: String },
    #[error("{field}: {msg}")]
    Invalid { field: String, msg: String },
}

/// Where a configuration value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Line(usize),
    CommandLine,
}

impl std::fmt::Display for Origin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::CommandLine => write!(f, "command line"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    SpreadLaw,
    Bounds,
    Custom,
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Fig1 => "fig1",
            ScenarioKind::Fig2 => "fig2",
            ScenarioKind::Fig3 => "fig3",
            ScenarioKind::Fig4 => "fig4",
            ScenarioKind::SpreadLaw => "spread-law",
            ScenarioKind::Bounds => "bounds",
            ScenarioKind::Custom => "custom",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "fig1" => ScenarioKind::Fig1,
            "fig2" => ScenarioKind::Fig2,
            "fig3" => ScenarioKind::Fig3,
            "fig4" => ScenarioKind::Fig4,
            "spread-law" => ScenarioKind::SpreadLaw,
            "bounds" => ScenarioKind::Bounds,
            "custom" => ScenarioKind::Custom,
            _ => return None,
        })
    }

    /// Whether slices also carry `x/t` and `t·|ψ|²` columns.
    pub fn rescaled_columns(&self) -> bool {
        matches!(self, ScenarioKind::Fig2 | ScenarioKind::Fig4)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Schrödinger's Gaussian `χ`.
    Gaussian,
    /// Shape-invariant `χ_n`.
    HermiteGauss,
    /// `χ̄_n ∝ ∂ₓⁿχ`.
    Derivative,
    Square,
}

impl FamilyKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "gaussian" => FamilyKind::Gaussian,
            "hermite-gauss" => FamilyKind::HermiteGauss,
            "derivative" => FamilyKind::Derivative,
            "square" => FamilyKind::Square,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Gaussian => "gaussian",
            FamilyKind::HermiteGauss => "hermite-gauss",
            FamilyKind::Derivative => "derivative",
            FamilyKind::Square => "square",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvolutionMethod {
    /// Spectral propagation of the sampled initial packet.
    Spectral,
    /// Closed-form evaluation of the family at each time.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub svg: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub family: FamilyKind,
    pub order: usize,
    /// `τ` of the Gaussian families.
    pub tau: f64,
    /// Width `a` of the square packet.
    pub width: f64,
    /// Galilean boost momentum applied to the initial packet.
    pub boost: f64,
    pub physics: PhysicsParams,
    pub grid_n: usize,
    pub half_width: f64,
    /// In units of `τ` (Gaussian families) or `ma²/ħ` (square).
    pub times: Vec<f64>,
    pub method: EvolutionMethod,
    pub out_dir: PathBuf,
    pub formats: Formats,
    pub strict: bool,
}

pub const KEYS: &[&str] = &[
    "scenario",
    "family",
    "family.order",
    "family.tau",
    "family.a",
    "family.boost",
    "physics.hbar",
    "physics.mass",
    "grid.n",
    "grid.half_width",
    "times",
    "method",
    "output.dir",
    "output.formats",
    "strict",
];

struct Preset {
    family: FamilyKind,
    order: usize,
    times: Vec<f64>,
    grid_n: usize,
    half_width: f64,
}

fn preset(kind: ScenarioKind) -> Preset {
    let base = |family, order, times: &[f64]| Preset {
        family,
        order,
        times: times.to_vec(),
        grid_n: 4096,
        half_width: 64.0,
    };
    match kind {
        ScenarioKind::Fig1 => base(
            FamilyKind::Derivative,
            2,
            &[0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0],
        ),
        // t = 32 is a later time the t = 16 curve should stand for
        ScenarioKind::Fig2 => Preset {
            grid_n: 16384,
            half_width: 512.0,
            ..base(FamilyKind::Derivative, 2, &[3.0, 4.0, 6.0, 16.0, 32.0])
        },
        ScenarioKind::Fig3 => base(FamilyKind::Square, 0, &[0.0, 0.001, 0.01, 0.1]),
        ScenarioKind::Fig4 => base(FamilyKind::Square, 0, &[0.1, 0.2, 0.5]),
        ScenarioKind::SpreadLaw => base(
            FamilyKind::Derivative,
            2,
            &(0..11).map(|k| -3.0 + 0.6 * k as f64).collect::<Vec<_>>(),
        ),
        ScenarioKind::Bounds => base(
            FamilyKind::Derivative,
            2,
            &[0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0],
        ),
        ScenarioKind::Custom => base(FamilyKind::Derivative, 2, &[]),
    }
}

type Entries = BTreeMap<String, (Origin, String)>;

fn tokenize(text: &str) -> Result<Entries, ConfigError> {
    let mut entries = Entries::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            msg: format!("expected `key = value`, got `{content}`"),
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                msg: "empty key".into(),
            });
        }
        let value = value.trim().trim_matches('"').to_string();
        insert(&mut entries, key, value, Origin::Line(line))?;
    }
    Ok(entries)
}

fn insert(
    entries: &mut Entries,
    key: &str,
    value: String,
    origin: Origin,
) -> Result<(), ConfigError> {
    if !KEYS.contains(&key) {
        return Err(ConfigError::UnknownKey {
            origin,
            key: key.to_string(),
        });
    }
    if entries.contains_key(key) && origin != Origin::CommandLine {
        return Err(ConfigError::Duplicate {
            origin,
            key: key.to_string(),
        });
    }
    entries.insert(key.to_string(), (origin, value));
    Ok(())
}

fn invalid(field: &str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.to_string(),
        msg: msg.into(),
    }
}

fn number(entries: &Entries, key: &str) -> Result<Option<f64>, ConfigError> {
    entries
        .get(key)
        .map(|(_, v)| {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| invalid(key, format!("`{v}` is not a finite number")))
        })
        .transpose()
}

fn positive(entries: &Entries, key: &str, default: f64) -> Result<f64, ConfigError> {
    let v = number(entries, key)?.unwrap_or(default);
    if v > 0.0 {
        Ok(v)
    } else {
        Err(invalid(key, format!("must be positive, got {v}")))
    }
}

fn integer(entries: &Entries, key: &str) -> Result<Option<usize>, ConfigError> {
    entries
        .get(key)
        .map(|(_, v)| {
            v.parse::<usize>()
                .map_err(|_| invalid(key, format!("`{v}` is not a nonnegative integer")))
        })
        .transpose()
}

/// Parses a document; `overrides` (from command-line flags) win over it.
pub fn parse_config_with(
    text: &str,
    overrides: &[(&str, String)],
) -> Result<ScenarioConfig, ConfigError> {
    let mut entries = tokenize(text)?;
    for (k, v) in overrides {
        insert(&mut entries, k, v.clone(), Origin::CommandLine)?;
    }

    let scenario = match entries.get("scenario") {
        Some((_, v)) => ScenarioKind::parse(v)
            .ok_or_else(|| invalid("scenario", format!("unknown scenario `{v}`")))?,
        None => ScenarioKind::Custom,
    };
    let preset = preset(scenario);

    let family = match entries.get("family") {
        Some((_, v)) => FamilyKind::parse(v)
            .ok_or_else(|| invalid("family", format!("unknown family `{v}`")))?,
        None => preset.family,
    };
    let order = integer(&entries, "family.order")?.unwrap_or(preset.order);
    match family {
        FamilyKind::HermiteGauss if order > crate::numerics::MAX_HERMITE_ORDER => {
            return Err(invalid("family.order", format!("{order} exceeds 64")));
        }
        FamilyKind::Derivative if order > crate::packets::MAX_DERIVATIVE_ORDER => {
            return Err(invalid("family.order", format!("{order} exceeds 16")));
        }
        _ => {}
    }

    let tau = positive(&entries, "family.tau", 1.0)?;
    let width = positive(&entries, "family.a", 1.0)?;
    let boost = number(&entries, "family.boost")?.unwrap_or(0.0);
    let hbar = positive(&entries, "physics.hbar", 1.0)?;
    let mass = positive(&entries, "physics.mass", 1.0)?;
    let physics = PhysicsParams::new(hbar, mass).map_err(|e| invalid("physics", e.to_string()))?;

    let grid_n = integer(&entries, "grid.n")?.unwrap_or(preset.grid_n);
    if grid_n < 8 || !grid_n.is_power_of_two() {
        return Err(invalid(
            "grid.n",
            format!("{grid_n} is not a power of two ≥ 8"),
        ));
    }
    let half_width = positive(&entries, "grid.half_width", preset.half_width)?;

    let times = match entries.get("times") {
        Some((_, v)) => v
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| invalid("times", format!("`{s}` is not a finite number")))
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => preset.times,
    };
    let method = match entries.get("method").map(|(_, v)| v.as_str()) {
        Some("spectral") => EvolutionMethod::Spectral,
        Some("exact") => EvolutionMethod::Exact,
        Some(other) => return Err(invalid("method", format!("unknown method `{other}`"))),
        None if family == FamilyKind::Square => EvolutionMethod::Exact,
        None => EvolutionMethod::Spectral,
    };
    if method == EvolutionMethod::Exact && boost != 0.0 && family == FamilyKind::Square {
        return Err(invalid(
            "family.boost",
            "a boosted square packet has no closed form here; use method = spectral",
        ));
    }

    let out_dir = entries
        .get("output.dir")
        .map(|(_, v)| PathBuf::from(v))
        .unwrap_or_else(|| PathBuf::from("out"));

    let formats = match entries.get("output.formats") {
        Some((_, v)) => {
            let mut f = Formats {
                csv: false,
                svg: false,
            };
            for item in v.split(',').map(str::trim) {
                match item {
                    "csv" => f.csv = true,
                    "svg" => f.svg = true,
                    other => {
                        return Err(invalid(
                            "output.formats",
                            format!("unknown format `{other}`"),
                        ))
                    }
                }
            }
            if !f.csv && !f.svg {
                return Err(invalid("output.formats", "no formats selected"));
            }
            f
        }
        None => Formats {
            csv: true,
            svg: false,
        },
    };

    let strict = match entries.get("strict").map(|(_, v)| v.as_str()) {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => return Err(invalid("strict", format!("`{other}` is not true/false"))),
    };
    if times.is_empty() {
        return Err(invalid("times", "time list is empty"));
    }

    Ok(ScenarioConfig {
        scenario,
        family,
        order,
        tau,
        width,
        boost,
        physics,
        grid_n,
        half_width,
        times,
        method,
        out_dir,
        formats,
        strict,
    })
}

/// [`parse_config_with`] without overrides.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    parse_config_with(text, &[])
}
