//! Line-oriented `key = value` run configuration with dotted sections and
//! unit-suffixed frequency keys.
//!
//! Frequency keys carry an explicit unit suffix: `_thz`, `_ghz`, `_mhz`
//! (cyclic, multiplied by 2π on ingestion), `_rad_per_ns` or `_rad_per_ps`
//! (angular). Everything is stored internally as angular rad/ps.
//! Serialization emits `_rad_per_ps` so a round trip is bit-exact.

use ds_polariton::{SystemParams, Transition, TWO_PI};
use std::fmt;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaEffMode {
    /// Δ = 0, i.e. δ_c = Ω_R (resonant 1→2 tuning).
    Zero,
    /// Δ = −Ω_R, i.e. δ_c = 0.
    MinusOmegaR,
    /// Δ = −2Ω_R, i.e. δ_c = −Ω_R (resonant 2→1 tuning).
    MinusTwoOmegaR,
    /// δ_c taken literally from `params.delta_cav`.
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Delta,
    DeltaEff,
    GammaColl,
    Temperature,
    KappaOverGamma,
}

impl Axis {
    pub fn is_frequency(self) -> bool {
        matches!(self, Axis::Delta | Axis::DeltaEff | Axis::GammaColl)
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::Delta => "delta",
            Axis::DeltaEff => "delta_eff",
            Axis::GammaColl => "gamma_coll",
            Axis::Temperature => "temperature",
            Axis::KappaOverGamma => "kappa_over_gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub axis: Axis,
    /// Angular rad/ps for frequency axes; K or dimensionless otherwise.
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSettings {
    /// δ/Ω columns.
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    /// κ/γ rows.
    pub y_min: f64,
    pub y_max: f64,
    pub ny: usize,
    pub log_y: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsSettings {
    /// Final time, ps.
    pub t_end: f64,
    pub n_out: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub rotating_frame: bool,
    /// Initial state: Re λ, Im λ, Re S, Im S, S_z.
    pub initial: [f64; 5],
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub params: SystemParams,
    pub transition: Transition,
    pub delta_eff_mode: DeltaEffMode,
    pub rho: f64,
    pub margin: f64,
    pub tol: f64,
    pub dynamics: DynamicsSettings,
    pub sweep: SweepSettings,
    pub grid: GridSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            preset: None,
            params: SystemParams {
                omega: TWO_PI,
                delta: TWO_PI * 11.0,
                kappa: TWO_PI * 0.62,
                gamma_coll: TWO_PI * 0.36e-3,
                eta_coll: 0.0,
                gamma_spont: 0.037e-3,
                gamma_cav: TWO_PI * 100.0e-6,
                delta_cav: 0.0,
                temperature: 530.0,
            },
            transition: Transition::OneTwo,
            delta_eff_mode: DeltaEffMode::Zero,
            rho: 0.27,
            margin: 0.1,
            tol: 1e-10,
            dynamics: DynamicsSettings {
                t_end: 600.0e3,
                n_out: 2000,
                rel_tol: 1e-9,
                abs_tol: 1e-12,
                rotating_frame: true,
                initial: [0.05, 0.0, 0.0, 0.0, -1.0],
            },
            sweep: SweepSettings {
                axis: Axis::Delta,
                min: -TWO_PI * 15.0,
                max: TWO_PI * 15.0,
                count: 301,
                log: false,
            },
            grid: GridSettings {
                x_min: -15.0,
                x_max: 15.0,
                nx: 200,
                y_min: 0.1,
                y_max: 1.0e4,
                ny: 200,
                log_y: true,
            },
        }
    }
}

impl RunConfig {
    /// The Ω_R implied by the raw atom-pump parameters (no collisional shift
    /// is applied here; η enters through the frame itself).
    fn omega_rabi_bare(&self) -> f64 {
        (self.params.delta * self.params.delta + self.params.omega * self.params.omega).sqrt()
    }

    /// SystemParams with `delta_cav` resolved from the Δ mode.
    pub fn resolved_params(&self) -> SystemParams {
        let mut p = self.params;
        let omega_r = self.omega_rabi_bare();
        p.delta_cav = match self.delta_eff_mode {
            DeltaEffMode::Zero => omega_r,
            DeltaEffMode::MinusOmegaR => 0.0,
            DeltaEffMode::MinusTwoOmegaR => -omega_r,
            DeltaEffMode::Explicit => p.delta_cav,
        };
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    Syntax { line: usize, text: String },
    UnknownKey { line: usize, key: String },
    BadValue { line: usize, key: String, reason: String },
    MissingUnit { line: usize, key: String },
    UnknownPreset { name: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Syntax { line, text } => {
                write!(f, "line {line}: expected `key = value`, got `{text}`")
            }
            ConfigError::UnknownKey { line, key } => {
                write!(f, "line {line}: unknown key `{key}`")
            }
            ConfigError::BadValue { line, key, reason } => {
                write!(f, "line {line}: bad value for `{key}`: {reason}")
            }
            ConfigError::MissingUnit { line, key } => {
                write!(
                    f,
                    "line {line}: frequency key `{key}` needs a unit suffix \
                     (_thz, _ghz, _mhz, _rad_per_ns or _rad_per_ps)"
                )
            }
            ConfigError::UnknownPreset { name } => write!(f, "unknown preset `{name}`"),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Conversion factor to angular rad/ps for a recognized unit suffix.
fn unit_scale(suffix: &str) -> Option<f64> {
    match suffix {
        "thz" => Some(TWO_PI),
        "ghz" => Some(TWO_PI * 1e-3),
        "mhz" => Some(TWO_PI * 1e-6),
        "rad_per_ns" => Some(1e-3),
        "rad_per_ps" => Some(1.0),
        _ => None,
    }
}

/// Split `omega_thz` into (`omega`, scale). Frequency bases without a valid
/// suffix return None.
fn split_frequency_key(key: &str) -> Option<(&str, f64)> {
    for (suffix, scale) in [
        ("_rad_per_ns", 1e-3),
        ("_rad_per_ps", 1.0),
        ("_thz", TWO_PI),
        ("_ghz", TWO_PI * 1e-3),
        ("_mhz", TWO_PI * 1e-6),
    ] {
        if let Some(base) = key.strip_suffix(suffix) {
            return Some((base, scale));
        }
    }
    None
}

const FREQUENCY_PARAMS: [&str; 7] = [
    "omega",
    "delta",
    "kappa",
    "gamma_coll",
    "gamma_spont",
    "gamma_cav",
    "delta_cav",
];

fn parse_number(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    value.parse::<f64>().map_err(|_| ConfigError::BadValue {
        line,
        key: key.to_string(),
        reason: format!("`{value}` is not a number"),
    })
}

fn parse_usize(line: usize, key: &str, value: &str) -> Result<usize, ConfigError> {
    value.parse::<usize>().map_err(|_| ConfigError::BadValue {
        line,
        key: key.to_string(),
        reason: format!("`{value}` is not a non-negative integer"),
    })
}

fn parse_bool(line: usize, key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(ConfigError::BadValue {
            line,
            key: key.to_string(),
            reason: format!("`{value}` is not `true` or `false`"),
        }),
    }
}

/// Apply a single `key = value` assignment. `line` is for diagnostics only.
pub fn apply_key(
    config: &mut RunConfig,
    key: &str,
    value: &str,
    line: usize,
) -> Result<(), ConfigError> {
    let unknown = || ConfigError::UnknownKey { line, key: key.to_string() };

    if let Some(rest) = key.strip_prefix("params.") {
        if rest == "temperature_k" {
            config.params.temperature = parse_number(line, key, value)?;
            return Ok(());
        }
        if rest == "eta_coll" {
            // bare rad/ps for the collisional shift; the suffixed forms
            // below are accepted as well
            config.params.eta_coll = parse_number(line, key, value)?;
            return Ok(());
        }
        if let Some((base, scale)) = split_frequency_key(rest) {
            let v = parse_number(line, key, value)? * scale;
            let slot = match base {
                "omega" => &mut config.params.omega,
                "delta" => &mut config.params.delta,
                "kappa" => &mut config.params.kappa,
                "gamma_coll" => &mut config.params.gamma_coll,
                "gamma_spont" => &mut config.params.gamma_spont,
                "gamma_cav" => &mut config.params.gamma_cav,
                "delta_cav" => &mut config.params.delta_cav,
                "eta_coll" => &mut config.params.eta_coll,
                _ => return Err(unknown()),
            };
            *slot = v;
            if base == "delta_cav" {
                config.delta_eff_mode = DeltaEffMode::Explicit;
            }
            return Ok(());
        }
        if FREQUENCY_PARAMS.contains(&rest) {
            return Err(ConfigError::MissingUnit { line, key: key.to_string() });
        }
        return Err(unknown());
    }

    if let Some(rest) = key.strip_prefix("dynamics.") {
        match rest {
            "t_end_ns" => config.dynamics.t_end = parse_number(line, key, value)? * 1e3,
            "t_end_ps" => config.dynamics.t_end = parse_number(line, key, value)?,
            "n_out" => config.dynamics.n_out = parse_usize(line, key, value)?,
            "rel_tol" => config.dynamics.rel_tol = parse_number(line, key, value)?,
            "abs_tol" => config.dynamics.abs_tol = parse_number(line, key, value)?,
            "rotating_frame" => {
                config.dynamics.rotating_frame = parse_bool(line, key, value)?
            }
            "initial.re_lambda" => config.dynamics.initial[0] = parse_number(line, key, value)?,
            "initial.im_lambda" => config.dynamics.initial[1] = parse_number(line, key, value)?,
            "initial.re_s" => config.dynamics.initial[2] = parse_number(line, key, value)?,
            "initial.im_s" => config.dynamics.initial[3] = parse_number(line, key, value)?,
            "initial.s_z" => config.dynamics.initial[4] = parse_number(line, key, value)?,
            _ => return Err(unknown()),
        }
        return Ok(());
    }

    if let Some(rest) = key.strip_prefix("sweep.") {
        match rest {
            "axis" => {
                config.sweep.axis = match value {
                    "delta" => Axis::Delta,
                    "delta_eff" => Axis::DeltaEff,
                    "gamma_coll" => Axis::GammaColl,
                    "temperature" => Axis::Temperature,
                    "kappa_over_gamma" => Axis::KappaOverGamma,
                    _ => {
                        return Err(ConfigError::BadValue {
                            line,
                            key: key.to_string(),
                            reason: format!("`{value}` is not a sweep axis"),
                        })
                    }
                }
            }
            "count" => config.sweep.count = parse_usize(line, key, value)?,
            "log" => config.sweep.log = parse_bool(line, key, value)?,
            "min" | "max" => {
                if config.sweep.axis.is_frequency() {
                    return Err(ConfigError::MissingUnit { line, key: key.to_string() });
                }
                let v = parse_number(line, key, value)?;
                if rest == "min" {
                    config.sweep.min = v;
                } else {
                    config.sweep.max = v;
                }
            }
            _ => {
                if let Some((base, scale)) = split_frequency_key(rest) {
                    let v = parse_number(line, key, value)? * scale;
                    match base {
                        "min" => config.sweep.min = v,
                        "max" => config.sweep.max = v,
                        _ => return Err(unknown()),
                    }
                    return Ok(());
                }
                return Err(unknown());
            }
        }
        return Ok(());
    }

    if let Some(rest) = key.strip_prefix("grid.") {
        match rest {
            "x_min" => config.grid.x_min = parse_number(line, key, value)?,
            "x_max" => config.grid.x_max = parse_number(line, key, value)?,
            "nx" => config.grid.nx = parse_usize(line, key, value)?,
            "y_min" => config.grid.y_min = parse_number(line, key, value)?,
            "y_max" => config.grid.y_max = parse_number(line, key, value)?,
            "ny" => config.grid.ny = parse_usize(line, key, value)?,
            "log_y" => config.grid.log_y = parse_bool(line, key, value)?,
            _ => return Err(unknown()),
        }
        return Ok(());
    }

    match key {
        "preset" => {
            // handled up front by parse_config; reaching here means the
            // value was already applied, so just record the name
            config.preset = Some(value.to_string());
        }
        "transition" => {
            config.transition = match value {
                "one_two" | "12" => Transition::OneTwo,
                "two_one" | "21" => Transition::TwoOne,
                _ => {
                    return Err(ConfigError::BadValue {
                        line,
                        key: key.to_string(),
                        reason: format!("`{value}` is not `one_two` or `two_one`"),
                    })
                }
            };
        }
        "delta_eff_mode" => {
            config.delta_eff_mode = match value {
                "zero" => DeltaEffMode::Zero,
                "minus_omega_r" => DeltaEffMode::MinusOmegaR,
                "minus_two_omega_r" => DeltaEffMode::MinusTwoOmegaR,
                "explicit" => DeltaEffMode::Explicit,
                _ => {
                    return Err(ConfigError::BadValue {
                        line,
                        key: key.to_string(),
                        reason: format!("`{value}` is not a delta_eff mode"),
                    })
                }
            };
        }
        "rho" => config.rho = parse_number(line, key, value)?,
        "margin" => config.margin = parse_number(line, key, value)?,
        "tol" => config.tol = parse_number(line, key, value)?,
        _ => return Err(unknown()),
    }
    Ok(())
}

fn split_line(line_no: usize, raw: &str) -> Result<Option<(String, String)>, ConfigError> {
    let stripped = match raw.find('#') {
        Some(idx) => &raw[..idx],
        None => raw,
    }
    .trim();
    if stripped.is_empty() {
        return Ok(None);
    }
    let Some((key, value)) = stripped.split_once('=') else {
        return Err(ConfigError::Syntax { line: line_no, text: stripped.to_string() });
    };
    Ok(Some((key.trim().to_string(), value.trim().to_string())))
}

/// Parse a config file on top of `base` (defaults or a preset). A `preset`
/// key inside the file re-bases the whole config before any other file key
/// is applied, regardless of where the line appears.
pub fn parse_config(text: &str, base: RunConfig) -> Result<RunConfig, ConfigError> {
    let mut config = base;
    for (idx, raw) in text.lines().enumerate() {
        if let Some((key, value)) = split_line(idx + 1, raw)? {
            if key == "preset" {
                config = crate::presets::preset(&value)
                    .ok_or(ConfigError::UnknownPreset { name: value.clone() })?;
            }
        }
    }
    for (idx, raw) in text.lines().enumerate() {
        if let Some((key, value)) = split_line(idx + 1, raw)? {
            if key == "preset" {
                continue;
            }
            apply_key(&mut config, &key, &value, idx + 1)?;
        }
    }
    Ok(config)
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serialize to the same line format; angular frequencies use the exact
/// `_rad_per_ps` suffix so parse(serialize(c)) == c bit-for-bit.
pub fn serialize(config: &RunConfig) -> String {
    let mut s = String::new();
    let p = &config.params;
    let _ = writeln!(s, "params.omega_rad_per_ps = {}", num(p.omega));
    let _ = writeln!(s, "params.delta_rad_per_ps = {}", num(p.delta));
    let _ = writeln!(s, "params.kappa_rad_per_ps = {}", num(p.kappa));
    let _ = writeln!(s, "params.gamma_coll_rad_per_ps = {}", num(p.gamma_coll));
    let _ = writeln!(s, "params.eta_coll = {}", num(p.eta_coll));
    let _ = writeln!(s, "params.gamma_spont_rad_per_ps = {}", num(p.gamma_spont));
    let _ = writeln!(s, "params.gamma_cav_rad_per_ps = {}", num(p.gamma_cav));
    let _ = writeln!(s, "params.delta_cav_rad_per_ps = {}", num(p.delta_cav));
    let _ = writeln!(s, "params.temperature_k = {}", num(p.temperature));
    let _ = writeln!(
        s,
        "transition = {}",
        match config.transition {
            Transition::OneTwo => "one_two",
            Transition::TwoOne => "two_one",
        }
    );
    // delta_cav above already forced Explicit mode on re-parse, so only
    // emit the mode line when it carries extra information
    let _ = writeln!(
        s,
        "delta_eff_mode = {}",
        match config.delta_eff_mode {
            DeltaEffMode::Zero => "zero",
            DeltaEffMode::MinusOmegaR => "minus_omega_r",
            DeltaEffMode::MinusTwoOmegaR => "minus_two_omega_r",
            DeltaEffMode::Explicit => "explicit",
        }
    );
    let _ = writeln!(s, "rho = {}", num(config.rho));
    let _ = writeln!(s, "margin = {}", num(config.margin));
    let _ = writeln!(s, "tol = {}", num(config.tol));
    let d = &config.dynamics;
    let _ = writeln!(s, "dynamics.t_end_ps = {}", num(d.t_end));
    let _ = writeln!(s, "dynamics.n_out = {}", d.n_out);
    let _ = writeln!(s, "dynamics.rel_tol = {}", num(d.rel_tol));
    let _ = writeln!(s, "dynamics.abs_tol = {}", num(d.abs_tol));
    let _ = writeln!(s, "dynamics.rotating_frame = {}", d.rotating_frame);
    let _ = writeln!(s, "dynamics.initial.re_lambda = {}", num(d.initial[0]));
    let _ = writeln!(s, "dynamics.initial.im_lambda = {}", num(d.initial[1]));
    let _ = writeln!(s, "dynamics.initial.re_s = {}", num(d.initial[2]));
    let _ = writeln!(s, "dynamics.initial.im_s = {}", num(d.initial[3]));
    let _ = writeln!(s, "dynamics.initial.s_z = {}", num(d.initial[4]));
    let sw = &config.sweep;
    let _ = writeln!(s, "sweep.axis = {}", sw.axis.name());
    if sw.axis.is_frequency() {
        let _ = writeln!(s, "sweep.min_rad_per_ps = {}", num(sw.min));
        let _ = writeln!(s, "sweep.max_rad_per_ps = {}", num(sw.max));
    } else {
        let _ = writeln!(s, "sweep.min = {}", num(sw.min));
        let _ = writeln!(s, "sweep.max = {}", num(sw.max));
    }
    let _ = writeln!(s, "sweep.count = {}", sw.count);
    let _ = writeln!(s, "sweep.log = {}", sw.log);
    let g = &config.grid;
    let _ = writeln!(s, "grid.x_min = {}", num(g.x_min));
    let _ = writeln!(s, "grid.x_max = {}", num(g.x_max));
    let _ = writeln!(s, "grid.nx = {}", g.nx);
    let _ = writeln!(s, "grid.y_min = {}", num(g.y_min));
    let _ = writeln!(s, "grid.y_max = {}", num(g.y_max));
    let _ = writeln!(s, "grid.ny = {}", g.ny);
    let _ = writeln!(s, "grid.log_y = {}", g.log_y);
    s
}

// keep the suffix table honest
#[allow(dead_code)]
fn _assert_suffixes() {
    for s in ["thz", "ghz", "mhz", "rad_per_ns", "rad_per_ps"] {
        let _ = unit_scale(s);
    }
}
