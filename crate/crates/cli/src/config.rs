//! Run configuration: a key=value or JSON file merged with flag overrides,
//! validated in full before anything is computed.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use hyperindex::eigen::Params;
use hyperindex::special_core::sin_pi;
use hyperindex::transform::TestFunction;
use hyperindex::verify::SuiteSelection;
use hyperindex::{c64, C64};

use crate::CliError;

/// Every key a config file or flag may set.
pub const KEYS: [&str; 24] = [
    "command", "quantity", "suite", "alpha", "beta", "sigma_re", "sigma_im", "t", "s", "nu_max", "seed", "out", "format",
    "function", "with", "x", "nu", "k", "a1", "a2", "b1", "b2", "z", "input",
];

/// Largest accepted grid; keeps a mistyped count from running for hours.
pub const MAX_GRID: usize = 100_000;
/// R leaves the f64 range a little beyond ν = 75.
pub const MAX_NU: f64 = 75.0;

pub type RawConfig = BTreeMap<String, String>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses a config file: a JSON object if it starts with `{`, otherwise
/// `key = value` lines with `#` comments.
pub fn parse_config_text(text: &str) -> Result<RawConfig, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_key_value(text)
    }
}

fn insert_key(raw: &mut RawConfig, key: &str, value: String) -> Result<(), CliError> {
    let key = key.trim().replace('-', "_");
    if !KEYS.contains(&key.as_str()) {
        return Err(config_err(format!("unknown config key {key:?}")));
    }
    if raw.insert(key.clone(), value).is_some() {
        return Err(config_err(format!("config key {key:?} is set twice")));
    }
    Ok(())
}

fn parse_key_value(text: &str) -> Result<RawConfig, CliError> {
    let mut raw = RawConfig::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(config_err(format!("config line {}: expected key = value", n + 1)));
        };
        insert_key(&mut raw, key, value.trim().to_string())?;
    }
    Ok(raw)
}

fn json_scalar(key: &str, v: &serde_json::Value) -> Result<String, CliError> {
    use serde_json::Value;
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        // [re, im] for complex values, or a list of grid points
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(config_err(format!("config key {key:?}: arrays may only hold numbers"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|parts| parts.join(",")),
        _ => Err(config_err(format!("config key {key:?}: unsupported JSON value"))),
    }
}

fn parse_json(text: &str) -> Result<RawConfig, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| config_err(format!("config is not valid JSON: {e}")))?;
    let serde_json::Value::Object(map) = value else {
        return Err(config_err("JSON config must be an object"));
    };
    let mut raw = RawConfig::new();
    for (key, v) in &map {
        let s = json_scalar(key, v)?;
        insert_key(&mut raw, key, s)?;
    }
    Ok(raw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(config_err(format!("format {other:?} must be json or csv"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Phi,
    Psi1,
    Psi2,
    Theta,
    Delta,
    Xi,
    R,
    Romanovski,
    H2Star,
    Dougall,
    Transform,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Phi => "phi",
            Quantity::Psi1 => "psi1",
            Quantity::Psi2 => "psi2",
            Quantity::Theta => "theta",
            Quantity::Delta => "delta",
            Quantity::Xi => "xi",
            Quantity::R => "r",
            Quantity::Romanovski => "romanovski",
            Quantity::H2Star => "h2star",
            Quantity::Dougall => "dougall",
            Quantity::Transform => "transform",
        }
    }

    /// Tabulated over x rather than ν.
    pub fn over_x(self) -> bool {
        matches!(self, Quantity::Phi | Quantity::Psi1 | Quantity::Psi2 | Quantity::Theta | Quantity::Romanovski)
    }

    fn needs_continuous_sigma(self) -> bool {
        matches!(self, Quantity::Delta | Quantity::Xi | Quantity::R)
    }
}

const EVAL_QUANTITIES: [Quantity; 10] = [
    Quantity::Phi,
    Quantity::Psi1,
    Quantity::Psi2,
    Quantity::Theta,
    Quantity::Delta,
    Quantity::Xi,
    Quantity::R,
    Quantity::Romanovski,
    Quantity::H2Star,
    Quantity::Dougall,
];

const TABLE_QUANTITIES: [Quantity; 9] = [
    Quantity::Phi,
    Quantity::Psi1,
    Quantity::Psi2,
    Quantity::Theta,
    Quantity::Romanovski,
    Quantity::Delta,
    Quantity::Xi,
    Quantity::R,
    Quantity::Transform,
];

fn parse_quantity(s: &str, allowed: &[Quantity], command: &str) -> Result<Quantity, CliError> {
    allowed.iter().copied().find(|q| q.name() == s).ok_or_else(|| {
        config_err(format!(
            "{command} quantity {s:?} must be one of {}",
            allowed.iter().map(|q| q.name()).collect::<Vec<_>>().join(", ")
        ))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Eval(Quantity),
    Verify(SuiteSelection),
    Transform,
    Invert,
    Plancherel,
    Table(Quantity),
    /// Re-reads a CSV table and emits it again.
    Reemit(PathBuf),
}

/// Parameters of a bilateral ₂H₂* evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesInputs {
    pub a1: C64,
    pub a2: C64,
    pub b1: C64,
    pub b2: C64,
    pub z: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    /// Whether α or β was given, rather than defaulted.
    pub params_explicit: bool,
    pub sigma: C64,
    pub t: C64,
    /// Second basis label; without it the orthogonal map s = σ̄ + t̄ − 1/2 is used.
    pub s: Option<C64>,
    pub nu_max: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub x: Vec<f64>,
    pub nu: Vec<f64>,
    pub function: TestFunction,
    pub other: TestFunction,
    pub k: usize,
    pub series: SeriesInputs,
}

pub fn parse_f64(key: &str, s: &str) -> Result<f64, CliError> {
    let v: f64 = s.trim().parse().map_err(|_| config_err(format!("{key} = {s:?} is not a number")))?;
    if !v.is_finite() {
        return Err(config_err(format!("{key} = {s:?} must be finite")));
    }
    Ok(v)
}

/// `RE,IM`, a real number, or `a+bi` / `bi`.
pub fn parse_complex(key: &str, s: &str) -> Result<C64, CliError> {
    let s = s.trim();
    if let Some((re, im)) = s.split_once(',') {
        return Ok(c64(parse_f64(key, re)?, parse_f64(key, im)?));
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not a leading sign or an exponent sign
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(j) => (&body[..j], &body[j..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        return Ok(c64(parse_f64(key, re)?, parse_f64(key, im)?));
    }
    Ok(c64(parse_f64(key, s)?, 0.0))
}

/// `linspace(a, b, n)`, a comma list, or a single number; empty means no
/// points.
pub fn parse_grid(key: &str, s: &str) -> Result<Vec<f64>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(args) = s.strip_prefix("linspace(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').collect();
        let [a, b, n] = parts[..] else {
            return Err(config_err(format!("{key}: linspace takes (start, stop, count)")));
        };
        let (a, b) = (parse_f64(key, a)?, parse_f64(key, b)?);
        let n: usize = n.trim().parse().map_err(|_| config_err(format!("{key}: linspace count {n:?} is not a whole number")))?;
        if n > MAX_GRID {
            return Err(config_err(format!("{key}: {n} points exceeds the limit of {MAX_GRID}")));
        }
        return Ok(match n {
            0 => Vec::new(),
            1 => vec![a],
            _ => (0..n).map(|j| a + (b - a) * j as f64 / (n - 1) as f64).collect(),
        });
    }
    if s.starts_with("linspace") {
        return Err(config_err(format!("{key}: malformed grid {s:?}; expected linspace(start, stop, count)")));
    }
    let points = s.split(',').map(|p| parse_f64(key, p)).collect::<Result<Vec<_>, _>>()?;
    if points.len() > MAX_GRID {
        return Err(config_err(format!("{key}: {} points exceeds the limit of {MAX_GRID}", points.len())));
    }
    Ok(points)
}

/// A preset name, optionally shifted: `hat`, `cubic@-0.5`.
pub fn parse_function(key: &str, s: &str) -> Result<TestFunction, CliError> {
    let (name, shift) = match s.trim().split_once('@') {
        Some((name, shift)) => (name, Some(parse_f64(key, shift)?)),
        None => (s.trim(), None),
    };
    let f = TestFunction::preset(name).map_err(|e| config_err(format!("{key}: {e}")))?;
    Ok(match shift {
        Some(d) if d.abs() > 1e6 => return Err(config_err(format!("{key}: shift {d} is out of range"))),
        Some(d) => f.shifted(d),
        None => f,
    })
}

/// Positional command and subject from the command line.
#[derive(Debug, Clone, Default)]
pub struct Positionals {
    pub command: Option<String>,
    pub subject: Option<String>,
}

/// Merges file and flag values (flags win) and validates the result.
pub fn resolve(pos: &Positionals, file: RawConfig, flags: RawConfig) -> Result<RunConfig, CliError> {
    let mut raw = file;
    raw.extend(flags);
    let get = |k: &str| raw.get(k).map(String::as_str);

    let command_name = pos.command.as_deref().or(get("command")).ok_or_else(|| config_err("no command given"))?;
    let subject = |key: &str| pos.subject.as_deref().or(get(key));
    let alpha = get("alpha").map(|v| parse_f64("alpha", v)).transpose()?;
    let beta = get("beta").map(|v| parse_f64("beta", v)).transpose()?;
    let params = Params::new(alpha.unwrap_or(0.3), beta.unwrap_or(0.7)).map_err(|e| config_err(e.to_string()))?;

    let sigma = c64(
        get("sigma_re").map(|v| parse_f64("sigma_re", v)).transpose()?.unwrap_or(0.0),
        get("sigma_im").map(|v| parse_f64("sigma_im", v)).transpose()?.unwrap_or(0.4),
    );
    let t = get("t").map(|v| parse_complex("t", v)).transpose()?.unwrap_or(c64(0.1, 0.0));
    let s = get("s").map(|v| parse_complex("s", v)).transpose()?;
    let nu_max = get("nu_max").map(|v| parse_f64("nu_max", v)).transpose()?.unwrap_or(40.0);
    if !(nu_max > 1e-3 && nu_max <= MAX_NU) {
        return Err(config_err(format!("nu_max = {nu_max} must lie in (0.001, {MAX_NU}]")));
    }
    let seed = match get("seed") {
        Some(v) => v.trim().parse::<u64>().map_err(|_| config_err(format!("seed = {v:?} must be a non-negative integer")))?,
        None => 0,
    };
    let k = match get("k") {
        Some(v) => v.trim().parse::<usize>().map_err(|_| config_err(format!("k = {v:?} must be a non-negative integer")))?,
        None => 0,
    };
    let x = get("x").map(|v| parse_grid("x", v)).transpose()?;
    let nu = get("nu").map(|v| parse_grid("nu", v)).transpose()?;
    let function = parse_function("function", get("function").unwrap_or("hat"))?;
    let other = parse_function("with", get("with").unwrap_or("cubic"))?;
    let cx = |key: &str, default: C64| get(key).map(|v| parse_complex(key, v)).transpose().map(|v| v.unwrap_or(default));
    let series = SeriesInputs {
        a1: cx("a1", c64(0.1, 0.0))?,
        a2: cx("a2", c64(0.0, 0.2))?,
        b1: cx("b1", c64(1.3, 0.0))?,
        b2: cx("b2", c64(1.4, -0.2))?,
        z: cx("z", c64(1.0, 0.0))?,
    };

    let command = match command_name {
        "eval" => Command::Eval(parse_quantity(subject("quantity").ok_or_else(|| config_err("eval needs a quantity"))?, &EVAL_QUANTITIES, "eval")?),
        "table" => match get("input") {
            Some(path) => Command::Reemit(PathBuf::from(path)),
            None => Command::Table(parse_quantity(
                subject("quantity").ok_or_else(|| config_err("table needs a quantity or an input file"))?,
                &TABLE_QUANTITIES,
                "table",
            )?),
        },
        "verify" => Command::Verify(subject("suite").unwrap_or("all").parse().map_err(|e: hyperindex::Error| config_err(e.to_string()))?),
        "transform" => Command::Transform,
        "invert" => Command::Invert,
        "plancherel" => Command::Plancherel,
        other => {
            return Err(config_err(format!(
                "unknown command {other:?}; expected eval, verify, transform, invert, plancherel or table"
            )))
        }
    };
    let format = match get("format") {
        Some(f) => f.parse()?,
        None if matches!(command, Command::Table(_) | Command::Reemit(_)) => Format::Csv,
        None => Format::Json,
    };

    let default_x = || if matches!(command, Command::Table(q) if q.over_x()) { None } else { Some(vec![0.0]) };
    let x = match x.or_else(default_x) {
        Some(x) => x,
        None => return Err(config_err("table over x needs an x grid, e.g. x = linspace(-5,5,101)")),
    };
    let cfg = RunConfig {
        command,
        params,
        params_explicit: alpha.is_some() || beta.is_some(),
        sigma,
        t,
        s,
        nu_max,
        seed,
        out: get("out").map(PathBuf::from),
        format,
        x,
        nu: nu.unwrap_or_default(),
        function,
        other,
        k,
        series,
    };
    validate(&cfg, get("nu").is_some())?;
    Ok(cfg)
}

/// Preconditions that depend on the command.
fn validate(cfg: &RunConfig, nu_given: bool) -> Result<(), CliError> {
    let quantity = match cfg.command {
        Command::Eval(q) | Command::Table(q) => Some(q),
        _ => None,
    };
    let table_over_nu = matches!(cfg.command, Command::Table(q) if !q.over_x());
    if table_over_nu && !nu_given {
        return Err(config_err("table over ν needs a nu grid, e.g. nu = linspace(0.1,10,100)"));
    }
    if table_over_nu || matches!(cfg.command, Command::Transform) {
        if let Some(bad) = cfg.nu.iter().find(|v| **v <= 0.0 || **v > MAX_NU) {
            return Err(config_err(format!("ν = {bad} must lie in (0, {MAX_NU}]")));
        }
    }
    let Some(q) = quantity else {
        if let (Command::Invert | Command::Plancherel, Some(s)) = (&cfg.command, cfg.s) {
            check_s_minus_t(s - cfg.t)?;
        }
        return Ok(());
    };
    if matches!(q, Quantity::Psi1 | Quantity::Psi2 | Quantity::Theta | Quantity::Delta | Quantity::Xi | Quantity::R) && cfg.params.is_degenerate() {
        return Err(config_err(format!("{} needs (α, β) ≠ (0, 0)", q.name())));
    }
    if q.needs_continuous_sigma() && !table_over_nu && !(cfg.sigma.re == 0.0 && cfg.sigma.im > 0.0) {
        return Err(config_err(format!("{} needs σ = iν with ν > 0 (sigma_re = 0, sigma_im > 0)", q.name())));
    }
    if q == Quantity::R {
        // Unset s means the orthogonal map, where Re(s − t) = −1/2.
        if let Some(s) = cfg.s {
            check_s_minus_t(s - cfg.t)?;
        }
    }
    if q == Quantity::Romanovski && !((cfg.k as f64) < cfg.params.alpha() - 0.5) {
        return Err(config_err(format!("romanovski index k = {} needs k < α − 1/2 = {}", cfg.k, cfg.params.alpha() - 0.5)));
    }
    if q == Quantity::H2Star && (cfg.series.z.norm() - 1.0).abs() > 1e-12 {
        return Err(config_err(format!("h2star needs |z| = 1, got |z| = {}", cfg.series.z.norm())));
    }
    Ok(())
}

/// The density R(σ; t, s) needs s − t ∉ ℤ.
pub fn check_s_minus_t(d: C64) -> Result<(), CliError> {
    if sin_pi(d).norm() < 1e-12 {
        return Err(config_err(format!("precondition s−t ∉ ℤ violated: s − t = {d}")));
    }
    Ok(())
}
