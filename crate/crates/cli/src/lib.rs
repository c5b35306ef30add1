//! Front end for the hyperindex library: argument and config handling,
//! the six commands, and their JSON and CSV output.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::Parser;
use thiserror::Error;

use config::{parse_config_text, resolve, Positionals, RawConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(#[from] hyperindex::Error),
    #[error("output error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "hyperindex", version, about = "Index transform numerics: evaluation, verification suites, transforms and tables")]
struct Cli {
    /// eval, verify, transform, invert, plancherel or table
    command: Option<String>,
    /// Quantity for eval and table, suite for verify
    subject: Option<String>,
    /// key=value or JSON config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma_re: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma_im: Option<String>,
    /// RE,IM
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// RE,IM; selects constant maps in invert and plancherel
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu_max: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// json or csv
    #[arg(long)]
    format: Option<String>,
    /// Test function preset, optionally shifted: hat, bump, cubic, hat@1.8
    #[arg(long)]
    function: Option<String>,
    /// Second test function for plancherel
    #[arg(long)]
    with: Option<String>,
    /// x grid: linspace(a,b,n), a comma list or one number
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// ν grid, same syntax as --x
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Romanovski index
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// CSV table to re-read and emit again (table command)
    #[arg(long)]
    input: Option<String>,
}

impl Cli {
    fn flags(&self) -> RawConfig {
        let pairs = [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("sigma_re", &self.sigma_re),
            ("sigma_im", &self.sigma_im),
            ("t", &self.t),
            ("s", &self.s),
            ("nu_max", &self.nu_max),
            ("seed", &self.seed),
            ("out", &self.out),
            ("format", &self.format),
            ("function", &self.function),
            ("with", &self.with),
            ("x", &self.x),
            ("nu", &self.nu),
            ("k", &self.k),
            ("a1", &self.a1),
            ("a2", &self.a2),
            ("b1", &self.b1),
            ("b2", &self.b2),
            ("z", &self.z),
            ("input", &self.input),
        ];
        pairs.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect()
    }
}

/// Exit code and the bytes destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Outcome {
    fn failure(e: &CliError) -> Self {
        Self { code: e.exit_code(), stdout: Vec::new(), stderr: format!("error: {e}\n") }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => 2,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text.into_bytes(), stderr: String::new() }
            } else {
                Outcome { code, stdout: Vec::new(), stderr: text }
            };
        }
    };
    let file = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => parse_config_text(&text),
            Err(e) => Err(CliError::Config(format!("cannot read config {}: {e}", path.display()))),
        },
        None => Ok(RawConfig::new()),
    };
    let positionals = Positionals { command: cli.command.clone(), subject: cli.subject.clone() };
    run_resolved(file.and_then(|file| resolve(&positionals, file, cli.flags())))
}

/// Runs a config given as text, as if passed with `--config`.
pub fn run_config_text(positionals: &Positionals, text: &str) -> Outcome {
    run_resolved(parse_config_text(text).and_then(|file| resolve(positionals, file, RawConfig::new())))
}

fn run_resolved(cfg: Result<config::RunConfig, CliError>) -> Outcome {
    let cfg = match cfg {
        Ok(cfg) => cfg,
        Err(e) => return Outcome::failure(&e),
    };
    let report = match commands::execute(&cfg) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(&e),
    };
    let bytes = match report.table.encode(cfg.format) {
        Ok(b) => b,
        Err(e) => return Outcome::failure(&e),
    };
    let code = if report.all_passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED };
    match &cfg.out {
        Some(path) => match std::fs::write(path, &bytes) {
            Ok(()) => Outcome { code, stdout: Vec::new(), stderr: String::new() },
            Err(e) => Outcome::failure(&CliError::Io(format!("cannot write {}: {e}", path.display()))),
        },
        None => Outcome { code, stdout: bytes, stderr: String::new() },
    }
}
