use hyperindex::eigen::{
    gram_matrix_delta, phi, phi_direct, psi1, psi2, romanovski_theta, spectral_density_r, spectral_matrix_xi, theta_basis,
    Mat2, Params, PhiPath, SpectralPoint,
};
use hyperindex::hyp_series::{bilateral_h_star, dougall_closed_form, BilateralParams};
use hyperindex::transform::{
    forward_options, forward_transform_with, inverse_transform, plancherel_pairing, sample_transform, SpectralMaps,
    SpectrumOptions,
};
use hyperindex::verify::{self, VerifyConfig};
use hyperindex::{c64, C64};

use crate::config::{check_s_minus_t, Command, Quantity, RunConfig};
use crate::output::{complex_columns, complex_values, Table, Value};
use crate::CliError;

/// A finished command: its table and whether every verification passed.
pub struct Report {
    pub table: Table,
    pub all_passed: bool,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Self { table, all_passed: true }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    match &cfg.command {
        Command::Eval(q) => eval(cfg, *q).map(Report::from),
        Command::Table(q) => table(cfg, *q).map(Report::from),
        Command::Verify(selection) => Ok(run_verify(cfg, *selection)),
        Command::Transform => transform(cfg).map(Report::from),
        Command::Invert => invert(cfg).map(Report::from),
        Command::Plancherel => plancherel(cfg).map(Report::from),
        Command::Reemit(path) => {
            let bytes = std::fs::read(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            Table::from_csv(&bytes).map(Report::from)
        }
    }
}

fn columns(names: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for n in names {
        match n.strip_suffix("#") {
            Some(stem) => out.extend(complex_columns(stem)),
            None => out.push(n.to_string()),
        }
    }
    out
}

/// Concatenates scalar and complex values into one row; a complex value
/// fills two cells.
macro_rules! row {
    ($($v:expr),* $(,)?) => {{
        let mut r: Vec<Value> = Vec::new();
        $( r.extend(Cells::cells($v)); )*
        r
    }};
}

trait Cells {
    fn cells(self) -> Vec<Value>;
}

impl Cells for C64 {
    fn cells(self) -> Vec<Value> {
        complex_values(self).to_vec()
    }
}

macro_rules! scalar_cells {
    ($($t:ty),*) => {$(
        impl Cells for $t {
            fn cells(self) -> Vec<Value> {
                vec![Value::from(self)]
            }
        }
    )*};
}

scalar_cells!(f64, usize, &str, Option<f64>);

fn continuous_point(cfg: &RunConfig) -> SpectralPoint {
    SpectralPoint::new(cfg.sigma, cfg.t)
}

/// s from the config, or the orthogonal map at σ.
fn s_at(cfg: &RunConfig, sigma: C64) -> C64 {
    cfg.s.unwrap_or_else(|| SpectralMaps::Orthogonal { t: cfg.t }.at(sigma).1)
}

fn mat_entries(m: &Mat2) -> [(&'static str, C64); 4] {
    [("11", m.m11), ("12", m.m12), ("21", m.m21), ("22", m.m22)]
}

fn matrix_at(cfg: &RunConfig, q: Quantity, sigma: C64) -> Result<Mat2, CliError> {
    let p = &cfg.params;
    Ok(match q {
        Quantity::Delta => gram_matrix_delta(p, sigma)?,
        Quantity::Xi => spectral_matrix_xi(p, sigma)?,
        Quantity::R => {
            let s = s_at(cfg, sigma);
            check_s_minus_t(s - cfg.t)?;
            spectral_density_r(p, sigma, cfg.t, s)?
        }
        _ => unreachable!("not a matrix quantity"),
    })
}

fn point_value(p: &Params, q: Quantity, pt: &SpectralPoint, k: usize, x: f64) -> Result<C64, CliError> {
    Ok(match q {
        Quantity::Phi => phi(p, pt, x)?,
        Quantity::Psi1 => psi1(p, pt.sigma, x)?,
        Quantity::Psi2 => psi2(p, pt.sigma, x)?,
        Quantity::Romanovski => romanovski_theta(p, k, x)?,
        _ => unreachable!("not a pointwise quantity"),
    })
}

fn eval(cfg: &RunConfig, q: Quantity) -> Result<Table, CliError> {
    let p = &cfg.params;
    let (alpha, beta) = (p.alpha(), p.beta());
    let pt = continuous_point(cfg);
    match q {
        Quantity::Phi => {
            let mut t = Table::new(columns(&["alpha", "beta", "sigma#", "t#", "x", "value#", "abs_error", "status"]));
            for &x in &cfg.x {
                let value = phi(p, &pt, x)?;
                // The error estimate exists when the series path produced the value.
                let series = (2.0 * pt.sigma.re < 1.0).then(|| phi_direct(p, &pt, x).ok()).flatten().filter(|d| d.value == value);
                let (err, status) = match series {
                    Some(d) => (Some(d.abs_error_estimate), d.status.as_str()),
                    None => (None, "connection"),
                };
                t.push(row![alpha, beta, pt.sigma, pt.t, x, value, err, status]);
            }
            Ok(t)
        }
        Quantity::Psi1 | Quantity::Psi2 | Quantity::Romanovski => {
            let mut t = Table::new(columns(&["alpha", "beta", "sigma#", "k", "x", "value#", "abs_error", "status"]));
            for &x in &cfg.x {
                let value = point_value(p, q, &pt, cfg.k, x)?;
                let sigma = if q == Quantity::Romanovski { c64(alpha - 0.5 - cfg.k as f64, 0.0) } else { pt.sigma };
                t.push(row![alpha, beta, sigma, cfg.k, x, value, None::<f64>, "ok"]);
            }
            Ok(t)
        }
        Quantity::Theta => {
            let mut t = Table::new(columns(&["alpha", "beta", "sigma#", "component", "x", "value#", "abs_error", "status"]));
            for &x in &cfg.x {
                let (t1, t2) = theta_basis(p, pt.sigma, x)?;
                for (c, v) in [(1usize, t1), (2, t2)] {
                    t.push(row![alpha, beta, pt.sigma, c, x, v, None::<f64>, "ok"]);
                }
            }
            Ok(t)
        }
        Quantity::Delta | Quantity::Xi | Quantity::R => {
            let s = s_at(cfg, pt.sigma);
            let m = matrix_at(cfg, q, pt.sigma)?;
            let mut t = Table::new(columns(&["alpha", "beta", "sigma#", "t#", "s#", "entry", "value#", "abs_error", "status"]));
            for (entry, v) in mat_entries(&m) {
                t.push(row![alpha, beta, pt.sigma, cfg.t, s, entry, v, None::<f64>, "ok"]);
            }
            Ok(t)
        }
        Quantity::H2Star | Quantity::Dougall => {
            let si = &cfg.series;
            let z = if q == Quantity::Dougall { c64(1.0, 0.0) } else { si.z };
            let h = bilateral_h_star(&BilateralParams::new(&[si.a1, si.a2], &[si.b1, si.b2], z)?)?;
            let mut names = vec!["a1#", "a2#", "b1#", "b2#", "z#", "value#"];
            if q == Quantity::Dougall {
                names.push("closed_form#");
            }
            names.extend(["abs_error", "terms", "status"]);
            let mut t = Table::new(columns(&names));
            let mut r = row![si.a1, si.a2, si.b1, si.b2, z, h.value];
            if q == Quantity::Dougall {
                r.extend(complex_values(dougall_closed_form(si.a1, si.a2, si.b1, si.b2)?));
            }
            r.extend(row![h.abs_error_estimate, h.terms_used, h.status.as_str()]);
            t.push(r);
            Ok(t)
        }
        Quantity::Transform => unreachable!("transform is not an eval quantity"),
    }
}

fn table(cfg: &RunConfig, q: Quantity) -> Result<Table, CliError> {
    let p = &cfg.params;
    let pt = continuous_point(cfg);
    match q {
        Quantity::Phi | Quantity::Psi1 | Quantity::Psi2 | Quantity::Romanovski => {
            let mut t = Table::new(columns(&["x", "value#"]));
            for &x in &cfg.x {
                t.push(row![x, point_value(p, q, &pt, cfg.k, x)?]);
            }
            Ok(t)
        }
        Quantity::Theta => {
            let mut t = Table::new(columns(&["x", "theta1#", "theta2#"]));
            for &x in &cfg.x {
                let (t1, t2) = theta_basis(p, pt.sigma, x)?;
                t.push(row![x, t1, t2]);
            }
            Ok(t)
        }
        Quantity::Delta | Quantity::Xi | Quantity::R => {
            let stem = q.name();
            let names: Vec<String> = ["11", "12", "21", "22"].iter().map(|e| format!("{stem}{e}#")).collect();
            let mut header = vec!["nu"];
            header.extend(names.iter().map(String::as_str));
            let mut t = Table::new(columns(&header));
            for &nu in &cfg.nu {
                let m = matrix_at(cfg, q, c64(0.0, nu))?;
                t.push(row![nu, m.m11, m.m12, m.m21, m.m22]);
            }
            Ok(t)
        }
        Quantity::Transform => {
            let mut t = Table::new(columns(&["nu", "value#", "abs_error"]));
            for &nu in &cfg.nu {
                let r = forward_transform_with(p, &cfg.function, &SpectralPoint::new(c64(0.0, nu), cfg.t), PhiPath::Auto, forward_options())?;
                t.push(row![nu, r.value, r.abs_error]);
            }
            Ok(t)
        }
        Quantity::H2Star | Quantity::Dougall => unreachable!("not a table quantity"),
    }
}

/// J f at σ, or at iν for each ν of the grid when one is given.
fn transform(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.params;
    let sigmas: Vec<C64> = if cfg.nu.is_empty() { vec![cfg.sigma] } else { cfg.nu.iter().map(|&nu| c64(0.0, nu)).collect() };
    let mut t = Table::new(columns(&["function", "alpha", "beta", "sigma#", "t#", "value#", "abs_error", "status"]));
    for sigma in sigmas {
        let r = forward_transform_with(p, &cfg.function, &SpectralPoint::new(sigma, cfg.t), PhiPath::Auto, forward_options())?;
        t.push(row![cfg.function.name(), p.alpha(), p.beta(), sigma, cfg.t, r.value, r.abs_error, "ok"]);
    }
    Ok(t)
}

fn maps(cfg: &RunConfig) -> SpectralMaps {
    match cfg.s {
        Some(s) => SpectralMaps::Constant { t: cfg.t, s },
        None => SpectralMaps::Orthogonal { t: cfg.t },
    }
}

fn spectrum(cfg: &RunConfig) -> SpectrumOptions {
    SpectrumOptions { nu_max: cfg.nu_max, ..Default::default() }
}

fn invert(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.params;
    let f = &cfg.function;
    let mut t = Table::new(columns(&["function", "alpha", "beta", "nu_max", "x", "value#", "exact#", "abs_error", "status"]));
    if cfg.x.is_empty() {
        return Ok(t);
    }
    let sample = sample_transform(p, f, maps(cfg), spectrum(cfg), &cfg.x)?;
    for &x in &cfg.x {
        let value = inverse_transform(&sample, x)?;
        let exact = f.eval(x);
        t.push(row![f.name(), p.alpha(), p.beta(), cfg.nu_max, x, value, exact, (value - exact).norm(), "ok"]);
    }
    Ok(t)
}

fn plancherel(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = &cfg.params;
    let (f, g) = (&cfg.function, &cfg.other);
    let a = sample_transform(p, f, maps(cfg), spectrum(cfg), &[])?;
    let b = sample_transform(p, g, maps(cfg), spectrum(cfg), &[])?;
    let value = plancherel_pairing(&a, &b)?;
    let exact = f.inner_product(g);
    let mut t = Table::new(columns(&["function", "with", "alpha", "beta", "nu_max", "value#", "exact#", "abs_error", "status"]));
    t.push(row![f.name(), g.name(), p.alpha(), p.beta(), cfg.nu_max, value, exact, (value - exact).norm(), "ok"]);
    Ok(t)
}

fn run_verify(cfg: &RunConfig, selection: verify::SuiteSelection) -> Report {
    let vc = VerifyConfig { seed: cfg.seed, params: cfg.params_explicit.then_some(cfg.params), nu_max: cfg.nu_max };
    let results = verify::run(selection, &vc);
    let mut t = Table::new(columns(&["suite", "check", "status", "measured", "tolerance", "samples", "note"]));
    let mut all_passed = true;
    for r in &results {
        all_passed &= r.passed;
        let status = if r.passed { "pass" } else { "fail" };
        t.push(row![r.suite.name(), r.name.as_str(), status, r.measured, r.tolerance, r.samples, r.note.as_str()]);
    }
    Report { table: t, all_passed }
}
