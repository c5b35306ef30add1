use super::{discrete_projection, romanovski_pairing, TestFunction};
use crate::eigen::{jost_pair_on_nodes, phi_jost_weights, romanovski_norm_sq, romanovski_theta, spectral_density_r, Mat2, Params};
use crate::error::{Error, Result};
use crate::ode::OdeOptions;
use crate::par;
use crate::quad::GaussLegendre;
use crate::special_core::sin_pi;
use crate::C64;
use std::f64::consts::PI;

/// How the two basis labels t(σ), s(σ) are chosen on σ = iν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralMaps {
    /// Fixed t and s. Φ(iν,t) and Φ(iν,s) become parallel to order e^{−πν},
    /// so only small ν is resolvable in double precision.
    Constant { t: C64, s: C64 },
    /// s(σ) = σ̄ + t̄ − 1/2, for which ⟨Φ_t, Φ_s⟩ = 0 and R is diagonal.
    Orthogonal { t: C64 },
}

impl SpectralMaps {
    pub fn at(&self, sigma: C64) -> (C64, C64) {
        match *self {
            SpectralMaps::Constant { t, s } => (t, s),
            SpectralMaps::Orthogonal { t } => (t, sigma.conj() + t.conj() - 0.5),
        }
    }

    pub fn validate(&self, sigma: C64) -> Result<()> {
        let (t, s) = self.at(sigma);
        if sin_pi(s - t).norm() < 1e-12 {
            return Err(Error::Degenerate(format!("s − t = {} must not be an integer", s - t)));
        }
        Ok(())
    }
}

/// Gauss–Legendre panels on [ε, ν_max].
#[derive(Debug, Clone, PartialEq)]
pub struct NuGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panel_width: f64,
    pub eps: f64,
    pub nu_max: f64,
}

pub const PANEL_ORDER: usize = 15;

/// Widest ν-panel that resolves the e^{±iν·arcsinh 2x} oscillation at x.
pub fn panel_width_for(x: f64) -> f64 {
    0.25f64.min(PI / (4.0 * (1.0 + x.abs())))
}

impl NuGrid {
    pub fn new(eps: f64, nu_max: f64, max_width: f64) -> Result<Self> {
        if !(eps > 0.0 && nu_max > eps && nu_max.is_finite() && max_width > 0.0) {
            return Err(Error::InvalidInput(format!("ν grid needs 0 < ε < ν_max, got ε = {eps}, ν_max = {nu_max}")));
        }
        let panels = ((nu_max - eps) / max_width).ceil().max(1.0) as usize;
        let width = (nu_max - eps) / panels as f64;
        let gl = GaussLegendre::new(PANEL_ORDER);
        let mut nodes = Vec::with_capacity(panels * PANEL_ORDER);
        let mut weights = Vec::with_capacity(panels * PANEL_ORDER);
        for j in 0..panels {
            let a = eps + width * j as f64;
            for (x, w) in gl.mapped(a, a + width) {
                nodes.push(x);
                weights.push(w);
            }
        }
        Ok(Self { nodes, weights, panel_width: width, eps, nu_max })
    }

    /// A grid fine enough for every x in `xs`.
    pub fn for_points(eps: f64, nu_max: f64, xs: &[f64]) -> Result<Self> {
        let width = xs.iter().map(|x| panel_width_for(*x)).fold(0.25, f64::min);
        Self::new(eps, nu_max, width)
    }

    pub fn resolves(&self, x: f64) -> bool {
        self.panel_width <= panel_width_for(x) * (1.0 + 1e-12)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SpectrumOptions {
    pub eps: f64,
    pub nu_max: f64,
    pub ode: OdeOptions,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self { eps: 1e-3, nu_max: 40.0, ode: OdeOptions::default() }
    }
}

/// Transform data at one ν node.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralNode {
    pub nu: f64,
    pub weight: f64,
    pub t: C64,
    pub s: C64,
    pub f_t: C64,
    pub f_s: C64,
    pub density: Mat2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTerm {
    pub k: usize,
    /// ⟨f, Θᵏ⟩.
    pub pairing: C64,
    pub norm_sq: f64,
}

/// Forward transform sampled on a ν grid, with Φ_t, Φ_s tabulated at the
/// requested reconstruction points.
#[derive(Debug, Clone)]
pub struct TransformSample {
    pub params: Params,
    pub maps: SpectralMaps,
    pub grid: NuGrid,
    pub nodes: Vec<SpectralNode>,
    pub discrete: Vec<DiscreteTerm>,
    kernel_xs: Vec<f64>,
    /// kernels[node][point] = [Φ(iν, t; x), Φ(iν, s; x)].
    kernels: Vec<Vec<[C64; 2]>>,
    ode: OdeOptions,
}

/// Gauss–Legendre nodes in y = arcsinh 2x over supp f, split at the kinks of
/// f, each panel at most min(0.5, 2/ν) wide.
fn y_quadrature(f: &TestFunction, nu: f64) -> (Vec<f64>, Vec<f64>) {
    const ORDER: usize = 16;
    let gl = GaussLegendre::new(ORDER);
    let max_width = 0.5f64.min(2.0 / nu.max(1e-300));
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for piece in f.pieces() {
        let (ya, yb) = ((2.0 * piece.a).asinh(), (2.0 * piece.b).asinh());
        let panels = ((yb - ya) / max_width).ceil().max(1.0) as usize;
        let h = (yb - ya) / panels as f64;
        for j in 0..panels {
            let a = ya + h * j as f64;
            for (y, w) in gl.mapped(a, a + h) {
                xs.push(0.5 * y.sinh());
                ws.push(w * 0.5 * y.cosh());
            }
        }
    }
    (xs, ws)
}

struct NodeResult {
    node: SpectralNode,
    kernels: Vec<[C64; 2]>,
}

fn sample_node(
    params: &Params,
    f: &TestFunction,
    maps: &SpectralMaps,
    nu: f64,
    weight: f64,
    recon_xs: &[f64],
    ode: OdeOptions,
) -> Result<NodeResult> {
    let sigma = C64::new(0.0, nu);
    maps.validate(sigma)?;
    let (t, s) = maps.at(sigma);
    let (qx, qw) = y_quadrature(f, nu);
    let mut all_x = qx.clone();
    all_x.extend_from_slice(recon_xs);
    let (right, left) = jost_pair_on_nodes(params, sigma, &all_x, ode)?;
    // I₊ = ∫ f conj J₊(x), I₋ = ∫ f conj J̃₊(−x).
    let mut i_right = C64::new(0.0, 0.0);
    let mut i_left = C64::new(0.0, 0.0);
    for (j, (&x, &w)) in qx.iter().zip(qw.iter()).enumerate() {
        let fx = f.eval(x) * w;
        i_right += fx * right[j].conj();
        i_left += fx * left[j].conj();
    }
    let wt = phi_jost_weights(sigma, t);
    let ws = phi_jost_weights(sigma, s);
    let f_t = wt[0].conj() * i_right + wt[1].conj() * i_left;
    let f_s = ws[0].conj() * i_right + ws[1].conj() * i_left;
    let n = qx.len();
    let kernels = (0..recon_xs.len())
        .map(|k| {
            let (jr, jl) = (right[n + k], left[n + k]);
            [wt[0] * jr + wt[1] * jl, ws[0] * jr + ws[1] * jl]
        })
        .collect();
    let density = spectral_density_r(params, sigma, t, s)?;
    for v in [f_t, f_s, density.m11, density.m12, density.m21, density.m22] {
        crate::error::finite(v, "spectral sample")?;
    }
    // R ~ e^{−3πν} against Φ ~ e^{3πν/2}: past ν ≈ 75 R leaves the f64 range.
    if density.max_abs() == 0.0 {
        return Err(Error::NonFinite(format!("spectral density underflows at ν = {nu}")));
    }
    Ok(NodeResult { node: SpectralNode { nu, weight, t, s, f_t, f_s, density }, kernels })
}

/// Samples J f on the ν grid (Jost route, data-parallel over nodes) and
/// tabulates the kernels needed to reconstruct f at `recon_xs`. For α > 1/2
/// the discrete coefficients are computed as well.
pub fn sample_transform(
    params: &Params,
    f: &TestFunction,
    maps: SpectralMaps,
    opts: SpectrumOptions,
    recon_xs: &[f64],
) -> Result<TransformSample> {
    let grid = NuGrid::for_points(opts.eps, opts.nu_max, recon_xs)?;
    sample_transform_on(params, f, maps, grid, opts.ode, recon_xs)
}

pub fn sample_transform_on(
    params: &Params,
    f: &TestFunction,
    maps: SpectralMaps,
    grid: NuGrid,
    ode: OdeOptions,
    recon_xs: &[f64],
) -> Result<TransformSample> {
    for &x in recon_xs {
        if !grid.resolves(x) {
            return Err(Error::Resolution(format!(
                "ν panels of width {} cannot resolve the kernel at x = {x} (need ≤ {})",
                grid.panel_width,
                panel_width_for(x)
            )));
        }
    }
    let results = par::map_indexed(grid.nodes.len(), |j| sample_node(params, f, &maps, grid.nodes[j], grid.weights[j], recon_xs, ode));
    let mut nodes = Vec::with_capacity(results.len());
    let mut kernels = Vec::with_capacity(results.len());
    for r in results {
        let r = r?;
        nodes.push(r.node);
        kernels.push(r.kernels);
    }
    let discrete = (0..params.discrete_count())
        .map(|k| Ok(DiscreteTerm { k, pairing: romanovski_pairing(params, f, k)?, norm_sq: romanovski_norm_sq(params, k)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransformSample { params: *params, maps, grid, nodes, discrete, kernel_xs: recon_xs.to_vec(), kernels, ode })
}

impl TransformSample {
    pub fn reconstruction_points(&self) -> &[f64] {
        &self.kernel_xs
    }

    fn kernels_at(&self, x: f64) -> Result<Vec<[C64; 2]>> {
        if !self.grid.resolves(x) {
            return Err(Error::Resolution(format!(
                "ν panels of width {} cannot resolve the kernel at x = {x} (need ≤ {})",
                self.grid.panel_width,
                panel_width_for(x)
            )));
        }
        if let Some(k) = self.kernel_xs.iter().position(|v| *v == x) {
            return Ok(self.kernels.iter().map(|row| row[k]).collect());
        }
        let rows = par::map_indexed(self.nodes.len(), |j| {
            let node = &self.nodes[j];
            let sigma = C64::new(0.0, node.nu);
            let (right, left) = jost_pair_on_nodes(&self.params, sigma, &[x], self.ode)?;
            let wt = phi_jost_weights(sigma, node.t);
            let ws = phi_jost_weights(sigma, node.s);
            Ok([wt[0] * right[0] + wt[1] * left[0], ws[0] * right[0] + ws[1] * left[0]])
        });
        rows.into_iter().collect()
    }

    /// (1/2π) ∫ (Φ_t(x), Φ_s(x)) Rᵀ (F_t, F_s)ᵀ dν over the grid.
    pub fn continuous_part(&self, x: f64) -> Result<C64> {
        let kernels = self.kernels_at(x)?;
        let mut total = C64::new(0.0, 0.0);
        for (node, k) in self.nodes.iter().zip(kernels.iter()) {
            total += node.weight * node.density.transpose().sandwich(*k, [node.f_t, node.f_s]);
        }
        Ok(total / (2.0 * PI))
    }

    /// Σₖ ‖Θᵏ‖⁻² ⟨f, Θᵏ⟩ Θᵏ(x).
    pub fn discrete_part(&self, x: f64) -> Result<C64> {
        let mut total = C64::new(0.0, 0.0);
        for term in &self.discrete {
            total += term.pairing / term.norm_sq * romanovski_theta(&self.params, term.k, x)?;
        }
        Ok(total)
    }
}

/// f(x) reconstructed from its sampled transform, discrete terms included.
pub fn inverse_transform(sample: &TransformSample, x: f64) -> Result<C64> {
    Ok(sample.continuous_part(x)? + sample.discrete_part(x)?)
}

/// (1/2π) ∫ (F₁_t, F₁_s) R (conj F₂_t, conj F₂_s)ᵀ dν plus the discrete terms,
/// the spectral side of ∫ f₁ f̄₂ dx.
pub fn plancherel_pairing(a: &TransformSample, b: &TransformSample) -> Result<C64> {
    if a.params != b.params || a.maps != b.maps || a.grid != b.grid {
        return Err(Error::InvalidInput("Plancherel samples must share parameters, maps and ν grid".into()));
    }
    let mut total = C64::new(0.0, 0.0);
    for (n1, n2) in a.nodes.iter().zip(b.nodes.iter()) {
        total += n1.weight * n1.density.sandwich([n1.f_t, n1.f_s], [n2.f_t.conj(), n2.f_s.conj()]);
    }
    total /= 2.0 * PI;
    for (d1, d2) in a.discrete.iter().zip(b.discrete.iter()) {
        total += d1.pairing * d2.pairing.conj() / d1.norm_sq;
    }
    Ok(total)
}

/// Discrete coefficients of f, for α > 1/2.
pub fn discrete_coefficients(params: &Params, f: &TestFunction) -> Result<Vec<C64>> {
    (0..params.discrete_count()).map(|k| discrete_projection(params, f, k)).collect()
}
