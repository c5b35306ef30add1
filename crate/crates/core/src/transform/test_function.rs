use crate::error::{Error, Result};
use crate::C64;

/// Σ cⱼ xʲ on [a, b].
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub a: f64,
    pub b: f64,
    pub coeffs: Vec<C64>,
}

impl Piece {
    fn eval(&self, x: f64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
    }
}

/// A compactly supported piecewise polynomial. Pieces are sorted and
/// disjoint apart from shared endpoints; the function is zero elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    name: String,
    pieces: Vec<Piece>,
}

/// Coefficients of Σ cⱼ (x − x₀)ʲ in powers of x.
fn expand_about(local: &[C64], x0: f64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); local.len()];
    for (j, c) in local.iter().enumerate() {
        let mut binom = 1.0;
        for m in 0..=j {
            // C(j, m) x^m (−x₀)^{j−m}
            out[m] += c * binom * (-x0).powi((j - m) as i32);
            binom = binom * (j - m) as f64 / (m + 1) as f64;
        }
    }
    out
}

fn poly_mul(p: &[C64], q: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn poly_integral(p: &[C64], a: f64, b: f64) -> C64 {
    p.iter().enumerate().map(|(k, c)| c * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k as f64 + 1.0)).sum()
}

pub const PRESET_NAMES: [&str; 3] = ["hat", "bump", "cubic"];

impl TestFunction {
    pub fn new(name: &str, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidInput("a test function needs at least one piece".into()));
        }
        for pc in &pieces {
            if !(pc.a.is_finite() && pc.b.is_finite() && pc.a < pc.b) {
                return Err(Error::InvalidInput(format!("piece [{}, {}] is not a finite interval", pc.a, pc.b)));
            }
            if pc.coeffs.is_empty() || pc.coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
                return Err(Error::InvalidInput("piece coefficients must be finite and nonempty".into()));
            }
        }
        if pieces.windows(2).any(|w| w[1].a < w[0].b) {
            return Err(Error::InvalidInput("pieces must be sorted and non-overlapping".into()));
        }
        Ok(Self { name: name.to_string(), pieces })
    }

    /// 1 − |x| on [−1, 1].
    pub fn hat() -> Self {
        let one = C64::new(1.0, 0.0);
        Self {
            name: "hat".into(),
            pieces: vec![
                Piece { a: -1.0, b: 0.0, coeffs: vec![one, one] },
                Piece { a: 0.0, b: 1.0, coeffs: vec![one, -one] },
            ],
        }
    }

    /// C¹ quadratic bump on [−1, 1]: 1 − 2x² for |x| ≤ 1/2, 2(1 − |x|)² beyond.
    pub fn bump() -> Self {
        let r = |v: f64| C64::new(v, 0.0);
        Self {
            name: "bump".into(),
            pieces: vec![
                Piece { a: -1.0, b: -0.5, coeffs: vec![r(2.0), r(4.0), r(2.0)] },
                Piece { a: -0.5, b: 0.5, coeffs: vec![r(1.0), r(0.0), r(-2.0)] },
                Piece { a: 0.5, b: 1.0, coeffs: vec![r(2.0), r(-4.0), r(2.0)] },
            ],
        }
    }

    /// C² cubic B-spline of half-width 1 centred at 0.3, peak value 1.
    pub fn cubic() -> Self {
        let center = 0.3;
        let h = 0.5;
        // B(u) on u = (x − c)/h, knots at u = −2, −1, 0, 1, 2, scaled by 3/2.
        let locals: [(f64, [f64; 4]); 4] = [
            (-2.0, [0.0, 0.0, 0.0, 1.0 / 6.0]),
            (-1.0, [1.0 / 6.0, 0.5, 0.5, -0.5]),
            (0.0, [2.0 / 3.0, 0.0, -1.0, 0.5]),
            (1.0, [1.0 / 6.0, -0.5, 0.5, -1.0 / 6.0]),
        ];
        let pieces = locals
            .iter()
            .map(|(u0, c)| {
                // c are coefficients in (u − u0); u − u0 = (x − x0)/h.
                let x0 = center + h * u0;
                let scaled: Vec<C64> = c.iter().enumerate().map(|(j, v)| C64::new(1.5 * v / h.powi(j as i32), 0.0)).collect();
                Piece { a: x0, b: x0 + h, coeffs: expand_about(&scaled, x0) }
            })
            .collect();
        Self { name: "cubic".into(), pieces }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "hat" => Ok(Self::hat()),
            "bump" => Ok(Self::bump()),
            "cubic" => Ok(Self::cubic()),
            other => Err(Error::InvalidInput(format!(
                "unknown test function {other:?}; expected one of {}",
                PRESET_NAMES.join(", ")
            ))),
        }
    }

    /// The zero function on [−1, 1].
    pub fn zero() -> Self {
        Self { name: "zero".into(), pieces: vec![Piece { a: -1.0, b: 1.0, coeffs: vec![C64::new(0.0, 0.0)] }] }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn support(&self) -> (f64, f64) {
        (self.pieces[0].a, self.pieces[self.pieces.len() - 1].b)
    }

    /// Sorted distinct piece endpoints.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.pieces.iter().flat_map(|p| [p.a, p.b]).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    pub fn eval(&self, x: f64) -> C64 {
        self.pieces.iter().find(|p| p.a <= x && x <= p.b).map_or(C64::new(0.0, 0.0), |p| p.eval(x))
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            name: format!("{}*{c}", self.name),
            pieces: self.pieces.iter().map(|p| Piece { coeffs: p.coeffs.iter().map(|v| v * c).collect(), ..p.clone() }).collect(),
        }
    }

    /// x ↦ f(x − shift).
    pub fn shifted(&self, shift: f64) -> Self {
        Self {
            name: format!("{}@{shift}", self.name),
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { a: p.a + shift, b: p.b + shift, coeffs: expand_about(&p.coeffs, shift) })
                .collect(),
        }
    }

    /// x ↦ ix·f(x).
    pub fn times_ix(&self) -> Self {
        let ix = [C64::new(0.0, 0.0), C64::new(0.0, 1.0)];
        Self {
            name: format!("ix*{}", self.name),
            pieces: self.pieces.iter().map(|p| Piece { coeffs: poly_mul(&p.coeffs, &ix), ..p.clone() }).collect(),
        }
    }

    /// Pointwise sum, on the union of both partitions.
    pub fn sum(&self, other: &Self) -> Self {
        let mut cuts: Vec<f64> = self.breakpoints().into_iter().chain(other.breakpoints()).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut pieces = Vec::new();
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let mut coeffs: Vec<C64> = Vec::new();
            for f in [self, other] {
                if let Some(p) = f.pieces.iter().find(|p| p.a <= mid && mid <= p.b) {
                    if coeffs.len() < p.coeffs.len() {
                        coeffs.resize(p.coeffs.len(), C64::new(0.0, 0.0));
                    }
                    for (c, v) in coeffs.iter_mut().zip(&p.coeffs) {
                        *c += v;
                    }
                }
            }
            if !coeffs.is_empty() {
                pieces.push(Piece { a: w[0], b: w[1], coeffs });
            }
        }
        Self { name: format!("{}+{}", self.name, other.name), pieces }
    }

    /// ∫ f ḡ dx, exact up to rounding.
    pub fn inner_product(&self, other: &Self) -> C64 {
        let mut total = C64::new(0.0, 0.0);
        for p in &self.pieces {
            for q in &other.pieces {
                let (a, b) = (p.a.max(q.a), p.b.min(q.b));
                if a < b {
                    let conj: Vec<C64> = q.coeffs.iter().map(|c| c.conj()).collect();
                    total += poly_integral(&poly_mul(&p.coeffs, &conj), a, b);
                }
            }
        }
        total
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner_product(self).re
    }
}
