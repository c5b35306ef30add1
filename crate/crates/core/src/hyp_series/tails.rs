//! Ingredients for summing the polynomially decaying tail of a bilateral
//! series in closed form.

use crate::C64;

/// Bernoulli numbers B₀…B₂₄ (B₁ = −1/2).
const BERNOULLI: [f64; 25] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
];

pub(crate) const MAX_ORDER: usize = 22;

fn binomial_f64(n: usize, k: usize) -> f64 {
    let mut v = 1.0;
    for j in 0..k {
        v = v * (n - j) as f64 / (j + 1) as f64;
    }
    v
}

/// B_k(x) for k ≤ 24.
pub(crate) fn bernoulli_poly(k: usize, x: C64) -> C64 {
    // Horner in x over Σ C(k,j) B_j x^{k−j}.
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..=k {
        acc = acc * x + binomial_f64(k, j) * BERNOULLI[j];
    }
    acc
}

/// Coefficients d₁…d_K of ln Γ(n+a)/Γ(n+b)-type sums:
/// Σ ln Γ(n+aⱼ) − Σ ln Γ(n+bⱼ) = s·ln n + Σ_k d_k n^{−k} + O(n^{−K−1}).
pub(crate) fn log_ratio_coefficients(upper: &[C64], lower: &[C64], order: usize) -> Vec<C64> {
    (1..=order)
        .map(|k| {
            let num: C64 = upper.iter().map(|a| bernoulli_poly(k + 1, *a)).sum::<C64>()
                - lower.iter().map(|b| bernoulli_poly(k + 1, *b)).sum::<C64>();
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * num / (k * (k + 1)) as f64
        })
        .collect()
}

/// Power-series coefficients e₀…e_K of exp(Σ_{k≥1} d_k y^k).
pub(crate) fn exp_series(d: &[C64]) -> Vec<C64> {
    let mut e = vec![C64::new(1.0, 0.0)];
    for j in 1..=d.len() {
        let mut acc = C64::new(0.0, 0.0);
        for k in 1..=j {
            acc += k as f64 * d[k - 1] * e[j - k];
        }
        e.push(acc / j as f64);
    }
    e
}

/// Hurwitz ζ(s, q) = Σ_{n≥0} (n+q)^{−s} for Re s > 1 and q ≥ 1, by
/// Euler–Maclaurin after shifting q past 30 + |s|.
pub fn hurwitz_zeta(s: C64, q: f64) -> C64 {
    let shift = ((30.0 + s.norm()) - q).max(0.0).ceil() as usize;
    let mut head = C64::new(0.0, 0.0);
    for n in 0..shift {
        head += (-s * (q + n as f64).ln()).exp();
    }
    let m = q + shift as f64;
    let ln_m = m.ln();
    let m_pow = (-s * ln_m).exp();
    let mut tail = m_pow * m / (s - 1.0) + 0.5 * m_pow;
    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k−2) · m^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut mpow = m_pow / m;
    for k in 1..=11 {
        let b = BERNOULLI[2 * k];
        tail += b / fact * rising * mpow;
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        mpow /= m * m;
    }
    head + tail
}

/// Li_{−k}(w) for k = 0…order, w ≠ 1, through Eulerian numbers:
/// Li_{−k}(w) = w·Σ_m A(k,m) w^m / (1−w)^{k+1}.
pub(crate) fn polylog_negative_orders(w: C64, order: usize) -> Vec<C64> {
    let inv = 1.0 / (1.0 - w);
    let mut out = vec![w * inv];
    let mut row = vec![1.0f64];
    let mut inv_pow = inv;
    for k in 1..=order {
        // A(k, m) = (m+1)A(k−1, m) + (k−m)A(k−1, m−1)
        let mut next = vec![0.0f64; k];
        for (m, slot) in next.iter_mut().enumerate() {
            let keep = if m < row.len() { (m + 1) as f64 * row[m] } else { 0.0 };
            let carry = if m >= 1 && m - 1 < row.len() { (k - m) as f64 * row[m - 1] } else { 0.0 };
            *slot = keep + carry;
        }
        row = next;
        inv_pow *= inv;
        let mut poly = C64::new(0.0, 0.0);
        for &a in row.iter().rev() {
            poly = poly * w + a;
        }
        out.push(w * poly * inv_pow);
    }
    out
}

/// Generalized binomials C(s, k) for k = 0…order.
pub(crate) fn binomials(s: C64, order: usize) -> Vec<C64> {
    let mut out = vec![C64::new(1.0, 0.0)];
    for k in 1..=order {
        let prev = out[k - 1];
        out.push(prev * (s - (k - 1) as f64) / k as f64);
    }
    out
}
