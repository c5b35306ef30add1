use crate::error::{Error, Result};
use crate::C64;
use std::ops::{Add, Mul, Sub};

/// 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m11: C64,
    pub m12: C64,
    pub m21: C64,
    pub m22: C64,
}

impl Mat2 {
    pub const fn new(m11: C64, m12: C64, m21: C64, m22: C64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    pub fn det(&self) -> C64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let scale = self.max_abs();
        if d.norm() <= 1e-300 || d.norm() <= 1e-15 * scale * scale {
            return Err(Error::Degenerate(format!("matrix is singular (det = {d})")));
        }
        Ok(Self::new(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d))
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.m11.conj(), self.m21.conj(), self.m12.conj(), self.m22.conj())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.m11 * c, self.m12 * c, self.m21 * c, self.m22 * c)
    }

    pub fn max_abs(&self) -> f64 {
        [self.m11, self.m12, self.m21, self.m22].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |M − M*| relative to max |M|.
    pub fn hermitian_defect(&self) -> f64 {
        (*self - self.adjoint()).max_abs() / self.max_abs().max(1e-300)
    }

    /// Both eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.m11.re;
        let d = self.m22.re;
        let b = self.m12.norm();
        let mean = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        (mean - rad, mean + rad)
    }

    /// row · M · col.
    pub fn sandwich(&self, row: [C64; 2], col: [C64; 2]) -> C64 {
        row[0] * (self.m11 * col[0] + self.m12 * col[1]) + row[1] * (self.m21 * col[0] + self.m22 * col[1])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.m11 + o.m11, self.m12 + o.m12, self.m21 + o.m21, self.m22 + o.m22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.m11 - o.m11, self.m12 - o.m12, self.m21 - o.m21, self.m22 - o.m22)
    }
}
