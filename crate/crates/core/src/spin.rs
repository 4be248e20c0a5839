//! Two-component spinors and 2×2 complex matrices.

use std::ops::{Add, Mul, Sub};

use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Spin state `(c₁, c₂)` in the σᶻ basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor(pub [C64; 2]);

impl Spinor {
    pub const fn new(c1: C64, c2: C64) -> Self {
        Spinor([c1, c2])
    }

    pub fn real(c1: f64, c2: f64) -> Self {
        Spinor([C64::new(c1, 0.0), C64::new(c2, 0.0)])
    }

    pub fn up() -> Self {
        Self::real(1.0, 0.0)
    }

    pub fn down() -> Self {
        Self::real(0.0, 1.0)
    }

    /// Positive σˣ eigenstate `(1, 1)/√2`.
    pub fn plus_x() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::real(h, h)
    }

    /// Negative σˣ eigenstate `(1, −1)/√2`.
    pub fn minus_x() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::real(h, -h)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Spinor) -> C64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn normalized(&self) -> Spinor {
        let n = self.norm_sqr().sqrt();
        Spinor([self.0[0] / n, self.0[1] / n])
    }

    pub fn scale(&self, s: C64) -> Spinor {
        Spinor([self.0[0] * s, self.0[1] * s])
    }
}

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn sigma_x() -> Self {
        Mat2::new(ZERO, ONE, ONE, ZERO)
    }

    pub fn sigma_y() -> Self {
        Mat2::new(ZERO, -I, I, ZERO)
    }

    pub fn sigma_z() -> Self {
        Mat2::new(ONE, ZERO, ZERO, -ONE)
    }

    pub fn adjoint(&self) -> Mat2 {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let m = &self.0;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        let m = &self.0;
        Spinor([m[0][0] * v.0[0] + m[0][1] * v.0[1], m[1][0] * v.0[0] + m[1][1] * v.0[1]])
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &Spinor) -> Mat2 {
        let [a, b] = v.0;
        Mat2::new(a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1])
    }
}
