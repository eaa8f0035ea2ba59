//! Exact arithmetic in quadratic integer rings `Z[τ]`, `τ² + pτ + q = 0`, and 2x2 matrices over them.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub type Q = Ratio<i128>;

/// The ring `Z[τ]` with `τ² + p·τ + q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadRing {
    pub p: i64,
    pub q: i64,
}

/// `a + b·τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

/// `a + b·τ` with rational coordinates, for field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub a: Q,
    pub b: Q,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { a: 0, b: 0 };
    pub const ONE: QuadInt = QuadInt { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        QuadInt { a, b }
    }

    pub fn int(a: i64) -> Self {
        QuadInt { a, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn to_rat(self) -> QuadRat {
        QuadRat { a: Q::from_integer(self.a as i128), b: Q::from_integer(self.b as i128) }
    }
}

impl std::ops::Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        QuadInt::new(self.a + o.a, self.b + o.b)
    }
}

impl std::ops::Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        QuadInt::new(self.a - o.a, self.b - o.b)
    }
}

impl std::ops::Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.a, -self.b)
    }
}

impl QuadRing {
    /// `τ² + τ + 1 = 0`, the Eisenstein integers.
    pub const EISENSTEIN: QuadRing = QuadRing { p: 1, q: 1 };
    /// `τ² + 1 = 0`, the Gaussian integers.
    pub const GAUSSIAN: QuadRing = QuadRing { p: 0, q: 1 };

    pub fn discriminant(&self) -> i64 {
        self.p * self.p - 4 * self.q
    }

    pub fn mul(&self, x: QuadInt, y: QuadInt) -> QuadInt {
        let bd = x.b * y.b;
        QuadInt::new(x.a * y.a - self.q * bd, x.a * y.b + x.b * y.a - self.p * bd)
    }

    pub fn rmul(&self, x: QuadRat, y: QuadRat) -> QuadRat {
        let p = Q::from_integer(self.p as i128);
        let q = Q::from_integer(self.q as i128);
        let bd = x.b * y.b;
        QuadRat { a: x.a * y.a - q * bd, b: x.a * y.b + x.b * y.a - p * bd }
    }

    /// Field norm, `a² - p·a·b + q·b²`.
    pub fn rnorm(&self, x: QuadRat) -> Q {
        let p = Q::from_integer(self.p as i128);
        let q = Q::from_integer(self.q as i128);
        x.a * x.a - p * x.a * x.b + q * x.b * x.b
    }

    pub fn rdiv(&self, x: QuadRat, y: QuadRat) -> Option<QuadRat> {
        let n = self.rnorm(y);
        if n == Q::from_integer(0) {
            return None;
        }
        let p = Q::from_integer(self.p as i128);
        let conj = QuadRat { a: y.a - p * y.b, b: -y.b };
        let num = self.rmul(x, conj);
        Some(QuadRat { a: num.a / n, b: num.b / n })
    }

    /// Complex embedding of `τ`, choosing the root with non-negative imaginary part.
    pub fn tau(&self) -> Complex64 {
        let disc = self.discriminant() as f64;
        if disc < 0.0 {
            Complex64::new(-self.p as f64 / 2.0, (-disc).sqrt() / 2.0)
        } else {
            Complex64::new((-self.p as f64 + disc.sqrt()) / 2.0, 0.0)
        }
    }

    pub fn embed(&self, x: QuadInt) -> Complex64 {
        Complex64::new(x.a as f64, 0.0) + self.tau() * x.b as f64
    }

    pub fn embed_rat(&self, x: QuadRat) -> Complex64 {
        let f = |r: Q| *r.numer() as f64 / *r.denom() as f64;
        Complex64::new(f(x.a), 0.0) + self.tau() * f(x.b)
    }

    /// True when the element is a real number in the complex embedding.
    pub fn is_real(&self, x: QuadInt) -> bool {
        x.b == 0 || self.discriminant() > 0
    }
}

/// A 2x2 matrix over `Z[τ]`, row major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QMat(pub [[QuadInt; 2]; 2]);

impl QMat {
    pub const IDENTITY: QMat = QMat([[QuadInt::ONE, QuadInt::ZERO], [QuadInt::ZERO, QuadInt::ONE]]);

    pub fn from_ints(m: [[i64; 2]; 2]) -> QMat {
        QMat([
            [QuadInt::int(m[0][0]), QuadInt::int(m[0][1])],
            [QuadInt::int(m[1][0]), QuadInt::int(m[1][1])],
        ])
    }

    pub fn neg(&self) -> QMat {
        let m = &self.0;
        QMat([[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]])
    }

    pub fn trace(&self) -> QuadInt {
        self.0[0][0] + self.0[1][1]
    }

    pub fn is_pm_identity(&self) -> bool {
        *self == QMat::IDENTITY || *self == QMat::IDENTITY.neg()
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inv_unimodular(&self) -> QMat {
        let m = &self.0;
        QMat([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    pub fn sub(&self, o: &QMat) -> QMat {
        let (a, b) = (&self.0, &o.0);
        QMat([[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]])
    }

    pub fn entries(&self) -> [QuadInt; 4] {
        [self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]]
    }
}

impl QuadRing {
    pub fn mat_mul(&self, x: &QMat, y: &QMat) -> QMat {
        let (a, b) = (&x.0, &y.0);
        let e = |i: usize, j: usize| self.mul(a[i][0], b[0][j]) + self.mul(a[i][1], b[1][j]);
        QMat([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn det(&self, x: &QMat) -> QuadInt {
        let m = &x.0;
        self.mul(m[0][0], m[1][1]) - self.mul(m[0][1], m[1][0])
    }

    pub fn mat_pow(&self, x: &QMat, n: i64) -> QMat {
        let base = if n < 0 { x.inv_unimodular() } else { *x };
        let mut acc = QMat::IDENTITY;
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mat_mul(&acc, &sq);
            }
            sq = self.mat_mul(&sq, &sq);
            k >>= 1;
        }
        acc
    }
}

impl fmt::Display for QuadInt {
    /// Prints in the DSL's `a+bt` syntax with the generic ring symbol `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_quad(f, *self, "t")
    }
}

pub fn write_quad(f: &mut impl fmt::Write, x: QuadInt, sym: &str) -> fmt::Result {
    match (x.a, x.b) {
        (a, 0) => write!(f, "{a}"),
        (0, b) => write_coef(f, b, sym, true),
        (a, b) => {
            write!(f, "{a}")?;
            if b > 0 {
                write!(f, "+")?;
            }
            write_coef(f, b, sym, false)
        }
    }
}

fn write_coef(f: &mut impl fmt::Write, b: i64, sym: &str, _leading: bool) -> fmt::Result {
    match b {
        1 => write!(f, "{sym}"),
        -1 => write!(f, "-{sym}"),
        b => write!(f, "{b}{sym}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_tau_cubed_is_one() {
        let r = QuadRing::EISENSTEIN;
        let t = QuadInt::new(0, 1);
        let t3 = r.mul(r.mul(t, t), t);
        assert_eq!(t3, QuadInt::ONE);
        assert_eq!(r.mul(t, t), QuadInt::new(-1, -1));
    }

    #[test]
    fn gaussian_i_squared() {
        let r = QuadRing::GAUSSIAN;
        let i = QuadInt::new(0, 1);
        assert_eq!(r.mul(i, i), QuadInt::int(-1));
        let z = r.embed(QuadInt::new(1, 1));
        assert!((z.im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rational_division_inverts_multiplication() {
        let r = QuadRing::EISENSTEIN;
        let x = QuadInt::new(3, -2).to_rat();
        let y = QuadInt::new(1, 4).to_rat();
        let p = r.rmul(x, y);
        assert_eq!(r.rdiv(p, y), Some(x));
    }

    #[test]
    fn matrix_power_and_inverse() {
        let r = QuadRing::EISENSTEIN;
        let y = QMat([[QuadInt::ONE, QuadInt::ZERO], [QuadInt::new(0, -1), QuadInt::ONE]]);
        let y3 = r.mat_pow(&y, 3);
        assert_eq!(r.mat_mul(&y3, &r.mat_pow(&y, -3)), QMat::IDENTITY);
        assert_eq!(r.det(&y3), QuadInt::ONE);
    }
}
