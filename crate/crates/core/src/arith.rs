//! Small exact integer helpers: gcds and 2x2 integer matrices.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// A 2x2 integer matrix, row major. Columns are images of basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);
    pub const SWAP: Mat2 = Mat2([[0, 1], [1, 0]]);

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Solves `self * x = rhs` over the integers; `None` if singular or non-integral.
    pub fn solve(&self, rhs: [i64; 2]) -> Option<[i64; 2]> {
        solve2(self.0, rhs)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }
}

/// Solves the integer system `m * x = rhs` by Cramer's rule.
pub fn solve2(m: [[i64; 2]; 2], rhs: [i64; 2]) -> Option<[i64; 2]> {
    let det = m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128;
    if det == 0 {
        return None;
    }
    let nx = rhs[0] as i128 * m[1][1] as i128 - m[0][1] as i128 * rhs[1] as i128;
    let ny = m[0][0] as i128 * rhs[1] as i128 - rhs[0] as i128 * m[1][0] as i128;
    if nx % det != 0 || ny % det != 0 {
        return None;
    }
    Some([(nx / det) as i64, (ny / det) as i64])
}

/// Canonical remainder of `c` modulo the lattice `M·Z²` (`det M != 0`): returns `(r, z)` with
/// `c = r + M z`, `r` depending only on the class of `c`.
pub fn lattice_rem(m: &Mat2, c: [i64; 2]) -> ([i64; 2], [i64; 2]) {
    let [[m00, m01], [m10, m11]] = m.0;
    let (g, x, y) = ext_gcd(m00, m01);
    assert!(g != 0, "singular lattice");
    // M U = [[g, 0], [b, d]] with U unimodular.
    let mut u = [[x, -m01 / g], [y, m00 / g]];
    let mut b = m10 * u[0][0] + m11 * u[1][0];
    let mut d = m10 * u[0][1] + m11 * u[1][1];
    if d < 0 {
        d = -d;
        u[0][1] = -u[0][1];
        u[1][1] = -u[1][1];
    }
    let q = b.div_euclid(d);
    b -= q * d;
    u[0][0] -= q * u[0][1];
    u[1][0] -= q * u[1][1];
    let w1 = c[0].div_euclid(g);
    let r0 = c[0] - g * w1;
    let c1 = c[1] - b * w1;
    let w2 = c1.div_euclid(d);
    let r1 = c1 - d * w2;
    let z = [u[0][0] * w1 + u[0][1] * w2, u[1][0] * w1 + u[1][1] * w2];
    ([r0, r1], z)
}

/// Divisors of `n > 0` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_unimodular_and_nonintegral() {
        let m = Mat2([[2, 1], [1, 1]]);
        assert_eq!(m.solve([5, 3]), Some([2, 1]));
        let m = Mat2([[2, 0], [0, 2]]);
        assert_eq!(m.solve([1, 0]), None);
        assert_eq!(Mat2([[1, 2], [2, 4]]).solve([1, 2]), None);
    }

    #[test]
    fn lattice_remainder_is_canonical() {
        let m = Mat2([[2, 1], [-1, 3]]);
        for c in [[0, 0], [5, -3], [-7, 11]] {
            let (r, z) = lattice_rem(&m, c);
            let mz = m.apply(z);
            assert_eq!([r[0] + mz[0], r[1] + mz[1]], c);
            for w in [[1, 0], [0, 1], [-3, 2]] {
                let mw = m.apply(w);
                assert_eq!(lattice_rem(&m, [c[0] + mw[0], c[1] + mw[1]]).0, r);
            }
        }
        assert_eq!(lattice_rem(&Mat2::SWAP, [4, -9]).0, [0, 0]);
    }

    #[test]
    fn ext_gcd_signs() {
        for (a, b) in [(4, 6), (-4, 6), (3, 0), (0, -5), (-7, -3)] {
            let (g, x, y) = ext_gcd(a, b);
            assert!(g >= 0);
            assert_eq!(a * x + b * y, g);
            assert_eq!(g, gcd(a, b));
        }
    }
}
