//! `Z^n` vertex groups. Elements are coordinate vectors.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, solve2};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeAbelianGroup {
    pub gens: Vec<String>,
}

impl FreeAbelianGroup {
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn inv(&self, x: &[i64]) -> Vec<i64> {
        x.iter().map(|a| -a).collect()
    }

    pub fn pow(&self, x: &[i64], n: i64) -> Vec<i64> {
        x.iter().map(|a| a * n).collect()
    }

    /// Solves `g = m*u + n*v`.
    pub fn solve_in_span(&self, u: &[i64], v: &[i64], g: &[i64]) -> Option<[i64; 2]> {
        let n = self.rank();
        for r1 in 0..n {
            for r2 in r1 + 1..n {
                let m = [[u[r1], v[r1]], [u[r2], v[r2]]];
                if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0 {
                    continue;
                }
                let sol = solve2(m, [g[r1], g[r2]])?;
                let ok = (0..n).all(|i| sol[0] * u[i] + sol[1] * v[i] == g[i]);
                return ok.then_some(sol);
            }
        }
        None
    }

    pub fn span_has_rank_two(&self, u: &[i64], v: &[i64]) -> bool {
        let n = self.rank();
        (0..n).any(|r1| (r1 + 1..n).any(|r2| u[r1] * v[r2] - u[r2] * v[r1] != 0))
    }

    /// Canonical representative of `g + span(u, v)`, via an echelon basis of the span.
    pub fn coset_rep(&self, u: &[i64], v: &[i64], g: &[i64]) -> Vec<i64> {
        let (b1, c1, b2, c2) = echelon(u, v);
        let mut r = g.to_vec();
        let k = r[c1].div_euclid(b1[c1]);
        for (ri, bi) in r.iter_mut().zip(&b1) {
            *ri -= k * bi;
        }
        let k = r[c2].div_euclid(b2[c2]);
        for (ri, bi) in r.iter_mut().zip(&b2) {
            *ri -= k * bi;
        }
        r
    }

    pub fn max_divisor(&self, g: &[i64]) -> (i64, Vec<i64>) {
        let d = g.iter().fold(0, |acc, &c| gcd(acc, c));
        (d, g.iter().map(|c| c / d).collect())
    }
}

/// Row echelon basis `(b1, pivot1, b2, pivot2)` of a rank-2 lattice, pivots positive and
/// `b2[pivot1] == 0`.
fn echelon(u: &[i64], v: &[i64]) -> (Vec<i64>, usize, Vec<i64>, usize) {
    let mut a = u.to_vec();
    let mut b = v.to_vec();
    let n = a.len();
    let c1 = (0..n).find(|&i| a[i] != 0 || b[i] != 0).expect("rank-2 lattice");
    // Euclid on column c1.
    while b[c1] != 0 {
        let q = a[c1].div_euclid(b[c1]);
        for i in 0..n {
            a[i] -= q * b[i];
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a[c1] < 0 {
        a.iter_mut().for_each(|x| *x = -*x);
    }
    let c2 = (0..n).find(|&i| b[i] != 0).expect("rank-2 lattice");
    if b[c2] < 0 {
        b.iter_mut().for_each(|x| *x = -*x);
    }
    // Reduce a modulo b in column c2 so the basis itself is canonical.
    let q = a[c2].div_euclid(b[c2]);
    for i in 0..n {
        a[i] -= q * b[i];
    }
    (a, c1, b, c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FreeAbelianGroup {
        FreeAbelianGroup { gens: (0..n).map(|i| format!("t{i}")).collect() }
    }

    #[test]
    fn product_is_addition() {
        assert_eq!(z(2).mul(&[1, 2], &[3, -1]), vec![4, 1]);
    }

    #[test]
    fn max_divisor_is_gcd() {
        assert_eq!(z(2).max_divisor(&[4, 6]), (2, vec![2, 3]));
    }

    #[test]
    fn coset_rep_is_class_function() {
        let g = z(3);
        let (u, v) = ([1, 1, 0], [0, 2, 1]);
        let x = [3, -4, 7];
        let r = g.coset_rep(&u, &v, &x);
        for (m, n) in [(1, 0), (-3, 2), (5, 5)] {
            let y: Vec<i64> = (0..3).map(|i| x[i] + m * u[i] + n * v[i]).collect();
            assert_eq!(g.coset_rep(&u, &v, &y), r);
        }
        let diff: Vec<i64> = (0..3).map(|i| x[i] - r[i]).collect();
        assert!(g.solve_in_span(&u, &v, &diff).is_some());
    }
}
