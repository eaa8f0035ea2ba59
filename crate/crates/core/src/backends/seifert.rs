//! Seifert fibered vertex groups over a planar base orbifold with boundary.
//!
//! The group is a central extension of the free product `Z^{*k} * Z/α₁ * … * Z/α_m` by
//! the fiber `h`, with relations `qᵢ^{αᵢ} = h^{-βᵢ}`. A trivial circle bundle over a planar
//! surface is the case without cone points (`F_k × Z`).
//!
//! Normal form: an alternating syllable word over the base factors (exponents in
//! `[1, αᵢ-1]` for cone factors, nonzero for free factors, adjacent indices distinct)
//! times a power of `h`.

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, ext_gcd, gcd};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub name: String,
    /// `None` for a free factor, `Some(α)` for a cone point of order `α >= 2`.
    pub order: Option<i64>,
    /// Seifert invariant `β`, coprime to `α`; zero for free factors.
    pub beta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertGroup {
    pub factors: Vec<Factor>,
    pub fiber_name: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeifertElem {
    pub syl: Vec<(usize, i64)>,
    pub fiber: i64,
}

impl SeifertElem {
    pub fn is_fiber_power(&self) -> bool {
        self.syl.is_empty()
    }
}

/// Shape of an element up to conjugacy in the base orbifold group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// `h^m`.
    Fiber(i64),
    /// `u · z_i^t · u⁻¹` where `z_i` generates `⟨qᵢ, h⟩ ≅ Z`.
    Elliptic { conj: SeifertElem, factor: usize, t: i64 },
    /// `u · D^j · h^f · u⁻¹` with `D` cyclically reduced and primitive in the base, `j >= 1`.
    Infinite { conj: SeifertElem, core: SeifertElem, j: i64, f: i64 },
}

impl SeifertGroup {
    pub fn fiber_index(&self) -> usize {
        self.factors.len()
    }

    pub fn has_cone_points(&self) -> bool {
        self.factors.iter().any(|f| f.order.is_some())
    }

    /// Largest cone order, or 1 without cone points.
    pub fn max_singular_order(&self) -> i64 {
        self.factors.iter().filter_map(|f| f.order).max().unwrap_or(1)
    }

    pub fn identity(&self) -> SeifertElem {
        SeifertElem::default()
    }

    pub fn fiber(&self) -> SeifertElem {
        SeifertElem { syl: vec![], fiber: 1 }
    }

    pub fn fiber_pow(&self, m: i64) -> SeifertElem {
        SeifertElem { syl: vec![], fiber: m }
    }

    /// Generator power `g_i^e`, with `i == fiber_index()` meaning the fiber.
    pub fn gen_pow(&self, i: usize, e: i64) -> SeifertElem {
        if i == self.fiber_index() {
            return self.fiber_pow(e);
        }
        let mut out = self.identity();
        self.push(&mut out, (i, e));
        out
    }

    /// `q^e = q^r · h^{-β k}` where `e = kα + r`.
    fn reduce_exp(&self, i: usize, e: i64) -> (i64, i64) {
        match self.factors[i].order {
            None => (e, 0),
            Some(a) => (e.rem_euclid(a), -self.factors[i].beta * e.div_euclid(a)),
        }
    }

    fn push(&self, out: &mut SeifertElem, (i, e): (usize, i64)) {
        let e = match out.syl.last() {
            Some(&(j, top)) if j == i => {
                out.syl.pop();
                top + e
            }
            _ => e,
        };
        let (r, carry) = self.reduce_exp(i, e);
        out.fiber += carry;
        if r != 0 {
            out.syl.push((i, r));
        }
    }

    pub fn mul(&self, x: &SeifertElem, y: &SeifertElem) -> SeifertElem {
        let mut out = x.clone();
        out.fiber += y.fiber;
        for &s in &y.syl {
            self.push(&mut out, s);
        }
        out
    }

    pub fn inv(&self, x: &SeifertElem) -> SeifertElem {
        let mut out = SeifertElem { syl: vec![], fiber: -x.fiber };
        for &(i, e) in x.syl.iter().rev() {
            self.push(&mut out, (i, -e));
        }
        out
    }

    pub fn pow(&self, x: &SeifertElem, n: i64) -> SeifertElem {
        let base = if n < 0 { self.inv(x) } else { x.clone() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            k >>= 1;
        }
        acc
    }

    pub fn conj(&self, a: &SeifertElem, x: &SeifertElem) -> SeifertElem {
        self.mul(&self.mul(a, x), &self.inv(a))
    }

    /// Word length of the base part with respect to `{qᵢ}`.
    pub fn base_len(&self, x: &SeifertElem) -> i64 {
        x.syl
            .iter()
            .map(|&(i, e)| match self.factors[i].order {
                None => e.abs(),
                Some(a) => e.min(a - e),
            })
            .sum()
    }

    /// Normal-form length: base syllable cost plus `|fiber|`.
    pub fn complexity(&self, x: &SeifertElem) -> usize {
        (self.base_len(x) + x.fiber.abs()) as usize
    }

    /// `(u, c)` with `x = u c u⁻¹` and `c` cyclically reduced in the base.
    pub fn conj_reduce(&self, x: &SeifertElem) -> (SeifertElem, SeifertElem) {
        let mut u = self.identity();
        let mut c = x.clone();
        while c.syl.len() >= 2 && c.syl[0].0 == c.syl[c.syl.len() - 1].0 {
            let s = SeifertElem { syl: vec![c.syl[0]], fiber: 0 };
            c = self.mul(&self.mul(&self.inv(&s), &c), &s);
            u = self.mul(&u, &s);
        }
        (u, c)
    }

    /// The generator `z_i = q_i^x h^y` of `⟨qᵢ, h⟩ ≅ Z`, with `β x - α y = 1`.
    pub fn cone_generator(&self, i: usize) -> SeifertElem {
        let alpha = self.factors[i].order.expect("cone factor");
        let beta = self.factors[i].beta;
        let (g, x, y) = ext_gcd(beta, -alpha);
        debug_assert_eq!(g, 1);
        self.mul(&self.gen_pow(i, x), &self.fiber_pow(y))
    }

    /// The isomorphism `⟨qᵢ, h⟩ → Z` sending `z_i ↦ 1`, applied to `qᵢ^a h^k`.
    fn cone_coordinate(&self, i: usize, a: i64, k: i64) -> i64 {
        let alpha = self.factors[i].order.expect("cone factor");
        self.factors[i].beta * a - alpha * k
    }

    pub fn shape(&self, x: &SeifertElem) -> Shape {
        if x.syl.is_empty() {
            return Shape::Fiber(x.fiber);
        }
        let (u, c) = self.conj_reduce(x);
        if c.syl.len() == 1 {
            let (i, e) = c.syl[0];
            match self.factors[i].order {
                Some(_) => {
                    return Shape::Elliptic { conj: u, factor: i, t: self.cone_coordinate(i, e, c.fiber) }
                }
                None => {
                    let core = SeifertElem { syl: vec![(i, e.signum())], fiber: 0 };
                    return Shape::Infinite { conj: u, core, j: e.abs(), f: c.fiber };
                }
            }
        }
        let n = c.syl.len();
        let p = divisors(n)
            .into_iter()
            .find(|&p| (0..n).all(|k| c.syl[k] == c.syl[k % p]))
            .unwrap_or(n);
        let core = SeifertElem { syl: c.syl[..p].to_vec(), fiber: 0 };
        let j = (n / p) as i64;
        let rest = self.mul(&c, &self.pow(&core, -j));
        debug_assert!(rest.syl.is_empty());
        Shape::Infinite { conj: u, core, j, f: rest.fiber }
    }

    /// Writes `y = u D^k h^f u⁻¹` when the base of `u⁻¹ y u` is a power of the primitive
    /// cyclically reduced `D`; returns `(k, f)`.
    pub fn express_in_root(&self, u: &SeifertElem, core: &SeifertElem, y: &SeifertElem) -> Option<(i64, i64)> {
        let y2 = self.mul(&self.mul(&self.inv(u), y), u);
        if y2.syl.is_empty() {
            return Some((0, y2.fiber));
        }
        let candidates: Vec<i64> = if core.syl.len() == 1 {
            let (i0, e0) = core.syl[0];
            match y2.syl.as_slice() {
                [(i, e)] if *i == i0 => match self.factors[i0].order {
                    None => vec![e * e0],
                    Some(_) => vec![*e],
                },
                _ => vec![],
            }
        } else {
            if !y2.syl.len().is_multiple_of(core.syl.len()) {
                return None;
            }
            let k = (y2.syl.len() / core.syl.len()) as i64;
            vec![k, -k]
        };
        for k in candidates {
            let dk = self.pow(core, k);
            if dk.syl == y2.syl {
                return Some((k, y2.fiber - dk.fiber));
            }
        }
        None
    }

    /// The order of `x` in the base orbifold group when finite (1 for fiber powers).
    pub fn base_order(&self, x: &SeifertElem) -> Option<i64> {
        match self.shape(x) {
            Shape::Fiber(_) => Some(1),
            Shape::Elliptic { factor, conj, .. } => {
                let alpha = self.factors[factor].order.expect("cone factor");
                let c = self.mul(&self.mul(&self.inv(&conj), x), &conj);
                let e = c.syl[0].1;
                Some(alpha / gcd(alpha, e))
            }
            Shape::Infinite { .. } => None,
        }
    }

    /// Largest `d` with `x = y^d`, and such a `y`. `x` must be non-trivial.
    pub fn max_divisor(&self, x: &SeifertElem) -> (i64, SeifertElem) {
        match self.shape(x) {
            Shape::Fiber(m) => {
                let best = self
                    .factors
                    .iter()
                    .enumerate()
                    .filter_map(|(i, f)| f.order.map(|a| (a, i)))
                    .max_by_key(|&(a, i)| (a, std::cmp::Reverse(i)));
                match best {
                    Some((alpha, i)) if alpha > 1 => {
                        // h = z^{-α}, so h^m = z^{-α m}.
                        let root = self.pow(&self.cone_generator(i), -m.signum());
                        (alpha * m.abs(), root)
                    }
                    _ => (m.abs(), self.fiber_pow(m.signum())),
                }
            }
            Shape::Elliptic { conj, factor, t } => {
                let z = self.pow(&self.cone_generator(factor), t.signum());
                (t.abs(), self.conj(&conj, &z))
            }
            Shape::Infinite { conj, core, j, f } => {
                let d = gcd(j, f);
                let root = self.mul(&self.pow(&core, j / d), &self.fiber_pow(f / d));
                (d, self.conj(&conj, &root))
            }
        }
    }

    /// Rotations of `c` (as a cyclic syllable word) that match `target`'s syllables:
    /// returns the prefix `P` with `target = P⁻¹ c P` up to a fiber power.
    pub fn rotation_prefixes(&self, c: &SeifertElem, target: &SeifertElem) -> Vec<SeifertElem> {
        let n = c.syl.len();
        if n != target.syl.len() {
            return vec![];
        }
        (0..n.max(1))
            .filter(|&s| (0..n).all(|k| c.syl[(k + s) % n] == target.syl[k]))
            .map(|s| SeifertElem { syl: c.syl[..s].to_vec(), fiber: 0 })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> SeifertGroup {
        SeifertGroup {
            factors: vec![
                Factor { name: "q1".into(), order: Some(2), beta: 1 },
                Factor { name: "q2".into(), order: Some(3), beta: 1 },
            ],
            fiber_name: "h".into(),
        }
    }

    fn f2xz() -> SeifertGroup {
        SeifertGroup {
            factors: vec![
                Factor { name: "x1".into(), order: None, beta: 0 },
                Factor { name: "x2".into(), order: None, beta: 0 },
            ],
            fiber_name: "h".into(),
        }
    }

    #[test]
    fn cone_relation_carries_into_fiber() {
        let g = trefoil();
        let q1 = g.gen_pow(0, 1);
        assert_eq!(g.mul(&q1, &q1), g.fiber_pow(-1));
        let q2 = g.gen_pow(1, 1);
        assert_eq!(g.pow(&q2, 3), g.fiber_pow(-1));
        assert_eq!(g.mul(&q1, &g.inv(&q1)), g.identity());
    }

    #[test]
    fn free_cancellation_in_circle_bundle() {
        let g = f2xz();
        let a = SeifertElem { syl: vec![(0, 1)], fiber: 0 };
        let b = SeifertElem { syl: vec![(0, -1)], fiber: 5 };
        assert_eq!(g.mul(&a, &b), g.fiber_pow(5));
    }

    #[test]
    fn trefoil_fiber_divisor_is_three() {
        let g = trefoil();
        let (d, root) = g.max_divisor(&g.fiber_pow(-1));
        assert_eq!(d, 3);
        assert_eq!(root, g.gen_pow(1, 1));
    }

    #[test]
    fn circle_bundle_divisor_componentwise() {
        let g = f2xz();
        let x = SeifertElem { syl: vec![(0, 2)], fiber: 4 };
        let (d, root) = g.max_divisor(&x);
        assert_eq!(d, 2);
        assert_eq!(root, SeifertElem { syl: vec![(0, 1)], fiber: 2 });
    }

    #[test]
    fn cone_generator_generates_fiber() {
        let g = trefoil();
        for i in 0..2 {
            let z = g.cone_generator(i);
            let alpha = g.factors[i].order.unwrap();
            assert_eq!(g.pow(&z, -alpha), g.fiber());
        }
    }

    #[test]
    fn shape_of_conjugated_power() {
        let g = f2xz();
        let u = SeifertElem { syl: vec![(1, 1)], fiber: 0 };
        let core = SeifertElem { syl: vec![(0, 1), (1, 1)], fiber: 0 };
        let x = g.conj(&u, &g.mul(&g.pow(&core, 3), &g.fiber_pow(2)));
        match g.shape(&x) {
            Shape::Infinite { conj, core: c, j, f } => {
                assert_eq!((j, f), (3, 2));
                let back = g.conj(&conj, &g.mul(&g.pow(&c, j), &g.fiber_pow(f)));
                assert_eq!(back, x);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
