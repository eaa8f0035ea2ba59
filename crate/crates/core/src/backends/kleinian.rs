//! Finitely generated subgroups of `SL(2, Z[τ])`, assumed discrete, faithful and torsion-free.
//!
//! Equality is exact matrix equality. Each element also carries the freely reduced generator
//! word that produced it; the word is informational and ignored by comparisons.

use std::collections::HashSet;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::arith::gcd;
use crate::quadint::{QMat, QuadInt, QuadRat, QuadRing, Q};

/// Generator word: `(generator index, exponent)` syllables.
pub type Word = Vec<(usize, i64)>;

/// Radius of the cached word ball used for conjugator and root searches.
pub const BALL_RADIUS: usize = 7;

#[derive(Debug, Clone)]
pub struct KlElem {
    pub mat: QMat,
    pub word: Word,
}

impl PartialEq for KlElem {
    fn eq(&self, o: &Self) -> bool {
        self.mat == o.mat
    }
}

impl Eq for KlElem {}

impl Hash for KlElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state)
    }
}

impl PartialOrd for KlElem {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for KlElem {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.mat.cmp(&o.mat)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TraceClass {
    Identityish,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// Precomputed lattice data for a peripheral torus `⟨U, V⟩`.
///
/// `U = ε_U (I + N)` with `N` nilpotent, `V = ε_V (I + τ_V N)`, so
/// `U^m V^n = ±(I + (m + n τ_V) N)`.
#[derive(Debug, Clone)]
pub struct KlTorus {
    pub u: KlElem,
    pub v: KlElem,
    nil: QMat,
    pivot: usize,
    tau_v: QuadRat,
    fixed: (QuadInt, QuadInt),
}

#[derive(Debug, Clone)]
pub struct KleinianGroup {
    pub ring: QuadRing,
    pub ring_sym: String,
    pub gens: Vec<(String, QMat)>,
    pub relations: Vec<(Word, Word)>,
    ball: OnceLock<Vec<KlElem>>,
}

fn entry(m: &QMat, k: usize) -> QuadInt {
    m.0[k / 2][k % 2]
}

fn push_syllable(w: &mut Word, (i, e): (usize, i64)) {
    if e == 0 {
        return;
    }
    match w.last_mut() {
        Some((j, f)) if *j == i => {
            *f += e;
            if *f == 0 {
                w.pop();
            }
        }
        _ => w.push((i, e)),
    }
}

pub fn word_len(w: &Word) -> usize {
    w.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
}

impl KleinianGroup {
    pub fn new(ring: QuadRing, ring_sym: impl Into<String>, gens: Vec<(String, QMat)>, relations: Vec<(Word, Word)>) -> Self {
        KleinianGroup { ring, ring_sym: ring_sym.into(), gens, relations, ball: OnceLock::new() }
    }

    pub fn identity(&self) -> KlElem {
        KlElem { mat: QMat::IDENTITY, word: vec![] }
    }

    pub fn gen_pow(&self, i: usize, e: i64) -> KlElem {
        let mut word = vec![];
        push_syllable(&mut word, (i, e));
        KlElem { mat: self.ring.mat_pow(&self.gens[i].1, e), word }
    }

    pub fn eval(&self, w: &Word) -> KlElem {
        w.iter().fold(self.identity(), |acc, &(i, e)| self.mul(&acc, &self.gen_pow(i, e)))
    }

    pub fn mul(&self, x: &KlElem, y: &KlElem) -> KlElem {
        let mut word = x.word.clone();
        for &s in &y.word {
            push_syllable(&mut word, s);
        }
        KlElem { mat: self.ring.mat_mul(&x.mat, &y.mat), word }
    }

    pub fn inv(&self, x: &KlElem) -> KlElem {
        KlElem { mat: x.mat.inv_unimodular(), word: x.word.iter().rev().map(|&(i, e)| (i, -e)).collect() }
    }

    pub fn pow(&self, x: &KlElem, n: i64) -> KlElem {
        let base = if n < 0 { self.inv(x) } else { x.clone() };
        let mut word = vec![];
        for _ in 0..n.unsigned_abs() {
            for &s in &base.word {
                push_syllable(&mut word, s);
            }
        }
        KlElem { mat: self.ring.mat_pow(&x.mat, n), word }
    }

    pub fn conj(&self, a: &KlElem, x: &KlElem) -> KlElem {
        self.mul(&self.mul(a, x), &self.inv(a))
    }

    /// Checks determinants and the declared relations exactly.
    pub fn check(&self) -> Result<(), String> {
        for (name, m) in &self.gens {
            if self.ring.det(m) != QuadInt::ONE {
                return Err(format!("generator {name} does not have determinant 1"));
            }
        }
        for (k, (l, r)) in self.relations.iter().enumerate() {
            if self.eval(l).mat != self.eval(r).mat {
                return Err(format!("relation {} does not hold", k + 1));
            }
        }
        Ok(())
    }

    pub fn trace_classify(&self, x: &KlElem) -> TraceClass {
        if x.mat.is_pm_identity() {
            return TraceClass::Identityish;
        }
        let t = x.mat.trace();
        if t == QuadInt::int(2) || t == QuadInt::int(-2) {
            return TraceClass::Parabolic;
        }
        if self.ring.is_real(t) && self.ring.embed(t).re.abs() < 2.0 {
            return TraceClass::Elliptic;
        }
        TraceClass::Loxodromic
    }

    /// `|λ| >= 1` for the larger eigenvalue.
    pub fn eigen_abs(&self, x: &KlElem) -> f64 {
        eigen_abs_of_trace(self.ring.embed(x.mat.trace()))
    }

    pub fn torus_data(&self, u: &KlElem, v: &KlElem) -> Result<KlTorus, String> {
        if self.trace_classify(u) != TraceClass::Parabolic || self.trace_classify(v) != TraceClass::Parabolic {
            return Err("peripheral basis elements must be parabolic".into());
        }
        if self.mul(u, v) != self.mul(v, u) {
            return Err("peripheral basis elements do not commute".into());
        }
        let eps = |m: &QMat| if m.trace() == QuadInt::int(2) { QMat::IDENTITY } else { QMat::IDENTITY.neg() };
        let nil = self.ring.mat_mul(&eps(&u.mat), &u.mat).sub(&QMat::IDENTITY);
        let pivot = (0..4).find(|&k| !entry(&nil, k).is_zero()).expect("parabolic is not ±I");
        let nv = self.ring.mat_mul(&eps(&v.mat), &v.mat).sub(&QMat::IDENTITY);
        let tau_v = self
            .ring
            .rdiv(entry(&nv, pivot).to_rat(), entry(&nil, pivot).to_rat())
            .expect("nonzero pivot");
        for k in 0..4 {
            let lhs = entry(&nv, k).to_rat();
            let rhs = self.ring.rmul(tau_v, entry(&nil, k).to_rat());
            if lhs != rhs {
                return Err("peripheral basis elements have different fixed points".into());
            }
        }
        if tau_v.b == Q::from_integer(0) {
            return Err("peripheral basis does not span a rank-2 lattice".into());
        }
        let m = &nil.0;
        let fixed = if !m[0][1].is_zero() || !m[0][0].is_zero() { (m[0][1], -m[0][0]) } else { (m[1][1], -m[1][0]) };
        Ok(KlTorus { u: u.clone(), v: v.clone(), nil, pivot, tau_v, fixed })
    }

    /// Lattice coordinates `(y1, y2)` of `s = y1 + y2 τ_V`.
    fn lattice_coords(&self, t: &KlTorus, s: QuadRat) -> (Q, Q) {
        let y2 = s.b / t.tau_v.b;
        (s.a - y2 * t.tau_v.a, y2)
    }

    pub fn torus_elem(&self, t: &KlTorus, c: [i64; 2]) -> KlElem {
        self.mul(&self.pow(&t.u, c[0]), &self.pow(&t.v, c[1]))
    }

    pub fn membership(&self, t: &KlTorus, g: &KlElem) -> Option<[i64; 2]> {
        if g.mat == QMat::IDENTITY {
            return Some([0, 0]);
        }
        if self.trace_classify(g) != TraceClass::Parabolic {
            return None;
        }
        let eg = if g.mat.trace() == QuadInt::int(2) { g.mat } else { g.mat.neg() };
        let d = eg.sub(&QMat::IDENTITY);
        let s = self.ring.rdiv(entry(&d, t.pivot).to_rat(), entry(&t.nil, t.pivot).to_rat())?;
        for k in 0..4 {
            if entry(&d, k).to_rat() != self.ring.rmul(s, entry(&t.nil, k).to_rat()) {
                return None;
            }
        }
        let (y1, y2) = self.lattice_coords(t, s);
        if !y1.is_integer() || !y2.is_integer() {
            return None;
        }
        let c = [*y1.numer() as i64, *y2.numer() as i64];
        (self.torus_elem(t, c).mat == g.mat).then_some(c)
    }

    /// Canonical representative of the coset `g·T` and the coordinates of `rep⁻¹ g` in `T`.
    pub fn coset_rep(&self, t: &KlTorus, g: &KlElem) -> (KlElem, [i64; 2]) {
        let a = self.ring.mat_mul(&g.mat, &t.nil);
        let k = (0..4).find(|&k| !entry(&a, k).is_zero()).expect("g N is nonzero");
        let s = self.ring.rdiv(entry(&g.mat, k).to_rat(), entry(&a, k).to_rat()).expect("nonzero");
        let s = QuadRat { a: -s.a, b: -s.b };
        let (y1, y2) = self.lattice_coords(t, s);
        let half = Q::new(1, 2);
        let m = (y1 + half).floor().to_integer() as i64;
        let n = (y2 + half).floor().to_integer() as i64;
        (self.mul(g, &self.torus_elem(t, [m, n])), [-m, -n])
    }

    fn fixes(&self, a: &QMat, p: (QuadInt, QuadInt), q: (QuadInt, QuadInt)) -> bool {
        let r = &self.ring;
        let x = r.mul(a.0[0][0], p.0) + r.mul(a.0[0][1], p.1);
        let y = r.mul(a.0[1][0], p.0) + r.mul(a.0[1][1], p.1);
        r.mul(x, q.1) == r.mul(y, q.0)
    }

    /// All distinct group elements of word length at most `BALL_RADIUS`, shortest first.
    pub fn ball(&self) -> &[KlElem] {
        self.ball.get_or_init(|| {
            let mut seen: HashSet<QMat> = HashSet::new();
            let mut out = vec![self.identity()];
            seen.insert(QMat::IDENTITY);
            let mut frontier = vec![self.identity()];
            for _ in 0..BALL_RADIUS {
                let mut next = vec![];
                for x in &frontier {
                    for i in 0..self.gens.len() {
                        for e in [1, -1] {
                            let y = self.mul(x, &self.gen_pow(i, e));
                            if seen.insert(y.mat) {
                                next.push(y);
                            }
                        }
                    }
                }
                out.extend(next.iter().cloned());
                frontier = next;
            }
            out
        })
    }

    fn ball_within(&self, budget: usize) -> impl Iterator<Item = &KlElem> {
        self.ball().iter().take_while(move |a| word_len(&a.word) <= budget)
    }

    /// Finds `a` with `a⁻¹ g a ∈ T`, searching conjugators up to word length `budget`.
    /// `Ok(None)` means `g` is provably not conjugate into `T` (not parabolic).
    pub fn conj_into_torus(&self, t: &KlTorus, g: &KlElem, budget: usize) -> Result<Option<KlElem>, String> {
        if self.membership(t, g).is_some() {
            return Ok(Some(self.identity()));
        }
        if self.trace_classify(g) != TraceClass::Parabolic {
            return Ok(None);
        }
        let eg = if g.mat.trace() == QuadInt::int(2) { g.mat } else { g.mat.neg() };
        let d = eg.sub(&QMat::IDENTITY);
        let m = &d.0;
        let pg = if !m[0][1].is_zero() || !m[0][0].is_zero() { (m[0][1], -m[0][0]) } else { (m[1][1], -m[1][0]) };
        for a in self.ball_within(budget) {
            if self.fixes(&a.mat, t.fixed, pg) {
                let x = self.mul(&self.mul(&self.inv(a), g), a);
                if self.membership(t, &x).is_some() {
                    return Ok(Some(a.clone()));
                }
            }
        }
        Err(format!("no conjugator into the peripheral torus within word length {budget}"))
    }

    /// Smallest `|λ| > 1` over loxodromic traces in a box of `Z[τ]`; a lower bound for the
    /// eigenvalue modulus of every loxodromic element.
    pub fn min_loxodromic_modulus(&self) -> f64 {
        let mut best = f64::INFINITY;
        for a in -10..=10 {
            for b in -10..=10 {
                let t = QuadInt::new(a, b);
                if self.ring.is_real(t) && self.ring.embed(t).re.abs() <= 2.0 {
                    continue;
                }
                best = best.min(eigen_abs_of_trace(self.ring.embed(t)));
            }
        }
        best
    }

    /// Whether some `y` in the group could satisfy `y^k = r` for `k >= 2`: a `k`-th root of an
    /// eigenvalue of `r` must give an integral trace.
    fn root_trace_survives(&self, r: &KlElem) -> bool {
        let t = self.ring.embed(r.mat.trace());
        let lam = (t + (t * t - 4.0).sqrt()) / 2.0;
        let mu0 = self.min_loxodromic_modulus();
        let kmax = (lam.norm().ln().abs() / mu0.ln()).floor() as i64;
        for k in 2..=kmax {
            for j in 0..k {
                let root = Complex64::from_polar(
                    lam.norm().powf(1.0 / k as f64),
                    (lam.arg() + 2.0 * std::f64::consts::PI * j as f64) / k as f64,
                );
                let tr = root + 1.0 / root;
                if self.is_near_integral(tr) {
                    return true;
                }
            }
        }
        false
    }

    fn is_near_integral(&self, z: Complex64) -> bool {
        let tau = self.ring.tau();
        let (b, a) = if tau.im.abs() > 1e-9 {
            let b = z.im / tau.im;
            (b, z.re - b * tau.re)
        } else {
            return (z.re - z.re.round()).abs() < 1e-6 && z.im.abs() < 1e-6;
        };
        (a - a.round()).abs() < 1e-6 && (b - b.round()).abs() < 1e-6
    }

    /// `Some(n)` with `x = r^n` when `x` lies in `⟨r⟩` (`r` loxodromic).
    pub fn exponent_in(&self, r: &KlElem, x: &KlElem) -> Option<i64> {
        if x.mat == QMat::IDENTITY {
            return Some(0);
        }
        let ratio = self.eigen_abs(x).ln() / self.eigen_abs(r).ln();
        let n = ratio.round() as i64;
        if n == 0 {
            return None;
        }
        [n, -n].into_iter().find(|&k| self.pow(r, k).mat == x.mat)
    }

    /// Maximal root of a loxodromic element: `(d, root, primitivity verified)`.
    pub fn loxodromic_root(&self, g: &KlElem, budget: usize) -> (i64, KlElem, bool) {
        let mut best = (1, g.clone());
        let lg = self.eigen_abs(g);
        for y in self.ball_within(budget) {
            if self.trace_classify(y) != TraceClass::Loxodromic || self.eigen_abs(y) >= self.eigen_abs(&best.1) - 1e-12 {
                continue;
            }
            if self.mul(y, g) != self.mul(g, y) {
                continue;
            }
            let n = (lg.ln() / self.eigen_abs(y).ln()).round() as i64;
            if n < 2 {
                continue;
            }
            for k in [n, -n] {
                if self.pow(y, k).mat == g.mat {
                    best = (n, if k > 0 { y.clone() } else { self.inv(y) });
                    break;
                }
            }
        }
        let verified = !self.root_trace_survives(&best.1);
        (best.0, best.1, verified)
    }

    /// Parabolic divisor in a torus: `d = gcd(m, n)`.
    pub fn lattice_divisor(c: [i64; 2]) -> i64 {
        gcd(c[0], c[1])
    }
}

pub fn eigen_abs_of_trace(t: Complex64) -> f64 {
    let s = (t * t - 4.0).sqrt();
    ((t + s) / 2.0).norm().max(((t - s) / 2.0).norm())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn fig8() -> KleinianGroup {
        let r = QuadRing::EISENSTEIN;
        let x = QMat::from_ints([[1, 1], [0, 1]]);
        let y = QMat([[QuadInt::ONE, QuadInt::ZERO], [QuadInt::new(0, -1), QuadInt::ONE]]);
        // W x = y W with W = x y⁻¹ x⁻¹ y.
        let w: Word = vec![(0, 1), (1, -1), (0, -1), (1, 1)];
        let mut lhs = w.clone();
        lhs.push((0, 1));
        let mut rhs = vec![(1, 1)];
        rhs.extend(w);
        KleinianGroup::new(r, "w", vec![("x".into(), x), ("y".into(), y)], vec![(lhs, rhs)])
    }

    fn longitude(g: &KleinianGroup) -> KlElem {
        g.eval(&vec![(1, 1), (0, -1), (1, -1), (0, 2), (1, -1), (0, -1), (1, 1)])
    }

    #[test]
    fn figure_eight_relation_holds() {
        assert_eq!(fig8().check(), Ok(()));
    }

    #[test]
    fn classification_examples() {
        let g = fig8();
        let r = g.ring;
        let mk = |m| KlElem { mat: QMat::from_ints(m), word: vec![] };
        assert_eq!(g.trace_classify(&mk([[1, 1], [0, 1]])), TraceClass::Parabolic);
        assert_eq!(g.trace_classify(&mk([[2, 1], [1, 1]])), TraceClass::Loxodromic);
        assert_eq!(g.trace_classify(&mk([[1, 0], [0, 1]])), TraceClass::Identityish);
        assert_eq!(r.det(&QMat::from_ints([[2, 1], [1, 1]])), QuadInt::ONE);
    }

    #[test]
    fn longitude_membership_and_coset() {
        let g = fig8();
        let mu = g.gen_pow(0, 1);
        let lam = longitude(&g);
        let t = g.torus_data(&mu, &lam).unwrap();
        let x = g.mul(&g.pow(&mu, 2), &lam);
        assert_eq!(g.membership(&t, &x), Some([2, 1]));
        assert_eq!(g.membership(&t, &g.gen_pow(1, 1)), None);
        let y = g.gen_pow(1, 1);
        let (rep, c) = g.coset_rep(&t, &y);
        let (rep2, _) = g.coset_rep(&t, &g.mul(&y, &x));
        assert_eq!(rep, rep2);
        assert_eq!(g.mul(&rep, &g.torus_elem(&t, c)), y);
    }

    #[test]
    fn parabolic_conjugates_found() {
        let g = fig8();
        let t = g.torus_data(&g.gen_pow(0, 1), &longitude(&g)).unwrap();
        let y = g.gen_pow(1, 1);
        let a = g.conj_into_torus(&t, &y, 4).unwrap().unwrap();
        let inside = g.mul(&g.mul(&g.inv(&a), &y), &a);
        assert!(g.membership(&t, &inside).is_some());
    }

    #[test]
    fn loxodromic_root_recovered() {
        let g = fig8();
        let z = g.eval(&vec![(0, 1), (1, 1)]);
        assert_eq!(g.trace_classify(&z), TraceClass::Loxodromic);
        let (d, root, verified) = g.loxodromic_root(&g.pow(&z, 3), 4);
        assert_eq!(d, 3);
        assert_eq!(root, z);
        assert!(verified);
    }
}
