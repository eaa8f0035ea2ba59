//! Vertex groups behind one oracle interface.

pub mod free_abelian;
pub mod kleinian;
pub mod seifert;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, Mat2};
use crate::error::{Error, Result};
pub use free_abelian::FreeAbelianGroup;
pub use kleinian::{KlElem, KlTorus, KleinianGroup, TraceClass, Word};
pub use seifert::{Factor, SeifertElem, SeifertGroup, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    FreeAbelian,
    CircleBundle,
    ConeSfs,
    Kleinian,
}

impl Kind {
    pub fn is_seifert(self) -> bool {
        matches!(self, Kind::CircleBundle | Kind::ConeSfs)
    }
}

#[derive(Debug, Clone)]
pub enum Backend {
    FreeAbelian(FreeAbelianGroup),
    Seifert(SeifertGroup),
    Kleinian(KleinianGroup),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexElem {
    Ab(Vec<i64>),
    Sf(SeifertElem),
    Kl(KlElem),
}

impl VertexElem {
    fn ab(&self) -> &[i64] {
        match self {
            VertexElem::Ab(x) => x,
            _ => panic!("backend mismatch: expected a free abelian element"),
        }
    }

    fn sf(&self) -> &SeifertElem {
        match self {
            VertexElem::Sf(x) => x,
            _ => panic!("backend mismatch: expected a Seifert element"),
        }
    }

    fn kl(&self) -> &KlElem {
        match self {
            VertexElem::Kl(x) => x,
            _ => panic!("backend mismatch: expected a matrix element"),
        }
    }
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
enum TorusData {
    Ab { u: Vec<i64>, v: Vec<i64> },
    /// `T = ⟨R, h⟩`, `R = conj·core·conj⁻¹`; `coords` columns are the basis in `(R, h)`.
    Sf { conj: SeifertElem, core: SeifertElem, coords: Mat2 },
    Kl(KlTorus),
}

/// A peripheral subgroup `Z²` with an ordered basis.
#[derive(Debug, Clone)]
pub struct Torus {
    pub basis: [VertexElem; 2],
    data: TorusData,
}

/// Centralizer of a non-trivial element inside one vertex group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexCentralizer {
    /// The whole vertex group.
    Whole,
    /// `⟨conj·core·conj⁻¹, h⟩` in a Seifert group.
    Abelian { conj: VertexElem, core: VertexElem },
    /// `conj · T_k · conj⁻¹`.
    ConjTorus { torus: usize, conj: VertexElem },
    /// `⟨root⟩`; `verified` is false when primitivity of the root is not proven.
    Cyclic { root: VertexElem, verified: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntersectionDesc {
    Trivial,
    /// The fiber subgroup `⟨c⟩`.
    Fiber,
    Whole,
    /// A proper nontrivial sublattice (free abelian vertices only).
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxDivisor {
    pub d: i64,
    pub root: VertexElem,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisionCertificate {
    InTorus([i64; 2]),
    /// `g^d = h^m` with `d <= s_v`.
    FiberPower { d: i64, m: i64 },
}

#[derive(Debug, Clone)]
pub struct VertexGroup {
    pub name: String,
    pub backend: Backend,
    pub tori: Vec<Torus>,
}

impl VertexGroup {
    pub fn new(name: impl Into<String>, backend: Backend, bases: Vec<[VertexElem; 2]>) -> Result<Self> {
        let mut vg = VertexGroup { name: name.into(), backend, tori: vec![] };
        vg.check_backend()?;
        for basis in bases {
            vg.add_torus(basis)?;
        }
        Ok(vg)
    }

    /// Declares the next peripheral subgroup.
    pub fn add_torus(&mut self, basis: [VertexElem; 2]) -> Result<usize> {
        if !basis.iter().all(|b| self.accepts(b)) {
            return Err(Error::BackendMismatch(format!("{}: torus basis from another vertex group", self.name)));
        }
        let k = self.tori.len();
        let data = self.torus_data(&basis).map_err(|e| Error::Invalid(format!("{}: torus {k}: {e}", self.name)))?;
        self.tori.push(Torus { basis, data });
        Ok(k)
    }

    fn check_backend(&self) -> Result<()> {
        let err = |m: String| Err(Error::Invalid(format!("{}: {m}", self.name)));
        match &self.backend {
            Backend::FreeAbelian(g) if g.rank() == 0 => err("free abelian group of rank 0".into()),
            Backend::Seifert(g) => {
                if g.factors.is_empty() {
                    return err("base orbifold needs at least one factor".into());
                }
                for f in &g.factors {
                    if let Some(a) = f.order {
                        if a < 2 {
                            return err(format!("cone order must be >= 2 (got {a} for {})", f.name));
                        }
                        if gcd(a, f.beta) != 1 {
                            return err(format!("cone invariants of {} must be coprime", f.name));
                        }
                    }
                }
                Ok(())
            }
            Backend::Kleinian(g) => g.check().or_else(err),
            _ => Ok(()),
        }
    }

    fn torus_data(&self, b: &[VertexElem; 2]) -> std::result::Result<TorusData, String> {
        match &self.backend {
            Backend::FreeAbelian(g) => {
                let (u, v) = (b[0].ab().to_vec(), b[1].ab().to_vec());
                if !g.span_has_rank_two(&u, &v) {
                    return Err("basis does not span a rank-2 lattice".into());
                }
                Ok(TorusData::Ab { u, v })
            }
            Backend::Seifert(g) => {
                let (x, y) = (b[0].sf(), b[1].sf());
                let pivot = if x.is_fiber_power() { y } else { x };
                let (conj, core) = match g.shape(pivot) {
                    Shape::Infinite { conj, core, .. } => (conj, core),
                    Shape::Fiber(_) => return Err("both basis elements are fiber powers".into()),
                    Shape::Elliptic { .. } => return Err("basis element has finite order in the base".into()),
                };
                let cx = g.express_in_root(&conj, &core, x).ok_or("basis elements do not commute")?;
                let cy = g.express_in_root(&conj, &core, y).ok_or("basis elements do not commute")?;
                let coords = Mat2([[cx.0, cy.0], [cx.1, cy.1]]);
                if !coords.is_unimodular() {
                    return Err("basis is not a full peripheral subgroup (a root of the boundary word or fiber is missing)".into());
                }
                Ok(TorusData::Sf { conj, core, coords })
            }
            Backend::Kleinian(g) => g.torus_data(b[0].kl(), b[1].kl()).map(TorusData::Kl),
        }
    }

    pub fn kind(&self) -> Kind {
        match &self.backend {
            Backend::FreeAbelian(_) => Kind::FreeAbelian,
            Backend::Seifert(g) if g.has_cone_points() => Kind::ConeSfs,
            Backend::Seifert(_) => Kind::CircleBundle,
            Backend::Kleinian(_) => Kind::Kleinian,
        }
    }

    pub fn accepts(&self, x: &VertexElem) -> bool {
        match (&self.backend, x) {
            (Backend::FreeAbelian(g), VertexElem::Ab(v)) => v.len() == g.rank(),
            (Backend::Seifert(g), VertexElem::Sf(s)) => s.syl.iter().all(|&(i, _)| i < g.factors.len()),
            (Backend::Kleinian(_), VertexElem::Kl(_)) => true,
            _ => false,
        }
    }

    pub fn identity(&self) -> VertexElem {
        match &self.backend {
            Backend::FreeAbelian(g) => VertexElem::Ab(g.identity()),
            Backend::Seifert(g) => VertexElem::Sf(g.identity()),
            Backend::Kleinian(g) => VertexElem::Kl(g.identity()),
        }
    }

    pub fn is_identity(&self, x: &VertexElem) -> bool {
        *x == self.identity()
    }

    pub fn mul(&self, x: &VertexElem, y: &VertexElem) -> VertexElem {
        match &self.backend {
            Backend::FreeAbelian(g) => VertexElem::Ab(g.mul(x.ab(), y.ab())),
            Backend::Seifert(g) => VertexElem::Sf(g.mul(x.sf(), y.sf())),
            Backend::Kleinian(g) => VertexElem::Kl(g.mul(x.kl(), y.kl())),
        }
    }

    pub fn inv(&self, x: &VertexElem) -> VertexElem {
        match &self.backend {
            Backend::FreeAbelian(g) => VertexElem::Ab(g.inv(x.ab())),
            Backend::Seifert(g) => VertexElem::Sf(g.inv(x.sf())),
            Backend::Kleinian(g) => VertexElem::Kl(g.inv(x.kl())),
        }
    }

    pub fn pow(&self, x: &VertexElem, n: i64) -> VertexElem {
        match &self.backend {
            Backend::FreeAbelian(g) => VertexElem::Ab(g.pow(x.ab(), n)),
            Backend::Seifert(g) => VertexElem::Sf(g.pow(x.sf(), n)),
            Backend::Kleinian(g) => VertexElem::Kl(g.pow(x.kl(), n)),
        }
    }

    pub fn mul3(&self, x: &VertexElem, y: &VertexElem, z: &VertexElem) -> VertexElem {
        self.mul(&self.mul(x, y), z)
    }

    /// `a x a⁻¹`.
    pub fn conj(&self, a: &VertexElem, x: &VertexElem) -> VertexElem {
        self.mul3(a, x, &self.inv(a))
    }

    pub fn commute(&self, x: &VertexElem, y: &VertexElem) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// Generator names, in declaration order (the Seifert fiber comes last).
    pub fn generator_names(&self) -> Vec<String> {
        match &self.backend {
            Backend::FreeAbelian(g) => g.gens.clone(),
            Backend::Seifert(g) => {
                let mut v: Vec<String> = g.factors.iter().map(|f| f.name.clone()).collect();
                v.push(g.fiber_name.clone());
                v
            }
            Backend::Kleinian(g) => g.gens.iter().map(|(n, _)| n.clone()).collect(),
        }
    }

    pub fn gen_pow(&self, i: usize, e: i64) -> VertexElem {
        match &self.backend {
            Backend::FreeAbelian(g) => {
                let mut v = g.identity();
                v[i] = e;
                VertexElem::Ab(v)
            }
            Backend::Seifert(g) => VertexElem::Sf(g.gen_pow(i, e)),
            Backend::Kleinian(g) => VertexElem::Kl(g.gen_pow(i, e)),
        }
    }

    pub fn generators(&self) -> Vec<VertexElem> {
        (0..self.generator_names().len()).map(|i| self.gen_pow(i, 1)).collect()
    }

    /// Normal-form length used by the enumeration complexity measure.
    pub fn complexity(&self, x: &VertexElem) -> usize {
        match (&self.backend, x) {
            (Backend::FreeAbelian(_), VertexElem::Ab(v)) => v.iter().map(|c| c.unsigned_abs() as usize).sum(),
            (Backend::Seifert(g), VertexElem::Sf(s)) => g.complexity(s),
            (Backend::Kleinian(_), VertexElem::Kl(k)) => kleinian::word_len(&k.word),
            _ => panic!("backend mismatch"),
        }
    }

    /// Renders `x` as a generator word, `1` for the identity.
    pub fn format(&self, x: &VertexElem) -> String {
        let names = self.generator_names();
        let mut syl: Vec<(usize, i64)> = vec![];
        match x {
            VertexElem::Ab(v) => syl.extend(v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c))),
            VertexElem::Sf(s) => {
                syl.extend(s.syl.iter().copied());
                if s.fiber != 0 {
                    syl.push((names.len() - 1, s.fiber));
                }
            }
            VertexElem::Kl(k) => syl.extend(k.word.iter().copied()),
        }
        if syl.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        for (n, (i, e)) in syl.into_iter().enumerate() {
            if n > 0 {
                out.push(' ');
            }
            out.push_str(&names[i]);
            if e != 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }

    pub fn torus_elem(&self, k: usize, c: [i64; 2]) -> VertexElem {
        let [u, v] = &self.tori[k].basis;
        self.mul(&self.pow(u, c[0]), &self.pow(v, c[1]))
    }

    /// Coordinates `(m, n)` with `g = u^m v^n` in torus `k`.
    pub fn membership(&self, k: usize, g: &VertexElem) -> Option<[i64; 2]> {
        match (&self.backend, &self.tori[k].data) {
            (Backend::FreeAbelian(grp), TorusData::Ab { u, v }) => grp.solve_in_span(u, v, g.ab()),
            (Backend::Seifert(grp), TorusData::Sf { conj, core, coords }) => {
                let (a, f) = grp.express_in_root(conj, core, g.sf())?;
                coords.solve([a, f])
            }
            (Backend::Kleinian(grp), TorusData::Kl(t)) => grp.membership(t, g.kl()),
            _ => unreachable!("torus data matches backend"),
        }
    }

    /// Canonical representative `r` of the coset `g·T_k`, with `r⁻¹ g = u^m v^n`.
    pub fn coset_rep(&self, k: usize, g: &VertexElem) -> (VertexElem, [i64; 2]) {
        let rep = match (&self.backend, &self.tori[k].data) {
            (Backend::FreeAbelian(grp), TorusData::Ab { u, v }) => VertexElem::Ab(grp.coset_rep(u, v, g.ab())),
            (Backend::Seifert(grp), TorusData::Sf { conj, core, .. }) => {
                let x = g.sf();
                let r = grp.conj(conj, core);
                let cost = |y: &SeifertElem| grp.base_len(y);
                let window = (2 * cost(x) + 2 * cost(conj)) / cost(core) + 1;
                let mut best: Option<(i64, Vec<(usize, i64)>)> = None;
                let mut y = grp.mul(x, &grp.pow(&r, -window));
                for _ in -window..=window {
                    let key = (cost(&y), y.syl.clone());
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                    y = grp.mul(&y, &r);
                }
                VertexElem::Sf(SeifertElem { syl: best.expect("nonempty window").1, fiber: 0 })
            }
            (Backend::Kleinian(grp), TorusData::Kl(t)) => {
                let (r, c) = grp.coset_rep(t, g.kl());
                return (VertexElem::Kl(r), c);
            }
            _ => unreachable!("torus data matches backend"),
        };
        let t = self.mul(&self.inv(&rep), g);
        let c = self.membership(k, &t).expect("coset representative differs by a torus element");
        (rep, c)
    }

    /// Finds `a` with `a⁻¹ g a ∈ T_k`. `Ok(None)` is a proof that none exists.
    pub fn conj_into_torus(&self, k: usize, g: &VertexElem, budget: usize) -> Result<Option<VertexElem>> {
        if self.membership(k, g).is_some() {
            return Ok(Some(self.identity()));
        }
        match (&self.backend, &self.tori[k].data) {
            (Backend::FreeAbelian(_), _) => Ok(None),
            (Backend::Seifert(grp), TorusData::Sf { conj: uk, core: dk, .. }) => {
                let (u, c, _) = match grp.shape(g.sf()) {
                    Shape::Fiber(_) => return Ok(Some(self.identity())),
                    Shape::Elliptic { .. } => return Ok(None),
                    Shape::Infinite { conj, core, j, .. } => (conj, core, j),
                };
                for target in [dk.clone(), grp.inv(dk)] {
                    let target = SeifertElem { syl: target.syl, fiber: 0 };
                    for p in grp.rotation_prefixes(&c, &target) {
                        let a = grp.mul(&grp.mul(&u, &p), &grp.inv(uk));
                        let a = VertexElem::Sf(a);
                        let t = self.mul3(&self.inv(&a), g, &a);
                        if self.membership(k, &t).is_some() {
                            return Ok(Some(a));
                        }
                    }
                }
                Ok(None)
            }
            (Backend::Kleinian(grp), TorusData::Kl(t)) => match grp.conj_into_torus(t, g.kl(), budget) {
                Ok(o) => Ok(o.map(VertexElem::Kl)),
                // Distinct declared tori are distinct cusps: a conjugator into another torus
                // rules this one out.
                Err(msg) => {
                    for (j, other) in self.tori.iter().enumerate() {
                        let TorusData::Kl(t2) = &other.data else { unreachable!() };
                        if j != k && matches!(grp.conj_into_torus(t2, g.kl(), budget), Ok(Some(_))) {
                            return Ok(None);
                        }
                    }
                    Err(Error::SearchExhausted(msg))
                }
            },
            _ => unreachable!("torus data matches backend"),
        }
    }

    /// The regular fiber `c_v` of a Seifert vertex.
    pub fn fiber(&self) -> Option<VertexElem> {
        match &self.backend {
            Backend::Seifert(g) => Some(VertexElem::Sf(g.fiber())),
            _ => None,
        }
    }

    /// `Some(m)` when `x = c_v^m`.
    pub fn fiber_exponent(&self, x: &VertexElem) -> Option<i64> {
        match (&self.backend, x) {
            (Backend::Seifert(_), VertexElem::Sf(s)) if s.syl.is_empty() => Some(s.fiber),
            _ => None,
        }
    }

    /// `s_v`: the largest singular fiber order (1 when there is none or the vertex is not Seifert).
    pub fn singular_order(&self) -> i64 {
        match &self.backend {
            Backend::Seifert(g) => g.max_singular_order(),
            _ => 1,
        }
    }

    pub fn trace_classify(&self, x: &VertexElem) -> Option<TraceClass> {
        match &self.backend {
            Backend::Kleinian(g) => Some(g.trace_classify(x.kl())),
            _ => None,
        }
    }

    pub fn max_divisor(&self, x: &VertexElem, budget: usize) -> Result<MaxDivisor> {
        if self.is_identity(x) {
            return Err(Error::IdentityElement);
        }
        match &self.backend {
            Backend::FreeAbelian(g) => {
                let (d, root) = g.max_divisor(x.ab());
                Ok(MaxDivisor { d, root: VertexElem::Ab(root), verified: true })
            }
            Backend::Seifert(g) => {
                let (d, root) = g.max_divisor(x.sf());
                Ok(MaxDivisor { d, root: VertexElem::Sf(root), verified: true })
            }
            Backend::Kleinian(g) => match g.trace_classify(x.kl()) {
                TraceClass::Parabolic => {
                    for k in 0..self.tori.len() {
                        if let Some(a) = self.conj_into_torus(k, x, budget)? {
                            let t = self.mul3(&self.inv(&a), x, &a);
                            let c = self.membership(k, &t).expect("conjugated into torus");
                            let d = gcd(c[0], c[1]);
                            let root = self.conj(&a, &self.torus_elem(k, [c[0] / d, c[1] / d]));
                            return Ok(MaxDivisor { d, root, verified: true });
                        }
                    }
                    Err(Error::SearchExhausted("parabolic element is not conjugate into a declared torus".into()))
                }
                TraceClass::Loxodromic => {
                    let (d, root, verified) = g.loxodromic_root(x.kl(), budget);
                    Ok(MaxDivisor { d, root: VertexElem::Kl(root), verified })
                }
                c => Err(Error::Invalid(format!("{}: element of class {c:?}", self.name))),
            },
        }
    }

    pub fn centralizer(&self, x: &VertexElem, budget: usize) -> Result<VertexCentralizer> {
        if self.is_identity(x) {
            return Err(Error::IdentityElement);
        }
        match &self.backend {
            Backend::FreeAbelian(_) => Ok(VertexCentralizer::Whole),
            Backend::Seifert(g) => Ok(match g.shape(x.sf()) {
                Shape::Fiber(_) => VertexCentralizer::Whole,
                Shape::Elliptic { conj, factor, .. } => VertexCentralizer::Abelian {
                    conj: VertexElem::Sf(conj),
                    core: VertexElem::Sf(g.gen_pow(factor, 1)),
                },
                Shape::Infinite { conj, core, .. } => {
                    VertexCentralizer::Abelian { conj: VertexElem::Sf(conj), core: VertexElem::Sf(core) }
                }
            }),
            Backend::Kleinian(g) => match g.trace_classify(x.kl()) {
                TraceClass::Parabolic => {
                    for k in 0..self.tori.len() {
                        if let Some(conj) = self.conj_into_torus(k, x, budget)? {
                            return Ok(VertexCentralizer::ConjTorus { torus: k, conj });
                        }
                    }
                    Err(Error::SearchExhausted("parabolic element is not conjugate into a declared torus".into()))
                }
                _ => {
                    let m = self.max_divisor(x, budget)?;
                    Ok(VertexCentralizer::Cyclic { root: m.root, verified: m.verified })
                }
            },
        }
    }

    pub fn centralizer_contains(&self, c: &VertexCentralizer, x: &VertexElem) -> bool {
        match c {
            VertexCentralizer::Whole => true,
            VertexCentralizer::Abelian { conj, core } => match &self.backend {
                Backend::Seifert(g) => g.express_in_root(conj.sf(), core.sf(), x.sf()).is_some(),
                _ => false,
            },
            VertexCentralizer::ConjTorus { torus, conj } => {
                self.membership(*torus, &self.mul3(&self.inv(conj), x, conj)).is_some()
            }
            VertexCentralizer::Cyclic { root, .. } => self.cyclic_exponent(root, x).is_some(),
        }
    }

    /// `Some(n)` with `x = rootⁿ`.
    pub fn cyclic_exponent(&self, root: &VertexElem, x: &VertexElem) -> Option<i64> {
        match &self.backend {
            Backend::Kleinian(g) => g.exponent_in(root.kl(), x.kl()),
            _ => (0..=64).flat_map(|n| [n, -n]).find(|&n| self.pow(root, n) == *x),
        }
    }

    /// Generators of the centralizer description.
    pub fn centralizer_generators(&self, c: &VertexCentralizer) -> Vec<VertexElem> {
        match c {
            VertexCentralizer::Whole => self.generators(),
            VertexCentralizer::Abelian { conj, core } => {
                vec![self.conj(conj, core), self.fiber().expect("Seifert vertex")]
            }
            VertexCentralizer::ConjTorus { torus, conj } => {
                self.tori[*torus].basis.iter().map(|b| self.conj(conj, b)).collect()
            }
            VertexCentralizer::Cyclic { root, .. } => vec![root.clone()],
        }
    }

    /// Describes `T_{k1} ∩ g T_{k2} g⁻¹`.
    pub fn torus_intersection(&self, k1: usize, g: &VertexElem, k2: usize) -> Result<IntersectionDesc> {
        let conj_basis: Vec<VertexElem> = self.tori[k2].basis.iter().map(|b| self.conj(g, b)).collect();
        let inside = conj_basis.iter().filter(|b| self.membership(k1, b).is_some()).count();
        match &self.backend {
            Backend::FreeAbelian(_) => Ok(match inside {
                2 if self.tori[k1].basis.iter().all(|b| self.membership(k2, b).is_some()) => IntersectionDesc::Whole,
                0 if self.tori[k1].basis.iter().all(|b| self.membership(k2, b).is_none()) => IntersectionDesc::Trivial,
                _ => IntersectionDesc::Partial,
            }),
            Backend::Seifert(grp) => {
                let TorusData::Sf { conj, core, .. } = &self.tori[k2].data else { unreachable!() };
                let r = VertexElem::Sf(grp.conj(conj, core));
                let t = self.conj(g, &r);
                let same = match &self.tori[k1].data {
                    TorusData::Sf { conj: c1, core: d1, .. } => {
                        matches!(grp.express_in_root(c1, d1, t.sf()), Some((a, _)) if a.abs() == 1)
                    }
                    _ => unreachable!(),
                };
                Ok(if same { IntersectionDesc::Whole } else { IntersectionDesc::Fiber })
            }
            Backend::Kleinian(_) => {
                let u2 = self.conj(g, &self.tori[k2].basis[0]);
                let u1 = &self.tori[k1].basis[0];
                if !self.commute(u1, &u2) {
                    Ok(IntersectionDesc::Trivial)
                } else if inside == 2 {
                    Ok(IntersectionDesc::Whole)
                } else {
                    Err(Error::Invalid(format!("{}: peripheral subgroups are not malnormal", self.name)))
                }
            }
        }
    }

    /// For `g^n ∈ T_k`: either `g ∈ T_k`, or `g^d` is a fiber power with `d <= s_v`.
    pub fn division_closed_check(&self, k: usize, g: &VertexElem, n: i64) -> Result<DivisionCertificate> {
        if n == 0 || self.membership(k, &self.pow(g, n)).is_none() {
            return Err(Error::Precondition("g^n is not in the torus".into()));
        }
        if let Some(c) = self.membership(k, g) {
            return Ok(DivisionCertificate::InTorus(c));
        }
        for d in 1..=self.singular_order() {
            if let Some(m) = self.fiber_exponent(&self.pow(g, d)) {
                return Ok(DivisionCertificate::FiberPower { d, m });
            }
        }
        Err(Error::Invalid(format!("{}: torus is not division closed", self.name)))
    }
}
