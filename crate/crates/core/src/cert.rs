//! Machine-checkable certificates and an independent replay verifier.
//!
//! Claims are stated in the text format (paths as `@V: g0 ; e ; g1 …`), so a certificate can be
//! checked against a freshly parsed manifold. Replay only multiplies vertex elements, applies
//! edge maps and asks the backends for torus membership.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::parse_path;
use crate::engine::Budget;
use crate::gog::GraphOfGroups;
use crate::path::{PathWord, ReductionStep};
use crate::VertexElem;

pub const FORMAT_VERSION: u32 = 1;

/// One rewrite `e φ_e(h) ē → φ_ē(h)` at edge position `index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub index: usize,
    pub witness: [i64; 2],
    /// The merged vertex element, as a word.
    pub replacement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum Claim {
    /// `input` rewrites to `output` by `steps`.
    Reduction { input: String, steps: Vec<StepDoc>, output: String },
    /// No rewrite applies to `path`.
    Reduced { path: String },
    /// `lhs·rhs⁻¹` rewrites to the identity.
    Equal { lhs: String, rhs: String, steps: Vec<StepDoc> },
    /// `lhs·rhs⁻¹` rewrites to `residue`, which is reduced and nontrivial.
    NotEqual { lhs: String, rhs: String, steps: Vec<StepDoc>, residue: String },
    /// `x·y·x⁻¹·y⁻¹` rewrites to the identity.
    Commute { x: String, y: String, steps: Vec<StepDoc> },
    /// `base^exponent · target⁻¹` rewrites to the identity.
    Power { base: String, exponent: i64, target: String, steps: Vec<StepDoc> },
    /// `conj⁻¹·x·conj` rewrites to `result`.
    Conjugate { conj: String, x: String, steps: Vec<StepDoc>, result: String },
    /// `elem = u^c₀ v^c₁` for the basis of torus `torus` of `vertex`.
    InTorus { vertex: String, torus: usize, elem: String, coords: [i64; 2] },
    /// `elem` is not in torus `torus` of `vertex`.
    NotInTorus { vertex: String, torus: usize, elem: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub format_version: u32,
    pub query: String,
    pub answer: serde_json::Value,
    pub claims: Vec<Claim>,
    pub budget: Budget,
    /// False when part of the answer is only a verified bound (see `notes`).
    pub complete: bool,
    pub notes: Vec<String>,
}

impl CertificateDoc {
    pub fn new(query: impl Into<String>, answer: serde_json::Value, budget: Budget) -> Self {
        CertificateDoc {
            format_version: FORMAT_VERSION,
            query: query.into(),
            answer,
            claims: vec![],
            budget,
            complete: true,
            notes: vec![],
        }
    }

    pub fn incomplete(&mut self, note: impl Into<String>) {
        self.complete = false;
        self.notes.push(note.into());
    }

    /// Drops the rewrite sequences; the remaining claims still state the results.
    pub fn strip_traces(&mut self) {
        for c in &mut self.claims {
            match c {
                Claim::Reduction { steps, .. }
                | Claim::Equal { steps, .. }
                | Claim::NotEqual { steps, .. }
                | Claim::Commute { steps, .. }
                | Claim::Power { steps, .. }
                | Claim::Conjugate { steps, .. } => steps.clear(),
                Claim::Reduced { .. } | Claim::InTorus { .. } | Claim::NotInTorus { .. } => {}
            }
        }
        self.notes.push("reduction traces omitted".into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("claim {index}: {message}")]
pub struct VerifyError {
    pub index: usize,
    pub message: String,
}

/// Builders for claims from engine-side data.
impl GraphOfGroups {
    fn steps_doc(&self, p: &PathWord, trace: &[ReductionStep]) -> Vec<StepDoc> {
        let mut cur = p.clone();
        trace
            .iter()
            .map(|s| {
                let v = self.origin(cur.edges[s.index]);
                self.rewrite_at(&mut cur, s.index, s.witness);
                StepDoc { index: s.index, witness: s.witness, replacement: self.vertex(v).format(&s.replacement) }
            })
            .collect()
    }

    fn trace_of(&self, p: &PathWord) -> (PathWord, Vec<StepDoc>) {
        let (out, trace) = self.reduce(p);
        let steps = self.steps_doc(p, &trace);
        (out, steps)
    }

    pub fn claim_reduction(&self, p: &PathWord) -> (PathWord, Claim) {
        let (out, steps) = self.trace_of(p);
        let c = Claim::Reduction { input: self.format_path(p), steps, output: self.format_path(&out) };
        (out, c)
    }

    /// `Equal` or `NotEqual`, whichever holds.
    pub fn claim_compare(&self, lhs: &PathWord, rhs: &PathWord) -> (bool, Claim) {
        let (out, steps) = self.trace_of(&self.cat(lhs, &self.invert(rhs)));
        let (l, r) = (self.format_path(lhs), self.format_path(rhs));
        if out.is_empty() && self.vertex(out.start).is_identity(&out.elems[0]) {
            (true, Claim::Equal { lhs: l, rhs: r, steps })
        } else {
            (false, Claim::NotEqual { lhs: l, rhs: r, steps, residue: self.format_path(&out) })
        }
    }

    pub fn claim_commute(&self, x: &PathWord, y: &PathWord) -> Claim {
        let c = self.cat(&self.cat(x, y), &self.invert(&self.cat(y, x)));
        Claim::Commute { x: self.format_path(x), y: self.format_path(y), steps: self.trace_of(&c).1 }
    }

    pub fn claim_power(&self, base: &PathWord, n: i64, target: &PathWord) -> Claim {
        let p = self.cat(&self.pow(base, n).expect("loop"), &self.invert(target));
        Claim::Power { base: self.format_path(base), exponent: n, target: self.format_path(target), steps: self.trace_of(&p).1 }
    }

    pub fn claim_conjugate(&self, conj: &PathWord, x: &PathWord) -> (PathWord, Claim) {
        let p = self.cat(&self.cat(&self.invert(conj), x), conj);
        let (out, steps) = self.trace_of(&p);
        let c = Claim::Conjugate { conj: self.format_path(conj), x: self.format_path(x), steps, result: self.format_path(&out) };
        (out, c)
    }

    pub fn claim_torus(&self, v: usize, k: usize, g: &VertexElem) -> Claim {
        let vg = self.vertex(v);
        match vg.membership(k, g) {
            Some(coords) => Claim::InTorus { vertex: vg.name.clone(), torus: k, elem: vg.format(g), coords },
            None => Claim::NotInTorus { vertex: vg.name.clone(), torus: k, elem: vg.format(g) },
        }
    }
}

struct Replayer<'a> {
    gog: &'a GraphOfGroups,
}

impl Replayer<'_> {
    fn path(&self, s: &str) -> Result<PathWord, String> {
        let p = parse_path(self.gog, s).map_err(|e| format!("path `{s}`: {e}"))?;
        self.gog.check_path(&p).map_err(|e| e.to_string())?;
        Ok(p)
    }

    fn elem(&self, vertex: usize, s: &str) -> Result<VertexElem, String> {
        let text = format!("@{}: {s}", self.gog.vertex(vertex).name);
        Ok(self.path(&text)?.elems[0].clone())
    }

    fn vertex(&self, name: &str) -> Result<usize, String> {
        self.gog.graph.vertex_by_name(name).ok_or_else(|| format!("unknown vertex `{name}`"))
    }

    /// Applies the recorded rewrites, checking each one with edge maps and multiplication only.
    fn replay(&self, mut p: PathWord, steps: &[StepDoc]) -> Result<PathWord, String> {
        let g = self.gog;
        for (n, s) in steps.iter().enumerate() {
            let i = s.index;
            if i + 1 >= p.edges.len() {
                return Err(format!("step {n}: position {i} out of range"));
            }
            let e = p.edges[i];
            if p.edges[i + 1] != g.bar(e) {
                return Err(format!("step {n}: edges at {i} are not inverse"));
            }
            if g.apply_edge_map(e, s.witness) != p.elems[i + 1] {
                return Err(format!("step {n}: witness does not map onto the middle element"));
            }
            let v = g.origin(e);
            let vg = g.vertex(v);
            let rep = vg.mul3(&p.elems[i], &g.apply_edge_map(g.bar(e), s.witness), &p.elems[i + 2]);
            if rep != self.elem(v, &s.replacement)? {
                return Err(format!("step {n}: replacement differs"));
            }
            p.edges.drain(i..i + 2);
            p.elems.drain(i + 1..i + 3);
            p.elems[i] = rep;
        }
        Ok(p)
    }

    fn is_identity(&self, p: &PathWord) -> bool {
        p.is_empty() && self.gog.vertex(p.start).is_identity(&p.elems[0])
    }

    fn to_identity(&self, p: PathWord, steps: &[StepDoc]) -> Result<(), String> {
        let out = self.replay(p, steps)?;
        if self.is_identity(&out) {
            Ok(())
        } else {
            Err("rewrites do not reach the identity".into())
        }
    }

    fn check(&self, c: &Claim) -> Result<(), String> {
        let g = self.gog;
        match c {
            Claim::Reduction { input, steps, output } => {
                if self.replay(self.path(input)?, steps)? != self.path(output)? {
                    return Err("rewrites end elsewhere".into());
                }
            }
            Claim::Reduced { path } => {
                if !g.rewrite_sites(&self.path(path)?).is_empty() {
                    return Err("path admits a rewrite".into());
                }
            }
            Claim::Equal { lhs, rhs, steps } => {
                let (l, r) = (self.path(lhs)?, self.path(rhs)?);
                self.loops(&[&l, &r])?;
                self.to_identity(g.cat(&l, &g.invert(&r)), steps)?;
            }
            Claim::NotEqual { lhs, rhs, steps, residue } => {
                let (l, r) = (self.path(lhs)?, self.path(rhs)?);
                self.loops(&[&l, &r])?;
                let out = self.replay(g.cat(&l, &g.invert(&r)), steps)?;
                if out != self.path(residue)? || !g.rewrite_sites(&out).is_empty() || self.is_identity(&out) {
                    return Err("residue is not a reduced nontrivial path".into());
                }
            }
            Claim::Commute { x, y, steps } => {
                let (x, y) = (self.path(x)?, self.path(y)?);
                self.loops(&[&x, &y])?;
                self.to_identity(g.cat(&g.cat(&x, &y), &g.invert(&g.cat(&y, &x))), steps)?;
            }
            Claim::Power { base, exponent, target, steps } => {
                let (b, t) = (self.path(base)?, self.path(target)?);
                self.loops(&[&b, &t])?;
                let mut p = g.identity_path(b.start);
                let unit = if *exponent < 0 { g.invert(&b) } else { b.clone() };
                for _ in 0..exponent.unsigned_abs() {
                    p = g.cat(&p, &unit);
                }
                self.to_identity(g.cat(&p, &g.invert(&t)), steps)?;
            }
            Claim::Conjugate { conj, x, steps, result } => {
                let (a, x) = (self.path(conj)?, self.path(x)?);
                self.loops(&[&x])?;
                if a.start != x.start {
                    return Err("conjugator does not start at the loop's base".into());
                }
                let out = self.replay(g.cat(&g.cat(&g.invert(&a), &x), &a), steps)?;
                if out != self.path(result)? {
                    return Err("conjugate differs from the stated result".into());
                }
            }
            Claim::InTorus { vertex, torus, elem, coords } => {
                let v = self.vertex(vertex)?;
                let vg = g.vertex(v);
                if *torus >= vg.tori.len() || vg.torus_elem(*torus, *coords) != self.elem(v, elem)? {
                    return Err("element differs from the torus word".into());
                }
            }
            Claim::NotInTorus { vertex, torus, elem } => {
                let v = self.vertex(vertex)?;
                let vg = g.vertex(v);
                if *torus >= vg.tori.len() || vg.membership(*torus, &self.elem(v, elem)?).is_some() {
                    return Err("element lies in the torus".into());
                }
            }
        }
        Ok(())
    }

    fn loops(&self, ps: &[&PathWord]) -> Result<(), String> {
        let start = ps[0].start;
        for p in ps {
            if !self.gog.is_loop(p) || p.start != start {
                return Err("expected loops at one base vertex".into());
            }
        }
        Ok(())
    }
}

/// Replays every claim of `doc` against `gog`.
pub fn verify(gog: &GraphOfGroups, doc: &CertificateDoc) -> Result<(), VerifyError> {
    if doc.format_version != FORMAT_VERSION {
        return Err(VerifyError { index: 0, message: format!("unsupported format version {}", doc.format_version) });
    }
    let r = Replayer { gog };
    for (index, c) in doc.claims.iter().enumerate() {
        let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| r.check(c)))
            .unwrap_or_else(|_| Err("malformed claim".into()));
        res.map_err(|message| VerifyError { index, message })?;
    }
    Ok(())
}
