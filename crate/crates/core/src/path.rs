//! Paths `(g₀, e₁, g₁, …, e_n, g_n)` in a graph of groups: concatenation, inversion,
//! reduction, cyclic reduction and equality.

use crate::arith::lattice_rem;
use crate::backends::VertexElem;
use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub start: VertexId,
    /// `g₀, …, g_n`; always one more than `edges`.
    pub elems: Vec<VertexElem>,
    pub edges: Vec<EdgeId>,
}

impl PathWord {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// One application of `e φ_e(h) ē = φ_ē(h)` at edge position `index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub index: usize,
    pub witness: [i64; 2],
    pub replacement: VertexElem,
}

pub type ReductionTrace = Vec<ReductionStep>;

impl GraphOfGroups {
    pub fn identity_path(&self, v: VertexId) -> PathWord {
        PathWord { start: v, elems: vec![self.vertex(v).identity()], edges: vec![] }
    }

    pub fn vertex_path(&self, v: VertexId, g: VertexElem) -> PathWord {
        PathWord { start: v, elems: vec![g], edges: vec![] }
    }

    pub fn end(&self, p: &PathWord) -> VertexId {
        p.edges.last().map_or(p.start, |&e| self.terminus(e))
    }

    pub fn is_loop(&self, p: &PathWord) -> bool {
        self.end(p) == p.start
    }

    /// Checks that `p` is well typed.
    pub fn check_path(&self, p: &PathWord) -> Result<()> {
        if p.elems.len() != p.edges.len() + 1 {
            return Err(Error::Invalid("path must alternate elements and edges".into()));
        }
        if p.start >= self.vertices.len() {
            return Err(Error::Invalid(format!("unknown vertex {}", p.start)));
        }
        let mut v = p.start;
        for (i, g) in p.elems.iter().enumerate() {
            if !self.vertex(v).accepts(g) {
                return Err(Error::BackendMismatch(format!("element {i} does not belong to {}", self.vertex(v).name)));
            }
            if let Some(&e) = p.edges.get(i) {
                if e >= self.graph.edges.len() {
                    return Err(Error::Invalid(format!("unknown edge {e}")));
                }
                if self.origin(e) != v {
                    return Err(Error::BadEdge { edge: e, vertex: v });
                }
                v = self.terminus(e);
            }
        }
        Ok(())
    }

    pub fn concat(&self, p: &PathWord, q: &PathWord) -> Result<PathWord> {
        let end = self.end(p);
        if end != q.start {
            return Err(Error::EndpointMismatch { end, start: q.start });
        }
        let mut out = p.clone();
        let last = out.elems.pop().expect("nonempty");
        out.elems.push(self.vertex(end).mul(&last, &q.elems[0]));
        out.elems.extend(q.elems[1..].iter().cloned());
        out.edges.extend(q.edges.iter().copied());
        Ok(out)
    }

    /// Concatenation of paths known to match; panics otherwise.
    pub fn cat(&self, p: &PathWord, q: &PathWord) -> PathWord {
        self.concat(p, q).expect("endpoints match")
    }

    pub fn invert(&self, p: &PathWord) -> PathWord {
        let mut v = self.end(p);
        let start = v;
        let mut elems = vec![];
        for (i, g) in p.elems.iter().enumerate().rev() {
            elems.push(self.vertex(v).inv(g));
            if i > 0 {
                v = self.origin(p.edges[i - 1]);
            }
        }
        let edges = p.edges.iter().rev().map(|&e| self.bar(e)).collect();
        PathWord { start, elems, edges }
    }

    pub fn pow(&self, p: &PathWord, n: i64) -> Result<PathWord> {
        if !self.is_loop(p) {
            return Err(Error::NotALoop { start: p.start, end: self.end(p) });
        }
        let base = if n < 0 { self.invert(p) } else { p.clone() };
        let mut acc = self.identity_path(p.start);
        for _ in 0..n.unsigned_abs() {
            acc = self.cat(&acc, &base);
        }
        Ok(acc)
    }

    /// `a·x·a⁻¹` (for a loop `x` at the end of `a`).
    pub fn conj_path(&self, a: &PathWord, x: &PathWord) -> PathWord {
        self.cat(&self.cat(a, x), &self.invert(a))
    }

    /// The witness `h` when a rewrite applies at edge position `i`.
    fn rewrite_witness(&self, p: &PathWord, i: usize) -> Option<[i64; 2]> {
        let e = *p.edges.get(i)?;
        let f = *p.edges.get(i + 1)?;
        if f != self.bar(e) {
            return None;
        }
        self.edge_preimage(e, &p.elems[i + 1])
    }

    /// Positions at which a rewrite applies.
    pub fn rewrite_sites(&self, p: &PathWord) -> Vec<usize> {
        (0..p.edges.len().saturating_sub(1)).filter(|&i| self.rewrite_witness(p, i).is_some()).collect()
    }

    /// Applies the rewrite at position `i` (which must be a rewrite site).
    pub fn rewrite_at(&self, p: &mut PathWord, i: usize, h: [i64; 2]) -> VertexElem {
        let e = p.edges[i];
        let v = self.origin(e);
        let img = self.apply_edge_map(self.bar(e), h);
        let rep = self.vertex(v).mul3(&p.elems[i], &img, &p.elems[i + 2]);
        p.edges.drain(i..i + 2);
        p.elems.drain(i + 1..i + 3);
        p.elems[i] = rep.clone();
        rep
    }

    /// Leftmost rewriting to a fixpoint.
    pub fn reduce(&self, p: &PathWord) -> (PathWord, ReductionTrace) {
        let mut out = p.clone();
        let mut trace = vec![];
        let mut i = 0;
        while i + 1 < out.edges.len() {
            match self.rewrite_witness(&out, i) {
                Some(h) => {
                    let replacement = self.rewrite_at(&mut out, i, h);
                    trace.push(ReductionStep { index: i, witness: h, replacement });
                    i = i.saturating_sub(1);
                }
                None => i += 1,
            }
        }
        (out, trace)
    }

    pub fn reduced(&self, p: &PathWord) -> PathWord {
        self.reduce(p).0
    }

    /// Rewriting in an arbitrary order: `pick` chooses among the available sites.
    pub fn reduce_with(&self, p: &PathWord, mut pick: impl FnMut(&[usize]) -> usize) -> PathWord {
        let mut out = p.clone();
        loop {
            let sites = self.rewrite_sites(&out);
            if sites.is_empty() {
                return out;
            }
            let i = sites[pick(&sites) % sites.len()];
            let h = self.rewrite_witness(&out, i).expect("site");
            self.rewrite_at(&mut out, i, h);
        }
    }

    pub fn is_reduced(&self, p: &PathWord) -> bool {
        self.rewrite_sites(p).is_empty()
    }

    pub fn length(&self, p: &PathWord) -> usize {
        p.len()
    }

    pub fn elem_length(&self, p: &PathWord) -> usize {
        self.reduced(p).len()
    }

    /// For a reduced loop: whether `e₁ = ē_n` and `g_n g₀ ∈ Im φ_{e_n}`, with the witness.
    fn junction_witness(&self, p: &PathWord) -> Option<[i64; 2]> {
        let n = p.len();
        if n == 0 || p.edges[0] != self.bar(p.edges[n - 1]) {
            return None;
        }
        let en = p.edges[n - 1];
        let k = self.vertex(self.terminus(en)).mul(&p.elems[n], &p.elems[0]);
        self.edge_preimage(en, &k)
    }

    pub fn is_cyclically_reduced(&self, p: &PathWord) -> Result<bool> {
        if !self.is_loop(p) {
            return Err(Error::NotALoop { start: p.start, end: self.end(p) });
        }
        Ok(self.is_reduced(p) && self.junction_witness(p).is_none())
    }

    /// `(s, c)` with `s` cyclically reduced and `p = c·s·c⁻¹`.
    pub fn cyclic_reduce(&self, p: &PathWord) -> Result<(PathWord, PathWord)> {
        if !self.is_loop(p) {
            return Err(Error::NotALoop { start: p.start, end: self.end(p) });
        }
        let mut s = self.reduced(p);
        let mut conj = self.identity_path(p.start);
        while let Some(h) = self.junction_witness(&s) {
            let n = s.len();
            let e1 = s.edges[0];
            let en = s.edges[n - 1];
            let c = PathWord {
                start: s.start,
                elems: vec![s.elems[0].clone(), self.vertex(self.terminus(e1)).identity()],
                edges: vec![e1],
            };
            let vo = self.origin(en);
            let mut elems: Vec<VertexElem> = s.elems[1..n].to_vec();
            let last = elems.pop().expect("n >= 1");
            elems.push(self.vertex(vo).mul(&last, &self.apply_edge_map(self.bar(en), h)));
            let next = PathWord { start: self.terminus(e1), elems, edges: s.edges[1..n - 1].to_vec() };
            conj = self.cat(&conj, &c);
            s = self.reduced(&next);
        }
        Ok((s, conj))
    }

    /// `cl(p)`: the length of a cyclically reduced conjugate.
    pub fn cl(&self, p: &PathWord) -> Result<usize> {
        Ok(self.cyclic_reduce(p)?.0.len())
    }

    /// Whether a reduced path represents the identity.
    pub fn is_trivial(&self, p: &PathWord) -> bool {
        let r = self.reduced(p);
        r.is_empty() && self.vertex(r.start).is_identity(&r.elems[0])
    }

    pub fn equal(&self, p: &PathWord, q: &PathWord) -> Result<bool> {
        if p.start != q.start {
            return Err(Error::BaseMismatch(p.start, q.start));
        }
        if !self.is_loop(p) || !self.is_loop(q) {
            return Err(Error::NotALoop { start: p.start, end: self.end(p) });
        }
        Ok(self.is_trivial(&self.cat(p, &self.invert(q))))
    }

    /// `equal` for loops known to share a base point.
    pub fn eq(&self, p: &PathWord, q: &PathWord) -> bool {
        self.equal(p, q).expect("loops at one base")
    }

    /// Conjugates a loop at `v` to the base vertex along the stored base path.
    pub fn rebase(&self, p: &PathWord) -> Result<PathWord> {
        if !self.is_loop(p) {
            return Err(Error::NotALoop { start: p.start, end: self.end(p) });
        }
        Ok(self.conj_path(&self.base_paths[p.start], p))
    }

    /// The element `g ∈ G_v` as a loop at the base vertex.
    pub fn embed(&self, v: VertexId, g: VertexElem) -> PathWord {
        self.conj_path(&self.base_paths[v], &self.vertex_path(v, g))
    }

    pub fn commutes(&self, x: &PathWord, y: &PathWord) -> Result<bool> {
        self.equal(&self.cat(x, y), &self.cat(y, x))
    }

    /// Canonical representative of the element of `p`: the reduced form with every `g_i`
    /// (`i < n`) replaced by a fixed representative of its coset `g_i·Im φ_{ē_{i+1}}`. Two paths
    /// with the same endpoints are equal iff their normal forms coincide.
    pub fn normal_form(&self, p: &PathWord) -> PathWord {
        let mut r = self.reduced(p);
        for i in 0..r.edges.len() {
            let e = r.edges[i];
            let m = &self.edge_maps[self.bar(e)];
            let vg = self.vertex(m.target_vertex);
            let (rep, c) = vg.coset_rep(m.target_torus, &r.elems[i]);
            let (rem, z) = lattice_rem(&m.matrix, c);
            r.elems[i] = vg.mul(&rep, &vg.torus_elem(m.target_torus, rem));
            let pushed = self.apply_edge_map(e, z);
            r.elems[i + 1] = self.vertex(self.terminus(e)).mul(&pushed, &r.elems[i + 1]);
        }
        r
    }

    /// Path-expression rendering: `@V: g0 ; e1 ; g1 ...`.
    pub fn format_path(&self, p: &PathWord) -> String {
        let mut out = format!("@{}: {}", self.vertex(p.start).name, self.vertex(p.start).format(&p.elems[0]));
        for (i, &e) in p.edges.iter().enumerate() {
            let v = self.terminus(e);
            out.push_str(&format!(" ; {} ; {}", self.edge_name(e), self.vertex(v).format(&p.elems[i + 1])));
        }
        out
    }
}
