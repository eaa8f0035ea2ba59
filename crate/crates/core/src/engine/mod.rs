//! Decision procedures on loops: divisibility, commuting pairs, centralizers, peripheral
//! malnormality and infinitude of conjugacy classes.
//!
//! Every answer carries the data needed to check it independently; see [`crate::cert`].

mod centralizer;
mod commuting;
mod conjclass;
mod divisibility;
mod malnormal;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use centralizer::CentralizerDesc;
pub use commuting::{ClassifyRoute, CommuteClass, CommuteResult};
pub use conjclass::ConjClassWitness;
pub use divisibility::{DivBound, DivisibilityResult};
pub use malnormal::MalnormalCertificate;

use crate::backends::VertexElem;
use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::VertexId;
use crate::path::PathWord;

/// Search limits shared by the procedures that may need to search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Word length for conjugator and root searches inside vertex groups, and the box radius
    /// for edge-group parameters.
    pub search: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { search: 8 }
    }
}

/// Cap on the number of vertex groups visited when following an elliptic element across edges.
const TRANSPORT_CAP: usize = 64;

/// `x = conj · elem · conj⁻¹` with `elem ∈ G_vertex`; `conj` runs from the base of `x` to `vertex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexForm {
    pub vertex: VertexId,
    pub elem: VertexElem,
    pub conj: PathWord,
}

impl GraphOfGroups {
    pub(crate) fn check_nontrivial_loop(&self, x: &PathWord) -> Result<()> {
        self.check_path(x)?;
        if !self.is_loop(x) {
            return Err(Error::NotALoop { start: x.start, end: self.end(x) });
        }
        if self.is_trivial(x) {
            return Err(Error::TrivialElement);
        }
        Ok(())
    }

    /// The vertex form of an elliptic loop (`cl = 0`), `None` for hyperbolic loops.
    pub fn elliptic_form(&self, x: &PathWord) -> Result<Option<VertexForm>> {
        let (s, conj) = self.cyclic_reduce(x)?;
        if !s.is_empty() {
            return Ok(None);
        }
        Ok(Some(VertexForm { vertex: s.start, elem: s.elems[0].clone(), conj }))
    }

    pub fn form_loop(&self, f: &VertexForm) -> PathWord {
        self.conj_path(&f.conj, &self.vertex_path(f.vertex, f.elem.clone()))
    }

    /// Reduces `conj⁻¹·x·conj`; `Some(g)` when the result lies in the vertex group at the
    /// end of `conj`.
    pub fn pull_back(&self, conj: &PathWord, x: &PathWord) -> Option<VertexElem> {
        let y = self.reduced(&self.cat(&self.cat(&self.invert(conj), x), conj));
        y.is_empty().then(|| y.elems[0].clone())
    }

    /// All vertex groups reached by sliding `g ∈ G_v` through edge groups: forms
    /// `(u, g_u, a)` with `g = a·g_u·a⁻¹` as loops at `v`, starting with `(v, g, 1)`.
    pub fn vertex_conjugates(&self, v: VertexId, g: &VertexElem, budget: Budget) -> Result<Vec<VertexForm>> {
        let mut out = vec![VertexForm { vertex: v, elem: g.clone(), conj: self.identity_path(v) }];
        let mut seen = HashSet::from([(v, g.clone())]);
        let mut i = 0;
        while i < out.len() && out.len() < TRANSPORT_CAP {
            let f = out[i].clone();
            i += 1;
            for e in 0..self.graph.edges.len() {
                if self.origin(e) != f.vertex {
                    continue;
                }
                let m = &self.edge_maps[self.bar(e)];
                let vg = self.vertex(f.vertex);
                let Some(b) = vg.conj_into_torus(m.target_torus, &f.elem, budget.search)? else { continue };
                let t = vg.mul3(&vg.inv(&b), &f.elem, &b);
                let Some(h) = self.edge_preimage(self.bar(e), &t) else { continue };
                let u = self.terminus(e);
                let gu = self.apply_edge_map(e, h);
                if seen.insert((u, gu.clone())) {
                    let step = PathWord { start: f.vertex, elems: vec![b, self.vertex(u).identity()], edges: vec![e] };
                    out.push(VertexForm { vertex: u, elem: gu, conj: self.cat(&f.conj, &step) });
                }
            }
        }
        Ok(out)
    }
}
