//! Graphs of groups with `Z²` edge groups.

use serde::{Deserialize, Serialize};

use crate::arith::Mat2;
use crate::backends::{Kind, VertexElem, VertexGroup};
use crate::error::{Error, Result};
use crate::graph::{validate_graph, EdgeId, Graph, ValidationReport, VertexId};
use crate::path::PathWord;

/// `φ_e: Z² → T_k ⊂ G_{t(e)}`; matrix columns are images of the edge-group basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeMap {
    pub target_vertex: VertexId,
    pub target_torus: usize,
    pub matrix: Mat2,
}

#[derive(Debug, Clone)]
pub struct GraphOfGroups {
    pub graph: Graph,
    pub vertices: Vec<VertexGroup>,
    pub edge_maps: Vec<EdgeMap>,
    pub base: VertexId,
    /// `base_paths[v]`: a path from the base vertex to `v`.
    pub base_paths: Vec<PathWord>,
}

#[derive(Debug, Default)]
pub struct GogBuilder {
    graph: Graph,
    vertices: Vec<VertexGroup>,
    edge_maps: Vec<EdgeMap>,
    base: Option<VertexId>,
}

impl GogBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, vg: VertexGroup) -> VertexId {
        self.graph.add_vertex(vg.name.clone());
        self.vertices.push(vg);
        self.vertices.len() - 1
    }

    /// Adds `e: o → t` with `φ_ē` into torus `ko` of `o` and `φ_e` into torus `kt` of `t`.
    #[allow(clippy::too_many_arguments)]
    pub fn edge(&mut self, name: &str, o: VertexId, ko: usize, m_bar: Mat2, t: VertexId, kt: usize, m: Mat2) -> EdgeId {
        let e = self.graph.add_edge_pair(name, o, t);
        self.edge_maps.push(EdgeMap { target_vertex: t, target_torus: kt, matrix: m });
        self.edge_maps.push(EdgeMap { target_vertex: o, target_torus: ko, matrix: m_bar });
        e
    }

    pub fn base(&mut self, v: VertexId) -> &mut Self {
        self.base = Some(v);
        self
    }

    pub fn build(self) -> Result<GraphOfGroups> {
        let report = validate_graph(&self.graph);
        if !report.is_valid() {
            return Err(Error::Invalid(report.violations.join("; ")));
        }
        for (e, map) in self.edge_maps.iter().enumerate() {
            let name = &self.graph.edges[e].name;
            if map.matrix.det() == 0 {
                return Err(Error::Invalid(format!("edge map of {name} not injective")));
            }
            if map.target_vertex != self.graph.terminus(e) {
                return Err(Error::Invalid(format!("edge map of {name} targets the wrong vertex")));
            }
            if map.target_torus >= self.vertices[map.target_vertex].tori.len() {
                return Err(Error::Invalid(format!("edge map of {name} targets an undeclared torus")));
            }
        }
        let base = self.base.unwrap_or(0);
        if base >= self.vertices.len() {
            return Err(Error::Invalid("base vertex out of range".into()));
        }
        let mut gog = GraphOfGroups { graph: self.graph, vertices: self.vertices, edge_maps: self.edge_maps, base, base_paths: vec![] };
        let paths = gog.graph.bfs_paths(base);
        gog.base_paths = paths
            .into_iter()
            .map(|p| gog.edge_path(base, &p.expect("connected")))
            .collect();
        Ok(gog)
    }
}

impl GraphOfGroups {
    pub fn vertex(&self, v: VertexId) -> &VertexGroup {
        &self.vertices[v]
    }

    pub fn origin(&self, e: EdgeId) -> VertexId {
        self.graph.origin(e)
    }

    pub fn terminus(&self, e: EdgeId) -> VertexId {
        self.graph.terminus(e)
    }

    pub fn bar(&self, e: EdgeId) -> EdgeId {
        self.graph.bar(e)
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.graph.edges[e].name
    }

    /// `φ_e(h)` in `G_{t(e)}`.
    pub fn apply_edge_map(&self, e: EdgeId, h: [i64; 2]) -> VertexElem {
        let m = &self.edge_maps[e];
        self.vertices[m.target_vertex].torus_elem(m.target_torus, m.matrix.apply(h))
    }

    /// `Some(h)` with `g = φ_e(h)`, `g ∈ G_{t(e)}`.
    pub fn edge_preimage(&self, e: EdgeId, g: &VertexElem) -> Option<[i64; 2]> {
        let m = &self.edge_maps[e];
        let c = self.vertices[m.target_vertex].membership(m.target_torus, g)?;
        m.matrix.solve(c)
    }

    /// Path of identity elements along `edges`, starting at `start`.
    pub fn edge_path(&self, start: VertexId, edges: &[EdgeId]) -> PathWord {
        let mut elems = vec![self.vertices[start].identity()];
        for &e in edges {
            elems.push(self.vertices[self.terminus(e)].identity());
        }
        PathWord { start, elems, edges: edges.to_vec() }
    }

    /// Whether `(v, k)` is the target of some edge map.
    pub fn torus_is_glued(&self, v: VertexId, k: usize) -> bool {
        self.edge_maps.iter().any(|m| m.target_vertex == v && m.target_torus == k)
    }

    /// Peripheral tori not used by any edge.
    pub fn free_tori(&self) -> Vec<(VertexId, usize)> {
        (0..self.vertices.len())
            .flat_map(|v| (0..self.vertices[v].tori.len()).map(move |k| (v, k)))
            .filter(|&(v, k)| !self.torus_is_glued(v, k))
            .collect()
    }

    /// `max s_v` over Seifert vertices, 1 when there are none.
    pub fn max_singular_order(&self) -> i64 {
        self.vertices.iter().map(|v| v.singular_order()).max().unwrap_or(1)
    }

    /// Number of declared (undirected) edges.
    pub fn edge_pairs(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.graph.edges.len()).filter(move |&e| e < self.bar(e))
    }
}

/// Structural JSJ checks: fiber mismatch across Seifert–Seifert edges, each peripheral
/// subgroup used by at most one edge end, unimodular gluings, no torus pieces on edges.
pub fn validate_jsj(gog: &GraphOfGroups) -> ValidationReport {
    let mut r = validate_graph(&gog.graph);
    if !r.is_valid() {
        return r;
    }
    let mut used: Vec<(VertexId, usize, EdgeId)> = vec![];
    for (e, m) in gog.edge_maps.iter().enumerate() {
        if let Some(&(_, _, other)) = used.iter().find(|u| u.0 == m.target_vertex && u.1 == m.target_torus) {
            r.push(format!(
                "torus {} of {} is used by both {} and {}",
                m.target_torus,
                gog.vertex(m.target_vertex).name,
                gog.edge_name(other),
                gog.edge_name(e)
            ));
        }
        used.push((m.target_vertex, m.target_torus, e));
        if !m.matrix.is_unimodular() {
            r.push(format!("gluing matrix of {} is not unimodular", gog.edge_name(e)));
        }
        if gog.vertex(m.target_vertex).kind() == Kind::FreeAbelian {
            r.push(format!("torus piece {} is adjacent to edge {}", gog.vertex(m.target_vertex).name, gog.edge_name(e)));
        }
    }
    for e in gog.edge_pairs() {
        let (o, t) = (gog.origin(e), gog.terminus(e));
        if !(gog.vertex(o).kind().is_seifert() && gog.vertex(t).kind().is_seifert()) {
            continue;
        }
        let ct = gog.vertex(t).fiber().expect("Seifert");
        let Some(h) = gog.edge_preimage(e, &ct) else { continue };
        let image = gog.apply_edge_map(gog.bar(e), h);
        if let Some(k) = gog.vertex(o).fiber_exponent(&image) {
            r.push(format!(
                "fibers match across {}: the preimage of the fiber of {} is the fiber of {} to the power {k}",
                gog.edge_name(e),
                gog.vertex(t).name,
                gog.vertex(o).name
            ));
        }
    }
    r
}
