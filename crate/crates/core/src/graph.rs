//! Finite graphs with directed edges and an edge involution.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRec {
    pub name: String,
    pub origin: VertexId,
    pub terminus: VertexId,
    pub bar: EdgeId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRec>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: impl Into<String>) {
        self.violations.push(v.into());
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl Graph {
    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    /// Adds `e: o → t` and its reverse `ē`; returns `e` (then `ē = e + 1`).
    pub fn add_edge_pair(&mut self, name: impl Into<String>, o: VertexId, t: VertexId) -> EdgeId {
        let name = name.into();
        let e = self.edges.len();
        self.edges.push(EdgeRec { name: name.clone(), origin: o, terminus: t, bar: e + 1 });
        self.edges.push(EdgeRec { name: format!("{name}^-1"), origin: t, terminus: o, bar: e });
        e
    }

    pub fn origin(&self, e: EdgeId) -> VertexId {
        self.edges[e].origin
    }

    pub fn terminus(&self, e: EdgeId) -> VertexId {
        self.edges[e].terminus
    }

    pub fn bar(&self, e: EdgeId) -> EdgeId {
        self.edges[e].bar
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    /// For each vertex, the edge path from `root` found by breadth-first search, taking
    /// edges in increasing id order. `None` for unreachable vertices.
    pub fn bfs_paths(&self, root: VertexId) -> Vec<Option<Vec<EdgeId>>> {
        let mut paths: Vec<Option<Vec<EdgeId>>> = vec![None; self.vertices.len()];
        if root >= self.vertices.len() {
            return paths;
        }
        paths[root] = Some(vec![]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (e, rec) in self.edges.iter().enumerate() {
                if rec.origin == v && rec.terminus < self.vertices.len() && paths[rec.terminus].is_none() {
                    let mut p = paths[v].clone().expect("visited");
                    p.push(e);
                    paths[rec.terminus] = Some(p);
                    queue.push_back(rec.terminus);
                }
            }
        }
        paths
    }
}

pub fn validate_graph(g: &Graph) -> ValidationReport {
    let mut r = ValidationReport::default();
    let nv = g.vertices.len();
    let ne = g.edges.len();
    if nv == 0 {
        r.push("graph has no vertices");
        return r;
    }
    for (e, rec) in g.edges.iter().enumerate() {
        if rec.origin >= nv || rec.terminus >= nv {
            r.push(format!("edge {} has an endpoint outside the vertex set", rec.name));
            continue;
        }
        if rec.bar >= ne {
            r.push(format!("edge {} has no reverse edge", rec.name));
            continue;
        }
        if rec.bar == e {
            r.push(format!("involution has fixed point at edge {}", rec.name));
            continue;
        }
        let b = &g.edges[rec.bar];
        if b.bar != e {
            r.push(format!("bar is not an involution at edge {}", rec.name));
        }
        if b.terminus != rec.origin || b.origin != rec.terminus {
            r.push(format!("origin and terminus of {} are not swapped by bar", rec.name));
        }
    }
    let reached = g.bfs_paths(0).iter().filter(|p| p.is_some()).count();
    if reached != nv {
        r.push(format!("graph is not connected ({reached} of {nv} vertices reachable)"));
    }
    r
}
