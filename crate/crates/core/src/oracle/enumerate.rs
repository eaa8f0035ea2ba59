use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, Ordering};

use rand::Rng;

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::path::PathWord;

/// Hard cap on the complexity accepted by the enumerator.
pub const MAX_COMPLEXITY: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct EnumLimits<'a> {
    pub max_complexity: usize,
    /// Cap on the number of distinct paths (of any endpoint) visited.
    pub max_paths: usize,
    pub cancel: Option<&'a AtomicBool>,
}

impl EnumLimits<'_> {
    pub fn new(max_complexity: usize) -> Self {
        EnumLimits { max_complexity, max_paths: 3_000_000, cancel: None }
    }
}

/// A loop at the base vertex in normal form, with the least number of letters (vertex
/// generators, their inverses and edges) spelling it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub path: PathWord,
    pub complexity: usize,
}

/// All nontrivial loops at the base vertex spelled by at most `l` letters, each once.
pub fn enumerate_elements(gog: &GraphOfGroups, l: usize) -> Result<Vec<Element>> {
    enumerate_with(gog, EnumLimits::new(l), |_, _, _| {})
}

/// Breadth-first enumeration. `visit(word, normal_form, is_new)` sees every product of a
/// visited path with one letter, before deduplication.
pub fn enumerate_with(
    gog: &GraphOfGroups,
    limits: EnumLimits,
    mut visit: impl FnMut(&PathWord, &PathWord, bool),
) -> Result<Vec<Element>> {
    if limits.max_complexity > MAX_COMPLEXITY {
        return Err(Error::CapExceeded { requested: limits.max_complexity, cap: MAX_COMPLEXITY });
    }
    let letters: Vec<Vec<PathWord>> = (0..gog.vertices.len())
        .map(|v| {
            let vg = gog.vertex(v);
            let mut ls: Vec<PathWord> = vg
                .generators()
                .iter()
                .flat_map(|g| [g.clone(), vg.inv(g)])
                .map(|g| gog.vertex_path(v, g))
                .collect();
            ls.extend((0..gog.graph.edges.len()).filter(|&e| gog.origin(e) == v).map(|e| gog.edge_path(v, &[e])));
            ls
        })
        .collect();
    let start = gog.identity_path(gog.base);
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut out = vec![];
    for depth in 1..=limits.max_complexity {
        let mut next = vec![];
        for p in &frontier {
            if limits.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
                return Err(Error::SearchExhausted("enumeration cancelled".into()));
            }
            for letter in &letters[gog.end(p)] {
                let w = gog.cat(p, letter);
                let nf = gog.normal_form(&w);
                let is_new = !seen.contains(&nf);
                visit(&w, &nf, is_new);
                if is_new {
                    if seen.len() >= limits.max_paths {
                        return Err(Error::CapExceeded { requested: seen.len() + 1, cap: limits.max_paths });
                    }
                    seen.insert(nf.clone());
                    if gog.is_loop(&nf) {
                        out.push(Element { path: nf.clone(), complexity: depth });
                    }
                    next.push(nf);
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// An unreduced path equal to `p`: `k` detours `φ_ē(h)⁻¹ · e·φ_e(h)·ē` spliced in after random
/// vertex elements.
pub fn scramble(gog: &GraphOfGroups, p: &PathWord, k: usize, rng: &mut impl Rng) -> PathWord {
    let mut out = p.clone();
    for _ in 0..k {
        let i = rng.gen_range(0..out.elems.len());
        let v = if i == 0 { out.start } else { gog.terminus(out.edges[i - 1]) };
        let edges: Vec<usize> = (0..gog.graph.edges.len()).filter(|&e| gog.origin(e) == v).collect();
        if edges.is_empty() {
            continue;
        }
        let e = edges[rng.gen_range(0..edges.len())];
        let h = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        let vg = gog.vertex(v);
        let mut head = PathWord { start: out.start, elems: out.elems[..=i].to_vec(), edges: out.edges[..i].to_vec() };
        head.elems[i] = vg.mul(&out.elems[i], &vg.inv(&gog.apply_edge_map(gog.bar(e), h)));
        let detour = PathWord { start: v, elems: vec![vg.identity(), gog.apply_edge_map(e, h), vg.identity()], edges: vec![e, gog.bar(e)] };
        let mut tail = PathWord { start: v, elems: vec![vg.identity()], edges: out.edges[i..].to_vec() };
        tail.elems.extend(out.elems[i + 1..].iter().cloned());
        out = gog.cat(&gog.cat(&head, &detour), &tail);
    }
    out
}
