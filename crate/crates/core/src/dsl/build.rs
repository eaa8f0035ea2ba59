//! Semantic checks and construction of graphs of groups and paths from parsed documents.

use std::collections::HashSet;

use super::lexer::{ParseError, Pos};
use super::parser::{ItemAst, KindAst, ManifoldAst, Name, PathAst, VertexAst, WordAst};
use crate::backends::{Backend, Factor, FreeAbelianGroup, KleinianGroup, SeifertGroup, VertexElem, VertexGroup};
use crate::gog::{GogBuilder, GraphOfGroups};
use crate::path::PathWord;
use crate::quadint::QuadRing;

type BResult<T> = Result<T, ParseError>;

fn sem<T>(pos: Pos, msg: impl Into<String>) -> BResult<T> {
    Err(ParseError::new(pos, msg))
}

/// Resolves a word against a vertex group's generator names.
pub fn eval_word(vg: &VertexGroup, w: &WordAst) -> BResult<VertexElem> {
    let names = vg.generator_names();
    let mut acc = vg.identity();
    for (name, e) in w {
        let Some(i) = names.iter().position(|n| *n == name.text) else {
            return sem(name.pos, format!("unknown generator `{}` in {}", name.text, vg.name));
        };
        acc = vg.mul(&acc, &vg.gen_pow(i, *e));
    }
    Ok(acc)
}

fn check_unique<'a>(names: impl Iterator<Item = &'a Name>, what: &str) -> BResult<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.text.as_str()) {
            return sem(n.pos, format!("duplicate {what} `{}`", n.text));
        }
    }
    Ok(())
}

fn item_pos(item: &ItemAst) -> Pos {
    match item {
        ItemAst::Gen { name, .. } | ItemAst::Free(name) | ItemAst::Cone { name, .. } | ItemAst::Fiber(name) => name.pos,
        ItemAst::Ring { sym, .. } => sym.pos,
        ItemAst::Relation { pos, .. } | ItemAst::Torus { pos, .. } => *pos,
    }
}

fn item_allowed(kind: KindAst, item: &ItemAst) -> bool {
    match item {
        ItemAst::Torus { .. } => true,
        ItemAst::Gen { matrix, .. } => match kind {
            KindAst::FreeAbelian => matrix.is_none(),
            KindAst::Kleinian => matrix.is_some(),
            _ => false,
        },
        ItemAst::Free(_) | ItemAst::Fiber(_) => matches!(kind, KindAst::CircleBundle | KindAst::ConeSfs),
        ItemAst::Cone { .. } => kind == KindAst::ConeSfs,
        ItemAst::Ring { .. } | ItemAst::Relation { .. } => kind == KindAst::Kleinian,
    }
}

fn build_backend(v: &VertexAst) -> BResult<Backend> {
    for item in &v.items {
        if !item_allowed(v.kind, item) {
            return sem(item_pos(item), format!("item not allowed in a {:?} vertex", v.kind));
        }
    }
    let gen_names = v.items.iter().filter_map(|i| match i {
        ItemAst::Gen { name, .. } | ItemAst::Free(name) | ItemAst::Cone { name, .. } | ItemAst::Fiber(name) => Some(name),
        _ => None,
    });
    check_unique(gen_names, "generator")?;
    match v.kind {
        KindAst::FreeAbelian => {
            let gens: Vec<String> =
                v.items.iter().filter_map(|i| if let ItemAst::Gen { name, .. } = i { Some(name.text.clone()) } else { None }).collect();
            if gens.is_empty() {
                return sem(v.name.pos, "free abelian vertex needs at least one generator");
            }
            Ok(Backend::FreeAbelian(FreeAbelianGroup { gens }))
        }
        KindAst::CircleBundle | KindAst::ConeSfs => {
            let mut factors = vec![];
            let mut fiber: Option<&Name> = None;
            for item in &v.items {
                match item {
                    ItemAst::Free(n) => factors.push(Factor { name: n.text.clone(), order: None, beta: 0 }),
                    ItemAst::Cone { name, alpha, beta } => {
                        if *alpha < 2 {
                            return sem(name.pos, "cone order must be ≥ 2");
                        }
                        if crate::arith::gcd(*alpha, *beta) != 1 {
                            return sem(name.pos, "cone invariants must be coprime");
                        }
                        factors.push(Factor { name: name.text.clone(), order: Some(*alpha), beta: *beta });
                    }
                    ItemAst::Fiber(n) => {
                        if fiber.is_some() {
                            return sem(n.pos, "duplicate fiber declaration");
                        }
                        fiber = Some(n);
                    }
                    _ => {}
                }
            }
            if factors.is_empty() {
                return sem(v.name.pos, "Seifert vertex needs at least one free or cone factor");
            }
            if v.kind == KindAst::ConeSfs && factors.iter().all(|f| f.order.is_none()) {
                return sem(v.name.pos, "cone_sfs vertex needs at least one cone point");
            }
            let fiber_name = fiber.map_or_else(|| "h".to_string(), |n| n.text.clone());
            if factors.iter().any(|f| f.name == fiber_name) {
                return sem(v.name.pos, format!("fiber name `{fiber_name}` clashes with a factor"));
            }
            Ok(Backend::Seifert(SeifertGroup { factors, fiber_name }))
        }
        KindAst::Kleinian => {
            let rings: Vec<_> = v.items.iter().filter(|i| matches!(i, ItemAst::Ring { .. })).collect();
            let Some(ItemAst::Ring { sym, p, q }) = rings.first() else {
                return sem(v.name.pos, "kleinian vertex needs a `ring` declaration");
            };
            if rings.len() > 1 {
                return sem(item_pos(rings[1]), "duplicate ring declaration");
            }
            if p * p - 4 * q >= 0 {
                return sem(sym.pos, "ring must be imaginary quadratic (p² - 4q < 0)");
            }
            let gens: Vec<(String, crate::quadint::QMat)> = v
                .items
                .iter()
                .filter_map(|i| match i {
                    ItemAst::Gen { name, matrix: Some(m) } => Some((name.text.clone(), *m)),
                    _ => None,
                })
                .collect();
            if gens.is_empty() {
                return sem(v.name.pos, "kleinian vertex needs at least one generator");
            }
            let mut grp = KleinianGroup::new(QuadRing { p: *p, q: *q }, sym.text.clone(), gens, vec![]);
            for item in &v.items {
                if let ItemAst::Relation { lhs, rhs, .. } = item {
                    let lw = kleinian_word(&grp, lhs)?;
                    let rw = kleinian_word(&grp, rhs)?;
                    grp.relations.push((lw, rw));
                }
            }
            Ok(Backend::Kleinian(grp))
        }
    }
}

fn kleinian_word(grp: &KleinianGroup, w: &WordAst) -> BResult<Vec<(usize, i64)>> {
    w.iter()
        .map(|(n, e)| match grp.gens.iter().position(|(g, _)| *g == n.text) {
            Some(i) => Ok((i, *e)),
            None => sem(n.pos, format!("unknown generator `{}`", n.text)),
        })
        .collect()
}

fn build_vertex(v: &VertexAst) -> BResult<VertexGroup> {
    let backend = build_backend(v)?;
    let relation_pos = v.items.iter().find_map(|i| if let ItemAst::Relation { pos, .. } = i { Some(*pos) } else { None });
    let mut vg = VertexGroup::new(v.name.text.clone(), backend, vec![])
        .or_else(|e| sem(relation_pos.unwrap_or(v.name.pos), e.to_string()))?;
    for item in &v.items {
        if let ItemAst::Torus { u, v: w, pos } = item {
            let basis = [eval_word(&vg, u)?, eval_word(&vg, w)?];
            vg.add_torus(basis).or_else(|e| sem(*pos, e.to_string()))?;
        }
    }
    Ok(vg)
}

fn build_inner(doc: &ManifoldAst) -> BResult<GraphOfGroups> {
    if doc.vertices.is_empty() {
        return sem(Pos { line: 1, col: 1 }, "no vertices declared");
    }
    check_unique(doc.vertices.iter().map(|v| &v.name), "vertex")?;
    check_unique(doc.edges.iter().map(|e| &e.name), "edge")?;
    let mut b = GogBuilder::new();
    let mut groups = vec![];
    for v in &doc.vertices {
        let vg = build_vertex(v)?;
        groups.push(vg.clone());
        b.vertex(vg);
    }
    let find = |n: &Name| match doc.vertices.iter().position(|v| v.name.text == n.text) {
        Some(i) => Ok(i),
        None => sem(n.pos, format!("unknown vertex `{}`", n.text)),
    };
    for e in &doc.edges {
        let o = find(&e.from)?;
        let t = find(&e.to)?;
        for (v, (k, pos)) in [(o, e.from_torus), (t, e.to_torus)] {
            if k >= groups[v].tori.len() {
                return sem(pos, format!("unknown torus {k} of `{}`", groups[v].name));
            }
        }
        for (m, pos) in [e.m_bar, e.m] {
            if m.det() == 0 {
                return sem(pos, "edge map not injective");
            }
        }
        b.edge(&e.name.text, o, e.from_torus.0, e.m_bar.0, t, e.to_torus.0, e.m.0);
    }
    match &doc.base {
        Some(n) => {
            b.base(find(n)?);
        }
        None => {
            b.base(0);
        }
    }
    let last = doc.edges.last().map_or(doc.vertices[0].name.pos, |e| e.name.pos);
    b.build().or_else(|e| sem(last, e.to_string()))
}

/// Builds a graph of groups. Arithmetic overflow while checking matrix relations is reported
/// as a positioned error rather than a crash.
pub fn build_manifold(doc: &ManifoldAst) -> BResult<GraphOfGroups> {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| build_inner(doc))) {
        Ok(r) => r,
        Err(_) => sem(doc.vertices.first().map_or(Pos { line: 1, col: 1 }, |v| v.name.pos), "arithmetic overflow while evaluating the group data"),
    }
}

/// Resolves a path expression; without `@V:` the path starts at the base vertex.
pub fn build_path(gog: &GraphOfGroups, p: &PathAst) -> BResult<PathWord> {
    let start = match &p.vertex {
        Some(n) => match gog.graph.vertex_by_name(&n.text) {
            Some(v) => v,
            None => return sem(n.pos, format!("unknown vertex `{}`", n.text)),
        },
        None => gog.base,
    };
    let mut v = start;
    let mut elems = vec![eval_word(gog.vertex(v), &p.words[0])?];
    let mut edges = vec![];
    for (i, (name, inv)) in p.edges.iter().enumerate() {
        let Some(e) = gog.graph.edges.iter().position(|r| r.name == name.text) else {
            return sem(name.pos, format!("unknown edge `{}`", name.text));
        };
        let e = if *inv { gog.bar(e) } else { e };
        if gog.origin(e) != v {
            return sem(name.pos, format!("edge `{}` does not start at {}", gog.edge_name(e), gog.vertex(v).name));
        }
        v = gog.terminus(e);
        edges.push(e);
        elems.push(eval_word(gog.vertex(v), &p.words[i + 1])?);
    }
    Ok(PathWord { start, elems, edges })
}
