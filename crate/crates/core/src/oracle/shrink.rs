use crate::dsl::{parse_manifold, parse_path, serialize};
use crate::gog::GraphOfGroups;
use crate::path::PathWord;

/// A minimised failing input: a manifold in the text format and a path expression in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub manifold: String,
    pub element: String,
}

impl Counterexample {
    /// One text document: the manifold followed by the element as a comment.
    pub fn to_dsl(&self) -> String {
        format!("{}# counterexample: {}\n", self.manifold, self.element)
    }
}

fn size(gog: &GraphOfGroups, p: &PathWord) -> usize {
    let mut v = p.start;
    let mut s = p.len();
    for (i, g) in p.elems.iter().enumerate() {
        s += gog.vertex(v).complexity(g);
        if i < p.len() {
            v = gog.terminus(p.edges[i]);
        }
    }
    s
}

fn element_moves(gog: &GraphOfGroups, p: &PathWord) -> Vec<PathWord> {
    let mut out = vec![];
    let mut v = p.start;
    for i in 0..p.elems.len() {
        let vg = gog.vertex(v);
        if !vg.is_identity(&p.elems[i]) {
            let mut q = p.clone();
            q.elems[i] = vg.identity();
            out.push(q);
            for g in vg.generators() {
                for g in [g.clone(), vg.inv(&g)] {
                    let mut q = p.clone();
                    q.elems[i] = vg.mul(&p.elems[i], &g);
                    out.push(q.clone());
                    q.elems[i] = vg.mul(&g, &p.elems[i]);
                    out.push(q);
                }
            }
        }
        if i < p.len() {
            v = gog.terminus(p.edges[i]);
        }
    }
    // Cut out closed sub-paths `e_i … e_{j-1}`.
    for i in 0..p.len() {
        for j in i + 1..=p.len() {
            if gog.origin(p.edges[i]) == gog.terminus(p.edges[j - 1]) {
                let vg = gog.vertex(gog.origin(p.edges[i]));
                let mut q = PathWord { start: p.start, elems: p.elems[..i].to_vec(), edges: p.edges[..i].to_vec() };
                q.elems.push(vg.mul(&p.elems[i], &p.elems[j]));
                q.elems.extend(p.elems[j + 1..].iter().cloned());
                q.edges.extend(p.edges[j..].iter().copied());
                out.push(q);
            }
        }
    }
    out
}

/// Greedy shrinking of a failing `(gog, x)`: simplifies the loop, then drops edges the loop no
/// longer uses, keeping each step only while `fails` still holds.
pub fn shrink(gog: &GraphOfGroups, x: &PathWord, mut fails: impl FnMut(&GraphOfGroups, &PathWord) -> bool) -> Counterexample {
    let mut gog = gog.clone();
    let mut x = x.clone();
    'outer: loop {
        let cur = size(&gog, &x);
        for q in element_moves(&gog, &x) {
            if size(&gog, &q) < cur && fails(&gog, &q) {
                x = q;
                continue 'outer;
            }
        }
        let text = serialize(&gog);
        let elem = gog.format_path(&x);
        let edges: Vec<usize> = gog.edge_pairs().collect();
        for e in edges {
            if x.edges.iter().any(|&f| f == e || f == gog.bar(e)) {
                continue;
            }
            let line = format!("edge {} :", gog.edge_name(e));
            let smaller: String = text.lines().filter(|l| !l.starts_with(&line)).map(|l| format!("{l}\n")).collect();
            let Ok(g2) = parse_manifold(smaller.as_bytes()) else { continue };
            let Ok(x2) = parse_path(&g2, &elem) else { continue };
            if fails(&g2, &x2) {
                gog = g2;
                x = x2;
                continue 'outer;
            }
        }
        break;
    }
    Counterexample { manifold: serialize(&gog), element: gog.format_path(&x) }
}
