use std::collections::HashSet;

use super::Budget;
use crate::backends::Kind;
use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::path::PathWord;

/// `conjugates[i] = tⁱ·g·t⁻ⁱ`, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClassWitness {
    pub t: PathWord,
    pub conjugates: Vec<PathWord>,
}

impl GraphOfGroups {
    /// Loops at the base: vertex generators moved along base paths, and one loop per edge.
    pub fn generating_loops(&self) -> Vec<PathWord> {
        let mut out = vec![];
        for (v, vg) in self.vertices.iter().enumerate() {
            out.extend(vg.generators().into_iter().map(|h| self.embed(v, h)));
        }
        for e in self.edge_pairs() {
            let (o, t) = (self.origin(e), self.terminus(e));
            let step = self.edge_path(o, &[e]);
            let p = self.cat(&self.cat(&self.base_paths[o], &step), &self.invert(&self.base_paths[t]));
            let p = self.reduced(&p);
            if !self.is_trivial(&p) {
                out.push(p);
            }
        }
        out
    }

    /// Shows that the conjugacy class of `g` is infinite by exhibiting `n + 1` distinct
    /// conjugates `tⁱ g t⁻ⁱ`.
    pub fn conjugacy_class_infinite(&self, g: &PathWord, n: usize, _budget: Budget) -> Result<(bool, ConjClassWitness)> {
        if self.vertices.len() == 1 && self.graph.edges.is_empty() && self.vertex(0).kind() != Kind::Kleinian {
            return Err(Error::Precondition("single Seifert or abelian vertex".into()));
        }
        self.check_nontrivial_loop(g)?;
        if g.start != self.base {
            return Err(Error::BaseMismatch(g.start, self.base));
        }
        let gens = self.generating_loops();
        let mut candidates = gens.clone();
        for a in &gens {
            for b in &gens {
                candidates.push(self.reduced(&self.cat(a, b)));
            }
        }
        for t in candidates {
            if let Some(conjugates) = self.distinct_conjugates(g, &t, n) {
                return Ok((true, ConjClassWitness { t, conjugates }));
            }
        }
        Err(Error::SearchExhausted("no conjugating element with distinct powers among short products".into()))
    }

    fn distinct_conjugates(&self, g: &PathWord, t: &PathWord, n: usize) -> Option<Vec<PathWord>> {
        let mut seen = HashSet::new();
        let mut out = vec![];
        let mut c = g.clone();
        for _ in 0..=n {
            if !seen.insert(self.normal_form(&c)) {
                return None;
            }
            out.push(self.reduced(&c));
            c = self.conj_path(t, &c);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_path;
    use crate::presets::load_preset;

    #[test]
    fn fiber_has_infinite_class_in_graph_manifold() {
        let g = load_preset("graph_manifold").unwrap();
        let h = parse_path(&g, "h").unwrap();
        let (ok, w) = g.conjugacy_class_infinite(&h, 5, Budget::default()).unwrap();
        assert!(ok);
        for i in 0..w.conjugates.len() {
            for j in 0..i {
                assert!(!g.eq(&w.conjugates[i], &w.conjugates[j]));
            }
        }
    }

    #[test]
    fn single_seifert_vertex_rejected() {
        let g = load_preset("trefoil").unwrap();
        let e = g.conjugacy_class_infinite(&parse_path(&g, "q1").unwrap(), 5, Budget::default()).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
    }
}
