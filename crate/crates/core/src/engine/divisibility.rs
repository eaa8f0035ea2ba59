use serde::{Deserialize, Serialize};

use super::Budget;
use crate::error::Result;
use crate::gog::GraphOfGroups;
use crate::path::PathWord;

/// Which bound limits the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivBound {
    /// Hyperbolic `x`: `n ≤ cl(x)`.
    ClBound { cl: usize },
    /// Elliptic `x`: `n ≤ d·s` with `d` the divisibility of `x` in its own vertex group and
    /// `s` the largest singular fiber order.
    VertexBound { d: i64, s: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityResult {
    pub max_n: i64,
    /// `root^max_n = x`.
    pub root: PathWord,
    pub bound_used: DivBound,
    /// False when some candidate could not be ruled out within the budget; `max_n` is then a
    /// verified lower bound.
    pub complete: bool,
}

impl DivisibilityResult {
    pub fn bound_holds(&self) -> bool {
        match self.bound_used {
            DivBound::ClBound { cl } => self.max_n as usize <= cl.max(1),
            DivBound::VertexBound { d, s } => self.max_n <= d * s,
        }
    }
}

impl GraphOfGroups {
    /// Largest `n` such that `x = yⁿ` for some `y`, with such a `y`.
    pub fn max_divisibility(&self, x: &PathWord, budget: Budget) -> Result<DivisibilityResult> {
        self.check_nontrivial_loop(x)?;
        let (s, c) = self.cyclic_reduce(x)?;
        if s.is_empty() {
            self.elliptic_divisibility(&s, &c, budget)
        } else {
            self.hyperbolic_divisibility(&s, &c, budget)
        }
    }

    fn elliptic_divisibility(&self, s: &PathWord, c: &PathWord, budget: Budget) -> Result<DivisibilityResult> {
        let v = s.start;
        let forms = self.vertex_conjugates(v, &s.elems[0], budget)?;
        let mut best: Option<(i64, PathWord)> = None;
        let mut complete = true;
        let mut d0 = 1;
        for (i, f) in forms.iter().enumerate() {
            let md = self.vertex(f.vertex).max_divisor(&f.elem, budget.search)?;
            complete &= md.verified;
            if i == 0 {
                d0 = md.d;
            }
            if best.as_ref().is_none_or(|b| md.d > b.0) {
                let r = self.conj_path(&f.conj, &self.vertex_path(f.vertex, md.root));
                best = Some((md.d, r));
            }
        }
        let (max_n, root) = best.expect("the element's own vertex is always present");
        Ok(DivisibilityResult {
            max_n,
            root: self.reduced(&self.conj_path(c, &root)),
            bound_used: DivBound::VertexBound { d: d0, s: self.max_singular_order() },
            complete,
        })
    }

    /// `s` cyclically reduced of length `L`. A root `y` with `yⁿ = s` has the same axis, so it is
    /// cyclically reduced of length `L/n` with the edge sequence of `s` periodic of that
    /// period. Normalising `y` to share its first `m = L/n` elements with `s` leaves one
    /// unknown edge-group parameter `h`: `y = (g₀, e₁, …, g_{m-1}, e_m, g_m·φ_{ē₁}(h)·g₀⁻¹)`.
    fn hyperbolic_divisibility(&self, s: &PathWord, c: &PathWord, budget: Budget) -> Result<DivisibilityResult> {
        let l = s.len();
        let finish = |n: i64, y: PathWord, complete: bool| DivisibilityResult {
            max_n: n,
            root: self.reduced(&self.conj_path(c, &y)),
            bound_used: DivBound::ClBound { cl: l },
            complete,
        };
        let mut complete = true;
        for n in (2..=l).rev().filter(|n| l.is_multiple_of(*n)) {
            let m = l / n;
            if (m..l).any(|i| s.edges[i] != s.edges[i - m]) {
                continue;
            }
            match self.root_search(s, m, n as i64, budget) {
                Some(y) => return Ok(finish(n as i64, y, complete)),
                None => complete = false,
            }
        }
        Ok(finish(1, s.clone(), complete))
    }

    fn root_search(&self, s: &PathWord, m: usize, n: i64, budget: Budget) -> Option<PathWord> {
        let v = s.start;
        let vg = self.vertex(v);
        let e1b = self.bar(s.edges[0]);
        let g0_inv = vg.inv(&s.elems[0]);
        let r = budget.search as i64;
        let mut box_pts: Vec<[i64; 2]> = (-r..=r).flat_map(|a| (-r..=r).map(move |b| [a, b])).collect();
        box_pts.sort_by_key(|h| h[0].abs() + h[1].abs());
        for h in box_pts {
            let z = vg.mul3(&s.elems[m], &self.apply_edge_map(e1b, h), &g0_inv);
            let mut elems = s.elems[..m].to_vec();
            elems.push(z);
            let y = PathWord { start: v, elems, edges: s.edges[..m].to_vec() };
            if self.eq(&self.pow(&y, n).expect("loop"), s) {
                return Some(y);
            }
        }
        None
    }
}
