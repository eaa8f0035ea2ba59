use super::Budget;
use crate::backends::{IntersectionDesc, Kind, VertexElem};
use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::VertexId;
use crate::path::PathWord;

/// Evidence that `g·x·g⁻¹ ∉ π₁(S)` for a boundary torus `S` of a hyperbolic vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MalnormalCertificate {
    /// `g` lies in the vertex group (as `g0` after moving to the vertex); `y = g0·x·g0⁻¹` is
    /// outside the torus, and the torus meets its `g0`-conjugate trivially.
    Vertex { g0: VertexElem, y: VertexElem, intersection: IntersectionDesc },
    /// `g` has positive length; `conjugate` is the reduced path `p·x·p⁻¹` at the vertex, of
    /// positive length, so it is not in the vertex group at all.
    Reduced { conjugate: PathWord },
}

impl GraphOfGroups {
    /// Checks `g·x·g⁻¹ ∉ π₁(S)` for the free torus `S = (v, k)` of a Kleinian vertex, with `x` a
    /// nontrivial element of `π₁(S)` and `g ∉ π₁(S)`, all as loops at the base vertex.
    pub fn malnormal_peripheral_check(
        &self,
        v: VertexId,
        k: usize,
        g: &PathWord,
        x: &PathWord,
        _budget: Budget,
    ) -> Result<MalnormalCertificate> {
        if v >= self.vertices.len() || k >= self.vertex(v).tori.len() {
            return Err(Error::Precondition(format!("no torus {k} at vertex {v}")));
        }
        let vg = self.vertex(v);
        if vg.kind() != Kind::Kleinian || self.torus_is_glued(v, k) {
            return Err(Error::Precondition("S must be a boundary torus of a hyperbolic vertex".into()));
        }
        self.check_nontrivial_loop(x)?;
        self.check_path(g)?;
        if g.start != self.base || x.start != self.base {
            return Err(Error::BaseMismatch(g.start, x.start));
        }
        let gamma = &self.base_paths[v];
        let x0 = self
            .pull_back(gamma, x)
            .filter(|x0| vg.membership(k, x0).is_some())
            .ok_or_else(|| Error::Precondition("x is not in π₁(S)".into()))?;
        let gv = self.reduced(&self.cat(&self.cat(&self.invert(gamma), g), gamma));
        if gv.is_empty() {
            let g0 = gv.elems[0].clone();
            if vg.membership(k, &g0).is_some() {
                return Err(Error::Precondition("g is in π₁(S)".into()));
            }
            let y = vg.conj(&g0, &x0);
            if vg.membership(k, &y).is_some() {
                return Err(Error::Invalid(format!("{}: peripheral subgroup is not malnormal", vg.name)));
            }
            let intersection = vg.torus_intersection(k, &g0, k)?;
            return Ok(MalnormalCertificate::Vertex { g0, y, intersection });
        }
        let conjugate = self.conj_path(&gv, &self.vertex_path(v, x0));
        if !self.is_reduced(&conjugate) {
            return Err(Error::Invalid("conjugate of a peripheral element re-enters an edge group".into()));
        }
        Ok(MalnormalCertificate::Reduced { conjugate })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_path;
    use crate::presets::load_preset;

    #[test]
    fn fig8_vertex_case() {
        let g = load_preset("fig8").unwrap();
        let (a, x) = (parse_path(&g, "y").unwrap(), parse_path(&g, "x^2").unwrap());
        let c = g.malnormal_peripheral_check(0, 0, &a, &x, Budget::default()).unwrap();
        assert!(matches!(c, MalnormalCertificate::Vertex { intersection: IntersectionDesc::Trivial, .. }));
        let e = g.malnormal_peripheral_check(0, 0, &x, &x, Budget::default()).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
    }

    #[test]
    fn mixed_reduced_case() {
        let g = load_preset("mixed").unwrap();
        let a = parse_path(&g, "y x ; e^-1 ; q1 ; e ; 1").unwrap();
        let x = parse_path(&g, "x").unwrap();
        let c = g.malnormal_peripheral_check(1, 0, &a, &x, Budget::default()).unwrap();
        let MalnormalCertificate::Reduced { conjugate } = c else { panic!() };
        assert_eq!(conjugate.len(), 4);
        assert!(g.eq(&conjugate, &g.conj_path(&a, &x)));
        assert!(g.malnormal_peripheral_check(0, 0, &a, &x, Budget::default()).is_err());
    }
}
