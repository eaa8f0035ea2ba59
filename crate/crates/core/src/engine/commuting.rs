use serde::{Deserialize, Serialize};

use super::Budget;
use crate::backends::{Backend, VertexElem};
use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::VertexId;
use crate::path::PathWord;

/// Where a commuting pair lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommuteClass {
    /// `x = z^a`, `y = z^b`.
    CyclicPair { z: PathWord, exps: (i64, i64) },
    /// `conj⁻¹·x·conj` and `conj⁻¹·y·conj` lie in torus `torus` of `vertex`.
    TorusCase { vertex: VertexId, torus: usize, conj: PathWord },
    /// Both lie in `conj·G_vertex·conj⁻¹` for a Seifert vertex.
    SeifertCase { vertex: VertexId, conj: PathWord },
}

/// How the classification was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifyRoute {
    /// Both hyperbolic: they share an axis and a primitive root.
    SharedAxis,
    /// Both elliptic: a common fixed vertex found `steps` edges from the first one's vertex.
    CommonVertex { steps: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommuteResult {
    pub class: CommuteClass,
    pub route: ClassifyRoute,
}

impl GraphOfGroups {
    /// Classifies a commuting pair of nontrivial loops.
    pub fn classify_commuting(&self, x: &PathWord, y: &PathWord, budget: Budget) -> Result<CommuteResult> {
        self.check_nontrivial_loop(x)?;
        self.check_nontrivial_loop(y)?;
        if !self.commutes(x, y)? {
            return Err(Error::NotCommuting);
        }
        match (self.elliptic_form(x)?, self.elliptic_form(y)?) {
            (None, None) => self.classify_hyperbolic(x, y, budget),
            (Some(fx), Some(_)) => {
                let x0 = self.vertex_path(fx.vertex, fx.elem.clone());
                let yv = self.reduced(&self.cat(&self.cat(&self.invert(&fx.conj), y), &fx.conj));
                let (_, cy) = self.cyclic_reduce(&yv)?;
                let cy = self.reduced(&cy);
                for j in 0..=cy.len() {
                    let mut p = PathWord { start: cy.start, elems: cy.elems[..j].to_vec(), edges: cy.edges[..j].to_vec() };
                    let u = self.end(&p);
                    p.elems.push(self.vertex(u).identity());
                    if j == 0 {
                        p = self.identity_path(cy.start);
                    }
                    let (Some(x1), Some(y1)) = (self.pull_back(&p, &x0), self.pull_back(&p, &yv)) else { continue };
                    let conj = self.reduced(&self.cat(&fx.conj, &p));
                    let class = self.classify_in_vertex(u, &x1, &y1, conj, budget)?;
                    return Ok(CommuteResult { class, route: ClassifyRoute::CommonVertex { steps: j } });
                }
                Err(Error::Invalid("commuting elliptic elements without a common fixed vertex".into()))
            }
            _ => Err(Error::Invalid(
                "an elliptic element commutes with a hyperbolic one; the splitting is not a JSJ decomposition".into(),
            )),
        }
    }

    fn classify_hyperbolic(&self, x: &PathWord, y: &PathWord, budget: Budget) -> Result<CommuteResult> {
        let d = self.max_divisibility(x, budget)?;
        let lz = self.cl(&d.root)? as i64;
        let ly = self.cl(y)? as i64;
        if ly % lz == 0 {
            for b in [ly / lz, -ly / lz] {
                if self.eq(&self.pow(&d.root, b)?, y) {
                    let class = CommuteClass::CyclicPair { z: d.root, exps: (d.max_n, b) };
                    return Ok(CommuteResult { class, route: ClassifyRoute::SharedAxis });
                }
            }
        }
        if d.complete {
            Err(Error::Invalid("centralizer of a hyperbolic element is not cyclic".into()))
        } else {
            Err(Error::SearchExhausted("no common root found for the hyperbolic pair".into()))
        }
    }

    fn classify_in_vertex(
        &self,
        u: VertexId,
        x: &VertexElem,
        y: &VertexElem,
        conj: PathWord,
        budget: Budget,
    ) -> Result<CommuteClass> {
        let vg = self.vertex(u);
        let pick = if vg.fiber_exponent(x).is_some() { y } else { x };
        for k in 0..vg.tori.len() {
            let Some(b) = vg.conj_into_torus(k, pick, budget.search)? else { continue };
            let inside = |g: &VertexElem| vg.membership(k, &vg.mul3(&vg.inv(&b), g, &b)).is_some();
            if inside(x) && inside(y) {
                let step = self.vertex_path(u, b);
                return Ok(CommuteClass::TorusCase { vertex: u, torus: k, conj: self.cat(&conj, &step) });
            }
        }
        match &vg.backend {
            Backend::Seifert(_) => Ok(CommuteClass::SeifertCase { vertex: u, conj }),
            Backend::Kleinian(_) => {
                let md = vg.max_divisor(x, budget.search)?;
                match (vg.cyclic_exponent(&md.root, x), vg.cyclic_exponent(&md.root, y)) {
                    (Some(a), Some(b)) => {
                        let z = self.conj_path(&conj, &self.vertex_path(u, md.root));
                        Ok(CommuteClass::CyclicPair { z: self.reduced(&z), exps: (a, b) })
                    }
                    _ => Err(Error::SearchExhausted("commuting loxodromics without a common root within the budget".into())),
                }
            }
            Backend::FreeAbelian(_) => {
                Err(Error::Unsupported(format!("{}: commuting pair outside every declared torus", vg.name)))
            }
        }
    }

    /// Independent check of a classification by powers and memberships.
    pub fn check_commute_class(&self, x: &PathWord, y: &PathWord, class: &CommuteClass) -> bool {
        match class {
            CommuteClass::CyclicPair { z, exps } => {
                self.pow(z, exps.0).is_ok_and(|p| self.eq(&p, x)) && self.pow(z, exps.1).is_ok_and(|p| self.eq(&p, y))
            }
            CommuteClass::TorusCase { vertex, torus, conj } => [x, y].iter().all(|g| {
                self.end(conj) == *vertex
                    && self.pull_back(conj, g).is_some_and(|h| self.vertex(*vertex).membership(*torus, &h).is_some())
            }),
            CommuteClass::SeifertCase { vertex, conj } => {
                self.end(conj) == *vertex
                    && self.vertex(*vertex).kind().is_seifert()
                    && [x, y].iter().all(|g| self.pull_back(conj, g).is_some())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_path;
    use crate::presets::load_preset;

    fn classify(preset: &str, x: &str, y: &str) -> CommuteResult {
        let g = load_preset(preset).unwrap();
        let (x, y) = (parse_path(&g, x).unwrap(), parse_path(&g, y).unwrap());
        let r = g.classify_commuting(&x, &y, Budget::default()).unwrap();
        assert!(g.check_commute_class(&x, &y, &r.class), "{r:?}");
        r
    }

    #[test]
    fn fiber_and_cone_generator() {
        assert!(matches!(classify("trefoil", "h", "q1").class, CommuteClass::SeifertCase { .. }));
    }

    #[test]
    fn peripheral_pair_in_mixed() {
        let r = classify("mixed", "x", "x y x y^-1 x^-1 y^-1 x y");
        assert!(matches!(r.class, CommuteClass::TorusCase { vertex: 1, torus: 0, .. }));
    }

    #[test]
    fn torus_across_an_edge() {
        // `y` at the cusp and the longitude are glued into the trefoil torus.
        let r = classify("mixed", "y", "x y x^-1 y^-1 x^-1 y x");
        assert!(matches!(r.class, CommuteClass::TorusCase { .. }));
    }

    #[test]
    fn hyperbolic_powers_share_a_root() {
        let r = classify("hnn_bundle", "1 ; t ; x1 ; t ; x1", "1 ; t ; x1 ; t ; x1 ; t ; x1");
        assert_eq!(r.route, ClassifyRoute::SharedAxis);
        assert!(matches!(r.class, CommuteClass::CyclicPair { exps: (2, 3), .. }));
    }

    #[test]
    fn conjugated_pair_needs_a_walk() {
        let r = classify("graph_manifold", "x2 ; e ; y2 ; e^-1 ; x2^-1", "x2 ; e ; k ; e^-1 ; x2^-1");
        assert!(matches!(r.class, CommuteClass::TorusCase { vertex: 1, .. }));
        assert_eq!(r.route, ClassifyRoute::CommonVertex { steps: 0 });
        let r = classify("graph_manifold", "x2 ; e ; y1 y2 ; e^-1 ; x2^-1", "x2 ; e ; k^2 ; e^-1 ; x2^-1");
        assert!(matches!(r.class, CommuteClass::TorusCase { vertex: 1, torus: 2, .. }));
        let r = classify("graph_manifold", "h", "x1 ; e ; y1^2 ; e^-1 ; x1^-1");
        assert!(matches!(r.class, CommuteClass::TorusCase { vertex: 0, .. }), "{r:?}");
    }

    #[test]
    fn non_commuting_rejected() {
        let g = load_preset("trefoil").unwrap();
        let (x, y) = (parse_path(&g, "q1").unwrap(), parse_path(&g, "q2").unwrap());
        assert_eq!(g.classify_commuting(&x, &y, Budget::default()).unwrap_err(), Error::NotCommuting);
    }
}
