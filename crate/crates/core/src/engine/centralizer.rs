use rand::Rng;

use super::Budget;
use crate::backends::VertexCentralizer;
use crate::error::Result;
use crate::gog::GraphOfGroups;
use crate::graph::VertexId;
use crate::path::PathWord;

/// A finite description of `C(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralizerDesc {
    /// `⟨generator⟩`; `primitivity_verified` is false when a larger root could not be ruled out.
    Cyclic { generator: PathWord, primitivity_verified: bool },
    /// `conj·T·conj⁻¹` for torus `torus` of `vertex`.
    ConjugateTorus { vertex: VertexId, torus: usize, conj: PathWord },
    /// `conj·C_{G_vertex}(·)·conj⁻¹` inside a Seifert vertex group.
    ConjugateSeifertCentralizer { vertex: VertexId, conj: PathWord, inner: VertexCentralizer },
    /// `conj·G_vertex·conj⁻¹` for an abelian vertex group.
    WholeVertex { vertex: VertexId, conj: PathWord },
}

impl GraphOfGroups {
    pub fn centralizer(&self, g: &PathWord, budget: Budget) -> Result<CentralizerDesc> {
        self.check_nontrivial_loop(g)?;
        let Some(f) = self.elliptic_form(g)? else {
            let d = self.max_divisibility(g, budget)?;
            return Ok(CentralizerDesc::Cyclic { generator: d.root, primitivity_verified: d.complete });
        };
        let (v, s0, c) = (f.vertex, f.elem, f.conj);
        let vg = self.vertex(v);
        if vg.fiber_exponent(&s0).is_some() {
            return Ok(CentralizerDesc::ConjugateSeifertCentralizer { vertex: v, conj: c, inner: VertexCentralizer::Whole });
        }
        // Fixed edges: `s0` conjugates into an edge torus. Across the edge it is either a
        // fiber power (the whole neighbouring Seifert group centralizes it) or not, and then
        // the fixed tree is that one edge and the centralizer is the edge group.
        for e in (0..self.graph.edges.len()).filter(|&e| self.origin(e) == v) {
            let k = self.edge_maps[self.bar(e)].target_torus;
            let Some(b) = vg.conj_into_torus(k, &s0, budget.search)? else { continue };
            let t = vg.mul3(&vg.inv(&b), &s0, &b);
            let Some(h) = self.edge_preimage(self.bar(e), &t) else { continue };
            let u = self.terminus(e);
            if self.vertex(u).fiber_exponent(&self.apply_edge_map(e, h)).is_some() {
                let step = PathWord { start: v, elems: vec![b, self.vertex(u).identity()], edges: vec![e] };
                let conj = self.reduced(&self.cat(&c, &step));
                return Ok(CentralizerDesc::ConjugateSeifertCentralizer { vertex: u, conj, inner: VertexCentralizer::Whole });
            }
            return Ok(CentralizerDesc::ConjugateTorus { vertex: v, torus: k, conj: self.cat(&c, &self.vertex_path(v, b)) });
        }
        for k in 0..vg.tori.len() {
            if let Some(b) = vg.conj_into_torus(k, &s0, budget.search)? {
                return Ok(CentralizerDesc::ConjugateTorus { vertex: v, torus: k, conj: self.cat(&c, &self.vertex_path(v, b)) });
            }
        }
        Ok(match vg.centralizer(&s0, budget.search)? {
            VertexCentralizer::Whole => CentralizerDesc::WholeVertex { vertex: v, conj: c },
            inner @ VertexCentralizer::Abelian { .. } => {
                CentralizerDesc::ConjugateSeifertCentralizer { vertex: v, conj: c, inner }
            }
            VertexCentralizer::ConjTorus { torus, conj } => {
                CentralizerDesc::ConjugateTorus { vertex: v, torus, conj: self.cat(&c, &self.vertex_path(v, conj)) }
            }
            VertexCentralizer::Cyclic { root, verified } => CentralizerDesc::Cyclic {
                generator: self.reduced(&self.conj_path(&c, &self.vertex_path(v, root))),
                primitivity_verified: verified,
            },
        })
    }

    /// Membership of a loop in a centralizer description.
    pub fn centralizer_contains(&self, desc: &CentralizerDesc, x: &PathWord) -> Result<bool> {
        if self.is_trivial(x) {
            return Ok(true);
        }
        Ok(match desc {
            CentralizerDesc::Cyclic { generator, .. } => match self.elliptic_form(generator)? {
                Some(f) => self
                    .pull_back(&f.conj, x)
                    .is_some_and(|y| self.vertex(f.vertex).cyclic_exponent(&f.elem, &y).is_some()),
                None => {
                    let (lz, lx) = (self.cl(generator)?, self.cl(x)?);
                    lx % lz == 0 && {
                        let n = (lx / lz) as i64;
                        self.eq(&self.pow(generator, n)?, x) || self.eq(&self.pow(generator, -n)?, x)
                    }
                }
            },
            CentralizerDesc::ConjugateTorus { vertex, torus, conj } => {
                self.pull_back(conj, x).is_some_and(|y| self.vertex(*vertex).membership(*torus, &y).is_some())
            }
            CentralizerDesc::ConjugateSeifertCentralizer { vertex, conj, inner } => {
                self.pull_back(conj, x).is_some_and(|y| self.vertex(*vertex).centralizer_contains(inner, &y))
            }
            CentralizerDesc::WholeVertex { conj, .. } => self.pull_back(conj, x).is_some(),
        })
    }

    /// Generators of the described subgroup as loops.
    pub fn centralizer_generators(&self, desc: &CentralizerDesc) -> Vec<PathWord> {
        let lift = |v: VertexId, conj: &PathWord, gens: Vec<crate::VertexElem>| -> Vec<PathWord> {
            gens.into_iter().map(|h| self.conj_path(conj, &self.vertex_path(v, h))).collect()
        };
        match desc {
            CentralizerDesc::Cyclic { generator, .. } => vec![generator.clone()],
            CentralizerDesc::ConjugateTorus { vertex, torus, conj } => {
                lift(*vertex, conj, self.vertex(*vertex).tori[*torus].basis.to_vec())
            }
            CentralizerDesc::ConjugateSeifertCentralizer { vertex, conj, inner } => {
                lift(*vertex, conj, self.vertex(*vertex).centralizer_generators(inner))
            }
            CentralizerDesc::WholeVertex { vertex, conj } => lift(*vertex, conj, self.vertex(*vertex).generators()),
        }
    }

    /// Random products of at most `len` generators (and inverses) of the description.
    pub fn sample_centralizer(&self, desc: &CentralizerDesc, rng: &mut impl Rng, len: usize) -> PathWord {
        let gens = self.centralizer_generators(desc);
        let mut acc = self.identity_path(gens[0].start);
        for _ in 0..rng.gen_range(1..=len) {
            let g = &gens[rng.gen_range(0..gens.len())];
            let g = if rng.gen_bool(0.5) { self.invert(g) } else { g.clone() };
            acc = self.reduced(&self.cat(&acc, &g));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::dsl::parse_path;
    use crate::presets::load_preset;

    fn cent(preset: &str, x: &str) -> (GraphOfGroups, PathWord, CentralizerDesc) {
        let g = load_preset(preset).unwrap();
        let x = parse_path(&g, x).unwrap();
        let d = g.centralizer(&x, Budget::default()).unwrap();
        assert!(g.centralizer_contains(&d, &x).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let y = g.sample_centralizer(&d, &mut rng, 4);
            assert!(g.commutes(&x, &y).unwrap(), "{}", g.format_path(&y));
        }
        (g, x, d)
    }

    #[test]
    fn seifert_fiber_gives_whole_vertex() {
        let (_, _, d) = cent("trefoil", "h^2");
        assert!(matches!(d, CentralizerDesc::ConjugateSeifertCentralizer { inner: VertexCentralizer::Whole, .. }));
    }

    #[test]
    fn fig8_parabolic_gives_peripheral_torus() {
        let (_, _, d) = cent("fig8", "x^3");
        assert!(matches!(d, CentralizerDesc::ConjugateTorus { vertex: 0, torus: 0, .. }));
    }

    #[test]
    fn fig8_loxodromic_is_cyclic() {
        let (g, _, d) = cent("fig8", "x y");
        let CentralizerDesc::Cyclic { primitivity_verified, .. } = d else { panic!("{d:?}") };
        assert!(primitivity_verified);
        assert!(!g.centralizer_contains(&d, &parse_path(&g, "x").unwrap()).unwrap());
    }

    #[test]
    fn cusp_glued_to_fiber_sees_trefoil_group() {
        let (g, _, d) = cent("mixed", "y");
        assert!(matches!(d, CentralizerDesc::ConjugateSeifertCentralizer { vertex: 0, .. }), "{d:?}");
        let q1 = g.embed(0, g.vertex(0).gen_pow(0, 1));
        assert!(g.centralizer_contains(&d, &q1).unwrap());
    }

    #[test]
    fn edge_torus_element() {
        let (_, _, d) = cent("graph_manifold", "x1 h");
        assert!(matches!(d, CentralizerDesc::ConjugateTorus { vertex: 0, torus: 0, .. }), "{d:?}");
    }

    #[test]
    fn hyperbolic_is_cyclic() {
        let (_, _, d) = cent("hnn_bundle", "1 ; t ; x1 ; t ; x1");
        assert!(matches!(d, CentralizerDesc::Cyclic { primitivity_verified: true, .. }));
    }
}
