//! Query evaluation: parses a query, runs the engine and packages the answer with a certificate.

use serde_json::json;
use thiserror::Error;

use crate::cert::{CertificateDoc, Claim};
use crate::dsl::{build_path, parse_query_ast, ParseError, PathAst, QueryAst};
use crate::engine::{Budget, CentralizerDesc, CommuteClass, MalnormalCertificate};
use crate::error::Error;
use crate::gog::{validate_jsj, GraphOfGroups};
use crate::path::PathWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Engine(#[from] Error),
}

impl QueryError {
    pub fn is_budget(&self) -> bool {
        matches!(self, QueryError::Engine(e) if e.is_budget())
    }
}

type QResult<T> = Result<T, QueryError>;

/// Parses and evaluates one query against `gog`.
pub fn run_query(gog: &GraphOfGroups, query: &str, budget: Budget) -> QResult<CertificateDoc> {
    let ast = parse_query_ast(query.as_bytes())?;
    let lp = |p: &PathAst| -> QResult<PathWord> {
        let w = build_path(gog, p)?;
        gog.check_path(&w)?;
        if gog.is_loop(&w) && w.start != gog.base {
            Ok(gog.rebase(&w)?)
        } else {
            Ok(w)
        }
    };
    let mut doc = match &ast {
        QueryAst::Reduce(p) => {
            let w = build_path(gog, p)?;
            gog.check_path(&w)?;
            certify_reduce(gog, &w, budget)
        }
        QueryAst::Equal(p, q) => certify_equal(gog, &lp(p)?, &lp(q)?, budget)?,
        QueryAst::Commute(p, q) => certify_commute(gog, &lp(p)?, &lp(q)?, budget)?,
        QueryAst::Classify(p, q) => certify_classify(gog, &lp(p)?, &lp(q)?, budget)?,
        QueryAst::Centralizer(p) => certify_centralizer(gog, &lp(p)?, budget)?,
        QueryAst::Divisibility(p) => certify_divisibility(gog, &lp(p)?, budget)?,
        QueryAst::Malnormal { vertex, torus, g, x } => {
            let v = gog.graph.vertex_by_name(&vertex.text).ok_or_else(|| {
                QueryError::Parse(ParseError::new(vertex.pos, format!("unknown vertex `{}`", vertex.text)))
            })?;
            certify_malnormal(gog, v, torus.0, &lp(g)?, &lp(x)?, budget)?
        }
        QueryAst::ConjClass(p) => certify_conjclass(gog, &lp(p)?, 5, budget)?,
        QueryAst::Validate => {
            let r = validate_jsj(gog);
            CertificateDoc::new("", json!({ "valid": r.is_valid(), "violations": r.violations }), budget)
        }
    };
    doc.query = query.trim().to_string();
    Ok(doc)
}

fn loops(gog: &GraphOfGroups, ps: &[&PathWord]) -> Result<(), Error> {
    for p in ps {
        if !gog.is_loop(p) {
            return Err(Error::NotALoop { start: p.start, end: gog.end(p) });
        }
        if p.start != ps[0].start {
            return Err(Error::BaseMismatch(ps[0].start, p.start));
        }
    }
    Ok(())
}

pub fn certify_reduce(gog: &GraphOfGroups, p: &PathWord, budget: Budget) -> CertificateDoc {
    let (out, claim) = gog.claim_reduction(p);
    let f = gog.format_path(&out);
    let mut doc = CertificateDoc::new(format!("reduce({})", gog.format_path(p)), json!({ "reduced": f, "length": out.len() }), budget);
    doc.claims.push(claim);
    doc.claims.push(Claim::Reduced { path: f });
    doc
}

pub fn certify_equal(gog: &GraphOfGroups, p: &PathWord, q: &PathWord, budget: Budget) -> Result<CertificateDoc, Error> {
    loops(gog, &[p, q])?;
    let (eq, claim) = gog.claim_compare(p, q);
    let mut doc = CertificateDoc::new(format!("equal({}, {})", gog.format_path(p), gog.format_path(q)), json!({ "equal": eq }), budget);
    doc.claims.push(claim);
    Ok(doc)
}

pub fn certify_commute(gog: &GraphOfGroups, x: &PathWord, y: &PathWord, budget: Budget) -> Result<CertificateDoc, Error> {
    loops(gog, &[x, y])?;
    let (eq, claim) = gog.claim_compare(&gog.cat(x, y), &gog.cat(y, x));
    let claim = if eq { gog.claim_commute(x, y) } else { claim };
    let mut doc =
        CertificateDoc::new(format!("commute({}, {})", gog.format_path(x), gog.format_path(y)), json!({ "commute": eq }), budget);
    doc.claims.push(claim);
    Ok(doc)
}

pub fn certify_classify(gog: &GraphOfGroups, x: &PathWord, y: &PathWord, budget: Budget) -> Result<CertificateDoc, Error> {
    loops(gog, &[x, y])?;
    let r = gog.classify_commuting(x, y, budget)?;
    let mut claims = vec![gog.claim_commute(x, y)];
    let answer = match &r.class {
        CommuteClass::CyclicPair { z, exps } => {
            claims.push(gog.claim_power(z, exps.0, x));
            claims.push(gog.claim_power(z, exps.1, y));
            json!({ "class": "cyclic_pair", "z": gog.format_path(z), "exps": [exps.0, exps.1] })
        }
        CommuteClass::TorusCase { vertex, torus, conj } => {
            for g in [x, y] {
                let (out, c) = gog.claim_conjugate(conj, g);
                claims.push(c);
                claims.push(gog.claim_torus(*vertex, *torus, &out.elems[0]));
            }
            json!({ "class": "torus", "vertex": gog.vertex(*vertex).name, "torus": torus, "conj": gog.format_path(conj) })
        }
        CommuteClass::SeifertCase { vertex, conj } => {
            claims.extend([x, y].map(|g| gog.claim_conjugate(conj, g).1));
            json!({ "class": "seifert", "vertex": gog.vertex(*vertex).name, "conj": gog.format_path(conj) })
        }
    };
    let mut answer = answer;
    answer["route"] = serde_json::to_value(r.route).expect("route serializes");
    let mut doc = CertificateDoc::new(format!("classify({}, {})", gog.format_path(x), gog.format_path(y)), answer, budget);
    doc.claims = claims;
    Ok(doc)
}

pub fn certify_centralizer(gog: &GraphOfGroups, g: &PathWord, budget: Budget) -> Result<CertificateDoc, Error> {
    loops(gog, &[g])?;
    let d = gog.centralizer(g, budget)?;
    let gens = gog.centralizer_generators(&d);
    let mut claims: Vec<Claim> = gens.iter().map(|z| gog.claim_commute(g, z)).collect();
    let gen_text: Vec<String> = gens.iter().map(|z| gog.format_path(z)).collect();
    let mut notes = vec![];
    let answer = match &d {
        CentralizerDesc::Cyclic { generator, primitivity_verified } => {
            let n = gog.max_divisibility(g, budget)?;
            claims.push(gog.claim_power(&n.root, n.max_n, g));
            if !primitivity_verified {
                notes.push("primitivity of the generator not proven within the budget".to_string());
            }
            json!({ "kind": "cyclic", "generator": gog.format_path(generator), "primitivity_verified": primitivity_verified })
        }
        CentralizerDesc::ConjugateTorus { vertex, torus, conj } => {
            let (out, c) = gog.claim_conjugate(conj, g);
            claims.push(c);
            claims.push(gog.claim_torus(*vertex, *torus, &out.elems[0]));
            json!({ "kind": "conjugate_torus", "vertex": gog.vertex(*vertex).name, "torus": torus, "conj": gog.format_path(conj) })
        }
        CentralizerDesc::ConjugateSeifertCentralizer { vertex, conj, .. } => {
            claims.push(gog.claim_conjugate(conj, g).1);
            json!({ "kind": "conjugate_seifert_centralizer", "vertex": gog.vertex(*vertex).name, "conj": gog.format_path(conj) })
        }
        CentralizerDesc::WholeVertex { vertex, conj } => {
            claims.push(gog.claim_conjugate(conj, g).1);
            json!({ "kind": "whole_vertex", "vertex": gog.vertex(*vertex).name, "conj": gog.format_path(conj) })
        }
    };
    let mut answer = answer;
    answer["generators"] = json!(gen_text);
    let mut doc = CertificateDoc::new(format!("centralizer({})", gog.format_path(g)), answer, budget);
    doc.claims = claims;
    for n in notes {
        doc.incomplete(n);
    }
    Ok(doc)
}

pub fn certify_divisibility(gog: &GraphOfGroups, x: &PathWord, budget: Budget) -> Result<CertificateDoc, Error> {
    loops(gog, &[x])?;
    let r = gog.max_divisibility(x, budget)?;
    let answer = json!({
        "max_n": r.max_n,
        "root": gog.format_path(&r.root),
        "bound_used": r.bound_used,
        "bound_holds": r.bound_holds(),
    });
    let mut doc = CertificateDoc::new(format!("divisibility({})", gog.format_path(x)), answer, budget);
    doc.claims.push(gog.claim_power(&r.root, r.max_n, x));
    if !r.complete {
        doc.incomplete("a larger root could not be ruled out within the budget; max_n is a verified lower bound");
    }
    Ok(doc)
}

pub fn certify_malnormal(
    gog: &GraphOfGroups,
    v: usize,
    k: usize,
    g: &PathWord,
    x: &PathWord,
    budget: Budget,
) -> Result<CertificateDoc, Error> {
    let c = gog.malnormal_peripheral_check(v, k, g, x, budget)?;
    let gamma = &gog.base_paths[v];
    let mut claims = vec![];
    let (x0, cx) = gog.claim_conjugate(gamma, x);
    claims.push(cx);
    claims.push(gog.claim_torus(v, k, &x0.elems[0]));
    let (g0, cg) = gog.claim_conjugate(gamma, g);
    claims.push(cg);
    if g0.is_empty() {
        claims.push(gog.claim_torus(v, k, &g0.elems[0]));
    }
    let (out, cc) = gog.claim_conjugate(gamma, &gog.conj_path(g, x));
    claims.push(cc);
    let case = match &c {
        MalnormalCertificate::Vertex { intersection, .. } => {
            claims.push(gog.claim_torus(v, k, &out.elems[0]));
            json!({ "case": "vertex", "intersection": intersection })
        }
        MalnormalCertificate::Reduced { conjugate } => {
            claims.push(Claim::Reduced { path: gog.format_path(&out) });
            json!({ "case": "reduced", "length": conjugate.len() })
        }
    };
    let vn = &gog.vertex(v).name;
    let mut doc = CertificateDoc::new(
        format!("malnormal({vn}.{k}, {}, {})", gog.format_path(g), gog.format_path(x)),
        json!({ "holds": true, "certificate": case }),
        budget,
    );
    doc.claims = claims;
    Ok(doc)
}

pub fn certify_conjclass(gog: &GraphOfGroups, g: &PathWord, n: usize, budget: Budget) -> Result<CertificateDoc, Error> {
    let (inf, w) = gog.conjugacy_class_infinite(g, n, budget)?;
    let mut claims = vec![];
    let mut c = g.clone();
    for ci in &w.conjugates {
        claims.push(gog.claim_compare(&c, ci).1);
        c = gog.conj_path(&w.t, &c);
    }
    for i in 0..w.conjugates.len() {
        for j in 0..i {
            claims.push(gog.claim_compare(&w.conjugates[i], &w.conjugates[j]).1);
        }
    }
    let answer = json!({
        "infinite": inf,
        "t": gog.format_path(&w.t),
        "conjugates": w.conjugates.iter().map(|p| gog.format_path(p)).collect::<Vec<_>>(),
    });
    let mut doc = CertificateDoc::new(format!("conjclass({})", gog.format_path(g)), answer, budget);
    doc.claims = claims;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::verify;
    use crate::presets::load_preset;

    fn run(preset: &str, q: &str) -> CertificateDoc {
        let g = load_preset(preset).unwrap();
        let doc = run_query(&g, q, Budget::default()).unwrap_or_else(|e| panic!("{q}: {e}"));
        let back = CertificateDoc::from_json(&doc.to_json()).unwrap();
        verify(&g, &back).unwrap_or_else(|e| panic!("{q}: {e}"));
        doc
    }

    #[test]
    fn queries_certify() {
        assert_eq!(run("trefoil", "divisibility(h^-1)").answer["max_n"], 3);
        assert_eq!(run("trefoil", "classify(h, q1)").answer["class"], "seifert");
        assert_eq!(run("mixed", "classify(x, x y x y^-1 x^-1 y^-1 x y)").answer["class"], "torus");
        assert_eq!(run("graph_manifold", "commute(h, x1)").answer["commute"], true);
        assert_eq!(run("graph_manifold", "commute(x2, x1)").answer["commute"], false);
        assert_eq!(run("hnn_bundle", "equal(1 ; t ; x2 ; t^-1 ; 1, h)").answer["equal"], true);
        assert_eq!(run("hnn_bundle", "reduce(1 ; t ; x2 ; t^-1 ; 1)").answer["length"], 0);
        assert_eq!(run("fig8", "centralizer(x^2)").answer["kind"], "conjugate_torus");
        assert_eq!(run("mixed", "malnormal(W.0, y x ; e^-1 ; q1 ; e ; 1, x)").answer["holds"], true);
        assert_eq!(run("fig8", "malnormal(F.0, y, x^2)").answer["certificate"]["case"], "vertex");
        assert_eq!(run("mixed", "conjclass(x)").answer["infinite"], true);
        assert_eq!(run("thickened_torus", "validate").answer["valid"], true);
    }

    #[test]
    fn non_base_loops_are_rebased() {
        let doc = run("mixed", "divisibility(@T: h)");
        assert_eq!(doc.answer["max_n"], 3);
    }

    #[test]
    fn tampered_certificate_fails() {
        let g = load_preset("trefoil").unwrap();
        let mut doc = run_query(&g, "divisibility(h^-1)", Budget::default()).unwrap();
        if let Claim::Power { exponent, .. } = &mut doc.claims[0] {
            *exponent = 2;
        }
        assert!(verify(&g, &doc).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let g = load_preset("trefoil").unwrap();
        let e = run_query(&g, "divisibility(zz)", Budget::default()).unwrap_err();
        assert!(matches!(e, QueryError::Parse(p) if p.pos.col == 14));
    }
}
