//! Text format for graphs of groups and queries.
//!
//! ```text
//! file     = { vertex | edge | base } ;
//! vertex   = "vertex" IDENT ":" kind "{" { item } "}" ;
//! kind     = "free_abelian" | "circle_bundle" | "cone_sfs" | "kleinian" ;
//! item     = "gen" IDENT [ "=" qmatrix ] | "free" IDENT | "cone" IDENT INT INT
//!          | "fiber" IDENT | "ring" IDENT INT INT | "relation" word "=" word
//!          | "torus" word "," word ;
//! edge     = "edge" IDENT ":" IDENT "." INT matrix "->" IDENT "." INT matrix ;
//! base     = "base" IDENT ;
//! matrix   = "[" "[" int "," int "]" "," "[" int "," int "]" "]" ;
//! qmatrix  = "[" "[" qint "," qint "]" "," "[" qint "," qint "]" "]" ;
//! qint     = [ "-" ] term { ( "+" | "-" ) term } ;   term = INT | [ INT ] RINGSYM ;
//! word     = "1" | atom { atom } ;                    atom = IDENT [ "^" int ] ;
//! int      = [ "-" ] INT ;
//! path     = [ "@" IDENT ":" ] word { ";" IDENT [ "^" "-1" ] ";" word } ;
//! query    = "reduce" "(" path ")" | "equal" "(" path "," path ")"
//!          | "commute" "(" path "," path ")" | "classify" "(" path "," path ")"
//!          | "centralizer" "(" path ")" | "divisibility" "(" path ")"
//!          | "malnormal" "(" IDENT "." INT "," path "," path ")"
//!          | "conjclass" "(" path ")" | "validate" ;
//! ```
//!
//! In `edge e : A.i M -> B.j N`, `M` is `φ_ē` into torus `i` of `A = o(e)` and `N` is `φ_e`
//! into torus `j` of `B = t(e)`. `#` starts a line comment.

pub mod build;
pub mod lexer;
pub mod parser;

use std::fmt::Write as _;

pub use build::{build_manifold, build_path};
pub use lexer::{ParseError, Pos};
pub use parser::{parse_manifold_ast, parse_path_ast, parse_query_ast, PathAst, QueryAst};

use crate::arith::Mat2;
use crate::backends::{Backend, VertexGroup};
use crate::gog::GraphOfGroups;
use crate::path::PathWord;
use crate::quadint::{write_quad, QMat};

pub fn parse_manifold(bytes: &[u8]) -> Result<GraphOfGroups, ParseError> {
    build_manifold(&parse_manifold_ast(bytes)?)
}

pub fn parse_path(gog: &GraphOfGroups, text: &str) -> Result<PathWord, ParseError> {
    build_path(gog, &parse_path_ast(text.as_bytes())?)
}

fn fmt_mat2(m: &Mat2) -> String {
    let m = m.0;
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

fn fmt_qmat(m: &QMat, sym: &str) -> String {
    let mut s = String::from("[[");
    for (i, x) in m.entries().iter().enumerate() {
        if i == 2 {
            s.push_str("], [");
        } else if i > 0 {
            s.push_str(", ");
        }
        let _ = write_quad(&mut s, *x, sym);
    }
    s.push_str("]]");
    s
}

fn fmt_word(names: &[String], w: &[(usize, i64)]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&(i, e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_vertex(out: &mut String, vg: &VertexGroup) {
    let kind = match vg.kind() {
        crate::Kind::FreeAbelian => "free_abelian",
        crate::Kind::CircleBundle => "circle_bundle",
        crate::Kind::ConeSfs => "cone_sfs",
        crate::Kind::Kleinian => "kleinian",
    };
    let _ = writeln!(out, "vertex {} : {kind} {{", vg.name);
    match &vg.backend {
        Backend::FreeAbelian(g) => {
            for n in &g.gens {
                let _ = writeln!(out, "  gen {n}");
            }
        }
        Backend::Seifert(g) => {
            for f in &g.factors {
                let _ = match f.order {
                    None => writeln!(out, "  free {}", f.name),
                    Some(a) => writeln!(out, "  cone {} {a} {}", f.name, f.beta),
                };
            }
            let _ = writeln!(out, "  fiber {}", g.fiber_name);
        }
        Backend::Kleinian(g) => {
            let _ = writeln!(out, "  ring {} {} {}", g.ring_sym, g.ring.p, g.ring.q);
            for (n, m) in &g.gens {
                let _ = writeln!(out, "  gen {n} = {}", fmt_qmat(m, &g.ring_sym));
            }
            let names: Vec<String> = g.gens.iter().map(|(n, _)| n.clone()).collect();
            for (l, r) in &g.relations {
                let _ = writeln!(out, "  relation {} = {}", fmt_word(&names, l), fmt_word(&names, r));
            }
        }
    }
    for t in &vg.tori {
        let _ = writeln!(out, "  torus {}, {}", vg.format(&t.basis[0]), vg.format(&t.basis[1]));
    }
    out.push_str("}\n");
}

/// Renders a graph of groups in the text format; parsing the output rebuilds it.
pub fn serialize(gog: &GraphOfGroups) -> String {
    let mut out = String::new();
    for vg in &gog.vertices {
        write_vertex(&mut out, vg);
    }
    for e in gog.edge_pairs() {
        let mb = &gog.edge_maps[gog.bar(e)];
        let m = &gog.edge_maps[e];
        let _ = writeln!(
            out,
            "edge {} : {}.{} {} -> {}.{} {}",
            gog.edge_name(e),
            gog.vertex(mb.target_vertex).name,
            mb.target_torus,
            fmt_mat2(&mb.matrix),
            gog.vertex(m.target_vertex).name,
            m.target_torus,
            fmt_mat2(&m.matrix)
        );
    }
    let _ = writeln!(out, "base {}", gog.vertex(gog.base).name);
    out
}
