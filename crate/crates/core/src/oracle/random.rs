use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::parse_manifold;
use crate::error::{Error, Result};
use crate::gog::{validate_jsj, GraphOfGroups};
use crate::presets::preset_source;

#[derive(Debug, Clone, Copy)]
pub struct RandomParams {
    pub max_vertices: usize,
    /// Edges beyond a spanning tree (self-gluings included).
    pub max_extra_edges: usize,
    pub allow_kleinian: bool,
    /// Attempts before giving up on one seed.
    pub max_attempts: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_vertices: 3, max_extra_edges: 1, allow_kleinian: true, max_attempts: 200 }
    }
}

struct VertexText {
    body: String,
    tori: usize,
}

fn kleinian_block(preset: &str, vertex: &str, name: &str) -> VertexText {
    let src = preset_source(preset).expect("shipped preset");
    let start = src.find(&format!("vertex {vertex} :")).expect("vertex block");
    let end = start + src[start..].find("\n}").expect("block end") + 2;
    let block = &src[start..end];
    let tori = block.lines().filter(|l| l.trim_start().starts_with("torus")).count();
    VertexText { body: block.replacen(&format!("vertex {vertex} :"), &format!("vertex {name} :"), 1), tori }
}

fn seifert_block(rng: &mut ChaCha8Rng, name: &str) -> VertexText {
    let mut body = String::new();
    let free = rng.gen_range(1..=3);
    let cones = if free == 1 { rng.gen_range(1..=2) } else { rng.gen_range(0..=1) };
    let kind = if cones > 0 { "cone_sfs" } else { "circle_bundle" };
    let _ = writeln!(body, "vertex {name} : {kind} {{");
    let mut all = vec![];
    for i in 1..=free {
        let _ = writeln!(body, "  free {name}x{i}");
        all.push(format!("{name}x{i}"));
    }
    for i in 1..=cones {
        let alpha: i64 = rng.gen_range(2..=5);
        let beta = loop {
            let b: i64 = rng.gen_range(1..alpha);
            if crate::arith::gcd(alpha, b) == 1 {
                break b;
            }
        };
        let _ = writeln!(body, "  cone {name}q{i} {alpha} {beta}");
        all.push(format!("{name}q{i}"));
    }
    let _ = writeln!(body, "  fiber {name}h");
    for i in 1..=free {
        let _ = writeln!(body, "  torus {name}x{i}, {name}h");
    }
    let _ = writeln!(body, "  torus {}, {name}h", all.join(" "));
    body.push('}');
    VertexText { body, tori: free + 1 }
}

fn unimodular(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(-2..=2);
        let e = if rng.gen_bool(0.5) { [[1, k], [0, 1]] } else { [[1, 0], [k, 1]] };
        m = [
            [m[0][0] * e[0][0] + m[0][1] * e[1][0], m[0][0] * e[0][1] + m[0][1] * e[1][1]],
            [m[1][0] * e[0][0] + m[1][1] * e[1][0], m[1][0] * e[0][1] + m[1][1] * e[1][1]],
        ];
    }
    if rng.gen_bool(0.5) {
        m = [m[1], m[0]];
    }
    m
}

fn fmt_m(m: [[i64; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

fn attempt(rng: &mut ChaCha8Rng, p: &RandomParams) -> Option<String> {
    let n = rng.gen_range(1..=p.max_vertices.max(1));
    let mut verts = vec![];
    for i in 0..n {
        let name = format!("V{i}");
        let v = match rng.gen_range(0..if p.allow_kleinian { 4 } else { 2 }) {
            2 => kleinian_block("fig8", "F", &name),
            3 => kleinian_block("mixed", "W", &name),
            _ => seifert_block(rng, &name),
        };
        verts.push(v);
    }
    let mut free: Vec<Vec<usize>> = verts.iter().map(|v| (0..v.tori).collect()).collect();
    for f in &mut free {
        f.shuffle(rng);
    }
    let mut pairs = vec![];
    for i in 1..n {
        pairs.push((rng.gen_range(0..i), i));
    }
    for _ in 0..rng.gen_range(0..=p.max_extra_edges) {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let mut text: String = verts.iter().map(|v| format!("{}\n", v.body)).collect();
    for (j, (a, b)) in pairs.into_iter().enumerate() {
        let ka = free[a].pop()?;
        let kb = free[b].pop()?;
        let _ = writeln!(text, "edge E{j} : V{a}.{ka} {} -> V{b}.{kb} {}", fmt_m(unimodular(rng)), fmt_m(unimodular(rng)));
    }
    let _ = writeln!(text, "base V{}", rng.gen_range(0..n));
    Some(text)
}

/// A random graph of groups passing [`validate_jsj`], with its text form. Candidates with a
/// fiber-matched gluing (or any other violation) are rejected and resampled.
pub fn random_gog(seed: u64, params: &RandomParams) -> Result<(GraphOfGroups, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..params.max_attempts {
        let Some(text) = attempt(&mut rng, params) else { continue };
        let gog = parse_manifold(text.as_bytes()).map_err(|e| Error::Invalid(format!("generated text: {e}")))?;
        if validate_jsj(&gog).is_valid() {
            return Ok((gog, text));
        }
    }
    Err(Error::SearchExhausted(format!("seed {seed}: no valid instance in {} attempts", params.max_attempts)))
}
