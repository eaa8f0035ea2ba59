//! Fixed inputs for the engine benchmarks.

use jsj_core::dsl::parse_path;
use jsj_core::presets::load_preset;
use jsj_core::{GraphOfGroups, PathWord};

pub struct Case {
    pub name: &'static str,
    pub gog: GraphOfGroups,
    /// A longish loop, non-reduced on purpose.
    pub word: PathWord,
    /// `word` squared, for the commuting-pair benchmark.
    pub partner: PathWord,
}

const CASES: &[(&str, &str)] = &[
    ("trefoil", "q1 q2 h q2^-1 q1^-1 q1 q2^2 h^3"),
    ("hnn_bundle", "x1 ; t ; x2 x1 ; t ; x1^-1 ; t^-1 ; x1 ; t ; x2 ; t ; h"),
    ("fig8", "x y x^-1 y^-1 x^2 y^-1 x^-1 y"),
    ("graph_manifold", "x2 ; e ; y2 ; e^-1 ; x2^-1 h"),
];

pub fn cases() -> Vec<Case> {
    CASES
        .iter()
        .map(|&(name, w)| {
            let gog = load_preset(name).expect("preset loads");
            let word = parse_path(&gog, w).unwrap_or_else(|e| panic!("{name}: {e}"));
            let partner = gog.pow(&word, 2).expect("loop");
            Case { name, gog, word, partner }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use jsj_core::Budget;

    #[test]
    fn fixtures_are_answerable() {
        for c in cases() {
            let b = Budget::default();
            c.gog.max_divisibility(&c.word, b).unwrap_or_else(|e| panic!("{}: {e}", c.name));
            c.gog.classify_commuting(&c.word, &c.partner, b).unwrap_or_else(|e| panic!("{}: {e}", c.name));
            c.gog.centralizer(&c.word, b).unwrap_or_else(|e| panic!("{}: {e}", c.name));
        }
    }
}
