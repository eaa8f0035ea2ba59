use std::sync::OnceLock;

use jsj_core::arith::{lattice_rem, Mat2};
use jsj_core::dsl::{parse_manifold, serialize};
use jsj_core::oracle::{enumerate_elements, random_gog, scramble, Element, RandomParams};
use jsj_core::presets::{load_preset, preset_names};
use jsj_core::{verify, Budget, GraphOfGroups};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Corpus {
    gog: GraphOfGroups,
    elems: Vec<Element>,
}

fn corpus() -> &'static [Corpus] {
    static C: OnceLock<Vec<Corpus>> = OnceLock::new();
    C.get_or_init(|| {
        preset_names()
            .into_iter()
            .map(|n| {
                let gog = load_preset(n).unwrap();
                let elems = enumerate_elements(&gog, 4).unwrap();
                Corpus { gog, elems }
            })
            .collect()
    })
}

fn pick(m: &Index, e: &Index) -> (&'static GraphOfGroups, &'static Element) {
    let c = &corpus()[m.index(corpus().len())];
    (&c.gog, &c.elems[e.index(c.elems.len())])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_ignores_detours(m: Index, e: Index, seed: u64, k in 1usize..5) {
        let (gog, x) = pick(&m, &e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = scramble(gog, &x.path, k, &mut rng);
        prop_assert_eq!(gog.normal_form(&y), gog.normal_form(&x.path));
        prop_assert!(gog.eq(&y, &x.path));
    }

    #[test]
    fn reduction_order_does_not_matter(m: Index, e: Index, seed: u64) {
        let (gog, x) = pick(&m, &e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = scramble(gog, &x.path, 3, &mut rng);
        let a = gog.reduce_with(&y, |s| s[rng.gen_range(0..s.len())]);
        let b = gog.reduced(&y);
        prop_assert!(gog.is_reduced(&a));
        prop_assert_eq!(gog.length(&a), gog.length(&b));
        prop_assert_eq!(gog.normal_form(&a), gog.normal_form(&b));
    }

    #[test]
    fn cyclic_length_is_multiplicative(m: Index, e: Index, n in -4i64..=4) {
        let (gog, x) = pick(&m, &e);
        let p = gog.pow(&x.path, n).unwrap();
        let l = gog.cl(&x.path).unwrap();
        if n != 0 && !gog.is_trivial(&p) {
            prop_assert_eq!(gog.cl(&p).unwrap(), n.unsigned_abs() as usize * l);
        }
    }

    #[test]
    fn divisibility_root_is_verified(m: Index, e: Index) {
        let (gog, x) = pick(&m, &e);
        let d = gog.max_divisibility(&x.path, Budget::default()).unwrap();
        prop_assert!(d.max_n >= 1);
        prop_assert!(gog.eq(&gog.pow(&d.root, d.max_n).unwrap(), &x.path));
        prop_assert!(d.bound_holds());
    }

    #[test]
    fn commuting_classification_certifies(m: Index, e: Index, n in 2i64..4) {
        let (gog, x) = pick(&m, &e);
        let y = gog.pow(&x.path, n).unwrap();
        if let Ok(r) = gog.classify_commuting(&x.path, &y, Budget::default()) {
            prop_assert!(gog.check_commute_class(&x.path, &y, &r.class));
        }
    }

    #[test]
    fn centralizer_contains_element(m: Index, e: Index) {
        let (gog, x) = pick(&m, &e);
        let c = gog.centralizer(&x.path, Budget::default()).unwrap();
        prop_assert!(gog.centralizer_contains(&c, &x.path).unwrap());
    }

    #[test]
    fn lattice_remainder_is_canonical(
        a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, d in -9i64..=9,
        v in prop::array::uniform2(-50i64..=50), w in prop::array::uniform2(-5i64..=5),
    ) {
        prop_assume!(a * d - b * c != 0);
        let m = Mat2([[a, b], [c, d]]);
        let (r, z) = lattice_rem(&m, v);
        let mz = m.apply(z);
        prop_assert_eq!([r[0] + mz[0], r[1] + mz[1]], v);
        let mw = m.apply(w);
        let (r2, _) = lattice_rem(&m, [v[0] + mw[0], v[1] + mw[1]]);
        prop_assert_eq!(r2, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn text_format_round_trips(seed in 0u64..10_000) {
        let (gog, text) = random_gog(seed, &RandomParams::default()).unwrap();
        let again = parse_manifold(text.as_bytes()).unwrap();
        prop_assert_eq!(serialize(&again), serialize(&gog));
        let s = serialize(&gog);
        prop_assert_eq!(serialize(&parse_manifold(s.as_bytes()).unwrap()), s);
    }

    #[test]
    fn query_certificates_replay(m: Index, e: Index, f: Index, q in 0usize..4) {
        let (gog, x) = pick(&m, &e);
        let c = &corpus()[m.index(corpus().len())];
        let y = &c.elems[f.index(c.elems.len())];
        let (xs, ys) = (gog.format_path(&x.path), gog.format_path(&y.path));
        let query = match q {
            0 => format!("reduce({xs})"),
            1 => format!("equal({xs}, {ys})"),
            2 => format!("commute({xs}, {ys})"),
            _ => format!("divisibility({xs})"),
        };
        let doc = jsj_core::run_query(gog, &query, Budget::default()).unwrap();
        let back = jsj_core::CertificateDoc::from_json(&doc.to_json()).unwrap();
        prop_assert!(verify(gog, &back).is_ok(), "{}", query);
    }
}
