use jsj_core::dsl::{parse_manifold, parse_path};
use jsj_core::oracle::{
    brute_centralizer_in, brute_commute_table, brute_divisibility, enumerate_elements, random_gog, shrink, RandomParams,
};
use jsj_core::presets::load_preset;
use jsj_core::{validate_jsj, Budget};

#[test]
fn enumeration_has_no_duplicates() {
    let gog = load_preset("hnn_bundle").unwrap();
    let elems = enumerate_elements(&gog, 3).unwrap();
    let mut nfs: Vec<_> = elems.iter().map(|e| gog.normal_form(&e.path)).collect();
    let n = nfs.len();
    nfs.sort_by_key(|p| format!("{p:?}"));
    nfs.dedup();
    assert_eq!(nfs.len(), n);
    assert!(elems.windows(2).all(|w| w[0].complexity <= w[1].complexity));
}

#[test]
fn commute_table_matches_engine() {
    let gog = load_preset("trefoil_fig8").unwrap();
    let (elems, pairs) = brute_commute_table(&gog, 3).unwrap();
    let b = Budget::default();
    for &(i, j) in &pairs {
        let (x, y) = (&elems[i].path, &elems[j].path);
        let r = gog.classify_commuting(x, y, b).unwrap();
        assert!(gog.check_commute_class(x, y, &r.class));
    }
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let listed = pairs.binary_search(&(i, j)).is_ok();
            assert_eq!(listed, gog.commutes(&elems[i].path, &elems[j].path).unwrap(), "{i} {j}");
        }
    }
}

#[test]
fn brute_centralizer_is_inside_engine_centralizer() {
    let gog = load_preset("graph_manifold").unwrap();
    let elems = enumerate_elements(&gog, 3).unwrap();
    for g in elems.iter().take(40) {
        let c = gog.centralizer(&g.path, Budget::default()).unwrap();
        for z in brute_centralizer_in(&gog, &g.path, &elems) {
            assert!(gog.centralizer_contains(&c, &z).unwrap());
        }
    }
}

#[test]
fn brute_divisibility_on_fiber_power() {
    let gog = load_preset("trefoil").unwrap();
    let x = parse_path(&gog, "h^2").unwrap();
    let (n, root) = brute_divisibility(&gog, &x, 4, 12).unwrap();
    assert_eq!(n, 6);
    assert!(gog.eq(&gog.pow(&root, 6).unwrap(), &x));
}

#[test]
fn random_manifolds_are_deterministic_and_valid() {
    let p = RandomParams::default();
    for seed in 0..30 {
        let (g, text) = random_gog(seed, &p).unwrap();
        assert!(validate_jsj(&g).is_valid());
        assert_eq!(random_gog(seed, &p).unwrap().1, text);
    }
}

#[test]
fn shrinking_keeps_failure_and_shrinks() {
    let gog = load_preset("graph_manifold").unwrap();
    let x = parse_path(&gog, "x1 x2^3 ; e ; y1^2 y2 ; e^-1 ; x1 x2 ; e ; y2^-2 ; e^-1 ; h^2").unwrap();
    let fails = |g: &jsj_core::GraphOfGroups, p: &jsj_core::PathWord| g.cl(p).is_ok_and(|l| l >= 2);
    assert!(fails(&gog, &x));
    let ce = shrink(&gog, &x, fails);
    let g2 = parse_manifold(ce.manifold.as_bytes()).unwrap();
    let y = parse_path(&g2, &ce.element).unwrap();
    assert!(fails(&g2, &y));
    assert!(ce.element.len() < gog.format_path(&x).len());
    assert!(ce.to_dsl().contains("# counterexample: "));
}
