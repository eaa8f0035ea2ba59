use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jsj_bench::cases;
use jsj_core::oracle::enumerate_elements;
use jsj_core::presets::load_preset;
use jsj_core::Budget;

fn engine(c: &mut Criterion) {
    let budget = Budget::default();
    let cases = cases();
    let mut g = c.benchmark_group("engine");
    for case in &cases {
        g.bench_with_input(BenchmarkId::new("normal_form", case.name), case, |b, k| b.iter(|| k.gog.normal_form(&k.word)));
        g.bench_with_input(BenchmarkId::new("max_divisibility", case.name), case, |b, k| {
            b.iter(|| k.gog.max_divisibility(&k.word, budget))
        });
        g.bench_with_input(BenchmarkId::new("classify", case.name), case, |b, k| {
            b.iter(|| k.gog.classify_commuting(&k.word, &k.partner, budget))
        });
        g.bench_with_input(BenchmarkId::new("centralizer", case.name), case, |b, k| b.iter(|| k.gog.centralizer(&k.word, budget)));
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for name in ["trefoil", "hnn_bundle"] {
        let gog = load_preset(name).unwrap();
        g.bench_function(BenchmarkId::new("length_4", name), |b| b.iter(|| enumerate_elements(&gog, 4)));
    }
    g.finish();
}

criterion_group!(benches, engine, enumeration);
criterion_main!(benches);
