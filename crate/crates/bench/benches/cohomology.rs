use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use multinorm_bench::COHOMOLOGY_CASES;
use multinorm_core::cohomology::{cohomology_uncached, cohomology_uncertified};
use multinorm_core::group::named::named;
use multinorm_core::multinorm::verify_multinorm_pair;
use multinorm_core::{Caps, GModule};

fn cohomology(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("cohomology");
    group.sample_size(10);
    for &(name, i) in COHOMOLOGY_CASES {
        let a = GModule::trivial(&named(name).unwrap());
        group.bench_with_input(BenchmarkId::new("homotopy", format!("{name}/{i}")), &a, |b, a| {
            b.iter(|| cohomology_uncached(black_box(a), i, &caps).unwrap())
        });
        if a.group().order() <= 8 {
            group.bench_with_input(BenchmarkId::new("general", format!("{name}/{i}")), &a, |b, a| {
                b.iter(|| cohomology_uncertified(black_box(a), i, &caps).unwrap())
            });
        }
    }
    for name in ["V4xC2", "V4xV4"] {
        let g = named(name).unwrap();
        group.bench_function(BenchmarkId::new("multinorm_pair", name), |b| {
            b.iter(|| verify_multinorm_pair(black_box(&g), None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cohomology);
criterion_main!(benches);
