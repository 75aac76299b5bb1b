use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, Criterion};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcohom::arrangement::{compute_tables, DEFAULT_SUBSET_CAP};
use qcohom::battery::random_matrix;
use qcohom::exact::{hnf, snf};
use qcohom::io::{load_input, Input};
use qcohom::pattern::generate_pattern;
use qcohom::pipeline::{prepare, Prepared};

fn fixture(name: &str) -> Input {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    load_input(&path).expect("bundled fixture loads")
}

fn prepared(name: &str) -> Prepared {
    prepare(&fixture(name)).expect("bundled fixture prepares")
}

fn normal_forms(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ms: Vec<_> = (0..32).map(|_| random_matrix(&mut rng, 8, 20)).collect();
    c.bench_function("hnf/32 random up to 8x8", |b| b.iter(|| ms.iter().map(|m| hnf(black_box(m))).collect::<Vec<_>>()));
    c.bench_function("snf/32 random up to 8x8", |b| b.iter(|| ms.iter().map(|m| snf(black_box(m))).collect::<Vec<_>>()));
}

fn orbit_tables(c: &mut Criterion) {
    let oct = prepared("octagonal.toml");
    let arr = oct.arrangement.clone().expect("finite arrangement");
    c.bench_function("tables/octagonal", |b| b.iter(|| compute_tables(black_box(&arr), DEFAULT_SUBSET_CAP)));

    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    let ak = prepared("ammann_kramer.toml");
    group.bench_function("invariants/ammann-kramer", |b| b.iter(|| ak.invariants(DEFAULT_SUBSET_CAP).expect("finite")));
    group.bench_function("scheme-to-arrangement/ammann-kramer", |b| {
        let input = fixture("ammann_kramer_scheme.toml");
        b.iter(|| prepare(black_box(&input)).expect("valid scheme"))
    });
    group.finish();
}

fn patterns(c: &mut Criterion) {
    let Input::Scheme(oct) = fixture("octagonal.toml") else { unreachable!("octagonal is a scheme") };
    let r = BigRational::from_integer(6.into());
    c.bench_function("pattern/octagonal R=6", |b| b.iter(|| generate_pattern(&oct, &oct.u, black_box(&r)).expect("pattern")));
}

criterion_group!(benches, normal_forms, orbit_tables, patterns);
criterion_main!(benches);
