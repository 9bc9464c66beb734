use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kr_bench::twist_words;
use kr_core::oracle::sl2_cube;
use kr_core::twist::{clasp_tensor_power, close_tangle, homology, reduced_twist_complex};
use kr_core::{Closure, CrossingSign};

fn parallel_homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("parallel_homology");
    for n in [2u32, 3, 4] {
        for (k, w) in twist_words([3, 5, 7]) {
            g.bench_with_input(BenchmarkId::new(format!("n{n}"), k), &w, |b, w| b.iter(|| homology(black_box(w), n).unwrap()));
        }
    }
    g.finish();
}

fn local_vs_cube(c: &mut Criterion) {
    let mut g = c.benchmark_group("n2_local_vs_cube");
    for (k, w) in twist_words([4, 6]) {
        g.bench_with_input(BenchmarkId::new("local", k), &w, |b, w| b.iter(|| homology(black_box(w), 2).unwrap()));
        g.bench_with_input(BenchmarkId::new("cube", k), &w, |b, w| b.iter(|| sl2_cube(black_box(w)).unwrap()));
    }
    g.finish();
}

fn clasp_pipelines(c: &mut Criterion) {
    let mut g = c.benchmark_group("clasp");
    g.sample_size(10);
    for k in [2usize, 3] {
        g.bench_with_input(BenchmarkId::new("raw_n3", k), &k, |b, &k| {
            b.iter(|| {
                let mut c = close_tangle(&clasp_tensor_power(k, 3, CrossingSign::Positive).unwrap(), Closure::Braid).unwrap();
                c.simplify().unwrap();
                c.homology().unwrap()
            })
        });
        g.bench_with_input(BenchmarkId::new("closed_form_n3", k), &k, |b, &k| {
            b.iter(|| {
                let mut c = close_tangle(&reduced_twist_complex(k, 3, CrossingSign::Positive).unwrap(), Closure::Braid).unwrap();
                c.simplify().unwrap();
                c.homology().unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, parallel_homology, local_vs_cube, clasp_pipelines);
criterion_main!(benches);
