use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use porc_bench::orbit_workloads;
use porc_core::dvrmod::{AutGroup, FiniteModule};
use porc_core::extcensus::{orbit_count_naive, orbit_count_typed};
use porc_core::oracle::enumerate_lie_rings;
use porc_core::{Caps, Census, DvrQuot, Engine, Partition};

fn orbit_engines(c: &mut Criterion) {
    let caps = Caps::default();
    let mut g = c.benchmark_group("orbit_count");
    for (m, lam, p) in orbit_workloads() {
        let d = [m];
        g.bench_function(format!("naive m={m} λ={lam} p={p}"), |b| {
            b.iter(|| orbit_count_naive(m, &d, black_box(&lam), p, &caps).unwrap())
        });
        g.bench_function(format!("typed m={m} λ={lam} p={p}"), |b| {
            b.iter(|| orbit_count_typed(m, &d, black_box(&lam), p, &caps).unwrap())
        });
    }
    g.finish();
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    for (n, p) in [(4u32, 3u64), (4, 7), (5, 5)] {
        g.bench_function(format!("typed n={n} p={p}"), |b| {
            b.iter(|| {
                Census::new(Engine::Typed, Caps::default())
                    .census(n, black_box(p))
                    .unwrap()
            })
        });
    }
    g.bench_function("oracle n=3 p=3", |b| {
        b.iter(|| enumerate_lie_rings(3, black_box(3), &Caps::default()).unwrap().count())
    });
    g.finish();
}

fn modules(c: &mut Criterion) {
    let caps = Caps::default();
    let lam: Partition = "2,1,1".parse().unwrap();
    let ring = DvrQuot::integers(3, 2).unwrap();
    c.bench_function("aut rows (2,1,1) over Z/9", |b| {
        let g = AutGroup::new(&lam, &ring).unwrap();
        b.iter(|| g.count_by_rows(caps.group_size).unwrap())
    });
    let lam: Partition = "2,2".parse().unwrap();
    let ring = DvrQuot::integers(2, 2).unwrap();
    c.bench_function("hall table (2,2) over Z/4", |b| {
        b.iter(|| {
            FiniteModule::new(ring.clone(), black_box(lam.clone()), caps.module_size)
                .unwrap()
                .hall_table()
                .unwrap()
        })
    });
}

criterion_group!(benches, orbit_engines, census, modules);
criterion_main!(benches);
