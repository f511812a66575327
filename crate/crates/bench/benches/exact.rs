use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use shelstad_bench::{pair, point, system};
use shelstad_core::packets::{verify_identity, Route};
use shelstad_core::Cyclotomic;

fn cyclotomic(c: &mut Criterion) {
    let a = &(&Cyclotomic::root_of_unity(60, 7) + &Cyclotomic::root_of_unity(60, 13)) + &Cyclotomic::from_integer(3);
    let b = &Cyclotomic::root_of_unity(60, 11) - &Cyclotomic::root_of_unity(60, -2);
    c.bench_function("cyclotomic_mul_60", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
    c.bench_function("cyclotomic_inv_60", |bench| bench.iter(|| black_box(&a).inv().unwrap()));
}

fn weyl_groups(c: &mut Criterion) {
    let mut group = c.benchmark_group("weyl_enumeration");
    for name in ["A3", "B4", "D4", "A4"] {
        group.bench_with_input(BenchmarkId::from_parameter(name), name, |bench, name| {
            bench.iter(|| system(name).weyl_group().len())
        });
    }
    group.finish();
}

fn identity(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_identity");
    group.sample_size(20);
    for name in ["sl2R/su2", "su21/su3", "so23/so5", "su22/su4", "so26/so8"] {
        let p = pair(name);
        let g = point(&p);
        let lambda = p.root_system().rho().scale_int(2);
        for route in [Route::Characters, Route::FixedPoint] {
            group.bench_function(BenchmarkId::new(route.to_string(), name), |bench| {
                bench.iter(|| verify_identity(&p, &lambda, &g, route).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, cyclotomic, weyl_groups, identity);
criterion_main!(benches);
