use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pentagram::lightcone::{prob_e, prob_e_naive, random_nc0_circuit, Lightcones};
use pentagram::rng::stream;

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("lightcone");
    g.sample_size(20);
    for (b_in, d) in [(2usize, 1usize), (3, 2)] {
        let n = 4096;
        let circ = random_nc0_circuit(n, b_in, d, &mut stream(5, 0)).unwrap();
        let id = format!("n{n}-B{b_in}-D{d}");
        g.bench_with_input(BenchmarkId::new("lightcones", &id), &circ, |b, c| b.iter(|| Lightcones::compute(black_box(c))));
        let cones = Lightcones::compute(&circ);
        g.bench_with_input(BenchmarkId::new("prob_e", &id), &cones, |b, cones| {
            b.iter(|| prob_e(black_box(cones), n).unwrap())
        });
    }
    let n = 256;
    let circ = random_nc0_circuit(n, 2, 2, &mut stream(6, 0)).unwrap();
    let cones = Lightcones::compute(&circ);
    g.bench_function("prob_e_naive/n256", |b| b.iter(|| prob_e_naive(black_box(&cones), n).unwrap()));
    g.bench_function("prob_e/n256", |b| b.iter(|| prob_e(black_box(&cones), n).unwrap()));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
