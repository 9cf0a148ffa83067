use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pentagram::game::best_response;
use pentagram::{brute_force_optimal, DeterministicStrategy, GameParams, Player};

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("game");
    g.sample_size(20);
    g.bench_function("brute_force_optimal", |b| b.iter(|| brute_force_optimal(black_box(&GameParams::ONES))));
    let alice = DeterministicStrategy::from_masks(Player::A, [3, 5, 6, 0, 1]);
    g.bench_function("best_response", |b| b.iter(|| best_response(black_box(&alice), &GameParams::ONES)));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
