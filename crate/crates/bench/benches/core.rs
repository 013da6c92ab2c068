use std::hint::black_box;

use accbt::gridworld::PrimitiveAction;
use accbt::{compile, derive_acc, tick, SpecBindings, ValuationSpace};
use accbt_bench::{survival, visited_states, SURVIVAL_SPEC};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench_tick(c: &mut Criterion) {
    let compiled = survival();
    let states = visited_states(256);
    let grid = SpecBindings::grid(&compiled.spec.actions);
    c.bench_function("tick/survival/grid_state", |b| {
        let mut i = 0;
        b.iter(|| {
            i = (i + 1) % states.len();
            tick(compiled.tree.root(), black_box(&states[i]), &grid).unwrap()
        })
    });
    let space = ValuationSpace::new(compiled.tree.condition_names());
    let abstract_bindings = SpecBindings::new(&compiled.spec.actions, space.clone());
    c.bench_function("tick/survival/all_valuations", |b| {
        b.iter(|| {
            space
                .all()
                .filter(|v| tick(compiled.tree.root(), v, &abstract_bindings).unwrap().executing_action.is_some())
                .count()
        })
    });
}

fn bench_backchain(c: &mut Criterion) {
    c.bench_function("compile/survival", |b| b.iter(|| compile(black_box(SURVIVAL_SPEC)).unwrap()));
    let compiled = survival();
    c.bench_function("derive_acc/survival", |b| {
        b.iter(|| derive_acc(black_box(&compiled.tree), &compiled.spec.actions).unwrap())
    });
}

fn bench_step(c: &mut Criterion) {
    let states = visited_states(256);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function("gridworld/step", |b| {
        let mut i = 0;
        b.iter(|| {
            i = (i + 1) % states.len();
            let a = PrimitiveAction::ALL[i % PrimitiveAction::ALL.len()];
            accbt::gridworld::step(black_box(&states[i]), a, &mut rng)
        })
    });
}

criterion_group!(benches, bench_tick, bench_backchain, bench_step);
criterion_main!(benches);
