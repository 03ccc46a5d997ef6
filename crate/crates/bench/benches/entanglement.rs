//! Entanglement-measure benchmarks: closed forms against the eigensolver
//! routes they are checked by.

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;
use wteleport::entanglement::{
    concurrence_closed_form, negativity_closed_form, o_operator_expectations,
    pairwise_concurrences, pairwise_negativities, three_pi,
};
use wteleport::qmath::PureState;
use wteleport::states::{make_w_state, WBasis, WParams};
use wteleport::Complex64;

fn seeded_params(seed: u64) -> WParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    WParams::normalized(draw(), draw(), draw(), WBasis::Canonical).expect("nonzero triple")
}

fn seeded_state(seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps: Vec<Complex64> = (0..8)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    PureState::normalized(3, amps).expect("nonzero vector")
}

fn closed_forms(c: &mut Criterion) {
    let params = seeded_params(11);
    c.bench_function("concurrence_closed_form", |b| {
        b.iter(|| concurrence_closed_form(black_box(&params)))
    });
    c.bench_function("negativity_closed_form", |b| {
        b.iter(|| negativity_closed_form(black_box(&params)))
    });
}

fn eigensolver_routes(c: &mut Criterion) {
    let w = make_w_state(&seeded_params(11));
    let generic = seeded_state(13);
    c.bench_function("pairwise_concurrences", |b| {
        b.iter(|| pairwise_concurrences(black_box(&w)).expect("three qubits"))
    });
    c.bench_function("pairwise_negativities", |b| {
        b.iter(|| pairwise_negativities(black_box(&w)).expect("three qubits"))
    });
    c.bench_function("three_pi_general", |b| {
        b.iter(|| three_pi(black_box(&generic)).expect("three qubits"))
    });
    c.bench_function("o_operator_expectations", |b| {
        b.iter(|| o_operator_expectations(black_box(&w)).expect("three qubits"))
    });
}

criterion_group!(benches, closed_forms, eigensolver_routes);
criterion_main!(benches);
