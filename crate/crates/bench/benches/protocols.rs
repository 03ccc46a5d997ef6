//! Protocol-path benchmarks: one exact run of each scheme and a seeded
//! sampling batch.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use wteleport::protocols::{
    haar_input_from_seed, run_ap_protocol_exact, run_monte_carlo, run_proposed_protocol_exact,
    InputSampler, Protocol,
};
use wteleport::states::{ap_family, proposed_family, FamilyParameter};

fn exact_runs(c: &mut Criterion) {
    let ap = ap_family(&FamilyParameter::new(2.0)).expect("n > 0");
    let proposed = proposed_family(&FamilyParameter::new(9.0)).expect("m > 0");
    let input = haar_input_from_seed(7);
    c.bench_function("ap_exact_run", |b| {
        b.iter(|| run_ap_protocol_exact(black_box(&ap), black_box(&input)))
    });
    c.bench_function("proposed_exact_run", |b| {
        b.iter(|| run_proposed_protocol_exact(black_box(&proposed), black_box(&input)))
    });
}

fn sampled_runs(c: &mut Criterion) {
    let proposed = proposed_family(&FamilyParameter::new(9.0)).expect("m > 0");
    c.bench_function("proposed_sampled_1k_trials", |b| {
        b.iter(|| {
            run_monte_carlo(
                Protocol::Proposed,
                black_box(&proposed),
                &InputSampler::Haar,
                1000,
                42,
            )
            .expect("positive trial count")
        })
    });
}

criterion_group!(benches, exact_runs, sampled_runs);
criterion_main!(benches);
