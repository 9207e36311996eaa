// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gausscollide_bench::backflow_config;
use gausscollide_core::{compose_chronological, evaluate, run, CollisionNetwork, EnvironmentSpec};

fn composition(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for rounds in [25usize, 100, 250] {
        let net = CollisionNetwork::new(0.4, 0.3, 0.0, rounds).unwrap();
        group.bench_with_input(BenchmarkId::new("sparse", rounds), &net, |b, net| {
            b.iter(|| {
                let mut comp = net.composer();
                while comp.advance().is_some() {}
                black_box(comp.coefficients())
            })
        });
        if rounds <= 100 {
            let unitaries: Vec<_> = (1..=rounds).map(|j| net.unitary(j).unwrap()).collect();
            group.bench_with_input(BenchmarkId::new("dense", rounds), &unitaries, |b, us| {
                b.iter(|| black_box(compose_chronological(net.dim(), us).unwrap()))
            });
        }
    }
    group.finish();
}

fn trajectories(c: &mut Criterion) {
    let cfg = backflow_config(250, EnvironmentSpec::vacuum());
    c.bench_function("run L=250 closed form", |b| b.iter(|| black_box(run(&cfg).unwrap())));
    c.bench_function("witnesses L=250", |b| b.iter(|| black_box(evaluate(&cfg).unwrap())));

    let oracle = backflow_config(60, EnvironmentSpec::new(0.5, 0.3, 0.2).unwrap()).with_oracle(true);
    c.bench_function("run L=60 full-chain oracle", |b| {
        b.iter(|| black_box(run(&oracle).unwrap()))
    });
}

criterion_group!(benches, composition, trajectories);
criterion_main!(benches);
