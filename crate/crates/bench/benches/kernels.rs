use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, Criterion};
use cww_core::reduction::{centroid_ekm, jaccard_similarity, lwa_alpha, lwa_crisp};
use cww_core::{Codebook, DomainScale, Grid, HeightMode, It2Fou, RuleBase, Scenario, SolveOptions, WeightSpec};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn consequents(cb: &Codebook) -> Vec<It2Fou> {
    cb.variable("OT").unwrap().words.iter().map(|w| w.fou).collect()
}

fn kernels(c: &mut Criterion) {
    let cb = Codebook::load(&data("codebook_ia.json")).unwrap();
    let scale = DomainScale::default();
    let grid = Grid::standard(scale);
    let gs = consequents(&cb);
    let weights = [0.067, 0.006, 0.065, 0.005, 0.067];
    let intervals: Vec<WeightSpec> = weights.iter().map(|&w| WeightSpec::Interval([w * 0.5, w])).collect();

    c.bench_function("jaccard", |b| b.iter(|| jaccard_similarity(black_box(&gs[1]), black_box(&gs[2]), &grid)));
    c.bench_function("centroid_ekm", |b| b.iter(|| centroid_ekm(black_box(&gs[2]), &grid)));
    c.bench_function("lwa_crisp", |b| {
        b.iter(|| lwa_crisp(black_box(&gs), black_box(&weights), HeightMode::WeightedBlend, &scale))
    });
    c.bench_function("lwa_alpha_101", |b| b.iter(|| lwa_alpha(black_box(&gs), black_box(&intervals), 101, &scale)));

    let rb = RuleBase::load(&data("rules.json")).unwrap();
    let sc = Scenario::load(&data("scenario.json")).unwrap();
    let opts = SolveOptions::default();
    c.bench_function("solve_scenario", |b| b.iter(|| cww_core::solve_scenario(black_box(&sc), &rb, &cb, &opts)));
}

criterion_group!(benches, kernels);
criterion_main!(benches);
