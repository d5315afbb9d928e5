use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use miquel_core::{
    random_generic_s0, riemann_measure, seeded_rng, verify_batch, MiquelQuartic, Pattern22,
    ProcessingMode,
};

const MODES: [(&str, ProcessingMode); 2] = [
    ("sequential", ProcessingMode::Sequential),
    ("parallel", ProcessingMode::Parallel),
];

fn patterns(n: usize) -> Vec<Pattern22> {
    let mut rng = seeded_rng(0xBEC4);
    (0..n).map(|_| random_generic_s0(&mut rng, 1e-9).unwrap()).collect()
}

fn bench_verify_batch(c: &mut Criterion) {
    let pats = patterns(24);
    let mut group = c.benchmark_group("verify_batch");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                let reports = verify_batch(&pats, 1e-9, 8, 7, mode);
                assert!(reports.iter().all(|r| r.is_ok()));
            })
        });
    }
    group.finish();
}

fn bench_riemann(c: &mut Criterion) {
    let mut rng = seeded_rng(0xBEC5);
    let pat = random_generic_s0(&mut rng, 1e-9).unwrap();
    let q = MiquelQuartic::of_pattern(&pat, 1e-9).unwrap();
    let (lo, hi) = q.admissible_intervals()[0];
    let (s1, s2) = (lo + 0.3 * (hi - lo), lo + 0.7 * (hi - lo));
    let mut group = c.benchmark_group("riemann_measure_1e6");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| riemann_measure(&q, s1, s2, 1_000_000, mode).unwrap())
        });
    }
    group.finish();
}

fn bench_sampling_sweep(c: &mut Criterion) {
    let pats = patterns(8);
    let quartics: Vec<_> = pats
        .iter()
        .map(|p| MiquelQuartic::of_pattern(p, 1e-9).unwrap())
        .collect();
    let mut group = c.benchmark_group("curve_sampling_sweep");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                let counts = mode.map_indices(quartics.len(), |i| {
                    quartics[i].sample_real_curve(4096).unwrap().len()
                });
                assert!(counts.iter().all(|&n| n > 0));
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_verify_batch, bench_riemann, bench_sampling_sweep);
criterion_main!(benches);
