use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use decospec::exec::Mode;
use decospec::integral::balanced_search;
use decospec::folding::Parity;
use decospec::sweep;

fn modes() -> [(&'static str, Mode); 2] {
    [("parallel", Mode::Parallel), ("sequential", Mode::Sequential)]
}

fn bench_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    for (name, mode) in modes() {
        g.bench_with_input(BenchmarkId::new("continued_fraction_8", name), &mode, |b, &m| {
            b.iter(|| sweep::continued_fraction(8, m))
        });
        g.bench_with_input(BenchmarkId::new("gap_9", name), &mode, |b, &m| {
            b.iter(|| sweep::gap(9, m).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("identities_6", name), &mode, |b, &m| {
            b.iter(|| sweep::identities(6, m).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("balanced_odd_2_4", name), &mode, |b, &m| {
            b.iter(|| balanced_search(Parity::Odd, 2..=2, 4, m).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_sweeps);
criterion_main!(benches);
