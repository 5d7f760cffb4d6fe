use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use f2orbits::fixtures;
use f2orbits::orbits::{orbit_partition_sequential, Domain, DEFAULT_BUDGET_LOG2};
use f2orbits::GeneratingSet;

fn cases() -> Vec<(&'static str, GeneratingSet, Domain)> {
    let fig = fixtures::fig_ex().generating_set().unwrap();
    let broom = fixtures::broom(9, 5).unwrap().generating_set().unwrap();
    let tree = fixtures::janssen_a(8, 2).unwrap().generating_set().unwrap();
    vec![
        ("fig-ex/whole", fig, Domain::Whole),
        ("dmk-9-5/span", broom.clone(), Domain::span_of(&broom)),
        ("janssen-a-8-2/span", tree.clone(), Domain::span_of(&tree)),
    ]
}

fn partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_partition");
    group.sample_size(20);
    for (name, b, domain) in cases() {
        let size = 1u64 << domain_dim(&b, &domain);
        group.throughput(Throughput::Elements(size));
        group.bench_with_input(BenchmarkId::new("sequential", name), &(&b, &domain), |bench, (b, d)| {
            bench.iter(|| orbit_partition_sequential(b, d, DEFAULT_BUDGET_LOG2).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", name), &(&b, &domain), |bench, (b, d)| {
            bench.iter(|| f2orbits::orbits::orbit_partition_parallel(b, d, DEFAULT_BUDGET_LOG2).unwrap())
        });
    }
    group.finish();
}

fn domain_dim(b: &GeneratingSet, domain: &Domain) -> usize {
    match domain {
        Domain::Whole => b.dim(),
        Domain::Subspace(s) => s.dim(),
        Domain::Coset { space, .. } => space.dim(),
    }
}

criterion_group!(benches, partition);
criterion_main!(benches);
