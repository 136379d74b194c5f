use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mahlerlab::mahler::{knot_a_poly, mahler_2var_with, parse_poly};
use mahlerlab::par::Parallelism;
use mahlerlab::verify::{run_all, RunOptions};

fn mahler(c: &mut Criterion) {
    let mut g = c.benchmark_group("mahler_2var");
    let polys = [
        ("family", parse_poly("1+x+1/x+y+1/y").unwrap()),
        ("knot", knot_a_poly()),
        ("crossings", parse_poly("-4*x^-2*y^-2 + 3*x^-1*y^2 + 3*x^2*y").unwrap()),
    ];
    for (name, p) in &polys {
        for mode in [Parallelism::Sequential, Parallelism::Parallel] {
            g.bench_with_input(BenchmarkId::new(*name, format!("{mode:?}")), p, |b, p| {
                b.iter(|| mahler_2var_with(p, 1e-12, mode).unwrap())
            });
        }
    }
    g.finish();
}

fn registry(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for parallel in [false, true] {
        let opts = RunOptions { parallel, ..Default::default() };
        g.bench_function(if parallel { "parallel" } else { "sequential" }, |b| b.iter(|| run_all(&opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, mahler, registry);
criterion_main!(benches);
