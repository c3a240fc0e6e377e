use bvk_core::calculus::laplacian_factorization_residual;
use bvk_core::expr::Tape;
use bvk_core::{parse_expr, Domain, Exec, GridDomain};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn tape_eval(c: &mut Criterion) {
    let e = parse_expr("exp(z1)*sin(z2*cz1) + cosh(z1*cz1)/(z2*cz2 + 2)").unwrap();
    let tape = Tape::compile(&[e]);
    let mut group = c.benchmark_group("tape_eval_points");
    for n in [9usize, 17] {
        let pts = GridDomain::cube(-1.0, 1.0, n).unwrap().points();
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), pts.len()), &pts, |b, pts| {
                b.iter(|| tape.eval_points(black_box(pts), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn laplacian_report(c: &mut Criterion) {
    let e = parse_expr("exp(z1+cz1)*cos(z2)").unwrap();
    let dom = Domain::Grid(GridDomain::default_grid());
    let mut group = c.benchmark_group("laplacian_report");
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| b.iter(|| laplacian_factorization_residual(black_box(&e), &dom, exec)));
    }
    group.finish();
}

criterion_group!(benches, tape_eval, laplacian_report);
criterion_main!(benches);
