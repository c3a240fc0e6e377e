use bvk_core::calculus::laplacian_factorization_residual;
use bvk_core::catalog;
use bvk_core::pseudoanalytic::{decompose_report, GeneratingPair};
use bvk_core::{Domain, Exec, GridDomain};

fn strip(mut r: bvk_core::ResidualReport) -> bvk_core::ResidualReport {
    r.wall_time_ms = 0.0;
    r
}

#[test]
fn sequential_and_parallel_reports_match() {
    let dom = Domain::Grid(GridDomain::default_grid());
    for f in catalog::functions() {
        let a = strip(laplacian_factorization_residual(&f.expr, &dom, Exec::Sequential));
        let b = strip(laplacian_factorization_residual(&f.expr, &dom, Exec::Parallel));
        assert_eq!(a, b, "{}", f.name);
    }
    for p in catalog::r1_pairs() {
        let gp = GeneratingPair::new(p.name, p.f.clone(), p.g.clone(), catalog::PairClass::R1, dom);
        let w = catalog::function("omega^2").unwrap().expr;
        let a = strip(decompose_report(&w, &gp, Exec::Sequential));
        let b = strip(decompose_report(&w, &gp, Exec::Parallel));
        assert_eq!(a, b, "{}", p.name);
    }
}
