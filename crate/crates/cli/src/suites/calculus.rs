use std::time::Instant;

use bvk_core::calculus::{
    check_t_holomorphic, convergence_report, dagger_derivative_criterion, laplacian_factorization_residual,
    plane_reduction,
};
use bvk_core::catalog;
use bvk_core::{Domain, Exec, GridDomain, Plane, ResidualReport};

use super::{renamed, planes};
use crate::config::SuiteConfig;

const SUITE: &str = "calculus";
pub const FD_REFINEMENTS: u32 = 3;

pub fn cases(cfg: &SuiteConfig, exec: Exec) -> Vec<ResidualReport> {
    let grid = cfg.grid_or(GridDomain::default_grid());
    let dom = Domain::Grid(grid);
    let mut out = Vec::new();
    for f in catalog::functions() {
        out.push(renamed(
            laplacian_factorization_residual(&f.expr, &dom, exec),
            format!("laplacian:{}", f.name),
        ));
        out.push(holomorphy_agreement(f.name, &f.expr, f.holomorphic, &dom, exec));
    }
    let sweep = cfg.grid_or(catalog::fd_sweep_grid());
    for f in catalog::fd_sweep_functions() {
        out.push(renamed(
            convergence_report(&f.expr, &sweep, FD_REFINEMENTS, exec),
            format!("fd-convergence:{}", f.name),
        ));
    }
    for plane in planes(cfg) {
        for f in catalog::functions().iter().filter(|f| f.holomorphic).take(4) {
            out.push(renamed(
                plane_reduction(&f.expr, &grid, plane, exec),
                format!("plane-reduction:{}:{}", plane.label(), f.name),
            ));
        }
        if plane == Plane::ComplexI2 {
            let f = catalog::function("exp(z1+cz1)").expect("catalog");
            out.push(renamed(
                plane_reduction(&f.expr, &grid, plane, exec),
                format!("plane-reduction:{}:{}", plane.label(), f.name),
            ));
        }
    }
    out
}

/// Both holomorphy tests must agree with each other and with the
/// catalog's expectation.
fn holomorphy_agreement(name: &str, e: &bvk_core::Expr, expected: bool, dom: &Domain, exec: Exec) -> ResidualReport {
    let start = Instant::now();
    let cr = check_t_holomorphic(e, dom, exec);
    let dg = dagger_derivative_criterion(e, dom, exec);
    let disagreements = [cr.holomorphic != dg.holomorphic, cr.holomorphic != expected]
        .iter()
        .filter(|&&d| d)
        .count();
    let mut rep = ResidualReport::new(
        SUITE,
        format!("holomorphy:{name}"),
        "holomorphy: Cauchy-Riemann system vs vanishing dagger-derivatives",
        dom.meta(),
        0.5,
    )
    .with_max(disagreements as f64)
    .metric("cauchy_riemann_residual", cr.report.max_residual)
    .metric("dagger_residual", dg.report.max_residual)
    .metric("holomorphic", if cr.holomorphic { 1.0 } else { 0.0 })
    .note("residual counts verdict disagreements");
    for (k, v) in cr.report.metrics.iter().chain(&dg.report.metrics) {
        rep = rep.metric(k, *v);
    }
    rep.timed(start)
}
