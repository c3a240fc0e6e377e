//! Grid checks for the differential identities of the bicomplex calculus.

use std::time::Instant;

use crate::bicomplex::{Bicomplex, Conjugation};
use crate::error::EvalError;
use crate::exec::Exec;
use crate::expr::{
    differentiate, laplacian_c, real_partial, scalar_part, vector_part, wirtinger_apply, Expr,
    RealAxis, Tape, Var, WirtingerOp,
};
use crate::grid::{Axis, Domain, GridDomain, Plane, Point};
use crate::report::{identity_report, rel_residual, ResidualReport};
use crate::tolerances;

const SUITE: &str = "calculus";

/// `Δ_C e` against `4 ∂_ω ∂_{ω†2} e`, both symbolic.
pub fn laplacian_factorization_residual(e: &Expr, domain: &Domain, exec: Exec) -> ResidualReport {
    let lhs = laplacian_c(e);
    let rhs = wirtinger_apply(&wirtinger_apply(e, WirtingerOp::Dagger2), WirtingerOp::Omega) * 4.0;
    identity_report(
        SUITE,
        format!("laplacian-factorization:{e}"),
        "complex Laplacian factorization",
        &[(lhs, rhs)],
        domain,
        tolerances::SYMBOLIC,
        exec,
    )
}

/// `4 Δ_C e` (symbolic) against the real-partials expansion
/// `(∂²x − ∂²y + ∂²p − ∂²q) e − 2 i1 (∂²xy + ∂²pq) e` evaluated with central
/// differences of step equal to the grid spacing.
///
/// The field is sampled once on the lattice padded by one node per side, so
/// every grid point, boundary included, gets a full stencil. Frozen axes are
/// padded with the largest active spacing.
pub fn real_expansion_residual(e: &Expr, grid: &GridDomain, exec: Exec) -> ResidualReport {
    let start = Instant::now();
    let rep = ResidualReport::new(
        SUITE,
        format!("real-expansion:{e}"),
        "real-partials expansion of the complex Laplacian",
        grid.meta(),
        f64::INFINITY,
    );
    match fd_residuals(e, grid, exec) {
        Ok((pts, res, h)) => rep
            .with_residuals(&pts, &res)
            .metric("h", h)
            .note("tolerance is set by the convergence sweep, not per grid"),
        Err(err) => rep.failed(err.to_string()),
    }
    .timed(start)
}

fn fd_residuals(e: &Expr, grid: &GridDomain, exec: Exec) -> Result<(Vec<Point>, Vec<f64>, f64), EvalError> {
    let href = grid.max_spacing();
    // per-axis step and padded axis
    let mut steps = [0.0; 4];
    let mut padded = grid.axes;
    for i in 0..4 {
        match grid.axes[i] {
            Axis::Active { .. } => {
                let h = grid.axes[i].spacing().unwrap();
                steps[i] = h;
                let c = grid.axes[i].count();
                padded[i] = Axis::active(grid.axes[i].coord(-1), grid.axes[i].coord(c as isize), c + 2);
            }
            Axis::Frozen(v) => {
                steps[i] = href;
                padded[i] = Axis::active(v - href, v + href, 3);
            }
        }
    }
    let pgrid = GridDomain { axes: padded };
    let ppts = pgrid.points();
    let tape = Tape::compile(std::slice::from_ref(e));
    let field: Vec<Bicomplex> = tape.eval_points(&ppts, exec)?.into_iter().map(|v| v[0]).collect();
    let pc = pgrid.counts();
    let stride = [pc[1] * pc[2] * pc[3], pc[2] * pc[3], pc[3], 1];

    let lhs_expr = laplacian_c(e) * 4.0;
    let lhs_tape = Tape::compile(std::slice::from_ref(&lhs_expr));
    let pts = grid.points();
    let gc = grid.counts();
    let idx: Vec<usize> = (0..pts.len()).collect();

    let res = exec.map_init(
        &idx,
        || (Vec::new(), Vec::new()),
        |(scratch, out), &n| -> Result<f64, EvalError> {
            // multi-index on the unpadded grid, shifted by one into the padded one
            let mut rem = n;
            let mut center = 0usize;
            for a in (0..4).rev() {
                let k = rem % gc[a];
                rem /= gc[a];
                center += (k + 1) * stride[a];
            }
            let f = |off: [isize; 4]| {
                let mut i = center as isize;
                for a in 0..4 {
                    i += off[a] * stride[a] as isize;
                }
                field[i as usize]
            };
            let second = |a: usize| {
                let mut o = [0isize; 4];
                o[a] = 1;
                let fp = f(o);
                o[a] = -1;
                let fm = f(o);
                (fp - f([0; 4]).scale(2.0) + fm).scale(1.0 / (steps[a] * steps[a]))
            };
            let mixed = |a: usize, b: usize| {
                let mut o = [0isize; 4];
                let mut g = |sa: isize, sb: isize| {
                    o[a] = sa;
                    o[b] = sb;
                    f(o)
                };
                let v = g(1, 1) - g(1, -1) - g(-1, 1) + g(-1, -1);
                v.scale(1.0 / (4.0 * steps[a] * steps[b]))
            };
            let rhs = second(0) - second(1) + second(2) - second(3)
                - Bicomplex::I1.scale(2.0) * (mixed(0, 1) + mixed(2, 3));
            lhs_tape.eval_into(pts[n], scratch, out)?;
            Ok(rel_residual(out[0], rhs))
        },
    );
    let res: Result<Vec<f64>, EvalError> = res.into_iter().collect();
    Ok((pts, res?, href))
}

/// Result of an order-of-accuracy sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSweep {
    pub spacings: Vec<f64>,
    pub residuals: Vec<f64>,
    /// `residuals[i] / residuals[i + 1]`.
    pub ratios: Vec<f64>,
}

impl ConvergenceSweep {
    /// All observed ratios within `4 (1 ± slack)`.
    pub fn second_order(&self, slack: f64) -> bool {
        !self.ratios.is_empty() && self.ratios.iter().all(|r| (r / 4.0 - 1.0).abs() <= slack)
    }
}

/// Runs [`real_expansion_residual`] on `grid` and `refinements` successive
/// halvings of its spacing.
pub fn fd_convergence(e: &Expr, grid: &GridDomain, refinements: u32, exec: Exec) -> ConvergenceSweep {
    let mut spacings = Vec::new();
    let mut residuals = Vec::new();
    for r in 0..=refinements {
        let g = grid.refine(r);
        let rep = real_expansion_residual(e, &g, exec);
        spacings.push(g.max_spacing());
        residuals.push(rep.max_residual);
    }
    let ratios = residuals.windows(2).map(|w| w[0] / w[1]).collect();
    ConvergenceSweep { spacings, residuals, ratios }
}

pub fn convergence_report(e: &Expr, grid: &GridDomain, refinements: u32, exec: Exec) -> ResidualReport {
    let start = Instant::now();
    let sweep = fd_convergence(e, grid, refinements, exec);
    let worst = sweep
        .ratios
        .iter()
        .map(|r| (r / 4.0 - 1.0).abs())
        .fold(0.0, f64::max);
    let mut rep = ResidualReport::new(
        SUITE,
        format!("fd-convergence:{e}"),
        "real-partials expansion of the complex Laplacian",
        grid.meta(),
        tolerances::FD_RATIO_SLACK,
    )
    .with_max(if sweep.ratios.is_empty() { f64::INFINITY } else { worst })
    .note("residual is the worst |ratio/4 - 1| over successive halvings of h");
    for (i, (h, r)) in sweep.spacings.iter().zip(&sweep.residuals).enumerate() {
        rep = rep.metric(&format!("residual_h{i}"), *r).metric(&format!("h{i}"), *h);
    }
    for (i, r) in sweep.ratios.iter().enumerate() {
        rep = rep.metric(&format!("ratio_{i}"), *r);
    }
    if sweep.ratios.iter().all(|r| (r / 16.0 - 1.0).abs() <= tolerances::FD_RATIO_SLACK) {
        rep = rep.note("ratios near 16: the h^2 error terms cancel for this function on this grid");
    }
    rep.timed(start)
}

/// `f' = ∂f1/∂z1 + (∂f2/∂z1) i2` for `f = f1 + f2 i2`.
pub fn t_derivative(e: &Expr) -> Expr {
    let (f1, f2) = split_i2(e);
    differentiate(&f1, Var::Z1) + differentiate(&f2, Var::Z1) * Expr::i2()
}

/// `(f1, f2)` with `f = f1 + f2 i2` and `f1, f2` valued in `ℂ(i1)`.
pub fn split_i2(e: &Expr) -> (Expr, Expr) {
    (
        scalar_part(e, Conjugation::Dagger2),
        vector_part(e, Conjugation::Dagger2, Bicomplex::I2),
    )
}

/// Verdict of a holomorphy test, with the supporting report.
#[derive(Debug, Clone)]
pub struct HolomorphyVerdict {
    pub holomorphic: bool,
    pub report: ResidualReport,
}

/// Holomorphy threshold on the residuals of the defining equations.
pub const HOLOMORPHY_TOL: f64 = 1e-10;

fn vanishing(e: Expr) -> (Expr, Expr) {
    (e, Expr::zero())
}

/// Cauchy–Riemann test: `f1, f2` independent of `z̄1, z̄2` and
/// `∂f1/∂z1 = ∂f2/∂z2`, `∂f1/∂z2 = −∂f2/∂z1`. Reports `min |det J_f|`.
pub fn check_t_holomorphic(e: &Expr, domain: &Domain, exec: Exec) -> HolomorphyVerdict {
    let (f1, f2) = split_i2(e);
    let d = |f: &Expr, v: Var| differentiate(f, v);
    let mut pairs: Vec<(Expr, Expr)> = [Var::Cz1, Var::Cz2]
        .into_iter()
        .flat_map(|v| [vanishing(d(&f1, v)), vanishing(d(&f2, v))])
        .collect();
    pairs.push((d(&f1, Var::Z1), d(&f2, Var::Z2)));
    pairs.push((d(&f1, Var::Z2), -d(&f2, Var::Z1)));
    let rep = identity_report(
        SUITE,
        format!("cauchy-riemann:{e}"),
        "holomorphy via complexified Cauchy-Riemann system",
        &pairs,
        domain,
        HOLOMORPHY_TOL,
        exec,
    );
    let det = d(&f1, Var::Z1) * d(&f2, Var::Z2) - d(&f1, Var::Z2) * d(&f2, Var::Z1);
    let min_det = Tape::compile(&[det])
        .eval_points(&domain.points(), exec)
        .map(|v| v.iter().map(|x| x[0].norm()).fold(f64::INFINITY, f64::min))
        .unwrap_or(f64::NAN);
    let rep = rep.metric("min_abs_det_jacobian", min_det);
    HolomorphyVerdict { holomorphic: rep.pass, report: rep }
}

/// Derivative exists iff `f_{ω†1} = f_{ω†2} = f_{ω†3} = 0`.
pub fn dagger_derivative_criterion(e: &Expr, domain: &Domain, exec: Exec) -> HolomorphyVerdict {
    let pairs: Vec<(Expr, Expr)> = WirtingerOp::DAGGERS
        .into_iter()
        .map(|op| vanishing(wirtinger_apply(e, op)))
        .collect();
    let mut rep = identity_report(
        SUITE,
        format!("dagger-derivatives:{e}"),
        "derivative exists iff the three dagger-derivatives vanish",
        &pairs,
        domain,
        HOLOMORPHY_TOL,
        exec,
    );
    let pts = domain.points();
    for (op, (lhs, _)) in WirtingerOp::DAGGERS.iter().zip(&pairs) {
        let m = Tape::compile(std::slice::from_ref(lhs))
            .eval_points(&pts, exec)
            .map(|v| v.iter().map(|x| x[0].norm()).fold(0.0, f64::max))
            .unwrap_or(f64::NAN);
        rep = rep.metric(&format!("max_{}", op.name()), m);
    }
    HolomorphyVerdict { holomorphic: rep.pass, report: rep }
}

/// The two plane operators: `∂²x + ∂²p` on the `ℂ(i2)` plane and
/// `∂²x − ∂²q` on the hyperbolic plane.
pub fn plane_operator(e: &Expr, plane: Plane) -> Expr {
    let dxx = real_partial(&real_partial(e, RealAxis::X), RealAxis::X);
    match plane {
        Plane::ComplexI2 => dxx + real_partial(&real_partial(e, RealAxis::P), RealAxis::P),
        Plane::Hyperbolic => dxx - real_partial(&real_partial(e, RealAxis::Q), RealAxis::Q),
    }
}

/// Plane Wirtinger derivative: `½(∂x − i2 ∂p)` or `½(∂x + j ∂q)`.
pub fn plane_dz(e: &Expr, plane: Plane) -> Expr {
    let dx = real_partial(e, RealAxis::X);
    match plane {
        Plane::ComplexI2 => (dx - Expr::i2() * real_partial(e, RealAxis::P)) * 0.5,
        Plane::Hyperbolic => (dx + Expr::j() * real_partial(e, RealAxis::Q)) * 0.5,
    }
}

/// Conjugate plane derivative: `½(∂x + i2 ∂p)` or `½(∂x − j ∂q)`.
pub fn plane_dzbar(e: &Expr, plane: Plane) -> Expr {
    let dx = real_partial(e, RealAxis::X);
    match plane {
        Plane::ComplexI2 => (dx + Expr::i2() * real_partial(e, RealAxis::P)) * 0.5,
        Plane::Hyperbolic => (dx - Expr::j() * real_partial(e, RealAxis::Q)) * 0.5,
    }
}

/// On a restriction plane: `4 ∂z ∂z̄ e` against the plane operator, and the
/// deviation of `Δ_C e` from the plane operator (zero for functions
/// holomorphic in `z1, z2`).
pub fn plane_reduction(e: &Expr, grid: &GridDomain, plane: Plane, exec: Exec) -> ResidualReport {
    let g = grid.restrict_plane(plane);
    let op = plane_operator(e, plane);
    let factored = plane_dz(&plane_dzbar(e, plane), plane) * 4.0;
    let dom = Domain::Grid(g);
    let rep = identity_report(
        SUITE,
        format!("plane-reduction:{}:{e}", plane.label()),
        match plane {
            Plane::ComplexI2 => "Laplacian on the C(i2) plane",
            Plane::Hyperbolic => "wave operator on the hyperbolic plane",
        },
        &[(factored, op.clone())],
        &dom,
        tolerances::SYMBOLIC,
        exec,
    );
    let dev = identity_report(SUITE, "dev", "", &[(laplacian_c(e), op)], &dom, f64::INFINITY, exec);
    rep.metric("laplacian_c_deviation", dev.max_residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn dom() -> Domain {
        Domain::Grid(GridDomain::cube(-1.0, 1.0, 5).unwrap())
    }

    #[test]
    fn laplacian_identity_examples() {
        for s in ["(z1 + z2*I2)^3", "exp(z1)*sin(z2)", "cz1*z1"] {
            let r = laplacian_factorization_residual(&parse_expr(s).unwrap(), &dom(), Exec::default());
            assert!(r.pass, "{s}: {}", r.max_residual);
        }
    }

    #[test]
    fn holomorphy_examples() {
        let w2 = Expr::omega().powi(2);
        let v = check_t_holomorphic(&w2, &dom(), Exec::default());
        assert!(v.holomorphic);
        let dv = t_derivative(&w2);
        let two_w = Expr::omega() * 2.0;
        let r = identity_report("t", "c", "a", &[(dv, two_w)], &dom(), 1e-13, Exec::default());
        assert!(r.pass);

        let v = check_t_holomorphic(&Expr::omega_dagger2(), &dom(), Exec::default());
        assert!(!v.holomorphic);

        let e = Expr::omega().exp();
        assert!(check_t_holomorphic(&e, &dom(), Exec::default()).holomorphic);
        let r = identity_report("t", "c", "a", &[(t_derivative(&e), e.clone())], &dom(), 1e-12, Exec::default());
        assert!(r.pass);
    }

    #[test]
    fn dagger_examples() {
        let v = dagger_derivative_criterion(&Expr::omega().powi(3), &dom(), Exec::default());
        assert!(v.holomorphic);
        let v = dagger_derivative_criterion(&Expr::cz1(), &dom(), Exec::default());
        assert!(!v.holomorphic);
        assert_eq!(v.report.metrics["max_d_omega_dagger1"], 0.5);
        assert_eq!(v.report.metrics["max_d_omega_dagger3"], 0.5);
        assert_eq!(v.report.metrics["max_d_omega_dagger2"], 0.0);
    }

    #[test]
    fn plane_examples() {
        let g = GridDomain::cube(-1.0, 1.0, 5).unwrap();
        let e = Expr::x().powi(2) + Expr::p().powi(2);
        let op = plane_operator(&e, Plane::ComplexI2);
        assert!((op.eval(Point::new(0.3, 0.0, -0.2, 0.0)).unwrap() - Bicomplex::real(4.0)).norm() < 1e-14);
        let e = Expr::x().powi(2) + Expr::q().powi(2);
        let op = plane_operator(&e, Plane::Hyperbolic);
        assert!(op.eval(Point::new(0.3, 0.0, 0.0, 0.7)).unwrap().norm() < 1e-14);
        let r = plane_reduction(&Expr::one(), &g, Plane::Hyperbolic, Exec::default());
        assert!(r.pass && r.metrics["laplacian_c_deviation"] == 0.0);
        let e = Expr::z1().powi(2) + Expr::z2().powi(2);
        for plane in [Plane::ComplexI2, Plane::Hyperbolic] {
            let r = plane_reduction(&e, &g, plane, Exec::default());
            assert!(r.pass);
            assert!(r.metrics["laplacian_c_deviation"] < 1e-14);
        }
    }

    #[test]
    fn real_expansion_constant_is_exact() {
        let g = GridDomain::cube(-1.0, 1.0, 5).unwrap();
        let r = real_expansion_residual(&Expr::constant(Bicomplex::new(1.0, 2.0, -3.0, 0.5)), &g, Exec::default());
        assert!(r.max_residual <= 1e-13);
    }
}
