//! The complexified Schrödinger equation `(Δ_C − ν) f = 0`, its
//! factorization through a particular solution `f0`, the main bicomplex
//! Vekua equation and the splitting of its solutions.
//!
//! `C` denotes the `†2` conjugation. Denominators written `f²` in the
//! formulas for the transformed potential are read as `f0²`.

use std::time::Instant;

use crate::bicomplex::{Bicomplex, Conjugation, ModulusAxis, Subalgebra};
use crate::calculus::{plane_dz, plane_dzbar, plane_operator};
use crate::catalog::PairClass;
use crate::error::SchrodingerError;
use crate::exec::Exec;
use crate::expr::{
    differentiate, gradient_c, laplacian_c, modulus_sq, scalar_part, vector_part, wirtinger_apply, Expr,
    Tape, Var, WirtingerOp,
};
use crate::grid::{Domain, GridDomain, Plane};
use crate::pseudoanalytic::{validate_pair, GeneratingPair};
use crate::report::{identity_report, ResidualReport};
use crate::tolerances;

const SUITE: &str = "schrodinger";
const F0_READING: &str = "denominators printed as f^2_2 are read as f0^2";

fn d_omega(e: &Expr) -> Expr {
    wirtinger_apply(e, WirtingerOp::Omega)
}

fn d_omega_bar(e: &Expr) -> Expr {
    wirtinger_apply(e, WirtingerOp::Dagger2)
}

fn cconj(e: &Expr) -> Expr {
    e.conjugate(Conjugation::Dagger2)
}

#[derive(Debug, Clone)]
pub struct SchrodingerInstance {
    pub name: String,
    pub f0: Expr,
    pub nu: Expr,
    pub grid: GridDomain,
    pub min_abs_f0: f64,
}

/// Largest part of `e` outside `ℂ(i1)` on the grid, or an error at the
/// first point exceeding `tol`.
fn complex_valued(e: &Expr, grid: &GridDomain, tol: f64, exec: Exec) -> Result<f64, SchrodingerError> {
    let pts = grid.points();
    let vals = Tape::compile(std::slice::from_ref(e)).eval_points(&pts, exec)?;
    let mut worst = 0.0_f64;
    for (pt, v) in pts.iter().zip(&vals) {
        let leak = Subalgebra::ComplexI1.leak(v[0]) / 1f64.max(v[0].norm());
        if !(leak <= tol) {
            return Err(SchrodingerError::NotComplexValued { point: *pt, leak });
        }
        worst = worst.max(leak);
    }
    Ok(worst)
}

/// `ν = Δ_C f0 / f0`, after checking `f0` is `ℂ(i1)`-valued and bounded
/// away from zero on the grid.
pub fn nu_from_f0(name: &str, f0: &Expr, grid: &GridDomain, exec: Exec) -> Result<SchrodingerInstance, SchrodingerError> {
    complex_valued(f0, grid, tolerances::EXACT, exec)?;
    let pts = grid.points();
    let vals = Tape::compile(std::slice::from_ref(f0)).eval_points(&pts, exec)?;
    let norms: Vec<f64> = vals.iter().map(|v| v[0].norm()).collect();
    let max = norms.iter().copied().fold(0.0, f64::max);
    let (imin, min) = norms
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |(i, m), (j, v)| if v < m { (j, v) } else { (i, m) });
    if !(min >= tolerances::F0_FLOOR * max) || min == 0.0 {
        return Err(SchrodingerError::VanishingF0 { point: pts[imin], value: min });
    }
    Ok(SchrodingerInstance {
        name: name.to_string(),
        f0: f0.clone(),
        nu: laplacian_c(f0) / f0.clone(),
        grid: *grid,
        min_abs_f0: min,
    })
}

impl SchrodingerInstance {
    fn domain(&self) -> Domain {
        Domain::Grid(self.grid)
    }

    /// `q = ∂_ω f0 / f0`.
    pub fn q(&self) -> Expr {
        d_omega(&self.f0) / self.f0.clone()
    }

    /// `(∂_ω − q C) φ`.
    pub fn right_factor(&self, phi: &Expr) -> Expr {
        d_omega(phi) - self.q() * cconj(phi)
    }

    /// `4 (∂_{ω†2} + q C)(∂_ω − q C) φ`, with `C` acting on the whole
    /// intermediate value.
    pub fn factored(&self, phi: &Expr) -> Expr {
        let inner = self.right_factor(phi);
        (d_omega_bar(&inner) + self.q() * cconj(&inner)) * 4.0
    }

    /// `(Δ_C − ν) φ`.
    pub fn operator(&self, phi: &Expr) -> Expr {
        laplacian_c(phi) - self.nu.clone() * phi.clone()
    }

    /// `(Δ_C − ν) f0 = 0` on the grid.
    pub fn self_check(&self, exec: Exec) -> ResidualReport {
        identity_report(
            SUITE,
            format!("f0-solves:{}", self.name),
            "f0 solves the complexified Schrodinger equation",
            &[(self.operator(&self.f0), Expr::zero())],
            &self.domain(),
            tolerances::SCHRODINGER,
            exec,
        )
    }
}

pub fn factorization_residual(inst: &SchrodingerInstance, phi: &Expr, exec: Exec) -> ResidualReport {
    let start = Instant::now();
    let rep = ResidualReport::new(
        SUITE,
        format!("factorization:{}:{phi}", inst.name),
        "factorization of the complexified Schrodinger operator",
        inst.grid.meta(),
        tolerances::SCHRODINGER,
    );
    if let Err(e) = complex_valued(phi, &inst.grid, tolerances::EXACT, exec) {
        return rep.failed(e.to_string()).timed(start);
    }
    identity_report(
        SUITE,
        rep.case_id.clone(),
        &rep.anchor,
        &[(inst.operator(phi), inst.factored(phi))],
        &inst.domain(),
        rep.tolerance,
        exec,
    )
    .timed(start)
}

/// The right factor annihilates `f0`.
pub fn annihilation_residual(inst: &SchrodingerInstance, exec: Exec) -> ResidualReport {
    identity_report(
        SUITE,
        format!("annihilation:{}", inst.name),
        "right factor annihilates f0",
        &[(inst.right_factor(&inst.f0), Expr::zero())],
        &inst.domain(),
        tolerances::SYMBOLIC,
        exec,
    )
}

/// One-dimensional analogue `(−d² + ν) φ = −(d + f0'/f0)(d − f0'/f0) φ`
/// along `x`, with `d = ∂z1 + ∂z̄1`. The overall sign is needed: the
/// composed factors expand to `d² − f0''/f0`. `f0` and `φ` are typically functions
/// of `x = (z1 + z̄1)/2`.
pub fn one_dim_factorization_check(f0: &Expr, phi: &Expr, grid: &GridDomain, exec: Exec) -> ResidualReport {
    let start = Instant::now();
    let rep = ResidualReport::new(
        SUITE,
        format!("one-dim:{f0}:{phi}"),
        "one-dimensional Schrodinger factorization",
        grid.meta(),
        tolerances::SYMBOLIC,
    );
    let dom = Domain::Grid(*grid);
    if let Err(e) = min_abs_check(f0, &dom, exec) {
        return rep.failed(e.to_string()).timed(start);
    }
    let d = |e: &Expr| differentiate(e, Var::Z1) + differentiate(e, Var::Cz1);
    let nu = d(&d(f0)) / f0.clone();
    let r = d(f0) / f0.clone();
    let lhs = -d(&d(phi)) + nu * phi.clone();
    let inner = d(phi) - r.clone() * phi.clone();
    let rhs = -(d(&inner) + r * inner);
    identity_report(SUITE, rep.case_id.clone(), &rep.anchor, &[(lhs, rhs)], &dom, rep.tolerance, exec).timed(start)
}

fn min_abs_check(f0: &Expr, dom: &Domain, exec: Exec) -> Result<f64, SchrodingerError> {
    let pts = dom.points();
    let vals = Tape::compile(std::slice::from_ref(f0)).eval_points(&pts, exec)?;
    let max = vals.iter().map(|v| v[0].norm()).fold(0.0, f64::max);
    let mut min = f64::INFINITY;
    for (pt, v) in pts.iter().zip(&vals) {
        let n = v[0].norm();
        if !(n >= tolerances::F0_FLOOR * max) || n == 0.0 {
            return Err(SchrodingerError::VanishingF0 { point: *pt, value: n });
        }
        min = min.min(n);
    }
    Ok(min)
}

/// The main Vekua equation `(∂_{ω†2} − b C) W = 0` with `b = ∂_{ω†2} f0 / f0`.
#[derive(Debug, Clone)]
pub struct VekuaMainEquation {
    pub inst: SchrodingerInstance,
    pub b: Expr,
    pub pair: GeneratingPair,
    pub eta: Expr,
}

pub fn main_vekua(inst: &SchrodingerInstance, exec: Exec) -> Result<VekuaMainEquation, SchrodingerError> {
    let f0 = &inst.f0;
    let b = d_omega_bar(f0) / f0.clone();
    let pair = GeneratingPair::new(
        format!("{},i2/{}", inst.name, inst.name),
        f0.clone(),
        Expr::i2() / f0.clone(),
        PairClass::R1,
        Domain::Grid(inst.grid),
    );
    validate_pair(&pair, exec)?;
    complex_valued(&d_omega(&b), &inst.grid, tolerances::SYMBOLIC, exec)?;
    Ok(VekuaMainEquation {
        inst: inst.clone(),
        eta: darboux_potential_expr(inst),
        b,
        pair,
    })
}

/// `η = −ν + 2 |∇_C f0|²_{i1} / f0²`.
pub fn darboux_potential_expr(inst: &SchrodingerInstance) -> Expr {
    let grad = gradient_c(&inst.f0);
    -inst.nu.clone() + modulus_sq(&grad, ModulusAxis::I1) * 2.0 / inst.f0.clone().powi(2)
}

impl VekuaMainEquation {
    /// `(∂_{ω†2} − b C) W`.
    pub fn residual_expr(&self, w: &Expr) -> Expr {
        d_omega_bar(w) - self.b.clone() * cconj(w)
    }

    /// `b_ω` against `ν/4 − |∂_{ω†2} f0|²_{i1} / f0²`, plus the bound on the
    /// non-`ℂ(i1)` part of `b_ω`.
    pub fn b_omega_report(&self, exec: Exec) -> ResidualReport {
        let f0 = &self.inst.f0;
        let lhs = d_omega(&self.b);
        let rhs = self.inst.nu.clone() * 0.25
            - modulus_sq(&d_omega_bar(f0), ModulusAxis::I1) / f0.clone().powi(2);
        let leak = complex_valued(&lhs, &self.inst.grid, f64::INFINITY, exec).unwrap_or(f64::MAX);
        identity_report(
            SUITE,
            format!("b-omega:{}", self.inst.name),
            "b_omega = nu/4 - |d_wbar f0|^2 / f0^2",
            &[(lhs, rhs)],
            &Domain::Grid(self.inst.grid),
            tolerances::SCHRODINGER,
            exec,
        )
        .metric("b_omega_leak", leak)
        .note(F0_READING)
    }

    /// Three expressions of `η`: the definition, `4(|b|² − b_ω)`, and the
    /// proof form `−ν + 8|∂_{ω†2} f0|²/f0²`; also checks
    /// `2|∂_{ω†2} f0|²/f0² = ((∂z1 f0)² + (∂z2 f0)²)/(2 f0²)`.
    pub fn eta_consistency(&self, exec: Exec) -> ResidualReport {
        let f0 = &self.inst.f0;
        let f2 = f0.clone().powi(2);
        let b = &self.b;
        let lemma = (modulus_sq(b, ModulusAxis::I1) - d_omega(b)) * 4.0;
        let dbar = modulus_sq(&d_omega_bar(f0), ModulusAxis::I1);
        let proof = -self.inst.nu.clone() + dbar.clone() * 8.0 / f2.clone();
        let line_l = dbar * 2.0 / f2.clone();
        let line_r = (differentiate(f0, Var::Z1).powi(2) + differentiate(f0, Var::Z2).powi(2)) / (f2 * 2.0);
        identity_report(
            SUITE,
            format!("eta-consistency:{}", self.inst.name),
            "transformed potential eta",
            &[(self.eta.clone(), lemma), (self.eta.clone(), proof), (line_l, line_r)],
            &Domain::Grid(self.inst.grid),
            tolerances::SCHRODINGER,
            exec,
        )
        .note(F0_READING)
    }
}

/// Returns `Sc(W)` and `Vec(W)` with respect to `†2`, so `W = u + i2 v`.
pub fn split_w(w: &Expr) -> (Expr, Expr) {
    (scalar_part(w, Conjugation::Dagger2), vector_part(w, Conjugation::Dagger2, Bicomplex::I2))
}

/// Residuals for a candidate solution `W` of the main Vekua equation.
#[derive(Debug, Clone)]
pub struct SplitCheck {
    pub vekua: ResidualReport,
    pub scalar: ResidualReport,
    pub vector: ResidualReport,
    pub lemma_scalar: ResidualReport,
    pub lemma_vector: ResidualReport,
}

impl SplitCheck {
    /// Combined report. If `W` fails its Vekua equation the case fails and
    /// the remaining residuals are only advisory.
    pub fn summary(&self, name: &str, w: &Expr) -> ResidualReport {
        let mut rep = ResidualReport::new(
            SUITE,
            format!("split:{name}:{w}"),
            "scalar/vector splitting of main Vekua solutions",
            self.vekua.grid.clone(),
            tolerances::SCHRODINGER,
        )
        .with_max(0.0)
        .metric("vekua", self.vekua.max_residual)
        .metric("scalar_schrodinger", self.scalar.max_residual)
        .metric("vector_schrodinger", self.vector.max_residual)
        .metric("lemma_scalar", self.lemma_scalar.max_residual)
        .metric("lemma_vector", self.lemma_vector.max_residual)
        .note(F0_READING);
        if !self.vekua.pass {
            rep = rep.note("W is not a Vekua solution; the remaining residuals are advisory");
        }
        for r in [&self.vekua, &self.scalar, &self.vector, &self.lemma_scalar, &self.lemma_vector] {
            rep = rep.absorb(r);
        }
        rep
    }
}

/// Scalar/vector splitting for `W`, using the equation's own `b`.
pub fn split_check(eq: &VekuaMainEquation, w: &Expr, exec: Exec) -> SplitCheck {
    split_check_with(eq, &eq.b, w, exec)
}

/// As [`split_check`] but with a supplied coefficient `b` for the lemma
/// residuals `∂_{ω†2}∂_ω u − (|b|² ± b_ω)·`.
pub fn split_check_with(eq: &VekuaMainEquation, b: &Expr, w: &Expr, exec: Exec) -> SplitCheck {
    let dom = Domain::Grid(eq.inst.grid);
    let name = &eq.inst.name;
    let (u, v) = split_w(w);
    let r = |case: String, anchor: &str, lhs: Expr, rhs: Expr| {
        identity_report(SUITE, case, anchor, &[(lhs, rhs)], &dom, tolerances::SCHRODINGER, exec)
    };
    let b2 = modulus_sq(b, ModulusAxis::I1);
    let bw = d_omega(b);
    let ddu = d_omega_bar(&d_omega(&u));
    let ddv = d_omega_bar(&d_omega(&v));
    SplitCheck {
        vekua: r(format!("main-vekua:{name}:{w}"), "main Vekua equation", eq.residual_expr(w), Expr::zero()),
        scalar: r(
            format!("scalar:{name}:{w}"),
            "Sc(W) solves the Schrodinger equation",
            laplacian_c(&u),
            eq.inst.nu.clone() * u.clone(),
        ),
        vector: r(
            format!("vector:{name}:{w}"),
            "Vec(W) solves the transformed equation",
            laplacian_c(&v),
            eq.eta.clone() * v.clone(),
        ),
        lemma_scalar: r(
            format!("lemma-scalar:{name}:{w}"),
            "second-order equation for Sc(W)",
            ddu,
            (b2.clone() + bw.clone()) * u,
        ),
        lemma_vector: r(
            format!("lemma-vector:{name}:{w}"),
            "second-order equation for Vec(W)",
            ddv,
            (b2 - bw) * v,
        ),
    }
}

/// Restriction to one of the two planes: the plane operator's own
/// factorization `(L − ν_L) φ = 4(∂z̄ + q_L C)(∂z − q_L C) φ` with
/// `ν_L = L f0 / f0`, the full factorization and the splitting of
/// `f0 + i2/f0` on the restricted lattice, and the gap between `ν` and `ν_L`.
pub fn specialize(inst: &SchrodingerInstance, plane: Plane, phis: &[Expr], exec: Exec) -> ResidualReport {
    let start = Instant::now();
    let g = inst.grid.restrict_plane(plane);
    let dom = Domain::Grid(g);
    let f0 = &inst.f0;
    let nu_l = plane_operator(f0, plane) / f0.clone();
    let q = plane_dz(f0, plane) / f0.clone();
    let mut pairs = Vec::new();
    for phi in phis {
        let lhs = plane_operator(phi, plane) - nu_l.clone() * phi.clone();
        let inner = plane_dz(phi, plane) - q.clone() * cconj(phi);
        let rhs = (plane_dzbar(&inner, plane) + q.clone() * cconj(&inner)) * 4.0;
        pairs.push((lhs, rhs));
    }
    let label = match plane {
        Plane::ComplexI2 => "real two-dimensional Schrodinger factorization",
        Plane::Hyperbolic => "Klein-Gordon factorization",
    };
    let rep = identity_report(
        SUITE,
        format!("specialize:{}:{}", plane.label(), inst.name),
        label,
        &pairs,
        &dom,
        tolerances::SCHRODINGER,
        exec,
    );
    let nu_gap = identity_report(SUITE, "nu", "", &[(inst.nu.clone(), nu_l)], &dom, f64::INFINITY, exec);
    let full = identity_report(
        SUITE,
        "restricted",
        "",
        &phis.iter().map(|p| (inst.operator(p), inst.factored(p))).collect::<Vec<_>>(),
        &dom,
        tolerances::SCHRODINGER,
        exec,
    );
    let restricted = SchrodingerInstance { grid: g, ..inst.clone() };
    let split = match main_vekua(&restricted, exec) {
        Ok(eq) => {
            let w = inst.f0.clone() + Expr::i2() / inst.f0.clone();
            split_check(&eq, &w, exec).summary(&inst.name, &w)
        }
        Err(e) => rep.clone().failed(e.to_string()),
    };
    rep.metric("nu_vs_plane_nu", nu_gap.max_residual)
        .metric("restricted_factorization", full.max_residual)
        .metric("restricted_split", split.max_residual)
        .absorb(&full)
        .absorb(&split)
        .timed(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Point;

    fn grid() -> GridDomain {
        GridDomain::cube(-1.0, 1.0, 5).unwrap()
    }

    fn inst(f0: Expr) -> SchrodingerInstance {
        nu_from_f0("t", &f0, &grid(), Exec::default()).unwrap()
    }

    #[test]
    fn nu_examples() {
        let pt = Point::new(0.3, -0.4, 0.5, 0.1);
        assert!(inst(Expr::z1().exp()).nu.eval(pt).unwrap().max_abs_diff(Bicomplex::ONE) < 1e-15);
        assert!(inst(Expr::one()).nu.is_zero());
        assert!(inst(Expr::z1().cosh()).nu.eval(pt).unwrap().max_abs_diff(Bicomplex::ONE) < 1e-15);
    }

    #[test]
    fn rejects_bad_f0() {
        let g = grid();
        assert!(matches!(
            nu_from_f0("t", &Expr::z1(), &g, Exec::default()),
            Err(SchrodingerError::VanishingF0 { .. })
        ));
        assert!(matches!(
            nu_from_f0("t", &(Expr::i2() + 3.0), &g, Exec::default()),
            Err(SchrodingerError::NotComplexValued { .. })
        ));
    }

    #[test]
    fn exp_instance_constants() {
        let eq = main_vekua(&inst(Expr::z1().exp()), Exec::default()).unwrap();
        let pt = Point::new(0.3, -0.4, 0.5, 0.1);
        assert!(eq.b.eval(pt).unwrap().max_abs_diff(Bicomplex::real(0.5)) < 1e-15);
        assert!(eq.eta.eval(pt).unwrap().max_abs_diff(Bicomplex::ONE) < 1e-15);
        assert!(eq.b_omega_report(Exec::default()).pass);
    }

    #[test]
    fn trivial_f0_reduces_to_holomorphy() {
        let eq = main_vekua(&inst(Expr::one()), Exec::default()).unwrap();
        assert!(eq.b.is_zero());
        assert!(eq.eta.is_zero());
    }
}
