//! Bicomplex pseudoanalytic function theory for the three representation
//! classes.
//!
//! Each class fixes a "class conjugation" `†c` whose fixed set is the
//! coefficient subalgebra, and an imaginary unit `u` anticommuting with it:
//!
//! | class | `†c` | coefficients | `u`  |
//! |-------|------|--------------|------|
//! | R1    | `†2` | `ℂ(i1)`      | `i2` |
//! | R2    | `†1` | `ℂ(i2)`      | `i1` |
//! | R3    | `†3` | `ℂ(j)`       | `i1` |
//!
//! so that every `X = Sc(X) + Vec(X)·u` with `Sc(X) = (X + X†c)/2` and
//! `Vec(X) = −u (X − X†c)/2` in the coefficient subalgebra.

mod epair;

pub use epair::{
    build_e_pair, embed_e1, embed_e2, extract_e1, extract_e2, idempotent_split_check,
    lemma_im_condition, planar_coefficients, planar_derivative, planar_vekua_residual, recombine, EPair,
    PlanarCoefficients,
};

use std::time::Instant;

use crate::bicomplex::{Bicomplex, Conjugation, Subalgebra};
use crate::catalog::PairClass;
use crate::error::PairError;
use crate::exec::Exec;
use crate::expr::{vector_part, wirtinger_apply, Expr, Tape, Var, WirtingerOp};
use crate::grid::{Domain, GridDomain, Point};
use crate::report::{identity_report, rel_residual, ResidualReport};
use crate::tolerances;

const SUITE: &str = "pseudoanalytic";

impl PairClass {
    pub fn conjugation(self) -> Conjugation {
        match self {
            PairClass::R1 => Conjugation::Dagger2,
            PairClass::R2 => Conjugation::Dagger1,
            PairClass::R3 => Conjugation::Dagger3,
        }
    }

    pub fn unit(self) -> Bicomplex {
        match self {
            PairClass::R1 => Bicomplex::I2,
            PairClass::R2 | PairClass::R3 => Bicomplex::I1,
        }
    }

    pub fn subalgebra(self) -> Subalgebra {
        match self {
            PairClass::R1 => Subalgebra::ComplexI1,
            PairClass::R2 => Subalgebra::ComplexI2,
            PairClass::R3 => Subalgebra::Hyperbolic,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PairClass::R1 => "R1",
            PairClass::R2 => "R2",
            PairClass::R3 => "R3",
        }
    }

    /// Class vector part of an expression.
    pub fn vec_part(self, e: &Expr) -> Expr {
        vector_part(e, self.conjugation(), self.unit())
    }

    /// Nondegeneracy of a `Vec` value: its modulus for R1/R2; for R3 the
    /// smaller idempotent component, since `ℂ(j)` has zero divisors.
    pub fn nondegeneracy(self, v: Bicomplex) -> f64 {
        match self {
            PairClass::R1 | PairClass::R2 => v.norm(),
            PairClass::R3 => (v.w0 + v.w3).abs().min((v.w0 - v.w3).abs()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratingPair {
    pub name: String,
    pub f: Expr,
    pub g: Expr,
    pub class: PairClass,
    pub domain: Domain,
}

impl GeneratingPair {
    pub fn new(name: impl Into<String>, f: Expr, g: Expr, class: PairClass, domain: Domain) -> Self {
        GeneratingPair { name: name.into(), f, g, class, domain }
    }

    fn dagger(&self, e: &Expr) -> Expr {
        e.conjugate(self.class.conjugation())
    }

    /// `Vec{F†c G}`.
    pub fn vec_fg(&self) -> Expr {
        self.class.vec_part(&(self.dagger(&self.f) * self.g.clone()))
    }

    /// `F G†c − F†c G`.
    pub fn denominator(&self) -> Expr {
        self.f.clone() * self.dagger(&self.g) - self.dagger(&self.f) * self.g.clone()
    }
}

/// Checks `Vec{F†c G}` is nonvanishing (invertible for R3) everywhere on
/// the pair's domain.
///
/// The report's residual is `floor / min measure`, where the measure is
/// the nondegeneracy of `Vec{F†c G}` relative to `max(1, |F||G|)`; it
/// passes iff the measure stays above the floor at every point.
pub fn validate_pair(p: &GeneratingPair, exec: Exec) -> Result<ResidualReport, PairError> {
    let start = Instant::now();
    let pts = p.domain.points();
    let tape = Tape::compile(&[p.vec_fg(), p.f.clone(), p.g.clone()]);
    let vals = tape.eval_points(&pts, exec)?;
    let floor = tolerances::PAIR_FLOOR;
    let measures: Vec<f64> = vals
        .iter()
        .map(|v| p.class.nondegeneracy(v[0]) / 1f64.max(v[1].norm() * v[2].norm()))
        .collect();
    if let Some(i) = measures.iter().position(|&m| !(m >= floor)) {
        return Err(PairError::DegeneratePair { point: pts[i], measure: measures[i] });
    }
    let inv: Vec<f64> = measures.iter().map(|m| floor / m).collect();
    let min = measures.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ResidualReport::new(
        SUITE,
        format!("validate:{}:{}", p.class.label(), p.name),
        "generating-pair nondegeneracy",
        p.domain.meta(),
        1.0,
    )
    .with_residuals(&pts, &inv)
    .metric("min_nondegeneracy", min)
    .timed(start))
}

/// Symbolic coefficients and their samples on the pair's domain.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub phi_expr: Expr,
    pub psi_expr: Expr,
    pub points: Vec<Point>,
    pub phi: Vec<Bicomplex>,
    pub psi: Vec<Bicomplex>,
    /// `max |φF + ψG − w| / max(1, |w|)`.
    pub reconstruction_residual: f64,
    /// Largest out-of-subalgebra part of φ, ψ relative to `max(1, |·|)`.
    pub membership_residual: f64,
}

/// `φ = Vec[w†c G] / Vec[F†c G]` and `ψ = Vec[F†c w] / Vec[F†c G]`.
pub fn decomposition_exprs(w: &Expr, p: &GeneratingPair) -> (Expr, Expr) {
    let den = p.vec_fg();
    let phi = p.class.vec_part(&(p.dagger(w) * p.g.clone())) / den.clone();
    let psi = p.class.vec_part(&(p.dagger(&p.f) * w.clone())) / den;
    (phi, psi)
}

pub fn decompose(w: &Expr, p: &GeneratingPair, exec: Exec) -> Result<Decomposition, PairError> {
    validate_pair(p, exec)?;
    let (phi_expr, psi_expr) = decomposition_exprs(w, p);
    let points = p.domain.points();
    let tape = Tape::compile(&[phi_expr.clone(), psi_expr.clone(), p.f.clone(), p.g.clone(), w.clone()]);
    let vals = tape.eval_points(&points, exec)?;
    let sub = p.class.subalgebra();
    let (mut rec, mut mem) = (0.0_f64, 0.0_f64);
    let (mut phi, mut psi) = (Vec::with_capacity(vals.len()), Vec::with_capacity(vals.len()));
    for v in &vals {
        let (ph, ps) = (v[0], v[1]);
        rec = rec.max(rel_residual(ph * v[2] + ps * v[3], v[4]));
        mem = mem
            .max(sub.leak(ph) / 1f64.max(ph.norm()))
            .max(sub.leak(ps) / 1f64.max(ps.norm()));
        phi.push(ph);
        psi.push(ps);
    }
    Ok(Decomposition {
        phi_expr,
        psi_expr,
        points,
        phi,
        psi,
        reconstruction_residual: rec,
        membership_residual: mem,
    })
}

pub fn decompose_report(w: &Expr, p: &GeneratingPair, exec: Exec) -> ResidualReport {
    let start = Instant::now();
    let rep = ResidualReport::new(
        SUITE,
        format!("decompose:{}:{}:{w}", p.class.label(), p.name),
        "unique phi/psi decomposition",
        p.domain.meta(),
        tolerances::DECOMPOSE,
    );
    match decompose(w, p, exec) {
        Ok(d) => rep
            .with_max(d.reconstruction_residual)
            .metric("membership_residual", d.membership_residual)
            .metric("membership_tolerance", tolerances::MEMBERSHIP),
        Err(e) => rep.failed(e.to_string()),
    }
    .timed(start)
}

/// Characteristic coefficients of a pair.
///
/// `a[k-1]`, `b[k-1]` are the coefficients of the k-th Vekua equation
/// `w_{ω†k} = a w + b w†c`, obtained by requiring `F` and `G` themselves
/// to solve it:
///
/// `a = −(F†c G_k − F_k G†c) / D`,  `b = (F G_k − F_k G) / D`,
///
/// with `D = F G†c − F†c G` and `F_k = ∂_{ω†k} F`. `a_kconj[k-1]` is the
/// variant with `F†k, G†k` in the numerator of `a`; it coincides with
/// `a[k-1]` exactly when the reduction condition holds.
#[derive(Debug, Clone)]
pub struct CharCoefficients {
    pub a: [Expr; 3],
    pub b: [Expr; 3],
    pub a_kconj: [Expr; 3],
    /// Derivative coefficients: `F_ω = A F + B F†c`, likewise for `G`.
    pub big_a: Expr,
    pub big_b: Expr,
    pub denominator: Expr,
}

pub fn char_coeffs(p: &GeneratingPair) -> CharCoefficients {
    let (f, g) = (&p.f, &p.g);
    let (fc, gc) = (p.dagger(f), p.dagger(g));
    let d = p.denominator();
    let coeffs = |fk: Expr, gk: Expr| {
        let a = -((fc.clone() * gk.clone() - fk.clone() * gc.clone()) / d.clone());
        let b = (f.clone() * gk - fk * g.clone()) / d.clone();
        (a, b)
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut a_kconj = Vec::new();
    for (k, op) in Conjugation::ALL[1..].iter().zip(WirtingerOp::DAGGERS) {
        let fk = wirtinger_apply(f, op);
        let gk = wirtinger_apply(g, op);
        let (ak, bk) = coeffs(fk.clone(), gk.clone());
        let alt = -((f.conjugate(*k) * gk - fk * g.conjugate(*k)) / d.clone());
        a.push(ak);
        b.push(bk);
        a_kconj.push(alt);
    }
    let (big_a, big_b) = coeffs(wirtinger_apply(f, WirtingerOp::Omega), wirtinger_apply(g, WirtingerOp::Omega));
    let arr = |v: Vec<Expr>| -> [Expr; 3] { v.try_into().expect("three coefficients") };
    CharCoefficients {
        a: arr(a),
        b: arr(b),
        a_kconj: arr(a_kconj),
        big_a,
        big_b,
        denominator: d,
    }
}

/// Denominator identity `F G†c − F†c G = −2 Vec{F†c G} u`.
pub fn denominator_identity(p: &GeneratingPair, exec: Exec) -> ResidualReport {
    let lhs = p.denominator();
    let rhs = Expr::constant(p.class.unit().scale(-2.0)) * p.vec_fg();
    identity_report(
        SUITE,
        format!("denominator:{}:{}", p.class.label(), p.name),
        "denominator identity FG^c - F^cG = -2 Vec{F^c G} u",
        &[(lhs, rhs)],
        &p.domain,
        tolerances::SYMBOLIC,
        exec,
    )
}

/// `ẇ = w_ω − A w − B w†c`.
pub fn fg_derivative(w: &Expr, p: &GeneratingPair, cc: &CharCoefficients) -> Expr {
    wirtinger_apply(w, WirtingerOp::Omega) - cc.big_a.clone() * w.clone() - cc.big_b.clone() * p.dagger(w)
}

/// `ẇ = φ_ω F + ψ_ω G`.
pub fn fg_derivative_via_decomposition(w: &Expr, p: &GeneratingPair) -> Expr {
    let (phi, psi) = decomposition_exprs(w, p);
    wirtinger_apply(&phi, WirtingerOp::Omega) * p.f.clone() + wirtinger_apply(&psi, WirtingerOp::Omega) * p.g.clone()
}

/// Agreement of the two derivative formulas.
pub fn fg_derivative_agreement(w: &Expr, p: &GeneratingPair, cc: &CharCoefficients, exec: Exec) -> ResidualReport {
    identity_report(
        SUITE,
        format!("fg-derivative:{}:{}:{w}", p.class.label(), p.name),
        "(F,G)-derivative: phi_w F + psi_w G = w_w - A w - B w^c",
        &[(fg_derivative_via_decomposition(w, p), fg_derivative(w, p, cc))],
        &p.domain,
        tolerances::DERIVATIVE,
        exec,
    )
}

/// Residual of the k-th Vekua equation `w_{ω†k} = a w + b w†c`.
pub fn vekua_residual(w: &Expr, p: &GeneratingPair, cc: &CharCoefficients, k: usize, exec: Exec) -> ResidualReport {
    assert!((1..=3).contains(&k), "equation index must be 1, 2 or 3");
    let lhs = wirtinger_apply(w, WirtingerOp::DAGGERS[k - 1]);
    let rhs = cc.a[k - 1].clone() * w.clone() + cc.b[k - 1].clone() * p.dagger(w);
    identity_report(
        SUITE,
        format!("vekua:{}:{}:k{k}:{w}", p.class.label(), p.name),
        "bicomplex Vekua equation",
        &[(lhs, rhs)],
        &p.domain,
        tolerances::VEKUA,
        exec,
    )
}

/// The reduction condition `[G†k − G†c] F_k = [F†k − F†c] G_k`.
///
/// Besides the identity's residual, reports how far the printed-form
/// coefficient `a_kconj` is from the derived one, and for each sample `w`
/// how far `w_k − a_kconj w − b w†c` is from `φ_k F + ψ_k G`. Both are zero
/// when the condition holds.
pub fn reduction_condition(
    p: &GeneratingPair,
    cc: &CharCoefficients,
    k: usize,
    samples: &[Expr],
    exec: Exec,
) -> ResidualReport {
    assert!((1..=3).contains(&k), "equation index must be 1, 2 or 3");
    let conj_k = Conjugation::ALL[k];
    let op = WirtingerOp::DAGGERS[k - 1];
    let (fk, gk) = (wirtinger_apply(&p.f, op), wirtinger_apply(&p.g, op));
    let lhs = (p.g.conjugate(conj_k) - p.dagger(&p.g)) * fk;
    let rhs = (p.f.conjugate(conj_k) - p.dagger(&p.f)) * gk;
    let rep = identity_report(
        SUITE,
        format!("reduction:{}:{}:k{k}", p.class.label(), p.name),
        "reduction condition for the Vekua equations",
        &[(lhs, rhs)],
        &p.domain,
        tolerances::VEKUA,
        exec,
    );
    let coeff_gap = identity_report(
        SUITE,
        "gap",
        "",
        &[(cc.a_kconj[k - 1].clone(), cc.a[k - 1].clone())],
        &p.domain,
        f64::INFINITY,
        exec,
    );
    let mut cross = 0.0_f64;
    for w in samples {
        let (phi, psi) = decomposition_exprs(w, p);
        let reduced = wirtinger_apply(&phi, op) * p.f.clone() + wirtinger_apply(&psi, op) * p.g.clone();
        let printed = wirtinger_apply(w, op) - cc.a_kconj[k - 1].clone() * w.clone() - cc.b[k - 1].clone() * p.dagger(w);
        let r = identity_report(SUITE, "cross", "", &[(printed, reduced)], &p.domain, f64::INFINITY, exec);
        cross = cross.max(r.max_residual);
    }
    let holds = rep.pass;
    rep.metric("coefficient_gap", coeff_gap.max_residual)
        .metric("reduced_equation_gap", cross)
        .metric("condition_holds", if holds { 1.0 } else { 0.0 })
}

/// `π ∘ e ∘ π` as an expression: constants mapped through π and the
/// arguments replaced by the coordinates of `π(ω)`.
pub fn pi_transport(e: &Expr) -> Expr {
    let (x, y, p, q) = (Expr::x(), Expr::y(), Expr::p(), Expr::q());
    let i2 = Expr::i2();
    e.map_constants(Bicomplex::pi_map).substitute(&|v| {
        Some(match v {
            Var::Z1 => x.clone() + p.clone() * i2.clone(),
            Var::Z2 => y.clone() + q.clone() * i2.clone(),
            Var::Cz1 => x.clone() - p.clone() * i2.clone(),
            Var::Cz2 => y.clone() - q.clone() * i2.clone(),
        })
    })
}

/// `π` applied to a lattice: the `y` and `p` axes swap.
pub fn pi_grid(g: &GridDomain) -> GridDomain {
    let mut out = *g;
    out.axes.swap(1, 2);
    out
}

/// The R2 pair `(π∘F∘π, π∘G∘π)` on the transported lattice.
pub fn transport_pair(p: &GeneratingPair, grid: &GridDomain) -> GeneratingPair {
    GeneratingPair::new(
        format!("pi({})", p.name),
        pi_transport(&p.f),
        pi_transport(&p.g),
        PairClass::R2,
        Domain::Grid(pi_grid(grid)),
    )
}

/// Checks that the transported derivative at `π(ω0)` equals `π(ẇ(ω0))` on
/// every lattice point `ω0`. The transported pair must validate as R2.
pub fn pi_correspondence(w: &Expr, p: &GeneratingPair, grid: &GridDomain, exec: Exec) -> Result<ResidualReport, PairError> {
    let start = Instant::now();
    let p = GeneratingPair { domain: Domain::Grid(*grid), ..p.clone() };
    validate_pair(&p, exec)?;
    let tp = transport_pair(&p, grid);
    let valid = validate_pair(&tp, exec)?;
    let cc = char_coeffs(&p);
    let tcc = char_coeffs(&tp);
    let d = fg_derivative(w, &p, &cc);
    let td = fg_derivative(&pi_transport(w), &tp, &tcc);
    let pts = grid.points();
    let tpts: Vec<Point> = pts.iter().map(|pt| Point::from_omega(pt.omega().pi_map())).collect();
    let lhs = Tape::compile(&[td]).eval_points(&tpts, exec)?;
    let rhs = Tape::compile(&[d]).eval_points(&pts, exec)?;
    let res: Vec<f64> = lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| rel_residual(a[0], b[0].pi_map()))
        .collect();
    Ok(ResidualReport::new(
        SUITE,
        format!("pi-correspondence:{}:{w}", p.name),
        "pi-correspondence between i1- and i2-derivatives",
        grid.meta(),
        tolerances::DERIVATIVE,
    )
    .with_residuals(&pts, &res)
    .metric("transported_min_nondegeneracy", valid.metrics["min_nondegeneracy"])
    .timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::expr::parse_expr;

    fn small() -> Domain {
        Domain::Grid(GridDomain::cube(-1.0, 1.0, 5).unwrap())
    }

    fn pair(f: &str, g: &str) -> GeneratingPair {
        GeneratingPair::new("t", parse_expr(f).unwrap(), parse_expr(g).unwrap(), PairClass::R1, small())
    }

    #[test]
    fn validation_examples() {
        let r = validate_pair(&pair("1", "I2"), Exec::default()).unwrap();
        assert_eq!(r.metrics["min_nondegeneracy"], 1.0);
        assert!(matches!(
            validate_pair(&pair("1", "1"), Exec::default()),
            Err(PairError::DegeneratePair { .. })
        ));
        let p = pair("exp(z1)", "I2/exp(z1)");
        let r = validate_pair(&p, Exec::default()).unwrap();
        assert!(r.pass);
        let v = p.vec_fg().eval(Point::new(0.3, -0.2, 0.1, 0.7)).unwrap();
        assert!(v.max_abs_diff(Bicomplex::ONE) < 1e-15);
    }

    #[test]
    fn decomposition_examples() {
        let p = pair("exp(z1)", "I2/exp(z1)");
        let d = decompose(&p.f, &p, Exec::default()).unwrap();
        assert!(d.phi.iter().all(|v| v.max_abs_diff(Bicomplex::ONE) < 1e-14));
        assert!(d.psi.iter().all(|v| v.norm() < 1e-14));
        let w = p.f.clone() * 3.0 + Expr::constant(Bicomplex::new(2.0, 5.0, 0.0, 0.0)) * p.g.clone();
        let d = decompose(&w, &p, Exec::default()).unwrap();
        assert!(d.phi.iter().all(|v| v.max_abs_diff(Bicomplex::real(3.0)) < 1e-13));
        assert!(d.psi.iter().all(|v| v.max_abs_diff(Bicomplex::new(2.0, 5.0, 0.0, 0.0)) < 1e-13));
        assert!(d.reconstruction_residual < 1e-13);
    }

    #[test]
    fn coefficient_examples() {
        let cc = char_coeffs(&pair("1", "I2"));
        for e in cc.a.iter().chain(&cc.b).chain([&cc.big_a, &cc.big_b]) {
            assert!(e.is_zero(), "{e}");
        }
        assert_eq!(cc.denominator.as_const(), Some(Bicomplex::I2.scale(-2.0)));

        let cc = char_coeffs(&pair("exp(z1)", "I2/exp(z1)"));
        let pt = Point::new(0.4, -0.3, 0.2, 0.9);
        assert!(cc.a[1].eval(pt).unwrap().norm() < 1e-15);
        assert!(cc.b[1].eval(pt).unwrap().max_abs_diff(Bicomplex::real(0.5)) < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let p = pair("1", "I2");
        let cc = char_coeffs(&p);
        let w2 = Expr::omega().powi(2);
        let r = identity_report("t", "c", "a", &[(fg_derivative(&w2, &p, &cc), Expr::omega() * 2.0)], &small(), 1e-14, Exec::default());
        assert!(r.pass);
        let r = vekua_residual(&Expr::omega_dagger2(), &p, &cc, 2, Exec::default());
        assert_eq!(r.max_residual, 1.0);
    }

    #[test]
    fn catalog_pairs_are_valid_and_transport() {
        let g = GridDomain::cube(-1.0, 1.0, 3).unwrap();
        for cp in catalog::r1_pairs() {
            let p = GeneratingPair::new(cp.name, cp.f, cp.g, PairClass::R1, Domain::Grid(g));
            validate_pair(&p, Exec::default()).unwrap();
            validate_pair(&transport_pair(&p, &g), Exec::default()).unwrap();
        }
    }
}
