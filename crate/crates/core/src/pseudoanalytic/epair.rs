//! Generating pairs assembled from two classical planar pairs through the
//! idempotent components, and the splitting of their pseudoanalytic
//! functions into planar ones.
//!
//! Planar expressions use `z1` as the planar variable `Z` and `cz1` as `Z̄`.
//! A planar function `f` is embedded in the first idempotent component as
//! `f(z1 − z2 i1)` and in the second as `f(z1 + z2 i1)`.

use std::time::Instant;

use num_complex::Complex64;

use crate::bicomplex::{Bicomplex, Conjugation};
use crate::catalog::{EPairSpec, PairClass, PlanarPair};
use crate::error::PairError;
use crate::exec::Exec;
use crate::expr::{differentiate, p1_part, p2_part, vector_part, wirtinger_apply, Expr, Tape, Var, WirtingerOp};
use crate::grid::{Domain, EProductDomain, PlanarGrid};
use crate::report::{identity_report, ResidualReport};
use crate::tolerances;

use super::{char_coeffs, fg_derivative, validate_pair, vekua_residual, GeneratingPair, SUITE};

fn cconst(z: Complex64) -> Expr {
    Expr::constant(Bicomplex::from_complex(z))
}

/// `f ↦ f(z1 − z2 i1)`, with `Z̄ ↦ z̄1 + z̄2 i1`.
pub fn embed_e1(f: &Expr) -> Expr {
    let s = Expr::z1() - Expr::i1() * Expr::z2();
    let cs = Expr::cz1() + Expr::i1() * Expr::cz2();
    f.substitute(&|v| match v {
        Var::Z1 => Some(s.clone()),
        Var::Cz1 => Some(cs.clone()),
        _ => None,
    })
}

/// `f ↦ f(z1 + z2 i1)`, with `Z̄ ↦ z̄1 − z̄2 i1`.
pub fn embed_e2(f: &Expr) -> Expr {
    let s = Expr::z1() + Expr::i1() * Expr::z2();
    let cs = Expr::cz1() - Expr::i1() * Expr::cz2();
    f.substitute(&|v| match v {
        Var::Z1 => Some(s.clone()),
        Var::Cz1 => Some(cs.clone()),
        _ => None,
    })
}

/// `f_e1(z1 − z2 i1) e1 + f_e2(z1 + z2 i1) e2`.
pub fn recombine(fe1: &Expr, fe2: &Expr) -> Expr {
    embed_e1(fe1) * Expr::constant(Bicomplex::E1) + embed_e2(fe2) * Expr::constant(Bicomplex::E2)
}

/// Restricts `w` to points with second idempotent coordinate `c2` and
/// returns `P1(w)` as a planar function of the first coordinate.
pub fn extract_e1(w: &Expr, c2: Complex64) -> Expr {
    let z = Expr::z1();
    let cz = Expr::cz1();
    let (k, kc) = (cconst(c2), cconst(c2.conj()));
    let half_i1 = Expr::constant(Bicomplex::I1.scale(0.5));
    let sub = |v: Var| {
        Some(match v {
            Var::Z1 => (z.clone() + k.clone()) * 0.5,
            Var::Z2 => half_i1.clone() * (z.clone() - k.clone()),
            Var::Cz1 => (cz.clone() + kc.clone()) * 0.5,
            Var::Cz2 => -(half_i1.clone() * (cz.clone() - kc.clone())),
        })
    };
    p1_part(&w.substitute(&sub))
}

/// Restricts `w` to points with first idempotent coordinate `c1` and
/// returns `P2(w)` as a planar function of the second coordinate.
pub fn extract_e2(w: &Expr, c1: Complex64) -> Expr {
    let z = Expr::z1();
    let cz = Expr::cz1();
    let (k, kc) = (cconst(c1), cconst(c1.conj()));
    let half_i1 = Expr::constant(Bicomplex::I1.scale(0.5));
    let sub = |v: Var| {
        Some(match v {
            Var::Z1 => (k.clone() + z.clone()) * 0.5,
            Var::Z2 => half_i1.clone() * (k.clone() - z.clone()),
            Var::Cz1 => (kc.clone() + cz.clone()) * 0.5,
            Var::Cz2 => -(half_i1.clone() * (kc.clone() - cz.clone())),
        })
    };
    p2_part(&w.substitute(&sub))
}

fn bar(e: &Expr) -> Expr {
    e.conjugate(Conjugation::Dagger1)
}

/// Classical characteristic coefficients of a planar pair:
/// `w_Z̄ = a w + b w̄` and `ẇ = w_Z − A w − B w̄`.
#[derive(Debug, Clone)]
pub struct PlanarCoefficients {
    pub a: Expr,
    pub b: Expr,
    pub big_a: Expr,
    pub big_b: Expr,
}

pub fn planar_coefficients(f: &Expr, g: &Expr) -> PlanarCoefficients {
    let (fb, gb) = (bar(f), bar(g));
    let d = f.clone() * gb.clone() - fb.clone() * g.clone();
    let make = |fv: Expr, gv: Expr| {
        let a = -((fb.clone() * gv.clone() - fv.clone() * gb.clone()) / d.clone());
        let b = (f.clone() * gv - fv * g.clone()) / d.clone();
        (a, b)
    };
    let (a, b) = make(differentiate(f, Var::Cz1), differentiate(g, Var::Cz1));
    let (big_a, big_b) = make(differentiate(f, Var::Z1), differentiate(g, Var::Z1));
    PlanarCoefficients { a, b, big_a, big_b }
}

/// `(w_Z̄, a w + b w̄)`.
pub fn planar_vekua_residual(w: &Expr, pc: &PlanarCoefficients) -> (Expr, Expr) {
    (differentiate(w, Var::Cz1), pc.a.clone() * w.clone() + pc.b.clone() * bar(w))
}

pub fn planar_derivative(w: &Expr, pc: &PlanarCoefficients) -> Expr {
    differentiate(w, Var::Z1) - pc.big_a.clone() * w.clone() - pc.big_b.clone() * bar(w)
}

/// `Im(F̄ G)` for a planar pair.
fn planar_im(f: &Expr, g: &Expr) -> Expr {
    vector_part(&(bar(f) * g.clone()), Conjugation::Dagger1, Bicomplex::I1)
}

fn validate_planar(pp: &PlanarPair, d: &PlanarGrid, exec: Exec) -> Result<f64, PairError> {
    let pts = d.points();
    let vals = Tape::compile(&[planar_im(&pp.f, &pp.g), pp.f.clone(), pp.g.clone()]).eval_points(&pts, exec)?;
    let mut min = f64::INFINITY;
    for (pt, v) in pts.iter().zip(&vals) {
        let m = v[0].norm() / 1f64.max(v[1].norm() * v[2].norm());
        if !(m >= tolerances::PAIR_FLOOR) {
            return Err(PairError::DegeneratePair { point: *pt, measure: m });
        }
        min = min.min(m);
    }
    Ok(min)
}

/// An R3 pair built from the planar pairs of an [`EPairSpec`].
#[derive(Debug, Clone)]
pub struct EPair {
    pub pair: GeneratingPair,
    pub spec: EPairSpec,
    pub coeffs1: PlanarCoefficients,
    pub coeffs2: PlanarCoefficients,
}

impl EPair {
    pub fn domain(&self) -> EProductDomain {
        EProductDomain::new(self.spec.d1, self.spec.d2)
    }
}

/// Assembles `F = F_e1 e1 + F_e2 e2`, `G = G_e1 e1 + G_e2 e2` on `D1 ×e D2`
/// after checking both planar pairs, then validates the result as R3.
pub fn build_e_pair(spec: &EPairSpec, exec: Exec) -> Result<EPair, PairError> {
    validate_planar(&spec.e1, &spec.d1, exec)?;
    validate_planar(&spec.e2, &spec.d2, exec)?;
    let f = recombine(&spec.e1.f, &spec.e2.f);
    let g = recombine(&spec.e1.g, &spec.e2.g);
    let dom = EProductDomain::new(spec.d1, spec.d2);
    let pair = GeneratingPair::new(spec.name, f, g, PairClass::R3, Domain::EProduct(dom));
    validate_pair(&pair, exec)?;
    Ok(EPair {
        pair,
        coeffs1: planar_coefficients(&spec.e1.f, &spec.e1.g),
        coeffs2: planar_coefficients(&spec.e2.f, &spec.e2.g),
        spec: spec.clone(),
    })
}

/// `Vec{F†3 G}` has idempotent components `Im(F̄_e1 G_e1)` and
/// `Im(F̄_e2 G_e2)`; checked pointwise on the product domain.
pub fn lemma_im_condition(ep: &EPair, exec: Exec) -> ResidualReport {
    let s = &ep.spec;
    let vec = ep.pair.vec_fg();
    let expect = recombine(&planar_im(&s.e1.f, &s.e1.g), &planar_im(&s.e2.f, &s.e2.g));
    identity_report(
        SUITE,
        format!("e-pair-im-condition:{}", s.name),
        "Im conditions imply Vec{F^3 G} nonvanishing",
        &[(vec, expect)],
        &ep.pair.domain,
        tolerances::SYMBOLIC,
        exec,
    )
}

/// Splitting check for `w` against an e-pair.
///
/// 1. the three R3 Vekua residuals of `w`;
/// 2. `w_e1 = P1(w)` and `w_e2 = P2(w)` are extracted by argument
///    transport and their planar Vekua residuals computed on `D1`, `D2`;
/// 3. `ẇ = ẇ_e1 e1 + ẇ_e2 e2` on the product domain;
/// 4. `P1`/`P2` of the bicomplex third Vekua residual equal the planar
///    residuals transported back, the componentwise oracle.
///
/// The verdict uses the largest of (1)–(3) and (4); each part is also
/// reported as a metric.
pub fn idempotent_split_check(w: &Expr, ep: &EPair, exec: Exec) -> ResidualReport {
    let start = Instant::now();
    let s = &ep.spec;
    let p = &ep.pair;
    let cc = char_coeffs(p);
    let mut rep = ResidualReport::new(
        SUITE,
        format!("idempotent-split:{}:{w}", s.name),
        "idempotent splitting of pseudoanalytic functions",
        p.domain.meta(),
        tolerances::PLANAR,
    );
    let mut parts = Vec::new();
    for k in 1..=3 {
        let r = vekua_residual(w, p, &cc, k, exec);
        rep = rep.metric(&format!("bicomplex_vekua_k{k}"), r.max_residual);
        parts.push(r);
    }
    let we1 = extract_e1(w, s.d2.center());
    let we2 = extract_e2(w, s.d1.center());
    let r1 = identity_report(SUITE, "e1", "", &[planar_vekua_residual(&we1, &ep.coeffs1)], &Domain::Planar(s.d1), tolerances::PLANAR, exec);
    let r2 = identity_report(SUITE, "e2", "", &[planar_vekua_residual(&we2, &ep.coeffs2)], &Domain::Planar(s.d2), tolerances::PLANAR, exec);
    rep = rep.metric("planar_vekua_e1", r1.max_residual).metric("planar_vekua_e2", r2.max_residual);
    parts.push(r1);
    parts.push(r2);

    let dw = fg_derivative(w, p, &cc);
    let split = recombine(&planar_derivative(&we1, &ep.coeffs1), &planar_derivative(&we2, &ep.coeffs2));
    let rd = identity_report(SUITE, "deriv", "", &[(dw, split)], &p.domain, tolerances::PLANAR, exec);
    rep = rep.metric("derivative_recombination", rd.max_residual);
    parts.push(rd);

    let lhs3 = wirtinger_apply(w, WirtingerOp::Dagger3) - cc.a[2].clone() * w.clone() - cc.b[2].clone() * w.conjugate(Conjugation::Dagger3);
    let (l1, r1e) = planar_vekua_residual(&we1, &ep.coeffs1);
    let (l2, r2e) = planar_vekua_residual(&we2, &ep.coeffs2);
    let ro = identity_report(
        SUITE,
        "oracle",
        "",
        &[(lhs3, recombine(&(l1 - r1e), &(l2 - r2e)))],
        &p.domain,
        tolerances::PLANAR,
        exec,
    );
    rep = rep.metric("componentwise_oracle", ro.max_residual);
    parts.push(ro);

    for part in &parts {
        rep = rep.absorb(part);
    }
    rep.timed(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::grid::Point;

    #[test]
    fn trivial_planar_pair_embeds_to_one_and_i1() {
        let spec = &catalog::e_pairs()[0];
        let ep = build_e_pair(spec, Exec::default()).unwrap();
        let pt = Point::new(0.3, -0.1, 0.7, 0.2);
        assert!(ep.pair.f.eval(pt).unwrap().max_abs_diff(Bicomplex::ONE) < 1e-15);
        assert!(ep.pair.g.eval(pt).unwrap().max_abs_diff(Bicomplex::I1) < 1e-15);
    }

    #[test]
    fn degenerate_planar_input_is_rejected() {
        let mut spec = catalog::e_pairs()[0].clone();
        spec.e1.g = Expr::one();
        assert!(matches!(build_e_pair(&spec, Exec::default()), Err(PairError::DegeneratePair { .. })));
    }

    #[test]
    fn embedding_evaluates_on_idempotent_components() {
        let f = Expr::z1().powi(2) + Expr::cz1() * 3.0;
        let pt = Point::new(0.3, -0.1, 0.7, 0.2);
        let w = pt.omega().to_idempotent();
        let v1 = embed_e1(&f).eval(pt).unwrap();
        let expect = w.p1 * w.p1 + w.p1.conj() * 3.0;
        assert!((v1.z1() - expect).norm() < 1e-14 && v1.z2().norm() < 1e-14);
        let v2 = embed_e2(&f).eval(pt).unwrap();
        let expect = w.p2 * w.p2 + w.p2.conj() * 3.0;
        assert!((v2.z1() - expect).norm() < 1e-14);
    }

    #[test]
    fn extraction_inverts_recombination() {
        let fe1 = Expr::z1().exp() * Expr::cz1();
        let fe2 = Expr::z1().sin();
        let w = recombine(&fe1, &fe2);
        let c = Complex64::new(0.2, -0.4);
        let zeta = Point::planar(Complex64::new(-0.3, 0.5));
        let a = extract_e1(&w, c).eval(zeta).unwrap();
        assert!(a.max_abs_diff(fe1.eval(zeta).unwrap()) < 1e-14);
        let b = extract_e2(&w, c).eval(zeta).unwrap();
        assert!(b.max_abs_diff(fe2.eval(zeta).unwrap()) < 1e-14);
    }
}
