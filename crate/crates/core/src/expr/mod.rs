//! Symbolic expressions in the Wirtinger variables `z1, z2, z̄1, z̄2`.

mod ast;
mod diff;
mod parse;
mod tape;

pub use ast::{Expr, Func, Node, Var};
pub use diff::{differentiate, gradient_c, laplacian_c, real_partial, wirtinger_apply, RealAxis, WirtingerOp};
pub use parse::parse_expr;
pub use tape::Tape;

use crate::bicomplex::{Conjugation, ModulusAxis};

/// `|e|²` along the given axis, symbolically: `e · e†c`.
pub fn modulus_sq(e: &Expr, axis: ModulusAxis) -> Expr {
    e.clone() * e.conjugate(axis.conjugation())
}

/// Scalar part with respect to a conjugation: `(e + e†c)/2`.
pub fn scalar_part(e: &Expr, c: Conjugation) -> Expr {
    (e.clone() + e.conjugate(c)) * 0.5
}

/// Vector part with respect to a conjugation and its imaginary unit `u`:
/// `−u (e − e†c)/2`, so that `e = Sc(e) + Vec(e)·u`.
pub fn vector_part(e: &Expr, c: Conjugation, u: crate::Bicomplex) -> Expr {
    Expr::constant(u.scale(-0.5)) * (e.clone() - e.conjugate(c))
}

/// First idempotent projection `P1(e) = (e + e†2)/2 + j (e − e†2)/2`.
pub fn p1_part(e: &Expr) -> Expr {
    let d = e.conjugate(Conjugation::Dagger2);
    (e.clone() + d.clone()) * 0.5 + Expr::constant(crate::Bicomplex::J.scale(0.5)) * (e.clone() - d)
}

/// Second idempotent projection `P2(e) = (e + e†2)/2 − j (e − e†2)/2`.
pub fn p2_part(e: &Expr) -> Expr {
    let d = e.conjugate(Conjugation::Dagger2);
    (e.clone() + d.clone()) * 0.5 - Expr::constant(crate::Bicomplex::J.scale(0.5)) * (e.clone() - d)
}
