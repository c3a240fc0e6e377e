//! Exact differentiation with respect to the four independent symbols, and
//! the bicomplex operators built from it.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Conjugation};

use super::ast::{Expr, Func, Node, Var};

/// `∂e/∂v` with `z1, z2, z̄1, z̄2` treated as independent.
pub fn differentiate(e: &Expr, v: Var) -> Expr {
    let mut memo = HashMap::new();
    diff_memo(e, v, &mut memo)
}

fn diff_memo(e: &Expr, v: Var, memo: &mut HashMap<*const Node, Expr>) -> Expr {
    if let Some(d) = memo.get(&e.ptr()) {
        return d.clone();
    }
    let d = match e.node() {
        Node::Const(_) => Expr::zero(),
        Node::Var(w) => {
            if *w == v {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Add(a, b) => diff_memo(a, v, memo) + diff_memo(b, v, memo),
        Node::Sub(a, b) => diff_memo(a, v, memo) - diff_memo(b, v, memo),
        Node::Mul(a, b) => {
            let (da, db) = (diff_memo(a, v, memo), diff_memo(b, v, memo));
            da * b.clone() + a.clone() * db
        }
        Node::Div(a, b) => {
            // (a/b)' = (a' − (a/b) b') / b
            let (da, db) = (diff_memo(a, v, memo), diff_memo(b, v, memo));
            if db.is_zero() {
                da / b.clone()
            } else {
                (da - e.clone() * db) / b.clone()
            }
        }
        Node::Neg(a) => -diff_memo(a, v, memo),
        Node::Pow(a, n) => {
            let da = diff_memo(a, v, memo);
            if da.is_zero() {
                Expr::zero()
            } else {
                Expr::constant(*n as f64) * a.clone().powi(n - 1) * da
            }
        }
        Node::Func(f, a) => {
            let da = diff_memo(a, v, memo);
            if da.is_zero() {
                Expr::zero()
            } else {
                let outer = match f {
                    Func::Exp => e.clone(),
                    Func::Sin => a.clone().cos(),
                    Func::Cos => -a.clone().sin(),
                    Func::Sinh => a.clone().cosh(),
                    Func::Cosh => a.clone().sinh(),
                };
                outer * da
            }
        }
    };
    memo.insert(e.ptr(), d.clone());
    d
}

/// The four bicomplex formal derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WirtingerOp {
    /// `∂_ω = ½(∂z1 − i2 ∂z2)`.
    Omega,
    /// `∂_{ω†1} = ½(∂z̄1 − i2 ∂z̄2)`.
    Dagger1,
    /// `∂_{ω†2} = ½(∂z1 + i2 ∂z2)`.
    Dagger2,
    /// `∂_{ω†3} = ½(∂z̄1 + i2 ∂z̄2)`.
    Dagger3,
}

impl WirtingerOp {
    pub const ALL: [WirtingerOp; 4] = [
        WirtingerOp::Omega,
        WirtingerOp::Dagger1,
        WirtingerOp::Dagger2,
        WirtingerOp::Dagger3,
    ];

    pub const DAGGERS: [WirtingerOp; 3] =
        [WirtingerOp::Dagger1, WirtingerOp::Dagger2, WirtingerOp::Dagger3];

    pub fn for_conjugation(k: Conjugation) -> WirtingerOp {
        match k {
            Conjugation::Identity => WirtingerOp::Omega,
            Conjugation::Dagger1 => WirtingerOp::Dagger1,
            Conjugation::Dagger2 => WirtingerOp::Dagger2,
            Conjugation::Dagger3 => WirtingerOp::Dagger3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WirtingerOp::Omega => "d_omega",
            WirtingerOp::Dagger1 => "d_omega_dagger1",
            WirtingerOp::Dagger2 => "d_omega_dagger2",
            WirtingerOp::Dagger3 => "d_omega_dagger3",
        }
    }

    /// `(first variable, second variable, sign of the i2 term)`.
    fn parts(self) -> (Var, Var, f64) {
        match self {
            WirtingerOp::Omega => (Var::Z1, Var::Z2, -1.0),
            WirtingerOp::Dagger1 => (Var::Cz1, Var::Cz2, -1.0),
            WirtingerOp::Dagger2 => (Var::Z1, Var::Z2, 1.0),
            WirtingerOp::Dagger3 => (Var::Cz1, Var::Cz2, 1.0),
        }
    }
}

pub fn wirtinger_apply(e: &Expr, op: WirtingerOp) -> Expr {
    let (a, b, s) = op.parts();
    let da = differentiate(e, a);
    let db = differentiate(e, b);
    (da + Expr::constant(Bicomplex::I2.scale(s)) * db) * 0.5
}

/// `Δ_C = ∂²z1 + ∂²z2`.
pub fn laplacian_c(e: &Expr) -> Expr {
    let d1 = differentiate(&differentiate(e, Var::Z1), Var::Z1);
    let d2 = differentiate(&differentiate(e, Var::Z2), Var::Z2);
    d1 + d2
}

/// `∇_C = ∂z1 + i2 ∂z2`.
pub fn gradient_c(e: &Expr) -> Expr {
    differentiate(e, Var::Z1) + Expr::i2() * differentiate(e, Var::Z2)
}

/// Derivatives along the real coordinates `x, y, p, q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealAxis {
    X,
    Y,
    P,
    Q,
}

impl RealAxis {
    pub fn index(self) -> usize {
        self as usize
    }
}

/// `∂x = ∂z1 + ∂z̄1`, `∂y = i1(∂z1 − ∂z̄1)`, and likewise for `p, q` with `z2`.
pub fn real_partial(e: &Expr, axis: RealAxis) -> Expr {
    let (z, cz) = match axis {
        RealAxis::X | RealAxis::Y => (Var::Z1, Var::Cz1),
        RealAxis::P | RealAxis::Q => (Var::Z2, Var::Cz2),
    };
    let dz = differentiate(e, z);
    let dcz = differentiate(e, cz);
    match axis {
        RealAxis::X | RealAxis::P => dz + dcz,
        RealAxis::Y | RealAxis::Q => Expr::i1() * (dz - dcz),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn basic_derivatives() {
        assert_eq!(differentiate(&p("z1^2"), Var::Z1), p("2*z1"));
        assert!(differentiate(&p("exp(z1)"), Var::Cz1).is_zero());
        let d = differentiate(&p("sin(z1*z2)"), Var::Z2);
        assert_eq!(d, p("cos(z1*z2)*z1"));
    }

    #[test]
    fn operators_on_omega() {
        let w = Expr::omega();
        assert!(wirtinger_apply(&w, WirtingerOp::Omega).is_one());
        assert!(wirtinger_apply(&w, WirtingerOp::Dagger2).is_zero());
        let wd = Expr::omega_dagger2();
        assert!(wirtinger_apply(&wd, WirtingerOp::Dagger2).is_one());
        assert!(wirtinger_apply(&wd, WirtingerOp::Omega).is_zero());
    }

    #[test]
    fn laplacians() {
        assert_eq!(laplacian_c(&p("z1^2")).as_const(), Some(Bicomplex::real(2.0)));
        assert!(laplacian_c(&Expr::omega().powi(2)).is_zero());
        assert!(laplacian_c(&p("cz1*z1")).is_zero());
    }

    #[test]
    fn independent_symbols_vanish_structurally() {
        let e = p("exp(z1)*cos(z1^2) + 1/(z1 - 4)");
        for v in [Var::Z2, Var::Cz1, Var::Cz2] {
            assert!(differentiate(&e, v).is_zero());
        }
    }
}
