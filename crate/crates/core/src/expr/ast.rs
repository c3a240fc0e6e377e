use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Conjugation};

/// The four independent Wirtinger symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Z1,
    Z2,
    Cz1,
    Cz2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z1, Var::Z2, Var::Cz1, Var::Cz2];

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Cz1 => "cz1",
            Var::Cz2 => "cz2",
        }
    }

    /// `z_k ↔ z̄_k`.
    pub fn bar(self) -> Var {
        match self {
            Var::Z1 => Var::Cz1,
            Var::Z2 => Var::Cz2,
            Var::Cz1 => Var::Z1,
            Var::Cz2 => Var::Z2,
        }
    }

    pub fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Exp, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn apply(self, w: Bicomplex) -> Bicomplex {
        match self {
            Func::Exp => w.exp(),
            Func::Sin => w.sin(),
            Func::Cos => w.cos(),
            Func::Sinh => w.sinh(),
            Func::Cosh => w.cosh(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(Bicomplex),
    Var(Var),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Neg(Expr),
    Pow(Expr, i32),
    Func(Func, Expr),
}

/// An immutable, cheaply clonable expression DAG.
///
/// Nodes are only built through the constructors below, which fold
/// constant-only subtrees and the identities `0 + e`, `1 * e`, `0 * e`,
/// `e / 1`, `e^1`, `e^0` and `-(-e)`. Nothing beyond that is simplified.
#[derive(Clone)]
pub struct Expr(Arc<Node>);

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl Expr {
    fn wrap(n: Node) -> Expr {
        Expr(Arc::new(n))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn ptr(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    pub fn constant(c: impl Into<Bicomplex>) -> Expr {
        Expr::wrap(Node::Const(c.into()))
    }

    pub fn zero() -> Expr {
        Expr::constant(Bicomplex::ZERO)
    }

    pub fn one() -> Expr {
        Expr::constant(Bicomplex::ONE)
    }

    pub fn var(v: Var) -> Expr {
        Expr::wrap(Node::Var(v))
    }

    pub fn z1() -> Expr {
        Expr::var(Var::Z1)
    }

    pub fn z2() -> Expr {
        Expr::var(Var::Z2)
    }

    pub fn cz1() -> Expr {
        Expr::var(Var::Cz1)
    }

    pub fn cz2() -> Expr {
        Expr::var(Var::Cz2)
    }

    pub fn i1() -> Expr {
        Expr::constant(Bicomplex::I1)
    }

    pub fn i2() -> Expr {
        Expr::constant(Bicomplex::I2)
    }

    pub fn j() -> Expr {
        Expr::constant(Bicomplex::J)
    }

    /// `ω = z1 + z2 i2`.
    pub fn omega() -> Expr {
        Expr::z1() + Expr::z2() * Expr::i2()
    }

    /// `ω†2 = z1 − z2 i2`.
    pub fn omega_dagger2() -> Expr {
        Expr::z1() - Expr::z2() * Expr::i2()
    }

    /// Real coordinate `x = (z1 + z̄1)/2`.
    pub fn x() -> Expr {
        (Expr::z1() + Expr::cz1()) * 0.5
    }

    /// Real coordinate `y = −i1 (z1 − z̄1)/2`.
    pub fn y() -> Expr {
        (Expr::z1() - Expr::cz1()) * Expr::constant(Bicomplex::I1.scale(-0.5))
    }

    pub fn p() -> Expr {
        (Expr::z2() + Expr::cz2()) * 0.5
    }

    pub fn q() -> Expr {
        (Expr::z2() - Expr::cz2()) * Expr::constant(Bicomplex::I1.scale(-0.5))
    }

    pub fn as_const(&self) -> Option<Bicomplex> {
        match *self.0 {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(Bicomplex::ZERO)
    }

    pub fn is_one(&self) -> bool {
        self.as_const() == Some(Bicomplex::ONE)
    }

    pub fn sum(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::constant(x + y),
            _ if a.is_zero() => b,
            _ if b.is_zero() => a,
            _ => Expr::wrap(Node::Add(a, b)),
        }
    }

    pub fn difference(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::constant(x - y),
            _ if b.is_zero() => a,
            _ if a.is_zero() => Expr::negate(b),
            _ => Expr::wrap(Node::Sub(a, b)),
        }
    }

    pub fn product(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::constant(x * y),
            _ if a.is_zero() || b.is_zero() => Expr::zero(),
            _ if a.is_one() => b,
            _ if b.is_one() => a,
            _ => Expr::wrap(Node::Mul(a, b)),
        }
    }

    /// Quotient. Constant denominators are folded only when invertible, so
    /// a null-cone constant still reports a singular evaluation.
    pub fn quotient(a: Expr, b: Expr) -> Expr {
        if b.is_one() {
            return a;
        }
        if a.is_zero() {
            return Expr::zero();
        }
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if let Ok(q) = x.checked_div(y) {
                return Expr::constant(q);
            }
        }
        Expr::wrap(Node::Div(a, b))
    }

    pub fn negate(a: Expr) -> Expr {
        if let Some(c) = a.as_const() {
            return Expr::constant(-c);
        }
        if let Node::Neg(inner) = &*a.0 {
            return inner.clone();
        }
        Expr::wrap(Node::Neg(a))
    }

    pub fn pow(a: Expr, n: i32) -> Expr {
        if n == 0 {
            return Expr::one();
        }
        if n == 1 {
            return a;
        }
        if let Some(c) = a.as_const() {
            if let Ok(v) = c.powi(n) {
                return Expr::constant(v);
            }
        }
        if a.is_zero() && n > 0 {
            return Expr::zero();
        }
        Expr::wrap(Node::Pow(a, n))
    }

    pub fn func(f: Func, a: Expr) -> Expr {
        if let Some(c) = a.as_const() {
            return Expr::constant(f.apply(c));
        }
        Expr::wrap(Node::Func(f, a))
    }

    pub fn exp(self) -> Expr {
        Expr::func(Func::Exp, self)
    }

    pub fn sin(self) -> Expr {
        Expr::func(Func::Sin, self)
    }

    pub fn cos(self) -> Expr {
        Expr::func(Func::Cos, self)
    }

    pub fn sinh(self) -> Expr {
        Expr::func(Func::Sinh, self)
    }

    pub fn cosh(self) -> Expr {
        Expr::func(Func::Cosh, self)
    }

    pub fn powi(self, n: i32) -> Expr {
        Expr::pow(self, n)
    }

    pub fn recip(self) -> Expr {
        Expr::quotient(Expr::one(), self)
    }

    /// Bottom-up rebuild through the smart constructors. `leaf` rewrites
    /// leaves; the DAG structure is preserved via pointer memoization.
    pub fn rebuild(&self, leaf: &mut impl FnMut(&Node) -> Option<Expr>) -> Expr {
        let mut memo: HashMap<*const Node, Expr> = HashMap::new();
        self.rebuild_memo(leaf, &mut memo)
    }

    fn rebuild_memo(
        &self,
        leaf: &mut impl FnMut(&Node) -> Option<Expr>,
        memo: &mut HashMap<*const Node, Expr>,
    ) -> Expr {
        if let Some(e) = memo.get(&self.ptr()) {
            return e.clone();
        }
        let out = match self.node() {
            n @ (Node::Const(_) | Node::Var(_)) => leaf(n).unwrap_or_else(|| self.clone()),
            Node::Add(a, b) => Expr::sum(a.rebuild_memo(leaf, memo), b.rebuild_memo(leaf, memo)),
            Node::Sub(a, b) => Expr::difference(a.rebuild_memo(leaf, memo), b.rebuild_memo(leaf, memo)),
            Node::Mul(a, b) => Expr::product(a.rebuild_memo(leaf, memo), b.rebuild_memo(leaf, memo)),
            Node::Div(a, b) => Expr::quotient(a.rebuild_memo(leaf, memo), b.rebuild_memo(leaf, memo)),
            Node::Neg(a) => Expr::negate(a.rebuild_memo(leaf, memo)),
            Node::Pow(a, n) => Expr::pow(a.rebuild_memo(leaf, memo), *n),
            Node::Func(f, a) => Expr::func(*f, a.rebuild_memo(leaf, memo)),
        };
        memo.insert(self.ptr(), out.clone());
        out
    }

    /// Symbolic conjugation `e ↦ e†k`.
    ///
    /// Every conjugation is a ring automorphism commuting with the
    /// elementary functions, so it suffices to act on leaves: constants are
    /// conjugated, and `†1`, `†3` additionally swap `z_k ↔ z̄_k` because
    /// they complex-conjugate the `ℂ(i1)`-valued coordinates.
    pub fn conjugate(&self, k: Conjugation) -> Expr {
        if k == Conjugation::Identity {
            return self.clone();
        }
        let swap = k.conjugates_coordinates();
        self.rebuild(&mut |n| match *n {
            Node::Const(c) => Some(Expr::constant(c.conj(k))),
            Node::Var(v) if swap => Some(Expr::var(v.bar())),
            _ => None,
        })
    }

    /// Replaces each variable by the corresponding expression.
    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<Expr>) -> Expr {
        self.rebuild(&mut |n| match *n {
            Node::Var(v) => map(v),
            _ => None,
        })
    }

    pub fn map_constants(&self, f: impl Fn(Bicomplex) -> Bicomplex) -> Expr {
        self.rebuild(&mut |n| match *n {
            Node::Const(c) => Some(Expr::constant(f(c))),
            _ => None,
        })
    }

    /// Number of distinct nodes in the DAG.
    pub fn node_count(&self) -> usize {
        fn walk(e: &Expr, seen: &mut std::collections::HashSet<*const Node>) {
            if !seen.insert(e.ptr()) {
                return;
            }
            match e.node() {
                Node::Const(_) | Node::Var(_) => {}
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    walk(a, seen);
                    walk(b, seen);
                }
                Node::Neg(a) | Node::Pow(a, _) | Node::Func(_, a) => walk(a, seen),
            }
        }
        let mut seen = std::collections::HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    /// Whether the variable occurs anywhere in the expression.
    pub fn contains_var(&self, v: Var) -> bool {
        fn walk(e: &Expr, v: Var, seen: &mut std::collections::HashSet<*const Node>) -> bool {
            if !seen.insert(e.ptr()) {
                return false;
            }
            match e.node() {
                Node::Const(_) => false,
                Node::Var(w) => *w == v,
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    walk(a, v, seen) || walk(b, v, seen)
                }
                Node::Neg(a) | Node::Pow(a, _) | Node::Func(_, a) => walk(a, v, seen),
            }
        }
        walk(self, v, &mut std::collections::HashSet::new())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $ctor:ident) => {
        impl std::ops::$tr for Expr {
            type Output = Expr;
            fn $m(self, r: Expr) -> Expr {
                Expr::$ctor(self, r)
            }
        }
        impl std::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, r: &Expr) -> Expr {
                Expr::$ctor(self.clone(), r.clone())
            }
        }
        impl std::ops::$tr<f64> for Expr {
            type Output = Expr;
            fn $m(self, r: f64) -> Expr {
                Expr::$ctor(self, Expr::constant(r))
            }
        }
        impl std::ops::$tr<Bicomplex> for Expr {
            type Output = Expr;
            fn $m(self, r: Bicomplex) -> Expr {
                Expr::$ctor(self, Expr::constant(r))
            }
        }
    };
}

binop!(Add, add, sum);
binop!(Sub, sub, difference);
binop!(Mul, mul, product);
binop!(Div, div, quotient);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::negate(self)
    }
}

impl From<Bicomplex> for Expr {
    fn from(c: Bicomplex) -> Self {
        Expr::constant(c)
    }
}

impl From<f64> for Expr {
    fn from(c: f64) -> Self {
        Expr::constant(c)
    }
}

impl From<Var> for Expr {
    fn from(v: Var) -> Self {
        Expr::var(v)
    }
}
