//! Compiled evaluation of one or more expressions.
//!
//! Compilation flattens the DAGs into a straight-line program. Identical
//! subtrees are shared even when they live in different `Arc`s, which matters
//! because differentiation rebuilds equal subexpressions over and over.

use std::collections::HashMap;

use crate::bicomplex::{Bicomplex, NULL_CONE_TOL};
use crate::error::EvalError;
use crate::exec::Exec;
use crate::grid::Point;

use super::ast::{Expr, Func, Node, Var};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Const(Bicomplex),
    Var(Var),
    Add(u32, u32),
    Sub(u32, u32),
    Mul(u32, u32),
    Div(u32, u32),
    Neg(u32),
    Pow(u32, i32),
    Func(Func, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    Const([u64; 4]),
    Var(Var),
    Bin(u8, u32, u32),
    Neg(u32),
    Pow(u32, i32),
    Func(Func, u32),
}

#[derive(Debug, Clone)]
pub struct Tape {
    ops: Vec<Op>,
    outputs: Vec<u32>,
}

struct Compiler {
    ops: Vec<Op>,
    by_ptr: HashMap<*const Node, u32>,
    by_key: HashMap<Key, u32>,
}

impl Compiler {
    fn push(&mut self, key: Key, op: Op) -> u32 {
        if let Some(&i) = self.by_key.get(&key) {
            return i;
        }
        let i = self.ops.len() as u32;
        self.ops.push(op);
        self.by_key.insert(key, i);
        i
    }

    fn emit(&mut self, e: &Expr) -> u32 {
        if let Some(&i) = self.by_ptr.get(&e.ptr()) {
            return i;
        }
        let idx = match e.node() {
            Node::Const(c) => {
                let bits = c.components().map(|v| (v + 0.0).to_bits());
                self.push(Key::Const(bits), Op::Const(*c))
            }
            Node::Var(v) => self.push(Key::Var(*v), Op::Var(*v)),
            Node::Add(a, b) => {
                let (a, b) = (self.emit(a), self.emit(b));
                let (lo, hi) = (a.min(b), a.max(b));
                self.push(Key::Bin(0, lo, hi), Op::Add(a, b))
            }
            Node::Sub(a, b) => {
                let (a, b) = (self.emit(a), self.emit(b));
                self.push(Key::Bin(1, a, b), Op::Sub(a, b))
            }
            Node::Mul(a, b) => {
                let (a, b) = (self.emit(a), self.emit(b));
                let (lo, hi) = (a.min(b), a.max(b));
                self.push(Key::Bin(2, lo, hi), Op::Mul(a, b))
            }
            Node::Div(a, b) => {
                let (a, b) = (self.emit(a), self.emit(b));
                self.push(Key::Bin(3, a, b), Op::Div(a, b))
            }
            Node::Neg(a) => {
                let a = self.emit(a);
                self.push(Key::Neg(a), Op::Neg(a))
            }
            Node::Pow(a, n) => {
                let a = self.emit(a);
                self.push(Key::Pow(a, *n), Op::Pow(a, *n))
            }
            Node::Func(f, a) => {
                let a = self.emit(a);
                self.push(Key::Func(*f, a), Op::Func(*f, a))
            }
        };
        self.by_ptr.insert(e.ptr(), idx);
        idx
    }
}

impl Tape {
    pub fn compile(exprs: &[Expr]) -> Tape {
        let mut c = Compiler {
            ops: Vec::new(),
            by_ptr: HashMap::new(),
            by_key: HashMap::new(),
        };
        let outputs = exprs.iter().map(|e| c.emit(e)).collect();
        Tape { ops: c.ops, outputs }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Evaluates at `pt`, writing all outputs into `out`. `scratch` is
    /// resized as needed and may be reused between calls.
    pub fn eval_into(
        &self,
        pt: Point,
        scratch: &mut Vec<Bicomplex>,
        out: &mut Vec<Bicomplex>,
    ) -> Result<(), EvalError> {
        let z1 = Bicomplex::from_complex(pt.z1());
        let z2 = Bicomplex::from_complex(pt.z2());
        let vars = [z1, z2, z1.conj(crate::Conjugation::Dagger1), z2.conj(crate::Conjugation::Dagger1)];
        scratch.clear();
        scratch.reserve(self.ops.len());
        for op in &self.ops {
            let s = &*scratch;
            let v = match *op {
                Op::Const(c) => c,
                Op::Var(v) => vars[v.slot()],
                Op::Add(a, b) => s[a as usize] + s[b as usize],
                Op::Sub(a, b) => s[a as usize] - s[b as usize],
                Op::Mul(a, b) => s[a as usize] * s[b as usize],
                Op::Div(a, b) => {
                    let d = s[b as usize];
                    let inv = d
                        .inverse()
                        .map_err(|_| EvalError::SingularPoint { value: d, point: pt })?;
                    s[a as usize] * inv
                }
                Op::Neg(a) => -s[a as usize],
                Op::Pow(a, n) => {
                    let base = s[a as usize];
                    if n < 0 && base.is_null_cone(NULL_CONE_TOL) {
                        return Err(EvalError::SingularPoint { value: base, point: pt });
                    }
                    base.powi(n)
                        .map_err(|_| EvalError::SingularPoint { value: base, point: pt })?
                }
                Op::Func(f, a) => f.apply(s[a as usize]),
            };
            scratch.push(v);
        }
        out.clear();
        for &o in &self.outputs {
            let v = scratch[o as usize];
            if !v.is_finite() {
                return Err(EvalError::NonFinite { point: pt });
            }
            out.push(v);
        }
        Ok(())
    }

    pub fn eval(&self, pt: Point) -> Result<Vec<Bicomplex>, EvalError> {
        let mut scratch = Vec::new();
        let mut out = Vec::new();
        self.eval_into(pt, &mut scratch, &mut out)?;
        Ok(out)
    }

    /// Evaluates at every point. On failure the error for the first failing
    /// point (in point order) is returned, independent of `exec`.
    pub fn eval_points(&self, pts: &[Point], exec: Exec) -> Result<Vec<Vec<Bicomplex>>, EvalError> {
        let results = exec.map_init(
            pts,
            || Vec::with_capacity(self.ops.len()),
            |scratch, &pt| {
                let mut out = Vec::with_capacity(self.outputs.len());
                self.eval_into(pt, scratch, &mut out).map(|_| out)
            },
        );
        results.into_iter().collect()
    }
}

impl Expr {
    /// One-off evaluation. Prefer a [`Tape`] for repeated use.
    pub fn eval(&self, pt: Point) -> Result<Bicomplex, EvalError> {
        Ok(Tape::compile(std::slice::from_ref(self)).eval(pt)?[0])
    }
}
