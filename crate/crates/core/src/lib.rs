//! Bicomplex arithmetic, bicomplex pseudoanalytic function theory and the
//! factorization of the complexified two-dimensional Schrödinger operator,
//! with residual checks for every identity on symbolic expressions sampled
//! over grids.
// `!(x <= tol)` is used on purpose so that NaN residuals fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bicomplex;
pub mod calculus;
pub mod catalog;
pub mod error;
pub mod exec;
pub mod expr;
pub mod grid;
pub mod pseudoanalytic;
pub mod report;
pub mod schrodinger;
pub mod tolerances;

pub use bicomplex::{Bicomplex, Conjugation, IdempotentPair, ModulusAxis, Subalgebra};
pub use exec::Exec;
pub use expr::{parse_expr, Expr, Var, WirtingerOp};
pub use grid::{Domain, GridDomain, Plane, Point};
pub use report::ResidualReport;
