//! Case generators, one module per suite.

pub mod algebra;
pub mod calculus;
pub mod pseudo;
pub mod schrodinger;

use bvk_core::{Plane, ResidualReport};

use crate::config::SuiteConfig;

pub(crate) fn renamed(mut r: ResidualReport, id: impl Into<String>) -> ResidualReport {
    r.case_id = id.into();
    r
}

pub(crate) fn planes(cfg: &SuiteConfig) -> Vec<Plane> {
    match cfg.plane {
        Some(p) => vec![p],
        None => vec![Plane::ComplexI2, Plane::Hyperbolic],
    }
}
