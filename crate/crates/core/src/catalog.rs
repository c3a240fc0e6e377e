//! Named test functions, generating pairs and Schrödinger instances.
//!
//! Everything here is smooth, and nonsingular on `[-1, 1]⁴` unless a custom
//! domain is given with the entry.

use crate::bicomplex::Bicomplex;
use crate::expr::Expr;
use crate::grid::{Axis, GridDomain, PlanarGrid};

fn c(w0: f64, w1: f64, w2: f64, w3: f64) -> Expr {
    Expr::constant(Bicomplex::new(w0, w1, w2, w3))
}

#[derive(Debug, Clone)]
pub struct CatalogFunction {
    pub name: &'static str,
    pub expr: Expr,
    /// Expected holomorphy in the bicomplex sense.
    pub holomorphic: bool,
}

/// The 20-function catalog: eight bicomplex-holomorphic functions of `ω`
/// and twelve that are not.
pub fn functions() -> Vec<CatalogFunction> {
    let (z1, z2, cz1, cz2) = (Expr::z1(), Expr::z2(), Expr::cz1(), Expr::cz2());
    let w = Expr::omega();
    let radius = z1.clone() * cz1.clone() + z2.clone() * cz2.clone();
    let f = |name, expr, holomorphic| CatalogFunction { name, expr, holomorphic };
    vec![
        f("omega^2", w.clone().powi(2), true),
        f("omega^3", w.clone().powi(3), true),
        f("exp(omega)", w.clone().exp(), true),
        f("sin(omega)", w.clone().sin(), true),
        f("cosh(omega)", w.clone().cosh(), true),
        f("1/(omega-3)", (w.clone() - 3.0).recip(), true),
        f("omega^5-2omega", w.clone().powi(5) - w.clone() * 2.0, true),
        f("exp(omega)*omega^2", w.clone().exp() * w.clone().powi(2), true),
        f("omega_dagger2", Expr::omega_dagger2(), false),
        f("cz1", cz1.clone(), false),
        f("z1*z2", z1.clone() * z2.clone(), false),
        f("z1*cz1", z1.clone() * cz1.clone(), false),
        f("exp(z1+cz1)", (z1.clone() + cz1.clone()).exp(), false),
        f("sin(z1)*exp(cz2)", z1.clone().sin() * cz2.clone().exp(), false),
        f("cosh(z1*cz1)", (z1.clone() * cz1.clone()).cosh(), false),
        f("sin(z1)*exp(z2*cz2)", z1.clone().sin() * (z2.clone() * cz2.clone()).exp(), false),
        f("exp(z1)*sin(z2)", z1.clone().exp() * z2.clone().sin(), false),
        f("(z1*cz1+z2*cz2)^3", radius.clone().powi(3), false),
        f("cos(z1+cz1)*exp(z2)", (z1.clone() + cz1.clone()).cos() * z2.clone().exp(), false),
        f("1/(z1*cz1+z2*cz2+2)", (radius + 2.0).recip(), false),
    ]
}

pub fn function(name: &str) -> Option<CatalogFunction> {
    functions().into_iter().find(|f| f.name == name)
}

/// Catalog functions whose central-difference error has a nonvanishing
/// `h²` term; used for order-of-accuracy sweeps. A function must mix `zk`
/// and `z̄k` in some variable: if it is holomorphic or antiholomorphic in
/// each of `z1`, `z2` separately, the `h²` terms of the real-partials
/// expansion cancel and the observed order is four. Low-degree
/// polynomials are excluded too: their FD error is exact at every `h` but
/// reaches the asymptotic ratio only on much finer grids.
pub fn fd_sweep_functions() -> Vec<CatalogFunction> {
    let names = [
        "exp(z1+cz1)",
        "cosh(z1*cz1)",
        "sin(z1)*exp(z2*cz2)",
        "cos(z1+cz1)*exp(z2)",
        "1/(z1*cz1+z2*cz2+2)",
    ];
    names.iter().filter_map(|n| function(n)).collect()
}

/// Base lattice of the order-of-accuracy sweeps: `[-0.5, 0.5]⁴` with five
/// nodes per axis, so three halvings end at 33 nodes.
pub fn fd_sweep_grid() -> GridDomain {
    GridDomain::cube(-0.5, 0.5, 5).expect("valid grid")
}

/// Representation class of a generating pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum PairClass {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone)]
pub struct CatalogPair {
    pub name: &'static str,
    pub f: Expr,
    pub g: Expr,
}

/// Ten `i1`-generating pairs (class R1).
pub fn r1_pairs() -> Vec<CatalogPair> {
    let (z1, z2, cz1, cz2) = (Expr::z1(), Expr::z2(), Expr::cz1(), Expr::cz2());
    let i2 = Expr::i2();
    let w = Expr::omega();
    let p = |name, f, g| CatalogPair { name, f, g };
    vec![
        p("1,i2", Expr::one(), i2.clone()),
        p("exp(z1),i2/exp(z1)", z1.clone().exp(), i2.clone() / z1.clone().exp()),
        p("cosh(z1),i2/cosh(z1)", z1.clone().cosh(), i2.clone() / z1.clone().cosh()),
        p("exp(omega),i2*exp(omega)", w.clone().exp(), i2.clone() * w.clone().exp()),
        p("2+cz1*i2,z2+3i2", c(2.0, 0.0, 0.0, 0.0) + cz1.clone() * i2.clone(), z2.clone() + c(0.0, 0.0, 3.0, 0.0)),
        p("exp(cz1),i2*exp(z2)", cz1.clone().exp(), i2.clone() * z2.clone().exp()),
        p(
            "cosh(z2)+0.5i2*sinh(z2),i2*cosh(z2)",
            z2.clone().cosh() + c(0.0, 0.0, 0.5, 0.0) * z2.clone().sinh(),
            i2.clone() * z2.clone().cosh(),
        ),
        p("omega+3,i2", w + 3.0, i2.clone()),
        p("exp(z1*cz2),i2*(2+z1)", (z1.clone() * cz2.clone()).exp(), i2.clone() * (z1.clone() + 2.0)),
        p(
            "1+i2*sin(z1),i2+0.25cz2",
            Expr::one() + i2.clone() * z1.sin(),
            i2 + cz2 * 0.25,
        ),
    ]
}

pub fn r1_pair(name: &str) -> Option<CatalogPair> {
    r1_pairs().into_iter().find(|p| p.name == name)
}

/// A classical planar generating pair in the variables `Z = z1`,
/// `Z̄ = cz1`, with a known family of pseudoanalytic functions.
#[derive(Debug, Clone)]
pub struct PlanarPair {
    pub name: &'static str,
    pub f: Expr,
    pub g: Expr,
    /// Functions known to solve the pair's Vekua equation.
    pub solutions: Vec<Expr>,
    /// A function that does not.
    pub non_solution: Expr,
}

fn planar_x() -> Expr {
    (Expr::z1() + Expr::cz1()) * 0.5
}

pub fn planar_pairs() -> Vec<PlanarPair> {
    let z = Expr::z1();
    let i1 = Expr::i1();
    let x = planar_x();
    let radial = Expr::one() + z.clone() * Expr::cz1() * 0.5;
    vec![
        // (1, i): holomorphic functions
        PlanarPair {
            name: "1,i",
            f: Expr::one(),
            g: i1.clone(),
            solutions: vec![z.clone().powi(2), z.clone().exp() + z.clone() * Expr::constant(Bicomplex::new(0.0, 2.0, 0.0, 0.0))],
            non_solution: Expr::cz1(),
        },
        // (f, i/f) with f real: real combinations of f and i/f
        PlanarPair {
            name: "exp(x),i*exp(-x)",
            f: x.clone().exp(),
            g: i1.clone() * (-x.clone()).exp(),
            solutions: vec![x.clone().exp() * 2.0 - i1.clone() * (-x.clone()).exp() * 0.5],
            non_solution: x.clone().exp() * i1.clone(),
        },
        // (h, i h) with h holomorphic: h times holomorphic functions
        PlanarPair {
            name: "exp(Z),i*exp(Z)",
            f: z.clone().exp(),
            g: i1.clone() * z.clone().exp(),
            solutions: vec![z.clone().exp() * z.clone().powi(2), z.clone().exp() * z.clone().sin()],
            non_solution: z.clone().exp() * Expr::cz1(),
        },
        PlanarPair {
            name: "1+|Z|^2/2,i/(1+|Z|^2/2)",
            f: radial.clone(),
            g: i1.clone() / radial.clone(),
            solutions: vec![radial.clone() * 3.0 + i1.clone() / radial.clone()],
            non_solution: radial * i1,
        },
    ]
}

pub fn planar_pair(name: &str) -> Option<PlanarPair> {
    planar_pairs().into_iter().find(|p| p.name == name)
}

/// An e-pair: one planar pair per idempotent component with its domain.
#[derive(Debug, Clone)]
pub struct EPairSpec {
    pub name: &'static str,
    pub e1: PlanarPair,
    pub e2: PlanarPair,
    pub d1: PlanarGrid,
    pub d2: PlanarGrid,
}

pub fn e_pairs() -> Vec<EPairSpec> {
    let d = PlanarGrid::new((-1.0, 1.0), (-1.0, 1.0), 7);
    let d_shift = PlanarGrid::new((-0.5, 1.0), (-1.0, 0.5), 7);
    let get = |n| planar_pair(n).expect("planar catalog entry");
    vec![
        EPairSpec { name: "1,i|1,i", e1: get("1,i"), e2: get("1,i"), d1: d, d2: d },
        EPairSpec {
            name: "exp(x)|exp(x)",
            e1: get("exp(x),i*exp(-x)"),
            e2: get("exp(x),i*exp(-x)"),
            d1: d,
            d2: d_shift,
        },
        EPairSpec { name: "exp(Z)|1,i", e1: get("exp(Z),i*exp(Z)"), e2: get("1,i"), d1: d_shift, d2: d },
        EPairSpec {
            name: "radial|exp(x)",
            e1: get("1+|Z|^2/2,i/(1+|Z|^2/2)"),
            e2: get("exp(x),i*exp(-x)"),
            d1: d,
            d2: d,
        },
        EPairSpec {
            name: "1,i|exp(Z)",
            e1: get("1,i"),
            e2: get("exp(Z),i*exp(Z)"),
            d1: d,
            d2: d_shift,
        },
    ]
}

/// A particular solution `f0` of the complexified Schrödinger equation.
#[derive(Debug, Clone)]
pub struct F0Entry {
    pub name: &'static str,
    pub expr: Expr,
    /// A domain on which `f0` stays away from zero.
    pub grid: GridDomain,
}

pub fn f0_instances() -> Vec<F0Entry> {
    let z1 = Expr::z1();
    let cube = GridDomain::default_grid();
    // cos(z2) vanishes at z2 = ±π/2; keep |p| ≤ 0.6
    let away = GridDomain::new([
        Axis::active(-1.0, 1.0, 9),
        Axis::active(-1.0, 1.0, 9),
        Axis::active(-0.6, 0.6, 9),
        Axis::active(-0.6, 0.6, 9),
    ])
    .expect("valid grid");
    vec![
        F0Entry { name: "exp-z1", expr: z1.clone().exp(), grid: cube },
        F0Entry { name: "cosh-z1", expr: z1.clone().cosh(), grid: cube },
        F0Entry { name: "exp-z1-cos-z2", expr: z1.exp() * Expr::z2().cos(), grid: away },
        F0Entry { name: "one", expr: Expr::one(), grid: cube },
    ]
}

pub fn f0_instance(name: &str) -> Option<F0Entry> {
    f0_instances().into_iter().find(|f| f.name == name)
}

/// Complex-valued test functions for the factorization checks.
pub fn phi_functions() -> Vec<(&'static str, Expr)> {
    let (z1, z2, cz1, cz2) = (Expr::z1(), Expr::z2(), Expr::cz1(), Expr::cz2());
    vec![
        ("z1^2", z1.clone().powi(2)),
        ("exp(z2)", z2.clone().exp()),
        ("sin(z1*z2)", (z1.clone() * z2).sin()),
        ("z1*cz2+1", z1 * cz2 + 1.0),
        ("cz1^3", cz1.powi(3)),
    ]
}
