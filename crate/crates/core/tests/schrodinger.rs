use bvk_core::catalog;
use bvk_core::schrodinger::{
    factorization_residual, main_vekua, nu_from_f0, one_dim_factorization_check, split_check, SchrodingerInstance,
};
use bvk_core::{Bicomplex, Exec, Expr, GridDomain, Plane};
use proptest::prelude::*;

fn instance(name: &str) -> SchrodingerInstance {
    let f = catalog::f0_instance(name).unwrap();
    nu_from_f0(name, &f.expr, &GridDomain::cube(-1.0, 1.0, 3).unwrap(), Exec::Sequential).unwrap()
}

#[test]
fn exp_potentials_are_one() {
    let inst = instance("exp-z1");
    let eq = main_vekua(&inst, Exec::Sequential).unwrap();
    for pt in inst.grid.points() {
        assert!((inst.nu.eval(pt).unwrap() - Bicomplex::ONE).norm() < 1e-13);
        assert!((eq.eta.eval(pt).unwrap() - Bicomplex::ONE).norm() < 1e-13);
    }
}

#[test]
fn cosh_eta_varies() {
    let inst = instance("cosh-z1");
    let eq = main_vekua(&inst, Exec::Sequential).unwrap();
    let vals: Vec<Bicomplex> = inst.grid.points().into_iter().map(|p| eq.eta.eval(p).unwrap()).collect();
    let spread = vals.iter().map(|v| (*v - vals[0]).norm()).fold(0.0, f64::max);
    assert!(spread > 0.1);
}

#[test]
fn factorization_holds_for_catalog() {
    for name in ["exp-z1", "cosh-z1", "exp-z1-cos-z2"] {
        let inst = instance(name);
        for (pname, phi) in catalog::phi_functions() {
            let r = factorization_residual(&inst, &phi, Exec::Sequential);
            assert!(r.max_residual <= 1e-11, "{name} {pname}: {}", r.max_residual);
        }
    }
}

#[test]
fn vanishing_f0_is_rejected() {
    let g = GridDomain::cube(-1.0, 1.0, 3).unwrap();
    assert!(nu_from_f0("z1", &Expr::z1(), &g, Exec::Sequential).is_err());
    assert!(nu_from_f0("i2", &Expr::i2(), &g, Exec::Sequential).is_err());
}

#[test]
fn one_dim_example() {
    // f0 = exp(x) gives −d² + 1 = −(d + 1)(d − 1); applied to x² this is 1·x² − 2.
    let x = (Expr::z1() + Expr::cz1()) * 0.5;
    let line = GridDomain::line_x(-1.0, 1.0, 17).unwrap();
    let r = one_dim_factorization_check(&x.clone().exp(), &x.powi(2), &line, Exec::Sequential);
    assert!(r.pass, "{}", r.max_residual);
}

#[test]
fn restricted_planes_check() {
    let inst = instance("exp-z1");
    let phis: Vec<Expr> = catalog::phi_functions().into_iter().map(|(_, e)| e).collect();
    for plane in [Plane::ComplexI2, Plane::Hyperbolic] {
        let r = bvk_core::schrodinger::specialize(&inst, plane, &phis, Exec::Sequential);
        assert!(r.pass, "{plane:?}: {}", r.max_residual);
    }
}

#[test]
fn non_solution_fails_split() {
    let eq = main_vekua(&instance("cosh-z1"), Exec::Sequential).unwrap();
    let s = split_check(&eq, &Expr::z1(), Exec::Sequential);
    assert!(!s.vekua.pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solution_combinations_split(a in (-2.0..2.0f64, -2.0..2.0f64), b in (-2.0..2.0f64, -2.0..2.0f64), k in 0usize..3) {
        let name = ["exp-z1", "cosh-z1", "exp-z1-cos-z2"][k];
        let f = catalog::f0_instance(name).unwrap();
        let inst = nu_from_f0(name, &f.expr, &f.grid.refine(0), Exec::Sequential).unwrap();
        let eq = main_vekua(&inst, Exec::Sequential).unwrap();
        let (a, b) = (Bicomplex::new(a.0, a.1, 0.0, 0.0), Bicomplex::new(b.0, b.1, 0.0, 0.0));
        let w = Expr::constant(a) * f.expr.clone() + Expr::constant(b) * Expr::i2() / f.expr.clone();
        let rep = split_check(&eq, &w, Exec::Sequential).summary(name, &w);
        prop_assert!(rep.max_residual <= 1e-11, "{}", rep.max_residual);
    }
}
