use std::time::Instant;

use bvk_core::catalog;
use bvk_core::report::identity_report;
use bvk_core::schrodinger::{
    annihilation_residual, factorization_residual, main_vekua, nu_from_f0, one_dim_factorization_check, specialize,
    split_check, SchrodingerInstance, VekuaMainEquation,
};
use bvk_core::tolerances;
use bvk_core::{Bicomplex, Domain, Exec, Expr, GridDomain, ResidualReport};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{planes, renamed};
use crate::config::{ConfigError, SuiteConfig};

const SUITE: &str = "schrodinger";
pub const SPLIT_SAMPLES: usize = 20;

/// Closed forms of `ν` and `η` for the catalog instances.
fn known_potentials(name: &str) -> Option<(Expr, Expr)> {
    let z1 = Expr::z1();
    Some(match name {
        "exp-z1" => (Expr::one(), Expr::one()),
        "one" => (Expr::zero(), Expr::zero()),
        "cosh-z1" => (Expr::one(), -Expr::one() + (z1.clone().sinh() / z1.cosh()).powi(2) * 2.0),
        "exp-z1-cos-z2" => (Expr::zero(), Expr::z2().cos().powi(2).recip() * 2.0),
        _ => return None,
    })
}

fn instances(cfg: &SuiteConfig) -> Result<Vec<(String, Expr, GridDomain)>, ConfigError> {
    Ok(match cfg.f0_input()? {
        Some((name, e, g)) => vec![(name, e, cfg.grid_or(g))],
        None => catalog::f0_instances()
            .into_iter()
            .map(|f| (f.name.to_string(), f.expr, cfg.grid_or(f.grid)))
            .collect(),
    })
}

fn complex(rng: &mut ChaCha8Rng) -> Bicomplex {
    Bicomplex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), 0.0, 0.0)
}

pub fn cases(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, exec: Exec) -> Result<Vec<ResidualReport>, ConfigError> {
    let user_w = cfg.w_input()?;
    let mut out = Vec::new();
    for (name, f0, grid) in instances(cfg)? {
        let inst = match nu_from_f0(&name, &f0, &grid, exec) {
            Ok(i) => i,
            Err(e) => {
                let r = ResidualReport::new(SUITE, format!("instance:{name}"), "complexified Schrodinger equation", grid.meta(), tolerances::SCHRODINGER)
                    .failed(e.to_string());
                out.push(r);
                continue;
            }
        };
        out.push(renamed(inst.self_check(exec), format!("instance:{name}")).metric("min_abs_f0", inst.min_abs_f0));
        out.push(renamed(annihilation_residual(&inst, exec), format!("annihilation:{name}")));
        for (pname, phi) in catalog::phi_functions() {
            out.push(renamed(factorization_residual(&inst, &phi, exec), format!("factorization:{name}:{pname}")));
        }
        let eq = match main_vekua(&inst, exec) {
            Ok(eq) => eq,
            Err(e) => {
                let r = ResidualReport::new(SUITE, format!("main-vekua:{name}"), "main Vekua equation", grid.meta(), tolerances::SCHRODINGER)
                    .failed(e.to_string());
                out.push(r);
                continue;
            }
        };
        out.extend(equation_cases(&inst, &eq, exec));
        for k in 0..SPLIT_SAMPLES {
            let (alpha, beta) = (complex(rng), complex(rng));
            let w = Expr::constant(alpha) * f0.clone() + Expr::constant(beta) * Expr::i2() / f0.clone();
            let start = Instant::now();
            let rep = split_check(&eq, &w, exec).summary(&name, &w).timed(start);
            out.push(renamed(rep, format!("split:{name}:{k:02}")).note(format!("alpha = {alpha}, beta = {beta}")));
        }
        if let Some(w) = &user_w {
            let start = Instant::now();
            let rep = split_check(&eq, w, exec).summary(&name, w).timed(start);
            out.push(renamed(rep, format!("split:{name}:user")));
        }
        let phis: Vec<Expr> = catalog::phi_functions().into_iter().map(|(_, e)| e).collect();
        for plane in planes(cfg) {
            out.push(renamed(specialize(&inst, plane, &phis, exec), format!("specialize:{}:{name}", plane.label())));
        }
    }
    if cfg.f0.is_none() {
        out.extend(one_dim_cases(exec));
    }
    Ok(out)
}

fn equation_cases(inst: &SchrodingerInstance, eq: &VekuaMainEquation, exec: Exec) -> Vec<ResidualReport> {
    let name = &inst.name;
    let dom = Domain::Grid(inst.grid);
    let mut out = vec![
        renamed(eq.b_omega_report(exec), format!("b-omega:{name}")),
        renamed(eq.eta_consistency(exec), format!("eta:{name}")),
        identity_report(
            SUITE,
            format!("pair-solves:{name}"),
            "f0 and i2/f0 solve the main Vekua equation",
            &[
                (eq.residual_expr(&eq.pair.f), Expr::zero()),
                (eq.residual_expr(&eq.pair.g), Expr::zero()),
            ],
            &dom,
            tolerances::SCHRODINGER,
            exec,
        ),
    ];
    if let Some((nu, eta)) = known_potentials(name) {
        let start = Instant::now();
        let rep = identity_report(
            SUITE,
            format!("potentials:{name}"),
            "closed forms of nu and eta",
            &[(inst.nu.clone(), nu), (eq.eta.clone(), eta)],
            &dom,
            tolerances::EXACT,
            exec,
        );
        out.push(rep.timed(start));
    }
    out
}

fn one_dim_cases(exec: Exec) -> Vec<ResidualReport> {
    let line = GridDomain::line_x(-1.0, 1.0, 33).expect("valid grid");
    // x = (z1 + z̄1)/2 on the real line
    let x = (Expr::z1() + Expr::cz1()) * 0.5;
    let cases = [
        ("exp(x)", x.clone().exp(), "x^2", x.clone().powi(2)),
        ("exp(x)", x.clone().exp(), "exp(x)", x.clone().exp()),
        ("cosh(x)", x.clone().cosh(), "sinh(x)", x.clone().sinh()),
        ("cosh(x)", x.clone().cosh(), "sin(x)", x.sin()),
    ];
    cases
        .into_iter()
        .map(|(fname, f0, pname, phi)| {
            renamed(one_dim_factorization_check(&f0, &phi, &line, exec), format!("one-dim:{fname}:{pname}"))
        })
        .collect()
}
