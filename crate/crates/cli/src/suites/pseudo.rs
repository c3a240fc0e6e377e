use std::time::Instant;

use bvk_core::catalog;
use bvk_core::pseudoanalytic::{
    build_e_pair, char_coeffs, idempotent_split_check, lemma_im_condition, recombine, decompose_report, denominator_identity, fg_derivative, fg_derivative_agreement, pi_correspondence,
    reduction_condition, validate_pair, vekua_residual, GeneratingPair,
};
use bvk_core::report::identity_report;
use bvk_core::tolerances;
use bvk_core::{Exec, Expr, GridDomain, ResidualReport};

use super::renamed;
use crate::config::{ConfigError, SuiteConfig};

const SUITE: &str = "pseudoanalytic";

/// Test functions for decomposition, derivative and π-transport cases.
pub const TEST_FUNCTIONS: [&str; 5] = [
    "omega^2",
    "exp(z1)*sin(z2)",
    "cosh(z1*cz1)",
    "1/(omega-3)",
    "sin(z1)*exp(cz2)",
];

/// Number of catalog pairs used for the π-correspondence.
pub const PI_PAIRS: usize = 5;

fn tests(cfg: &SuiteConfig) -> Result<Vec<(String, Expr)>, ConfigError> {
    let mut v: Vec<(String, Expr)> = TEST_FUNCTIONS
        .iter()
        .map(|n| (n.to_string(), catalog::function(n).expect("catalog function").expr))
        .collect();
    if let Some(w) = cfg.w_input()? {
        v.push((cfg.w.clone().unwrap_or_default(), w));
    }
    Ok(v)
}

fn pairs(cfg: &SuiteConfig) -> Result<Vec<GeneratingPair>, ConfigError> {
    let grid = GridDomain::default_grid();
    Ok(match cfg.pair_input()? {
        Some((name, f, g)) => vec![cfg.r1_pair(name, f, g, grid)],
        None => catalog::r1_pairs()
            .into_iter()
            .map(|p| cfg.r1_pair(p.name.to_string(), p.f, p.g, grid))
            .collect(),
    })
}

pub fn cases(cfg: &SuiteConfig, exec: Exec) -> Result<Vec<ResidualReport>, ConfigError> {
    let tests = tests(cfg)?;
    let pairs = pairs(cfg)?;
    let mut out = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        out.extend(pair_cases(p, &tests, exec));
        if i < PI_PAIRS {
            let grid = match p.domain {
                bvk_core::Domain::Grid(g) => g,
                _ => unreachable!("R1 pairs live on lattices"),
            };
            for (name, w) in &tests {
                let id = format!("pi-correspondence:{}:{name}", p.name);
                let rep = match pi_correspondence(w, p, &grid, exec) {
                    Ok(r) => r,
                    Err(e) => ResidualReport::new(SUITE, "", "pi-correspondence", grid.meta(), tolerances::DERIVATIVE)
                        .failed(e.to_string()),
                };
                out.push(renamed(rep, id));
            }
        }
    }
    for spec in catalog::e_pairs() {
        out.extend(e_pair_cases(&spec, exec));
    }
    Ok(out)
}

fn pair_cases(p: &GeneratingPair, tests: &[(String, Expr)], exec: Exec) -> Vec<ResidualReport> {
    let mut out = Vec::new();
    let id = |what: &str| format!("{what}:{}", p.name);
    match validate_pair(p, exec) {
        Ok(r) => out.push(renamed(r, id("validate"))),
        Err(e) => {
            let r = ResidualReport::new(SUITE, "", "generating-pair nondegeneracy", p.domain.meta(), 1.0)
                .failed(e.to_string());
            out.push(renamed(r, id("validate")));
            return out;
        }
    }
    out.push(renamed(denominator_identity(p, exec), id("denominator")));

    let mut ws = vec![("F".to_string(), p.f.clone()), ("G".to_string(), p.g.clone())];
    ws.extend(tests.iter().cloned());
    for (name, w) in &ws {
        out.push(renamed(decompose_report(w, p, exec), format!("decompose:{}:{name}", p.name)));
    }

    let cc = char_coeffs(p);
    let start = Instant::now();
    let mut gen = ResidualReport::new(
        SUITE,
        id("vekua-generators"),
        "F and G solve the three bicomplex Vekua equations",
        p.domain.meta(),
        tolerances::VEKUA,
    );
    for k in 1..=3 {
        for (name, w) in ws.iter().take(2) {
            let r = vekua_residual(w, p, &cc, k, exec);
            gen = gen.metric(&format!("{name}_k{k}"), r.max_residual).absorb(&r);
        }
        let red = reduction_condition(p, &cc, k, &[], exec);
        gen = gen.metric(&format!("reduction_condition_k{k}"), red.max_residual);
    }
    out.push(gen.timed(start));

    let zero_deriv = identity_report(
        SUITE,
        id("fg-derivative-generators"),
        "(F,G)-derivatives of F and G vanish",
        &[
            (fg_derivative(&p.f, p, &cc), Expr::zero()),
            (fg_derivative(&p.g, p, &cc), Expr::zero()),
        ],
        &p.domain,
        tolerances::DERIVATIVE,
        exec,
    );
    out.push(zero_deriv);
    for (name, w) in tests {
        out.push(renamed(fg_derivative_agreement(w, p, &cc, exec), format!("fg-derivative:{}:{name}", p.name)));
    }
    out
}

fn e_pair_cases(spec: &catalog::EPairSpec, exec: Exec) -> Vec<ResidualReport> {
    let id = |what: &str| format!("{what}:{}", spec.name);
    let ep = match build_e_pair(spec, exec) {
        Ok(ep) => ep,
        Err(e) => {
            let meta = bvk_core::grid::EProductDomain::new(spec.d1, spec.d2).meta();
            let r = ResidualReport::new(SUITE, id("e-pair"), "e-pair construction", meta, tolerances::PLANAR)
                .failed(e.to_string());
            return vec![r];
        }
    };
    let mut out = vec![renamed(lemma_im_condition(&ep, exec), id("e-pair-im-condition"))];
    let mut k = 0;
    for s1 in &spec.e1.solutions {
        for s2 in &spec.e2.solutions {
            let w = recombine(s1, s2);
            out.push(renamed(idempotent_split_check(&w, &ep, exec), format!("idempotent-split:{}:{k}", spec.name)));
            k += 1;
        }
    }
    // A non-solution in one component must be detected.
    let w = recombine(&spec.e1.non_solution, &spec.e2.solutions[0]);
    let r = idempotent_split_check(&w, &ep, exec);
    let detected = ResidualReport::new(
        SUITE,
        id("idempotent-split-rejects"),
        "idempotent splitting of pseudoanalytic functions",
        r.grid.clone(),
        0.5,
    )
    .with_max(if r.pass { 1.0 } else { 0.0 })
    .metric("non_solution_residual", r.max_residual)
    .note("residual is 1 if a non-solution passed the splitting check");
    out.push(detected);
    out
}
