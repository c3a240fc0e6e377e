//! One line per acceptance criterion. Tolerances are pinned here rather
//! than read from the suites, so a loosened default would show up red.

use std::process::Command;
use std::time::Instant;

use bvk_cli::{emit_report, run_suite, Format, Suite, SuiteConfig};
use bvk_core::calculus::laplacian_factorization_residual;
use bvk_core::{catalog, Domain, Exec, GridDomain, ResidualReport};

struct Sheet {
    lines: Vec<(bool, String)>,
}

impl Sheet {
    fn check(&mut self, n: usize, title: &str, ok: bool, detail: String) {
        let line = format!("[{}] {n:>2} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((ok, line));
    }
}

fn select<'a>(reports: &'a [ResidualReport], prefix: &str) -> Vec<&'a ResidualReport> {
    reports.iter().filter(|r| r.case_id.starts_with(prefix)).collect()
}

fn worst(cases: &[&ResidualReport]) -> f64 {
    cases.iter().map(|r| r.max_residual).fold(0.0, f64::max)
}

fn bounded(cases: &[&ResidualReport], tol: f64) -> bool {
    cases.iter().all(|r| r.max_residual <= tol)
}

fn run(suite: Suite) -> Vec<ResidualReport> {
    run_suite(&SuiteConfig::new(suite)).expect("default config is valid").reports
}

fn canonical(reports: &[ResidualReport]) -> Vec<u8> {
    let mut reports = reports.to_vec();
    for r in &mut reports {
        r.wall_time_ms = 0.0;
    }
    let mut out = Vec::new();
    emit_report(&reports, Format::Json, &mut out).unwrap();
    out
}

fn main() {
    let mut sheet = Sheet { lines: Vec::new() };

    let start = Instant::now();
    let algebra = run(Suite::Algebra);
    let secs = start.elapsed().as_secs_f64();
    let all = algebra.iter().collect::<Vec<_>>();
    sheet.check(
        1,
        "algebra suite",
        all.len() == 21 && bounded(&all, 1e-12) && secs < 1.0,
        format!("{} cases x 1000 samples, max rel err {:.2e} (<= 1e-12), {secs:.3} s (< 1 s)", all.len(), worst(&all)),
    );

    let dom = Domain::Grid(GridDomain::default_grid());
    let start = Instant::now();
    let lap: Vec<ResidualReport> = catalog::functions()
        .iter()
        .map(|f| laplacian_factorization_residual(&f.expr, &dom, Exec::default()))
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let lap_refs: Vec<&ResidualReport> = lap.iter().collect();
    sheet.check(
        2,
        "laplacian = 4 d_omega d_omega-dagger2",
        lap.len() == 20 && bounded(&lap_refs, 1e-12) && secs < 5.0,
        format!("{} functions, max {:.2e} (<= 1e-12), {secs:.3} s (< 5 s)", lap.len(), worst(&lap_refs)),
    );

    let calculus = run(Suite::Calculus);
    let fd = select(&calculus, "fd-convergence:");
    let ratios: Vec<f64> = fd
        .iter()
        .flat_map(|r| (0..3).map(move |i| r.metrics.get(&format!("ratio_{i}")).copied().unwrap_or(f64::NAN)))
        .collect();
    let fd_ok = fd.len() == 5 && ratios.len() == 15 && ratios.iter().all(|r| (r - 4.0).abs() <= 0.6);
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &r| (a.min(r), b.max(r)));
    sheet.check(
        3,
        "finite-difference convergence order",
        fd_ok,
        format!("{} functions x 3 refinements, ratios in [{lo:.3}, {hi:.3}] (4 +- 15%)", fd.len()),
    );

    let holo = select(&calculus, "holomorphy:");
    let disagreements: f64 = holo.iter().map(|r| r.max_residual).sum();
    sheet.check(
        4,
        "holomorphy verdict agreement",
        holo.len() == 20 && disagreements == 0.0,
        format!("{} functions, {disagreements} disagreements", holo.len()),
    );

    let pseudo = run(Suite::Pseudoanalytic);
    let pairs = catalog::r1_pairs();
    let mut ok = pairs.len() == 10;
    let (mut dec, mut vek, mut gen, mut den) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for p in &pairs {
        let d = select(&pseudo, &format!("decompose:{}:", p.name));
        let v = select(&pseudo, &format!("vekua-generators:{}", p.name));
        let g = select(&pseudo, &format!("fg-derivative-generators:{}", p.name));
        let n = select(&pseudo, &format!("denominator:{}", p.name));
        let vk = v
            .iter()
            .flat_map(|r| r.metrics.iter().filter(|(k, _)| k.starts_with('F') || k.starts_with('G')).map(|(_, x)| *x))
            .fold(0.0, f64::max);
        ok &= !d.is_empty() && v.len() == 1 && g.len() == 1 && n.len() == 1;
        ok &= bounded(&d, 1e-10) && vk <= 1e-11 && bounded(&g, 1e-10) && bounded(&n, 1e-12);
        dec = dec.max(worst(&d));
        vek = vek.max(vk);
        gen = gen.max(worst(&g));
        den = den.max(worst(&n));
    }
    sheet.check(
        5,
        "generating pairs",
        ok,
        format!(
            "{} pairs, decompose {dec:.2e} (<= 1e-10), Vekua {vek:.2e} (<= 1e-11), derivative of F, G {gen:.2e}, denominator {den:.2e} (<= 1e-12)",
            pairs.len()
        ),
    );

    let pi = select(&pseudo, "pi-correspondence:");
    sheet.check(
        6,
        "pi-correspondence",
        pi.len() == 25 && bounded(&pi, 1e-10),
        format!("{} pair/function combinations, max {:.2e} (<= 1e-10)", pi.len(), worst(&pi)),
    );

    let split = select(&pseudo, "idempotent-split:");
    let im = select(&pseudo, "e-pair-im-condition:");
    let rejects = select(&pseudo, "idempotent-split-rejects:");
    let n_epairs = catalog::e_pairs().len();
    sheet.check(
        7,
        "idempotent splitting",
        n_epairs == 5 && im.len() == 5 && !split.is_empty() && bounded(&split, 1e-11) && bounded(&im, 1e-11) && rejects.iter().all(|r| r.pass),
        format!(
            "{n_epairs} e-pairs, {} round trips, planar max {:.2e} (<= 1e-11), non-solutions rejected {}/{}",
            split.len(),
            worst(&split).max(worst(&im)),
            rejects.iter().filter(|r| r.pass).count(),
            rejects.len()
        ),
    );

    let schrod = run(Suite::Schrodinger);
    let fact: Vec<&ResidualReport> = ["exp-z1", "cosh-z1", "exp-z1-cos-z2"]
        .iter()
        .flat_map(|n| select(&schrod, &format!("factorization:{n}:")))
        .collect();
    sheet.check(
        8,
        "Schrodinger factorization",
        fact.len() == 15 && bounded(&fact, 1e-11),
        format!("{} instance/function combinations, max {:.2e} (<= 1e-11)", fact.len(), worst(&fact)),
    );

    let splits: Vec<&ResidualReport> = select(&schrod, "split:exp-z1:")
        .into_iter()
        .filter(|r| !r.case_id.ends_with(":user"))
        .collect();
    let all_splits = select(&schrod, "split:");
    let potentials: Vec<&ResidualReport> = schrod.iter().filter(|r| r.case_id == "potentials:exp-z1").collect();
    sheet.check(
        9,
        "scalar/vector splitting",
        splits.len() == 20 && bounded(&all_splits, 1e-11) && potentials.len() == 1 && bounded(&potentials, 1e-13),
        format!(
            "{} seeded (alpha, beta) per instance, max {:.2e} (<= 1e-11), nu = eta = 1 for exp(z1) to {:.2e} (<= 1e-13)",
            splits.len(),
            worst(&all_splits),
            worst(&potentials)
        ),
    );

    let spec: Vec<&ResidualReport> = select(&schrod, "specialize:").into_iter().chain(select(&schrod, "one-dim:")).collect();
    sheet.check(
        10,
        "plane specializations",
        spec.len() >= 8 && bounded(&spec, 1e-11),
        format!("{} restricted runs, max {:.2e} (<= 1e-11)", spec.len(), worst(&spec)),
    );

    let again = run(Suite::Pseudoanalytic);
    let same = canonical(&pseudo) == canonical(&again) && canonical(&schrod) == canonical(&run(Suite::Schrodinger));
    let bin = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_bvk")).args(args).env_remove("BVK_TOL").output().unwrap().status.code()
    };
    let forced = bin(&["--suite", "algebra", "--tol", "1e-30"]);
    let bad = bin(&["--suite", "nope"]);
    sheet.check(
        11,
        "determinism and exit codes",
        same && forced == Some(1) && bad == Some(2),
        format!("repeat runs identical: {same}, forced failure exit {forced:?} (1), bad config exit {bad:?} (2)"),
    );

    let failed = sheet.lines.iter().filter(|(ok, _)| !ok).count();
    println!("acceptance: {} of {} criteria pass", sheet.lines.len() - failed, sheet.lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
