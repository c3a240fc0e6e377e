//! Residual reports and the per-point residual metric.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bicomplex::Bicomplex;
use crate::error::EvalError;
use crate::exec::Exec;
use crate::expr::{Expr, Tape};
use crate::grid::{Domain, GridMeta, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub suite: String,
    pub case_id: String,
    /// Name of the identity or theorem the case certifies.
    pub anchor: String,
    pub grid: GridMeta,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_time_ms: f64,
    pub worst_point: Option<Point>,
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

/// Non-finite values are stored as `f64::MAX` so that reports survive a
/// JSON round trip.
pub fn finite_or_max(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::MAX
    }
}

impl ResidualReport {
    pub fn new(suite: &str, case_id: impl Into<String>, anchor: &str, grid: GridMeta, tolerance: f64) -> Self {
        ResidualReport {
            suite: suite.to_string(),
            case_id: case_id.into(),
            anchor: anchor.to_string(),
            grid,
            max_residual: 0.0,
            mean_residual: 0.0,
            tolerance,
            pass: true,
            wall_time_ms: 0.0,
            worst_point: None,
            metrics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Sets max/mean/worst from per-point residuals and recomputes `pass`.
    pub fn with_residuals(mut self, pts: &[Point], res: &[f64]) -> Self {
        let (mut max, mut worst, mut sum) = (0.0_f64, None, 0.0_f64);
        for (i, &r) in res.iter().enumerate() {
            let r = if r.is_nan() { f64::INFINITY } else { r };
            if worst.is_none() || r > max {
                max = r;
                worst = Some(i);
            }
            sum += r;
        }
        self.max_residual = finite_or_max(max);
        self.mean_residual = if res.is_empty() { 0.0 } else { finite_or_max(sum / res.len() as f64) };
        self.worst_point = worst.and_then(|i| pts.get(i).copied());
        self.finish()
    }

    pub fn with_max(mut self, max: f64) -> Self {
        self.max_residual = finite_or_max(if max.is_nan() { f64::INFINITY } else { max });
        self.mean_residual = self.max_residual;
        self.finish()
    }

    /// Merges another residual set: max of maxima, mean of means weighted
    /// equally, worst point of the larger maximum.
    pub fn absorb(mut self, other: &ResidualReport) -> Self {
        if other.max_residual > self.max_residual {
            self.max_residual = other.max_residual;
            self.worst_point = other.worst_point;
        }
        self.mean_residual = 0.5 * (self.mean_residual + other.mean_residual);
        self.finish()
    }

    pub fn metric(mut self, k: &str, v: f64) -> Self {
        self.metrics.insert(k.to_string(), finite_or_max(v));
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        self
    }

    /// Marks the case failed, for errors that prevented evaluation.
    pub fn failed(mut self, why: impl Into<String>) -> Self {
        self.max_residual = f64::MAX;
        self.mean_residual = f64::MAX;
        self.notes.push(why.into());
        self.pass = false;
        self
    }

    fn finish(mut self) -> Self {
        self.pass = self.max_residual <= self.tolerance;
        self
    }
}

/// `|a − b| / max(1, |a|, |b|)`.
pub fn rel_residual(a: Bicomplex, b: Bicomplex) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

/// Per-point residuals of several identities `lhs = rhs`, each point taking
/// the worst identity. Evaluated through a single shared tape.
pub fn pointwise_residuals(
    pairs: &[(Expr, Expr)],
    pts: &[Point],
    exec: Exec,
) -> Result<Vec<f64>, EvalError> {
    let exprs: Vec<Expr> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    let tape = Tape::compile(&exprs);
    let results = exec.map_init(
        pts,
        || (Vec::with_capacity(tape.len()), Vec::with_capacity(exprs.len())),
        |(scratch, out), &pt| {
            tape.eval_into(pt, scratch, out)?;
            Ok(out
                .chunks_exact(2)
                .map(|c| rel_residual(c[0], c[1]))
                .fold(0.0_f64, |m, r| if r.is_nan() { f64::INFINITY } else { m.max(r) }))
        },
    );
    results.into_iter().collect()
}

/// Builds a report for identities `lhs = rhs` over a domain. Evaluation
/// errors turn into a failed report.
pub fn identity_report(
    suite: &str,
    case_id: impl Into<String>,
    anchor: &str,
    pairs: &[(Expr, Expr)],
    domain: &Domain,
    tol: f64,
    exec: Exec,
) -> ResidualReport {
    let start = Instant::now();
    let pts = domain.points();
    let rep = ResidualReport::new(suite, case_id, anchor, domain.meta(), tol);
    match pointwise_residuals(pairs, &pts, exec) {
        Ok(res) => rep.with_residuals(&pts, &res),
        Err(e) => rep.failed(e.to_string()),
    }
    .timed(start)
}
