use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use bvk_core::catalog::{self, PairClass};
use bvk_core::error::{GridError, ParseError};
use bvk_core::pseudoanalytic::GeneratingPair;
use bvk_core::{parse_expr, Domain, Expr, GridDomain, Plane};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown suite `{0}` (expected algebra, calculus, pseudoanalytic, schrodinger or all)")]
    UnknownSuite(String),
    #[error("unknown format `{0}` (expected json or csv)")]
    UnknownFormat(String),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("invalid grid: {0}")]
    Grid(#[from] GridError),
    #[error("cannot parse {what} `{input}`: {source}")]
    Expr {
        what: &'static str,
        input: String,
        source: ParseError,
    },
    #[error("a pair is written `F,G` or names a catalog pair, got `{0}`")]
    BadPair(String),
    #[error("--{0} is not used by suite `{1}`")]
    UnusedInput(&'static str, Suite),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Algebra,
    Calculus,
    Pseudoanalytic,
    Schrodinger,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Calculus => "calculus",
            Suite::Pseudoanalytic => "pseudoanalytic",
            Suite::Schrodinger => "schrodinger",
            Suite::All => "all",
        }
    }

    /// The concrete suites this selection runs, in run order.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Algebra, Suite::Calculus, Suite::Pseudoanalytic, Suite::Schrodinger],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "algebra" => Suite::Algebra,
            "calculus" => Suite::Calculus,
            "pseudoanalytic" => Suite::Pseudoanalytic,
            "schrodinger" => Suite::Schrodinger,
            "all" => Suite::All,
            _ => return Err(ConfigError::UnknownSuite(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(ConfigError::UnknownFormat(s.to_string())),
        }
    }
}

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Replaces the default grid of every grid-based case.
    pub grid: Option<GridDomain>,
    /// Restricts the plane specializations to one plane.
    pub plane: Option<Plane>,
    /// Catalog name or DSL string.
    pub f0: Option<String>,
    /// Catalog name or `F,G` in the DSL.
    pub pair: Option<String>,
    /// Extra test function for the pseudoanalytic and schrodinger suites.
    pub w: Option<String>,
    /// Overrides every residual tolerance. Structural checks (pair
    /// nondegeneracy, FD order slack, verdict agreement) keep their own.
    pub tol: Option<f64>,
    pub seed: u64,
    pub refine: u32,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            grid: None,
            plane: None,
            f0: None,
            pair: None,
            w: None,
            tol: None,
            seed: DEFAULT_SEED,
            refine: 0,
            out: None,
            format: Format::Json,
        }
    }
}

/// Tolerances at or above this are structural rather than residual bounds.
pub(crate) const STRUCTURAL_TOL: f64 = 1e-6;

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig { suite, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(ConfigError::BadTolerance(t));
            }
        }
        if let Some(g) = &self.grid {
            g.validate()?;
        }
        let runs = |s: Suite| self.suite == s || self.suite == Suite::All;
        if self.f0.is_some() && !runs(Suite::Schrodinger) {
            return Err(ConfigError::UnusedInput("f0", self.suite));
        }
        if self.pair.is_some() && !runs(Suite::Pseudoanalytic) {
            return Err(ConfigError::UnusedInput("pair", self.suite));
        }
        if self.w.is_some() && !(runs(Suite::Pseudoanalytic) || runs(Suite::Schrodinger)) {
            return Err(ConfigError::UnusedInput("w", self.suite));
        }
        self.f0_input()?;
        self.pair_input()?;
        self.w_input()?;
        Ok(())
    }

    /// The grid for a case whose default is `default`, after `--grid` and
    /// `--refine`.
    pub fn grid_or(&self, default: GridDomain) -> GridDomain {
        self.grid.unwrap_or(default).refine(self.refine)
    }

    /// `(name, expr, grid)` for a user-supplied `f0`.
    pub fn f0_input(&self) -> Result<Option<(String, Expr, GridDomain)>, ConfigError> {
        let Some(s) = &self.f0 else { return Ok(None) };
        if let Some(e) = catalog::f0_instance(s) {
            return Ok(Some((e.name.to_string(), e.expr, e.grid)));
        }
        let e = parse(s, "f0")?;
        Ok(Some((s.clone(), e, GridDomain::default_grid())))
    }

    pub fn pair_input(&self) -> Result<Option<(String, Expr, Expr)>, ConfigError> {
        let Some(s) = &self.pair else { return Ok(None) };
        if let Some(p) = catalog::r1_pair(s) {
            return Ok(Some((p.name.to_string(), p.f, p.g)));
        }
        let (f, g) = split_pair(s).ok_or_else(|| ConfigError::BadPair(s.clone()))?;
        Ok(Some((s.clone(), parse(f, "pair")?, parse(g, "pair")?)))
    }

    pub fn w_input(&self) -> Result<Option<Expr>, ConfigError> {
        self.w.as_deref().map(|s| parse(s, "w")).transpose()
    }

    pub(crate) fn r1_pair(&self, name: String, f: Expr, g: Expr, grid: GridDomain) -> GeneratingPair {
        GeneratingPair::new(name, f, g, PairClass::R1, Domain::Grid(self.grid_or(grid)))
    }
}

fn parse(s: &str, what: &'static str) -> Result<Expr, ConfigError> {
    parse_expr(s).map_err(|source| ConfigError::Expr { what, input: s.to_string(), source })
}

/// Splits `F,G` at the single top-level comma.
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut at = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if at.is_some() {
                    return None;
                }
                at = Some(i);
            }
            _ => {}
        }
    }
    at.map(|i| (s[..i].trim(), s[i + 1..].trim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_splitting() {
        assert_eq!(split_pair("exp(z1), I2*exp(-z1)"), Some(("exp(z1)", "I2*exp(-z1)")));
        assert_eq!(split_pair("1"), None);
        assert_eq!(split_pair("1,2,3"), None);
    }

    #[test]
    fn inputs_resolve() {
        let cfg = SuiteConfig {
            f0: Some("cosh-z1".into()),
            pair: Some("z1+3, I2".into()),
            ..SuiteConfig::new(Suite::All)
        };
        cfg.validate().unwrap();
        assert_eq!(cfg.f0_input().unwrap().unwrap().0, "cosh-z1");
        assert!(cfg.pair_input().unwrap().is_some());
        let bad = SuiteConfig { f0: Some("z1 +".into()), ..SuiteConfig::new(Suite::Schrodinger) };
        assert!(matches!(bad.validate(), Err(ConfigError::Expr { .. })));
        let unused = SuiteConfig { f0: Some("one".into()), ..SuiteConfig::new(Suite::Algebra) };
        assert!(matches!(unused.validate(), Err(ConfigError::UnusedInput(..))));
        let tol = SuiteConfig { tol: Some(-1.0), ..Default::default() };
        assert!(matches!(tol.validate(), Err(ConfigError::BadTolerance(_))));
    }
}
