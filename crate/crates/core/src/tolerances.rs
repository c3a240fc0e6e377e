//! Default tolerances. Each is the bound a check must meet on the default
//! grid; they are deliberately not tuned per case.

/// Relative error of algebraic identities on random doubles.
pub const ALGEBRA: f64 = 1e-12;
/// Symbolic-path operator identities such as `Δ_C = 4 ∂_ω ∂_{ω†2}`.
pub const SYMBOLIC: f64 = 1e-12;
/// φ/ψ reconstruction.
pub const DECOMPOSE: f64 = 1e-10;
/// Subalgebra membership of computed coefficients.
pub const MEMBERSHIP: f64 = 1e-12;
/// Vekua residuals of generating-pair elements.
pub const VEKUA: f64 = 1e-11;
/// Agreement of the two (F,G)-derivative formulas and the π transport.
pub const DERIVATIVE: f64 = 1e-10;
/// Planar Vekua residuals in the idempotent splitting.
pub const PLANAR: f64 = 1e-11;
/// Schrödinger factorization and splitting.
pub const SCHRODINGER: f64 = 1e-11;
/// Exact-constant checks such as `ν = 1` for `f0 = exp(z1)`.
pub const EXACT: f64 = 1e-13;
/// Nondegeneracy floor for generating pairs.
pub const PAIR_FLOOR: f64 = 1e-8;
/// `min |f0| ≥ F0_FLOOR · max |f0|` on the grid.
pub const F0_FLOOR: f64 = 1e-6;
/// Allowed deviation of the observed convergence ratio from 4.
pub const FD_RATIO_SLACK: f64 = 0.15;
