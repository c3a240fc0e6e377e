//! The ring of bicomplex numbers.
//!
//! A bicomplex number is `w = w0 + w1*i1 + w2*i2 + w3*j` with commuting
//! imaginary units `i1² = i2² = -1` and `j = i1*i2`, so `j² = 1`. Besides the
//! four real components there are two derived views, never stored:
//!
//! * the `(z1, z2)` view `w = z1 + z2*i2` with `z1, z2 ∈ ℂ(i1)`;
//! * the idempotent view `w = P1(w)*e1 + P2(w)*e2` with `e1 = (1+j)/2`,
//!   `e2 = (1-j)/2`, in which every ring operation acts componentwise.
//!
//! Elementary functions of a bicomplex argument are defined through the
//! idempotent view, by applying the complex function to `P1` and `P2`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{BicomplexError, ParseError};

/// Default relative tolerance used by [`Bicomplex::is_null_cone`] callers.
pub const NULL_CONE_TOL: f64 = 1e-10;

/// Absolute floor (scaled by input magnitude) for subalgebra membership.
pub const SUBALGEBRA_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bicomplex {
    pub w0: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

/// The four conjugations of the ring. They form a Klein four-group under
/// composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Conjugation {
    /// `†0`, the identity.
    Identity,
    /// `†1`: `z1 + z2 i2 ↦ conj(z1) + conj(z2) i2`, signature `(+-+-)`.
    Dagger1,
    /// `†2`: `z1 + z2 i2 ↦ z1 - z2 i2`, signature `(++--)`.
    Dagger2,
    /// `†3`: `z1 + z2 i2 ↦ conj(z1) - conj(z2) i2`, signature `(+--+)`.
    Dagger3,
}

impl Conjugation {
    pub const ALL: [Conjugation; 4] = [
        Conjugation::Identity,
        Conjugation::Dagger1,
        Conjugation::Dagger2,
        Conjugation::Dagger3,
    ];

    pub fn index(self) -> u8 {
        match self {
            Conjugation::Identity => 0,
            Conjugation::Dagger1 => 1,
            Conjugation::Dagger2 => 2,
            Conjugation::Dagger3 => 3,
        }
    }

    pub fn from_index(k: u8) -> Option<Self> {
        match k {
            0 => Some(Conjugation::Identity),
            1 => Some(Conjugation::Dagger1),
            2 => Some(Conjugation::Dagger2),
            3 => Some(Conjugation::Dagger3),
            _ => None,
        }
    }

    /// Composition `self ∘ other`. The group is `ℤ2 × ℤ2`, so the table is
    /// the XOR of the indices.
    pub fn compose(self, other: Conjugation) -> Conjugation {
        Conjugation::from_index(self.index() ^ other.index()).expect("xor of 2-bit indices")
    }

    /// Sign pattern applied to `(w0, w1, w2, w3)`.
    pub fn signature(self) -> [f64; 4] {
        match self {
            Conjugation::Identity => [1.0, 1.0, 1.0, 1.0],
            Conjugation::Dagger1 => [1.0, -1.0, 1.0, -1.0],
            Conjugation::Dagger2 => [1.0, 1.0, -1.0, -1.0],
            Conjugation::Dagger3 => [1.0, -1.0, -1.0, 1.0],
        }
    }

    /// Whether the conjugation maps the ℂ(i1)-valued coordinates `z_k` to
    /// their complex conjugates (true for `†1` and `†3`).
    pub fn conjugates_coordinates(self) -> bool {
        matches!(self, Conjugation::Dagger1 | Conjugation::Dagger3)
    }
}

impl fmt::Display for Conjugation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "†{}", self.index())
    }
}

/// The three two-dimensional subalgebras the square moduli land in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subalgebra {
    /// `ℂ(i1) = {a + b i1}`.
    ComplexI1,
    /// `ℂ(i2) = {a + c i2}`.
    ComplexI2,
    /// Hyperbolic numbers `𝔻 = {a + d j}`.
    Hyperbolic,
}

impl Subalgebra {
    /// Norm of the components lying outside the subalgebra.
    pub fn leak(self, w: Bicomplex) -> f64 {
        match self {
            Subalgebra::ComplexI1 => w.w2.hypot(w.w3),
            Subalgebra::ComplexI2 => w.w1.hypot(w.w3),
            Subalgebra::Hyperbolic => w.w1.hypot(w.w2),
        }
    }

    pub fn project(self, w: Bicomplex) -> Bicomplex {
        match self {
            Subalgebra::ComplexI1 => Bicomplex::new(w.w0, w.w1, 0.0, 0.0),
            Subalgebra::ComplexI2 => Bicomplex::new(w.w0, 0.0, w.w2, 0.0),
            Subalgebra::Hyperbolic => Bicomplex::new(w.w0, 0.0, 0.0, w.w3),
        }
    }

    pub fn contains(self, w: Bicomplex, tol: f64) -> bool {
        self.leak(w) <= tol * w.norm().max(1.0)
    }
}

/// Selects which square modulus `modulus_sq` computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModulusAxis {
    /// `|w|²_{i1} = w w†2 = z1² + z2² ∈ ℂ(i1)`.
    I1,
    /// `|w|²_{i2} = w w†1 ∈ ℂ(i2)`.
    I2,
    /// `|w|²_j = w w†3 ∈ 𝔻`.
    J,
}

impl ModulusAxis {
    pub fn conjugation(self) -> Conjugation {
        match self {
            ModulusAxis::I1 => Conjugation::Dagger2,
            ModulusAxis::I2 => Conjugation::Dagger1,
            ModulusAxis::J => Conjugation::Dagger3,
        }
    }

    pub fn subalgebra(self) -> Subalgebra {
        match self {
            ModulusAxis::I1 => Subalgebra::ComplexI1,
            ModulusAxis::I2 => Subalgebra::ComplexI2,
            ModulusAxis::J => Subalgebra::Hyperbolic,
        }
    }
}

/// The idempotent components `(P1(w), P2(w))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdempotentPair {
    pub p1: Complex64,
    pub p2: Complex64,
}

impl IdempotentPair {
    pub fn new(p1: Complex64, p2: Complex64) -> Self {
        IdempotentPair { p1, p2 }
    }

    pub fn map(self, f: impl Fn(Complex64) -> Complex64) -> Self {
        IdempotentPair::new(f(self.p1), f(self.p2))
    }

    pub fn zip(self, other: Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        IdempotentPair::new(f(self.p1, other.p1), f(self.p2, other.p2))
    }

    /// `p1 e1 + p2 e2`.
    pub fn recombine(self) -> Bicomplex {
        Bicomplex::from_idempotent(self)
    }

    pub fn is_null_cone(self, tol: f64) -> bool {
        let scale = self.p1.norm().max(self.p2.norm()).max(1.0);
        self.p1.norm().min(self.p2.norm()) <= tol * scale
    }
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Bicomplex = Bicomplex::new(1.0, 0.0, 0.0, 0.0);
    pub const I1: Bicomplex = Bicomplex::new(0.0, 1.0, 0.0, 0.0);
    pub const I2: Bicomplex = Bicomplex::new(0.0, 0.0, 1.0, 0.0);
    pub const J: Bicomplex = Bicomplex::new(0.0, 0.0, 0.0, 1.0);
    pub const E1: Bicomplex = Bicomplex::new(0.5, 0.0, 0.0, 0.5);
    pub const E2: Bicomplex = Bicomplex::new(0.5, 0.0, 0.0, -0.5);

    pub const fn new(w0: f64, w1: f64, w2: f64, w3: f64) -> Self {
        Bicomplex { w0, w1, w2, w3 }
    }

    pub const fn real(a: f64) -> Self {
        Bicomplex::new(a, 0.0, 0.0, 0.0)
    }

    /// Embeds `a + b i1` as a bicomplex number.
    pub fn from_complex(z: Complex64) -> Self {
        Bicomplex::new(z.re, z.im, 0.0, 0.0)
    }

    /// Builds `z1 + z2 i2`.
    pub fn from_z(z1: Complex64, z2: Complex64) -> Self {
        Bicomplex::new(z1.re, z1.im, z2.re, z2.im)
    }

    pub fn z1(self) -> Complex64 {
        Complex64::new(self.w0, self.w1)
    }

    pub fn z2(self) -> Complex64 {
        Complex64::new(self.w2, self.w3)
    }

    pub fn components(self) -> [f64; 4] {
        [self.w0, self.w1, self.w2, self.w3]
    }

    pub fn from_components(c: [f64; 4]) -> Self {
        Bicomplex::new(c[0], c[1], c[2], c[3])
    }

    pub fn scale(self, s: f64) -> Self {
        Bicomplex::new(self.w0 * s, self.w1 * s, self.w2 * s, self.w3 * s)
    }

    pub fn conj(self, k: Conjugation) -> Self {
        let s = k.signature();
        Bicomplex::new(self.w0 * s[0], self.w1 * s[1], self.w2 * s[2], self.w3 * s[3])
    }

    pub fn modulus_sq(self, axis: ModulusAxis) -> Bicomplex {
        let m = self * self.conj(axis.conjugation());
        debug_assert!(
            axis.subalgebra().leak(m) <= 1e3 * SUBALGEBRA_FLOOR * self.norm_sqr().max(1.0),
            "modulus landed outside its subalgebra"
        );
        m
    }

    /// Euclidean norm in ℝ⁴.
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(self) -> f64 {
        self.w0 * self.w0 + self.w1 * self.w1 + self.w2 * self.w2 + self.w3 * self.w3
    }

    pub fn p1(self) -> Complex64 {
        // z1 - z2 i1
        Complex64::new(self.w0 + self.w3, self.w1 - self.w2)
    }

    pub fn p2(self) -> Complex64 {
        // z1 + z2 i1
        Complex64::new(self.w0 - self.w3, self.w1 + self.w2)
    }

    pub fn to_idempotent(self) -> IdempotentPair {
        IdempotentPair::new(self.p1(), self.p2())
    }

    pub fn from_idempotent(p: IdempotentPair) -> Self {
        // z1 = (p1 + p2)/2, z2 = i1 (p1 - p2)/2
        let z1 = (p.p1 + p.p2) * 0.5;
        let d = (p.p1 - p.p2) * 0.5;
        let z2 = Complex64::new(-d.im, d.re);
        Bicomplex::from_z(z1, z2)
    }

    /// Null-cone test with relative threshold `tol * max(1, |w|²)` on
    /// `|z1² + z2²|`.
    pub fn is_null_cone(self, tol: f64) -> bool {
        let m = self.z1() * self.z1() + self.z2() * self.z2();
        m.norm() <= tol * self.norm_sqr().max(1.0)
    }

    /// Inverse computed componentwise in the idempotent representation.
    pub fn inverse(self) -> Result<Bicomplex, BicomplexError> {
        if self.is_null_cone(NULL_CONE_TOL) {
            return Err(BicomplexError::NullCone { value: self });
        }
        let p = self.to_idempotent();
        Ok(p.map(|c| c.inv()).recombine())
    }

    pub fn checked_div(self, rhs: Bicomplex) -> Result<Bicomplex, BicomplexError> {
        Ok(self * rhs.inverse()?)
    }

    /// The ring automorphism swapping the `i1` and `i2` components.
    pub fn pi_map(self) -> Bicomplex {
        Bicomplex::new(self.w0, self.w2, self.w1, self.w3)
    }

    fn lift(self, f: impl Fn(Complex64) -> Complex64) -> Bicomplex {
        self.to_idempotent().map(f).recombine()
    }

    pub fn exp(self) -> Self {
        self.lift(|c| c.exp())
    }

    pub fn sin(self) -> Self {
        self.lift(|c| c.sin())
    }

    pub fn cos(self) -> Self {
        self.lift(|c| c.cos())
    }

    pub fn sinh(self) -> Self {
        self.lift(|c| c.sinh())
    }

    pub fn cosh(self) -> Self {
        self.lift(|c| c.cosh())
    }

    /// Integer power. Negative exponents require an invertible base.
    pub fn powi(self, n: i32) -> Result<Bicomplex, BicomplexError> {
        if n >= 0 {
            let mut acc = Bicomplex::ONE;
            let mut base = self;
            let mut e = n as u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc *= base;
                }
                base *= base;
                e >>= 1;
            }
            Ok(acc)
        } else {
            self.inverse()?.powi(-n)
        }
    }

    pub fn is_finite(self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }

    /// Infinity-norm distance, handy in tests.
    pub fn max_abs_diff(self, other: Bicomplex) -> f64 {
        let d = self - other;
        d.components().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl From<f64> for Bicomplex {
    fn from(a: f64) -> Self {
        Bicomplex::real(a)
    }
}

impl From<Complex64> for Bicomplex {
    fn from(z: Complex64) -> Self {
        Bicomplex::from_complex(z)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, r: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.w0 + r.w0, self.w1 + r.w1, self.w2 + r.w2, self.w3 + r.w3)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, r: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.w0 - r.w0, self.w1 - r.w1, self.w2 - r.w2, self.w3 - r.w3)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::new(-self.w0, -self.w1, -self.w2, -self.w3)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, r: Bicomplex) -> Bicomplex {
        let (a0, a1, a2, a3) = (self.w0, self.w1, self.w2, self.w3);
        let (b0, b1, b2, b3) = (r.w0, r.w1, r.w2, r.w3);
        // i1² = i2² = -1, j² = 1, i1 i2 = j, i1 j = -i2, i2 j = -i1
        Bicomplex::new(
            a0 * b0 - a1 * b1 - a2 * b2 + a3 * b3,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, s: f64) -> Bicomplex {
        self.scale(s)
    }
}

impl Mul<Bicomplex> for f64 {
    type Output = Bicomplex;
    fn mul(self, w: Bicomplex) -> Bicomplex {
        w.scale(self)
    }
}

/// Division panics on null-cone divisors; use [`Bicomplex::checked_div`]
/// when the divisor is not known to be invertible.
impl Div for Bicomplex {
    type Output = Bicomplex;
    fn div(self, r: Bicomplex) -> Bicomplex {
        self.checked_div(r).expect("division by a null-cone element")
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, r: Bicomplex) {
        *self = *self + r;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, r: Bicomplex) {
        *self = *self - r;
    }
}

impl MulAssign for Bicomplex {
    fn mul_assign(&mut self, r: Bicomplex) {
        *self = *self * r;
    }
}

impl std::iter::Sum for Bicomplex {
    fn sum<I: Iterator<Item = Bicomplex>>(iter: I) -> Self {
        iter.fold(Bicomplex::ZERO, |a, b| a + b)
    }
}

/// Formats as `a + b*I1 + c*I2 + d*J`, always with all four terms. Each
/// coefficient uses the shortest representation that parses back to the
/// same `f64`.
impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.w0)?;
        for (c, unit) in [(self.w1, "I1"), (self.w2, "I2"), (self.w3, "J")] {
            if c.is_sign_negative() {
                write!(f, " - {}*{}", -c, unit)?;
            } else {
                write!(f, " + {}*{}", c, unit)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Bicomplex {
    type Err = ParseError;

    /// Accepts sums of terms `number`, `number*UNIT`, `UNIT` or `-UNIT`
    /// where `UNIT ∈ {I1, I2, J}`, e.g. `1 + 2*I1 - 0.5*J`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut acc = [0.0_f64; 4];
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            let mut sign = 1.0;
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -1.0;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                if pos == bytes.len() {
                    break;
                }
                return Err(ParseError::syntax(pos, "expected '+' or '-'"));
            }
            first = false;
            if pos >= bytes.len() {
                return Err(ParseError::syntax(pos, "expected a term"));
            }
            let start = pos;
            while pos < bytes.len()
                && (bytes[pos].is_ascii_digit()
                    || bytes[pos] == b'.'
                    || ((bytes[pos] == b'e' || bytes[pos] == b'E') && pos > start)
                    || ((bytes[pos] == b'+' || bytes[pos] == b'-')
                        && pos > start
                        && (bytes[pos - 1] == b'e' || bytes[pos - 1] == b'E')))
            {
                pos += 1;
            }
            let coeff = if pos > start {
                let text = &s[start..pos];
                let v: f64 = text
                    .parse()
                    .map_err(|_| ParseError::syntax(start, format!("bad number '{text}'")))?;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                    skip_ws(&mut pos);
                    Some(v)
                } else {
                    acc[0] += sign * v;
                    continue;
                }
            } else {
                None
            };
            let unit_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let idx = match &s[unit_start..pos] {
                "I1" => 1,
                "I2" => 2,
                "J" => 3,
                "" => return Err(ParseError::syntax(unit_start, "expected I1, I2 or J")),
                other => {
                    return Err(ParseError::UnknownIdentifier {
                        name: other.to_string(),
                        offset: unit_start,
                    })
                }
            };
            acc[idx] += sign * coeff.unwrap_or(1.0);
        }
        Ok(Bicomplex::from_components(acc))
    }
}
