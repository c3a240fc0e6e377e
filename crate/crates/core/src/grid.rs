//! Sampling domains in `(x, y, p, q) ∈ ℝ⁴`.
//!
//! A point `(x, y, p, q)` is the bicomplex number `x + y i1 + p i2 + q j`,
//! i.e. `z1 = x + y i1` and `z2 = p + q i1`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, IdempotentPair};
use crate::error::GridError;
use crate::exec::Exec;
use crate::expr::{Expr, Tape};
use crate::error::EvalError;

pub const AXIS_NAMES: [char; 4] = ['x', 'y', 'p', 'q'];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub q: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64, p: f64, q: f64) -> Self {
        Point { x, y, p, q }
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        Point::new(c[0], c[1], c[2], c[3])
    }

    pub fn coords(self) -> [f64; 4] {
        [self.x, self.y, self.p, self.q]
    }

    pub fn z1(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn z2(self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }

    pub fn omega(self) -> Bicomplex {
        Bicomplex::from_components(self.coords())
    }

    pub fn from_omega(w: Bicomplex) -> Self {
        Point::from_coords(w.components())
    }

    /// A planar point `ζ` stored in the `z1` slot.
    pub fn planar(zeta: Complex64) -> Self {
        Point::new(zeta.re, zeta.im, 0.0, 0.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x={}, y={}, p={}, q={})", self.x, self.y, self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Axis {
    Active { min: f64, max: f64, count: usize },
    Frozen(f64),
}

impl Axis {
    pub fn active(min: f64, max: f64, count: usize) -> Self {
        Axis::Active { min, max, count }
    }

    pub fn count(&self) -> usize {
        match *self {
            Axis::Active { count, .. } => count,
            Axis::Frozen(_) => 1,
        }
    }

    pub fn is_active(&self) -> bool {
        matches!(self, Axis::Active { .. })
    }

    pub fn spacing(&self) -> Option<f64> {
        match *self {
            Axis::Active { min, max, count } => Some((max - min) / (count - 1) as f64),
            Axis::Frozen(_) => None,
        }
    }

    /// Coordinate of sample `i`; indices outside `0..count` extrapolate
    /// with the same spacing (used for padded stencils).
    pub fn coord(&self, i: isize) -> f64 {
        match *self {
            Axis::Active { min, max, count } => {
                if i == count as isize - 1 {
                    max
                } else {
                    min + i as f64 * (max - min) / (count - 1) as f64
                }
            }
            Axis::Frozen(v) => v,
        }
    }

    pub fn midpoint(&self) -> f64 {
        match *self {
            Axis::Active { min, max, .. } => 0.5 * (min + max),
            Axis::Frozen(v) => v,
        }
    }

    fn refined(self) -> Self {
        match self {
            Axis::Active { min, max, count } => Axis::Active {
                min,
                max,
                count: 2 * (count - 1) + 1,
            },
            f => f,
        }
    }
}

/// The two restriction planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Plane {
    /// `y = q = 0`: points `x + p i2`, where `Δ_C` acts as `∂²x + ∂²p`.
    ComplexI2,
    /// `y = p = 0`: points `x + q j`, where `Δ_C` acts as `∂²x − ∂²q`.
    Hyperbolic,
}

impl Plane {
    pub fn frozen_axes(self) -> [usize; 2] {
        match self {
            Plane::ComplexI2 => [1, 3],
            Plane::Hyperbolic => [1, 2],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Plane::ComplexI2 => "c2",
            Plane::Hyperbolic => "d",
        }
    }
}

impl FromStr for Plane {
    type Err = GridError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "c2" | "ci2" | "c_i2" => Ok(Plane::ComplexI2),
            "d" | "hyperbolic" => Ok(Plane::Hyperbolic),
            other => Err(GridError::Malformed(format!("unknown plane '{other}'"))),
        }
    }
}

/// Rectangular lattice with uniform spacing on each active axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridDomain {
    pub axes: [Axis; 4],
}

impl GridDomain {
    pub fn new(axes: [Axis; 4]) -> Result<Self, GridError> {
        let g = GridDomain { axes };
        g.validate()?;
        Ok(g)
    }

    /// `[lo, hi]` with `n` samples on each of the four axes.
    pub fn cube(lo: f64, hi: f64, n: usize) -> Result<Self, GridError> {
        GridDomain::new([Axis::active(lo, hi, n); 4])
    }

    /// The command-line default: `[-1, 1]⁴`, nine samples per axis.
    pub fn default_grid() -> Self {
        GridDomain::cube(-1.0, 1.0, 9).expect("valid default grid")
    }

    /// A single active axis `x ∈ [lo, hi]` with the others frozen at 0.
    pub fn line_x(lo: f64, hi: f64, n: usize) -> Result<Self, GridError> {
        GridDomain::new([
            Axis::active(lo, hi, n),
            Axis::Frozen(0.0),
            Axis::Frozen(0.0),
            Axis::Frozen(0.0),
        ])
    }

    pub fn validate(&self) -> Result<(), GridError> {
        for (a, name) in self.axes.iter().zip(AXIS_NAMES) {
            match *a {
                Axis::Active { min, max, count } => {
                    if count < 3 {
                        return Err(GridError::BadAxis {
                            axis: name,
                            message: format!("count {count} < 3"),
                        });
                    }
                    if !(min.is_finite() && max.is_finite() && min < max) {
                        return Err(GridError::BadAxis {
                            axis: name,
                            message: format!("need finite min < max, got {min}:{max}"),
                        });
                    }
                }
                Axis::Frozen(v) => {
                    if !v.is_finite() {
                        return Err(GridError::BadAxis {
                            axis: name,
                            message: "frozen value must be finite".into(),
                        });
                    }
                }
            }
        }
        if !self.axes.iter().any(Axis::is_active) {
            return Err(GridError::NoActiveAxis);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Axis::count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn active_axes(&self) -> Vec<usize> {
        (0..4).filter(|&i| self.axes[i].is_active()).collect()
    }

    pub fn counts(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.axes[i].count())
    }

    /// Largest spacing over the active axes.
    pub fn max_spacing(&self) -> f64 {
        self.axes.iter().filter_map(Axis::spacing).fold(0.0, f64::max)
    }

    /// Points in row-major order (`q` fastest).
    pub fn points(&self) -> Vec<Point> {
        let [nx, ny, np, nq] = self.counts();
        let mut out = Vec::with_capacity(self.len());
        for i in 0..nx {
            let x = self.axes[0].coord(i as isize);
            for j in 0..ny {
                let y = self.axes[1].coord(j as isize);
                for k in 0..np {
                    let p = self.axes[2].coord(k as isize);
                    for l in 0..nq {
                        out.push(Point::new(x, y, p, self.axes[3].coord(l as isize)));
                    }
                }
            }
        }
        out
    }

    /// Doubles the resolution `n` times: each active count `c` becomes
    /// `2(c − 1) + 1`, so the spacing halves and old nodes are kept.
    pub fn refine(&self, n: u32) -> Self {
        let mut g = *self;
        for _ in 0..n {
            g.axes = g.axes.map(Axis::refined);
        }
        g
    }

    /// Freezes the plane's two axes at their midpoints.
    pub fn restrict_plane(&self, plane: Plane) -> Self {
        let mut g = *self;
        for i in plane.frozen_axes() {
            g.axes[i] = Axis::Frozen(g.axes[i].midpoint());
        }
        g
    }

    pub fn meta(&self) -> GridMeta {
        GridMeta {
            kind: "lattice".into(),
            description: self.to_string(),
            points: self.len(),
            spacing: self.max_spacing(),
        }
    }
}

impl fmt::Display for GridDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, name)) in self.axes.iter().zip(AXIS_NAMES).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match *a {
                Axis::Active { min, max, count } => write!(f, "{name}={min}:{max}:{count}")?,
                Axis::Frozen(v) => write!(f, "{name}={v}")?,
            }
        }
        Ok(())
    }
}

/// Parses `x=-1:1:9,y=-1:1:9,p=0,q=-1:1:5`. An axis given as a single value
/// is frozen there; omitted axes are frozen at 0.
impl FromStr for GridDomain {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut axes: [Option<Axis>; 4] = [None; 4];
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, spec) = part
                .split_once('=')
                .ok_or_else(|| GridError::Malformed(format!("expected axis=spec in '{part}'")))?;
            let name = name.trim();
            let idx = AXIS_NAMES
                .iter()
                .position(|c| name.len() == 1 && name.starts_with(*c))
                .ok_or_else(|| GridError::Malformed(format!("unknown axis '{name}'")))?;
            if axes[idx].is_some() {
                return Err(GridError::Malformed(format!("axis '{name}' given twice")));
            }
            let num = |t: &str| -> Result<f64, GridError> {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| GridError::Malformed(format!("bad number '{t}' for axis {name}")))
            };
            let fields: Vec<&str> = spec.split(':').collect();
            axes[idx] = Some(match fields.as_slice() {
                [v] => Axis::Frozen(num(v)?),
                [lo, hi, n] => {
                    let count = n.trim().parse::<usize>().map_err(|_| {
                        GridError::Malformed(format!("bad count '{n}' for axis {name}"))
                    })?;
                    Axis::active(num(lo)?, num(hi)?, count)
                }
                _ => {
                    return Err(GridError::Malformed(format!(
                        "axis {name}: expected 'v' or 'min:max:count'"
                    )))
                }
            });
        }
        GridDomain::new(axes.map(|a| a.unwrap_or(Axis::Frozen(0.0))))
    }
}

/// A uniform rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarGrid {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub count: usize,
}

impl PlanarGrid {
    pub fn new(re: (f64, f64), im: (f64, f64), count: usize) -> Self {
        PlanarGrid { re, im, count }
    }

    pub fn zetas(&self) -> Vec<Complex64> {
        let ax = Axis::active(self.re.0, self.re.1, self.count);
        let ay = Axis::active(self.im.0, self.im.1, self.count);
        let mut out = Vec::with_capacity(self.count * self.count);
        for i in 0..self.count {
            for j in 0..self.count {
                out.push(Complex64::new(ax.coord(i as isize), ay.coord(j as isize)));
            }
        }
        out
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.re.0 + self.re.1), 0.5 * (self.im.0 + self.im.1))
    }

    pub fn points(&self) -> Vec<Point> {
        self.zetas().into_iter().map(Point::planar).collect()
    }

    pub fn meta(&self) -> GridMeta {
        GridMeta {
            kind: "planar".into(),
            description: self.to_string(),
            points: self.count * self.count,
            spacing: ((self.re.1 - self.re.0).max(self.im.1 - self.im.0)) / (self.count - 1) as f64,
        }
    }
}

impl fmt::Display for PlanarGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "re={}:{}:{},im={}:{}:{}",
            self.re.0, self.re.1, self.count, self.im.0, self.im.1, self.count
        )
    }
}

/// The cartesian set `D1 ×e D2 = {ζ1 e1 + ζ2 e2 : ζ1 ∈ D1, ζ2 ∈ D2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EProductDomain {
    pub d1: PlanarGrid,
    pub d2: PlanarGrid,
}

impl EProductDomain {
    pub fn new(d1: PlanarGrid, d2: PlanarGrid) -> Self {
        EProductDomain { d1, d2 }
    }

    pub fn points(&self) -> Vec<Point> {
        let z2s = self.d2.zetas();
        let mut out = Vec::with_capacity(self.d1.count.pow(2) * z2s.len());
        for a in self.d1.zetas() {
            for &b in &z2s {
                out.push(Point::from_omega(IdempotentPair::new(a, b).recombine()));
            }
        }
        out
    }

    pub fn meta(&self) -> GridMeta {
        GridMeta {
            kind: "e-product".into(),
            description: format!("D1[{}] x_e D2[{}]", self.d1, self.d2),
            points: self.d1.count.pow(2) * self.d2.count.pow(2),
            spacing: self.d1.meta().spacing.max(self.d2.meta().spacing),
        }
    }
}

/// Any of the point sets reports can be computed on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Domain {
    Grid(GridDomain),
    Planar(PlanarGrid),
    EProduct(EProductDomain),
}

impl Domain {
    pub fn points(&self) -> Vec<Point> {
        match self {
            Domain::Grid(g) => g.points(),
            Domain::Planar(g) => g.points(),
            Domain::EProduct(g) => g.points(),
        }
    }

    pub fn meta(&self) -> GridMeta {
        match self {
            Domain::Grid(g) => g.meta(),
            Domain::Planar(g) => g.meta(),
            Domain::EProduct(g) => g.meta(),
        }
    }
}

impl From<GridDomain> for Domain {
    fn from(g: GridDomain) -> Self {
        Domain::Grid(g)
    }
}

impl From<PlanarGrid> for Domain {
    fn from(g: PlanarGrid) -> Self {
        Domain::Planar(g)
    }
}

impl From<EProductDomain> for Domain {
    fn from(g: EProductDomain) -> Self {
        Domain::EProduct(g)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub kind: String,
    pub description: String,
    pub points: usize,
    pub spacing: f64,
}

/// Bicomplex samples of one expression on a lattice, row-major over the
/// lattice's points.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub domain: GridDomain,
    pub values: Vec<Bicomplex>,
}

impl SampledField {
    pub fn get(&self, idx: [usize; 4]) -> Bicomplex {
        let [_, ny, np, nq] = self.domain.counts();
        self.values[((idx[0] * ny + idx[1]) * np + idx[2]) * nq + idx[3]]
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

pub fn sample(e: &Expr, grid: &GridDomain, exec: Exec) -> Result<SampledField, EvalError> {
    let tape = Tape::compile(std::slice::from_ref(e));
    let values = tape.eval_points(&grid.points(), exec)?;
    Ok(SampledField {
        domain: *grid,
        values: values.into_iter().map(|v| v[0]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let g: GridDomain = "x=-1:1:9,y=-1:1:9,p=-1:1:9,q=-1:1:9".parse().unwrap();
        assert_eq!(g, GridDomain::default_grid());
        assert_eq!(g.to_string().parse::<GridDomain>().unwrap(), g);
        assert_eq!(g.len(), 6561);
        let g: GridDomain = "x=0:2:5,q=0.5".parse().unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.axes[3], Axis::Frozen(0.5));
        assert_eq!(g.axes[1], Axis::Frozen(0.0));
    }

    #[test]
    fn parse_rejects_bad_specs() {
        assert!("x=-1:1:2".parse::<GridDomain>().is_err());
        assert!("x=1:-1:5".parse::<GridDomain>().is_err());
        assert!("w=0:1:5".parse::<GridDomain>().is_err());
        assert!("x=0:1:5,x=0:1:5".parse::<GridDomain>().is_err());
        assert!("x=0".parse::<GridDomain>().is_err());
        assert!("x=0:1".parse::<GridDomain>().is_err());
    }

    #[test]
    fn refine_halves_spacing_and_keeps_nodes() {
        let g = GridDomain::cube(-1.0, 1.0, 5).unwrap();
        let r = g.refine(1);
        assert_eq!(r.counts(), [9; 4]);
        assert_eq!(r.max_spacing(), 0.5 * g.max_spacing());
        assert_eq!(g.refine(3).counts(), [33; 4]);
        assert_eq!(r.axes[0].coord(2), g.axes[0].coord(1));
    }

    #[test]
    fn planes_freeze_axes() {
        let g = GridDomain::default_grid();
        let c = g.restrict_plane(Plane::ComplexI2);
        assert_eq!(c.active_axes(), vec![0, 2]);
        let d = g.restrict_plane(Plane::Hyperbolic);
        assert_eq!(d.active_axes(), vec![0, 3]);
        assert!(d.points().iter().all(|pt| pt.y == 0.0 && pt.p == 0.0));
    }

    #[test]
    fn row_major_order() {
        let g: GridDomain = "x=0:2:3,q=0:1:3".parse().unwrap();
        let pts = g.points();
        assert_eq!(pts[1], Point::new(0.0, 0.0, 0.0, 0.5));
        assert_eq!(pts[3], Point::new(1.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn e_product_points_have_prescribed_components() {
        let d1 = PlanarGrid::new((0.0, 1.0), (-1.0, 0.0), 3);
        let d2 = PlanarGrid::new((2.0, 3.0), (0.0, 1.0), 3);
        let dom = EProductDomain::new(d1, d2);
        let pts = dom.points();
        assert_eq!(pts.len(), 81);
        let p = pts[0].omega().to_idempotent();
        assert!((p.p1 - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((p.p2 - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }
}
