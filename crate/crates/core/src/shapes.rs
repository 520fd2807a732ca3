//! Triangulated reference shapes and their measuring functions.
//!
//! All generators are deterministic. Grids are chosen so that the points
//! where the built-in measuring functions change topology are mesh vertices:
//! the cube face centres, the sphere's axis and diagonal equator points, and
//! the torus's inner and outer circles at `z = ±2` and `z = ±3`.

use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;

use crate::complex::{MeasuringFunction, SimplicialComplex, SizePair};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    /// Boundary of `[-1, 1]^3`, each face split into a `k x k` grid.
    CubeBoundary,
    /// Unit sphere from a barycentrically split octahedron refined to
    /// `2^resolution` segments per octahedron edge.
    Sphere,
    /// The closed curve `(cos θ, sin θ, sin θ)` sampled at `resolution` angles.
    Ellipse,
    /// Torus of revolution about the x axis on a `2r x r` angle grid.
    Torus,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 4] = [
        ShapeKind::CubeBoundary,
        ShapeKind::Sphere,
        ShapeKind::Ellipse,
        ShapeKind::Torus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::CubeBoundary => "cube_boundary",
            ShapeKind::Sphere => "sphere",
            ShapeKind::Ellipse => "ellipse",
            ShapeKind::Torus => "torus",
        }
    }

    pub fn default_resolution(self) -> usize {
        match self {
            ShapeKind::CubeBoundary => 16,
            ShapeKind::Sphere => 4,
            ShapeKind::Ellipse => 128,
            ShapeKind::Torus => 24,
        }
    }

    pub fn min_resolution(self) -> usize {
        match self {
            ShapeKind::CubeBoundary => 1,
            // One refinement puts 8 segments on the equator.
            ShapeKind::Sphere => 1,
            ShapeKind::Ellipse => 8,
            ShapeKind::Torus => 8,
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube_boundary" | "cube" => Ok(ShapeKind::CubeBoundary),
            "sphere" => Ok(ShapeKind::Sphere),
            "ellipse" => Ok(ShapeKind::Ellipse),
            "torus" => Ok(ShapeKind::Torus),
            other => Err(Error::Unknown {
                what: "shape",
                name: other.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    pub resolution: usize,
    /// Distance from the torus axis to the centre of the tube.
    pub major_radius: f64,
    /// Radius of the torus tube.
    pub minor_radius: f64,
}

impl ShapeSpec {
    pub fn new(kind: ShapeKind, resolution: usize) -> Self {
        Self {
            kind,
            resolution,
            major_radius: 2.5,
            minor_radius: 0.5,
        }
    }

    pub fn default_for(kind: ShapeKind) -> Self {
        Self::new(kind, kind.default_resolution())
    }

    fn validate(&self) -> Result<()> {
        let invalid = |reason: String| Error::InvalidResolution {
            kind: self.kind.name(),
            resolution: self.resolution,
            reason,
        };
        if self.resolution < self.kind.min_resolution() {
            return Err(invalid(format!("minimum is {}", self.kind.min_resolution())));
        }
        match self.kind {
            ShapeKind::Sphere if self.resolution > 10 => {
                Err(invalid("at most 10 refinement levels are supported".into()))
            }
            ShapeKind::Torus if !self.resolution.is_multiple_of(2) => Err(invalid(
                "must be even so that the extreme circles lie on the grid".into(),
            )),
            ShapeKind::Torus if !(self.minor_radius > 0.0 && self.major_radius > self.minor_radius) => {
                Err(Error::Invalid("torus radii must satisfy 0 < minor < major".into()))
            }
            _ => Ok(()),
        }
    }
}

/// A complex with 3D coordinates per vertex.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub complex: SimplicialComplex,
    pub coords: Vec<[f64; 3]>,
}

pub fn generate(spec: &ShapeSpec) -> Result<Mesh> {
    spec.validate()?;
    match spec.kind {
        ShapeKind::CubeBoundary => cube_boundary(spec.resolution),
        ShapeKind::Sphere => sphere(spec.resolution as u32),
        ShapeKind::Ellipse => ellipse(spec.resolution),
        ShapeKind::Torus => torus(spec.resolution, spec.major_radius, spec.minor_radius),
    }
}

/// Deduplicates vertices by integer lattice key.
struct VertexTable {
    ids: HashMap<[i64; 3], usize>,
    coords: Vec<[f64; 3]>,
}

impl VertexTable {
    fn new() -> Self {
        Self {
            ids: HashMap::new(),
            coords: Vec::new(),
        }
    }

    fn id(&mut self, key: [i64; 3], position: impl FnOnce() -> [f64; 3]) -> usize {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.coords.len();
        self.coords.push(position());
        self.ids.insert(key, id);
        id
    }
}

fn cube_boundary(k: usize) -> Result<Mesh> {
    let mut table = VertexTable::new();
    let mut triangles = Vec::new();
    let ki = k as i64;
    let coord = |i: i64| -1.0 + 2.0 * i as f64 / k as f64;
    for axis in 0..3 {
        let (p, q) = ((axis + 1) % 3, (axis + 2) % 3);
        for side in [0, ki] {
            let mut vertex = |s: i64, t: i64| {
                let mut key = [0i64; 3];
                key[axis] = side;
                key[p] = s;
                key[q] = t;
                table.id(key, || key.map(coord))
            };
            for s in 0..ki {
                for t in 0..ki {
                    let c00 = vertex(s, t);
                    let c10 = vertex(s + 1, t);
                    let c01 = vertex(s, t + 1);
                    let c11 = vertex(s + 1, t + 1);
                    // Diagonals point away from the face centre in every
                    // quadrant, so the triangulation respects the reflections.
                    if (2 * s + 1 < ki) == (2 * t + 1 < ki) {
                        triangles.push([c00, c10, c11]);
                        triangles.push([c00, c11, c01]);
                    } else {
                        triangles.push([c00, c10, c01]);
                        triangles.push([c10, c11, c01]);
                    }
                }
            }
        }
    }
    let complex = SimplicialComplex::new(table.coords.len(), triangles)?;
    Ok(Mesh {
        complex,
        coords: table.coords,
    })
}

fn sphere(levels: u32) -> Result<Mesh> {
    // Each octant face is split barycentrically into six triangles, so every
    // mirror plane of the octahedron runs along mesh edges, then each of those
    // is refined into a k x k triangular grid. Lattice keys are scaled by 6k.
    let k = 1i64 << (levels - 1);
    let mut table = VertexTable::new();
    let mut triangles = Vec::new();
    const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for sx in [-1i64, 1] {
        for sy in [-1i64, 1] {
            for sz in [-1i64, 1] {
                for [p, q, _] in PERMUTATIONS {
                    let mut vertex = |a: i64, b: i64| {
                        let c = k - a - b;
                        let mut key = [2 * c; 3];
                        key[p] += 6 * a + 3 * b;
                        key[q] += 3 * b;
                        let key = [sx * key[0], sy * key[1], sz * key[2]];
                        table.id(key, || project_to_sphere(key))
                    };
                    for a in 0..k {
                        for b in 0..k - a {
                            let x = vertex(a, b);
                            let y = vertex(a + 1, b);
                            let z = vertex(a, b + 1);
                            triangles.push([x, y, z]);
                            if a + b + 1 < k {
                                let w = vertex(a + 1, b + 1);
                                triangles.push([y, w, z]);
                            }
                        }
                    }
                }
            }
        }
    }
    let complex = SimplicialComplex::new(table.coords.len(), triangles)?;
    Ok(Mesh {
        complex,
        coords: table.coords,
    })
}

fn project_to_sphere(key: [i64; 3]) -> [f64; 3] {
    let v = key.map(|x| x as f64);
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v.map(|x| snap(x / norm))
}

fn ellipse(m: usize) -> Result<Mesh> {
    let coords: Vec<[f64; 3]> = (0..m)
        .map(|k| {
            let (c, s) = turn(k, m);
            [c, s, s]
        })
        .collect();
    let edges: Vec<[usize; 2]> = (0..m).map(|k| [k, (k + 1) % m]).collect();
    let complex = SimplicialComplex::new(m, edges)?;
    Ok(Mesh { complex, coords })
}

fn torus(r: usize, major: f64, minor: f64) -> Result<Mesh> {
    let (around, tube) = (2 * r, r);
    let id = |a: usize, b: usize| (a % around) * tube + (b % tube);
    let mut coords = Vec::with_capacity(around * tube);
    for a in 0..around {
        let (ct, st) = turn(a, around);
        for b in 0..tube {
            let (cp, sp) = turn(b, tube);
            let radius = major + minor * cp;
            coords.push([minor * sp, radius * ct, radius * st]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * around * tube);
    for a in 0..around {
        for b in 0..tube {
            let (c00, c10, c01, c11) = (id(a, b), id(a + 1, b), id(a, b + 1), id(a + 1, b + 1));
            triangles.push([c00, c10, c11]);
            triangles.push([c00, c11, c01]);
        }
    }
    let complex = SimplicialComplex::new(coords.len(), triangles)?;
    Ok(Mesh { complex, coords })
}

/// `(cos, sin)` of the angle `k / n` of a full turn, with the common exact
/// values snapped.
fn turn(k: usize, n: usize) -> (f64, f64) {
    let angle = TAU * (k % n) as f64 / n as f64;
    (snap(angle.cos()), snap(angle.sin()))
}

fn snap(x: f64) -> f64 {
    const EXACT: [f64; 5] = [0.0, 0.5, FRAC_1_SQRT_2, 0.866_025_403_784_438_6, 1.0];
    for target in EXACT {
        if (x.abs() - target).abs() < 1e-12 {
            return target.copysign(x);
        }
    }
    x
}

/// One coordinate-derived component, e.g. `x`, `-z`, `|y|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoordinateComponent {
    pub axis: usize,
    pub abs: bool,
    pub negate: bool,
}

impl CoordinateComponent {
    fn eval(&self, p: &[f64; 3]) -> f64 {
        let mut x = p[self.axis];
        if self.abs {
            x = x.abs();
        }
        if self.negate {
            -x
        } else {
            x
        }
    }
}

impl FromStr for CoordinateComponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown {
            what: "coordinate component",
            name: s.to_string(),
        };
        let mut rest = s.trim();
        let negate = rest.starts_with('-');
        if negate {
            rest = &rest[1..];
        }
        let abs = rest.len() >= 2 && rest.starts_with('|') && rest.ends_with('|');
        if abs {
            rest = &rest[1..rest.len() - 1];
        }
        let axis = match rest {
            "x" | "u" => 0,
            "y" | "v" => 1,
            "z" | "w" => 2,
            _ => return Err(unknown()),
        };
        Ok(Self { axis, abs, negate })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Measuring {
    /// `(|u|, |v|)`.
    AbsUv,
    /// `(z, -z)`.
    ZNegZ,
    /// `(u, w)`.
    EllipsePhi,
    /// `(v, w)`.
    EllipsePsi,
    Custom(Vec<CoordinateComponent>),
}

impl Measuring {
    pub fn components(&self) -> Vec<CoordinateComponent> {
        let c = |axis, abs, negate| CoordinateComponent { axis, abs, negate };
        match self {
            Measuring::AbsUv => vec![c(0, true, false), c(1, true, false)],
            Measuring::ZNegZ => vec![c(2, false, false), c(2, false, true)],
            Measuring::EllipsePhi => vec![c(0, false, false), c(2, false, false)],
            Measuring::EllipsePsi => vec![c(1, false, false), c(2, false, false)],
            Measuring::Custom(parts) => parts.clone(),
        }
    }
}

impl FromStr for Measuring {
    type Err = Error;

    /// Built-in names, or a comma-separated component list such as `x,|y|,-z`
    /// (optionally prefixed with `custom:`).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abs_uv" => Ok(Measuring::AbsUv),
            "z_negz" => Ok(Measuring::ZNegZ),
            "ellipse_phi" => Ok(Measuring::EllipsePhi),
            "ellipse_psi" => Ok(Measuring::EllipsePsi),
            other => {
                let list = other.strip_prefix("custom:").unwrap_or(other);
                let parts = list
                    .split(',')
                    .map(str::parse)
                    .collect::<Result<Vec<CoordinateComponent>>>()
                    .map_err(|_| Error::Unknown {
                        what: "measuring function",
                        name: other.to_string(),
                    })?;
                Ok(Measuring::Custom(parts))
            }
        }
    }
}

/// Evaluates `kind` at every vertex.
pub fn measuring(kind: &Measuring, coords: &[[f64; 3]]) -> Result<MeasuringFunction> {
    let components = kind.components();
    if components.is_empty() {
        return Err(Error::Invalid("measuring function needs at least one component".into()));
    }
    let values = coords
        .iter()
        .flat_map(|p| components.iter().map(move |c| c.eval(p)))
        .collect();
    MeasuringFunction::from_flat(components.len(), values)
}

/// Generates a shape and evaluates a measuring function on it.
pub fn size_pair(spec: &ShapeSpec, kind: &Measuring) -> Result<SizePair> {
    let mesh = generate(spec)?;
    let function = measuring(kind, &mesh.coords)?;
    SizePair::new(mesh.complex, function)
}
