//! Reference examples run end to end, reported as computed-vs-expected tables.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::complex::{ParameterPoint, SizePair};
use crate::distance::{bottleneck, component_distance, multidim_distance};
use crate::error::{Error, Result};
use crate::foliation::{make_admissible, GridSpec, slice_grid};
use crate::format::{extended_real, round_sig, OUTPUT_DIGITS};
use crate::persistence::{
    diagram, multidim_rank, restricted_diagram, slice_diagrams, DiagramPoint, PersistenceDiagram,
    PrimeField,
};
use crate::shapes::{size_pair, Measuring, ShapeKind, ShapeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    CubeSphere,
    Ellipse,
    Torus,
}

impl Example {
    pub const ALL: [Example; 3] = [Example::CubeSphere, Example::Ellipse, Example::Torus];

    pub fn name(self) -> &'static str {
        match self {
            Example::CubeSphere => "cube_sphere",
            Example::Ellipse => "ellipse",
            Example::Torus => "torus",
        }
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Example::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Unknown {
                what: "demo",
                name: s.to_string(),
            })
    }
}

/// How `computed` is compared with `expected`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|computed - expected| <= tolerance`.
    Within,
    /// `computed <= expected + tolerance`.
    AtMost,
    /// `computed >= expected - tolerance`.
    AtLeast,
}

impl Relation {
    fn holds(self, computed: f64, expected: f64, tolerance: f64) -> bool {
        match self {
            Relation::Within => (computed - expected).abs() <= tolerance,
            Relation::AtMost => computed <= expected + tolerance,
            Relation::AtLeast => computed >= expected - tolerance,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Within => "=",
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoCheck {
    pub name: String,
    #[serde(with = "extended_real")]
    pub computed: f64,
    pub relation: Relation,
    #[serde(with = "extended_real")]
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl DemoCheck {
    pub fn new(name: impl Into<String>, computed: f64, relation: Relation, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            computed,
            relation,
            expected,
            tolerance,
            pass: relation.holds(computed, expected, tolerance),
        }
    }

    fn within(name: impl Into<String>, computed: f64, expected: f64, tolerance: f64) -> Self {
        Self::new(name, computed, Relation::Within, expected, tolerance)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoReport {
    pub example: &'static str,
    pub checks: Vec<DemoCheck>,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut rounded = self.clone();
        for c in &mut rounded.checks {
            c.computed = round_sig(c.computed, OUTPUT_DIGITS);
        }
        serde_json::to_string_pretty(&rounded).expect("plain data serializes")
    }
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        writeln!(f, "demo {}", self.example)?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<width$}  {:>14.9}  {:>2} {:<12.9} tol {:<8e}  {}",
                c.name,
                c.computed,
                c.relation.symbol(),
                c.expected,
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" },
            )?;
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn run(example: Example, field: PrimeField) -> Result<DemoReport> {
    match example {
        Example::CubeSphere => cube_sphere(field),
        Example::Ellipse => ellipse(field),
        Example::Torus => torus(field),
    }
}

fn get(diagrams: &[PersistenceDiagram], degree: usize) -> PersistenceDiagram {
    diagrams
        .get(degree)
        .cloned()
        .unwrap_or_else(|| PersistenceDiagram::empty(degree))
}

/// Total multiplicity of points within `radius` (per coordinate) of `(b, d)`.
pub fn multiplicity_near(diagram: &PersistenceDiagram, b: f64, d: f64, radius: f64) -> usize {
    diagram
        .points()
        .iter()
        .filter(|p| (p.birth - b).abs() <= radius && (p.death - d).abs() <= radius)
        .map(|p| p.mult)
        .sum()
}

/// The point minimizing the larger coordinate error to `(b, d)`; essential
/// points only match an infinite `d`.
fn nearest(diagram: &PersistenceDiagram, b: f64, d: f64) -> Option<DiagramPoint> {
    let error = |p: &DiagramPoint| {
        let death_err = if p.death == d { 0.0 } else { (p.death - d).abs() };
        (p.birth - b).abs().max(death_err)
    };
    diagram
        .points()
        .iter()
        .filter(|p| p.is_essential() == d.is_infinite())
        .min_by(|x, y| error(x).total_cmp(&error(y)))
        .copied()
}

fn cube_sphere(field: PrimeField) -> Result<DemoReport> {
    let cube = size_pair(&ShapeSpec::default_for(ShapeKind::CubeBoundary), &Measuring::AbsUv)?;
    let sphere = size_pair(&ShapeSpec::default_for(ShapeKind::Sphere), &Measuring::AbsUv)?;
    let central = make_admissible(&[1.0, 1.0], &[0.0, 0.0])?;
    let weight = central.weight();
    let dc = slice_diagrams(&cube, &central, 2, field)?;
    let ds = slice_diagrams(&sphere, &central, 2, field)?;

    let mut checks = Vec::new();
    let expected = [SQRT_2 - 1.0, (SQRT_2 - 1.0) / 2.0, 0.0];
    for (degree, &want) in expected.iter().enumerate() {
        let d = bottleneck(&get(&dc, degree), &get(&ds, degree))?;
        let tol = if degree == 2 { 1e-9 } else { 0.02 };
        checks.push(DemoCheck::within(format!("d{degree} central slice"), d, want, tol));
        if degree < 2 {
            checks.push(DemoCheck::within(
                format!("weighted d{degree} central slice"),
                weight * d,
                FRAC_1_SQRT_2 * want,
                0.02,
            ));
        }
    }
    checks.push(DemoCheck::within(
        "sphere H1 multiplicity at (1, sqrt2)",
        multiplicity_near(&get(&ds, 1), 1.0, SQRT_2, 0.02) as f64,
        3.0,
        0.0,
    ));
    for (name, diagrams) in [("cube", &dc), ("sphere", &ds)] {
        let birth = nearest(&get(diagrams, 2), SQRT_2, f64::INFINITY).map_or(f64::NAN, |p| p.birth);
        checks.push(DemoCheck::within(format!("{name} H2 essential birth"), birth, SQRT_2, 0.02));
    }
    for degree in 0..=2 {
        let worst = (1..=2)
            .map(|j| component_distance(&cube, &sphere, degree, j, field))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(DemoCheck::new(
            format!("max component distance d{degree}"),
            worst,
            Relation::AtMost,
            0.0,
            0.02,
        ));
    }
    let spec = GridSpec::default_for(&[&cube.function, &sphere.function]);
    let pairs = slice_grid(2, &spec)?;
    let estimate = multidim_distance(&cube, &sphere, 0, &pairs, field)?;
    checks.push(DemoCheck::new(
        "D0 lower bound (default grid)",
        estimate.lower_bound,
        Relation::AtLeast,
        0.27,
        0.0,
    ));
    Ok(DemoReport {
        example: Example::CubeSphere.name(),
        checks,
    })
}

fn ellipse(field: PrimeField) -> Result<DemoReport> {
    let spec = ShapeSpec::default_for(ShapeKind::Ellipse);
    let phi = size_pair(&spec, &Measuring::EllipsePhi)?;
    let psi = size_pair(&spec, &Measuring::EllipsePsi)?;
    let mut checks = Vec::new();
    for j in 1..=2 {
        let d = component_distance(&phi, &psi, 0, j, field)?;
        checks.push(DemoCheck::within(format!("component {j} d0 (phi vs psi)"), d, 0.0, 0.02));
    }
    let p = ellipse_parameter_point();
    let rank = |x: &SizePair| multidim_rank(&x.complex, &x.function, &p, 0, field);
    checks.push(DemoCheck::within("phi degree-0 rank", rank(&phi)? as f64, 2.0, 0.0));
    checks.push(DemoCheck::new("psi degree-0 rank", rank(&psi)? as f64, Relation::AtMost, 1.0, 0.0));
    Ok(DemoReport {
        example: Example::Ellipse.name(),
        checks,
    })
}

/// `u = (0.6, 0.9)`, `v = u + 0.02`.
pub fn ellipse_parameter_point() -> ParameterPoint {
    ParameterPoint::new(vec![0.6, 0.9], vec![0.62, 0.92]).expect("u < v")
}

fn torus(field: PrimeField) -> Result<DemoReport> {
    let pair = size_pair(&ShapeSpec::default_for(ShapeKind::Torus), &Measuring::ZNegZ)?;
    let z = pair.function.component(0);
    let neg_z = pair.function.component(1);
    let unrestricted = diagram(&pair.complex, &z, 1, field)?;
    let restricted = restricted_diagram(&pair.complex, &z, &neg_z, 1.0, 0, field)?;

    let mut checks = Vec::new();
    let h1 = nearest(&get(&unrestricted, 1), 2.0, f64::INFINITY);
    checks.push(DemoCheck::within(
        "unrestricted H1 essential birth",
        h1.map_or(f64::NAN, |p| p.birth),
        2.0,
        0.05,
    ));
    let h0 = nearest(&get(&restricted, 0), -1.0, 2.0);
    checks.push(DemoCheck::within(
        "restricted H0 finite birth",
        h0.map_or(f64::NAN, |p| p.birth),
        -1.0,
        0.05,
    ));
    checks.push(DemoCheck::within(
        "restricted H0 finite death",
        h0.map_or(f64::NAN, |p| p.death),
        2.0,
        0.05,
    ));
    Ok(DemoReport {
        example: Example::Torus.name(),
        checks,
    })
}
