//! One-parameter persistent homology and rank queries on slices.
//!
//! Diagrams record each class as a cornerpoint `(birth, death)`. With the
//! lower-star filtration `K_s = {σ : g(σ) <= s}`, the rank of
//! `H_i(K_s) -> H_i(K_t)` is the number of degree-`i` cornerpoints with
//! `birth <= s` and `death > t`.

mod field;
mod reduction;

use std::fmt::Write as _;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::complex::{
    scalar_sublevel, sublevel_complex, MeasuringFunction, ParameterPoint, ScalarFiltration,
    SimplicialComplex, SizePair, Subcomplex,
};
use crate::error::{Error, Result};
use crate::foliation::{pair_through, reduce, AdmissiblePair};
use crate::format::{extended_real, fmt_extended, round_sig};

pub use field::PrimeField;
pub use reduction::{reduce_filtration, FiltrationOrder, PersistencePairs};

/// A cornerpoint with multiplicity. `death` is `+∞` for essential classes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub birth: f64,
    #[serde(with = "extended_real")]
    pub death: f64,
    pub mult: usize,
}

impl DiagramPoint {
    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// Multiset of cornerpoints of one homology degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct PersistenceDiagram {
    pub degree: usize,
    points: Vec<DiagramPoint>,
}

#[derive(Deserialize)]
struct RawDiagram {
    degree: usize,
    points: Vec<DiagramPoint>,
}

impl TryFrom<RawDiagram> for PersistenceDiagram {
    type Error = Error;

    fn try_from(raw: RawDiagram) -> Result<Self> {
        for p in &raw.points {
            if !(p.birth < p.death) || !p.birth.is_finite() || p.mult == 0 {
                return Err(Error::Invalid(format!(
                    "invalid cornerpoint ({}, {}) x{}",
                    p.birth, p.death, p.mult
                )));
            }
        }
        Ok(Self::from_weighted(
            raw.degree,
            raw.points.iter().map(|p| (p.birth, p.death, p.mult)),
        ))
    }
}

impl PersistenceDiagram {
    pub fn empty(degree: usize) -> Self {
        Self {
            degree,
            points: Vec::new(),
        }
    }

    /// Builds a diagram from `(birth, death)` pairs. Pairs with
    /// `birth >= death` are dropped, equal pairs are merged.
    pub fn from_pairs(degree: usize, pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self::from_weighted(degree, pairs.into_iter().map(|(b, d)| (b, d, 1)))
    }

    fn from_weighted(degree: usize, pairs: impl IntoIterator<Item = (f64, f64, usize)>) -> Self {
        let mut raw: Vec<(f64, f64, usize)> = pairs
            .into_iter()
            .filter(|&(b, d, m)| b < d && m > 0)
            .collect();
        raw.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut points: Vec<DiagramPoint> = Vec::with_capacity(raw.len());
        for (birth, death, mult) in raw {
            match points.last_mut() {
                Some(last) if last.birth == birth && last.death == death => last.mult += mult,
                _ => points.push(DiagramPoint { birth, death, mult }),
            }
        }
        Self { degree, points }
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of cornerpoints counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.mult).sum()
    }

    pub fn essential_count(&self) -> usize {
        self.points.iter().filter(|p| p.is_essential()).map(|p| p.mult).sum()
    }

    /// One `(birth, death)` entry per unit of multiplicity.
    pub fn expanded(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .flat_map(|p| std::iter::repeat_n((p.birth, p.death), p.mult))
            .collect()
    }

    /// Copy with every coordinate rounded to `digits` significant digits.
    pub fn rounded(&self, digits: usize) -> Self {
        Self::from_weighted(
            self.degree,
            self.points
                .iter()
                .map(|p| (round_sig(p.birth, digits), round_sig(p.death, digits), p.mult)),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// CSV table with columns `degree,birth,death,mult`.
pub fn diagrams_to_csv(diagrams: &[PersistenceDiagram]) -> String {
    let mut out = String::from("degree,birth,death,mult\n");
    for d in diagrams {
        for p in &d.points {
            writeln!(
                out,
                "{},{},{},{}",
                d.degree,
                fmt_extended(p.birth),
                fmt_extended(p.death),
                p.mult
            )
            .unwrap();
        }
    }
    out
}

fn clamp_degree(max_degree: usize, dim: Option<usize>) -> Option<usize> {
    let dim = dim?;
    if max_degree > dim {
        warn!("requested degree {max_degree} exceeds complex dimension {dim}; clamping");
        Some(dim)
    } else {
        Some(max_degree)
    }
}

fn diagrams_from_pairs(
    complex: &SimplicialComplex,
    order: &FiltrationOrder,
    pairs: &PersistencePairs,
    max_degree: usize,
) -> Vec<PersistenceDiagram> {
    let mut buckets: Vec<Vec<(f64, f64)>> = vec![Vec::new(); max_degree + 1];
    let dim_at = |pos: usize| complex.simplex_dim(order.simplex_at(pos));
    for &(birth, death) in &pairs.finite {
        let d = dim_at(birth);
        if d <= max_degree {
            buckets[d].push((order.value_at(birth), order.value_at(death)));
        }
    }
    for &birth in &pairs.essential {
        let d = dim_at(birth);
        if d <= max_degree {
            buckets[d].push((order.value_at(birth), f64::INFINITY));
        }
    }
    buckets
        .into_iter()
        .enumerate()
        .map(|(degree, pts)| PersistenceDiagram::from_pairs(degree, pts))
        .collect()
}

/// Diagrams of degrees `0..=max_degree` for the given per-simplex values,
/// optionally restricted to a subcomplex. Degrees above the dimension of the
/// (sub)complex are clamped; an empty (sub)complex yields no diagrams.
fn diagrams_on(
    complex: &SimplicialComplex,
    simplex_values: &[f64],
    members: Option<&Subcomplex<'_>>,
    max_degree: usize,
    field: PrimeField,
) -> Vec<PersistenceDiagram> {
    let dim = match members {
        Some(sub) => sub.counts_by_dim().len().checked_sub(1),
        None => complex.dimension(),
    };
    let Some(top) = clamp_degree(max_degree, dim) else {
        return Vec::new();
    };
    // H_i only depends on the (i+1)-skeleton.
    let order = FiltrationOrder::new(complex, simplex_values, members, Some(top + 1));
    let pairs = reduce_filtration(complex, &order, field);
    diagrams_from_pairs(complex, &order, &pairs, top)
}

/// Persistence diagrams of the sublevel filtration of `g` on `complex`.
pub fn diagram(
    complex: &SimplicialComplex,
    g: &ScalarFiltration,
    max_degree: usize,
    field: PrimeField,
) -> Result<Vec<PersistenceDiagram>> {
    check_filtration(complex, g)?;
    let values = g.simplex_values(complex);
    Ok(diagrams_on(complex, &values, None, max_degree, field))
}

/// Diagrams of the leaf `pair` of a size pair.
pub fn slice_diagrams(
    size_pair: &SizePair,
    pair: &AdmissiblePair,
    max_degree: usize,
    field: PrimeField,
) -> Result<Vec<PersistenceDiagram>> {
    let g = reduce(&size_pair.function, pair)?;
    diagram(&size_pair.complex, &g, max_degree, field)
}

fn check_filtration(complex: &SimplicialComplex, g: &ScalarFiltration) -> Result<()> {
    if g.vertex_values().len() != complex.vertex_count() {
        return Err(Error::ComplexMismatch(complex.vertex_count(), g.vertex_values().len()));
    }
    Ok(())
}

/// Number of cornerpoints with `birth <= s` and `death > t`.
pub fn rank_at(diagram: &PersistenceDiagram, s: f64, t: f64) -> Result<usize> {
    if !(s < t) {
        return Err(Error::InvalidSlice { s, t });
    }
    Ok(diagram
        .points
        .iter()
        .filter(|p| p.birth <= s && p.death > t)
        .map(|p| p.mult)
        .sum())
}

/// Rank of `H_i(K<f <= u>) -> H_i(K<f <= v>)` computed on the leaf through `(u, v)`.
pub fn multidim_rank(
    complex: &SimplicialComplex,
    f: &MeasuringFunction,
    p: &ParameterPoint,
    degree: usize,
    field: PrimeField,
) -> Result<usize> {
    if p.dimension() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            found: p.dimension(),
        });
    }
    let slice = pair_through(p);
    let g = reduce(f, &slice.pair)?;
    let g = consistent_with_sublevels(f, &g, p, slice.s, slice.t)?;
    let diagrams = diagram(complex, &g, degree, field)?;
    match diagrams.get(degree) {
        Some(d) => rank_at(d, slice.s, slice.t),
        None => Ok(0),
    }
}

/// Clamps `g` so that `g <= s` exactly on `f <= u` and `g <= t` exactly on
/// `f <= v`. Rounding in `g` can only move values that lie within a few ulps
/// of `s` or `t`, and the rank depends on nothing but those two sublevel sets.
fn consistent_with_sublevels(
    f: &MeasuringFunction,
    g: &ScalarFiltration,
    p: &ParameterPoint,
    s: f64,
    t: f64,
) -> Result<ScalarFiltration> {
    let below = |row: &[f64], bound: &[f64]| row.iter().zip(bound).all(|(x, b)| x <= b);
    let values = f
        .rows()
        .zip(g.vertex_values())
        .map(|(row, &value)| {
            if below(row, p.u()) {
                value.min(s)
            } else if below(row, p.v()) {
                value.max(s.next_up()).min(t)
            } else {
                value.max(t.next_up())
            }
        })
        .collect();
    ScalarFiltration::new(values)
}

/// Rank of `H_i(A) -> H_i(B)` for `A = K<f <= u>`, `B = K<f <= v>`, computed
/// directly from a two-step filtration `A ⊆ B` without any slicing.
pub fn rank_oracle(
    complex: &SimplicialComplex,
    f: &MeasuringFunction,
    p: &ParameterPoint,
    degree: usize,
    field: PrimeField,
) -> Result<usize> {
    let small = sublevel_complex(complex, f, p.u())?;
    let large = sublevel_complex(complex, f, p.v())?;
    let stage: Vec<f64> = (0..complex.len())
        .map(|i| if small.contains(i) { 0.0 } else { 1.0 })
        .collect();
    let order = FiltrationOrder::new(complex, &stage, Some(&large), None);
    let pairs = reduce_filtration(complex, &order, field);
    Ok(pairs
        .essential
        .iter()
        .filter(|&&pos| {
            order.value_at(pos) == 0.0 && complex.simplex_dim(order.simplex_at(pos)) == degree
        })
        .count())
}

/// A level at which some degree's homology changes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalValue {
    pub value: f64,
    pub degrees: Vec<usize>,
}

/// Values closer than this (relative to their magnitude) are reported once.
pub const CRITICAL_VALUE_TOLERANCE: f64 = 1e-9;

/// All finite births and deaths, each annotated with the degrees where it occurs.
pub fn homological_critical_values(diagrams: &[PersistenceDiagram]) -> Vec<CriticalValue> {
    let mut events: Vec<(f64, usize)> = Vec::new();
    for d in diagrams {
        for p in &d.points {
            events.push((p.birth, d.degree));
            if !p.is_essential() {
                events.push((p.death, d.degree));
            }
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<CriticalValue> = Vec::new();
    for (value, degree) in events {
        match out.last_mut() {
            Some(last)
                if (value - last.value).abs()
                    <= CRITICAL_VALUE_TOLERANCE * value.abs().max(1.0) =>
            {
                if !last.degrees.contains(&degree) {
                    last.degrees.push(degree);
                    last.degrees.sort_unstable();
                }
            }
            _ => out.push(CriticalValue {
                value,
                degrees: vec![degree],
            }),
        }
    }
    out
}

/// Diagrams of `primary` on the subcomplex where `auxiliary <= threshold`.
pub fn restricted_diagram(
    complex: &SimplicialComplex,
    primary: &ScalarFiltration,
    auxiliary: &ScalarFiltration,
    threshold: f64,
    max_degree: usize,
    field: PrimeField,
) -> Result<Vec<PersistenceDiagram>> {
    check_filtration(complex, primary)?;
    check_filtration(complex, auxiliary)?;
    let region = scalar_sublevel(complex, auxiliary, threshold);
    let values = primary.simplex_values(complex);
    Ok(diagrams_on(complex, &values, Some(&region), max_degree, field))
}
