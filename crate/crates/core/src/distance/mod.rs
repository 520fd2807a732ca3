//! Matching distances between persistence diagrams and between the rank
//! invariants of two size pairs.
//!
//! The one-parameter matching (bottleneck) distance is computed exactly by
//! binary search over candidate costs with a bipartite-matching feasibility
//! test. The multidimensional distance is a supremum over all leaves of the
//! foliation; here it is sampled on a finite grid, so every value reported is
//! a lower bound.

mod matching;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{MeasuringFunction, SimplicialComplex, SizePair};
use crate::error::{Error, Result};
use crate::foliation::{reduce, AdmissiblePair};
use crate::format::{extended_real, fmt_extended, round_sig};
use crate::persistence::{diagram, slice_diagrams, PersistenceDiagram, PrimeField};

use matching::maximum_matching;

/// Caveat attached to every sampled multidimensional distance.
pub const LOWER_BOUND_CAVEAT: &str = "lower bound of D (sampled)";

/// Slack allowed when checking the stability inequality.
pub const STABILITY_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cornerpoint {
    pub birth: f64,
    pub death: f64,
}

impl Cornerpoint {
    pub fn new(birth: f64, death: f64) -> Self {
        Self { birth, death }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    fn half_persistence(&self) -> f64 {
        (self.death - self.birth) / 2.0
    }
}

/// Cornerpoint distance
/// `min{max{|a-c|, |b-d|}, max{(b-a)/2, (d-c)/2}}`.
///
/// Two essential points are at distance `|a - c|`; an essential point is at
/// infinite distance from any finite one.
pub fn delta(p: Cornerpoint, q: Cornerpoint) -> f64 {
    match (p.is_essential(), q.is_essential()) {
        (true, true) => (p.birth - q.birth).abs(),
        (false, false) => {
            let direct = (p.birth - q.birth).abs().max((p.death - q.death).abs());
            let via_diagonal = p.half_persistence().max(q.half_persistence());
            direct.min(via_diagonal)
        }
        _ => f64::INFINITY,
    }
}

/// Exact matching distance between two diagrams of the same degree.
pub fn bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram) -> Result<f64> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(a.degree, b.degree));
    }
    let split = |d: &PersistenceDiagram| {
        let mut finite = Vec::new();
        let mut essential = Vec::new();
        for (birth, death) in d.expanded() {
            if death == f64::INFINITY {
                essential.push(birth);
            } else {
                finite.push(Cornerpoint::new(birth, death));
            }
        }
        essential.sort_by(f64::total_cmp);
        (finite, essential)
    };
    let (finite_a, essential_a) = split(a);
    let (finite_b, essential_b) = split(b);

    if essential_a.len() != essential_b.len() {
        return Ok(f64::INFINITY);
    }
    // On a line, the sorted matching minimizes the largest displacement.
    let essential_cost = essential_a
        .iter()
        .zip(&essential_b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);

    Ok(essential_cost.max(finite_bottleneck(&finite_a, &finite_b)))
}

fn finite_bottleneck(a: &[Cornerpoint], b: &[Cornerpoint]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = a
        .iter()
        .chain(b)
        .map(|p| p.half_persistence())
        .chain(a.iter().flat_map(|&p| b.iter().map(move |&q| delta(p, q))))
        .collect();
    candidates.push(0.0);
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // Sending everything to the diagonal costs the largest half-persistence,
    // so the last candidate is always feasible.
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_within(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Whether the diagonal-augmented diagrams admit a bijection with all costs `<= radius`.
///
/// Left vertices: points of `a`, then diagonal copies of the points of `b`.
/// Right vertices: points of `b`, then diagonal copies of the points of `a`.
fn perfect_matching_within(a: &[Cornerpoint], b: &[Cornerpoint], radius: f64) -> bool {
    let (m, n) = (a.len(), b.len());
    let mut adjacency: Vec<Vec<usize>> = Vec::with_capacity(m + n);
    for (i, &p) in a.iter().enumerate() {
        let mut row: Vec<usize> = (0..n).filter(|&j| delta(p, b[j]) <= radius).collect();
        if p.half_persistence() <= radius {
            row.push(n + i);
        }
        adjacency.push(row);
    }
    for (j, q) in b.iter().enumerate() {
        let mut row: Vec<usize> = Vec::with_capacity(m + 1);
        if q.half_persistence() <= radius {
            row.push(j);
        }
        row.extend(n..n + m);
        adjacency.push(row);
    }
    maximum_matching(&adjacency, n + m) == m + n
}

/// One sampled leaf of the multidimensional distance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceSample {
    #[serde(flatten)]
    pub pair: AdmissiblePair,
    #[serde(with = "extended_real")]
    pub d: f64,
    pub weight: f64,
    #[serde(with = "extended_real")]
    pub weighted: f64,
}

/// Weighted slice distances on a grid and their maximum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceEstimate {
    pub degree: usize,
    pub samples: Vec<SliceSample>,
    #[serde(with = "extended_real")]
    pub lower_bound: f64,
}

impl DistanceEstimate {
    pub fn from_samples(degree: usize, samples: Vec<SliceSample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidGrid("no admissible pairs sampled".into()));
        }
        let lower_bound = samples.iter().map(|s| s.weighted).fold(0.0, f64::max);
        Ok(Self {
            degree,
            samples,
            lower_bound,
        })
    }

    /// Combines the samples of two estimates of the same degree.
    pub fn merged(&self, other: &DistanceEstimate) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let samples = self.samples.iter().chain(&other.samples).cloned().collect();
        Self::from_samples(self.degree, samples)
    }

    pub fn rounded(&self, digits: usize) -> Self {
        let samples = self
            .samples
            .iter()
            .map(|s| SliceSample {
                pair: s.pair.rounded(digits),
                d: round_sig(s.d, digits),
                weight: round_sig(s.weight, digits),
                weighted: round_sig(s.weighted, digits),
            })
            .collect();
        Self {
            degree: self.degree,
            samples,
            lower_bound: round_sig(self.lower_bound, digits),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Plot-ready table: `degree,l1..ln,b1..bn,d,weight,weighted`.
    pub fn to_csv(&self) -> String {
        let n = self.samples.first().map_or(0, |s| s.pair.dimension());
        let mut header = vec!["degree".to_string()];
        header.extend((1..=n).map(|j| format!("l{j}")));
        header.extend((1..=n).map(|j| format!("b{j}")));
        header.extend(["d", "weight", "weighted"].map(String::from));
        let mut out = header.join(",");
        out.push('\n');
        for s in &self.samples {
            let mut row = vec![self.degree.to_string()];
            row.extend(s.pair.direction().iter().map(|&x| fmt_extended(x)));
            row.extend(s.pair.offset().iter().map(|&x| fmt_extended(x)));
            row.extend([s.d, s.weight, s.weighted].map(fmt_extended));
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        out
    }
}

fn check_same_dimension(x: &SizePair, y: &SizePair) -> Result<usize> {
    if x.dimension() != y.dimension() {
        return Err(Error::DimensionMismatch {
            expected: x.dimension(),
            found: y.dimension(),
        });
    }
    Ok(x.dimension())
}

fn degree_diagram(diagrams: &[PersistenceDiagram], degree: usize) -> PersistenceDiagram {
    diagrams
        .get(degree)
        .cloned()
        .unwrap_or_else(|| PersistenceDiagram::empty(degree))
}

/// Sampled multidimensional matching distance for every degree in `0..=max_degree`.
///
/// Slices are evaluated in parallel on the current rayon pool; samples keep
/// the order of `pairs`.
pub fn multidim_distances(
    x: &SizePair,
    y: &SizePair,
    max_degree: usize,
    pairs: &[AdmissiblePair],
    field: PrimeField,
) -> Result<Vec<DistanceEstimate>> {
    let n = check_same_dimension(x, y)?;
    if pairs.is_empty() {
        return Err(Error::InvalidGrid("no admissible pairs sampled".into()));
    }
    if let Some(bad) = pairs.iter().find(|p| p.dimension() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dimension(),
        });
    }
    let per_slice: Vec<Vec<SliceSample>> = pairs
        .par_iter()
        .map(|pair| {
            let dx = slice_diagrams(x, pair, max_degree, field)?;
            let dy = slice_diagrams(y, pair, max_degree, field)?;
            let weight = pair.weight();
            (0..=max_degree)
                .map(|degree| {
                    let d = bottleneck(&degree_diagram(&dx, degree), &degree_diagram(&dy, degree))?;
                    Ok(SliceSample {
                        pair: pair.clone(),
                        d,
                        weight,
                        weighted: weight * d,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    (0..=max_degree)
        .map(|degree| {
            let samples = per_slice.iter().map(|row| row[degree].clone()).collect();
            DistanceEstimate::from_samples(degree, samples)
        })
        .collect()
}

/// Sampled multidimensional matching distance in one degree.
pub fn multidim_distance(
    x: &SizePair,
    y: &SizePair,
    degree: usize,
    pairs: &[AdmissiblePair],
    field: PrimeField,
) -> Result<DistanceEstimate> {
    let mut all = multidim_distances(x, y, degree, pairs, field)?;
    Ok(all.pop().expect("one estimate per degree"))
}

/// Largest lower bound over a set of degrees.
pub fn max_over_degrees(estimates: &[DistanceEstimate]) -> f64 {
    estimates.iter().map(|e| e.lower_bound).fold(0.0, f64::max)
}

/// Matching distance between the degree-`degree` diagrams of the `j`-th
/// components (`1 <= j <= n`) of the two measuring functions.
pub fn component_distance(
    x: &SizePair,
    y: &SizePair,
    degree: usize,
    j: usize,
    field: PrimeField,
) -> Result<f64> {
    let n = check_same_dimension(x, y)?;
    if j == 0 || j > n {
        return Err(Error::ComponentOutOfRange { index: j, n });
    }
    let dx = diagram(&x.complex, &x.function.component(j - 1), degree, field)?;
    let dy = diagram(&y.complex, &y.function.component(j - 1), degree, field)?;
    bottleneck(&degree_diagram(&dx, degree), &degree_diagram(&dy, degree))
}

/// Outcome of checking `d <= ε / min_j l_j` on one leaf.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub epsilon: f64,
    pub bound: f64,
    pub d: f64,
    pub ok: bool,
}

/// Compares the slice diagrams of two functions on the same complex.
pub fn stability_check(
    complex: &SimplicialComplex,
    f1: &MeasuringFunction,
    f2: &MeasuringFunction,
    pair: &AdmissiblePair,
    degree: usize,
    field: PrimeField,
) -> Result<StabilityReport> {
    for f in [f1, f2] {
        if f.vertex_count() != complex.vertex_count() {
            return Err(Error::ComplexMismatch(complex.vertex_count(), f.vertex_count()));
        }
    }
    let epsilon = f1.sup_distance(f2)?;
    let bound = epsilon / pair.weight();
    let d1 = diagram(complex, &reduce(f1, pair)?, degree, field)?;
    let d2 = diagram(complex, &reduce(f2, pair)?, degree, field)?;
    let d = bottleneck(&degree_diagram(&d1, degree), &degree_diagram(&d2, degree))?;
    Ok(StabilityReport {
        epsilon,
        bound,
        d,
        ok: d <= bound + STABILITY_SLACK,
    })
}
