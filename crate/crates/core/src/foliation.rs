//! Half-plane foliation of `{(u, v) : u < v}` and the max-reduction.
//!
//! Each admissible pair `(l, b)` (unit `l` with positive entries, `b` summing
//! to zero) indexes the half-plane `u = s l + b, v = t l + b, s < t`. Every
//! point with `u < v` lies on exactly one such half-plane, and along it the
//! sublevel set `{f <= s l + b}` equals `{g <= s}` for
//! `g = max_j (f_j - b_j) / l_j`.

use serde::{Deserialize, Serialize};

use crate::complex::{MeasuringFunction, ParameterPoint, ScalarFiltration};
use crate::error::{Error, Result};
use crate::format::round_sig;

/// Tolerance on `||l|| = 1` and `sum b = 0`.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct AdmissiblePair {
    l: Vec<f64>,
    b: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPair {
    l: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<RawPair> for AdmissiblePair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        make_admissible(&raw.l, &raw.b)
    }
}

impl AdmissiblePair {
    pub fn direction(&self) -> &[f64] {
        &self.l
    }

    pub fn offset(&self) -> &[f64] {
        &self.b
    }

    pub fn dimension(&self) -> usize {
        self.l.len()
    }

    /// `min_j l_j`, the weight of this leaf in the matching distance.
    pub fn weight(&self) -> f64 {
        self.l.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// The point `s l + b`.
    pub fn point_at(&self, s: f64) -> Vec<f64> {
        self.l.iter().zip(&self.b).map(|(l, b)| s * l + b).collect()
    }

    /// Copy with every entry rounded for output; not re-normalized.
    pub(crate) fn rounded(&self, digits: usize) -> Self {
        let round = |v: &[f64]| v.iter().map(|&x| round_sig(x, digits)).collect();
        Self {
            l: round(&self.l),
            b: round(&self.b),
        }
    }

    /// The identity pair of `Adm_1`.
    pub fn trivial() -> Self {
        Self {
            l: vec![1.0],
            b: vec![0.0],
        }
    }
}

/// A point `(s, t)` on a given leaf.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlicePoint {
    #[serde(flatten)]
    pub pair: AdmissiblePair,
    pub s: f64,
    pub t: f64,
}

impl SlicePoint {
    pub fn new(pair: AdmissiblePair, s: f64, t: f64) -> Result<Self> {
        if !(s < t) {
            return Err(Error::InvalidSlice { s, t });
        }
        Ok(Self { pair, s, t })
    }

    /// `(s l + b, t l + b)`.
    pub fn plane_point(&self) -> Result<ParameterPoint> {
        ParameterPoint::new(self.pair.point_at(self.s), self.pair.point_at(self.t))
    }
}

/// Normalizes `l_raw` to unit length and projects `b_raw` onto `sum b = 0`.
pub fn make_admissible(l_raw: &[f64], b_raw: &[f64]) -> Result<AdmissiblePair> {
    if l_raw.is_empty() {
        return Err(Error::Invalid("admissible pair must have positive dimension".into()));
    }
    if l_raw.len() != b_raw.len() {
        return Err(Error::DimensionMismatch {
            expected: l_raw.len(),
            found: b_raw.len(),
        });
    }
    if l_raw.iter().chain(b_raw).any(|x| !x.is_finite()) {
        return Err(Error::Invalid("admissible pair entries must be finite".into()));
    }
    if l_raw.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroDirection);
    }
    if l_raw.iter().any(|&x| x <= 0.0) {
        return Err(Error::NonPositiveDirection);
    }
    let n = l_raw.len() as f64;
    let norm = l_raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    let l = l_raw.iter().map(|x| x / norm).collect();
    let mean = b_raw.iter().sum::<f64>() / n;
    let b = b_raw.iter().map(|x| x - mean).collect();
    Ok(AdmissiblePair { l, b })
}

/// The unique leaf through `p`, with the coordinates of `p` on it.
pub fn pair_through(p: &ParameterPoint) -> SlicePoint {
    let (u, v) = (p.u(), p.v());
    let diff: Vec<f64> = u.iter().zip(v).map(|(a, b)| b - a).collect();
    let norm = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
    let l: Vec<f64> = diff.iter().map(|x| x / norm).collect();
    let l_sum: f64 = l.iter().sum();
    let s = u.iter().sum::<f64>() / l_sum;
    let t = v.iter().sum::<f64>() / l_sum;
    let b = u.iter().zip(&l).map(|(u, l)| u - s * l).collect();
    SlicePoint {
        pair: AdmissiblePair { l, b },
        s,
        t,
    }
}

/// `g(P) = max_j (f_j(P) - b_j) / l_j` at every vertex.
pub fn reduce(f: &MeasuringFunction, pair: &AdmissiblePair) -> Result<ScalarFiltration> {
    if f.dimension() != pair.dimension() {
        return Err(Error::DimensionMismatch {
            expected: pair.dimension(),
            found: f.dimension(),
        });
    }
    let values = f
        .rows()
        .map(|row| {
            row.iter()
                .zip(pair.l.iter().zip(&pair.b))
                .map(|(x, (l, b))| (x - b) / l)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    ScalarFiltration::new(values)
}

/// Sampling density for the leaves of the foliation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Direction samples (for `n > 2`, subdivisions per edge of the direction simplex).
    pub directions: usize,
    /// Offset samples per free coordinate; must be odd so that `b = 0` is included.
    pub offsets: usize,
    pub offset_radius: f64,
}

impl GridSpec {
    pub const DEFAULT_DIRECTIONS: usize = 9;
    pub const DEFAULT_OFFSETS: usize = 5;

    pub fn new(directions: usize, offsets: usize, offset_radius: f64) -> Self {
        Self {
            directions,
            offsets,
            offset_radius,
        }
    }

    /// The single central leaf `l = (1, ..., 1) / sqrt(n)`, `b = 0`.
    pub fn central() -> Self {
        Self::new(1, 1, 0.0)
    }

    /// Default density with the radius set to half the largest per-component
    /// range of the given functions.
    pub fn default_for(functions: &[&MeasuringFunction]) -> Self {
        Self::new(
            Self::DEFAULT_DIRECTIONS,
            Self::DEFAULT_OFFSETS,
            default_offset_radius(functions),
        )
    }

    fn validate(&self) -> Result<()> {
        if self.directions == 0 {
            return Err(Error::InvalidGrid("direction count must be at least 1".into()));
        }
        if self.offsets == 0 || self.offsets.is_multiple_of(2) {
            return Err(Error::InvalidGrid("offset count must be odd".into()));
        }
        if !(self.offset_radius >= 0.0) || !self.offset_radius.is_finite() {
            return Err(Error::InvalidGrid("offset radius must be finite and non-negative".into()));
        }
        Ok(())
    }
}

/// Half of the largest per-component range over all given functions.
pub fn default_offset_radius(functions: &[&MeasuringFunction]) -> f64 {
    let mut widest: f64 = 0.0;
    for f in functions {
        let (lo, hi) = f.bounds();
        for (a, b) in lo.iter().zip(&hi) {
            if b >= a {
                widest = widest.max(b - a);
            }
        }
    }
    widest / 2.0
}

/// Admissible pairs sampled on a regular grid.
///
/// For `n = 2` the directions are `(cos θ, sin θ)` at Chebyshev nodes of
/// `(0, π/2)` and the offsets are `(a, -a)` for equally spaced `a` in
/// `[-radius, radius]`. For `n > 2` the directions are interior points of
/// a barycentric grid on the positive orthant of the sphere and the offsets
/// are `(a_1, ..., a_{n-1}, -sum a)` over a product grid. Pairs are listed
/// direction-major.
pub fn slice_grid(n: usize, spec: &GridSpec) -> Result<Vec<AdmissiblePair>> {
    spec.validate()?;
    match n {
        0 => Err(Error::InvalidGrid("dimension must be positive".into())),
        1 => Ok(vec![AdmissiblePair::trivial()]),
        2 => {
            let offsets = offset_values(spec);
            let mut pairs = Vec::with_capacity(spec.directions * offsets.len());
            for k in 0..spec.directions {
                let l = chebyshev_direction(k, spec.directions);
                for &a in &offsets {
                    pairs.push(make_admissible(&l, &[a, -a])?);
                }
            }
            Ok(pairs)
        }
        _ => {
            let offsets = offset_values(spec);
            let mut offset_vectors = Vec::new();
            let mut idx = vec![0usize; n - 1];
            loop {
                let mut b: Vec<f64> = idx.iter().map(|&i| offsets[i]).collect();
                b.push(-b.iter().sum::<f64>());
                offset_vectors.push(b);
                if !advance(&mut idx, offsets.len()) {
                    break;
                }
            }
            let mut pairs = Vec::new();
            for weights in compositions(spec.directions - 1, n) {
                let l: Vec<f64> = weights.iter().map(|&k| k as f64 + 0.5).collect();
                for b in &offset_vectors {
                    pairs.push(make_admissible(&l, b)?);
                }
            }
            Ok(pairs)
        }
    }
}

fn offset_values(spec: &GridSpec) -> Vec<f64> {
    if spec.offsets == 1 {
        return vec![0.0];
    }
    let half = (spec.offsets / 2) as f64;
    (0..spec.offsets)
        .map(|m| spec.offset_radius * (m as f64 - half) / half)
        .collect()
}

fn chebyshev_direction(k: usize, count: usize) -> [f64; 2] {
    // The middle node of an odd grid is the diagonal; build it exactly.
    if 2 * k + 1 == count {
        return [1.0, 1.0];
    }
    let quarter = std::f64::consts::FRAC_PI_4;
    let node = ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * count) as f64).cos();
    let theta = quarter - quarter * node;
    [theta.cos(), theta.sin()]
}

/// Odometer increment over `[0, base)^len`; false once it wraps.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for digit in idx.iter_mut() {
        *digit += 1;
        if *digit < base {
            return true;
        }
        *digit = 0;
    }
    false
}

/// All ways to write `total` as an ordered sum of `parts` non-negative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
