//! Finite simplicial complexes with vector-valued vertex functions.
//!
//! A complex is stored as a face-closed list of simplices, each a strictly
//! increasing tuple of vertex indices, sorted by dimension and then
//! lexicographically. Functions live on vertices and extend to simplices by
//! taking the maximum over their vertices, which is the standard lower-star
//! rule and makes every sublevel set a subcomplex.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the dimension of stored simplices.
pub const DEFAULT_MAX_DIM: usize = 3;

/// Hard cap used when enumerating faces through bit masks.
const MAX_SUPPORTED_DIM: usize = 15;

/// A finite abstract simplicial complex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    max_dim: usize,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds the face closure of `simplices` on `vertex_count` vertices.
    ///
    /// Every vertex becomes a 0-simplex even if no listed simplex uses it.
    pub fn new<I, S>(vertex_count: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        Self::with_max_dim(vertex_count, DEFAULT_MAX_DIM, simplices)
    }

    pub fn with_max_dim<I, S>(vertex_count: usize, max_dim: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        if max_dim > MAX_SUPPORTED_DIM {
            return Err(Error::Invalid(format!(
                "maximum dimension {max_dim} exceeds the supported bound {MAX_SUPPORTED_DIM}"
            )));
        }
        let mut all: HashSet<Vec<usize>> = (0..vertex_count).map(|v| vec![v]).collect();
        for simplex in simplices {
            let mut s = simplex.as_ref().to_vec();
            if s.is_empty() {
                continue;
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(simplex.as_ref().to_vec()));
            }
            if let Some(&bad) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    index: bad,
                    count: vertex_count,
                });
            }
            if s.len() - 1 > max_dim {
                return Err(Error::SimplexTooLarge {
                    dim: s.len() - 1,
                    max: max_dim,
                });
            }
            if all.contains(&s) {
                continue;
            }
            let k = s.len();
            for mask in 1u32..(1u32 << k) {
                let face: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                all.insert(face);
            }
        }
        let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
        simplices.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(Self {
            vertex_count,
            max_dim,
            simplices,
            index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Number of simplices of all dimensions.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension of the largest simplex, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex(&self, idx: usize) -> &[usize] {
        &self.simplices[idx]
    }

    pub fn simplex_dim(&self, idx: usize) -> usize {
        self.simplices[idx].len() - 1
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex).copied()
    }

    /// Indices of the codimension-one faces, ordered by the position of the
    /// omitted vertex (so the `k`-th face carries the boundary sign `(-1)^k`).
    pub fn facets(&self, idx: usize) -> Vec<usize> {
        let s = &self.simplices[idx];
        if s.len() < 2 {
            return Vec::new();
        }
        let mut face = Vec::with_capacity(s.len() - 1);
        (0..s.len())
            .map(|omit| {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v));
                self.index[face.as_slice()]
            })
            .collect()
    }

    /// Number of simplices per dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dimension().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            counts[s.len() - 1] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts_by_dim()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<&[usize]> {
        let mut covered = vec![false; self.len()];
        for idx in 0..self.len() {
            for f in self.facets(idx) {
                covered[f] = true;
            }
        }
        self.simplices
            .iter()
            .zip(&covered)
            .filter(|(_, &c)| !c)
            .map(|(s, _)| s.as_slice())
            .collect()
    }

    /// Checks face closure, ordering, and vertex coverage.
    pub fn is_face_closed(&self) -> bool {
        let vertices_present = (0..self.vertex_count).all(|v| self.index.contains_key(&vec![v]));
        let closed = (0..self.len()).all(|idx| {
            let s = &self.simplices[idx];
            s.len() < 2
                || (0..s.len()).all(|omit| {
                    let face: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != omit)
                        .map(|(_, &v)| v)
                        .collect();
                    self.index.contains_key(&face)
                })
        });
        vertices_present && closed
    }

    /// The whole complex viewed as a subcomplex of itself.
    pub fn full(&self) -> Subcomplex<'_> {
        Subcomplex::from_predicate(self, |_| true)
    }
}

/// Per-vertex values of an `n`-dimensional measuring function.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuringFunction {
    n: usize,
    values: Vec<f64>,
}

impl MeasuringFunction {
    pub fn new(n: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("measuring function dimension must be positive".into()));
        }
        let mut values = Vec::with_capacity(rows.len() * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            values.extend(row);
        }
        Self::from_flat(n, values)
    }

    /// Builds from row-major values, `n` entries per vertex.
    pub fn from_flat(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("measuring function dimension must be positive".into()));
        }
        if !values.len().is_multiple_of(n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: values.len() % n,
            });
        }
        if let Some(pos) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteValue { vertex: pos / n });
        }
        Ok(Self { n, values })
    }

    /// A one-dimensional measuring function.
    pub fn scalar(values: Vec<f64>) -> Result<Self> {
        Self::from_flat(1, values)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len() / self.n
    }

    pub fn value(&self, vertex: usize) -> &[f64] {
        &self.values[vertex * self.n..(vertex + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n)
    }

    /// Component `j` (zero-based) as a scalar filtration.
    pub fn component(&self, j: usize) -> ScalarFiltration {
        assert!(j < self.n, "component {j} out of range for dimension {}", self.n);
        ScalarFiltration {
            values: self.rows().map(|r| r[j]).collect(),
        }
    }

    /// Componentwise minimum and maximum over all vertices.
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.n];
        let mut hi = vec![f64::NEG_INFINITY; self.n];
        for row in self.rows() {
            for j in 0..self.n {
                lo[j] = lo[j].min(row[j]);
                hi[j] = hi[j].max(row[j]);
            }
        }
        (lo, hi)
    }

    /// `max_P ||f(P) - other(P)||_inf`.
    pub fn sup_distance(&self, other: &MeasuringFunction) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.vertex_count() != other.vertex_count() {
            return Err(Error::ComplexMismatch(self.vertex_count(), other.vertex_count()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Adds `shift` to every vertex value.
    pub fn translated(&self, shift: &[f64]) -> Result<Self> {
        if shift.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: shift.len(),
            });
        }
        let values = self
            .values
            .chunks_exact(self.n)
            .flat_map(|row| row.iter().zip(shift).map(|(a, c)| a + c))
            .collect();
        Self::from_flat(self.n, values)
    }
}

/// Scalar vertex function extended to simplices by the maximum rule.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarFiltration {
    values: Vec<f64>,
}

impl ScalarFiltration {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(vertex) = values.iter().position(|x| x.is_nan()) {
            return Err(Error::NonFiniteValue { vertex });
        }
        Ok(Self { values })
    }

    pub fn vertex_values(&self) -> &[f64] {
        &self.values
    }

    pub fn simplex_value(&self, complex: &SimplicialComplex, idx: usize) -> f64 {
        complex
            .simplex(idx)
            .iter()
            .map(|&v| self.values[v])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn simplex_values(&self, complex: &SimplicialComplex) -> Vec<f64> {
        assert_eq!(
            self.values.len(),
            complex.vertex_count(),
            "filtration is not defined on this complex"
        );
        (0..complex.len()).map(|i| self.simplex_value(complex, i)).collect()
    }

    /// Every simplex value dominates the values of its facets.
    pub fn is_monotone(&self, complex: &SimplicialComplex) -> bool {
        let values = self.simplex_values(complex);
        (0..complex.len()).all(|i| complex.facets(i).into_iter().all(|f| values[f] <= values[i]))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// A point `(u, v)` with `u < v` in every component.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterPoint {
    u: Vec<f64>,
    v: Vec<f64>,
}

impl ParameterPoint {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        if u.is_empty() {
            return Err(Error::Invalid("parameter point must have positive dimension".into()));
        }
        if let Some(component) = u.iter().zip(&v).position(|(a, b)| !(a < b)) {
            return Err(Error::NotStrictlyBelow { component });
        }
        Ok(Self { u, v })
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn dimension(&self) -> usize {
        self.u.len()
    }
}

/// A complex together with a measuring function on its vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct SizePair {
    pub complex: SimplicialComplex,
    pub function: MeasuringFunction,
}

impl SizePair {
    pub fn new(complex: SimplicialComplex, function: MeasuringFunction) -> Result<Self> {
        if complex.vertex_count() != function.vertex_count() {
            return Err(Error::ValueRowCountMismatch {
                declared: complex.vertex_count(),
                found: function.vertex_count(),
            });
        }
        Ok(Self { complex, function })
    }

    pub fn dimension(&self) -> usize {
        self.function.dimension()
    }
}

/// A subset of the simplices of a parent complex.
#[derive(Clone, Debug)]
pub struct Subcomplex<'a> {
    parent: &'a SimplicialComplex,
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl PartialEq for Subcomplex<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl<'a> Subcomplex<'a> {
    pub fn from_predicate(parent: &'a SimplicialComplex, mut keep: impl FnMut(&[usize]) -> bool) -> Self {
        let mask: Vec<bool> = parent.simplices().iter().map(|s| keep(s)).collect();
        let members = mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
            .collect();
        Self {
            parent,
            mask,
            members,
        }
    }

    pub fn parent(&self) -> &'a SimplicialComplex {
        self.parent
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.mask[idx]
    }

    /// Indices into the parent, in the parent's order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn simplices(&self) -> impl Iterator<Item = &'a [usize]> + '_ {
        let parent = self.parent;
        self.members.iter().map(move |&i| parent.simplex(i))
    }

    /// Parent vertex indices that belong to the subcomplex.
    pub fn vertices(&self) -> Vec<usize> {
        self.simplices().filter(|s| s.len() == 1).map(|s| s[0]).collect()
    }

    pub fn is_subcomplex_of(&self, other: &Subcomplex<'_>) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members.iter().all(|&i| other.mask[i])
    }

    pub fn is_face_closed(&self) -> bool {
        self.members
            .iter()
            .all(|&i| self.parent.facets(i).into_iter().all(|f| self.mask[f]))
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for s in self.simplices() {
            let d = s.len() - 1;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts_by_dim()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Number of connected components (union-find over the edges).
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.parent.vertex_count());
        let mut count = 0;
        for s in self.simplices() {
            match s.len() {
                1 => count += 1,
                2
                    if uf.union(s[0], s[1]) => {
                        count -= 1;
                    }
                _ => {}
            }
        }
        count
    }

    /// Re-indexes the subcomplex as a standalone complex. Returns the complex
    /// and, for each new vertex, its index in the parent.
    pub fn to_complex(&self) -> (SimplicialComplex, Vec<usize>) {
        let vertices = self.vertices();
        let mut renumber = vec![usize::MAX; self.parent.vertex_count()];
        for (new, &old) in vertices.iter().enumerate() {
            renumber[old] = new;
        }
        let simplices: Vec<Vec<usize>> = self
            .simplices()
            .map(|s| s.iter().map(|&v| renumber[v]).collect())
            .collect();
        let complex = SimplicialComplex::with_max_dim(vertices.len(), self.parent.max_dim(), simplices)
            .expect("subcomplex of a valid complex is valid");
        (complex, vertices)
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// The full subcomplex on the vertices `P` with `f(P) <= u` componentwise.
pub fn sublevel_complex<'a>(
    complex: &'a SimplicialComplex,
    f: &MeasuringFunction,
    u: &[f64],
) -> Result<Subcomplex<'a>> {
    if f.vertex_count() != complex.vertex_count() {
        return Err(Error::ComplexMismatch(complex.vertex_count(), f.vertex_count()));
    }
    if u.len() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            found: u.len(),
        });
    }
    let kept: Vec<bool> = f
        .rows()
        .map(|row| row.iter().zip(u).all(|(x, bound)| x <= bound))
        .collect();
    Ok(Subcomplex::from_predicate(complex, |s| s.iter().all(|&v| kept[v])))
}

/// Simplices whose filtration value is at most `s`.
///
/// # Panics
/// If `g` is not defined on the vertices of `complex`.
pub fn scalar_sublevel<'a>(complex: &'a SimplicialComplex, g: &ScalarFiltration, s: f64) -> Subcomplex<'a> {
    assert_eq!(
        g.vertex_values().len(),
        complex.vertex_count(),
        "filtration is not defined on this complex"
    );
    let values = g.vertex_values();
    Subcomplex::from_predicate(complex, |simplex| simplex.iter().all(|&v| values[v] <= s))
}

const HEADER: &str = "mph-complex";
const FORMAT_VERSION: u32 = 1;

/// Parses the text complex format.
///
/// ```text
/// mph-complex 1
/// vertices <V> dim <n>
/// <V rows of n values>
/// simplices <S>
/// <S rows of vertex indices>
/// ```
///
/// Blank lines and lines starting with `#` are ignored. Missing faces of
/// listed simplices are added.
pub fn load_pair(text: &str) -> Result<SizePair> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    match tokens.as_slice() {
        [HEADER, version] => {
            let version: u32 = version
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid format version '{version}'")))?;
            if version != FORMAT_VERSION {
                return Err(Error::parse(line, format!("unsupported format version {version}")));
            }
        }
        _ => return Err(Error::parse(line, format!("expected header '{HEADER} {FORMAT_VERSION}'"))),
    }

    let (line, decl) = lines
        .next()
        .ok_or_else(|| Error::parse(line + 1, "missing 'vertices <V> dim <n>' line"))?;
    let tokens: Vec<&str> = decl.split_whitespace().collect();
    let (vertex_count, n) = match tokens.as_slice() {
        ["vertices", v, "dim", n] => (
            parse_count(v, line, "vertex count")?,
            parse_count(n, line, "function dimension")?,
        ),
        _ => return Err(Error::parse(line, "expected 'vertices <V> dim <n>'")),
    };
    if n == 0 {
        return Err(Error::parse(line, "function dimension must be positive"));
    }

    let mut values = Vec::with_capacity(vertex_count * n);
    let mut last_line = line;
    let mut rows = 0;
    let mut simplices_decl = None;
    for (line, text) in lines.by_ref() {
        last_line = line;
        if text.starts_with("simplices") {
            simplices_decl = Some((line, text));
            break;
        }
        if rows == vertex_count {
            return Err(Error::ValueRowCountMismatch {
                declared: vertex_count,
                found: rows + 1,
            });
        }
        let row: Vec<f64> = text
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::parse(line, format!("invalid number '{t}'")))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::RowDimensionMismatch {
                line,
                expected: n,
                found: row.len(),
            });
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteValue { vertex: rows });
        }
        values.extend(row);
        rows += 1;
    }
    if rows != vertex_count {
        return Err(Error::ValueRowCountMismatch {
            declared: vertex_count,
            found: rows,
        });
    }
    let (line, decl) =
        simplices_decl.ok_or_else(|| Error::parse(last_line + 1, "missing 'simplices <S>' line"))?;
    let tokens: Vec<&str> = decl.split_whitespace().collect();
    let simplex_count = match tokens.as_slice() {
        ["simplices", s] => parse_count(s, line, "simplex count")?,
        _ => return Err(Error::parse(line, "expected 'simplices <S>'")),
    };

    let mut simplices = Vec::with_capacity(simplex_count);
    for (line, text) in lines {
        if simplices.len() == simplex_count {
            return Err(Error::parse(
                line,
                format!("more simplex rows than the declared {simplex_count}"),
            ));
        }
        let simplex: Vec<usize> = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("invalid vertex index '{t}'")))
            })
            .collect::<Result<_>>()?;
        simplices.push(simplex);
    }
    if simplices.len() != simplex_count {
        return Err(Error::parse(
            text.lines().count(),
            format!(
                "expected {simplex_count} simplex rows, found {}",
                simplices.len()
            ),
        ));
    }

    let complex = SimplicialComplex::new(vertex_count, simplices)?;
    let function = MeasuringFunction::from_flat(n, values)?;
    SizePair::new(complex, function)
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{token}'")))
}

/// Writes the text complex format. Only maximal simplices are listed.
pub fn save_pair(pair: &SizePair) -> String {
    let mut out = String::new();
    let n = pair.function.dimension();
    writeln!(out, "{HEADER} {FORMAT_VERSION}").unwrap();
    writeln!(out, "vertices {} dim {n}", pair.complex.vertex_count()).unwrap();
    for row in pair.function.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    let maximal = pair.complex.maximal_simplices();
    writeln!(out, "simplices {}", maximal.len()).unwrap();
    for s in maximal {
        let cells: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PairDocument {
    version: u32,
    n: usize,
    vertex_values: Vec<Vec<f64>>,
    simplices: Vec<Vec<usize>>,
}

pub fn pair_to_json(pair: &SizePair) -> String {
    let doc = PairDocument {
        version: FORMAT_VERSION,
        n: pair.function.dimension(),
        vertex_values: pair.function.rows().map(<[f64]>::to_vec).collect(),
        simplices: pair
            .complex
            .maximal_simplices()
            .into_iter()
            .map(<[usize]>::to_vec)
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn pair_from_json(text: &str) -> Result<SizePair> {
    let doc: PairDocument = serde_json::from_str(text)?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::Invalid(format!("unsupported format version {}", doc.version)));
    }
    let vertex_count = doc.vertex_values.len();
    let complex = SimplicialComplex::new(vertex_count, doc.simplices)?;
    let function = MeasuringFunction::new(doc.n, doc.vertex_values)?;
    SizePair::new(complex, function)
}

/// Loads either format, chosen by the first non-blank character.
pub fn load_pair_any(text: &str) -> Result<SizePair> {
    if text.trim_start().starts_with('{') {
        pair_from_json(text)
    } else {
        load_pair(text)
    }
}
