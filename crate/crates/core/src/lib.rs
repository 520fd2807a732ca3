//! Multidimensional persistent homology of finite simplicial complexes.
//!
//! A vector-valued measuring function `f: K -> R^n` is studied through the
//! foliation of `{(u, v) : u < v}` by half-planes indexed by admissible
//! pairs `(l, b)`. On every leaf the sublevel sets of `f` coincide with the
//! sublevel sets of the scalar function `g = max_j (f_j - b_j) / l_j`, so the
//! rank invariant of `f` restricted to the leaf is the rank invariant of an
//! ordinary one-parameter filtration. This crate computes those slice
//! diagrams, rank queries, and the sampled multidimensional matching distance
//! between two size pairs.
//!
//! Modules:
//! - [`complex`]: simplicial complexes, measuring functions, sublevel sets, file format.
//! - [`foliation`]: admissible pairs, the max-reduction, slice sampling grids.
//! - [`persistence`]: boundary-matrix reduction, diagrams, rank queries.
//! - [`distance`]: cornerpoint metric, bottleneck distance, weighted slice distances.
//! - [`shapes`]: cube, sphere, ellipse, and torus generators.
//! - [`demo`]: end-to-end reproductions of the reference examples.

// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod complex;
pub mod demo;
pub mod distance;
mod error;
pub mod foliation;
pub mod format;
pub mod persistence;
pub mod shapes;

pub use complex::{
    MeasuringFunction, ParameterPoint, ScalarFiltration, SimplicialComplex, SizePair, Subcomplex,
};
pub use distance::{bottleneck, delta, Cornerpoint, DistanceEstimate};
pub use error::{Error, Result};
pub use foliation::{AdmissiblePair, GridSpec, SlicePoint};
pub use persistence::{DiagramPoint, PersistenceDiagram, PrimeField};
