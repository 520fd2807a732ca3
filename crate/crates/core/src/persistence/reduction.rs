//! Standard column reduction of a filtered boundary matrix.

use std::cmp::Ordering;

use crate::complex::{SimplicialComplex, Subcomplex};

use super::field::PrimeField;

const ABSENT: usize = usize::MAX;

/// Simplices of a (sub)complex sorted by value, then dimension, then vertex tuple.
#[derive(Clone, Debug)]
pub struct FiltrationOrder {
    order: Vec<usize>,
    values: Vec<f64>,
}

impl FiltrationOrder {
    /// Orders the simplices of `complex` (or of `members`, when given) by
    /// `simplex_values`, skipping simplices above `max_dim`.
    pub fn new(
        complex: &SimplicialComplex,
        simplex_values: &[f64],
        members: Option<&Subcomplex<'_>>,
        max_dim: Option<usize>,
    ) -> Self {
        assert_eq!(simplex_values.len(), complex.len());
        let keep_dim = |idx: usize| max_dim.is_none_or(|d| complex.simplex_dim(idx) <= d);
        let mut order: Vec<usize> = match members {
            Some(sub) => sub.members().iter().copied().filter(|&i| keep_dim(i)).collect(),
            None => (0..complex.len()).filter(|&i| keep_dim(i)).collect(),
        };
        order.sort_by(|&a, &b| {
            simplex_values[a]
                .total_cmp(&simplex_values[b])
                .then_with(|| compare_simplices(complex.simplex(a), complex.simplex(b)))
        });
        let values = order.iter().map(|&i| simplex_values[i]).collect();
        Self { order, values }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Index (into the complex) of the simplex at filtration position `pos`.
    pub fn simplex_at(&self, pos: usize) -> usize {
        self.order[pos]
    }

    pub fn value_at(&self, pos: usize) -> f64 {
        self.values[pos]
    }

    /// Faces precede cofaces and values never decrease.
    pub fn is_valid(&self, complex: &SimplicialComplex) -> bool {
        let mut position = vec![ABSENT; complex.len()];
        for (pos, &idx) in self.order.iter().enumerate() {
            position[idx] = pos;
        }
        let faces_first = self.order.iter().enumerate().all(|(pos, &idx)| {
            complex
                .facets(idx)
                .into_iter()
                .all(|f| position[f] != ABSENT && position[f] < pos)
        });
        faces_first && self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

fn compare_simplices(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Birth/death positions produced by the reduction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PersistencePairs {
    /// `(birth position, death position)`.
    pub finite: Vec<(usize, usize)>,
    /// Positions of classes that never die.
    pub essential: Vec<usize>,
}

impl PersistencePairs {
    /// Each finite pair consumes two simplices and each essential class one.
    pub fn simplices_accounted(&self) -> usize {
        2 * self.finite.len() + self.essential.len()
    }
}

type Column = Vec<(usize, u32)>;

/// Reduces the boundary matrix of the filtration over `field`.
///
/// # Panics
/// If a face of some simplex in the order is missing from it.
pub fn reduce_filtration(
    complex: &SimplicialComplex,
    order: &FiltrationOrder,
    field: PrimeField,
) -> PersistencePairs {
    let len = order.len();
    let mut position = vec![ABSENT; complex.len()];
    for (pos, &idx) in order.order.iter().enumerate() {
        position[idx] = pos;
    }

    let mut columns: Vec<Column> = Vec::with_capacity(len);
    let mut pivot_owner = vec![ABSENT; len];
    let mut killed = vec![false; len];
    let mut finite = Vec::new();

    for j in 0..len {
        let mut column: Column = complex
            .facets(order.order[j])
            .into_iter()
            .enumerate()
            .map(|(k, face)| {
                let row = position[face];
                assert!(row != ABSENT && row < j, "filtration is not face-closed");
                (row, field.sign(k))
            })
            .collect();
        column.sort_unstable_by_key(|&(row, _)| row);

        while let Some(&(low, coeff)) = column.last() {
            let owner = pivot_owner[low];
            if owner == ABSENT {
                break;
            }
            let other = &columns[owner];
            let pivot = other.last().expect("pivot column is non-empty").1;
            let factor = field.mul(coeff, field.inv(pivot));
            column = subtract_scaled(&column, other, factor, field);
        }

        if let Some(&(low, _)) = column.last() {
            pivot_owner[low] = j;
            killed[low] = true;
            finite.push((low, j));
            columns.push(column);
        } else {
            columns.push(Vec::new());
        }
    }

    let essential = (0..len)
        .filter(|&pos| columns[pos].is_empty() && !killed[pos])
        .collect();
    finite.sort_unstable();
    PersistencePairs { finite, essential }
}

/// `a - factor * b` for sparse columns sorted by row.
fn subtract_scaled(a: &Column, b: &Column, factor: u32, field: PrimeField) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.sub(0, field.mul(factor, b[j].1))));
            j += 1;
        } else {
            let value = field.sub(a[i].1, field.mul(factor, b[j].1));
            if value != 0 {
                out.push((a[i].0, value));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
