//! Test-side generators and oracles that share no code with the library's
//! reduction or matching.

#![allow(dead_code)]

use mph_core::complex::{MeasuringFunction, SimplicialComplex};
use mph_core::PersistenceDiagram;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random complex on `vertices` vertices with some edges, triangles and tetrahedra.
pub fn random_complex<R: Rng>(rng: &mut R, vertices: usize) -> SimplicialComplex {
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let all: Vec<usize> = (0..vertices).collect();
    let pick = |rng: &mut R, k: usize| {
        let mut s: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
        s.sort_unstable();
        s
    };
    if vertices >= 2 {
        for _ in 0..rng.gen_range(0..=2 * vertices) {
            simplices.push(pick(rng, 2));
        }
    }
    if vertices >= 3 {
        for _ in 0..rng.gen_range(0..=vertices) {
            simplices.push(pick(rng, 3));
        }
    }
    if vertices >= 4 {
        for _ in 0..rng.gen_range(0..=2) {
            simplices.push(pick(rng, 4));
        }
    }
    simplices.sort();
    simplices.dedup();
    SimplicialComplex::new(vertices, simplices).expect("valid random complex")
}

/// Values drawn from a coarse grid so ties are frequent.
pub fn random_function<R: Rng>(rng: &mut R, vertices: usize, n: usize) -> MeasuringFunction {
    let rows = (0..vertices)
        .map(|_| (0..n).map(|_| rng.gen_range(0..8) as f64 * 0.25).collect())
        .collect();
    MeasuringFunction::new(n, rows).expect("finite values")
}

/// Rank over Z/2 of a set of bit vectors (each a `Vec<u64>` of equal length).
fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, Vec::len);
    for bit in 0..words * 64 {
        let (w, mask) = (bit / 64, 1u64 << (bit % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & mask != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the kernel over Z/2 of the map sending column `c` to `columns[c]`
/// (each a bit vector over `rows` bits); returned vectors are over the columns.
fn gf2_kernel(columns: &[Vec<u64>], rows: usize) -> Vec<Vec<u64>> {
    let n = columns.len();
    let words_r = rows.div_ceil(64).max(1);
    let words_c = n.div_ceil(64).max(1);
    // Augment each column with the identity and row-reduce on the image part.
    let mut aug: Vec<(Vec<u64>, Vec<u64>)> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut id = vec![0u64; words_c];
            id[i / 64] |= 1 << (i % 64);
            let mut img = c.clone();
            img.resize(words_r, 0);
            (img, id)
        })
        .collect();
    let mut done = 0;
    for bit in 0..rows {
        let (w, mask) = (bit / 64, 1u64 << (bit % 64));
        let Some(pivot) = (done..n).find(|&r| aug[r].0[w] & mask != 0) else {
            continue;
        };
        aug.swap(done, pivot);
        let (pi, pid) = aug[done].clone();
        for (r, (img, id)) in aug.iter_mut().enumerate() {
            if r != done && img[w] & mask != 0 {
                img.iter_mut().zip(&pi).for_each(|(a, b)| *a ^= b);
                id.iter_mut().zip(&pid).for_each(|(a, b)| *a ^= b);
            }
        }
        done += 1;
    }
    aug.into_iter()
        .filter(|(img, _)| img.iter().all(|&x| x == 0))
        .map(|(_, id)| id)
        .collect()
}

/// Rank over Z/2 of `H_i(A) -> H_i(B)` for the subcomplexes `A ⊆ B` of `complex`
/// given as simplex index sets, by dense linear algebra:
/// `dim(Z_i(A) + B_i(B)) - dim B_i(B)`.
pub fn inclusion_rank_z2(complex: &SimplicialComplex, a: &[bool], b: &[bool], degree: usize) -> usize {
    let simplices = complex.simplices();
    let of_dim = |d: usize, set: &[bool]| -> Vec<usize> {
        (0..simplices.len())
            .filter(|&i| set[i] && simplices[i].len() == d + 1)
            .collect()
    };
    // Chains of dimension `degree` are indexed by all such simplices of B.
    let basis = of_dim(degree, b);
    let pos = |idx: usize| basis.iter().position(|&x| x == idx).expect("face in B");
    let words = basis.len().div_ceil(64).max(1);
    let boundary = |idx: usize| -> Vec<usize> {
        let s = &simplices[idx];
        (0..s.len())
            .map(|k| {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                complex.index_of(&face).expect("face-closed")
            })
            .collect()
    };
    let as_bits = |items: &[usize]| {
        let mut v = vec![0u64; words];
        for &i in items {
            v[i / 64] ^= 1 << (i % 64);
        }
        v
    };

    // Cycles of A in degree `degree`.
    let a_chains = of_dim(degree, a);
    let cycles: Vec<Vec<u64>> = if degree == 0 {
        a_chains.iter().map(|&i| as_bits(&[pos(i)])).collect()
    } else {
        let lower = of_dim(degree - 1, a);
        let lower_words = lower.len().div_ceil(64).max(1);
        let columns: Vec<Vec<u64>> = a_chains
            .iter()
            .map(|&i| {
                let mut v = vec![0u64; lower_words];
                for f in boundary(i) {
                    let r = lower.iter().position(|&x| x == f).expect("face in A");
                    v[r / 64] ^= 1 << (r % 64);
                }
                v
            })
            .collect();
        gf2_kernel(&columns, lower.len())
            .into_iter()
            .map(|coeffs| {
                let items: Vec<usize> = (0..a_chains.len())
                    .filter(|&c| coeffs[c / 64] >> (c % 64) & 1 == 1)
                    .map(|c| pos(a_chains[c]))
                    .collect();
                as_bits(&items)
            })
            .collect()
    };
    let boundaries: Vec<Vec<u64>> = of_dim(degree + 1, b)
        .into_iter()
        .map(|i| as_bits(&boundary(i).into_iter().map(pos).collect::<Vec<_>>()))
        .collect();
    let rank_b = gf2_rank(boundaries.clone());
    let rank_sum = gf2_rank(cycles.into_iter().chain(boundaries).collect());
    rank_sum - rank_b
}

/// Bottleneck distance by exhaustive search over all bijections of the
/// diagonal-augmented diagrams. Only for a handful of points.
pub fn brute_force_bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram) -> f64 {
    let pa = a.expanded();
    let pb = b.expanded();
    // Left: points of a then diagonal slots for b; right: points of b then slots for a.
    let n = pa.len() + pb.len();
    let cost = |i: usize, j: usize| -> f64 {
        match (i < pa.len(), j < pb.len()) {
            (true, true) => delta(pa[i], pb[j]),
            (true, false) => half(pa[i]),
            (false, true) => half(pb[j]),
            (false, false) => 0.0,
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut perm, 0, &mut |p| {
        let worst = p.iter().enumerate().map(|(i, &j)| cost(i, j)).fold(0.0, f64::max);
        if worst < best {
            best = worst;
        }
    });
    best
}

fn half((b, d): (f64, f64)) -> f64 {
    if d.is_infinite() {
        f64::INFINITY
    } else {
        (d - b) / 2.0
    }
}

fn delta((a, b): (f64, f64), (c, d): (f64, f64)) -> f64 {
    match (b.is_infinite(), d.is_infinite()) {
        (true, true) => (a - c).abs(),
        (false, false) => ((a - c).abs().max((b - d).abs())).min(half((a, b)).max(half((c, d)))),
        _ => f64::INFINITY,
    }
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Lower-star persistence diagram of a path `0 - 1 - ... - m` in degree 0, by
/// the elder rule on sorted vertices.
pub fn path_diagram(values: &[f64]) -> Vec<(f64, f64)> {
    let m = values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]).then(x.cmp(&y)));
    let mut root: Vec<Option<usize>> = vec![None; m];
    let mut birth = vec![0.0; m];
    fn find(root: &mut [Option<usize>], x: usize) -> usize {
        let mut r = x;
        while let Some(p) = root[r] {
            if p == r {
                break;
            }
            r = p;
        }
        r
    }
    let mut out = Vec::new();
    for &v in &order {
        root[v] = Some(v);
        birth[v] = values[v];
        for w in [v.wrapping_sub(1), v + 1] {
            if w < m && root[w].is_some() {
                let (rv, rw) = (find(&mut root, v), find(&mut root, w));
                if rv != rw {
                    let (young, old) = if birth[rv] > birth[rw] || (birth[rv] == birth[rw] && rv > rw) {
                        (rv, rw)
                    } else {
                        (rw, rv)
                    };
                    if birth[young] < values[v] {
                        out.push((birth[young], values[v]));
                    }
                    root[young] = Some(old);
                }
            }
        }
    }
    let survivor = order.first().map(|&v| values[v]);
    out.extend(survivor.map(|b| (b, f64::INFINITY)));
    out.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    out
}
