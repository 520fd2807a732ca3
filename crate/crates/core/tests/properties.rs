mod common;

use common::{brute_force_bottleneck, inclusion_rank_z2, path_diagram, random_complex, random_function};
use mph_core::complex::{
    load_pair, pair_from_json, pair_to_json, save_pair, scalar_sublevel, sublevel_complex, MeasuringFunction,
    ParameterPoint, ScalarFiltration, SimplicialComplex, SizePair,
};
use mph_core::distance::{delta, stability_check, Cornerpoint};
use mph_core::foliation::{make_admissible, pair_through, reduce, slice_grid, GridSpec};
use mph_core::persistence::{diagram, multidim_rank, rank_at, rank_oracle};
use mph_core::{bottleneck, PersistenceDiagram, PrimeField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn continuous_function(rng: &mut ChaCha8Rng, vertices: usize, n: usize) -> MeasuringFunction {
    let rows = (0..vertices)
        .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect();
    MeasuringFunction::new(n, rows).unwrap()
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> mph_core::AdmissiblePair {
    let l: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    make_admissible(&l, &b).unwrap()
}

fn random_diagram(rng: &mut ChaCha8Rng, degree: usize, max_finite: usize, essential: usize) -> PersistenceDiagram {
    let mut pairs = Vec::new();
    for _ in 0..rng.gen_range(0..=max_finite) {
        let b = rng.gen_range(0..8) as f64 * 0.25;
        let d = b + rng.gen_range(1..6) as f64 * 0.25;
        pairs.push((b, d));
    }
    for _ in 0..essential {
        pairs.push((rng.gen_range(0..8) as f64 * 0.25, f64::INFINITY));
    }
    PersistenceDiagram::from_pairs(degree, pairs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_complexes_are_face_closed(seed in any::<u64>(), vertices in 1usize..12) {
        let k = random_complex(&mut rng(seed), vertices);
        prop_assert!(k.is_face_closed());
    }

    #[test]
    fn sublevel_sets_are_monotone(seed in any::<u64>(), vertices in 1usize..12, n in 1usize..4) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let f = random_function(&mut r, vertices, n);
        let u: Vec<f64> = (0..n).map(|_| r.gen_range(0..8) as f64 * 0.25).collect();
        let v: Vec<f64> = u.iter().map(|x| x + r.gen_range(0..4) as f64 * 0.25).collect();
        let small = sublevel_complex(&k, &f, &u).unwrap();
        let large = sublevel_complex(&k, &f, &v).unwrap();
        prop_assert!(small.is_face_closed());
        prop_assert!(large.is_face_closed());
        prop_assert!(small.is_subcomplex_of(&large));
    }

    #[test]
    fn leaf_sublevel_matches_plane_sublevel(seed in any::<u64>(), vertices in 1usize..12, n in 1usize..4) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let f = continuous_function(&mut r, vertices, n);
        let pair = random_pair(&mut r, n);
        let s = r.gen_range(-3.0..3.0);
        let g = reduce(&f, &pair).unwrap();
        let via_leaf = scalar_sublevel(&k, &g, s);
        let via_plane = sublevel_complex(&k, &f, &pair.point_at(s)).unwrap();
        prop_assert_eq!(via_leaf.members(), via_plane.members());
    }

    #[test]
    fn reduced_filtration_is_monotone(seed in any::<u64>(), vertices in 1usize..12, n in 1usize..4) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let f = continuous_function(&mut r, vertices, n);
        let g = reduce(&f, &random_pair(&mut r, n)).unwrap();
        prop_assert!(g.is_monotone(&k));
    }

    #[test]
    fn essential_classes_give_euler_characteristic(seed in any::<u64>(), vertices in 1usize..12) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let g = ScalarFiltration::new((0..vertices).map(|_| r.gen_range(0.0..1.0)).collect()).unwrap();
        let counts = k.counts_by_dim();
        let chi: i64 = counts.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        prop_assert_eq!(k.euler_characteristic(), chi);
        for p in [2u64, 3] {
            let diagrams = diagram(&k, &g, 3, PrimeField::new(p).unwrap()).unwrap();
            let from_betti: i64 = diagrams
                .iter()
                .map(|d| {
                    let e = d.essential_count() as i64;
                    if d.degree % 2 == 0 { e } else { -e }
                })
                .sum();
            prop_assert_eq!(from_betti, chi);
        }
    }

    #[test]
    fn rank_is_monotone_in_the_slice(seed in any::<u64>(), vertices in 1usize..12) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let g = ScalarFiltration::new((0..vertices).map(|_| r.gen_range(0..8) as f64 * 0.25).collect()).unwrap();
        let s = r.gen_range(0..8) as f64 * 0.25;
        let t = s + r.gen_range(1..6) as f64 * 0.25;
        let s2 = s + (t - s) * r.gen_range(0.0..1.0);
        let t2 = s2 + (t - s2) * r.gen_range(0.01..1.0);
        for d in diagram(&k, &g, 2, PrimeField::default()).unwrap() {
            let outer = rank_at(&d, s, t).unwrap();
            prop_assert!(outer <= rank_at(&d, s2, t).unwrap());
            prop_assert!(outer <= rank_at(&d, s, t2).unwrap());
        }
    }

    #[test]
    fn multidim_rank_matches_linear_algebra(seed in any::<u64>(), vertices in 1usize..10, n in 2usize..4) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let f = random_function(&mut r, vertices, n);
        let u: Vec<f64> = (0..n).map(|_| r.gen_range(0..8) as f64 * 0.25).collect();
        let v: Vec<f64> = u.iter().map(|x| x + r.gen_range(1..4) as f64 * 0.25).collect();
        let p = ParameterPoint::new(u.clone(), v.clone()).unwrap();
        let a = sublevel_complex(&k, &f, &u).unwrap();
        let b = sublevel_complex(&k, &f, &v).unwrap();
        let mask = |s: &mph_core::Subcomplex<'_>| (0..k.len()).map(|i| s.contains(i)).collect::<Vec<_>>();
        for degree in 0..=2 {
            let expected = inclusion_rank_z2(&k, &mask(&a), &mask(&b), degree);
            prop_assert_eq!(multidim_rank(&k, &f, &p, degree, PrimeField::default()).unwrap(), expected);
            prop_assert_eq!(rank_oracle(&k, &f, &p, degree, PrimeField::default()).unwrap(), expected);
        }
    }

    #[test]
    fn path_diagrams_follow_the_elder_rule(values in prop::collection::vec(0u8..6, 1..12)) {
        let values: Vec<f64> = values.into_iter().map(f64::from).collect();
        let m = values.len();
        let edges: Vec<[usize; 2]> = (1..m).map(|i| [i - 1, i]).collect();
        let k = SimplicialComplex::new(m, edges).unwrap();
        let g = ScalarFiltration::new(values.clone()).unwrap();
        let d = diagram(&k, &g, 0, PrimeField::default()).unwrap();
        prop_assert_eq!(d[0].expanded(), path_diagram(&values));
    }

    #[test]
    fn bottleneck_matches_exhaustive_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let essential = r.gen_range(0..2);
        let a = random_diagram(&mut r, 0, 2, essential);
        let b = random_diagram(&mut r, 0, 2, essential);
        let fast = bottleneck(&a, &b).unwrap();
        let slow = brute_force_bottleneck(&a, &b);
        prop_assert!((fast - slow).abs() < 1e-12, "fast {} slow {}", fast, slow);
    }

    #[test]
    fn bottleneck_is_a_pseudometric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let essential = r.gen_range(0..3);
        let ds: Vec<_> = (0..3)
            .map(|_| random_diagram(&mut r, 1, 5, essential))
            .collect();
        let d = |i: usize, j: usize| bottleneck(&ds[i], &ds[j]).unwrap();
        for i in 0..3 {
            prop_assert_eq!(d(i, i), 0.0);
            for j in 0..3 {
                prop_assert_eq!(d(i, j), d(j, i));
                for m in 0..3 {
                    prop_assert!(d(i, m) <= d(i, j) + d(j, m) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn cornerpoint_distance_is_symmetric_with_zero_diagonal(a in 0.0f64..5.0, da in 0.0f64..5.0, c in 0.0f64..5.0, dc in 0.0f64..5.0, ess in 0u8..3) {
        let p = Cornerpoint::new(a, if ess == 1 { f64::INFINITY } else { a + da });
        let q = Cornerpoint::new(c, if ess == 2 { f64::INFINITY } else { c + dc });
        prop_assert_eq!(delta(p, p), 0.0);
        prop_assert_eq!(delta(p, q), delta(q, p));
        prop_assert!(delta(p, q) >= 0.0);
    }

    #[test]
    fn scalar_diagrams_are_stable(seed in any::<u64>(), vertices in 1usize..12) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let g1: Vec<f64> = (0..vertices).map(|_| r.gen_range(-1.0..1.0)).collect();
        let g2: Vec<f64> = g1.iter().map(|x| x + r.gen_range(-0.2..0.2)).collect();
        let eps = g1.iter().zip(&g2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let d1 = diagram(&k, &ScalarFiltration::new(g1).unwrap(), 2, PrimeField::default()).unwrap();
        let d2 = diagram(&k, &ScalarFiltration::new(g2).unwrap(), 2, PrimeField::default()).unwrap();
        for (a, b) in d1.iter().zip(&d2) {
            prop_assert!(bottleneck(a, b).unwrap() <= eps + 1e-12);
        }
    }

    #[test]
    fn leaf_distance_respects_the_stability_bound(seed in any::<u64>(), vertices in 1usize..12, n in 2usize..4) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let f1 = continuous_function(&mut r, vertices, n);
        let rows: Vec<Vec<f64>> = f1.rows().map(|row| row.iter().map(|x| x + r.gen_range(-0.3..0.3)).collect()).collect();
        let f2 = MeasuringFunction::new(n, rows).unwrap();
        let pair = random_pair(&mut r, n);
        for degree in 0..=2 {
            let report = stability_check(&k, &f1, &f2, &pair, degree, PrimeField::default()).unwrap();
            prop_assert!(report.ok, "{:?}", report);
            prop_assert!((report.epsilon - f1.sup_distance(&f2).unwrap()).abs() == 0.0);
        }
    }

    #[test]
    fn files_round_trip(seed in any::<u64>(), vertices in 1usize..12, n in 1usize..4) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, vertices);
        let f = continuous_function(&mut r, vertices, n);
        let pair = SizePair::new(k, f).unwrap();
        let text = load_pair(&save_pair(&pair)).unwrap();
        prop_assert_eq!(&text.complex, &pair.complex);
        prop_assert_eq!(&text.function, &pair.function);
        let json = pair_from_json(&pair_to_json(&pair)).unwrap();
        prop_assert_eq!(&json.complex, &pair.complex);
        prop_assert_eq!(&json.function, &pair.function);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pair_through_round_trips(
        u in prop::collection::vec(-10.0f64..10.0, 1..5),
        step in prop::collection::vec(0.001f64..5.0, 5),
    ) {
        let v: Vec<f64> = u.iter().zip(&step).map(|(a, d)| a + d).collect();
        let p = ParameterPoint::new(u.clone(), v.clone()).unwrap();
        let slice = pair_through(&p);
        let back = slice.plane_point().unwrap();
        for (x, y) in back.u().iter().zip(&u).chain(back.v().iter().zip(&v)) {
            prop_assert!((x - y).abs() < 1e-10);
        }
        let l = slice.pair.direction();
        prop_assert!(l.iter().all(|&x| x > 0.0));
        prop_assert!((l.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(slice.pair.offset().iter().sum::<f64>().abs() < 1e-10);
    }

    #[test]
    fn make_admissible_is_idempotent(
        l in prop::collection::vec(0.01f64..10.0, 1..5),
        b in prop::collection::vec(-10.0f64..10.0, 5),
    ) {
        let b = &b[..l.len()];
        let once = make_admissible(&l, b).unwrap();
        let twice = make_admissible(once.direction(), once.offset()).unwrap();
        for (x, y) in once.direction().iter().zip(twice.direction()).chain(once.offset().iter().zip(twice.offset())) {
            prop_assert!((x - y).abs() < 1e-14);
        }
    }
}

#[test]
fn grid_refinement_contains_the_coarse_grid() {
    let coarse = slice_grid(2, &GridSpec::new(3, 3, 1.0)).unwrap();
    let fine = slice_grid(2, &GridSpec::new(9, 5, 1.0)).unwrap();
    for p in &coarse {
        let found = fine.iter().any(|q| {
            p.direction().iter().chain(p.offset()).zip(q.direction().iter().chain(q.offset())).all(|(a, b)| (a - b).abs() < 1e-12)
        });
        assert!(found, "{p:?} missing from the refined grid");
    }
}
