use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use heron_core::arith::isqrt_big;
use heron_core::lattice::{gaussian_reduce_2d, integer_embedding, rational_embedding, reduce_3d, verify_embedding, LatticePointSet};
use heron_core::search::{self, collect_heron_triangles, HeronTetrahedron};
use heron_core::simplex::{
    cayley_menger_det, heron_area, scaled_volume_sq, tetra_cm_det, tetra_edge_permutations, SquaredDistanceMatrix, TriangleSides,
};

fn sq_matrix(n: usize, upper: &[u64]) -> SquaredDistanceMatrix {
    SquaredDistanceMatrix::from_squared_upper(n, &upper.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_is_relabelling_invariant(d in prop::array::uniform6(1u64..10_000)) {
        let base = cayley_menger_det(&sq_matrix(3, &d));
        for perm in tetra_edge_permutations() {
            let e: Vec<u64> = perm.iter().map(|&k| d[k]).collect();
            prop_assert_eq!(&cayley_menger_det(&sq_matrix(3, &e)), &base);
        }
    }

    #[test]
    fn closed_form_matches_bareiss(d in prop::array::uniform6(1u64..1_000_000)) {
        let closed = tetra_cm_det(&d.map(|x| x as i128));
        prop_assert_eq!(BigInt::from(closed), cayley_menger_det(&sq_matrix(3, &d)));
    }

    #[test]
    fn scaling_multiplies_measures(
        d in prop::collection::vec(1u64..5_000, 6),
        t in prop::sample::select(vec![2u64, 3, 5]),
        n in 2usize..=3,
    ) {
        let d = &d[..n * (n + 1) / 2];
        let scaled: Vec<u64> = d.iter().map(|x| x * t * t).collect();
        let before = scaled_volume_sq(&sq_matrix(n, d));
        let after = scaled_volume_sq(&sq_matrix(n, &scaled));
        prop_assert_eq!(after, before * BigInt::from(t).pow(2 * n as u32));
    }

    #[test]
    fn area_agrees_with_determinant(a in 1u64..3_000, b in 1u64..3_000, c in 1u64..3_000) {
        let t = TriangleSides::new(a, b, c).unwrap();
        let via_det = scaled_volume_sq(&SquaredDistanceMatrix::triangle(&t));
        match heron_area(&t) {
            Err(_) => prop_assert!(via_det <= BigInt::zero()),
            Ok(area) => {
                prop_assert!(via_det > BigInt::zero());
                let root = isqrt_big(&via_det);
                let from_det = root.filter(|r| (r % 4u8).is_zero()).map(|r| r / 4u8);
                prop_assert_eq!(area.map(BigInt::from), from_det);
            }
        }
    }

    #[test]
    fn box_round_trip_scales_by_product(x in 1u64..2_000, y in 1u64..2_000, z in 1u64..2_000) {
        let b = search::rav_to_box(x, y, z).unwrap();
        let (legs, _) = search::box_to_rav(&b);
        let xyz = BigInt::from(x) * y * z;
        let mut got = legs.to_vec();
        got.sort();
        let mut want = vec![&xyz * x, &xyz * y, &xyz * z];
        want.sort();
        prop_assert_eq!(got, want);
    }
}

fn heron_triangles() -> Vec<[u64; 3]> {
    collect_heron_triangles(300, None).iter().map(|t| t.sides.sides()).collect()
}

#[test]
fn heron_triangle_invariants() {
    let all = collect_heron_triangles(400, None);
    assert!(!all.is_empty());
    for t in &all {
        assert_eq!(t.sides.perimeter() % 2, 0, "{:?}", t.sides);
        assert_eq!(t.area % 6, 0, "{:?}", t.sides);
        let [a, b, c] = t.sides.sides();
        assert_eq!(t.angle == search::triangles::AngleKind::Acute, a * a < b * b + c * c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planar_reduction_is_an_isometry(idx in 0usize..1000, p in prop::sample::select(vec![2u64, 3, 5, 7, 13, 17, 29])) {
        let tris = heron_triangles();
        let [a, b, c] = tris[idx % tris.len()];
        let m = SquaredDistanceMatrix::from_edges(2, &[a, b, c]).unwrap();
        let base = integer_embedding(&m).unwrap();
        // rotating an integer embedding by a rational rotation of denominator p
        // and scaling by p keeps distances divisible by p
        let (u, v) = if p % 4 == 1 {
            heron_core::arith::two_squares(p).map(|(x, y)| (x as i64, y as i64)).unwrap()
        } else {
            (0, 1)
        };
        let (ra, rb) = (u * u - v * v, 2 * u * v);
        let rotated: Vec<Vec<BigInt>> = base.points.iter().map(|pt| {
            let (x, y) = (&pt[0], &pt[1]);
            if p % 4 == 1 {
                vec![x * ra - y * rb, x * rb + y * ra]
            } else {
                vec![x * (p as i64), y * (p as i64)]
            }
        }).collect();
        let pts = LatticePointSet::new(2, rotated).unwrap();
        let out = gaussian_reduce_2d(&pts, p).unwrap();
        prop_assert!(out.is_isometric_to(&pts));
        prop_assert!(out.all_divisible_by(&BigInt::from(p)));
    }
}

#[test]
fn tetrahedron_search_invariants() {
    let all = search::search_all_tetrahedra(300, false).unwrap();
    let keys: BTreeSet<[u64; 6]> = all.iter().map(|t| t.edges).collect();
    assert_eq!(keys.len(), all.len(), "duplicate canonical forms");
    for t in &all {
        assert_eq!(t.volume % 336, 0);
        assert!(t.face_areas.iter().all(|a| a % 6 == 0));
        let m = t.matrix();
        assert!(heron_core::simplex::heron_measure_report(&m).is_ok());
        let e = integer_embedding(&m).unwrap();
        assert!(verify_embedding(&e, &m), "{:?}", t.edges);
        // scale-then-reduce round trip
        for p in [3u64, 5] {
            let up = e.scaled_by(&BigInt::from(p));
            let back = reduce_3d(&up, p).unwrap().divided_by(&BigInt::from(p));
            assert!(back.is_isometric_to(&e));
        }
    }
    let primitive: Vec<&HeronTetrahedron> = all.iter().filter(|t| t.primitive).collect();
    assert!(primitive.len() < all.len());
    // the primitive-only search returns exactly the primitive ones
    let prim_only = search::search_all_tetrahedra(300, true).unwrap();
    assert_eq!(prim_only.iter().map(|t| t.edges).collect::<Vec<_>>(), primitive.iter().map(|t| t.edges).collect::<Vec<_>>());
    // no primitive result is a multiple of another
    for a in &prim_only {
        for b in &prim_only {
            for k in 2..=6 {
                assert_ne!(a.edges, b.edges.map(|x| x * k));
            }
        }
    }
}

#[test]
fn dedicated_searches_agree_with_the_exhaustive_one() {
    let n = 1100;
    let all: BTreeSet<[u64; 6]> = search::search_all_tetrahedra(n, true).unwrap().into_iter().map(|t| t.edges).collect();
    let special: Vec<HeronTetrahedron> = search::search_semi_regular(n)
        .unwrap()
        .into_iter()
        .chain(search::search_right_angled_face(n).unwrap().into_iter().map(|p| p.1))
        .chain(search::search_isosceles_face(n).unwrap().into_iter().map(|p| p.1))
        .filter(|t| t.max_edge() <= n)
        .collect();
    assert!(special.len() >= 4);
    for t in special {
        assert!(all.contains(&t.edges), "{:?} missing from the exhaustive search", t.display_edges());
    }
}

#[test]
fn rational_embedding_is_triangular() {
    for t in search::search_all_tetrahedra(200, true).unwrap() {
        let e = rational_embedding(&t.matrix()).unwrap();
        for (i, p) in e.points.iter().enumerate() {
            assert!(p[i.min(3)..].iter().all(|c| c.is_zero()) || i == 3);
        }
    }
}
