mod common;

use geokgon::metric::{distance, distance_polygon, point_on};
use geokgon::surface::{Face, PolygonSurface, Surface};
use proptest::prelude::*;

use common::{random_point, rng};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn same_face_distance_is_euclidean(n in 3usize..10, seed in any::<u64>()) {
        let s = PolygonSurface::with_inradius(n, 1.0).unwrap();
        let surface = Surface::Polygon(s.clone());
        let mut r = rng(seed);
        let a = random_point(&mut r, &s);
        let b = random_point(&mut r, &s);
        let b_same = point_on(&surface, a.face, b.position);
        let d = distance(&surface, a, b_same).unwrap();
        prop_assert!((d.distance - a.position.distance(b.position)).abs() < 1e-10);
        // folding onto one face never lengthens a path
        let d2 = distance(&surface, a, b).unwrap();
        prop_assert!(d2.distance >= a.position.distance(b.position) - 1e-10);
    }

    #[test]
    fn witness_realizes_distance(n in 3usize..10, seed in any::<u64>()) {
        let s = PolygonSurface::with_inradius(n, 1.0).unwrap();
        let mut r = rng(seed);
        let a = random_point(&mut r, &s);
        let b = random_point(&mut r, &s);
        let d = distance_polygon(&s, a, b, 2 * n).unwrap();
        prop_assert!(d.proven_optimal);
        prop_assert!((d.witness_length() - d.distance).abs() < 1e-9);
        prop_assert!(d.depth <= 1, "depth {}", d.depth);
        prop_assert_eq!(d.chain.edges.len(), d.depth);
    }

    #[test]
    fn symmetric_with_zero_diagonal(n in 3usize..10, seed in any::<u64>()) {
        let s = PolygonSurface::with_inradius(n, 1.0).unwrap();
        let surface = Surface::Polygon(s.clone());
        let mut r = rng(seed);
        let a = random_point(&mut r, &s);
        let b = random_point(&mut r, &s);
        let ab = distance(&surface, a, b).unwrap().distance;
        let ba = distance(&surface, b, a).unwrap().distance;
        prop_assert!((ab - ba).abs() < 1e-10);
        prop_assert!(distance(&surface, a, a).unwrap().distance < 1e-12);
    }
}

#[test]
fn opposite_faces_through_center() {
    let s = PolygonSurface::with_inradius(4, 1.0).unwrap();
    let surface = Surface::Polygon(s);
    let a = point_on(&surface, Face::Front, geokgon::geom::Vec2::ZERO);
    let b = point_on(&surface, Face::Back, geokgon::geom::Vec2::ZERO);
    let d = distance(&surface, a, b).unwrap();
    assert!((d.distance - 2.0).abs() < 1e-12);
}
