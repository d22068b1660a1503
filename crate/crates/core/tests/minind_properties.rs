use geokgon::minind::{is_minimizing_arc, max_arc_at, minimizing_index, DEFAULT_K_CAP, DEFAULT_REL_TOL};
use geokgon::surface::{DiskSurface, PolygonSurface};
use geokgon::tracer::{make_disk_geodesic, make_special, GeodesicPath, SpecialKind};
use proptest::prelude::*;

fn named() -> Vec<GeodesicPath> {
    let mut out = Vec::new();
    for n in [3, 4, 5, 6, 8] {
        let s = PolygonSurface::with_inradius(n, 1.0).unwrap();
        for step in 1..=n / 2 {
            out.push(make_special(&s, SpecialKind::MidpointStar(step)).unwrap());
        }
    }
    let d = DiskSurface::unit();
    out.push(make_disk_geodesic(&d, 6, 1, 1).unwrap());
    out.push(make_disk_geodesic(&d, 7, 3, 2).unwrap());
    out
}

#[test]
fn index_is_at_least_the_period() {
    for path in named() {
        let r = minimizing_index(&path, DEFAULT_REL_TOL, DEFAULT_K_CAP).unwrap();
        let k = r.minind.unwrap();
        assert!(k >= r.period, "{:?}: minind {k} below period {}", r.geodesic.skips, r.period);
        assert!(r.verified);
        assert_ne!(r.previous_falsified, Some(false));
        assert!(r.s_max >= r.length / k as f64 - r.tolerance);
    }
}

#[test]
fn vshape_index_meets_its_bound() {
    for n in [3, 5] {
        let path = make_special(&PolygonSurface::with_inradius(n, 1.0).unwrap(), SpecialKind::Vshape).unwrap();
        let r = minimizing_index(&path, DEFAULT_REL_TOL, DEFAULT_K_CAP).unwrap();
        let bound = r.bounds.vshape_bound.unwrap();
        assert!(r.minind.unwrap() as f64 >= bound - 1e-9);
        assert!((r.minind.unwrap() as f64) < bound + 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shorter_arcs_stay_minimizing(which in 0usize..5, t in 0.0f64..1.0, frac in 0.05f64..0.5, shrink in 0.1f64..1.0) {
        let paths = named();
        let path = &paths[which * 3 % paths.len()];
        let len = path.length();
        let tol = 1e-9 * len;
        let s = frac * len;
        if is_minimizing_arc(path, t * len, s, tol).unwrap() {
            prop_assert!(is_minimizing_arc(path, t * len, s * shrink, tol).unwrap());
        }
    }

    #[test]
    fn arcs_inside_one_segment_minimize(which in 0usize..8, t in 0.0f64..1.0, frac in 0.0f64..1.0) {
        let paths = named();
        let path = &paths[which % paths.len()];
        let offsets = path.hit_offsets();
        let i = ((t * path.segments().len() as f64) as usize).min(path.segments().len() - 1);
        let seg = path.segment_length(i);
        let start = offsets[i] + frac * 0.5 * seg;
        let s = 0.5 * seg;
        prop_assert!(is_minimizing_arc(path, start, s, 1e-12 * path.length()).unwrap());
    }

    #[test]
    fn longest_minimizing_arc_is_bounded(which in 0usize..8, t in 0.0f64..1.0) {
        let paths = named();
        let path = &paths[which % paths.len()];
        let len = path.length();
        let m = max_arc_at(path, t * len, 1e-7 * len).unwrap();
        prop_assert!(m > 0.0 && m <= len / 2.0 + 1e-12);
    }
}
