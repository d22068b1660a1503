#![allow(dead_code)]

use geokgon::geom::Vec2;
use geokgon::metric::point_on;
use geokgon::surface::{EdgeLocation, Face, PolygonSurface, Surface, SurfacePoint};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the doubled polygon; one in ten lands on the boundary.
pub fn random_point(rng: &mut impl Rng, s: &PolygonSurface) -> SurfacePoint {
    if rng.gen_bool(0.1) {
        let e = rng.gen_range(0..s.sides());
        let u = rng.gen_range(0.02..0.98);
        return s.edge_point(EdgeLocation::new(e, u).unwrap()).unwrap();
    }
    let r = s.circumradius();
    loop {
        let p = Vec2::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
        if s.contains(p, -1e-6 * r) {
            let face = if rng.gen_bool(0.5) { Face::Front } else { Face::Back };
            return point_on(&Surface::Polygon(s.clone()), face, p);
        }
    }
}

/// Writes past the test harness capture so summary lines show up in plain
/// `cargo test` output.
pub fn report(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}
