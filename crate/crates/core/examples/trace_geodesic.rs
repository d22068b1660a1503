//! Trace a geodesic from an edge point and print its skips and vertex ratios.
//!
//! Usage: cargo run --example trace_geodesic -- [n] [u] [angle]

use geokgon::surface::{EdgeLocation, PolygonSurface};
use geokgon::tracer::{skip_numbers, trace, vertex_ratios};

fn main() -> geokgon::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(5);
    let u: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.42);
    let angle: f64 = args
        .get(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(std::f64::consts::PI * 3.0 / 10.0);

    let surface = PolygonSurface::with_inradius(n, 1.0)?;
    let path = trace(&surface, EdgeLocation::new(0, u)?, angle, 200)?;
    if let Some(hit) = path.collision() {
        println!("stopped at vertex {} on bounce {}", hit.vertex, hit.bounce);
    }
    println!("closed: {}  segments: {}  length: {:.9}", path.is_closed(), path.segments().len(), path.length());
    println!("skips:  {:?}", skip_numbers(&path));
    let ratios: Vec<String> = vertex_ratios(&path).iter().map(|v| format!("{v:.6}")).collect();
    println!("ratios: [{}]", ratios.join(", "));
    Ok(())
}
