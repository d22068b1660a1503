//! The named closed geodesics and their midpoint canonical forms.

use geokgon::surface::{EdgeLocation, PolygonSurface};
use geokgon::tracer::{canonicalize_to_midpoint, make_special, skip_numbers, trace, SpecialKind};

fn main() -> geokgon::Result<()> {
    let cases = [
        (3, SpecialKind::OverUnder),
        (5, SpecialKind::OverUnder),
        (5, SpecialKind::Vshape),
        (9, SpecialKind::MidpointStar(3)),
        (6, SpecialKind::HalfGeodesic(1)),
    ];
    for (n, kind) in cases {
        let surface = PolygonSurface::with_inradius(n, 1.0)?;
        let path = make_special(&surface, kind)?;
        println!(
            "X_{n} {kind:?}: period {:?}, length {:.6}, skips {:?}",
            path.period(),
            path.length(),
            skip_numbers(&path)
        );
    }

    // a translate of the pentagon V-shape, moved back to a midpoint start
    let surface = PolygonSurface::with_inradius(5, 1.0)?;
    let shifted = trace(&surface, EdgeLocation::new(0, 0.42)?, std::f64::consts::PI * 0.3, 20)?;
    let canon = canonicalize_to_midpoint(&shifted)?;
    println!(
        "shifted V-shape {:?} -> {:?}, lengths {:.9} / {:.9}",
        skip_numbers(&shifted),
        skip_numbers(&canon),
        shifted.length(),
        canon.length()
    );
    Ok(())
}
