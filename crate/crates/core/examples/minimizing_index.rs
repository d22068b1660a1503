//! Minimizing indices of named geodesics, with the analytic bounds.

use geokgon::minind::{minimizing_index, MinindReport, DEFAULT_K_CAP, DEFAULT_REL_TOL};
use geokgon::surface::{DiskSurface, PolygonSurface};
use geokgon::tracer::{make_disk_geodesic, make_special, SpecialKind};

fn main() -> geokgon::Result<()> {
    let mut paths = Vec::new();
    for (n, kind) in [
        (3, SpecialKind::OverUnder),
        (4, SpecialKind::HalfGeodesic(0)),
        (9, SpecialKind::MidpointStar(3)),
        (3, SpecialKind::Vshape),
        (5, SpecialKind::Vshape),
    ] {
        paths.push(make_special(&PolygonSurface::with_inradius(n, 1.0)?, kind)?);
    }
    let disk = DiskSurface::unit();
    paths.push(make_disk_geodesic(&disk, 4, 1, 1)?);
    paths.push(make_disk_geodesic(&disk, 5, 2, 2)?);

    println!("{}", MinindReport::csv_header());
    for path in &paths {
        let report = minimizing_index(path, DEFAULT_REL_TOL, DEFAULT_K_CAP)?;
        println!("{}", report.csv_row());
    }
    Ok(())
}
