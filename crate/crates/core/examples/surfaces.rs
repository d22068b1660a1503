//! Basic measurements of doubled polygons and the doubled disk.

use geokgon::surface::{DiskSurface, PolygonSurface, Surface};

fn main() -> geokgon::Result<()> {
    for n in [3, 4, 5, 6, 9] {
        let s = PolygonSurface::with_inradius(n, 1.0)?;
        let m = s.metrics();
        println!(
            "X_{n}: side {:.6}  circumradius {:.6}  doubled area {:.6}  interior angle {:.4}",
            s.side_length(),
            m.circumradius,
            m.doubled_area,
            m.interior_angle
        );
    }
    let disk: Surface = DiskSurface::unit().into();
    println!("doubled disk: doubled area {:.6}", disk.metrics().doubled_area);
    Ok(())
}
