//! Exact distances by unfolding, checked against the mesh oracle, and
//! surface diameters.

use geokgon::geom::Vec2;
use geokgon::metric::{diameter, distance, mesh_oracle, point_on};
use geokgon::surface::{DiskSurface, Face, PolygonSurface, Surface};

fn main() -> geokgon::Result<()> {
    let s: Surface = PolygonSurface::with_inradius(7, 1.0)?.into();
    let a = point_on(&s, Face::Front, Vec2::new(0.2, -0.3));
    let b = point_on(&s, Face::Back, Vec2::new(-0.5, 0.4));
    let d = distance(&s, a, b)?;
    let mesh = mesh_oracle(&s, 60, a, b)?;
    println!(
        "X_7: d = {:.9} (depth {}, optimal {}), mesh oracle {:.6}",
        d.distance, d.depth, d.proven_optimal, mesh
    );
    for p in &d.witness {
        println!("  {:?} ({:.6}, {:.6})", p.face, p.position.x, p.position.y);
    }

    for n in [3, 4, 5] {
        let s: Surface = PolygonSurface::with_inradius(n, 1.0)?.into();
        println!("diam X_{n} = {:.6}", diameter(&s, 64)?.diam);
    }
    let disk: Surface = DiskSurface::unit().into();
    println!("diam disk = {:.6}", diameter(&disk, 64)?.diam);
    Ok(())
}
