//! Write a few SVG figures into a directory (default: ./figures).

use std::path::PathBuf;

use geokgon::surface::{DiskSurface, PolygonSurface};
use geokgon::svg::{render_svg, FigureKind, Panel, Payload, RenderSpec};
use geokgon::tracer::{make_disk_geodesic, make_special, SpecialKind};

fn panel(n: usize, kind: SpecialKind) -> geokgon::Result<Panel> {
    let s = PolygonSurface::with_inradius(n, 1.0)?;
    Ok(Panel {
        paths: vec![make_special(&s, kind)?],
        surface: s.into(),
        label: Some(format!("X_{n}")),
    })
}

fn main() -> geokgon::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;

    let write = |name: &str, kind: FigureKind, payload: Payload, incircle: bool| -> geokgon::Result<()> {
        let mut spec = RenderSpec::new(kind);
        spec.output = Some(dir.join(name));
        spec.style.show_incircle = incircle;
        render_svg(&spec, &payload)?;
        println!("wrote {}", dir.join(name).display());
        Ok(())
    };

    let over_under = vec![panel(3, SpecialKind::OverUnder)?, panel(5, SpecialKind::OverUnder)?];
    write("over_under.svg", FigureKind::Polygon, Payload::Panels(over_under), false)?;

    let vshapes = [3, 7, 11, 15]
        .into_iter()
        .map(|n| panel(n, SpecialKind::Vshape))
        .collect::<geokgon::Result<Vec<_>>>()?;
    write("vshapes.svg", FigureKind::Polygon, Payload::Panels(vshapes), true)?;

    let disk = DiskSurface::unit();
    let stars = Panel {
        paths: vec![make_disk_geodesic(&disk, 5, 2, 2)?],
        surface: disk.into(),
        label: Some("pentagram".into()),
    };
    write("disk_star.svg", FigureKind::Disk, Payload::Panels(vec![stars]), false)?;

    write("development.svg", FigureKind::Development, Payload::Development(panel(5, SpecialKind::Vshape)?), false)?;
    Ok(())
}
