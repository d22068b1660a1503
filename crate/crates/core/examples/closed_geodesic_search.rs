//! Search for closed geodesics by midpoint returns, then tabulate the
//! shortest ones against diameter and area.

use geokgon::spectra::{find_closed_geodesics, ratio_table, shortest_closed_geodesic, RatioRow, SearchConfig};
use geokgon::surface::PolygonSurface;

fn main() -> geokgon::Result<()> {
    let config = SearchConfig::default();
    for n in [3, 4, 5] {
        let surface = PolygonSurface::with_inradius(n, 1.0)?;
        let entries = find_closed_geodesics(&surface, &config)?;
        println!("X_{n}: {} closed geodesics up to length {}", entries.len(), config.length_bound);
        for e in entries.iter().take(6) {
            println!("  L = {:.6}  period {}  skips {:?}  orbit {}", e.length, e.period, e.skips, e.orbit_size);
        }
        let best = shortest_closed_geodesic(&surface, &config)?;
        println!("  shortest: {:?}", best.skips);
    }

    println!("{}", RatioRow::csv_header());
    for row in ratio_table(&[3, 5, 7, 9], 64)? {
        println!("{}", row.csv_row());
    }
    Ok(())
}
