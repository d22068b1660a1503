//! Development angles, the vertex-ratio recurrence, and exact limits along
//! the V-shape family.

use std::f64::consts::PI;

use geokgon::asymptotics::{
    convergence_of_skips, development_angle, format_ratio, iterate_vertex_ratios, vertex_ratio_limits, SkipFamily,
};

fn main() -> geokgon::Result<()> {
    let family = SkipFamily::vshape();
    println!("{:>7} {:>14} {:>14} {:>12}", "p", "p|θ-π/2|", "p·v1", "v3");
    for p in [5, 11, 101, 1009, 10007] {
        let skips = family.instantiate(p).expect("odd p");
        let signed: Vec<i64> = skips.iter().map(|&s| s as i64).collect();
        let theta = development_angle(p, &signed)?;
        let v = iterate_vertex_ratios(p, 0.5, theta, &skips[..3])?;
        println!(
            "{p:>7} {:>14.9} {:>14.9} {:>12.9}",
            p as f64 * (theta - PI / 2.0).abs(),
            p as f64 * v[1],
            v[3]
        );
    }

    let profile = vertex_ratio_limits(&family)?;
    let limits: Vec<String> = profile.v_star.iter().map(format_ratio).collect();
    println!("limits: ({})  identities: {:?}", limits.join(", "), profile.identities);

    let rows: Vec<(usize, Vec<usize>)> = [3, 7, 11, 15]
        .iter()
        .map(|&p| (p, family.instantiate(p).expect("odd p")))
        .collect();
    let c = convergence_of_skips(&rows)?;
    println!("skip ratios converge: {} (c = {:.6})", c.converges, c.c);
    Ok(())
}
