//! V-shape index bounds on odd-gons, growing without bound, next to the
//! doubled-disk limit.

use geokgon::asymptotics::{divergence_experiment, DivergenceRow};

fn main() -> geokgon::Result<()> {
    let n: Vec<usize> = (3..=31).step_by(2).chain([51, 101, 201]).collect();
    println!("{}", DivergenceRow::csv_header());
    for row in divergence_experiment(&n, 7)? {
        println!("{}", row.csv_row());
    }
    Ok(())
}
