//! Drive the command-line front end in-process.

fn main() {
    let runs: [&[&str]; 3] = [
        &["geokgon", "minind", "--surface", "ngon:3:inradius=1", "--geodesic", "overunder", "--csv"],
        &["geokgon", "ratios", "--n", "3,5", "--csv"],
        &["geokgon", "limits", "--csv"],
    ];
    for argv in runs {
        let code = geokgon::cli::run(argv.iter().copied());
        eprintln!("exit {code}");
    }
}
