use std::fs;
use std::path::Path;

use geokgon::cli::run;
use geokgon::tracer::GeodesicPath;
use serde_json::Value;

fn run_to(out: &Path, args: &[&str]) -> i32 {
    let mut argv = vec!["geokgon"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--out", out.to_str().unwrap()]);
    run(argv)
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn minind_of_over_under_is_six() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let code = run_to(&out, &["minind", "--surface", "ngon:3:inradius=1", "--geodesic", "overunder", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["minind"], 6);
}

#[test]
fn ratio_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    assert_eq!(run_to(&out, &["ratios", "--n", "3,5", "--csv"]), 0);
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    let ratio = |i: usize| rows[i][4].parse::<f64>().unwrap();
    assert!((ratio(0) - 3f64.sqrt()).abs() < 1e-6);
    assert!((ratio(1) - 3.1).abs() < 0.05);
    assert_eq!(rows[2][0], "disk");
}

#[test]
fn half_geodesic_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let code = run_to(
        &out,
        &["trace", "--surface", "ngon:4:side=2", "--start", "0:0.5", "--angle", "1.5707963", "--bounces", "2"],
    );
    assert_eq!(code, 0);
    assert_eq!(json(&out)["skips"], serde_json::json!([2, 2]));
}

#[test]
fn trace_round_trips_through_minind() {
    let dir = tempfile::tempdir().unwrap();
    let traced = dir.path().join("trace.json");
    let angle = format!("{}", std::f64::consts::PI * 0.3);
    let code = run_to(
        &traced,
        &["trace", "--surface", "ngon:5:inradius=1", "--start", "0:0.45", "--angle", &angle, "--json"],
    );
    assert_eq!(code, 0);
    let path = GeodesicPath::from_json(&fs::read_to_string(&traced).unwrap()).unwrap();
    assert!(path.is_closed());

    let report = dir.path().join("report.json");
    let at = format!("@{}", traced.display());
    assert_eq!(run_to(&report, &["minind", "--geodesic", &at, "--json"]), 0);
    let r = json(&report);
    assert_eq!(r["geodesic"]["skips"], json(&traced)["skips"]);
    // hits off the midpoint sit nearer the vertices than the V-shape's 19 allows
    assert!(r["minind"].as_u64().unwrap() > 19);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x");
    assert_eq!(run(["geokgon", "frobnicate"]), 1);
    assert_eq!(run_to(&out, &["geodesic", "--surface", "ngon:2:side=1", "--geodesic", "overunder"]), 1);
    assert_eq!(run_to(&out, &["geodesic", "--surface", "ngon:4:side=1", "--geodesic", "vshape"]), 1);
    assert_eq!(run_to(&out, &["distance", "--a", "front:9,9", "--b", "front:0,0"]), 1);
    // from the bottom midpoint of the unit square into the top-right corner
    let angle = format!("{}", 2f64.atan());
    let corner = dir.path().join("corner.json");
    assert_eq!(
        run_to(&corner, &["trace", "--surface", "ngon:4:side=1", "--start", "0:0.5", "--angle", &angle]),
        2
    );
    assert!(json(&corner)["segments"].as_array().is_some());
    let at = format!("@{}", corner.display());
    assert_eq!(run_to(&out, &["minind", "--surface", "ngon:4:side=1", "--geodesic", &at]), 2);
    assert_eq!(run(["geokgon", "--help"]), 0);
}

#[test]
fn tables_and_limits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l.csv");
    assert_eq!(run_to(&out, &["limits", "--csv"]), 0);
    let text = fs::read_to_string(&out).unwrap();
    let v: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(v, ["1/2", "0", "1/2", "1"]);

    let out = dir.path().join("d.csv");
    assert_eq!(run_to(&out, &["diverge", "--n", "3,5,11", "--measure-upto", "5", "--csv"]), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("3,6.000000000,6.000000000"));
    assert!(text.lines().last().unwrap().starts_with("disk,"));

    let out = dir.path().join("s.json");
    assert_eq!(run_to(&out, &["shortest", "--surface", "ngon:5:inradius=1", "--json"]), 0);
    assert_eq!(json(&out)[0]["skips"], serde_json::json!([2, 3, 3, 2]));

    let out = dir.path().join("d.json");
    assert_eq!(
        run_to(&out, &["distance", "--surface", "disk:1", "--a", "arc:0", "--b", "front:0,0.5"]),
        0
    );
    assert!((json(&out)["distance"].as_f64().unwrap() - 1.25f64.sqrt()).abs() < 1e-9);
}

#[test]
fn figures_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let args = ["figure", "--kind", "polygon", "--n", "3,7,11,15", "--geodesic", "vshape", "--incircle"];
    assert_eq!(run_to(&a, &args), 0);
    assert_eq!(run_to(&b, &args), 0);
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("stroke-dasharray"));

    let c = dir.path().join("c.svg");
    assert_eq!(run_to(&c, &["figure", "--surface", "ngon:5:side=1"]), 0);
    let outline = fs::read_to_string(&c).unwrap();
    assert!(!outline.contains("<line"));

    for kind in ["development", "convergence"] {
        let p = dir.path().join(format!("{kind}.svg"));
        let extra: &[&str] = if kind == "development" { &["--geodesic", "vshape", "--n", "5"] } else { &[] };
        let mut args = vec!["figure", "--kind", kind];
        args.extend_from_slice(extra);
        assert_eq!(run_to(&p, &args), 0, "{kind}");
    }
    let disk = dir.path().join("disk.svg");
    assert_eq!(
        run_to(&disk, &["figure", "--kind", "disk", "--surface", "disk:1", "--geodesic", "disk:5:2:2"]),
        0
    );
}
