//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use geokgon::asymptotics::{
    check_limit_identities, development_angle, divergence_experiment, iterate_vertex_ratios, vertex_ratio_limits,
    vertex_ratio_step, SkipFamily, Q,
};
use geokgon::metric::{diameter, distance, distance_polygon, mesh_oracle};
use geokgon::minind::{minimizing_index, sample_offsets, vshape_bound, DEFAULT_K_CAP, DEFAULT_REL_TOL};
use geokgon::spectra::{canonical_skips, find_closed_geodesics, is_unique_shortest, shortest_closed_geodesic, SearchConfig};
use geokgon::surface::{DiskSurface, EdgeLocation, PolygonSurface, Surface};
use geokgon::tracer::{
    make_disk_geodesic, make_special, skip_numbers, trace_open, vertex_ratios, GeodesicPath, SpecialKind,
};
use rand::Rng;
use rayon::prelude::*;

use common::{random_point, report, rng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: geokgon::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn inradius_one(n: usize) -> PolygonSurface {
    PolygonSurface::with_inradius(n, 1.0).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let path = e2s(make_special(&inradius_one(3), SpecialKind::OverUnder))?;
    let report = e2s(minimizing_index(&path, DEFAULT_REL_TOL, DEFAULT_K_CAP))?;
    let elapsed = start.elapsed();
    ensure(report.minind == Some(6), || format!("minind {:?}", report.minind))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("minind 6 in {:.3}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    for n in [4, 6] {
        for i in 0..n {
            let path = e2s(make_special(&inradius_one(n), SpecialKind::HalfGeodesic(i)))?;
            let r = e2s(minimizing_index(&path, DEFAULT_REL_TOL, DEFAULT_K_CAP))?;
            ensure(r.minind == Some(2), || format!("X_{n} half {i}: minind {:?}", r.minind))?;
        }
    }
    Ok("all half geodesics on X_4, X_6 have minind 2".into())
}

/// `L/period` arcs minimize within 1e-9 at every sample; an `L/(period−1)`
/// arc fails at the reported witness.
fn exact_period_index(path: &GeodesicPath, label: &str) -> Result<(), String> {
    let period = path.period().unwrap();
    let r = e2s(minimizing_index(path, DEFAULT_REL_TOL, DEFAULT_K_CAP))?;
    ensure(r.minind == Some(period), || format!("{label}: minind {:?} != period {period}", r.minind))?;
    let len = path.length();
    let arc = len / period as f64;
    let ts = sample_offsets(path, 16 * period);
    let worst = ts
        .par_iter()
        .map(|&t| {
            let d = distance(path.surface(), path.point_at(t), path.point_at(t + arc)).unwrap();
            arc - d.distance
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    ensure(worst <= 1e-9, || format!("{label}: L/period arc short by {worst:e}"))?;
    let long = len / (period - 1) as f64;
    let d = e2s(distance(path.surface(), path.point_at(r.argmin), path.point_at(r.argmin + long)))?;
    ensure(d.distance < long - 1e-9, || {
        format!("{label}: L/(period-1) arc not beaten at t={} ({} vs {long})", r.argmin, d.distance)
    })?;
    Ok(())
}

fn criterion_3() -> Outcome {
    let star = e2s(make_special(&inradius_one(9), SpecialKind::MidpointStar(3)))?;
    ensure(star.period() == Some(6), || format!("star period {:?}", star.period()))?;
    exact_period_index(&star, "X_9 star 3")?;
    let disk = DiskSurface::unit();
    for (m, q, t, period) in [(4, 1, 1, 4), (3, 1, 2, 6), (8, 3, 1, 8), (5, 2, 2, 10)] {
        let path = e2s(make_disk_geodesic(&disk, m, q, t))?;
        ensure(path.period() == Some(period), || format!("disk ({m},{q},{t}) period {:?}", path.period()))?;
        exact_period_index(&path, &format!("disk ({m},{q},{t})"))?;
    }
    Ok("X_9 star and disk periods 4, 6, 8, 10 have minind = period".into())
}

fn criterion_4() -> Outcome {
    let config = SearchConfig {
        max_bounces: 8,
        length_bound: 12.0,
        ..SearchConfig::default()
    };
    let mut detail = Vec::new();
    for (n, ld, ld_tol, la, la_tol) in [(3, 3f64.sqrt(), 1e-6, 1.9, 0.05), (5, 3.1, 0.05, 2.7, 0.05)] {
        let s = inradius_one(n);
        let best = e2s(shortest_closed_geodesic(&s, &config))?;
        let vshape = e2s(make_special(&s, SpecialKind::Vshape))?;
        ensure(best.skips == canonical_skips(&skip_numbers(&vshape)), || {
            format!("X_{n}: shortest has skips {:?}", best.skips)
        })?;
        ensure((best.length - vshape.length()).abs() < 1e-9, || format!("X_{n}: shortest L {}", best.length))?;
        let all = e2s(find_closed_geodesics(&s, &config))?;
        ensure(is_unique_shortest(&all, config.dedup_tol), || format!("X_{n}: shortest not unique"))?;
        let diam = e2s(diameter(&Surface::Polygon(s.clone()), 64))?.diam;
        let area = s.metrics().doubled_area;
        let r_d = best.length / diam;
        let r_a = best.length / area.sqrt();
        ensure((r_d - ld).abs() <= ld_tol, || format!("X_{n}: L/diam {r_d}"))?;
        ensure((r_a - la).abs() <= la_tol, || format!("X_{n}: L/sqrt(area) {r_a}"))?;
        detail.push(format!("X_{n} L/diam {r_d:.6} L/sqrt(A) {r_a:.4}"));
    }
    Ok(detail.join(", "))
}

fn criterion_5() -> Outcome {
    ensure((vshape_bound(3) - 6.0).abs() <= 1e-9, || format!("bound(3) = {}", vshape_bound(3)))?;
    for k in 1..200 {
        let (a, b) = (vshape_bound(2 * k + 1), vshape_bound(2 * k + 3));
        ensure(b > a, || format!("bound not increasing at k={k}: {a} >= {b}"))?;
    }
    let mut measured = Vec::new();
    for n in [3, 5, 7] {
        let path = e2s(make_special(&inradius_one(n), SpecialKind::Vshape))?;
        let r = e2s(minimizing_index(&path, DEFAULT_REL_TOL, DEFAULT_K_CAP))?;
        let m = r.minind.ok_or("no index")?;
        ensure(m as f64 >= vshape_bound(n) - 1e-9, || format!("X_{n}: minind {m} < bound {}", vshape_bound(n)))?;
        measured.push(format!("X_{n} {m} >= {:.3}", vshape_bound(n)));
    }
    Ok(measured.join(", "))
}

fn criterion_6() -> Outcome {
    let slack = 1e-10;
    for n in 3..=9 {
        let s = inradius_one(n);
        let surface = Surface::Polygon(s.clone());
        let mut r = rng(600 + n as u64);
        let triples: Vec<_> = (0..1000)
            .map(|_| (random_point(&mut r, &s), random_point(&mut r, &s), random_point(&mut r, &s)))
            .collect();
        let bad = triples
            .par_iter()
            .map(|&(a, b, c)| -> Result<Option<String>, String> {
                let ab = e2s(distance(&surface, a, b))?.distance;
                let ba = e2s(distance(&surface, b, a))?.distance;
                let bc = e2s(distance(&surface, b, c))?.distance;
                let ac = e2s(distance(&surface, a, c))?.distance;
                if (ab - ba).abs() > slack {
                    return Ok(Some(format!("X_{n}: asymmetric {ab} vs {ba}")));
                }
                if ac > ab + bc + slack {
                    return Ok(Some(format!("X_{n}: triangle {ac} > {ab} + {bc}")));
                }
                Ok(None)
            })
            .collect::<Result<Vec<_>, String>>()?;
        if let Some(msg) = bad.into_iter().flatten().next() {
            return Err(msg);
        }
    }
    let s = inradius_one(7);
    let surface = Surface::Polygon(s.clone());
    let mut r = rng(66);
    let pairs: Vec<_> = (0..100).map(|_| (random_point(&mut r, &s), random_point(&mut r, &s))).collect();
    let resolution = 100;
    let worst = pairs
        .par_iter()
        .map(|&(a, b)| {
            let d = distance_polygon(&s, a, b, 14).unwrap().distance;
            let m = mesh_oracle(&surface, resolution, a, b).unwrap();
            (d - m).abs()
        })
        .reduce(|| 0.0, f64::max);
    ensure(worst <= 3.0 / resolution as f64, || format!("oracle gap {worst}"))?;
    Ok(format!("7000 triples ok, worst oracle gap {worst:.2e}"))
}

fn random_trace(r: &mut impl Rng, bounces: usize) -> (usize, f64, f64, GeodesicPath) {
    loop {
        let n = r.gen_range(3..=12);
        let s = PolygonSurface::with_side(n, 1.0).unwrap();
        let u = r.gen_range(0.01..0.99);
        let theta = r.gen_range(0.05..PI - 0.05);
        let path = trace_open(&s, EdgeLocation::new(0, u).unwrap(), theta, bounces).unwrap();
        if path.collision().is_none() {
            return (n, u, theta, path);
        }
    }
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut worst: f64 = 0.0;
    for trial in 0..500 {
        let (n, u, theta, path) = random_trace(&mut r, 8);
        let skips = skip_numbers(&path);
        let traced = vertex_ratios(&path);
        let rec = iterate_vertex_ratios(n, u, theta, &skips).map_err(|e| format!("trial {trial}: {e}"))?;
        for (a, b) in traced.iter().zip(&rec) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("worst recurrence gap {worst:e}"))?;
    for p in (4..=400).step_by(2) {
        let v = e2s(vertex_ratio_step(p, 0.5, p / 2, PI / 2.0))?;
        ensure(v == 0.5, || format!("fixed point on X_{p} gave {v}"))?;
    }
    Ok(format!("500 trials, worst gap {worst:.1e}; fixed point exact"))
}

/// Random palindromic families that some side count instantiates: `l | n`,
/// deviations congruent modulo `d = n/l`, neighbours at most `d` apart.
fn palindromic_families(r: &mut impl Rng, count: usize) -> Vec<SkipFamily> {
    let mut out = vec![SkipFamily::vshape(), SkipFamily::new(6, 2, vec![0; 6]).unwrap()];
    while out.len() < count {
        let n = 2 * r.gen_range(1..=6);
        let divisors: Vec<i64> = (1..=n as i64).filter(|l| n as i64 % l == 0).collect();
        let l = divisors[r.gen_range(0..divisors.len())];
        let d = n as i64 / l;
        let mut half = vec![0i64];
        for _ in 1..n / 2 {
            let last = *half.last().unwrap();
            half.push(last + r.gen_range(-1..=1));
        }
        let mut m = half.clone();
        m.extend(half.iter().rev());
        let sum: i64 = m.iter().sum();
        // n·c + d·Σm = 0
        if sum % l != 0 {
            continue;
        }
        let c = -sum / l;
        let k: Vec<i64> = m.iter().map(|mi| c + d * mi).collect();
        if let Ok(f) = SkipFamily::new(n, l, k) {
            out.push(f);
        }
    }
    out
}

fn criterion_8() -> Outcome {
    // development angle against traced start angles
    let config = SearchConfig::default();
    let mut worst: f64 = 0.0;
    for n in [3, 4, 5, 6, 7] {
        for e in e2s(find_closed_geodesics(&inradius_one(n), &config))? {
            let skips: Vec<i64> = skip_numbers(&e.path).iter().map(|&s| s as i64).collect();
            let theta = e2s(development_angle(n, &skips))?;
            worst = worst.max((theta - e.path.start_angle()).abs());
        }
    }
    let family = SkipFamily::vshape();
    let mut c_theta = Vec::new();
    let mut c_v = Vec::new();
    for p in [101, 1009, 10007] {
        let path = e2s(make_special(&inradius_one(p), SpecialKind::Vshape))?;
        let skips = family.instantiate(p).ok_or("V-shape family does not instantiate")?;
        ensure(skip_numbers(&path) == skips, || format!("X_{p}: traced skips differ"))?;
        let signed: Vec<i64> = skips.iter().map(|&s| s as i64).collect();
        let theta = e2s(development_angle(p, &signed))?;
        worst = worst.max((theta - path.start_angle()).abs());
        let traced = vertex_ratios(&path);
        let rec = e2s(iterate_vertex_ratios(p, 0.5, theta, &skips[..3]))?;
        for (a, b) in traced.iter().zip(&rec) {
            ensure((a - b).abs() <= 1e-9, || format!("X_{p}: ratio {a} vs {b}"))?;
        }
        c_theta.push(p as f64 * (theta - PI / 2.0).abs());
        c_v.push(p as f64 * traced[1]);
    }
    ensure(worst <= 1e-9, || format!("development angle gap {worst:e}"))?;
    let spread = |c: &[f64]| {
        let (lo, hi) = c.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        (hi - lo) / hi
    };
    ensure(spread(&c_theta) < 1e-6, || format!("p|θ-π/2| not stable: {c_theta:?}"))?;
    ensure(c_v.windows(2).all(|w| w[1] <= w[0]), || format!("p·v1 grows: {c_v:?}"))?;

    let profile = e2s(vertex_ratio_limits(&family))?;
    ensure(
        profile.v_star == vec![Q::new(1, 2), Q::from(0), Q::new(1, 2), Q::from(1)],
        || format!("V-shape limits {:?}", profile.v_star),
    )?;
    let mut r = rng(8);
    let families = palindromic_families(&mut r, 200);
    for f in &families {
        let prof = e2s(vertex_ratio_limits(f))?;
        let checks = check_limit_identities(&prof);
        ensure(checks.three_term, || format!("three-term identity fails for {f:?}"))?;
        ensure(checks.arithmetic_mod1, || format!("mod-1 progression fails for {f:?}"))?;
    }
    Ok(format!(
        "angle gap {worst:.1e}, C = {:.6}, p·v1 {:.2e}..{:.2e}, {} profiles",
        c_theta[0],
        c_v[0],
        c_v[2],
        families.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    for trial in 0..1000 {
        let (n, _, _, path) = random_trace(&mut r, 12);
        let skips = skip_numbers(&path);
        for w in skips.windows(2) {
            ensure((w[0] as i64 - w[1] as i64).abs() <= 1, || {
                format!("trial {trial} on X_{n}: skips {skips:?}")
            })?;
        }
    }
    let families = palindromic_families(&mut r, 200);
    let mut instantiated = 0;
    for f in &families {
        for p in 3..200 {
            if let Some(s) = f.instantiate(p) {
                instantiated += 1;
                for i in 0..s.len() {
                    let j = (i + 1) % s.len();
                    ensure((s[i] as i64 - s[j] as i64).abs() <= 1, || format!("{f:?} at p={p}: {s:?}"))?;
                }
            }
        }
    }
    Ok(format!("1000 traces and {instantiated} family instances"))
}

fn criterion_10() -> Outcome {
    let ns: Vec<usize> = (3..=201).step_by(2).collect();
    let rows = e2s(divergence_experiment(&ns, 7))?;
    let poly: Vec<_> = rows.iter().filter(|r| r.n.is_some()).collect();
    for w in poly.windows(2) {
        ensure(w[1].bound > w[0].bound, || format!("bound not increasing at n={:?}", w[1].n))?;
    }
    for row in &poly {
        let n = row.n.unwrap();
        let c = (PI / n as f64).cos();
        let closed = 2.0 * (1.0 + c) / (1.0 - c);
        ensure((row.bound - closed).abs() <= 1e-9 * closed, || format!("n={n}: bound {} vs {closed}", row.bound))?;
        if n > 23 {
            ensure(row.bound > 100.0, || format!("n={n}: bound {}", row.bound))?;
        }
        if let Some(m) = row.measured {
            ensure(m as f64 >= row.bound - 1e-9, || format!("n={n}: measured {m} below bound"))?;
        }
    }
    let disk = rows.iter().find(|r| r.n.is_none()).ok_or("no disk row")?;
    ensure(disk.measured == Some(4), || format!("disk row minind {:?}", disk.measured))?;
    Ok(format!("{} rows, bound(201) = {:.1}, disk minind 4", rows.len(), poly.last().unwrap().bound))
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("over-under on X_3 has minind 6", criterion_1),
        ("half geodesics have minind 2", criterion_2),
        ("stars and disk polygons have minind = period", criterion_3),
        ("shortest closed geodesic is the V-shape", criterion_4),
        ("V-shape bound", criterion_5),
        ("metric properties and oracle agreement", criterion_6),
        ("vertex-ratio recurrence", criterion_7),
        ("asymptotics", criterion_8),
        ("consecutive skips differ by at most one", criterion_9),
        ("divergence table", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => report(&format!("PASS criterion {:>2}: {name} ({detail}) [{secs:.2}s]", i + 1)),
            Err(why) => {
                report(&format!("FAIL criterion {:>2}: {name}: {why} [{secs:.2}s]", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
