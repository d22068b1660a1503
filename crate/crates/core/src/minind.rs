//! Minimizing index of closed geodesics.
//!
//! A closed geodesic of length `L` is a 1/k geodesic when every arc of length
//! `L/k` realizes the distance between its endpoints. The minimizing index is
//! the smallest such `k ≥ 2`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::distance;
use crate::spectra::{find_closed_geodesics, SearchConfig};
use crate::surface::PolygonSurface;
use crate::tracer::{make_special, skip_numbers, vertex_ratios, GeodesicPath, PathRecord, SpecialKind};

/// Default arc tolerance, relative to the geodesic length.
pub const DEFAULT_REL_TOL: f64 = 1e-7;
/// Default cap on the reported index.
pub const DEFAULT_K_CAP: usize = 1000;

/// True when the arc `[t0, t0 + s]` realizes the distance between its
/// endpoints, up to the absolute tolerance `tol`.
///
/// A result that touches the via-vertex bound is reported as
/// [`Error::VertexGrazing`] only when it sits inside the tolerance band and
/// therefore decides the answer.
pub fn is_minimizing_arc(path: &GeodesicPath, t0: f64, s: f64, tol: f64) -> Result<bool> {
    let len = path.length();
    if !(s > 0.0 && s <= len / 2.0 + tol) {
        return Err(Error::InvalidArgument(format!(
            "arc length {s} must lie in (0, L/2] with L = {len}"
        )));
    }
    let a = path.point_at(t0);
    let b = path.point_at(t0 + s);
    let r = distance(path.surface(), a, b)?;
    if r.vertex_grazing && (r.distance - s).abs() <= tol {
        return Err(Error::VertexGrazing);
    }
    Ok(r.distance >= s - tol)
}

/// Arclength from `t` to the next hit point.
fn to_next_hit(path: &GeodesicPath, t: f64) -> f64 {
    let len = path.length();
    let t = t.rem_euclid(len);
    let offsets = path.hit_offsets();
    let i = offsets.partition_point(|&c| c <= t);
    let rem = offsets.get(i).map_or(0.0, |c| c - t);
    if rem > 0.0 {
        rem
    } else {
        path.segment_length(0)
    }
}

/// `m(t)`: the longest minimizing arc starting at `t`, capped at `L/2`,
/// found by bisection to `tol / 4`.
pub fn max_arc_at(path: &GeodesicPath, t: f64, tol: f64) -> Result<f64> {
    let half = path.length() / 2.0;
    if is_minimizing_arc(path, t, half, tol)? {
        return Ok(half);
    }
    let (mut lo, mut hi) = (to_next_hit(path, t).min(half), half);
    while hi - lo > tol / 4.0 {
        let mid = 0.5 * (lo + hi);
        if is_minimizing_arc(path, t, mid, tol)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcScan {
    pub s_max: f64,
    /// Arclength where the minimum of `m(t)` was found.
    pub argmin: f64,
    /// Every `(t, m(t))` evaluated, in sample order.
    pub samples: Vec<(f64, f64)>,
}

/// Sample positions: `uniform` evenly spaced points, every hit, and eight
/// points within `L/1000` of each hit.
pub fn sample_offsets(path: &GeodesicPath, uniform: usize) -> Vec<f64> {
    let len = path.length();
    let mut ts: Vec<f64> = (0..uniform).map(|i| len * i as f64 / uniform as f64).collect();
    let hits = &path.hit_offsets()[..path.segments().len()];
    let eps = len / 1000.0;
    for &h in hits {
        ts.push(h);
        for j in 1..=4 {
            let d = eps * j as f64 / 4.0;
            ts.push((h - d).rem_euclid(len));
            ts.push((h + d).rem_euclid(len));
        }
    }
    ts
}

fn golden_min(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Largest `s` such that every sampled arc of length `s` minimizes.
///
/// The three smallest samples are refined by golden-section search between
/// their neighbouring sample positions.
pub fn max_uniform_arc(path: &GeodesicPath, tol: f64, samples: usize) -> Result<ArcScan> {
    let period = path
        .period()
        .ok_or_else(|| Error::InvalidArgument("minimizing arcs need a closed path".into()))?;
    if samples < 8 * period {
        return Err(Error::InvalidArgument(format!(
            "need at least {} samples, got {samples}",
            8 * period
        )));
    }
    let len = path.length();
    let ts = sample_offsets(path, samples);
    let values = ts
        .par_iter()
        .map(|&t| max_arc_at(path, t, tol).map(|m| (t, m)))
        .collect::<Result<Vec<_>>>()?;

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].1.total_cmp(&values[j].1).then(i.cmp(&j)));
    let mut sorted_ts: Vec<f64> = ts.clone();
    sorted_ts.sort_by(f64::total_cmp);
    sorted_ts.dedup();
    let bracket = |t: f64| {
        let i = sorted_ts.partition_point(|&x| x < t);
        let lo = if i == 0 { sorted_ts[sorted_ts.len() - 1] - len } else { sorted_ts[i - 1] };
        let hi = sorted_ts.get(i + 1).copied().unwrap_or(sorted_ts[0] + len);
        (lo, hi)
    };
    let refined = order
        .iter()
        .take(3)
        .map(|&i| values[i].0)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&t| {
            let (lo, hi) = bracket(t);
            golden_min(|x| max_arc_at(path, x, tol), lo, hi, tol)
        })
        .collect::<Result<Vec<_>>>()?;

    let (mut argmin, mut s_max) = values[order[0]];
    for (t, m) in refined {
        if m < s_max {
            s_max = m;
            argmin = t.rem_euclid(len);
        }
    }
    Ok(ArcScan {
        s_max,
        argmin,
        samples: values,
    })
}

/// Lower bounds on the minimizing index that need no distance queries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticBounds {
    /// The period: no closed geodesic beats its segment count.
    pub period_bound: usize,
    /// Closed form for V-shaped geodesics on odd-gons.
    pub vshape_bound: Option<f64>,
    /// Bound from the sharpest edge hit.
    pub converge_bound: Option<f64>,
}

/// V-shape bound on `X_p` for odd `p`:
/// `2h·sin(π/p) / (1 − h·sin(π/p))` with `h` the height at unit side,
/// which equals `2(1 + cos(π/p)) / (1 − cos(π/p))`.
pub fn vshape_bound(p: usize) -> f64 {
    let x = PI / p as f64;
    let h = (1.0 + x.cos()) / (2.0 * x.sin());
    2.0 * h * x.sin() / (1.0 - h * x.sin())
}

/// True for period-4 paths with skips `(k, k+1, k+1, k)` on `X_{2k+1}`.
pub fn is_vshape(path: &GeodesicPath) -> bool {
    let Some(p) = path.polygon() else {
        return false;
    };
    let n = p.sides();
    let k = n / 2;
    n % 2 == 1 && path.period() == Some(4) && {
        let mut s = skip_numbers(path);
        // accept any rotation
        (0..4).any(|_| {
            s.rotate_left(1);
            s == [k, k + 1, k + 1, k]
        })
    }
}

/// Bounds available for `path`: the period always, the V-shape bound for
/// V-shapes, and for polygon paths the sharpest-hit bound
/// `max L / (2·x·csc θ)` with `x = 2·min(v, 1 − v)·apothem` and `θ` the
/// angle between the path and the hit edge.
pub fn analytic_bounds(path: &GeodesicPath) -> AnalyticBounds {
    let period_bound = path.segments().len();
    let vshape = is_vshape(path).then(|| vshape_bound(path.polygon().map_or(3, |p| p.sides())));
    let converge = path.polygon().filter(|_| path.is_closed()).map(|surface| {
        let len = path.length();
        let apothem = surface.apothem();
        let ratios = vertex_ratios(path);
        (0..path.segments().len())
            .map(|i| {
                let (a, b) = path.segment_endpoints(i);
                let edge = path.edge_sequence()[i];
                let dir = (b - a).normalized();
                let sin_theta = surface.edge_direction(edge).cross(dir).abs();
                let x = 2.0 * ratios[i].min(1.0 - ratios[i]) * apothem;
                len * sin_theta / (2.0 * x)
            })
            .fold(0.0, f64::max)
    });
    AnalyticBounds {
        period_bound,
        vshape_bound: vshape,
        converge_bound: converge,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinindReport {
    pub geodesic: PathRecord,
    pub period: usize,
    pub length: f64,
    pub s_max: f64,
    pub argmin: f64,
    /// `None` when no `k` up to the cap works.
    pub minind: Option<usize>,
    pub bounds: AnalyticBounds,
    /// Absolute arc tolerance used.
    pub tolerance: f64,
    /// Arcs of length `L/minind` minimized at every sample.
    pub verified: bool,
    /// Result of testing an arc of length `L/(minind − 1)` at `argmin`;
    /// `Some(true)` means it failed to minimize, as it should.
    pub previous_falsified: Option<bool>,
    pub samples: usize,
}

impl MinindReport {
    pub fn csv_header() -> &'static str {
        "surface,period,length,s_max,minind,period_bound,vshape_bound,converge_bound"
    }

    pub fn csv_row(&self) -> String {
        let surface = match &self.geodesic.surface {
            crate::tracer::SurfaceRecord::Ngon { n, side } => format!("ngon:{n}:side={side}"),
            crate::tracer::SurfaceRecord::Disk { radius } => format!("disk:{radius}"),
        };
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.9}")).unwrap_or_default();
        format!(
            "{surface},{},{:.12},{:.12},{},{},{},{}",
            self.period,
            self.length,
            self.s_max,
            self.minind.map(|k| k.to_string()).unwrap_or_else(|| "inf".into()),
            self.bounds.period_bound,
            opt(self.bounds.vshape_bound),
            opt(self.bounds.converge_bound),
        )
    }
}

/// Minimizing index with tolerance `rel_tol·L`.
pub fn minimizing_index(path: &GeodesicPath, rel_tol: f64, k_cap: usize) -> Result<MinindReport> {
    path.check()?;
    let period = path
        .period()
        .ok_or_else(|| Error::InvalidArgument("the minimizing index needs a closed path".into()))?;
    if k_cap < period {
        return Err(Error::InvalidArgument(format!("k_cap {k_cap} is below the period {period}")));
    }
    let len = path.length();
    let tol = rel_tol * len;
    let samples = 16 * period;
    let scan = max_uniform_arc(path, tol, samples)?;
    let sample_ts = sample_offsets(path, samples);

    let mut k = ((len / (scan.s_max + tol)).ceil() as usize).max(2);
    while k > 2 && len / (k - 1) as f64 <= scan.s_max + tol {
        k -= 1;
    }
    let mut minind = None;
    let mut verified = false;
    while k <= k_cap {
        let arc = len / k as f64;
        let ok = sample_ts
            .par_iter()
            .chain([scan.argmin].par_iter())
            .map(|&t| is_minimizing_arc(path, t, arc, tol))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        if ok {
            minind = Some(k);
            verified = true;
            break;
        }
        k += 1;
    }
    let previous_falsified = match minind {
        Some(k) if k > 2 => Some(!is_minimizing_arc(path, scan.argmin, len / (k - 1) as f64, tol)?),
        _ => None,
    };
    Ok(MinindReport {
        geodesic: path.to_record(),
        period,
        length: len,
        s_max: scan.s_max,
        argmin: scan.argmin,
        minind,
        bounds: analytic_bounds(path),
        tolerance: tol,
        verified,
        previous_falsified,
        samples: scan.samples.len(),
    })
}

/// Search budget for [`minind_of_surface`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Longest period considered.
    pub max_period: usize,
    /// Longest length considered, on the inradius-1 surface.
    pub max_length: f64,
    /// Angle grid for the closed-geodesic search.
    pub grid: usize,
}

impl SearchBudget {
    pub fn new(max_period: usize, max_length: f64) -> Self {
        SearchBudget {
            max_period,
            max_length,
            grid: 10_000,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceMinind {
    pub n: usize,
    /// Upper estimate: the least index among the candidates examined.
    pub minind: Option<usize>,
    pub witness: Option<PathRecord>,
    pub candidates: usize,
    pub budget: SearchBudget,
}

/// Least minimizing index over the closed geodesics of `X_n` (inradius 1)
/// found within `budget`, together with the midpoint stars, the half
/// geodesics and the over-under curve.
///
/// Candidates whose period already exceeds the best index are skipped, since
/// the period bounds the index from below.
pub fn minind_of_surface(n: usize, budget: SearchBudget) -> Result<SurfaceMinind> {
    let surface = PolygonSurface::with_inradius(n, 1.0)?;
    let mut candidates: Vec<GeodesicPath> = Vec::new();
    for step in 1..=n / 2 {
        if let Ok(p) = make_special(&surface, SpecialKind::MidpointStar(step)) {
            candidates.push(p);
        }
    }
    if n % 2 == 1 {
        candidates.extend(make_special(&surface, SpecialKind::Vshape).ok());
    }
    let config = SearchConfig {
        grid: budget.grid,
        max_bounces: budget.max_period,
        length_bound: budget.max_length,
        ..SearchConfig::default()
    };
    candidates.extend(find_closed_geodesics(&surface, &config)?.into_iter().map(|e| e.path));
    candidates.retain(|p| {
        p.period().is_some_and(|k| k <= budget.max_period) && p.length() <= budget.max_length + 1e-9
    });
    candidates.sort_by(|a, b| {
        a.period()
            .cmp(&b.period())
            .then(a.length().total_cmp(&b.length()))
    });
    if candidates.is_empty() {
        return Err(Error::BudgetExhausted(format!("no closed geodesic on X_{n} within budget")));
    }
    let count = candidates.len();
    let mut best: Option<(usize, GeodesicPath)> = None;
    for path in candidates {
        let period = path.period().unwrap_or(usize::MAX);
        if best.as_ref().is_some_and(|(k, _)| period >= *k) {
            continue;
        }
        let report = minimizing_index(&path, DEFAULT_REL_TOL, DEFAULT_K_CAP.max(period))?;
        if let Some(k) = report.minind {
            if best.as_ref().is_none_or(|(b, _)| k < *b) {
                best = Some((k, path));
            }
        }
    }
    Ok(SurfaceMinind {
        n,
        minind: best.as_ref().map(|(k, _)| *k),
        witness: best.map(|(_, p)| p.to_record()),
        candidates: count,
        budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::DiskSurface;
    use crate::tracer::make_disk_geodesic;
    use approx::assert_relative_eq;

    #[test]
    fn vshape_bound_anchor_and_growth() {
        assert_relative_eq!(vshape_bound(3), 6.0, epsilon = 1e-12);
        let mut prev = 0.0;
        for p in (3..=201).step_by(2) {
            let b = vshape_bound(p);
            let x = PI / p as f64;
            assert_relative_eq!(b, 2.0 * (1.0 + x.cos()) / (1.0 - x.cos()), max_relative = 1e-9);
            assert!(b > prev);
            prev = b;
        }
    }

    #[test]
    fn converge_bound_matches_vshape_bound() {
        for n in [3, 5, 7, 9] {
            let s = PolygonSurface::with_inradius(n, 1.0).unwrap();
            let v = make_special(&s, SpecialKind::Vshape).unwrap();
            let b = analytic_bounds(&v);
            assert_eq!(b.period_bound, 4);
            assert_relative_eq!(b.converge_bound.unwrap(), b.vshape_bound.unwrap(), max_relative = 1e-9);
        }
    }

    #[test]
    fn chord_arcs_minimize() {
        let s = PolygonSurface::with_inradius(5, 1.0).unwrap();
        let v = make_special(&s, SpecialKind::Vshape).unwrap();
        let seg = v.segment_length(0);
        assert!(is_minimizing_arc(&v, 0.1 * seg, 0.5 * seg, 1e-9).unwrap());
        assert!(is_minimizing_arc(&v, 0.0, v.length(), 1e-9).is_err());
    }

    #[test]
    fn disk_square_side_minimizes() {
        let sq = make_disk_geodesic(&DiskSurface::unit(), 4, 1, 1).unwrap();
        assert!(is_minimizing_arc(&sq, 0.0, 2f64.sqrt(), 1e-9).unwrap());
    }
}
