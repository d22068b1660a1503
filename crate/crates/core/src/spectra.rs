//! Closed-geodesic search on doubled polygons and the length ratio tables.
//!
//! Every closed geodesic can be translated to pass through an edge midpoint,
//! and its half-way hit then lands on a midpoint as well. The search shoots
//! from the midpoint of edge 0 over a grid of angles and bisects the angles
//! where some hit crosses an edge midpoint. Each root is re-traced in full
//! and kept only if it closes.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::metric::diameter;
use crate::surface::{EdgeLocation, PolygonSurface};
use crate::tracer::{make_special, skip_numbers, trace, trace_open, GeodesicPath, PathRecord, SpecialKind};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Number of angles sampled in `(0, π/2]`.
    pub grid: usize,
    /// Bounces traced per angle when looking for midpoint returns; accepted
    /// geodesics have period at most twice this.
    pub max_bounces: usize,
    /// Longest accepted length, in model units.
    pub length_bound: f64,
    /// Closure tolerance on the final hit, relative to the side length.
    pub closure_tol: f64,
    /// Entries whose lengths differ by less than this and share a skip
    /// multiset are merged.
    pub dedup_tol: f64,
    /// Angular precision of root bisection.
    pub root_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid: 10_000,
            max_bounces: 8,
            length_bound: 12.0,
            closure_tol: 1e-9,
            dedup_tol: 1e-6,
            root_tol: 1e-12,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = self.grid > 0
            && self.max_bounces > 0
            && self.length_bound > 0.0
            && self.closure_tol > 0.0
            && self.dedup_tol > 0.0
            && self.root_tol > 0.0;
        if !positive {
            return Err(Error::InvalidArgument("search settings must be positive".into()));
        }
        if self.closure_tol > self.dedup_tol {
            return Err(Error::InvalidArgument(
                "closure tolerance must not exceed the dedup tolerance".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    pub path: GeodesicPath,
    pub length: f64,
    pub period: usize,
    /// Canonical rotation of the skip sequence (palindromic when possible).
    pub skips: Vec<usize>,
    /// Number of distinct images under the dihedral symmetries of the polygon.
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub length: f64,
    pub period: usize,
    pub skips: Vec<usize>,
    pub orbit_size: usize,
    pub start_angle: f64,
    pub geodesic: PathRecord,
}

impl SpectrumEntry {
    pub fn to_record(&self) -> SpectrumRecord {
        SpectrumRecord {
            length: self.length,
            period: self.period,
            skips: self.skips.clone(),
            orbit_size: self.orbit_size,
            start_angle: self.path.start_angle(),
            geodesic: self.path.to_record(),
        }
    }
}

/// Search output with the roots that were dropped along the way.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub entries: Vec<SpectrumEntry>,
    /// Angles whose refinement or re-trace failed, with the reason.
    pub discarded: Vec<(f64, String)>,
    pub roots: usize,
}

pub fn is_palindrome(s: &[usize]) -> bool {
    s.iter().eq(s.iter().rev())
}

/// Lexicographically least rotation of the sequence or its reverse,
/// preferring palindromic rotations.
pub fn canonical_skips(skips: &[usize]) -> Vec<usize> {
    let m = skips.len();
    let mut forms = Vec::with_capacity(2 * m);
    let reversed: Vec<usize> = skips.iter().rev().copied().collect();
    for base in [skips, reversed.as_slice()] {
        for r in 0..m {
            let mut v = base.to_vec();
            v.rotate_left(r);
            forms.push(v);
        }
    }
    let palindromes: Vec<&Vec<usize>> = forms.iter().filter(|v| is_palindrome(v)).collect();
    if let Some(p) = palindromes.into_iter().min() {
        return p.clone();
    }
    forms.into_iter().min().unwrap_or_default()
}

/// Number of distinct images of the hit set under the `2n` symmetries.
pub fn dihedral_orbit_size(surface: &PolygonSurface, path: &GeodesicPath) -> usize {
    let n = surface.sides();
    let hits = &path.hits()[..path.segments().len()];
    let tol = 1e-7 * surface.side_length();
    let same_set = |image: &[Vec2]| {
        image
            .iter()
            .all(|p| hits.iter().any(|q| p.distance(*q) <= tol))
    };
    let mut stabilizer = 0;
    for k in 0..n {
        let phi = 2.0 * PI * k as f64 / n as f64;
        let rot: Vec<Vec2> = hits.iter().map(|p| p.rotated(phi)).collect();
        let refl: Vec<Vec2> = rot.iter().map(|p| Vec2::new(-p.x, p.y)).collect();
        stabilizer += usize::from(same_set(&rot)) + usize::from(same_set(&refl));
    }
    2 * n / stabilizer.max(1)
}

fn itinerary(surface: &PolygonSurface, theta: f64, bounces: usize) -> Vec<(usize, f64)> {
    match trace_open(surface, EdgeLocation::midpoint(0), theta, bounces) {
        Ok(path) => {
            let mut hits: Vec<(usize, f64)> = path
                .segments()
                .iter()
                .filter_map(|s| s.end.edge_location().map(|l| (l.edge, l.u)))
                .collect();
            if path.collision().is_some() {
                hits.pop();
            }
            hits
        }
        Err(_) => Vec::new(),
    }
}

enum Root {
    Exact(f64),
    Bracket { bounce: usize, lo: f64, hi: f64 },
}

fn refine(surface: &PolygonSurface, root: &Root, tol: f64) -> std::result::Result<f64, String> {
    let (bounce, mut lo, mut hi) = match *root {
        Root::Exact(theta) => return Ok(theta),
        Root::Bracket { bounce, lo, hi } => (bounce, lo, hi),
    };
    let eval = |theta: f64| -> std::result::Result<(usize, f64), String> {
        itinerary(surface, theta, bounce + 1)
            .get(bounce)
            .copied()
            .ok_or_else(|| "vertex hit during refinement".to_string())
    };
    let (edge, u_lo) = eval(lo)?;
    let g_lo = u_lo - 0.5;
    for _ in 0..200 {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        let (e, u) = eval(mid)?;
        if e != edge {
            return Err("itinerary changed inside the bracket".into());
        }
        let g = u - 0.5;
        if g == 0.0 {
            return Ok(mid);
        }
        if (g < 0.0) == (g_lo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err("bisection did not converge".into())
}

/// Full search with diagnostics.
pub fn search(surface: &PolygonSurface, config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let grid = config.grid;
    let thetas: Vec<f64> = (1..=grid).map(|i| FRAC_PI_2 * i as f64 / grid as f64).collect();
    let itins: Vec<Vec<(usize, f64)>> = thetas
        .par_iter()
        .map(|&t| itinerary(surface, t, config.max_bounces))
        .collect();

    let mut roots = Vec::new();
    for i in 0..grid {
        let cur = &itins[i];
        for (_, u) in cur {
            if (u - 0.5).abs() < 1e-12 {
                roots.push(Root::Exact(thetas[i]));
            }
        }
        if let Some(next) = itins.get(i + 1) {
            let common = cur.iter().zip(next).take_while(|(a, b)| a.0 == b.0).count();
            for j in 0..common {
                let (ga, gb) = (cur[j].1 - 0.5, next[j].1 - 0.5);
                if ga * gb < 0.0 {
                    roots.push(Root::Bracket {
                        bounce: j,
                        lo: thetas[i],
                        hi: thetas[i + 1],
                    });
                }
            }
        }
    }

    let side = surface.side_length();
    let max_period = 2 * config.max_bounces;
    let candidates: Vec<(f64, std::result::Result<GeodesicPath, String>)> = roots
        .par_iter()
        .map(|root| {
            let guess = match *root {
                Root::Exact(t) => t,
                Root::Bracket { lo, .. } => lo,
            };
            let theta = match refine(surface, root, config.root_tol) {
                Ok(t) => t,
                Err(e) => return (guess, Err(e)),
            };
            let path = match trace(surface, EdgeLocation::midpoint(0), theta, max_period) {
                Ok(p) => p,
                Err(e) => return (theta, Err(e.to_string())),
            };
            if path.collision().is_some() {
                return (theta, Err("re-trace hits a vertex".into()));
            }
            if !path.is_closed() {
                return (theta, Err("not closed".into()));
            }
            let gap = path.hits()[0].distance(*path.hits().last().expect("non-empty"));
            if gap > config.closure_tol * side {
                return (theta, Err("closure gap above tolerance".into()));
            }
            (theta, Ok(path))
        })
        .collect();

    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut discarded = Vec::new();
    for (theta, cand) in candidates {
        let path = match cand {
            Ok(p) => p,
            Err(e) => {
                // open returns are expected; keep only genuine failures
                if e != "not closed" {
                    discarded.push((theta, e));
                }
                continue;
            }
        };
        if path.length() > config.length_bound {
            continue;
        }
        let skips = skip_numbers(&path);
        let mut multiset = skips.clone();
        multiset.sort_unstable();
        let duplicate = entries.iter().any(|e| {
            let mut other = e.skips.clone();
            other.sort_unstable();
            other == multiset && (e.length - path.length()).abs() <= config.dedup_tol
        });
        if duplicate {
            continue;
        }
        entries.push(SpectrumEntry {
            length: path.length(),
            period: path.segments().len(),
            skips: canonical_skips(&skips),
            orbit_size: dihedral_orbit_size(surface, &path),
            path,
        });
    }
    entries.sort_by(|a, b| a.length.total_cmp(&b.length).then_with(|| a.skips.cmp(&b.skips)));
    Ok(SearchOutcome {
        entries,
        discarded,
        roots: roots.len(),
    })
}

/// Closed geodesics within the configured budget, sorted by length.
pub fn find_closed_geodesics(surface: &PolygonSurface, config: &SearchConfig) -> Result<Vec<SpectrumEntry>> {
    Ok(search(surface, config)?.entries)
}

pub fn shortest_closed_geodesic(surface: &PolygonSurface, config: &SearchConfig) -> Result<SpectrumEntry> {
    find_closed_geodesics(surface, config)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::BudgetExhausted("no closed geodesic within the search budget".into()))
}

/// True when the first entry is shorter than every other by more than `tol`.
pub fn is_unique_shortest(entries: &[SpectrumEntry], tol: f64) -> bool {
    match entries {
        [] => false,
        [_] => true,
        [a, b, ..] => b.length > a.length + tol,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    /// Side count; `None` for the disk limit row.
    pub n: Option<usize>,
    pub length: f64,
    pub diam: f64,
    pub doubled_area: f64,
    pub l_over_diam: f64,
    pub l_over_sqrt_area: f64,
}

impl RatioRow {
    pub fn csv_header() -> &'static str {
        "n,L,diam,doubled_area,L_over_diam,L_over_sqrt_area"
    }

    pub fn csv_row(&self) -> String {
        let n = self.n.map(|n| n.to_string()).unwrap_or_else(|| "disk".into());
        format!(
            "{n},{:.9},{:.9},{:.9},{:.9},{:.9}",
            self.length, self.diam, self.doubled_area, self.l_over_diam, self.l_over_sqrt_area
        )
    }
}

/// Length ratios of the shortest closed geodesic (the V-shape) on odd-gons
/// of inradius 1, with diameters from grid maximization, plus the doubled
/// disk limit where the shortest length is four diameters.
pub fn ratio_table(n_list: &[usize], grid: usize) -> Result<Vec<RatioRow>> {
    let mut rows = Vec::new();
    for &n in n_list {
        if n % 2 == 0 || n < 3 {
            return Err(Error::InvalidArgument(format!("ratio rows need odd n >= 3, got {n}")));
        }
        let surface = PolygonSurface::with_inradius(n, 1.0)?;
        let length = make_special(&surface, SpecialKind::Vshape)?.length();
        let doubled_area = surface.metrics().doubled_area;
        let diam = diameter(&surface.into(), grid)?.diam;
        rows.push(RatioRow {
            n: Some(n),
            length,
            diam,
            doubled_area,
            l_over_diam: length / diam,
            l_over_sqrt_area: length / doubled_area.sqrt(),
        });
    }
    let area = 2.0 * PI;
    rows.push(RatioRow {
        n: None,
        length: 8.0,
        diam: 2.0,
        doubled_area: area,
        l_over_diam: 4.0,
        l_over_sqrt_area: 8.0 / area.sqrt(),
    });
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingProfile {
    /// Counterclockwise arcs between consecutive hits, radially projected
    /// to the inscribed circle.
    pub arcs: Vec<f64>,
    pub total: f64,
    pub winding: usize,
}

/// Turning arcs and winding count of a closed path, computed over the full
/// period.
pub fn winding_profile(path: &GeodesicPath) -> Result<WindingProfile> {
    if !path.is_closed() {
        return Err(Error::NotClosed);
    }
    let hits = path.hits();
    let arcs: Vec<f64> = hits
        .windows(2)
        .map(|w| (w[1].angle() - w[0].angle()).rem_euclid(2.0 * PI))
        .collect();
    let total: f64 = arcs.iter().sum();
    Ok(WindingProfile {
        winding: (total / (2.0 * PI)).round() as usize,
        arcs,
        total,
    })
}
