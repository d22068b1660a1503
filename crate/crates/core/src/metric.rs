//! Geodesic distance on doubled polygons and the doubled disk.
//!
//! Polygon distances come from a depth-first branch-and-bound over unfolding
//! chains: each crossed edge reflects the polygon copy holding `b`, and a
//! chain stays alive only while a straight segment from `a` can still pass
//! through every crossed edge (its window). The disk uses a direct scan over
//! boundary crossing points.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{closest_on_segment, Isometry, Vec2};
use crate::surface::{DiskSurface, Face, PolygonSurface, Surface, SurfacePoint};

/// Results within this (relative) distance of the via-vertex bound are
/// flagged as vertex-grazing.
pub const GRAZE_TOL: f64 = 1e-12;
/// Cones narrower than this (radians) are dropped.
const CONE_EPS: f64 = 1e-12;

/// Edge crossings of a shortest-path candidate, unfolded into the plane.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct UnfoldingChain {
    /// Crossed edges, in the original labelling.
    pub edges: Vec<usize>,
    /// Isometry taking the original polygon to the copy entered after each
    /// crossing.
    pub isometries: Vec<Isometry>,
    /// Crossed edges as planar segments in the unfolded plane.
    pub windows: Vec<[Vec2; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistanceResult {
    pub distance: f64,
    pub witness: Vec<SurfacePoint>,
    pub chain: UnfoldingChain,
    /// Number of boundary crossings of the witness.
    pub depth: usize,
    /// False when the depth cap was reached with chains still alive.
    pub proven_optimal: bool,
    pub vertex_grazing: bool,
}

impl DistanceResult {
    pub fn witness_length(&self) -> f64 {
        self.witness
            .windows(2)
            .map(|w| w[0].position.distance(w[1].position))
            .sum()
    }
}

/// Angular interval of directions from the source, measured from `c`.
#[derive(Clone, Copy, Debug)]
struct Cone {
    c: Vec2,
    lo: f64,
    hi: f64,
}

fn rel_angle(c: Vec2, v: Vec2) -> f64 {
    c.cross(v).atan2(c.dot(v))
}

/// Narrow `cone` to the directions from `a` that meet the segment `[w0, w1]`.
fn narrow(cone: Option<Cone>, a: Vec2, w0: Vec2, w1: Vec2) -> Option<Cone> {
    let (d0, d1) = (w0 - a, w1 - a);
    match cone {
        None => {
            let c = d0.normalized() + d1.normalized();
            if c.norm() < 1e-15 {
                return None;
            }
            let c = c.normalized();
            let (p, q) = (rel_angle(c, d0), rel_angle(c, d1));
            Some(Cone {
                c,
                lo: p.min(q),
                hi: p.max(q),
            })
        }
        Some(Cone { c, lo, hi }) => {
            let (p, q) = (rel_angle(c, d0), rel_angle(c, d1));
            let (mn, mx) = (p.min(q), p.max(q));
            let (nlo, nhi) = if mx - mn <= PI {
                (lo.max(mn), hi.min(mx))
            } else if hi >= mx {
                (lo.max(mx), hi)
            } else if lo <= mn {
                (lo, hi.min(mn))
            } else {
                return None;
            };
            // a zero-width cone only admits the ray through a shared vertex
            (nhi - nlo > CONE_EPS).then_some(Cone { c, lo: nlo, hi: nhi })
        }
    }
}

/// Distance from `a` to the part of `[w0, w1]` seen inside `cone`.
fn clipped_distance(a: Vec2, w0: Vec2, w1: Vec2, cone: Cone) -> f64 {
    let w = w1 - w0;
    let param = |phi: f64| {
        let u = cone.c.rotated(phi);
        let den = w.cross(u);
        (den.abs() > 1e-15).then(|| (a - w0).cross(u) / den)
    };
    match (param(cone.lo), param(cone.hi)) {
        (Some(s0), Some(s1)) => {
            let lo = (s0.min(s1) - 1e-12).clamp(0.0, 1.0);
            let hi = (s0.max(s1) + 1e-12).clamp(0.0, 1.0);
            closest_on_segment(a, w0.lerp(w1, lo), w0.lerp(w1, hi)).0.distance(a)
        }
        _ => closest_on_segment(a, w0, w1).0.distance(a),
    }
}

/// Parameters along `a → b` at which the segment crosses each window, or
/// `None` when the straight segment misses a window or meets them out of
/// order.
fn crossing_params(a: Vec2, b: Vec2, windows: &[[Vec2; 2]]) -> Option<Vec<f64>> {
    let dir = b - a;
    let mut out = Vec::with_capacity(windows.len());
    let mut prev = 0.0;
    for [w0, w1] in windows {
        let w = *w1 - *w0;
        let den = dir.cross(w);
        if den.abs() < 1e-15 {
            return None;
        }
        let t = (*w0 - a).cross(w) / den;
        let s = (*w0 - a).cross(dir) / den;
        if !(t > prev && t < 1.0 - 1e-14) || !(-1e-12..=1.0 + 1e-12).contains(&s) {
            return None;
        }
        out.push(t);
        prev = t;
    }
    Some(out)
}

fn check_point(surface: &PolygonSurface, p: &SurfacePoint) -> Result<()> {
    if !p.position.x.is_finite() || !p.position.y.is_finite() {
        return Err(Error::InvalidArgument("point has non-finite coordinates".into()));
    }
    if !surface.contains(p.position, 1e-9 * surface.side_length()) {
        return Err(Error::InvalidArgument(format!(
            "point ({}, {}) lies outside the polygon",
            p.position.x, p.position.y
        )));
    }
    Ok(())
}

/// Shortest path through a vertex: `min_v |a − v| + |v − b|`.
pub fn via_vertex_bound(surface: &PolygonSurface, a: Vec2, b: Vec2) -> (f64, usize) {
    surface
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (a.distance(*v) + v.distance(b), i))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("polygons have vertices")
}

enum Best {
    Direct,
    Vertex(usize),
    Chain(UnfoldingChain, Vec<f64>),
}

struct Search<'a> {
    surface: &'a PolygonSurface,
    reflections: Vec<Isometry>,
    a: Vec2,
    b: Vec2,
    /// Required crossing parity; `None` when an endpoint is on the boundary.
    odd: Option<bool>,
    max_depth: usize,
    eps: f64,
    best: f64,
    best_kind: Best,
    live_at_cap: bool,
    chain: UnfoldingChain,
}

impl Search<'_> {
    fn try_candidate(&mut self, t: &Isometry) {
        let depth = self.chain.edges.len();
        if self.odd.is_some_and(|odd| odd != (depth % 2 == 1)) {
            return;
        }
        let b = t.apply(self.b);
        let len = self.a.distance(b);
        if len >= self.best {
            return;
        }
        if let Some(ts) = crossing_params(self.a, b, &self.chain.windows) {
            self.best = len;
            self.best_kind = Best::Chain(self.chain.clone(), ts);
        }
    }

    fn expand(&mut self, t: Isometry, cone: Option<Cone>) {
        let n = self.surface.sides();
        let depth = self.chain.edges.len();
        let last = self.chain.edges.last().copied();
        let mut kids = Vec::new();
        for f in 0..n {
            if Some(f) == last {
                continue;
            }
            let (v0, v1) = self.surface.edge(f);
            let (w0, w1) = (t.apply(v0), t.apply(v1));
            let w = w1 - w0;
            if w.cross(self.a - w0).abs() <= self.eps * w.norm() {
                continue;
            }
            let Some(nc) = narrow(cone, self.a, w0, w1) else {
                continue;
            };
            let lb = clipped_distance(self.a, w0, w1, nc);
            if lb >= self.best {
                continue;
            }
            kids.push((lb, f, w0, w1, nc));
        }
        if depth == self.max_depth {
            if !kids.is_empty() {
                self.live_at_cap = true;
            }
            return;
        }
        kids.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (lb, f, w0, w1, nc) in kids {
            if lb >= self.best {
                continue;
            }
            let nt = t.compose(&self.reflections[f]);
            self.chain.edges.push(f);
            self.chain.isometries.push(nt);
            self.chain.windows.push([w0, w1]);
            self.try_candidate(&nt);
            self.expand(nt, Some(nc));
            self.chain.edges.pop();
            self.chain.isometries.pop();
            self.chain.windows.pop();
        }
    }
}

/// Exact geodesic distance between two points of a doubled polygon,
/// searching unfolding chains of at most `max_depth` edge crossings.
pub fn distance_polygon(
    surface: &PolygonSurface,
    a: SurfacePoint,
    b: SurfacePoint,
    max_depth: usize,
) -> Result<DistanceResult> {
    if max_depth == 0 {
        return Err(Error::InvalidArgument("max_depth must be at least 1".into()));
    }
    check_point(surface, &a)?;
    check_point(surface, &b)?;
    let (a, b) = (a.canonical(), b.canonical());
    let scale = surface.side_length();
    let odd = (!a.on_boundary && !b.on_boundary).then(|| a.face != b.face);
    let (vertex_bound, vertex) = via_vertex_bound(surface, a.position, b.position);

    let mut search = Search {
        surface,
        reflections: (0..surface.sides())
            .map(|e| {
                let (p, q) = surface.edge(e);
                Isometry::reflection(p, q)
            })
            .collect(),
        a: a.position,
        b: b.position,
        odd,
        max_depth,
        eps: 1e-12 * scale,
        best: vertex_bound,
        best_kind: Best::Vertex(vertex),
        live_at_cap: false,
        chain: UnfoldingChain::default(),
    };
    if odd != Some(true) {
        let direct = a.position.distance(b.position);
        if direct <= search.best {
            search.best = direct;
            search.best_kind = Best::Direct;
        }
    }
    search.expand(Isometry::IDENTITY, None);

    let distance = search.best;
    let vertex_grazing = distance >= vertex_bound - GRAZE_TOL * vertex_bound.max(scale);
    let (witness, chain) = match search.best_kind {
        Best::Direct => (vec![a, b], UnfoldingChain::default()),
        Best::Vertex(v) => (
            vec![a, SurfacePoint::boundary(surface.vertex(v)), b],
            UnfoldingChain::default(),
        ),
        Best::Chain(chain, ts) => {
            let target = chain.isometries.last().expect("non-empty chain").apply(b.position);
            let mut pts = vec![a];
            for (i, t) in ts.iter().enumerate() {
                let x = a.position.lerp(target, *t);
                let back = if i == 0 {
                    x
                } else {
                    chain.isometries[i - 1].inverse().apply(x)
                };
                pts.push(SurfacePoint::boundary(back));
            }
            pts.push(b);
            (pts, chain)
        }
    };
    let depth = chain.edges.len();
    Ok(DistanceResult {
        distance,
        witness,
        chain,
        depth,
        proven_optimal: !search.live_at_cap,
        vertex_grazing,
    })
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Number of boundary samples in the disk scan.
pub const DISK_SCAN: usize = 720;

/// Geodesic distance on the doubled disk.
pub fn distance_disk(disk: &DiskSurface, a: SurfacePoint, b: SurfacePoint) -> Result<DistanceResult> {
    let tol = 1e-9 * disk.radius();
    for p in [&a, &b] {
        if !disk.contains(p.position, tol) {
            return Err(Error::InvalidArgument("point lies outside the disk".into()));
        }
    }
    let (a, b) = (a.canonical(), b.canonical());
    if a.on_boundary || b.on_boundary || a.face == b.face {
        return Ok(DistanceResult {
            distance: a.position.distance(b.position),
            witness: vec![a, b],
            chain: UnfoldingChain::default(),
            depth: 0,
            proven_optimal: true,
            vertex_grazing: false,
        });
    }
    let f = |phi: f64| {
        let z = disk.boundary_position(phi);
        a.position.distance(z) + z.distance(b.position)
    };
    let step = 2.0 * PI / DISK_SCAN as f64;
    let samples: Vec<f64> = (0..DISK_SCAN).map(|i| f(i as f64 * step)).collect();
    let mut best = (0.0, f64::INFINITY);
    for i in 0..DISK_SCAN {
        let prev = samples[(i + DISK_SCAN - 1) % DISK_SCAN];
        let next = samples[(i + 1) % DISK_SCAN];
        if samples[i] <= prev && samples[i] <= next {
            let phi = i as f64 * step;
            let cand = golden_section(f, phi - step, phi + step, 1e-12);
            if cand.1 < best.1 {
                best = cand;
            }
        }
    }
    let z = disk.boundary_position(best.0);
    Ok(DistanceResult {
        distance: best.1,
        witness: vec![a, SurfacePoint::boundary(z), b],
        chain: UnfoldingChain::default(),
        depth: 1,
        proven_optimal: true,
        vertex_grazing: false,
    })
}

/// Default depth cap for polygon searches: twice the side count.
pub fn default_depth(surface: &PolygonSurface) -> usize {
    2 * surface.sides()
}

/// Distance on either kind of surface with default settings.
pub fn distance(surface: &Surface, a: SurfacePoint, b: SurfacePoint) -> Result<DistanceResult> {
    match surface {
        Surface::Polygon(p) => distance_polygon(p, a, b, default_depth(p)),
        Surface::Disk(d) => distance_disk(d, a, b),
    }
}

/// Turn a planar position on a given face into a surface point, snapping
/// positions on the boundary (within `1e-12·scale`) to boundary points.
pub fn point_on(surface: &Surface, face: Face, position: Vec2) -> SurfacePoint {
    let scale = surface.scale();
    let inside = match surface {
        Surface::Polygon(p) => (0..p.sides())
            .map(|e| p.edge_line_offset(e, position))
            .fold(f64::NEG_INFINITY, f64::max),
        Surface::Disk(d) => position.norm() - d.radius(),
    };
    if inside > -1e-12 * scale {
        SurfacePoint::boundary(position)
    } else {
        SurfacePoint::interior(face, position)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Diameter {
    pub diam: f64,
    pub a: SurfacePoint,
    pub b: SurfacePoint,
}

/// Barycentric lattice of the triangle `(o, p, q)` with `k` subdivisions.
fn triangle_lattice(o: Vec2, p: Vec2, q: Vec2, k: usize) -> Vec<Vec2> {
    let mut out = Vec::new();
    for i in 0..=k {
        for j in 0..=(k - i) {
            out.push(o + (p - o) * (i as f64 / k as f64) + (q - o) * (j as f64 / k as f64));
        }
    }
    out
}

fn pair_distance(surface: &Surface, fa: Face, pa: Vec2, fb: Face, pb: Vec2) -> f64 {
    distance(surface, point_on(surface, fa, pa), point_on(surface, fb, pb))
        .map(|r| r.distance)
        .unwrap_or(f64::NEG_INFINITY)
}

fn project(surface: &Surface, p: Vec2) -> Vec2 {
    match surface {
        Surface::Polygon(s) => s.project_inside(p),
        Surface::Disk(d) => {
            if p.norm() > d.radius() {
                p.normalized() * d.radius()
            } else {
                p
            }
        }
    }
}

/// Maximize distance over point pairs with a symmetry-reduced grid followed
/// by compass search on the best pairs.
pub fn diameter(surface: &Surface, grid: usize) -> Result<Diameter> {
    if grid < 32 {
        return Err(Error::InvalidArgument(format!("grid must be at least 32, got {grid}")));
    }
    let poly = match surface {
        Surface::Disk(d) => {
            return Ok(Diameter {
                diam: 2.0 * d.radius(),
                a: SurfacePoint::interior(Face::Front, Vec2::ZERO),
                b: SurfacePoint::interior(Face::Back, Vec2::ZERO),
            })
        }
        Surface::Polygon(p) => p,
    };
    let k = (grid / 4).max(8);
    let n = poly.sides();
    let wedge = triangle_lattice(Vec2::ZERO, poly.edge_midpoint(0), poly.vertex(1), k);
    let mut others = Vec::new();
    for e in 0..n {
        let (v0, v1) = poly.edge(e);
        others.extend(triangle_lattice(Vec2::ZERO, v0, v1, k));
    }
    let mut pairs: Vec<(f64, Vec2, Face, Vec2)> = wedge
        .par_iter()
        .flat_map_iter(|&p| {
            let mut local = Vec::with_capacity(others.len() * 2);
            for face in [Face::Front, Face::Back] {
                for &q in &others {
                    local.push((pair_distance(surface, Face::Front, p, face, q), p, face, q));
                }
            }
            local
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    pairs.truncate(6);

    let scale = surface.scale();
    let refined: Vec<(f64, Vec2, Face, Vec2)> = pairs
        .par_iter()
        .map(|&(mut best, mut p, face, mut q)| {
            let mut step = scale / k as f64;
            while step > 1e-8 * scale {
                let mut improved = false;
                for dim in 0..4 {
                    for sign in [-1.0, 1.0] {
                        let (mut np, mut nq) = (p, q);
                        match dim {
                            0 => np.x += sign * step,
                            1 => np.y += sign * step,
                            2 => nq.x += sign * step,
                            _ => nq.y += sign * step,
                        }
                        let (np, nq) = (project(surface, np), project(surface, nq));
                        let d = pair_distance(surface, Face::Front, np, face, nq);
                        if d > best {
                            best = d;
                            p = np;
                            q = nq;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    step /= 2.0;
                }
            }
            (best, p, face, q)
        })
        .collect();
    let (diam, p, face, q) = refined
        .into_iter()
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .expect("grid is non-empty");
    Ok(Diameter {
        diam,
        a: point_on(surface, Face::Front, p),
        b: point_on(surface, face, q),
    })
}

#[derive(Clone, Copy, PartialEq)]
enum NodeKind {
    Shared,
    On(Face),
}

fn visible(a: NodeKind, b: NodeKind) -> bool {
    match (a, b) {
        (NodeKind::On(x), NodeKind::On(y)) => x == y,
        _ => true,
    }
}

/// Approximate distance from a Dijkstra search on a sampled graph: shared
/// boundary samples (`resolution` per side, or per `2π r / n` of arc on the
/// disk with n = 16) plus a coarse interior lattice on each face, linked
/// whenever two nodes lie on a common face. Faces are convex, so same-face
/// nodes always see each other.
pub fn mesh_oracle(surface: &Surface, resolution: usize, a: SurfacePoint, b: SurfacePoint) -> Result<f64> {
    if resolution < 2 {
        return Err(Error::InvalidArgument("mesh resolution must be at least 2".into()));
    }
    let kind = |p: &SurfacePoint| {
        if p.on_boundary {
            NodeKind::Shared
        } else {
            NodeKind::On(p.face)
        }
    };
    let mut nodes: Vec<(Vec2, NodeKind)> = vec![(a.position, kind(&a)), (b.position, kind(&b))];
    let interior_step = match surface {
        Surface::Polygon(p) => {
            for e in 0..p.sides() {
                let (v0, v1) = p.edge(e);
                for j in 0..resolution {
                    nodes.push((v0.lerp(v1, j as f64 / resolution as f64), NodeKind::Shared));
                }
            }
            2.0 * p.circumradius() / (resolution as f64 / 5.0).max(2.0)
        }
        Surface::Disk(d) => {
            let count = 16 * resolution;
            for j in 0..count {
                let phi = 2.0 * PI * j as f64 / count as f64;
                nodes.push((d.boundary_position(phi), NodeKind::Shared));
            }
            2.0 * d.radius() / (resolution as f64 / 5.0).max(2.0)
        }
    };
    let extent = surface.metrics().circumradius;
    let steps = (2.0 * extent / interior_step).ceil() as i64;
    for i in 0..=steps {
        for j in 0..=steps {
            let p = Vec2::new(-extent + i as f64 * interior_step, -extent + j as f64 * interior_step);
            if surface.contains(p, -1e-9 * extent) {
                nodes.push((p, NodeKind::On(Face::Front)));
                nodes.push((p, NodeKind::On(Face::Back)));
            }
        }
    }

    let count = nodes.len();
    let mut dist = vec![f64::INFINITY; count];
    let mut done = vec![false; count];
    dist[0] = 0.0;
    for _ in 0..count {
        let Some(u) = (0..count)
            .filter(|&i| !done[i] && dist[i].is_finite())
            .min_by(|&x, &y| dist[x].total_cmp(&dist[y]))
        else {
            break;
        };
        if u == 1 {
            return Ok(dist[1]);
        }
        done[u] = true;
        let (pu, ku) = nodes[u];
        for v in 0..count {
            if !done[v] && visible(ku, nodes[v].1) {
                let nd = dist[u] + pu.distance(nodes[v].0);
                if nd < dist[v] {
                    dist[v] = nd;
                }
            }
        }
    }
    Err(Error::Numerical("mesh graph is disconnected".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn square() -> PolygonSurface {
        PolygonSurface::with_side(4, 2.0).unwrap()
    }

    #[test]
    fn same_face_is_euclidean() {
        let s = square();
        let a = SurfacePoint::interior(Face::Front, Vec2::new(-0.5, 0.2));
        let b = SurfacePoint::interior(Face::Front, Vec2::new(0.7, -0.3));
        let r = distance_polygon(&s, a, b, 8).unwrap();
        assert_relative_eq!(r.distance, 1.3, epsilon = 1e-14);
        assert_eq!(r.depth, 0);
        assert!(r.proven_optimal);
    }

    #[test]
    fn centers_on_opposite_faces() {
        let s = square();
        let a = SurfacePoint::interior(Face::Front, Vec2::ZERO);
        let b = SurfacePoint::interior(Face::Back, Vec2::ZERO);
        let r = distance_polygon(&s, a, b, 8).unwrap();
        assert_relative_eq!(r.distance, 2.0, epsilon = 1e-12);
        assert_eq!(r.depth, 1);
        assert_relative_eq!(r.witness_length(), r.distance, max_relative = 1e-12);
        assert!(!r.vertex_grazing);
        let oracle = mesh_oracle(&s.clone().into(), 100, a, b).unwrap();
        assert!((oracle - 2.0).abs() <= 0.02);
    }

    #[test]
    fn opposite_midpoints() {
        let s = square();
        let a = s.edge_point(crate::surface::EdgeLocation::midpoint(0)).unwrap();
        let b = s.edge_point(crate::surface::EdgeLocation::midpoint(2)).unwrap();
        assert_relative_eq!(distance_polygon(&s, a, b, 8).unwrap().distance, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn boundary_tags_do_not_matter() {
        let s = PolygonSurface::with_side(5, 1.0).unwrap();
        let p = s.edge_position(crate::surface::EdgeLocation { edge: 2, u: 0.3 });
        let front = SurfacePoint::boundary(p);
        let back = SurfacePoint { face: Face::Back, ..front };
        let q = SurfacePoint::interior(Face::Back, Vec2::new(0.1, -0.2));
        let d1 = distance_polygon(&s, front, q, 10).unwrap().distance;
        let d2 = distance_polygon(&s, back, q, 10).unwrap().distance;
        assert_eq!(d1, d2);
    }

    #[test]
    fn outside_points_are_rejected() {
        let s = square();
        let a = SurfacePoint::interior(Face::Front, Vec2::new(3.0, 0.0));
        assert!(distance_polygon(&s, a, a, 4).is_err());
        assert!(distance_polygon(&s, a, a, 0).is_err());
    }

    #[test]
    fn disk_distances() {
        let d = DiskSurface::unit();
        let c_front = SurfacePoint::interior(Face::Front, Vec2::ZERO);
        let c_back = SurfacePoint::interior(Face::Back, Vec2::ZERO);
        assert_relative_eq!(distance_disk(&d, c_front, c_back).unwrap().distance, 2.0, epsilon = 1e-12);
        assert_eq!(distance_disk(&d, c_front, c_front).unwrap().distance, 0.0);
    }

    #[test]
    fn disk_symmetric_configuration() {
        // X and Y at radius k, angle π − 2θ apart, on opposite faces
        let (k, theta) = (0.7f64, PI / 6.0);
        let half = (PI - 2.0 * theta) / 2.0;
        let x = Vec2::from_angle(PI / 2.0 + half) * k;
        let y = Vec2::from_angle(PI / 2.0 - half) * k;
        let d = DiskSurface::unit();
        let r = distance_disk(
            &d,
            SurfacePoint::interior(Face::Front, x),
            SurfacePoint::interior(Face::Back, y),
        )
        .unwrap();
        // brute force over a fine boundary grid
        let brute = (0..200_000)
            .map(|i| {
                let z = Vec2::from_angle(2.0 * PI * i as f64 / 200_000.0);
                x.distance(z) + z.distance(y)
            })
            .fold(f64::INFINITY, f64::min);
        assert!(r.distance <= brute + 1e-12);
        assert!(brute - r.distance < 1e-9);
        // the symmetric crossing point gives the closed-form critical value
        let z = Vec2::new(0.0, 1.0);
        let symmetric = x.distance(z) + z.distance(y);
        let closed_form = 2.0 * (1.0 + k * k - 2.0 * k * theta.sin()).sqrt();
        assert_relative_eq!(symmetric, closed_form, max_relative = 1e-12);
        assert!(r.distance <= closed_form);
        assert_relative_eq!(r.distance, 2.0 * theta.cos(), max_relative = 1e-9);
    }

    #[test]
    fn disk_diameter() {
        let d: Surface = DiskSurface::unit().into();
        assert_eq!(diameter(&d, 32).unwrap().diam, 2.0);
        assert!(diameter(&d, 8).is_err());
    }
}
