//! Geodesic tracing on doubled polygons and construction of named closed
//! geodesics.
//!
//! A geodesic on a doubled polygon is a billiard path whose segments alternate
//! faces. Paths start on the front face. Angles are measured from the start
//! edge's counterclockwise direction and lie in `(0, π)`.

use std::f64::consts::PI;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::surface::{DiskSurface, EdgeLocation, Face, PolygonSurface, Surface, SurfacePoint};

/// Hits closer than this multiple of the side length to a vertex are flagged.
pub const VERTEX_EPS: f64 = 1e-9;
/// Closure tolerance on hit position, relative to the side length.
pub const CLOSURE_POS_TOL: f64 = 1e-9;
/// Closure tolerance on direction, in radians.
pub const CLOSURE_DIR_TOL: f64 = 1e-9;

/// Where a segment meets the boundary: an edge location on a polygon or a
/// polar angle on the disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundaryPoint {
    Edge(EdgeLocation),
    Arc { angle: f64 },
}

impl BoundaryPoint {
    pub fn edge_location(&self) -> Option<EdgeLocation> {
        match self {
            BoundaryPoint::Edge(loc) => Some(*loc),
            BoundaryPoint::Arc { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub face: Face,
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
}

/// A trace stopped because a hit landed on a cone point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexHit {
    pub vertex: usize,
    pub bounce: usize,
}

/// A finite geodesic on a doubled surface.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath {
    surface: Surface,
    segments: Vec<Segment>,
    closed: bool,
    start_angle: f64,
    collision: Option<VertexHit>,
    points: Vec<Vec2>,
    cumulative: Vec<f64>,
}

fn boundary_position(surface: &Surface, b: &BoundaryPoint) -> Vec2 {
    match (surface, b) {
        (Surface::Polygon(p), BoundaryPoint::Edge(loc)) => p.edge_position(*loc),
        (Surface::Disk(d), BoundaryPoint::Arc { angle }) => d.boundary_position(*angle),
        (Surface::Polygon(p), BoundaryPoint::Arc { angle }) => Vec2::from_angle(*angle) * p.apothem(),
        (Surface::Disk(d), BoundaryPoint::Edge(loc)) => d.boundary_position(loc.u * 2.0 * PI),
    }
}

impl GeodesicPath {
    /// Assemble a path from segments, deriving planar hit points and
    /// arclength offsets.
    pub fn from_segments(
        surface: Surface,
        segments: Vec<Segment>,
        closed: bool,
        start_angle: f64,
    ) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidArgument("a path needs at least one segment".into()));
        }
        for pair in segments.windows(2) {
            if pair[0].face == pair[1].face {
                return Err(Error::InvalidArgument("segment faces must alternate".into()));
            }
        }
        if let Surface::Polygon(p) = &surface {
            for s in &segments {
                for b in [s.start, s.end] {
                    match b {
                        BoundaryPoint::Edge(loc) if loc.edge >= p.sides() => {
                            return Err(Error::EdgeOutOfRange {
                                edge: loc.edge,
                                sides: p.sides(),
                            })
                        }
                        BoundaryPoint::Edge(loc) if !(0.0..=1.0).contains(&loc.u) => {
                            return Err(Error::EdgeParameter(loc.u))
                        }
                        BoundaryPoint::Arc { .. } => {
                            return Err(Error::InvalidArgument(
                                "polygon paths use edge locations".into(),
                            ))
                        }
                        _ => {}
                    }
                }
            }
        }
        if closed && segments.len() % 2 == 1 {
            return Err(Error::InvalidArgument("a closed path needs an even segment count".into()));
        }
        let mut points = Vec::with_capacity(segments.len() + 1);
        points.push(boundary_position(&surface, &segments[0].start));
        points.extend(segments.iter().map(|s| boundary_position(&surface, &s.end)));
        let mut cumulative = Vec::with_capacity(points.len());
        cumulative.push(0.0);
        let mut acc = 0.0;
        for w in points.windows(2) {
            acc += w[0].distance(w[1]);
            cumulative.push(acc);
        }
        Ok(GeodesicPath {
            surface,
            segments,
            closed,
            start_angle,
            collision: None,
            points,
            cumulative,
        })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn polygon(&self) -> Option<&PolygonSurface> {
        self.surface.as_polygon()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start_angle(&self) -> f64 {
        self.start_angle
    }

    pub fn collision(&self) -> Option<VertexHit> {
        self.collision
    }

    /// Error out when the trace was stopped by a vertex collision.
    pub fn check(&self) -> Result<&Self> {
        match self.collision {
            Some(hit) => Err(Error::VertexCollision {
                vertex: hit.vertex,
                bounce: hit.bounce,
            }),
            None => Ok(self),
        }
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }

    /// Segment count of a closed path.
    pub fn period(&self) -> Option<usize> {
        self.closed.then_some(self.segments.len())
    }

    /// Planar hit points; the first is the start and the last the final hit.
    pub fn hits(&self) -> &[Vec2] {
        &self.points
    }

    /// Arclength of each hit point.
    pub fn hit_offsets(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn segment_length(&self, i: usize) -> f64 {
        self.cumulative[i + 1] - self.cumulative[i]
    }

    pub fn segment_endpoints(&self, i: usize) -> (Vec2, Vec2) {
        (self.points[i], self.points[i + 1])
    }

    /// Edge indices of every hit, start included.
    pub fn edge_sequence(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.segments[..1]
            .iter()
            .filter_map(|s| s.start.edge_location().map(|l| l.edge))
            .collect();
        out.extend(self.segments.iter().filter_map(|s| s.end.edge_location().map(|l| l.edge)));
        out
    }

    /// The point at arclength `t`. Closed paths wrap around; open paths clamp.
    pub fn point_at(&self, t: f64) -> SurfacePoint {
        let len = self.length();
        let t = if self.closed {
            t.rem_euclid(len)
        } else {
            t.clamp(0.0, len)
        };
        let i = match self.cumulative.partition_point(|&c| c <= t) {
            0 => 0,
            k => (k - 1).min(self.segments.len() - 1),
        };
        let local = t - self.cumulative[i];
        let seg_len = self.segment_length(i);
        if local <= 0.0 {
            return SurfacePoint::boundary(self.points[i]);
        }
        if local >= seg_len {
            return SurfacePoint::boundary(self.points[i + 1]);
        }
        let p = self.points[i].lerp(self.points[i + 1], local / seg_len);
        SurfacePoint::interior(self.segments[i].face, p)
    }

    /// Serializable record of the path.
    pub fn to_record(&self) -> PathRecord {
        PathRecord {
            surface: SurfaceRecord::from(&self.surface),
            closed: self.closed,
            start_angle: self.start_angle,
            period: self.period(),
            segments: self.segments.clone(),
            skips: skip_numbers(self),
            vertex_ratios: vertex_ratios(self),
            length: self.length(),
            collision: self.collision,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("path records always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: PathRecord =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad path JSON: {e}")))?;
        rec.into_path()
    }
}

/// Surface description used in JSON records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SurfaceRecord {
    Ngon { n: usize, side: f64 },
    Disk { radius: f64 },
}

impl From<&Surface> for SurfaceRecord {
    fn from(s: &Surface) -> Self {
        match s {
            Surface::Polygon(p) => SurfaceRecord::Ngon {
                n: p.sides(),
                side: p.side_length(),
            },
            Surface::Disk(d) => SurfaceRecord::Disk { radius: d.radius() },
        }
    }
}

impl SurfaceRecord {
    pub fn build(&self) -> Result<Surface> {
        Ok(match *self {
            SurfaceRecord::Ngon { n, side } => PolygonSurface::new(n, side)?.into(),
            SurfaceRecord::Disk { radius } => DiskSurface::new(radius)?.into(),
        })
    }
}

/// JSON form of a [`GeodesicPath`]. Derived fields are written for readers
/// and recomputed on load.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathRecord {
    pub surface: SurfaceRecord,
    pub closed: bool,
    #[serde(default)]
    pub start_angle: f64,
    #[serde(default)]
    pub period: Option<usize>,
    pub segments: Vec<Segment>,
    #[serde(default)]
    pub skips: Vec<usize>,
    #[serde(default)]
    pub vertex_ratios: Vec<f64>,
    #[serde(default)]
    pub length: f64,
    /// Set when the trace stopped at a vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collision: Option<VertexHit>,
}

impl PathRecord {
    pub fn into_path(self) -> Result<GeodesicPath> {
        let surface = self.surface.build()?;
        let mut path = GeodesicPath::from_segments(surface, self.segments, self.closed, self.start_angle)?;
        path.collision = self.collision;
        Ok(path)
    }
}

fn angle_between(a: Vec2, b: Vec2) -> f64 {
    a.cross(b).atan2(a.dot(b)).abs()
}

/// Trace a geodesic from `start` at `angle` for at most `max_bounces`
/// segments, stopping early at the first closure.
///
/// A hit within `VERTEX_EPS·side` of a vertex stops the trace; the returned
/// path then carries a [`VertexHit`] and its last segment ends at that hit.
pub fn trace(
    surface: &PolygonSurface,
    start: EdgeLocation,
    angle: f64,
    max_bounces: usize,
) -> Result<GeodesicPath> {
    trace_impl(surface, start, angle, max_bounces, true)
}

/// Like [`trace`] but always runs the full `bounces` unless a vertex is hit;
/// the result is never marked closed.
pub fn trace_open(
    surface: &PolygonSurface,
    start: EdgeLocation,
    angle: f64,
    bounces: usize,
) -> Result<GeodesicPath> {
    trace_impl(surface, start, angle, bounces, false)
}

fn trace_impl(
    surface: &PolygonSurface,
    start: EdgeLocation,
    angle: f64,
    max_bounces: usize,
    stop_at_closure: bool,
) -> Result<GeodesicPath> {
    let n = surface.sides();
    if start.edge >= n {
        return Err(Error::EdgeOutOfRange {
            edge: start.edge,
            sides: n,
        });
    }
    if !(start.u > 0.0 && start.u < 1.0) {
        return Err(Error::EdgeParameter(start.u));
    }
    if !(angle > 0.0 && angle < PI) {
        return Err(Error::DegenerateAngle(angle));
    }
    if max_bounces == 0 {
        return Err(Error::InvalidArgument("max_bounces must be positive".into()));
    }
    let side = surface.side_length();
    let apothem = surface.apothem();
    let normals: Vec<Vec2> = (0..n).map(|e| surface.outward_normal(e)).collect();

    let p0 = surface.edge_position(start);
    let d0 = surface.edge_direction(start.edge).rotated(angle);
    let (mut p, mut d) = (p0, d0);
    let mut cur = start;
    let mut face = Face::Front;
    let mut segments = Vec::new();
    let mut closed = false;
    let mut collision = None;

    for bounce in 0..max_bounces {
        let mut best: Option<(usize, f64)> = None;
        for (f, nf) in normals.iter().enumerate() {
            if f == cur.edge {
                continue;
            }
            let dn = d.dot(*nf);
            if dn <= 1e-15 {
                continue;
            }
            let t = (apothem - p.dot(*nf)) / dn;
            if best.is_none_or(|(_, bt)| t < bt) {
                best = Some((f, t));
            }
        }
        let (f, t) = best.ok_or_else(|| Error::Numerical("no exit edge found".into()))?;
        let q = p + d * t;
        let a = surface.vertex(f);
        let u = ((q - a).dot(surface.edge_direction(f)) / side).clamp(0.0, 1.0);
        let end = EdgeLocation { edge: f, u };
        segments.push(Segment {
            face,
            start: BoundaryPoint::Edge(cur),
            end: BoundaryPoint::Edge(end),
        });
        if u.min(1.0 - u) < VERTEX_EPS {
            let vertex = if u < 0.5 { f } else { (f + 1) % n };
            collision = Some(VertexHit { vertex, bounce });
            break;
        }
        let nf = normals[f];
        d = d - nf * (2.0 * d.dot(nf));
        face = face.flip();
        p = q;
        cur = end;
        if stop_at_closure
            && segments.len() % 2 == 0
            && f == start.edge
            && q.distance(p0) <= CLOSURE_POS_TOL * side
            && angle_between(d, d0) <= CLOSURE_DIR_TOL
        {
            closed = true;
            break;
        }
    }

    let mut path = GeodesicPath::from_segments(surface.clone().into(), segments, closed, angle)?;
    path.collision = collision;
    Ok(path)
}

/// Skip number of every segment: `(end_edge − start_edge) mod n`.
/// Disk paths have no edges and yield an empty list.
pub fn skip_numbers(path: &GeodesicPath) -> Vec<usize> {
    let Some(p) = path.polygon() else {
        return Vec::new();
    };
    let n = p.sides();
    path.segments
        .iter()
        .filter_map(|s| match (s.start, s.end) {
            (BoundaryPoint::Edge(a), BoundaryPoint::Edge(b)) => Some((b.edge + n - a.edge) % n),
            _ => None,
        })
        .collect()
}

/// Vertex ratio of every hit: the share of the edge lying clockwise of the
/// hit point, which equals the edge parameter `u`.
///
/// Closed paths report one value per segment start; open paths also report
/// the final hit.
pub fn vertex_ratios(path: &GeodesicPath) -> Vec<f64> {
    let mut out: Vec<f64> = path
        .segments
        .iter()
        .filter_map(|s| s.start.edge_location().map(|l| l.u))
        .collect();
    if !path.closed {
        if let Some(l) = path.segments.last().and_then(|s| s.end.edge_location()) {
            out.push(l.u);
        }
    }
    out
}

/// Winding count `Σ skips / n` of a closed polygon path.
pub fn winding(path: &GeodesicPath) -> Option<usize> {
    let p = path.polygon()?;
    let total: usize = skip_numbers(path).iter().sum();
    (path.closed && total.is_multiple_of(p.sides())).then(|| total / p.sides())
}

/// Named closed geodesics, all starting at the midpoint of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    /// Period 4 on odd-gons, skips `(k, k+1, k+1, k)` on `X_{2k+1}`.
    Vshape,
    /// Through consecutive edge midpoints.
    OverUnder,
    /// Through midpoints of edges `step` apart.
    MidpointStar(usize),
    /// Perpendicular bisector of edge `index` and its opposite edge.
    HalfGeodesic(usize),
}

/// Start edge and angle of a named geodesic.
pub fn special_start(n: usize, kind: SpecialKind) -> Result<(EdgeLocation, f64, usize)> {
    let nf = n as f64;
    let unsupported = |why: &str| Err(Error::Unsupported(format!("{kind:?} on X_{n}: {why}")));
    match kind {
        SpecialKind::Vshape => {
            if n.is_multiple_of(2) {
                return unsupported("needs an odd side count");
            }
            Ok((EdgeLocation::midpoint(0), PI / 2.0 - PI / nf, 4))
        }
        SpecialKind::OverUnder => {
            let period = if n % 2 == 1 { 2 * n } else { n };
            Ok((EdgeLocation::midpoint(0), PI / nf, period))
        }
        SpecialKind::MidpointStar(step) => {
            if step == 0 || 2 * step > n {
                return unsupported("step must lie in 1..=n/2");
            }
            let m = n / n.gcd(&step);
            let period = if m.is_multiple_of(2) { m } else { 2 * m };
            Ok((EdgeLocation::midpoint(0), step as f64 * PI / nf, period))
        }
        SpecialKind::HalfGeodesic(index) => {
            if n % 2 == 1 {
                return unsupported("needs an even side count");
            }
            if index >= n {
                return Err(Error::EdgeOutOfRange { edge: index, sides: n });
            }
            Ok((EdgeLocation::midpoint(index), PI / 2.0, 2))
        }
    }
}

/// Construct a named closed geodesic by tracing from its midpoint start.
pub fn make_special(surface: &PolygonSurface, kind: SpecialKind) -> Result<GeodesicPath> {
    let (start, angle, period) = special_start(surface.sides(), kind)?;
    let path = trace(surface, start, angle, period)?;
    path.check()?;
    if path.period() != Some(period) {
        return Err(Error::NotClosed);
    }
    Ok(path)
}

fn is_palindrome(s: &[usize]) -> bool {
    s.iter().eq(s.iter().rev())
}

/// Translate a closed geodesic inside its parallel family until one of its
/// hits sits at an edge midpoint with a palindromic skip sequence.
///
/// Each hit is tried in order. A candidate is accepted when re-tracing from
/// the midpoint at the same relative angle closes with the same edge
/// itinerary, which means no vertex was crossed along the way.
pub fn canonicalize_to_midpoint(path: &GeodesicPath) -> Result<GeodesicPath> {
    let surface = path
        .polygon()
        .ok_or_else(|| Error::Unsupported("canonicalization needs a polygon surface".into()))?;
    if !path.is_closed() {
        return Err(Error::NotClosed);
    }
    path.check()?;
    let m = path.segments.len();
    let edges = path.edge_sequence();
    let mut found_any = false;
    for i in 0..m {
        let rotated: Vec<usize> = (0..=m).map(|j| edges[(i + j) % m]).collect();
        let (a, b) = path.segment_endpoints(i);
        let dir = (b - a).normalized();
        let edge_dir = surface.edge_direction(edges[i]);
        let theta = edge_dir.cross(dir).atan2(edge_dir.dot(dir));
        let Ok(candidate) = trace(surface, EdgeLocation::midpoint(edges[i]), theta, m) else {
            continue;
        };
        if candidate.collision.is_some() || candidate.period() != Some(m) {
            continue;
        }
        if candidate.edge_sequence() != rotated {
            continue;
        }
        found_any = true;
        if is_palindrome(&skip_numbers(&candidate)) {
            return Ok(candidate);
        }
    }
    Err(Error::Numerical(if found_any {
        "no midpoint translate has a palindromic skip sequence".into()
    } else {
        "translation to a midpoint crosses a vertex".into()
    }))
}

/// Closed geodesic on the doubled disk through the vertices of an inscribed
/// regular polygon (`q = 1`) or star (`q > 1`), traversed `t` times.
///
/// Vertex `j` sits at polar angle `−π/2 + 2πqj/m`. The diameter `m = 2,
/// q = 1` is also accepted.
pub fn make_disk_geodesic(disk: &DiskSurface, m: usize, q: usize, t: usize) -> Result<GeodesicPath> {
    let diameter = m == 2 && q == 1;
    if !diameter && !(m >= 3 && q >= 1 && 2 * q < m) {
        return Err(Error::Unsupported(format!(
            "disk geodesic needs 1 <= q < m/2, got m={m}, q={q}"
        )));
    }
    if m.gcd(&q) != 1 {
        return Err(Error::Unsupported(format!("gcd({m}, {q}) must be 1")));
    }
    if t == 0 || (m * t) % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "segment count m·t = {} must be even and positive",
            m * t
        )));
    }
    let count = m * t;
    let vertex_angle = |j: usize| -PI / 2.0 + 2.0 * PI * ((q * j) % m) as f64 / m as f64;
    let segments = (0..count)
        .map(|j| Segment {
            face: if j % 2 == 0 { Face::Front } else { Face::Back },
            start: BoundaryPoint::Arc { angle: vertex_angle(j) },
            end: BoundaryPoint::Arc {
                angle: vertex_angle(j + 1),
            },
        })
        .collect();
    GeodesicPath::from_segments((*disk).into(), segments, true, PI * q as f64 / m as f64)
}
