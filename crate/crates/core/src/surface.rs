//! Doubled regular polygons `X_n` and the doubled disk.
//!
//! A doubled polygon is two copies (front and back) of a regular n-gon glued
//! along their boundary. Both faces share one planar chart: vertices run
//! counterclockwise, edge 0 is horizontal at the bottom and centred on the
//! negative y axis, and edge `e` joins vertex `e` to vertex `e + 1`.
//!
//! The surface stores its side length. `with_inradius` and `with_side` are
//! conveniences; formula-bearing code elsewhere states which normalization it
//! assumes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Face {
    Front,
    Back,
}

impl Face {
    pub fn flip(self) -> Face {
        match self {
            Face::Front => Face::Back,
            Face::Back => Face::Front,
        }
    }
}

/// A boundary point given as an edge index and a counterclockwise parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeLocation {
    pub edge: usize,
    pub u: f64,
}

impl EdgeLocation {
    /// Checked constructor: `u` must lie in the open unit interval.
    pub fn new(edge: usize, u: f64) -> Result<Self> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::EdgeParameter(u));
        }
        Ok(EdgeLocation { edge, u })
    }

    pub fn midpoint(edge: usize) -> Self {
        EdgeLocation { edge, u: 0.5 }
    }
}

/// A point of a doubled surface.
///
/// Boundary points lie on both faces; their face tag is normalized to
/// `Front` and equality ignores it.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub face: Face,
    pub position: Vec2,
    pub on_boundary: bool,
}

impl SurfacePoint {
    pub fn interior(face: Face, position: Vec2) -> Self {
        SurfacePoint {
            face,
            position,
            on_boundary: false,
        }
    }

    pub fn boundary(position: Vec2) -> Self {
        SurfacePoint {
            face: Face::Front,
            position,
            on_boundary: true,
        }
    }

    /// Normalize boundary points to the front face.
    pub fn canonical(self) -> Self {
        canonical_boundary(self)
    }
}

pub fn canonical_boundary(p: SurfacePoint) -> SurfacePoint {
    if p.on_boundary {
        SurfacePoint {
            face: Face::Front,
            ..p
        }
    } else {
        p
    }
}

impl PartialEq for SurfacePoint {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.on_boundary == b.on_boundary && a.face == b.face && a.position == b.position
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonSurface {
    sides: usize,
    side_length: f64,
    vertices: Vec<Vec2>,
}

/// Elementary metric quantities of a doubled surface.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub apothem: f64,
    pub circumradius: f64,
    pub perimeter: f64,
    pub doubled_area: f64,
    pub interior_angle: f64,
    /// Circumradius plus apothem; the width of an odd-gon across a vertex.
    pub height: f64,
}

impl PolygonSurface {
    pub fn new(sides: usize, side_length: f64) -> Result<Self> {
        if sides < 3 {
            return Err(Error::InvalidSurface(format!(
                "a polygon needs at least 3 sides, got {sides}"
            )));
        }
        if !(side_length > 0.0 && side_length.is_finite()) {
            return Err(Error::InvalidSurface(format!(
                "side length must be positive, got {side_length}"
            )));
        }
        let n = sides as f64;
        let circumradius = side_length / (2.0 * (PI / n).sin());
        let vertices = (0..sides)
            .map(|k| {
                let phi = -PI / 2.0 - PI / n + 2.0 * PI * k as f64 / n;
                Vec2::from_angle(phi) * circumradius
            })
            .collect();
        Ok(PolygonSurface {
            sides,
            side_length,
            vertices,
        })
    }

    pub fn with_side(sides: usize, side_length: f64) -> Result<Self> {
        Self::new(sides, side_length)
    }

    pub fn with_inradius(sides: usize, inradius: f64) -> Result<Self> {
        if sides < 3 {
            return Self::new(sides, 1.0);
        }
        Self::new(sides, 2.0 * inradius * (PI / sides as f64).tan())
    }

    pub fn with_circumradius(sides: usize, circumradius: f64) -> Result<Self> {
        if sides < 3 {
            return Self::new(sides, 1.0);
        }
        Self::new(sides, 2.0 * circumradius * (PI / sides as f64).sin())
    }

    pub fn sides(&self) -> usize {
        self.sides
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    pub fn apothem(&self) -> f64 {
        self.side_length / (2.0 * (PI / self.sides as f64).tan())
    }

    pub fn circumradius(&self) -> f64 {
        self.side_length / (2.0 * (PI / self.sides as f64).sin())
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.sides]
    }

    /// Endpoints of edge `e` in counterclockwise order.
    pub fn edge(&self, e: usize) -> (Vec2, Vec2) {
        (self.vertex(e), self.vertex(e + 1))
    }

    /// Unit vector along edge `e` in the counterclockwise direction.
    pub fn edge_direction(&self, e: usize) -> Vec2 {
        let (a, b) = self.edge(e);
        (b - a).normalized()
    }

    /// Outward unit normal of edge `e`.
    pub fn outward_normal(&self, e: usize) -> Vec2 {
        let phi = -PI / 2.0 + 2.0 * PI * (e % self.sides) as f64 / self.sides as f64;
        Vec2::from_angle(phi)
    }

    pub fn edge_midpoint(&self, e: usize) -> Vec2 {
        self.outward_normal(e) * self.apothem()
    }

    /// Planar point of an edge location, `(1 - u)·V_e + u·V_{e+1}`.
    pub fn edge_position(&self, loc: EdgeLocation) -> Vec2 {
        let (a, b) = self.edge(loc.edge);
        a.lerp(b, loc.u)
    }

    pub fn edge_point(&self, loc: EdgeLocation) -> Result<SurfacePoint> {
        if loc.edge >= self.sides {
            return Err(Error::EdgeOutOfRange {
                edge: loc.edge,
                sides: self.sides,
            });
        }
        Ok(SurfacePoint::boundary(self.edge_position(loc)))
    }

    pub fn metrics(&self) -> Metrics {
        let n = self.sides as f64;
        let apothem = self.apothem();
        let circumradius = self.circumradius();
        let perimeter = n * self.side_length;
        Metrics {
            apothem,
            circumradius,
            perimeter,
            doubled_area: perimeter * apothem,
            interior_angle: PI * (n - 2.0) / n,
            height: apothem + circumradius,
        }
    }

    /// Signed distance from `p` to the line of edge `e`; negative inside.
    pub fn edge_line_offset(&self, e: usize, p: Vec2) -> f64 {
        p.dot(self.outward_normal(e)) - self.apothem()
    }

    /// True when `p` lies in the closed polygon, up to `eps`.
    pub fn contains(&self, p: Vec2, eps: f64) -> bool {
        (0..self.sides).all(|e| self.edge_line_offset(e, p) <= eps)
    }

    /// Edge location of a boundary point, if `p` lies within `eps` of an
    /// edge (vertices report the edge they start).
    pub fn locate_boundary(&self, p: Vec2, eps: f64) -> Option<(usize, f64)> {
        (0..self.sides).find_map(|e| {
            if self.edge_line_offset(e, p).abs() > eps {
                return None;
            }
            let (a, b) = self.edge(e);
            let u = (p - a).dot(b - a) / self.side_length.powi(2);
            (-eps..=1.0 + eps).contains(&u).then_some((e, u.clamp(0.0, 1.0)))
        })
    }

    /// Nearest point of the closed polygon to `p`.
    pub fn project_inside(&self, p: Vec2) -> Vec2 {
        if self.contains(p, 0.0) {
            return p;
        }
        (0..self.sides)
            .map(|e| {
                let (a, b) = self.edge(e);
                crate::geom::closest_on_segment(p, a, b).0
            })
            .min_by(|x, y| x.distance(p).total_cmp(&y.distance(p)))
            .unwrap_or(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskSurface {
    radius: f64,
}

impl DiskSurface {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidSurface(format!(
                "radius must be positive, got {radius}"
            )));
        }
        Ok(DiskSurface { radius })
    }

    pub fn unit() -> Self {
        DiskSurface { radius: 1.0 }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn boundary_position(&self, angle: f64) -> Vec2 {
        Vec2::from_angle(angle) * self.radius
    }

    pub fn metrics(&self) -> Metrics {
        let r = self.radius;
        Metrics {
            apothem: r,
            circumradius: r,
            perimeter: 2.0 * PI * r,
            doubled_area: 2.0 * PI * r * r,
            interior_angle: PI,
            height: 2.0 * r,
        }
    }

    pub fn contains(&self, p: Vec2, eps: f64) -> bool {
        p.norm() <= self.radius + eps
    }
}

/// Either kind of doubled surface.
#[derive(Clone, Debug, PartialEq)]
pub enum Surface {
    Polygon(PolygonSurface),
    Disk(DiskSurface),
}

impl Surface {
    pub fn metrics(&self) -> Metrics {
        match self {
            Surface::Polygon(p) => p.metrics(),
            Surface::Disk(d) => d.metrics(),
        }
    }

    pub fn as_polygon(&self) -> Option<&PolygonSurface> {
        match self {
            Surface::Polygon(p) => Some(p),
            Surface::Disk(_) => None,
        }
    }

    /// Characteristic length: side length for polygons, radius for the disk.
    pub fn scale(&self) -> f64 {
        match self {
            Surface::Polygon(p) => p.side_length(),
            Surface::Disk(d) => d.radius(),
        }
    }

    pub fn contains(&self, p: Vec2, eps: f64) -> bool {
        match self {
            Surface::Polygon(s) => s.contains(p, eps),
            Surface::Disk(d) => d.contains(p, eps),
        }
    }
}

impl From<PolygonSurface> for Surface {
    fn from(p: PolygonSurface) -> Self {
        Surface::Polygon(p)
    }
}

impl From<DiskSurface> for Surface {
    fn from(d: DiskSurface) -> Self {
        Surface::Disk(d)
    }
}
