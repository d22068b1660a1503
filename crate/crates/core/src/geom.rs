//! Small planar vector and isometry helpers.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit vector at `angle` radians from the positive x axis.
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Vec2::new(c, s)
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Counterclockwise rotation by `angle` radians.
    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn lerp(self, other: Vec2, t: f64) -> Vec2 {
        self + (other - self) * t
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Reflect a direction across a line with unit direction `axis`.
pub fn reflect_direction(dir: Vec2, axis: Vec2) -> Vec2 {
    axis * (2.0 * dir.dot(axis)) - dir
}

/// Closest point to `p` on the segment `[a, b]`, with its parameter.
pub fn closest_on_segment(p: Vec2, a: Vec2, b: Vec2) -> (Vec2, f64) {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return (a, 0.0);
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    (a + ab * t, t)
}

/// A planar isometry `x ↦ linear·x + offset`, stored as a 2x2 matrix in
/// row-major order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    m: [f64; 4],
    offset: Vec2,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        m: [1.0, 0.0, 0.0, 1.0],
        offset: Vec2::ZERO,
    };

    /// Reflection across the line through `p` and `q`.
    pub fn reflection(p: Vec2, q: Vec2) -> Isometry {
        let u = (q - p).normalized();
        let m = [
            2.0 * u.x * u.x - 1.0,
            2.0 * u.x * u.y,
            2.0 * u.x * u.y,
            2.0 * u.y * u.y - 1.0,
        ];
        let lin = Isometry { m, offset: Vec2::ZERO };
        let offset = p - lin.apply_linear(p);
        Isometry { m, offset }
    }

    pub fn apply_linear(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0] * v.x + self.m[1] * v.y,
            self.m[2] * v.x + self.m[3] * v.y,
        )
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        self.apply_linear(v) + self.offset
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Isometry) -> Isometry {
        let a = &self.m;
        let b = &inner.m;
        let m = [
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ];
        Isometry {
            m,
            offset: self.apply_linear(inner.offset) + self.offset,
        }
    }

    pub fn inverse(&self) -> Isometry {
        // orthogonal linear part: inverse is the transpose
        let m = [self.m[0], self.m[2], self.m[1], self.m[3]];
        let lin = Isometry { m, offset: Vec2::ZERO };
        Isometry {
            m,
            offset: -lin.apply_linear(self.offset),
        }
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.m[0] * self.m[3] - self.m[1] * self.m[2] > 0.0
    }
}
