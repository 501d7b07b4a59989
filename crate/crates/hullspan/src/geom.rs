//! Numeric kernel: points, planes, tolerances, angles, circumcircles, and
//! the unfolding rotation used by every higher module.
//!
//! All predicates are tolerance-banded: a signed result of zero means "within
//! the zero band", never a silently chosen side. Callers decide what to do
//! with degenerate answers.

use crate::error::{Error, Result};

/// Absolute/relative tolerance pair used by every banded predicate.
///
/// `eps_abs` is an absolute slack for quantities at model scale (lengths,
/// margins); `eps_rel` scales with the magnitude of the inputs and drives
/// the zero band of the sign predicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_abs: 1e-9,
            eps_rel: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self> {
        let ok = |e: f64| e > 0.0 && e < 1.0;
        if !ok(eps_abs) || !ok(eps_rel) {
            return Err(Error::InvalidInput(format!(
                "tolerances must lie in (0, 1): eps_abs={eps_abs}, eps_rel={eps_rel}"
            )));
        }
        Ok(Tolerance { eps_abs, eps_rel })
    }

    /// Additive slack for comparing quantities of the given magnitude.
    #[inline]
    pub fn band(&self, scale: f64) -> f64 {
        self.eps_abs + self.eps_rel * scale.abs()
    }
}

/// Side of a directed edge, looking along the edge direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dist(&self, other: Point2) -> f64 {
        (*self - other).norm()
    }
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(&self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product; positive when `o` is ccw of `self`.
    #[inline]
    pub fn cross(&self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.dot(*self).sqrt()
    }

    /// Counterclockwise perpendicular.
    #[inline]
    pub fn perp(&self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn normalized(&self) -> Result<Vec2> {
        let n = self.norm();
        if n < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::InvalidInput("cannot normalize zero vector".into()));
        }
        Ok(Vec2::new(self.x / n, self.y / n))
    }
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn dist(&self, other: Point3) -> f64 {
        (*self - other).norm()
    }

    /// Distance to the origin.
    #[inline]
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    #[inline]
    pub fn to_vec(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(&self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(&self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.dot(*self).sqrt()
    }

    pub fn normalized(&self) -> Result<Vec3> {
        let n = self.norm();
        if n < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::InvalidInput("cannot normalize zero vector".into()));
        }
        Ok(Vec3::new(self.x / n, self.y / n, self.z / n))
    }
}

macro_rules! impl_point_ops {
    ($point:ident, $vec:ident, [$($c:ident),+]) => {
        impl std::ops::Sub for $point {
            type Output = $vec;
            #[inline]
            fn sub(self, o: $point) -> $vec {
                $vec { $($c: self.$c - o.$c),+ }
            }
        }
        impl std::ops::Add<$vec> for $point {
            type Output = $point;
            #[inline]
            fn add(self, o: $vec) -> $point {
                $point { $($c: self.$c + o.$c),+ }
            }
        }
        impl std::ops::Sub<$vec> for $point {
            type Output = $point;
            #[inline]
            fn sub(self, o: $vec) -> $point {
                $point { $($c: self.$c - o.$c),+ }
            }
        }
        impl std::ops::Add for $vec {
            type Output = $vec;
            #[inline]
            fn add(self, o: $vec) -> $vec {
                $vec { $($c: self.$c + o.$c),+ }
            }
        }
        impl std::ops::Sub for $vec {
            type Output = $vec;
            #[inline]
            fn sub(self, o: $vec) -> $vec {
                $vec { $($c: self.$c - o.$c),+ }
            }
        }
        impl std::ops::Mul<f64> for $vec {
            type Output = $vec;
            #[inline]
            fn mul(self, s: f64) -> $vec {
                $vec { $($c: self.$c * s),+ }
            }
        }
        impl std::ops::Neg for $vec {
            type Output = $vec;
            #[inline]
            fn neg(self) -> $vec {
                $vec { $($c: -self.$c),+ }
            }
        }
    };
}

impl_point_ops!(Point2, Vec2, [x, y]);
impl_point_ops!(Point3, Vec3, [x, y, z]);

/// Oriented plane `{ v : n·v = d }` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub normal: Vec3,
    pub offset: f64,
}

impl Plane {
    /// Builds a plane from a (not necessarily unit) normal and a point on it.
    pub fn from_normal_point(normal: Vec3, point: Point3) -> Result<Plane> {
        let n = normal.normalized()?;
        Ok(Plane {
            normal: n,
            offset: n.dot(point.to_vec()),
        })
    }

    #[inline]
    pub fn signed_distance(&self, p: Point3) -> f64 {
        self.normal.dot(p.to_vec()) - self.offset
    }
}

/// Sign of the signed volume of tetrahedron `abcd`, with a zero band scaled
/// by the magnitude of the determinant terms. `+1` means `d` lies on the
/// side pointed to by the right-handed normal of triangle `abc`.
pub fn orientation3d(a: Point3, b: Point3, c: Point3, d: Point3, tol: Tolerance) -> Result<i8> {
    for p in [a, b, c, d] {
        if !p.is_finite() {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
    }
    let u = b - a;
    let v = c - a;
    let w = d - a;
    let det = (u.y * v.z - u.z * v.y) * w.x
        + (u.z * v.x - u.x * v.z) * w.y
        + (u.x * v.y - u.y * v.x) * w.z;
    // Zero band scaled by the edge-length product: |det| / (|u||v||w|) is a
    // sine-like thinness measure, so the band flags geometric coplanarity
    // rather than raw floating-point cancellation.
    let mag = u.norm() * v.norm() * w.norm();
    if det.abs() <= tol.eps_rel * mag {
        return Ok(0);
    }
    Ok(if det > 0.0 { 1 } else { -1 })
}

/// Sign of the z-component of `(b-a) x (c-a)`: `+1` when `abc` turns
/// counterclockwise, with the same relative zero band as [`orientation3d`].
pub fn orientation2d(a: Point2, b: Point2, c: Point2, tol: Tolerance) -> Result<i8> {
    for p in [a, b, c] {
        if !p.is_finite() {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
    }
    let u = b - a;
    let v = c - a;
    let det = u.x * v.y - u.y * v.x;
    let mag = u.norm() * v.norm();
    if det.abs() <= tol.eps_rel * mag {
        return Ok(0);
    }
    Ok(if det > 0.0 { 1 } else { -1 })
}

/// Center and radius of the circle through three non-collinear points.
pub fn circumcircle2d(a: Point2, b: Point2, c: Point2, tol: Tolerance) -> Result<(Point2, f64)> {
    if orientation2d(a, b, c, tol)? == 0 {
        return Err(Error::Degenerate(
            "circumcircle of collinear points".into(),
        ));
    }
    let u = b - a;
    let v = c - a;
    let u2 = u.dot(u);
    let v2 = v.dot(v);
    let det = 2.0 * u.cross(v);
    let cx = (v.y * u2 - u.y * v2) / det;
    let cy = (u.x * v2 - v.x * u2) / det;
    let center = a + Vec2::new(cx, cy);
    Ok((center, Vec2::new(cx, cy).norm()))
}

fn angle_from_cos(dot: f64, nu: f64, nv: f64) -> Result<f64> {
    if nu < f64::MIN_POSITIVE.sqrt() || nv < f64::MIN_POSITIVE.sqrt() {
        return Err(Error::InvalidInput("zero-length ray in angle".into()));
    }
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0).acos())
}

/// Angle in `[0, pi]` between the rays `apex -> u` and `apex -> v`.
pub fn angle_at2(apex: Point2, u: Point2, v: Point2) -> Result<f64> {
    let a = u - apex;
    let b = v - apex;
    angle_from_cos(a.dot(b), a.norm(), b.norm())
}

/// Angle in `[0, pi]` between the rays `apex -> u` and `apex -> v`.
pub fn angle_at3(apex: Point3, u: Point3, v: Point3) -> Result<f64> {
    let a = u - apex;
    let b = v - apex;
    angle_from_cos(a.dot(b), a.norm(), b.norm())
}

/// Rotates the 3D point `w` into the plane of `edge2d`, given that `edge3d`
/// maps isometrically onto `edge2d`. Returns the unique planar point with
/// `|w' - e0| = |w - E0|` and `|w' - e1| = |w - E1|` on the requested side of
/// the directed 2D edge.
pub fn unfold_point(
    edge2d: (Point2, Point2),
    edge3d: (Point3, Point3),
    w: Point3,
    side: Side,
    tol: Tolerance,
) -> Result<Point2> {
    let l2 = edge2d.1 - edge2d.0;
    let len2 = l2.norm();
    let len3 = edge3d.0.dist(edge3d.1);
    if (len2 - len3).abs() > tol.eps_abs + tol.eps_rel * len3.max(len2) {
        return Err(Error::InvalidInput(format!(
            "edge lengths differ: 2d {len2} vs 3d {len3}"
        )));
    }
    if len2 < f64::MIN_POSITIVE.sqrt() {
        return Err(Error::Degenerate("zero-length unfolding edge".into()));
    }
    let d0 = w.dist(edge3d.0);
    let d1 = w.dist(edge3d.1);
    // Coordinates of w along and across the edge axis.
    let t = (d0 * d0 - d1 * d1 + len2 * len2) / (2.0 * len2);
    let h2 = d0 * d0 - t * t;
    let h = h2.max(0.0).sqrt();
    if h <= tol.eps_abs + tol.eps_rel * len2 {
        return Err(Error::Degenerate("point lies on the edge line".into()));
    }
    let axis = l2 * (1.0 / len2);
    let normal = match side {
        Side::Left => axis.perp(),
        Side::Right => -axis.perp(),
    };
    Ok(edge2d.0 + axis * t + normal * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    const P3: fn(f64, f64, f64) -> Point3 = Point3::new;
    const P2: fn(f64, f64) -> Point2 = Point2::new;

    #[test]
    fn orientation3d_unit_tetrahedron() {
        let tol = Tolerance::default();
        let o = P3(0.0, 0.0, 0.0);
        assert_eq!(
            orientation3d(o, P3(1.0, 0.0, 0.0), P3(0.0, 1.0, 0.0), P3(0.0, 0.0, 1.0), tol)
                .unwrap(),
            1
        );
        assert_eq!(
            orientation3d(o, P3(1.0, 0.0, 0.0), P3(0.0, 1.0, 0.0), P3(1.0, 1.0, 0.0), tol)
                .unwrap(),
            0
        );
        assert_eq!(
            orientation3d(o, P3(1.0, 0.0, 0.0), P3(0.0, 1.0, 0.0), P3(0.0, 0.0, -1.0), tol)
                .unwrap(),
            -1
        );
    }

    #[test]
    fn orientation3d_rejects_non_finite() {
        let tol = Tolerance::default();
        let e = orientation3d(
            P3(f64::NAN, 0.0, 0.0),
            P3(1.0, 0.0, 0.0),
            P3(0.0, 1.0, 0.0),
            P3(0.0, 0.0, 1.0),
            tol,
        );
        assert!(matches!(e, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn circumcircle_symmetric_unit() {
        let (c, r) =
            circumcircle2d(P2(1.0, 0.0), P2(-1.0, 0.0), P2(0.0, 1.0), Tolerance::default())
                .unwrap();
        assert_relative_eq!(c.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.y, 0.0, epsilon = 1e-12);
        assert_relative_eq!(r, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn circumcircle_hand_solved() {
        // Perpendicular bisectors of (0,0)-(2,0) and (0,0)-(1,1) meet at (1,0).
        let (c, r) =
            circumcircle2d(P2(0.0, 0.0), P2(2.0, 0.0), P2(1.0, 1.0), Tolerance::default())
                .unwrap();
        assert_relative_eq!(c.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(c.y, 0.0, epsilon = 1e-12);
        assert_relative_eq!(r, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn circumcircle_collinear_within_tolerance() {
        let e = circumcircle2d(
            P2(0.0, 0.0),
            P2(1.0, 0.0),
            P2(0.5, 1e-15),
            Tolerance::default(),
        );
        assert!(matches!(e, Err(Error::Degenerate(_))));
    }

    #[test]
    fn angles() {
        let o2 = P2(0.0, 0.0);
        assert_relative_eq!(
            angle_at2(o2, P2(1.0, 0.0), P2(0.0, 1.0)).unwrap(),
            FRAC_PI_2
        );
        assert_relative_eq!(angle_at2(o2, P2(1.0, 0.0), P2(-1.0, 0.0)).unwrap(), PI);
        assert_relative_eq!(
            angle_at3(P3(0.0, 0.0, 0.0), P3(1.0, 1.0, 0.0), P3(1.0, 0.0, 0.0)).unwrap(),
            FRAC_PI_4
        );
        assert!(matches!(
            angle_at2(o2, o2, P2(1.0, 0.0)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn unfold_identity_embedding() {
        let w = unfold_point(
            (P2(0.0, 0.0), P2(1.0, 0.0)),
            (P3(0.0, 0.0, 0.0), P3(1.0, 0.0, 0.0)),
            P3(0.0, 1.0, 0.0),
            Side::Left,
            Tolerance::default(),
        )
        .unwrap();
        assert_relative_eq!(w.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(w.y, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn unfold_rotation_preserves_distances() {
        let w = unfold_point(
            (P2(0.0, 0.0), P2(1.0, 0.0)),
            (P3(0.0, 0.0, 0.0), P3(1.0, 0.0, 0.0)),
            P3(0.0, 0.0, 1.0),
            Side::Left,
            Tolerance::default(),
        )
        .unwrap();
        assert_relative_eq!(w.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(w.y, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn unfold_length_mismatch() {
        let e = unfold_point(
            (P2(0.0, 0.0), P2(2.0, 0.0)),
            (P3(0.0, 0.0, 0.0), P3(1.0, 0.0, 0.0)),
            P3(0.0, 0.0, 1.0),
            Side::Left,
            Tolerance::default(),
        );
        assert!(matches!(e, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn unfold_right_side() {
        let w = unfold_point(
            (P2(0.0, 0.0), P2(1.0, 0.0)),
            (P3(0.0, 0.0, 0.0), P3(1.0, 0.0, 0.0)),
            P3(0.5, 0.3, 0.4),
            Side::Right,
            Tolerance::default(),
        )
        .unwrap();
        assert!(w.y < 0.0);
        assert_relative_eq!(w.dist(P2(0.0, 0.0)), P3(0.5, 0.3, 0.4).norm(), epsilon = 1e-12);
    }
}
