//! 2D/3D primitives and the tangent, reflection and intersection
//! constructions the cone families are built from.
//!
//! Lines are stored as a point plus a unit direction. Every construction in
//! this crate is "the line through two named points", so the implicit form is
//! only derived where needed.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{scale_of, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

/// Points and displacements share one representation.
pub type Point2<T> = Vec2<T>;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type Point3<T> = Vec3<T>;

impl<T: Scalar> Vec2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero() && n.is_finite()).then(|| self * n.recip())
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs())
    }
}

impl<T: Scalar> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero() && n.is_finite()).then(|| self * n.recip())
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Some unit vector perpendicular to `self` (assumed unit length).
    pub fn any_perpendicular(self) -> Self {
        let helper = if self.x.abs() <= self.y.abs() && self.x.abs() <= self.z.abs() {
            Self::new(T::one(), T::zero(), T::zero())
        } else if self.y.abs() <= self.z.abs() {
            Self::new(T::zero(), T::one(), T::zero())
        } else {
            Self::new(T::zero(), T::zero(), T::one())
        };
        self.cross(helper)
            .normalized()
            .expect("helper axis is never parallel to a unit vector")
    }
}

macro_rules! impl_vec_ops {
    ($ty:ident { $($f:ident),+ }) => {
        impl<T: Scalar> Add for $ty<T> {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                Self { $($f: self.$f + o.$f),+ }
            }
        }
        impl<T: Scalar> Sub for $ty<T> {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                Self { $($f: self.$f - o.$f),+ }
            }
        }
        impl<T: Scalar> Mul<T> for $ty<T> {
            type Output = Self;
            fn mul(self, k: T) -> Self {
                Self { $($f: self.$f * k),+ }
            }
        }
        impl<T: Scalar> Neg for $ty<T> {
            type Output = Self;
            fn neg(self) -> Self {
                Self { $($f: -self.$f),+ }
            }
        }
    };
}

impl_vec_ops!(Vec2 { x, y });
impl_vec_ops!(Vec3 { x, y, z });

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2<T> {
    pub point: Point2<T>,
    /// Unit length.
    pub direction: Vec2<T>,
}

impl<T: Scalar> Line2<T> {
    /// Panics if `direction` is zero or not finite.
    pub fn new(point: Point2<T>, direction: Vec2<T>) -> Self {
        let direction = direction
            .normalized()
            .expect("line direction must be nonzero and finite");
        Self { point, direction }
    }

    pub fn through(a: Point2<T>, b: Point2<T>) -> Option<Self> {
        (b - a).normalized().map(|direction| Self { point: a, direction })
    }

    pub fn at(&self, t: T) -> Point2<T> {
        self.point + self.direction * t
    }

    pub fn project(&self, p: Point2<T>) -> Point2<T> {
        self.at((p - self.point).dot(self.direction))
    }

    pub fn distance_to(&self, p: Point2<T>) -> T {
        self.direction.cross(p - self.point).abs()
    }

    /// Slope dz/dx; infinite for vertical lines.
    pub fn slope(&self) -> T {
        self.direction.y / self.direction.x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle2<T> {
    pub center: Point2<T>,
    pub radius: T,
}

impl<T: Scalar> Circle2<T> {
    pub fn new(center: Point2<T>, radius: T) -> Result<Self, GeomError<T>> {
        if radius > T::zero() && radius.is_finite() && center.is_finite() {
            Ok(Self { center, radius })
        } else {
            Err(GeomError::InvalidRadius(radius))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line3<T> {
    pub point: Point3<T>,
    pub direction: Vec3<T>,
}

impl<T: Scalar> Line3<T> {
    pub fn new(point: Point3<T>, direction: Vec3<T>) -> Self {
        let direction = direction
            .normalized()
            .expect("line direction must be nonzero and finite");
        Self { point, direction }
    }

    pub fn at(&self, t: T) -> Point3<T> {
        self.point + self.direction * t
    }

    pub fn distance_to(&self, p: Point3<T>) -> T {
        self.direction.cross(p - self.point).norm()
    }
}

/// Orthonormal 2D coordinate frame embedded in a plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneFrame<T> {
    pub origin: Point3<T>,
    pub u: Vec3<T>,
    pub v: Vec3<T>,
}

impl<T: Scalar> PlaneFrame<T> {
    pub fn to_local(&self, p: Point3<T>) -> Point2<T> {
        let d = p - self.origin;
        Vec2::new(d.dot(self.u), d.dot(self.v))
    }

    pub fn to_world(&self, p: Point2<T>) -> Point3<T> {
        self.origin + self.u * p.x + self.v * p.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane3<T> {
    pub point: Point3<T>,
    /// Unit length.
    pub normal: Vec3<T>,
}

impl<T: Scalar> Plane3<T> {
    pub fn new(point: Point3<T>, normal: Vec3<T>) -> Self {
        let normal = normal
            .normalized()
            .expect("plane normal must be nonzero and finite");
        Self { point, normal }
    }

    pub fn signed_distance(&self, p: Point3<T>) -> T {
        (p - self.point).dot(self.normal)
    }

    pub fn project(&self, p: Point3<T>) -> Point3<T> {
        p - self.normal * self.signed_distance(p)
    }

    /// In-plane frame: `u` is the world x-axis projected into the plane (the
    /// y-axis when x is too close to the normal) and `v = normal × u`.
    pub fn frame(&self) -> PlaneFrame<T> {
        let n = self.normal;
        let x = Vec3::new(T::one(), T::zero(), T::zero());
        let y = Vec3::new(T::zero(), T::one(), T::zero());
        let seed = if n.dot(x).abs() < T::lit(0.9) { x } else { y };
        let u = (seed - n * seed.dot(n))
            .normalized()
            .expect("seed axis is not parallel to the normal");
        PlaneFrame {
            origin: self.point,
            u,
            v: n.cross(u),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere3<T> {
    pub center: Point3<T>,
    pub radius: T,
}

/// Circle in space: center, radius and the unit normal of its plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle3<T> {
    pub center: Point3<T>,
    pub radius: T,
    pub normal: Vec3<T>,
}

impl<T: Scalar> Circle3<T> {
    pub fn plane(&self) -> Plane3<T> {
        Plane3::new(self.center, self.normal)
    }

    pub fn point_at(&self, angle: T) -> Point3<T> {
        let u = self.normal.any_perpendicular();
        let v = self.normal.cross(u);
        self.center + (u * angle.cos() + v * angle.sin()) * self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeomError<T: Scalar> {
    #[error("point lies strictly inside the circle")]
    PointInsideCircle,
    /// The single tangent at the point is carried along.
    #[error("point lies on the circle; only one tangent exists")]
    PointOnCircle(Line2<T>),
    #[error("lines are parallel (directions {d1:?} and {d2:?})")]
    ParallelLines { d1: Vec2<T>, d2: Vec2<T> },
    #[error("line is not tangent to the circle (distance {distance}, radius {radius})")]
    NotTangent { distance: T, radius: T },
    #[error("planes are parallel")]
    ParallelPlanes,
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(T),
}

/// Reflects `subject` across `mirror`. Applying it twice is the identity.
pub fn reflect_line_about_line<T: Scalar>(subject: &Line2<T>, mirror: &Line2<T>) -> Line2<T> {
    let m = mirror.direction;
    let reflect = |v: Vec2<T>| m * (T::lit(2.0) * v.dot(m)) - v;
    Line2 {
        point: mirror.point + reflect(subject.point - mirror.point),
        direction: reflect(subject.direction),
    }
}

/// Both tangents to `circle` through the external point `p`, ordered by the
/// signed angle (atan2, in (-π, π]) of their tangency points about the center.
pub fn tangent_lines_from_point<T: Scalar>(
    circle: &Circle2<T>,
    p: Point2<T>,
) -> Result<(Line2<T>, Line2<T>), GeomError<T>> {
    let to_p = p - circle.center;
    let d = to_p.norm();
    let r = circle.radius;
    if (d - r).abs() <= T::boundary_eps() * r {
        return Err(GeomError::PointOnCircle(Line2::new(p, to_p.perp())));
    }
    if d < r {
        return Err(GeomError::PointInsideCircle);
    }
    let base = to_p.y.atan2(to_p.x);
    let spread = (r / d).acos();
    let mut contacts = [base - spread, base + spread].map(|phi| {
        let dir = Vec2::new(phi.cos(), phi.sin());
        circle.center + dir * r
    });
    let angle_of = |q: Point2<T>| {
        let w = q - circle.center;
        w.y.atan2(w.x)
    };
    if angle_of(contacts[0]) > angle_of(contacts[1]) {
        contacts.swap(0, 1);
    }
    // Through p and the contact point when the tangent is long; the radius
    // perpendicular is better conditioned only when p hugs the circle.
    let long_tangent = (d * d - r * r).sqrt() >= r;
    let line = |q: Point2<T>| {
        let mut dir = if long_tangent { q - p } else { (q - circle.center).perp() };
        if dir.dot(q - p) < T::zero() {
            dir = -dir;
        }
        Line2::new(p, dir)
    };
    Ok((line(contacts[0]), line(contacts[1])))
}

/// Intersection of two non-parallel lines. Symmetric in its arguments.
pub fn intersect_lines<T: Scalar>(l1: &Line2<T>, l2: &Line2<T>) -> Result<Point2<T>, GeomError<T>> {
    let (d1, d2) = (l1.direction, l2.direction);
    let denom = d1.cross(d2);
    if denom.abs() <= T::parallel_eps() {
        return Err(GeomError::ParallelLines { d1, d2 });
    }
    let w = l2.point - l1.point;
    let t1 = w.cross(d2) / denom;
    let t2 = w.cross(d1) / denom;
    let half = T::lit(0.5);
    Ok((l1.at(t1) + l2.at(t2)) * half)
}

/// Foot of the perpendicular from the center onto a tangent line.
pub fn tangency_point<T: Scalar>(circle: &Circle2<T>, line: &Line2<T>) -> Result<Point2<T>, GeomError<T>> {
    let distance = line.distance_to(circle.center);
    if (distance - circle.radius).abs() > T::tangency_eps() * circle.radius {
        return Err(GeomError::NotTangent {
            distance,
            radius: circle.radius,
        });
    }
    Ok(line.project(circle.center))
}

/// Line of intersection of two planes.
pub fn intersect_planes<T: Scalar>(p1: &Plane3<T>, p2: &Plane3<T>) -> Result<Line3<T>, GeomError<T>> {
    let (n1, n2) = (p1.normal, p2.normal);
    let dir = n1.cross(n2);
    let len2 = dir.dot(dir);
    if len2.sqrt() <= T::parallel_eps() {
        return Err(GeomError::ParallelPlanes);
    }
    let h1 = n1.dot(p1.point);
    let h2 = n2.dot(p2.point);
    let point = (n2.cross(dir) * h1 + dir.cross(n1) * h2) * len2.recip();
    Ok(Line3::new(point, dir))
}

/// Angle in [0, π/2] between two undirected lines given by unit directions.
pub fn line_angle<T: Scalar>(d1: Vec2<T>, d2: Vec2<T>) -> T {
    d1.cross(d2).abs().atan2(d1.dot(d2).abs())
}

/// `max(1, |coordinates|)` over a set of points.
pub fn point_scale<T: Scalar>(points: &[Point2<T>]) -> T {
    scale_of(points.iter().map(|p| p.max_abs()))
}
