//! Ellipse and hyperbola parameterizations in the canonical frame, the
//! ellipse/hyperbola apex-locus duality, and general second-degree conics.
//!
//! Canonical frame: the ellipse lies in ρ = {z = 0} with its major axis on
//! the x-axis and its center at the origin; the plane τ = {y = 0} holds the
//! cone axes. With `a = (r_a + r_b) / 2` and `c = (r_a - r_b) / 2` the named
//! points are `A = (a, 0)`, `B = (-a, 0)`, `F1 = (-c, 0)` and `F2 = (c, 0)`.

use thiserror::Error;

use crate::geom::{Line2, Line3, Plane3, Point2, Point3, Vec2, Vec3};
use crate::scalar::Scalar;

/// One of the two coordinate planes containing the common axis line `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalPlane {
    /// ρ = {z = 0}; in-plane coordinates (x, y).
    Rho,
    /// τ = {y = 0}; in-plane coordinates (x, z).
    Tau,
}

impl CanonicalPlane {
    pub fn other(self) -> Self {
        match self {
            Self::Rho => Self::Tau,
            Self::Tau => Self::Rho,
        }
    }

    pub fn embed<T: Scalar>(self, p: Point2<T>) -> Point3<T> {
        match self {
            Self::Rho => Vec3::new(p.x, p.y, T::zero()),
            Self::Tau => Vec3::new(p.x, T::zero(), p.y),
        }
    }

    pub fn embed_dir<T: Scalar>(self, d: Vec2<T>) -> Vec3<T> {
        self.embed(d)
    }

    pub fn project<T: Scalar>(self, p: Point3<T>) -> Point2<T> {
        match self {
            Self::Rho => Vec2::new(p.x, p.y),
            Self::Tau => Vec2::new(p.x, p.z),
        }
    }

    /// The plane as a [`Plane3`] whose [`Plane3::frame`] reproduces the
    /// in-plane coordinates above.
    pub fn plane3<T: Scalar>(self) -> Plane3<T> {
        let (o, l) = (T::zero(), T::one());
        match self {
            Self::Rho => Plane3::new(Vec3::zero(), Vec3::new(o, o, l)),
            Self::Tau => Plane3::new(Vec3::zero(), Vec3::new(o, -l, o)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Rho => "rho",
            Self::Tau => "tau",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ConicError {
    #[error("radii must be positive and finite")]
    NonPositiveRadius,
    #[error("focal radii out of order: r_a must be >= r_b")]
    OrderViolation,
    #[error("hyperbola needs 0 < a_h < c_h")]
    InvalidHyperbola,
    #[error("degenerate circle: locus is the axis")]
    DegenerateCircle,
    #[error("conic is degenerate or not a central conic")]
    DegenerateConic,
    #[error("all conic coefficients are zero")]
    ZeroCoefficients,
}

/// Ellipse given by its focal radii `r_a = |F1A|` and `r_b = |F1B|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSpec<T> {
    pub r_a: T,
    pub r_b: T,
    pub plane: CanonicalPlane,
}

pub fn ellipse_from_radii<T: Scalar>(r_a: T, r_b: T) -> Result<EllipseSpec<T>, ConicError> {
    EllipseSpec::from_radii(r_a, r_b)
}

impl<T: Scalar> EllipseSpec<T> {
    pub fn from_radii(r_a: T, r_b: T) -> Result<Self, ConicError> {
        if !(r_a > T::zero() && r_b > T::zero() && r_a.is_finite()) {
            return Err(ConicError::NonPositiveRadius);
        }
        if r_a < r_b {
            return Err(ConicError::OrderViolation);
        }
        Ok(Self {
            r_a,
            r_b,
            plane: CanonicalPlane::Rho,
        })
    }

    pub fn in_plane(self, plane: CanonicalPlane) -> Self {
        Self { plane, ..self }
    }

    /// Semi-major axis.
    pub fn a(&self) -> T {
        (self.r_a + self.r_b) * T::lit(0.5)
    }

    /// Half the focal distance.
    pub fn c(&self) -> T {
        (self.r_a - self.r_b) * T::lit(0.5)
    }

    /// Semi-minor axis, `sqrt(a² - c²) = sqrt(r_a r_b)`.
    pub fn b(&self) -> T {
        (self.r_a * self.r_b).sqrt()
    }

    pub fn eccentricity(&self) -> T {
        (self.r_a - self.r_b) / (self.r_a + self.r_b)
    }

    pub fn is_circle(&self) -> bool {
        self.eccentricity() <= T::boundary_eps()
    }

    pub fn vertex_a(&self) -> Point2<T> {
        Vec2::new(self.a(), T::zero())
    }

    pub fn vertex_b(&self) -> Point2<T> {
        Vec2::new(-self.a(), T::zero())
    }

    pub fn focus1(&self) -> Point2<T> {
        Vec2::new(-self.c(), T::zero())
    }

    pub fn focus2(&self) -> Point2<T> {
        Vec2::new(self.c(), T::zero())
    }

    pub fn center(&self) -> Point2<T> {
        Vec2::zero()
    }

    pub fn point_at(&self, angle: T) -> Point2<T> {
        Vec2::new(self.a() * angle.cos(), self.b() * angle.sin())
    }
}

/// Hyperbola with semi-transverse axis `a_h` and semi-focal distance `c_h`,
/// centered at the origin with its foci on the x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolaSpec<T> {
    pub a_h: T,
    pub c_h: T,
    pub plane: CanonicalPlane,
}

impl<T: Scalar> HyperbolaSpec<T> {
    /// A standalone hyperbola is placed in τ, so that the apexes of its
    /// generating cones land in ρ.
    pub fn new(a_h: T, c_h: T) -> Result<Self, ConicError> {
        if !(a_h > T::zero() && c_h > a_h && c_h.is_finite()) {
            return Err(ConicError::InvalidHyperbola);
        }
        Ok(Self {
            a_h,
            c_h,
            plane: CanonicalPlane::Tau,
        })
    }

    pub fn in_plane(self, plane: CanonicalPlane) -> Self {
        Self { plane, ..self }
    }

    pub fn b_h(&self) -> T {
        ((self.c_h - self.a_h) * (self.c_h + self.a_h)).sqrt()
    }

    pub fn eccentricity(&self) -> T {
        self.c_h / self.a_h
    }

    /// Focus on the positive side (point A of the dual ellipse).
    pub fn focus_a(&self) -> Point2<T> {
        Vec2::new(self.c_h, T::zero())
    }

    /// Focus on the negative side (point B).
    pub fn focus_b(&self) -> Point2<T> {
        Vec2::new(-self.c_h, T::zero())
    }

    /// Vertex on the negative side (F1 of the dual ellipse).
    pub fn vertex_f1(&self) -> Point2<T> {
        Vec2::new(-self.a_h, T::zero())
    }

    /// Vertex on the positive side (F2).
    pub fn vertex_f2(&self) -> Point2<T> {
        Vec2::new(self.a_h, T::zero())
    }

    /// Tangent lengths `(r_a, r_b) = (c_h + a_h, c_h - a_h)` from F1 to the
    /// two foci.
    pub fn focal_radii(&self) -> (T, T) {
        (self.c_h + self.a_h, self.c_h - self.a_h)
    }

    pub fn point_at(&self, t: T, right_branch: bool) -> Point2<T> {
        let x = self.a_h * t.cosh();
        let x = if right_branch { x } else { -x };
        Vec2::new(x, self.b_h() * t.sinh())
    }
}

/// Result of the ellipse apex locus. A circle has no hyperbola: its cones
/// all have their apex on the line through the center perpendicular to ρ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EllipseApexLocus<T> {
    Hyperbola(HyperbolaSpec<T>),
    Axis(Line3<T>),
}

impl<T: Scalar> EllipseApexLocus<T> {
    pub fn hyperbola(self) -> Result<HyperbolaSpec<T>, ConicError> {
        match self {
            Self::Hyperbola(h) => Ok(h),
            Self::Axis(_) => Err(ConicError::DegenerateCircle),
        }
    }
}

/// Apexes of the cones cutting `e` trace a hyperbola with foci at the
/// ellipse's vertices and vertices at its foci, in the perpendicular plane.
pub fn vertex_locus_hyperbola<T: Scalar>(e: &EllipseSpec<T>) -> EllipseApexLocus<T> {
    if e.is_circle() {
        let up = e.plane.other().embed(Vec2::new(T::zero(), T::one()));
        return EllipseApexLocus::Axis(Line3::new(Vec3::zero(), up));
    }
    EllipseApexLocus::Hyperbola(HyperbolaSpec {
        a_h: e.c(),
        c_h: e.a(),
        plane: e.plane.other(),
    })
}

/// Apexes of the cones cutting `h` trace an ellipse with foci at the
/// hyperbola's vertices and vertices at its foci.
pub fn vertex_locus_ellipse<T: Scalar>(h: &HyperbolaSpec<T>) -> EllipseSpec<T> {
    let (r_a, r_b) = h.focal_radii();
    EllipseSpec {
        r_a,
        r_b,
        plane: h.plane.other(),
    }
}

/// Implicit-equation membership in a curve's own 2D coordinates.
pub trait ImplicitCurve<T: Scalar> {
    /// Canonical residual: zero iff `p` is on the curve.
    fn implicit_residual(&self, p: Point2<T>) -> T;

    /// Magnitude of the largest term summed in [`Self::implicit_residual`]
    /// (at least one); the rounding error of the residual scales with it.
    fn residual_scale(&self, p: Point2<T>) -> T;
}

impl<T: Scalar> ImplicitCurve<T> for EllipseSpec<T> {
    fn implicit_residual(&self, p: Point2<T>) -> T {
        let (a, b) = (self.a(), self.b());
        (p.x / a).powi(2) + (p.y / b).powi(2) - T::one()
    }

    fn residual_scale(&self, p: Point2<T>) -> T {
        T::one().max((p.x / self.a()).powi(2)).max((p.y / self.b()).powi(2))
    }
}

impl<T: Scalar> ImplicitCurve<T> for HyperbolaSpec<T> {
    fn implicit_residual(&self, p: Point2<T>) -> T {
        (p.x / self.a_h).powi(2) - (p.y / self.b_h()).powi(2) - T::one()
    }

    fn residual_scale(&self, p: Point2<T>) -> T {
        T::one().max((p.x / self.a_h).powi(2)).max((p.y / self.b_h()).powi(2))
    }
}

impl<T: Scalar> ImplicitCurve<T> for Conic2General<T> {
    fn implicit_residual(&self, p: Point2<T>) -> T {
        self.terms(p).iter().fold(T::zero(), |acc, &t| acc + t)
    }

    fn residual_scale(&self, p: Point2<T>) -> T {
        self.terms(p).iter().fold(T::one(), |acc, t| acc.max(t.abs()))
    }
}

/// Either of the two curves the cone families are built for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConicSpec<T> {
    Ellipse(EllipseSpec<T>),
    Hyperbola(HyperbolaSpec<T>),
}

impl<T: Scalar> ConicSpec<T> {
    pub fn plane(&self) -> CanonicalPlane {
        match self {
            Self::Ellipse(e) => e.plane,
            Self::Hyperbola(h) => h.plane,
        }
    }

    pub fn kind(&self) -> ConicKind {
        match self {
            Self::Ellipse(_) => ConicKind::Ellipse,
            Self::Hyperbola(_) => ConicKind::Hyperbola,
        }
    }

    pub fn foci(&self) -> [Point2<T>; 2] {
        match self {
            Self::Ellipse(e) => [e.focus1(), e.focus2()],
            Self::Hyperbola(h) => [h.focus_b(), h.focus_a()],
        }
    }

    pub fn vertices(&self) -> [Point2<T>; 2] {
        match self {
            Self::Ellipse(e) => [e.vertex_b(), e.vertex_a()],
            Self::Hyperbola(h) => [h.vertex_f1(), h.vertex_f2()],
        }
    }

    /// `max(1, semi-major or semi-focal length)`.
    pub fn scale(&self) -> T {
        match self {
            Self::Ellipse(e) => T::one().max(e.a()),
            Self::Hyperbola(h) => T::one().max(h.c_h),
        }
    }
}

impl<T: Scalar> ImplicitCurve<T> for ConicSpec<T> {
    fn implicit_residual(&self, p: Point2<T>) -> T {
        match self {
            Self::Ellipse(e) => e.implicit_residual(p),
            Self::Hyperbola(h) => h.implicit_residual(p),
        }
    }

    fn residual_scale(&self, p: Point2<T>) -> T {
        match self {
            Self::Ellipse(e) => e.residual_scale(p),
            Self::Hyperbola(h) => h.residual_scale(p),
        }
    }
}

/// Two asymptotes through the center, positive slope first.
pub fn asymptotes<T: Scalar>(h: &HyperbolaSpec<T>) -> (Line2<T>, Line2<T>) {
    let o = Vec2::zero();
    (
        Line2::new(o, Vec2::new(h.a_h, h.b_h())),
        Line2::new(o, Vec2::new(h.a_h, -h.b_h())),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    Parabola,
    DegeneratePair,
    DegeneratePoint,
    Empty,
}

/// `A x² + B xy + C y² + D x + E y + F = 0`, scaled so that the
/// largest-magnitude coefficient is exactly 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic2General<T> {
    coeffs: [T; 6],
    kind: ConicKind,
}

impl<T: Scalar> Conic2General<T> {
    pub fn from_coefficients(raw: [T; 6]) -> Result<Self, ConicError> {
        let pivot = raw
            .iter()
            .copied()
            .fold(T::zero(), |m, c| if c.abs() > m.abs() { c } else { m });
        if pivot == T::zero() || !pivot.is_finite() {
            return Err(ConicError::ZeroCoefficients);
        }
        let coeffs = raw.map(|c| c / pivot);
        Ok(Self {
            coeffs,
            kind: classify_coefficients(&coeffs),
        })
    }

    pub fn coefficients(&self) -> [T; 6] {
        self.coeffs
    }

    pub fn kind(&self) -> ConicKind {
        self.kind
    }

    /// `B² - 4AC`.
    pub fn discriminant(&self) -> T {
        discriminant(&self.coeffs)
    }

    /// Determinant of the symmetric 3×3 conic matrix.
    pub fn determinant(&self) -> T {
        determinant(&self.coeffs)
    }

    fn terms(&self, p: Point2<T>) -> [T; 6] {
        let [a, b, c, d, e, f] = self.coeffs;
        [a * p.x * p.x, b * p.x * p.y, c * p.y * p.y, d * p.x, e * p.y, f]
    }

    /// Euclidean distance between normalized coefficient vectors, taken up
    /// to an overall sign.
    pub fn coefficient_distance(&self, other: &Self) -> T {
        let dist = |sign: T| {
            self.coeffs
                .iter()
                .zip(other.coeffs.iter())
                .fold(T::zero(), |acc, (&p, &q)| acc + (p - sign * q).powi(2))
                .sqrt()
        };
        dist(T::one()).min(dist(-T::one()))
    }
}

fn discriminant<T: Scalar>(k: &[T; 6]) -> T {
    k[1] * k[1] - T::lit(4.0) * k[0] * k[2]
}

fn determinant<T: Scalar>(k: &[T; 6]) -> T {
    let [a, b, c, d, e, f] = *k;
    let h = T::lit(0.5);
    let (b, d, e) = (b * h, d * h, e * h);
    a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d)
}

fn classify_coefficients<T: Scalar>(k: &[T; 6]) -> ConicKind {
    let eps = T::classify_eps();
    let disc = discriminant(k);
    let det = determinant(k);
    if k[..3].iter().all(|c| c.abs() <= eps) {
        return ConicKind::DegeneratePair;
    }
    if det.abs() <= eps {
        return if disc < -eps {
            ConicKind::DegeneratePoint
        } else {
            ConicKind::DegeneratePair
        };
    }
    if disc < -eps {
        if (k[0] + k[2]) * det < T::zero() {
            ConicKind::Ellipse
        } else {
            ConicKind::Empty
        }
    } else if disc > eps {
        ConicKind::Hyperbola
    } else {
        ConicKind::Parabola
    }
}

pub fn classify_conic<T: Scalar>(g: &Conic2General<T>) -> ConicKind {
    g.kind()
}

/// Center, axes, foci and vertices of a central conic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicGeometry<T> {
    pub kind: ConicKind,
    pub center: Point2<T>,
    /// Unit direction of the major (ellipse) or transverse (hyperbola) axis,
    /// oriented towards +x (or +y when the axis is vertical).
    pub major_axis: Vec2<T>,
    pub minor_axis: Vec2<T>,
    /// (major or transverse, minor or conjugate).
    pub semi_axes: (T, T),
    /// Ordered along `major_axis`.
    pub foci: [Point2<T>; 2],
    pub vertices: [Point2<T>; 2],
    pub eccentricity: T,
}

impl<T: Scalar> ConicGeometry<T> {
    /// Rebuilds the normalized general-form coefficients.
    pub fn to_general(&self) -> Result<Conic2General<T>, ConicError> {
        let (alpha, beta) = self.semi_axes;
        let p = alpha.powi(-2);
        let q = match self.kind {
            ConicKind::Hyperbola => -beta.powi(-2),
            _ => beta.powi(-2),
        };
        let (u, v, c) = (self.major_axis, self.minor_axis, self.center);
        let q11 = p * u.x * u.x + q * v.x * v.x;
        let q12 = p * u.x * u.y + q * v.x * v.y;
        let q22 = p * u.y * u.y + q * v.y * v.y;
        let two = T::lit(2.0);
        Conic2General::from_coefficients([
            q11,
            two * q12,
            q22,
            -two * (q11 * c.x + q12 * c.y),
            -two * (q12 * c.x + q22 * c.y),
            q11 * c.x * c.x + two * q12 * c.x * c.y + q22 * c.y * c.y - T::one(),
        ])
    }

    /// Point on the curve in the conic's own parameterization: the angle for
    /// ellipses, the hyperbolic parameter for hyperbolas (sign of `branch`
    /// picks the branch).
    pub fn point_at(&self, t: T, branch: T) -> Point2<T> {
        let (alpha, beta) = self.semi_axes;
        let (x, y) = match self.kind {
            ConicKind::Hyperbola => (branch.signum() * alpha * t.cosh(), beta * t.sinh()),
            _ => (alpha * t.cos(), beta * t.sin()),
        };
        self.center + self.major_axis * x + self.minor_axis * y
    }
}

pub fn canonicalize_conic<T: Scalar>(g: &Conic2General<T>) -> Result<ConicGeometry<T>, ConicError> {
    let kind = g.kind();
    if !matches!(kind, ConicKind::Ellipse | ConicKind::Hyperbola) {
        return Err(ConicError::DegenerateConic);
    }
    let [a, b, c, d, e, f] = g.coefficients();
    let h = T::lit(0.5);
    let det2 = a * c - b * b * T::lit(0.25);
    let center = Vec2::new(
        (b * e * T::lit(0.25) - c * d * h) / det2,
        (b * d * T::lit(0.25) - a * e * h) / det2,
    );
    let f0 = f + (d * center.x + e * center.y) * h;

    let theta = b.atan2(a - c) * h;
    let (s, co) = theta.sin_cos();
    let mut u = Vec2::new(co, s);
    let lambda_u = a * co * co + b * co * s + c * s * s;
    let lambda_v = a * s * s - b * s * co + c * co * co;
    let (su, sv) = (-f0 / lambda_u, -f0 / lambda_v);

    let (major_sq, minor_sq, swap) = match kind {
        ConicKind::Ellipse => {
            if su <= T::zero() || sv <= T::zero() {
                return Err(ConicError::DegenerateConic);
            }
            if su >= sv {
                (su, sv, false)
            } else {
                (sv, su, true)
            }
        }
        _ => {
            if su > T::zero() && sv < T::zero() {
                (su, -sv, false)
            } else if sv > T::zero() && su < T::zero() {
                (sv, -su, true)
            } else {
                return Err(ConicError::DegenerateConic);
            }
        }
    };
    if swap {
        u = u.perp();
    }
    if u.x < -T::boundary_eps() || (u.x.abs() <= T::boundary_eps() && u.y < T::zero()) {
        u = -u;
    }
    let (alpha, beta) = (major_sq.sqrt(), minor_sq.sqrt());
    let focal = match kind {
        ConicKind::Ellipse => (major_sq - minor_sq).max(T::zero()).sqrt(),
        _ => (major_sq + minor_sq).sqrt(),
    };
    Ok(ConicGeometry {
        kind,
        center,
        major_axis: u,
        minor_axis: u.perp(),
        semi_axes: (alpha, beta),
        foci: [center - u * focal, center + u * focal],
        vertices: [center - u * alpha, center + u * alpha],
        eccentricity: focal / alpha,
    })
}
