//! Cone families generating a given ellipse or hyperbola.
//!
//! Each construction is planar. For an ellipse in ρ it is drawn in τ: a
//! circle of radius `r` touching the major axis at the chosen focus, the
//! tangents to it from the two ellipse vertices, and their intersection as
//! the apex. For a hyperbola in τ it is drawn in ρ with two circles touching
//! the axis at the hyperbola's foci and tangents through its vertices. The
//! circles lift to Dandelin spheres; the tangents are element lines.

use thiserror::Error;

use crate::conic::{
    asymptotes, vertex_locus_ellipse, vertex_locus_hyperbola, CanonicalPlane, ConicError,
    ConicSpec, EllipseApexLocus, EllipseSpec, HyperbolaSpec, ImplicitCurve,
};
use crate::geom::{
    intersect_lines, line_angle, tangency_point, tangent_lines_from_point, Circle2, Circle3,
    GeomError, Line2, Line3, Plane3, Point2, Point3, Sphere3, Vec2, Vec3,
};
use crate::scalar::{scale_of, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ConeError<T: Scalar> {
    #[error("radius {radius} out of range (0, {max}]")]
    RadiusOutOfRange { radius: T, max: T },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(T),
    #[error("half-angle must lie strictly inside (0, pi/2), got {0}")]
    InvalidHalfAngle(T),
    #[error("section is not an ellipse; there is no second Dandelin sphere")]
    NoSecondSphere,
    #[error("sphere is not inscribed in the cone")]
    SphereNotInscribed,
    #[error("generator is a cylinder; the apex is at infinity")]
    ApexAtInfinity,
    #[error(transparent)]
    Geom(#[from] GeomError<T>),
    #[error(transparent)]
    Conic(#[from] ConicError),
}

/// Right circular double cone
/// `{p : ((p - apex)·axis)² = cos²(half_angle) |p - apex|²}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cone3<T> {
    pub apex: Point3<T>,
    /// Unit length.
    pub axis: Vec3<T>,
    pub half_angle: T,
}

impl<T: Scalar> Cone3<T> {
    pub fn new(apex: Point3<T>, axis: Vec3<T>, half_angle: T) -> Result<Self, ConeError<T>> {
        if !(half_angle > T::zero() && half_angle < T::FRAC_PI_2()) {
            return Err(ConeError::InvalidHalfAngle(half_angle));
        }
        let axis = axis.normalized().ok_or(ConeError::InvalidHalfAngle(half_angle))?;
        Ok(Self {
            apex,
            axis,
            half_angle,
        })
    }

    /// Orthonormal pair spanning the plane perpendicular to the axis.
    pub fn basis(&self) -> (Vec3<T>, Vec3<T>) {
        let u = self.axis.any_perpendicular();
        (u, self.axis.cross(u))
    }

    /// Unit direction of the element line at `azimuth` around the axis.
    pub fn element_direction(&self, azimuth: T) -> Vec3<T> {
        let (u, v) = self.basis();
        let (s, c) = self.half_angle.sin_cos();
        self.axis * c + (u * azimuth.cos() + v * azimuth.sin()) * s
    }

    pub fn element_line(&self, azimuth: T) -> Line3<T> {
        Line3::new(self.apex, self.element_direction(azimuth))
    }
}

/// The member of the family at `r = r_max`: the apex has gone to infinity
/// and the element lines are parallel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderLimit<T> {
    pub axis: Line3<T>,
    pub radius: T,
}

impl<T: Scalar> CylinderLimit<T> {
    pub fn element_line(&self, azimuth: T) -> Line3<T> {
        let u = self.axis.direction.any_perpendicular();
        let v = self.axis.direction.cross(u);
        let offset = (u * azimuth.cos() + v * azimuth.sin()) * self.radius;
        Line3::new(self.axis.point + offset, self.axis.direction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator<T> {
    Cone(Cone3<T>),
    Cylinder(CylinderLimit<T>),
}

impl<T: Scalar> Generator<T> {
    pub fn axis_direction(&self) -> Vec3<T> {
        match self {
            Self::Cone(c) => c.axis,
            Self::Cylinder(c) => c.axis.direction,
        }
    }

    pub fn element_line(&self, azimuth: T) -> Line3<T> {
        match self {
            Self::Cone(c) => c.element_line(azimuth),
            Self::Cylinder(c) => c.element_line(azimuth),
        }
    }

    pub fn as_cone(&self) -> Option<&Cone3<T>> {
        match self {
            Self::Cone(c) => Some(c),
            Self::Cylinder(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FocusChoice {
    #[default]
    F1,
    F2,
}

/// Which side of the section plane the Dandelin sphere sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Side {
    #[default]
    Above,
    Below,
}

impl Side {
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            Self::Above => T::one(),
            Self::Below => -T::one(),
        }
    }
}

/// Picks one of the four branch halves of a cone family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FamilySelector {
    pub focus: FocusChoice,
    pub side: Side,
}

impl FamilySelector {
    pub const ALL: [Self; 4] = [
        Self::new(FocusChoice::F1, Side::Above),
        Self::new(FocusChoice::F1, Side::Below),
        Self::new(FocusChoice::F2, Side::Above),
        Self::new(FocusChoice::F2, Side::Below),
    ];

    pub const fn new(focus: FocusChoice, side: Side) -> Self {
        Self { focus, side }
    }
}

/// The planar drawing a cone was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneConstruction<T> {
    /// Plane the drawing lives in (τ for ellipses, ρ for hyperbolas in τ).
    pub plane: CanonicalPlane,
    /// Sections of the Dandelin spheres: `[O]` or `[O3, O4]`.
    pub circles: Vec<Circle2<T>>,
    /// Element lines: `[t1 through A, t2 through B]` or `[t3, t4]`.
    pub elements: [Line2<T>; 2],
    /// Tangency points on the element lines: `[H, D]` or `[K, M]`.
    pub contacts: [Point2<T>; 2],
    /// Points the element lines are drawn through: `[A, B]` or the two
    /// hyperbola vertices.
    pub anchors: [Point2<T>; 2],
    pub apex: Option<Point2<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeResult<T> {
    pub generator: Generator<T>,
    pub spheres: Vec<Sphere3<T>>,
    /// Where each sphere touches the section plane (a focus of the section).
    pub focus_contacts: Vec<Point3<T>>,
    pub section_plane: CanonicalPlane,
    pub construction: PlaneConstruction<T>,
    pub selector: FamilySelector,
}

impl<T: Scalar> ConeResult<T> {
    pub fn apex(&self) -> Option<Point3<T>> {
        self.generator.as_cone().map(|c| c.apex)
    }

    pub fn is_cylinder(&self) -> bool {
        matches!(self.generator, Generator::Cylinder(_))
    }
}

/// Limiting Dandelin radius `a sqrt(1 - e²)`, i.e. the minor semi-axis.
pub fn max_sphere_radius<T: Scalar>(e: &EllipseSpec<T>) -> T {
    e.a() * (T::one() - e.eccentricity().powi(2)).sqrt()
}

/// Tangent from `from` to `circle` other than the axis line, which touches
/// the circle at `axis_contact`.
fn non_axis_tangent<T: Scalar>(
    circle: &Circle2<T>,
    from: Point2<T>,
    axis_contact: Point2<T>,
) -> Result<(Line2<T>, Point2<T>), ConeError<T>> {
    let (l1, l2) = tangent_lines_from_point(circle, from)?;
    let k1 = tangency_point(circle, &l1)?;
    let k2 = tangency_point(circle, &l2)?;
    if k1.distance(axis_contact) >= k2.distance(axis_contact) {
        Ok((l1, k1))
    } else {
        Ok((l2, k2))
    }
}

pub fn cone_from_ellipse<T: Scalar>(
    e: &EllipseSpec<T>,
    r: T,
    sel: FamilySelector,
) -> Result<ConeResult<T>, ConeError<T>> {
    let r_max = max_sphere_radius(e);
    let eps = T::boundary_eps();
    if !(r > T::zero()) || r > r_max * (T::one() + eps) {
        return Err(ConeError::RadiusOutOfRange { radius: r, max: r_max });
    }
    let focus = match sel.focus {
        FocusChoice::F1 => e.focus1(),
        FocusChoice::F2 => e.focus2(),
    };
    let circle = Circle2::new(Vec2::new(focus.x, sel.side.sign::<T>() * r), r)?;
    let (t1, h) = non_axis_tangent(&circle, e.vertex_a(), focus)?;
    let (t2, d) = non_axis_tangent(&circle, e.vertex_b(), focus)?;

    let drawing = e.plane.other();
    let center3 = drawing.embed(circle.center);
    let (generator, apex) = if r >= r_max * (T::one() - eps) {
        let axis = Line3::new(center3, drawing.embed_dir(t1.direction));
        (Generator::Cylinder(CylinderLimit { axis, radius: r }), None)
    } else {
        let apex = intersect_lines(&t1, &t2)?;
        let axis = (circle.center - apex)
            .normalized()
            .ok_or(GeomError::InvalidRadius(r))?;
        let cone = Cone3::new(
            drawing.embed(apex),
            drawing.embed_dir(axis),
            line_angle(axis, t1.direction),
        )?;
        (Generator::Cone(cone), Some(apex))
    };
    Ok(ConeResult {
        generator,
        spheres: vec![Sphere3 { center: center3, radius: r }],
        focus_contacts: vec![drawing.embed(focus)],
        section_plane: e.plane,
        construction: PlaneConstruction {
            plane: drawing,
            circles: vec![circle],
            elements: [t1, t2],
            contacts: [h, d],
            anchors: [e.vertex_a(), e.vertex_b()],
            apex,
        },
        selector: sel,
    })
}

/// Cone through the hyperbola `h` whose first Dandelin circle has radius
/// `r1`; the second radius is `r_a r_b / r1`.
pub fn cone_from_hyperbola<T: Scalar>(
    h: &HyperbolaSpec<T>,
    r1: T,
    sel: FamilySelector,
) -> Result<ConeResult<T>, ConeError<T>> {
    if !(r1 > T::zero() && r1.is_finite()) {
        return Err(ConeError::NonPositiveRadius(r1));
    }
    let (r_a, r_b) = h.focal_radii();
    let r2 = r_a * r_b / r1;
    let s = sel.side.sign::<T>();
    let (near, far, from3, from4) = match sel.focus {
        FocusChoice::F1 => (h.focus_a(), h.focus_b(), h.vertex_f1(), h.vertex_f2()),
        FocusChoice::F2 => (h.focus_b(), h.focus_a(), h.vertex_f2(), h.vertex_f1()),
    };
    let o3 = Circle2::new(Vec2::new(near.x, s * r1), r1)?;
    let o4 = Circle2::new(Vec2::new(far.x, s * r2), r2)?;
    let (t3, k) = non_axis_tangent(&o3, from3, near)?;
    let (t4, m) = non_axis_tangent(&o4, from4, far)?;
    let apex = intersect_lines(&t3, &t4)?;
    let axis = (o3.center - apex)
        .normalized()
        .ok_or(GeomError::InvalidRadius(r1))?;

    let drawing = h.plane.other();
    let cone = Cone3::new(
        drawing.embed(apex),
        drawing.embed_dir(axis),
        line_angle(axis, t3.direction),
    )?;
    Ok(ConeResult {
        generator: Generator::Cone(cone),
        spheres: vec![
            Sphere3 {
                center: drawing.embed(o3.center),
                radius: r1,
            },
            Sphere3 {
                center: drawing.embed(o4.center),
                radius: r2,
            },
        ],
        focus_contacts: vec![drawing.embed(near), drawing.embed(far)],
        section_plane: h.plane,
        construction: PlaneConstruction {
            plane: drawing,
            circles: vec![o3, o4],
            elements: [t3, t4],
            contacts: [k, m],
            anchors: [from3, from4],
            apex: Some(apex),
        },
        selector: sel,
    })
}

/// One sampled member of a cone family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusPoint<T> {
    pub radius: T,
    /// `r2` for hyperbola families.
    pub partner_radius: Option<T>,
    /// Apex in the drawing plane's coordinates.
    pub apex: Point2<T>,
    /// Implicit residual of the apex against the predicted locus.
    pub residual: T,
    pub residual_scale: T,
    /// `|EB| - |EA|` for ellipses, `|GF1| + |GF2|` for hyperbolas.
    pub distance_law: T,
}

/// Builds one cone per radius and checks its apex against the predicted
/// locus. Errors are reported per radius, in input order.
pub fn locus_sample<T: Scalar>(
    spec: &ConicSpec<T>,
    radii: &[T],
    sel: FamilySelector,
) -> Vec<Result<LocusPoint<T>, ConeError<T>>> {
    radii.iter().map(|&r| locus_point(spec, r, sel)).collect()
}

fn locus_point<T: Scalar>(
    spec: &ConicSpec<T>,
    r: T,
    sel: FamilySelector,
) -> Result<LocusPoint<T>, ConeError<T>> {
    match spec {
        ConicSpec::Ellipse(e) => {
            let result = cone_from_ellipse(e, r, sel)?;
            let apex = result.construction.apex.ok_or(ConeError::ApexAtInfinity)?;
            let distance_law = apex.distance(e.vertex_b()) - apex.distance(e.vertex_a());
            let (residual, residual_scale) = match vertex_locus_hyperbola(e) {
                EllipseApexLocus::Hyperbola(h) => {
                    (h.implicit_residual(apex), h.residual_scale(apex))
                }
                EllipseApexLocus::Axis(_) => (apex.x, T::one()),
            };
            Ok(LocusPoint {
                radius: r,
                partner_radius: None,
                apex,
                residual,
                residual_scale,
                distance_law,
            })
        }
        ConicSpec::Hyperbola(h) => {
            let result = cone_from_hyperbola(h, r, sel)?;
            let apex = result.construction.apex.ok_or(ConeError::ApexAtInfinity)?;
            let locus = vertex_locus_ellipse(h);
            Ok(LocusPoint {
                radius: r,
                partner_radius: Some(result.spheres[1].radius),
                apex,
                residual: locus.implicit_residual(apex),
                residual_scale: locus.residual_scale(apex),
                distance_law: apex.distance(h.vertex_f1()) + apex.distance(h.vertex_f2()),
            })
        }
    }
}

/// Both spheres inscribed in `cone` and tangent to `plane`, nearest to the
/// apex first. Exists only when the plane cuts the cone in an ellipse.
pub fn dandelin_spheres<T: Scalar>(
    cone: &Cone3<T>,
    plane: &Plane3<T>,
) -> Result<[Sphere3<T>; 2], ConeError<T>> {
    let h = plane.signed_distance(cone.apex);
    let k = plane.normal.dot(cone.axis);
    let sin_a = cone.half_angle.sin();
    let scale = scale_of([cone.apex.max_abs(), plane.point.max_abs()]);
    if h.abs() <= T::tangency_eps() * scale || k.abs() <= sin_a * (T::one() + T::tangency_eps()) {
        return Err(ConeError::NoSecondSphere);
    }
    // centers apex + t·axis at distance |t| sin(α) from both cone and plane
    let sphere = |t: T| Sphere3 {
        center: cone.apex + cone.axis * t,
        radius: t.abs() * sin_a,
    };
    let near = -h / (k + k.signum() * sin_a);
    let far = -h / (k - k.signum() * sin_a);
    Ok([sphere(near), sphere(far)])
}

/// The Dandelin sphere on the far side of `plane` from the apex; it touches
/// the plane at the section's second focus.
pub fn second_dandelin_sphere<T: Scalar>(
    cone: &Cone3<T>,
    plane: &Plane3<T>,
) -> Result<Sphere3<T>, ConeError<T>> {
    dandelin_spheres(cone, plane).map(|[_, far]| far)
}

/// Circle along which an inscribed sphere touches the cone. Its plane (ω)
/// is perpendicular to the axis.
pub fn contact_circle<T: Scalar>(
    cone: &Cone3<T>,
    sphere: &Sphere3<T>,
) -> Result<Circle3<T>, ConeError<T>> {
    let w = sphere.center - cone.apex;
    let along = w.dot(cone.axis);
    let off_axis = (w - cone.axis * along).norm();
    let (sin_a, cos_a) = cone.half_angle.sin_cos();
    let scale = scale_of([w.max_abs(), sphere.radius]);
    let tol = T::tangency_eps() * scale;
    if off_axis > tol || (along.abs() * sin_a - sphere.radius).abs() > tol {
        return Err(ConeError::SphereNotInscribed);
    }
    let tangent_length = along.abs() * cos_a;
    Ok(Circle3 {
        center: cone.apex + cone.axis * (along.signum() * tangent_length * cos_a),
        radius: tangent_length * sin_a,
        normal: cone.axis,
    })
}

/// For an increasing sequence of radii below `r_max`, the angle between
/// the cone axis and the nearer asymptote of the apex locus. The angles
/// shrink to zero as the cones approach the cylinder limit.
pub fn asymptote_limit_check<T: Scalar>(
    e: &EllipseSpec<T>,
    radii: &[T],
) -> Result<Vec<(T, T)>, ConeError<T>> {
    let h = vertex_locus_hyperbola(e).hyperbola()?;
    let (s1, s2) = asymptotes(&h);
    radii
        .iter()
        .map(|&r| {
            let result = cone_from_ellipse(e, r, FamilySelector::default())?;
            let axis = result
                .construction
                .plane
                .project(result.generator.axis_direction());
            let angle = line_angle(axis, s1.direction).min(line_angle(axis, s2.direction));
            Ok((r, angle))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::ellipse_from_radii;
    use approx::assert_abs_diff_eq;

    const SQRT3: f64 = 1.7320508075688772;

    fn reference() -> ConeResult<f64> {
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        cone_from_ellipse(&e, 1.0, FamilySelector::default()).unwrap()
    }

    fn on_cone(cone: &Cone3<f64>, p: Point3<f64>) -> f64 {
        let w = p - cone.apex;
        w.dot(cone.axis).powi(2) - cone.half_angle.cos().powi(2) * w.dot(w)
    }

    #[test]
    fn max_radius_is_minor_axis() {
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        assert_abs_diff_eq!(max_sphere_radius(&e), SQRT3, epsilon = 1e-15);
        let circle = ellipse_from_radii(2.5, 2.5).unwrap();
        assert_eq!(max_sphere_radius(&circle), 2.5);
    }

    #[test]
    fn reference_cone_from_ellipse() {
        let res = reference();
        let cone = res.generator.as_cone().unwrap();
        assert_abs_diff_eq!(cone.apex.x, -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cone.apex.y, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cone.apex.z, 3.0, epsilon = 1e-12);
        let expected_axis = Vec3::new(1.0, 0.0, -2.0) * 5f64.sqrt().recip();
        assert_abs_diff_eq!(cone.axis.distance(expected_axis), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cone.half_angle, (2.0 / 5f64.sqrt()).acos(), epsilon = 1e-12);
        assert_abs_diff_eq!(cone.half_angle.to_degrees(), 26.5650512, epsilon = 1e-7);
        assert_eq!(res.spheres[0].center, Vec3::new(-1.0, 0.0, 1.0));

        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        let apex = res.construction.apex.unwrap();
        assert_abs_diff_eq!(apex.distance(e.vertex_b()), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(apex.distance(e.vertex_a()), 5.0, epsilon = 1e-12);
        // tangent lengths |BD| = r_b and |HA| = r_a
        let [h, d] = res.construction.contacts;
        assert_abs_diff_eq!(e.vertex_b().distance(d), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.vertex_a().distance(h), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn cylinder_at_max_radius() {
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        let res = cone_from_ellipse(&e, SQRT3, FamilySelector::default()).unwrap();
        let Generator::Cylinder(cyl) = res.generator else {
            panic!("expected cylinder");
        };
        assert_eq!(cyl.radius, SQRT3);
        let d = cyl.axis.direction;
        assert_abs_diff_eq!((d.z / d.x).abs(), SQRT3, epsilon = 1e-9);
        // the cylinder axis is the asymptote through the ellipse center
        assert_abs_diff_eq!(cyl.axis.distance_to(Vec3::zero()), 0.0, epsilon = 1e-9);

        assert!(matches!(
            cone_from_ellipse(&e, 2.0, FamilySelector::default()),
            Err(ConeError::RadiusOutOfRange { .. })
        ));
        assert!(matches!(
            cone_from_ellipse(&e, 0.0, FamilySelector::default()),
            Err(ConeError::RadiusOutOfRange { .. })
        ));
    }

    #[test]
    fn selectors_pick_branch_halves() {
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        for sel in FamilySelector::ALL {
            let apex = cone_from_ellipse(&e, 1.0, sel).unwrap().construction.apex.unwrap();
            let expect_x = if sel.focus == FocusChoice::F1 { -2.0 } else { 2.0 };
            let expect_z = if sel.side == Side::Above { 3.0 } else { -3.0 };
            assert_abs_diff_eq!(apex.x, expect_x, epsilon = 1e-12);
            assert_abs_diff_eq!(apex.y, expect_z, epsilon = 1e-12);
        }
    }

    #[test]
    fn reference_cone_from_hyperbola() {
        let h = HyperbolaSpec::new(1.0, 2.0).unwrap();
        let res = cone_from_hyperbola(&h, SQRT3, FamilySelector::default()).unwrap();
        assert_abs_diff_eq!(res.spheres[1].radius, SQRT3, epsilon = 1e-15);
        let g = res.construction.apex.unwrap();
        assert_abs_diff_eq!(g.x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.y, SQRT3, epsilon = 1e-12);
        let cone = res.generator.as_cone().unwrap();
        assert_abs_diff_eq!(cone.axis.x.abs(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cone.half_angle.to_degrees(), 60.0, epsilon = 1e-10);
        let sum = g.distance(h.vertex_f1()) + g.distance(h.vertex_f2());
        assert_abs_diff_eq!(sum, 4.0, epsilon = 1e-12);
        // |GK| + |GM| = r_a - r_b
        let [k, m] = res.construction.contacts;
        assert_abs_diff_eq!(g.distance(k) + g.distance(m), 2.0, epsilon = 1e-12);

        let res = cone_from_hyperbola(&h, 3.0, FamilySelector::default()).unwrap();
        assert_abs_diff_eq!(res.spheres[1].radius, 1.0, epsilon = 1e-15);
        let g = res.construction.apex.unwrap();
        assert!(g.x.abs() > 1e-3);
        assert!(vertex_locus_ellipse(&h).implicit_residual(g).abs() <= 1e-10);

        assert_eq!(
            cone_from_hyperbola(&h, 0.0, FamilySelector::default()),
            Err(ConeError::NonPositiveRadius(0.0))
        );
    }

    #[test]
    fn ellipse_locus_sampling() {
        let spec = ConicSpec::Ellipse(ellipse_from_radii(3.0f64, 1.0).unwrap());
        let pts = locus_sample(&spec, &[0.5, 1.0, 1.5], FamilySelector::default());
        assert_eq!(pts.len(), 3);
        for p in &pts {
            let p = p.as_ref().unwrap();
            assert!(p.residual.abs() <= 1e-9);
            assert_abs_diff_eq!(p.distance_law, -2.0, epsilon = 1e-12);
        }

        let tiny = locus_sample(&spec, &[1e-6], FamilySelector::default());
        let apex = tiny[0].as_ref().unwrap().apex;
        assert!(apex.distance(Vec2::new(-1.0, 0.0)) <= 1e-4);

        assert!(locus_sample(&spec, &[], FamilySelector::default()).is_empty());

        let mixed = locus_sample(&spec, &[1.0, 5.0, SQRT3], FamilySelector::default());
        assert!(mixed[0].is_ok());
        assert!(matches!(mixed[1], Err(ConeError::RadiusOutOfRange { .. })));
        assert_eq!(mixed[2], Err(ConeError::ApexAtInfinity));
    }

    #[test]
    fn second_sphere_of_reference_cone() {
        let res = reference();
        let cone = res.generator.as_cone().unwrap();
        let rho = CanonicalPlane::Rho.plane3();
        let [near, far] = dandelin_spheres(cone, &rho).unwrap();
        assert_abs_diff_eq!(near.center.distance(res.spheres[0].center), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(near.radius, 1.0, epsilon = 1e-12);
        let second = second_dandelin_sphere(cone, &rho).unwrap();
        assert_eq!(second, far);
        assert_abs_diff_eq!(second.radius, 3.0, epsilon = 1e-12);
        let contact = rho.project(second.center);
        assert_abs_diff_eq!(contact.distance(Vec3::new(1.0, 0.0, 0.0)), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn symmetric_cone_spheres_share_the_center_contact() {
        let cone = Cone3::new(Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, -1.0), 0.25 * std::f64::consts::PI).unwrap();
        let rho = CanonicalPlane::Rho.plane3();
        let [near, far] = dandelin_spheres(&cone, &rho).unwrap();
        for s in [near, far] {
            assert_abs_diff_eq!(rho.project(s.center).norm(), 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(rho.signed_distance(s.center).abs(), s.radius, epsilon = 1e-12);
        }
        // radii differ by the factor (1 + sin α) / (1 - sin α)
        let s = cone.half_angle.sin();
        assert_abs_diff_eq!(far.radius / near.radius, (1.0 + s) / (1.0 - s), epsilon = 1e-12);

        let through_apex = Plane3::new(Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(second_dandelin_sphere(&cone, &through_apex), Err(ConeError::NoSecondSphere));
        let steep = Plane3::new(Vec3::zero(), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(second_dandelin_sphere(&cone, &steep), Err(ConeError::NoSecondSphere));
    }

    #[test]
    fn contact_circle_of_reference_sphere() {
        let res = reference();
        let cone = res.generator.as_cone().unwrap();
        let sphere = res.spheres[0];
        let circle = contact_circle(cone, &sphere).unwrap();
        assert_abs_diff_eq!(circle.radius, 2.0 / 5f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(circle.normal.cross(cone.axis).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(circle.center.distance(Vec3::new(-1.2, 0.0, 1.4)), 0.0, epsilon = 1e-12);
        for i in 0..16 {
            let p = circle.point_at(i as f64 * std::f64::consts::TAU / 16.0);
            assert!(on_cone(cone, p).abs() <= 1e-9);
            assert!((p.distance(sphere.center) - sphere.radius).abs() <= 1e-9);
        }

        let tiny = Sphere3 {
            center: cone.apex + cone.axis * 1e-8,
            radius: 1e-8 * cone.half_angle.sin(),
        };
        let c = contact_circle(cone, &tiny).unwrap();
        assert!(c.radius < 1e-8 && c.center.distance(cone.apex) < 1e-8);

        let loose = Sphere3 { radius: 0.5, ..sphere };
        assert_eq!(contact_circle(cone, &loose), Err(ConeError::SphereNotInscribed));
    }

    #[test]
    fn axis_approaches_asymptote() {
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        let angles = asymptote_limit_check(&e, &[1.5, 1.7, 1.73, 1.732]).unwrap();
        assert!(angles.windows(2).all(|w| w[1].1 < w[0].1), "{angles:?}");
        assert!(angles[3].1 <= 1e-2);
        let single = asymptote_limit_check(&e, &[0.3]).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn single_precision_reference() {
        let e = ellipse_from_radii(3.0f32, 1.0).unwrap();
        let res = cone_from_ellipse(&e, 1.0, FamilySelector::default()).unwrap();
        let apex = res.apex().unwrap();
        assert!((apex.x + 2.0).abs() < 1e-5 && (apex.z - 3.0).abs() < 1e-5);
    }
}
