//! Independent check that a constructed cone really cuts the intended conic.
//!
//! Two paths recover the section from nothing but the generator's apex,
//! axis and half-angle (or the cylinder's axis and radius):
//!
//! * exact elimination: substitute the plane's parameterization into the
//!   quadric and collect the six conic coefficients;
//! * sampling: intersect element lines, spaced uniformly in azimuth, with
//!   the plane and fit a conic to the points by algebraic least squares.
//!
//! Both are canonicalized and compared against the target's foci and
//! vertices. Nothing here reads the planar construction of [`crate::cone`].

use thiserror::Error;

use crate::conic::{
    canonicalize_conic, ConicError, ConicGeometry, ConicKind, ConicSpec, Conic2General,
    ImplicitCurve,
};
use crate::cone::{Cone3, ConeResult, CylinderLimit, Generator};
use crate::geom::{Plane3, Point2, Point3, Vec2};
use crate::linalg::right_singular;
use crate::scalar::{scale_of, Scalar};

/// Sample count used by [`verify_generation`].
pub const VERIFY_SAMPLES: usize = 240;

/// Minimum sample count accepted by the samplers.
pub const MIN_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SectionError {
    #[error("section plane passes through the apex")]
    ApexOnPlane,
    #[error("plane is parallel to the cylinder axis")]
    AxisParallelToPlane,
    #[error("no element line meets the plane")]
    EmptySection,
    #[error("at least {MIN_SAMPLES} samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("points do not determine a unique conic")]
    RankDeficient,
    #[error(transparent)]
    Conic(#[from] ConicError),
}

/// `((p - apex)·axis)² - cos²(half_angle) |p - apex|²`.
pub fn cone_implicit<T: Scalar>(cone: &Cone3<T>, p: Point3<T>) -> T {
    let w = p - cone.apex;
    w.dot(cone.axis).powi(2) - cone.half_angle.cos().powi(2) * w.dot(w)
}

/// `|w|² - (w·axis)² - radius²` with `w` measured from the axis point.
pub fn cylinder_implicit<T: Scalar>(cyl: &CylinderLimit<T>, p: Point3<T>) -> T {
    let w = p - cyl.axis.point;
    w.dot(w) - w.dot(cyl.axis.direction).powi(2) - cyl.radius.powi(2)
}

pub fn generator_implicit<T: Scalar>(g: &Generator<T>, p: Point3<T>) -> T {
    match g {
        Generator::Cone(c) => cone_implicit(c, p),
        Generator::Cylinder(c) => cylinder_implicit(c, p),
    }
}

/// Quadric `|w|²·g + (w·k)²·h + q` restricted to the plane, where
/// `w = p - origin`; returns the coefficients in the plane's frame.
fn restrict_quadric<T: Scalar>(
    plane: &Plane3<T>,
    origin: Point3<T>,
    axis: crate::geom::Vec3<T>,
    weight_norm: T,
    weight_axis: T,
    constant: T,
) -> Result<Conic2General<T>, SectionError> {
    let frame = plane.frame();
    let w0 = frame.origin - origin;
    let (ku, kv, k0) = (axis.dot(frame.u), axis.dot(frame.v), axis.dot(w0));
    let (wu, wv) = (w0.dot(frame.u), w0.dot(frame.v));
    let two = T::lit(2.0);
    let (g, h) = (weight_norm, weight_axis);
    Ok(Conic2General::from_coefficients([
        g + h * ku * ku,
        two * h * ku * kv,
        g + h * kv * kv,
        two * (g * wu + h * k0 * ku),
        two * (g * wv + h * k0 * kv),
        g * w0.dot(w0) + h * k0 * k0 + constant,
    ])?)
}

/// Exact section of the double cone by `plane`, in the plane's frame.
pub fn intersect_cone_plane<T: Scalar>(
    cone: &Cone3<T>,
    plane: &Plane3<T>,
) -> Result<Conic2General<T>, SectionError> {
    let scale = scale_of([cone.apex.max_abs(), plane.point.max_abs()]);
    if plane.signed_distance(cone.apex).abs() <= T::tangency_eps() * scale {
        return Err(SectionError::ApexOnPlane);
    }
    let cos2 = cone.half_angle.cos().powi(2);
    restrict_quadric(plane, cone.apex, cone.axis, -cos2, T::one(), T::zero())
}

pub fn intersect_cylinder_plane<T: Scalar>(
    cyl: &CylinderLimit<T>,
    plane: &Plane3<T>,
) -> Result<Conic2General<T>, SectionError> {
    if plane.normal.dot(cyl.axis.direction).abs() <= T::parallel_eps() {
        return Err(SectionError::AxisParallelToPlane);
    }
    restrict_quadric(
        plane,
        cyl.axis.point,
        cyl.axis.direction,
        T::one(),
        -T::one(),
        -cyl.radius.powi(2),
    )
}

pub fn intersect_generator_plane<T: Scalar>(
    g: &Generator<T>,
    plane: &Plane3<T>,
) -> Result<Conic2General<T>, SectionError> {
    match g {
        Generator::Cone(c) => intersect_cone_plane(c, plane),
        Generator::Cylinder(c) => intersect_cylinder_plane(c, plane),
    }
}

/// Half of the double cone a sample came from: along the axis from the
/// apex, or against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Nappe {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionPoint<T> {
    /// In the plane's frame.
    pub point: Point2<T>,
    pub nappe: Nappe,
}

/// Fraction of each hyperbolic azimuth arc left out at either end, where
/// the element lines turn parallel to the plane.
const ARC_TRIM: f64 = 0.1;

/// Intersects element lines with `plane`. Ellipse sections use azimuths
/// spaced uniformly around the axis; hyperbola sections split the samples
/// evenly between the two azimuth arcs (one per nappe), trimmed away from
/// the directions parallel to the plane.
pub fn sample_section_points<T: Scalar>(
    cone: &Cone3<T>,
    plane: &Plane3<T>,
    n: usize,
) -> Result<Vec<SectionPoint<T>>, SectionError> {
    if n < MIN_SAMPLES {
        return Err(SectionError::TooFewSamples(n));
    }
    let scale = scale_of([cone.apex.max_abs(), plane.point.max_abs()]);
    let height = -plane.signed_distance(cone.apex);
    if height.abs() <= T::tangency_eps() * scale {
        return Err(SectionError::ApexOnPlane);
    }
    let (u, v) = cone.basis();
    let (sin_a, cos_a) = cone.half_angle.sin_cos();
    let nn = plane.normal;
    // n·d(φ) = p + q cos(φ - φ0)
    let p = cos_a * nn.dot(cone.axis);
    let (nu, nv) = (sin_a * nn.dot(u), sin_a * nn.dot(v));
    let q = nu.hypot(nv);
    let phi0 = nv.atan2(nu);
    let tau = T::TAU();

    let azimuths: Vec<T> = if p.abs() > q * (T::one() + T::lit(1e3) * T::epsilon()) {
        (0..n)
            .map(|i| tau * T::from_usize(i).unwrap() / T::from_usize(n).unwrap())
            .collect()
    } else {
        let beta = (-p / q).max(-T::one()).min(T::one()).acos();
        let first = n / 2;
        let arcs = [
            (phi0 - beta, T::lit(2.0) * beta, first),
            (phi0 + beta, tau - T::lit(2.0) * beta, n - first),
        ];
        let trim = T::lit(ARC_TRIM);
        arcs.iter()
            .flat_map(|&(start, width, count)| {
                let m = T::from_usize(count).unwrap();
                (0..count).map(move |i| {
                    let frac = (T::from_usize(i).unwrap() + T::lit(0.5)) / m;
                    start + width * (trim + (T::one() - trim - trim) * frac)
                })
            })
            .collect()
    };

    let frame = plane.frame();
    let points: Vec<SectionPoint<T>> = azimuths
        .into_iter()
        .filter_map(|phi| {
            let d = cone.element_direction(phi);
            let denom = nn.dot(d);
            if denom.abs() <= T::parallel_eps() {
                return None;
            }
            let lambda = height / denom;
            let nappe = if lambda >= T::zero() { Nappe::Forward } else { Nappe::Backward };
            Some(SectionPoint {
                point: frame.to_local(cone.apex + d * lambda),
                nappe,
            })
        })
        .collect();
    if points.is_empty() {
        return Err(SectionError::EmptySection);
    }
    Ok(points)
}

pub fn sample_cylinder_section<T: Scalar>(
    cyl: &CylinderLimit<T>,
    plane: &Plane3<T>,
    n: usize,
) -> Result<Vec<SectionPoint<T>>, SectionError> {
    if n < MIN_SAMPLES {
        return Err(SectionError::TooFewSamples(n));
    }
    let denom = plane.normal.dot(cyl.axis.direction);
    if denom.abs() <= T::parallel_eps() {
        return Err(SectionError::AxisParallelToPlane);
    }
    let frame = plane.frame();
    let tau = T::TAU();
    Ok((0..n)
        .map(|i| {
            let phi = tau * T::from_usize(i).unwrap() / T::from_usize(n).unwrap();
            let line = cyl.element_line(phi);
            let lambda = -plane.signed_distance(line.point) / denom;
            SectionPoint {
                point: frame.to_local(line.at(lambda)),
                nappe: Nappe::Forward,
            }
        })
        .collect())
}

pub fn sample_generator_section<T: Scalar>(
    g: &Generator<T>,
    plane: &Plane3<T>,
    n: usize,
) -> Result<Vec<SectionPoint<T>>, SectionError> {
    match g {
        Generator::Cone(c) => sample_section_points(c, plane, n),
        Generator::Cylinder(c) => sample_cylinder_section(c, plane, n),
    }
}

/// Algebraic least-squares conic through `points`: the unit coefficient
/// vector minimizing `|M k|` over the design rows `(x², xy, y², x, y, 1)`.
/// Points are centered and scaled before fitting.
pub fn fit_conic<T: Scalar>(points: &[Point2<T>]) -> Result<Conic2General<T>, SectionError> {
    if points.len() < 6 {
        return Err(SectionError::RankDeficient);
    }
    let count = T::from_usize(points.len()).unwrap();
    let centroid = points.iter().fold(Vec2::zero(), |acc, &p| acc + p) * count.recip();
    let spread = points
        .iter()
        .fold(T::zero(), |acc, &p| acc + p.distance(centroid))
        / count;
    if !(spread > T::zero()) {
        return Err(SectionError::RankDeficient);
    }
    let s = T::SQRT_2() / spread;
    let rows: Vec<[T; 6]> = points
        .iter()
        .map(|&p| {
            let (x, y) = ((p.x - centroid.x) * s, (p.y - centroid.y) * s);
            [x * x, x * y, y * y, x, y, T::one()]
        })
        .collect();
    let svd = right_singular(&rows);
    let rank_tol = T::epsilon().sqrt() * T::lit(1e-2);
    if svd.values[1] <= rank_tol * svd.values[5] {
        return Err(SectionError::RankDeficient);
    }
    let [a, b, c, d, e, f] = svd.vectors[0];
    let (mx, my) = (centroid.x, centroid.y);
    let s2 = s * s;
    let two = T::lit(2.0);
    Ok(Conic2General::from_coefficients([
        a * s2,
        b * s2,
        c * s2,
        -two * a * s2 * mx - b * s2 * my + d * s,
        -b * s2 * mx - two * c * s2 * my + e * s,
        a * s2 * mx * mx + b * s2 * mx * my + c * s2 * my * my - d * s * mx - e * s * my + f,
    ])?)
}

/// Outcome of checking one construction against its target curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionReport<T> {
    pub exact: Conic2General<T>,
    pub fitted: Conic2General<T>,
    pub exact_geometry: Option<ConicGeometry<T>>,
    pub fitted_geometry: Option<ConicGeometry<T>>,
    /// Largest `|residual| / residual_scale` of the samples against the target.
    pub max_point_residual: T,
    /// Worst over both paths; infinite when a path is not a central conic.
    pub focus_deviation: T,
    pub vertex_deviation: T,
    /// Normalized coefficient distance between the two paths.
    pub path_agreement: T,
    pub tolerance: T,
    pub passed: bool,
}

impl<T: Scalar> SectionReport<T> {
    pub fn kind(&self) -> ConicKind {
        self.exact.kind()
    }
}

/// Distance between two unordered point pairs.
fn pair_deviation<T: Scalar>(got: [Point2<T>; 2], want: [Point2<T>; 2]) -> T {
    let straight = got[0].distance(want[0]).max(got[1].distance(want[1]));
    let crossed = got[0].distance(want[1]).max(got[1].distance(want[0]));
    straight.min(crossed)
}

/// Runs both oracle paths on `result` cut by `plane` and compares the
/// recovered foci and vertices with `spec`. Passes when both paths classify
/// as the target kind and every deviation is within `1e-6 · scale`.
pub fn verify_generation<T: Scalar>(
    spec: &ConicSpec<T>,
    result: &ConeResult<T>,
    plane: &Plane3<T>,
) -> Result<SectionReport<T>, SectionError> {
    let generator = &result.generator;
    let exact = intersect_generator_plane(generator, plane)?;
    let samples = sample_generator_section(generator, plane, VERIFY_SAMPLES)?;
    let points: Vec<Point2<T>> = samples.iter().map(|s| s.point).collect();
    let fitted = fit_conic(&points)?;

    let exact_geometry = canonicalize_conic(&exact).ok();
    let fitted_geometry = canonicalize_conic(&fitted).ok();
    let want_kind = spec.kind();
    let (mut focus_deviation, mut vertex_deviation) = (T::zero(), T::zero());
    for geo in [&exact_geometry, &fitted_geometry] {
        match geo {
            Some(g) if g.kind == want_kind => {
                focus_deviation = focus_deviation.max(pair_deviation(g.foci, spec.foci()));
                vertex_deviation = vertex_deviation.max(pair_deviation(g.vertices, spec.vertices()));
            }
            _ => {
                focus_deviation = T::infinity();
                vertex_deviation = T::infinity();
            }
        }
    }
    let max_point_residual = points.iter().fold(T::zero(), |acc, &p| {
        acc.max(spec.implicit_residual(p).abs() / spec.residual_scale(p))
    });
    let tolerance = T::lit(1e-6) * spec.scale();
    let passed = focus_deviation <= tolerance
        && vertex_deviation <= tolerance
        && max_point_residual <= tolerance;
    Ok(SectionReport {
        path_agreement: exact.coefficient_distance(&fitted),
        exact,
        fitted,
        exact_geometry,
        fitted_geometry,
        max_point_residual,
        focus_deviation,
        vertex_deviation,
        tolerance,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::{ellipse_from_radii, CanonicalPlane, HyperbolaSpec};
    use crate::cone::{cone_from_ellipse, cone_from_hyperbola, FamilySelector};
    use crate::geom::Vec3;
    use approx::assert_abs_diff_eq;

    const SQRT3: f64 = 1.7320508075688772;

    fn reference_cone() -> Cone3<f64> {
        Cone3::new(
            Vec3::new(-2.0, 0.0, 3.0),
            Vec3::new(1.0, 0.0, -2.0),
            (2.0 / 5f64.sqrt()).acos(),
        )
        .unwrap()
    }

    fn rho() -> Plane3<f64> {
        CanonicalPlane::Rho.plane3()
    }

    #[test]
    fn implicit_vanishes_on_known_points() {
        let cone = reference_cone();
        assert_eq!(cone_implicit(&cone, cone.apex), 0.0);
        assert_abs_diff_eq!(cone_implicit(&cone, Vec3::new(2.0, 0.0, 0.0)), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cone_implicit(&cone, Vec3::new(0.0, SQRT3, 0.0)), 0.0, epsilon = 1e-12);
        assert!(cone_implicit(&cone, Vec3::zero()).abs() > 0.1);
    }

    #[test]
    fn reference_section_is_the_generating_ellipse() {
        let g = intersect_cone_plane(&reference_cone(), &rho()).unwrap();
        assert_eq!(g.kind(), ConicKind::Ellipse);
        let geo = canonicalize_conic(&g).unwrap();
        assert_abs_diff_eq!(geo.semi_axes.0, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(geo.semi_axes.1, SQRT3, epsilon = 1e-12);
        assert_abs_diff_eq!(geo.foci[0].distance(Vec2::new(-1.0, 0.0)), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(geo.foci[1].distance(Vec2::new(1.0, 0.0)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn right_section_is_a_circle() {
        let cone = Cone3::new(Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, 1.0), 0.25 * std::f64::consts::PI).unwrap();
        let g = intersect_cone_plane(&cone, &rho()).unwrap();
        let unit_circle = Conic2General::from_coefficients([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(g.coefficient_distance(&unit_circle) < 1e-15);

        let pts = sample_section_points(&cone, &rho(), 32).unwrap();
        for p in &pts {
            assert_abs_diff_eq!(p.point.norm(), 1.0, epsilon = 1e-14);
        }
        let through_apex = Plane3::new(Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(intersect_cone_plane(&cone, &through_apex), Err(SectionError::ApexOnPlane));
    }

    #[test]
    fn hyperbola_cone_section_in_tau() {
        let h = HyperbolaSpec::new(1.0, 2.0).unwrap();
        let res = cone_from_hyperbola(&h, SQRT3, FamilySelector::default()).unwrap();
        let tau = CanonicalPlane::Tau.plane3();
        let g = intersect_generator_plane(&res.generator, &tau).unwrap();
        assert_eq!(g.kind(), ConicKind::Hyperbola);
        let geo = canonicalize_conic(&g).unwrap();
        assert_abs_diff_eq!(geo.vertices[1].distance(Vec2::new(1.0, 0.0)), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(geo.foci[1].distance(Vec2::new(2.0, 0.0)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sampled_reference_points() {
        let cone = reference_cone();
        let pts = sample_section_points(&cone, &rho(), 360).unwrap();
        assert_eq!(pts.len(), 360);
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        for p in &pts {
            assert!(e.implicit_residual(p.point).abs() <= 1e-9);
            let world = rho().frame().to_world(p.point);
            assert!(cone_implicit(&cone, world).abs() <= 1e-10 * 3.0);
            assert_eq!(p.nappe, Nappe::Forward);
        }
        assert_eq!(sample_section_points(&cone, &rho(), 4), Err(SectionError::TooFewSamples(4)));
    }

    #[test]
    fn hyperbola_samples_cover_both_nappes() {
        let h = HyperbolaSpec::new(1.0, 2.0).unwrap();
        let res = cone_from_hyperbola(&h, 3.0, FamilySelector::default()).unwrap();
        let tau = CanonicalPlane::Tau.plane3();
        let pts = sample_generator_section(&res.generator, &tau, 100).unwrap();
        let forward = pts.iter().filter(|p| p.nappe == Nappe::Forward).count();
        assert_eq!((forward, pts.len() - forward), (50, 50));
        for p in &pts {
            let r: f64 = h.implicit_residual(p.point) / h.residual_scale(p.point);
            assert!(r.abs() <= 1e-12, "{p:?}");
        }
        // each nappe gives one branch
        for nappe in [Nappe::Forward, Nappe::Backward] {
            let signs: Vec<bool> = pts.iter().filter(|p| p.nappe == nappe).map(|p| p.point.x > 0.0).collect();
            assert!(signs.iter().all(|&s| s == signs[0]));
        }
    }

    #[test]
    fn fit_recovers_exact_ellipse() {
        let pts: Vec<Point2<f64>> = (0..360)
            .map(|i| {
                let t = i as f64 * std::f64::consts::TAU / 360.0;
                Vec2::new(2.0 * t.cos(), SQRT3 * t.sin())
            })
            .collect();
        let g = fit_conic(&pts).unwrap();
        let want = Conic2General::from_coefficients([0.25, 0.0, 1.0 / 3.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(g.coefficient_distance(&want) <= 1e-8);
    }

    #[test]
    fn fit_rejects_degenerate_input() {
        let two_lines = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 2.0),
            Vec2::new(2.0, 3.0),
        ];
        match fit_conic(&two_lines) {
            Err(SectionError::RankDeficient) => {}
            Ok(g) => assert_eq!(g.kind(), ConicKind::DegeneratePair),
            Err(e) => panic!("unexpected {e:?}"),
        }
        let line: Vec<_> = (0..10).map(|i| Vec2::new(i as f64, 2.0 * i as f64)).collect();
        assert_eq!(fit_conic(&line), Err(SectionError::RankDeficient));
        assert_eq!(fit_conic(&line[..5]), Err(SectionError::RankDeficient));
    }

    #[test]
    fn fit_classifies_hyperbola_samples() {
        let h = HyperbolaSpec::new(1.0, 2.0).unwrap();
        let pts: Vec<_> = (0..40)
            .map(|i| h.point_at(-1.5 + 3.0 * (i / 2) as f64 / 19.0, i % 2 == 0))
            .collect();
        assert_eq!(fit_conic(&pts).unwrap().kind(), ConicKind::Hyperbola);
    }

    #[test]
    fn verify_worked_examples() {
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        let res = cone_from_ellipse(&e, 1.0, FamilySelector::default()).unwrap();
        let report = verify_generation(&ConicSpec::Ellipse(e), &res, &rho()).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.focus_deviation <= 1e-9);
        assert!(report.path_agreement <= 1e-7);

        let h = HyperbolaSpec::new(1.0, 2.0).unwrap();
        let res = cone_from_hyperbola(&h, SQRT3, FamilySelector::default()).unwrap();
        let report = verify_generation(&ConicSpec::Hyperbola(h), &res, &CanonicalPlane::Tau.plane3()).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.kind(), ConicKind::Hyperbola);
    }

    #[test]
    fn verify_rejects_perturbed_cone() {
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        let mut res = cone_from_ellipse(&e, 1.0, FamilySelector::default()).unwrap();
        if let Generator::Cone(c) = &mut res.generator {
            c.half_angle += 0.01;
        }
        let report = verify_generation(&ConicSpec::Ellipse(e), &res, &rho()).unwrap();
        assert!(!report.passed);
        assert!(report.focus_deviation > 1e-4);
    }

    #[test]
    fn cylinder_section_minor_axis_is_max_radius() {
        let e = ellipse_from_radii(3.0, 1.0).unwrap();
        let res = cone_from_ellipse(&e, SQRT3, FamilySelector::default()).unwrap();
        let report = verify_generation(&ConicSpec::Ellipse(e), &res, &rho()).unwrap();
        assert!(report.passed, "{report:?}");
        let fitted = report.fitted_geometry.unwrap();
        assert_abs_diff_eq!(fitted.semi_axes.1, SQRT3, epsilon = 1e-9);
    }
}
