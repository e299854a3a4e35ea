use approx::assert_abs_diff_eq;
use dandelin::conic::ConicSpec;
use dandelin::section::verify_generation;
use dandelin::*;

const SQRT3: f64 = 1.7320508075688772;

fn reference_ellipse() -> Ellipse {
    Ellipse::from_radii(3.0, 1.0).unwrap()
}

#[test]
fn ellipse_worked_example() {
    let e = reference_ellipse();
    let res = cone_from_ellipse(&e, 1.0, FamilySelector::default()).unwrap();
    let cone = res.generator.as_cone().unwrap();
    assert_abs_diff_eq!(cone.apex.x, -2.0, epsilon = 1e-12);
    assert_abs_diff_eq!(cone.apex.z, 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(cone.half_angle, (2.0 / 5f64.sqrt()).acos(), epsilon = 1e-12);
    assert_abs_diff_eq!(cone.half_angle.to_degrees(), 26.5650512, epsilon = 1e-7);

    let apex = res.construction.apex.unwrap();
    assert_abs_diff_eq!(apex.distance(e.vertex_b()), 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(apex.distance(e.vertex_a()), 5.0, epsilon = 1e-12);
    let circle = &res.construction.circles[0];
    assert_abs_diff_eq!(circle.center.x, -1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(circle.center.y, 1.0, epsilon = 1e-15);
}

#[test]
fn hyperbola_worked_example() {
    let h = Hyperbola::new(1.0, 2.0).unwrap();
    let res = cone_from_hyperbola(&h, SQRT3, FamilySelector::default()).unwrap();
    let g = res.construction.apex.unwrap();
    assert_abs_diff_eq!(g.x, 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(g.y, SQRT3, epsilon = 1e-12);
    assert_abs_diff_eq!(res.spheres[1].radius, SQRT3, epsilon = 1e-15);
    let cone = res.generator.as_cone().unwrap();
    assert_abs_diff_eq!(cone.half_angle.to_degrees(), 60.0, epsilon = 1e-10);
    let [k, m] = res.construction.contacts;
    assert_abs_diff_eq!(g.distance(k) + g.distance(m), 2.0, epsilon = 1e-12);
    assert_abs_diff_eq!(g.distance(h.vertex_f1()) + g.distance(h.vertex_f2()), 4.0, epsilon = 1e-12);

    let off = cone_from_hyperbola(&h, 3.0, FamilySelector::default()).unwrap();
    assert_abs_diff_eq!(off.spheres[1].radius, 1.0, epsilon = 1e-15);
    let locus = vertex_locus_ellipse(&h);
    assert!(locus.implicit_residual(off.construction.apex.unwrap()).abs() <= 1e-10);
}

#[test]
fn spheres_and_contact_circle_of_reference_cone() {
    let res = cone_from_ellipse(&reference_ellipse(), 1.0, FamilySelector::default()).unwrap();
    let cone = res.generator.as_cone().unwrap();
    let rho = CanonicalPlane::Rho.plane3::<f64>();

    let second = second_dandelin_sphere(cone, &rho).unwrap();
    assert_abs_diff_eq!(second.center.distance(Vec3::new(1.0, 0.0, -3.0)), 0.0, epsilon = 1e-9);
    assert_abs_diff_eq!(second.radius, 3.0, epsilon = 1e-9);
    assert_abs_diff_eq!(rho.project(second.center).distance(Vec3::new(1.0, 0.0, 0.0)), 0.0, epsilon = 1e-9);

    let omega = contact_circle(cone, &res.spheres[0]).unwrap();
    assert_abs_diff_eq!(omega.radius, 2.0 / 5f64.sqrt(), epsilon = 1e-12);
    assert_abs_diff_eq!(omega.center.distance(Vec3::new(-1.2, 0.0, 1.4)), 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(omega.normal.cross(cone.axis).norm(), 0.0, epsilon = 1e-15);
    for i in 0..16 {
        let p = omega.point_at(i as f64 * std::f64::consts::TAU / 16.0);
        assert!(cone_implicit(cone, p).abs() <= 1e-9);
        assert_abs_diff_eq!(p.distance(res.spheres[0].center), 1.0, epsilon = 1e-9);
    }
}

#[test]
fn limits_of_the_ellipse_family() {
    let e = reference_ellipse();
    let res = cone_from_ellipse(&e, SQRT3, FamilySelector::default()).unwrap();
    assert!(res.is_cylinder());
    let report = verify_generation(&ConicSpec::Ellipse(e), &res, &CanonicalPlane::Rho.plane3()).unwrap();
    assert!(report.passed);
    assert_abs_diff_eq!(report.fitted_geometry.unwrap().semi_axes.1, SQRT3, epsilon = 1e-9);

    let angles = asymptote_limit_check(&e, &[1.5, 1.7, 1.73, 1.732]).unwrap();
    assert!(angles.windows(2).all(|w| w[1].1 < w[0].1));
    assert!(angles.last().unwrap().1 <= 1e-2);

    let tiny = cone_from_ellipse(&e, 1e-6, FamilySelector::default()).unwrap();
    let apex = tiny.construction.apex.unwrap();
    assert!(apex.distance(e.focus1()) <= 1e-4);

    assert!(matches!(
        cone_from_ellipse(&e, 2.0, FamilySelector::default()),
        Err(ConeError::RadiusOutOfRange { .. })
    ));
}

#[test]
fn circle_has_axis_locus() {
    let circle = Ellipse::from_radii(2.0, 2.0).unwrap();
    assert_eq!(max_sphere_radius(&circle), 2.0);
    let locus = vertex_locus_hyperbola(&circle);
    assert!(matches!(locus, EllipseApexLocus::Axis(_)));
    assert_eq!(
        locus.hyperbola().unwrap_err().to_string(),
        "degenerate circle: locus is the axis"
    );
}

#[test]
fn every_selector_verifies() {
    let e = reference_ellipse();
    let h = Hyperbola::new(1.0, 2.0).unwrap();
    for sel in FamilySelector::ALL {
        let res = cone_from_ellipse(&e, 0.8, sel).unwrap();
        let report = verify_generation(&ConicSpec::Ellipse(e), &res, &CanonicalPlane::Rho.plane3()).unwrap();
        assert!(report.passed, "{sel:?}");
        let res = cone_from_hyperbola(&h, 0.7, sel).unwrap();
        let report = verify_generation(&ConicSpec::Hyperbola(h), &res, &CanonicalPlane::Tau.plane3()).unwrap();
        assert!(report.passed, "{sel:?}");
    }
}

#[test]
fn single_precision_construction() {
    let e = dandelin::conic::EllipseSpec::<f32>::from_radii(3.0, 1.0).unwrap();
    let res = cone_from_ellipse(&e, 1.0f32, FamilySelector::default()).unwrap();
    let apex = res.apex().unwrap();
    assert!((apex.x + 2.0).abs() < 1e-5 && (apex.z - 3.0).abs() < 1e-5);
}
