//! Right circular cones through a given ellipse or hyperbola.
//!
//! An ellipse is cut from infinitely many cones; their apexes trace the
//! hyperbola whose foci are the ellipse's vertices and whose vertices are
//! its foci. The same duality sends the apexes of cones through a hyperbola
//! onto the conjugate ellipse. This crate builds those cones from planar
//! tangent constructions, places their Dandelin spheres, and checks every
//! result with an independent cone-plane section oracle.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`.
//!
//! ```
//! use dandelin::{cone_from_ellipse, Ellipse, FamilySelector};
//!
//! let e = Ellipse::from_radii(3.0, 1.0).unwrap();
//! let cone = cone_from_ellipse(&e, 1.0, FamilySelector::default()).unwrap();
//! let apex = cone.apex().unwrap();
//! assert!((apex.x + 2.0).abs() < 1e-12 && (apex.z - 3.0).abs() < 1e-12);
//! ```

pub mod conic;
pub mod cone;
pub mod geom;
pub mod linalg;
pub mod scalar;
pub mod section;
pub mod suite;

pub use conic::{
    asymptotes, canonicalize_conic, classify_conic, ellipse_from_radii, vertex_locus_ellipse,
    vertex_locus_hyperbola, CanonicalPlane, ConicError, ConicKind, EllipseApexLocus,
    ImplicitCurve,
};
pub use cone::{
    asymptote_limit_check, cone_from_ellipse, cone_from_hyperbola, contact_circle,
    dandelin_spheres, locus_sample, max_sphere_radius, second_dandelin_sphere, FamilySelector,
    FocusChoice, Side,
};
pub use scalar::Scalar;
pub use section::{
    cone_implicit, fit_conic, intersect_cone_plane, intersect_generator_plane,
    sample_section_points, verify_generation, Nappe, SectionError,
};
pub use suite::{run_suite, SuiteConfig};

pub type Vec2 = geom::Vec2<f64>;
pub type Vec3 = geom::Vec3<f64>;
pub type Point2 = geom::Point2<f64>;
pub type Point3 = geom::Point3<f64>;
pub type Line2 = geom::Line2<f64>;
pub type Line3 = geom::Line3<f64>;
pub type Circle2 = geom::Circle2<f64>;
pub type Plane3 = geom::Plane3<f64>;
pub type Sphere3 = geom::Sphere3<f64>;
pub type Circle3 = geom::Circle3<f64>;
pub type Ellipse = conic::EllipseSpec<f64>;
pub type Hyperbola = conic::HyperbolaSpec<f64>;
pub type ConicSpec = conic::ConicSpec<f64>;
pub type Conic2General = conic::Conic2General<f64>;
pub type ConicGeometry = conic::ConicGeometry<f64>;
pub type Cone3 = cone::Cone3<f64>;
pub type CylinderLimit = cone::CylinderLimit<f64>;
pub type Generator = cone::Generator<f64>;
pub type ConeResult = cone::ConeResult<f64>;
pub type ConeError = cone::ConeError<f64>;
pub type LocusPoint = cone::LocusPoint<f64>;
pub type SectionReport = section::SectionReport<f64>;
pub type SuiteReport = suite::SuiteReport;
pub type GeomError = geom::GeomError<f64>;
