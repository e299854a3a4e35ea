use serde::Serialize;

use dandelin::geom::intersect_planes;
use dandelin::{
    cone_from_ellipse, cone_from_hyperbola, contact_circle, second_dandelin_sphere, Circle3,
    ConeResult, Generator, Plane3, Point3, Sphere3,
};

use crate::args::ConeArgs;
use crate::error::CliError;
use crate::output::{emit, json_bytes, Curve, CurveDoc, SelectorDoc};

fn arr(p: Point3) -> [f64; 3] {
    [p.x, p.y, p.z]
}

#[derive(Debug, Serialize)]
pub struct LineDoc {
    pub point: [f64; 3],
    pub direction: [f64; 3],
}

/// Circle where a sphere touches the generator, and its plane ω.
#[derive(Debug, Serialize)]
pub struct ContactDoc {
    pub center: [f64; 3],
    pub radius: f64,
    pub normal: [f64; 3],
    /// `normal · x = offset` on ω.
    pub offset: f64,
    /// ω ∩ section plane; absent when they are parallel.
    pub section_line: Option<LineDoc>,
}

#[derive(Debug, Serialize)]
pub struct SphereDoc {
    pub center: [f64; 3],
    pub radius: f64,
    /// Where the sphere touches the section plane.
    pub focus_contact: [f64; 3],
    pub contact_circle: ContactDoc,
}

#[derive(Debug, Serialize)]
pub struct ConeDoc {
    pub kind: &'static str,
    pub limiting_case: bool,
    pub curve: CurveDoc,
    pub section_plane: &'static str,
    pub selector: SelectorDoc,
    pub radius: f64,
    pub partner_radius: Option<f64>,
    pub apex: Option<[f64; 3]>,
    pub axis_point: [f64; 3],
    pub axis_direction: [f64; 3],
    pub half_angle_rad: Option<f64>,
    pub half_angle_deg: Option<f64>,
    pub cylinder_radius: Option<f64>,
    pub spheres: Vec<SphereDoc>,
}

fn contact_doc(circle: Circle3, section: &Plane3) -> ContactDoc {
    let section_line = intersect_planes(&circle.plane(), section)
        .ok()
        .map(|l| LineDoc {
            point: arr(l.point),
            direction: arr(l.direction),
        });
    ContactDoc {
        center: arr(circle.center),
        radius: circle.radius,
        normal: arr(circle.normal),
        offset: circle.normal.dot(circle.center),
        section_line,
    }
}

fn sphere_doc(
    generator: &Generator,
    sphere: Sphere3,
    section: &Plane3,
) -> Result<SphereDoc, CliError> {
    let circle = match generator {
        Generator::Cone(cone) => contact_circle(cone, &sphere)?,
        Generator::Cylinder(cyl) => Circle3 {
            center: sphere.center,
            radius: sphere.radius,
            normal: cyl.axis.direction,
        },
    };
    Ok(SphereDoc {
        center: arr(sphere.center),
        radius: sphere.radius,
        focus_contact: arr(section.project(sphere.center)),
        contact_circle: contact_doc(circle, section),
    })
}

pub fn cone_doc(curve: &Curve, radius: f64, result: &ConeResult) -> Result<ConeDoc, CliError> {
    let section = result.section_plane.plane3::<f64>();
    let mut spheres: Vec<Sphere3> = result.spheres.clone();
    if let (Curve::Ellipse(_), Generator::Cone(cone)) = (curve, &result.generator) {
        spheres.push(second_dandelin_sphere(cone, &section)?);
    }
    let spheres = spheres
        .into_iter()
        .map(|s| sphere_doc(&result.generator, s, &section))
        .collect::<Result<Vec<_>, _>>()?;
    let (curve_doc, partner_radius) = match curve {
        Curve::Ellipse(e) => (CurveDoc::ellipse(e), None),
        Curve::Hyperbola(h) => (CurveDoc::hyperbola(h), Some(result.spheres[1].radius)),
    };
    let common = |kind, axis_point, half_angle: Option<f64>, cylinder_radius| ConeDoc {
        kind,
        limiting_case: result.is_cylinder(),
        curve: curve_doc,
        section_plane: result.section_plane.name(),
        selector: result.selector.into(),
        radius,
        partner_radius,
        apex: result.apex().map(arr),
        axis_point,
        axis_direction: arr(result.generator.axis_direction()),
        half_angle_rad: half_angle,
        half_angle_deg: half_angle.map(f64::to_degrees),
        cylinder_radius,
        spheres: Vec::new(),
    };
    let mut doc = match &result.generator {
        Generator::Cone(c) => common("cone", arr(c.apex), Some(c.half_angle), None),
        Generator::Cylinder(c) => common("cylinder", arr(c.axis.point), None, Some(c.radius)),
    };
    doc.spheres = spheres;
    Ok(doc)
}

pub fn cmd_cone(args: &ConeArgs) -> Result<(), CliError> {
    let curve = Curve::from_params(args.curve.params()?)?;
    let sel = args.selector.selector();
    let result = match &curve {
        Curve::Ellipse(e) => cone_from_ellipse(e, args.r, sel)?,
        Curve::Hyperbola(h) => cone_from_hyperbola(h, args.r, sel)?,
    };
    let doc = cone_doc(&curve, args.r, &result)?;
    emit(args.out.as_deref(), &json_bytes(&doc)?)
}
