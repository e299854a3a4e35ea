use std::f64::consts::TAU;

use dandelin::{
    asymptotes, cone_from_ellipse, cone_from_hyperbola, max_sphere_radius, vertex_locus_ellipse,
    vertex_locus_hyperbola, ConeResult, Ellipse, EllipseApexLocus, FamilySelector, Hyperbola,
    Point2,
};

use crate::args::{RenderArgs, RenderView};
use crate::error::CliError;
use crate::output::{emit, Curve};
use crate::svg::{Svg, Viewport};

const CURVE_SAMPLES: usize = 240;

const ELLIPSE_STROKE: &str = "#1f4e9c";
const HYPERBOLA_STROKE: &str = "#b0302a";
const GUIDE_STROKE: &str = "#888888";
const ELEMENT_STROKE: &str = "#2d7a3a";

/// End of an element line drawn from `anchor` a little past both `apex`
/// and its tangency point.
fn element_end(anchor: Point2, apex: Point2, contact: Point2) -> Point2 {
    let reach = anchor.distance(apex).max(anchor.distance(contact)) * 1.15;
    match (apex - anchor).normalized() {
        Some(dir) => anchor + dir * reach,
        None => apex,
    }
}

fn ellipse_points(e: &Ellipse) -> Vec<Point2> {
    (0..=CURVE_SAMPLES)
        .map(|i| e.point_at(TAU * i as f64 / CURVE_SAMPLES as f64))
        .collect()
}

/// Branch points with `|t| ≤ t_max`, left branch then right branch.
fn hyperbola_branches(h: &Hyperbola, t_max: f64) -> [Vec<Point2>; 2] {
    let branch = |right| {
        (0..=CURVE_SAMPLES)
            .map(|i| h.point_at(-t_max + 2.0 * t_max * i as f64 / CURVE_SAMPLES as f64, right))
            .collect()
    };
    [branch(false), branch(true)]
}

/// Parameter range that carries a branch past the visible extent.
fn branch_reach(h: &Hyperbola, view: &Viewport) -> f64 {
    (2.0 * view.extent() / h.b_h().min(h.a_h)).asinh() + 0.1
}

fn draw_hyperbola(svg: &mut Svg, class: &str, h: &Hyperbola) {
    let t_max = branch_reach(h, svg.viewport());
    for branch in hyperbola_branches(h, t_max) {
        svg.polyline(class, HYPERBOLA_STROKE, &branch);
    }
    let reach = 2.0 * svg.viewport().extent();
    let (s1, s2) = asymptotes(h);
    for s in [s1, s2] {
        svg.segment("asymptote", GUIDE_STROKE, s.at(-reach), s.at(reach));
    }
}

fn family_radii_ellipse(e: &Ellipse, n: usize) -> Vec<f64> {
    let r_max = max_sphere_radius(e);
    (1..=n).map(|i| r_max * i as f64 / (n + 1) as f64).collect()
}

fn family_radii_hyperbola(h: &Hyperbola, n: usize) -> Vec<f64> {
    let (r_a, r_b) = h.focal_radii();
    let mid = (r_a * r_b).sqrt();
    match n {
        0 => Vec::new(),
        1 => vec![mid],
        _ => (0..n)
            .map(|i| mid * (-1.5 + 3.0 * i as f64 / (n - 1) as f64).exp())
            .collect(),
    }
}

fn conjunction(e: &Ellipse, cones: usize, sel: FamilySelector) -> Result<String, CliError> {
    let locus = vertex_locus_hyperbola(e);
    let from_ellipse: Vec<(f64, ConeResult)> = family_radii_ellipse(e, cones)
        .into_iter()
        .map(|r| Ok((r, cone_from_ellipse(e, r, sel)?)))
        .collect::<Result<_, CliError>>()?;
    let from_hyperbola: Vec<(f64, ConeResult)> = match &locus {
        EllipseApexLocus::Hyperbola(h) => family_radii_hyperbola(h, cones)
            .into_iter()
            .map(|r| Ok((r, cone_from_hyperbola(h, r, sel)?)))
            .collect::<Result<_, CliError>>()?,
        EllipseApexLocus::Axis(_) => Vec::new(),
    };

    let mut bounds = ellipse_points(e);
    if let EllipseApexLocus::Hyperbola(h) = &locus {
        let [left, right] = hyperbola_branches(h, 1.5);
        bounds.extend(left.into_iter().chain(right));
    }
    for (_, res) in from_ellipse.iter().chain(&from_hyperbola) {
        bounds.extend(res.construction.apex);
    }
    let mut svg = Svg::new(Viewport::fit(&bounds), "ellipse and its apex hyperbola");
    let reach = 2.0 * svg.viewport().extent();

    svg.segment("axis-line", GUIDE_STROKE, Point2::new(-reach, 0.0), Point2::new(reach, 0.0));
    svg.polyline("ellipse", ELLIPSE_STROKE, &ellipse_points(e));
    match &locus {
        EllipseApexLocus::Hyperbola(h) => draw_hyperbola(&mut svg, "hyperbola", h),
        EllipseApexLocus::Axis(_) => svg.segment(
            "hyperbola degenerate-axis",
            HYPERBOLA_STROKE,
            Point2::new(0.0, -reach),
            Point2::new(0.0, reach),
        ),
    }

    for (family, cones) in [("ellipse-family", &from_ellipse), ("hyperbola-family", &from_hyperbola)] {
        for (r, res) in cones.iter() {
            let Some(apex) = res.construction.apex else {
                continue;
            };
            for anchor in res.construction.anchors {
                svg.segment(&format!("element {family}"), ELEMENT_STROKE, apex, anchor);
            }
            svg.segment(
                &format!("element {family}"),
                ELEMENT_STROKE,
                res.construction.anchors[0],
                res.construction.anchors[1],
            );
            let fill = if family == "ellipse-family" { HYPERBOLA_STROKE } else { ELLIPSE_STROKE };
            svg.marker(&format!("apex {family}"), fill, apex, &[("r", *r)]);
        }
    }
    for (name, p) in [("A", e.vertex_a()), ("B", e.vertex_b()), ("F1", e.focus1()), ("F2", e.focus2())] {
        svg.marker("point", "black", p, &[]);
        svg.label(name, p);
    }
    Ok(svg.finish())
}

fn tau_section(e: &Ellipse, r: f64, sel: FamilySelector) -> Result<String, CliError> {
    let res = cone_from_ellipse(e, r, sel)?;
    let c = &res.construction;
    let circle = c.circles[0];
    let mut bounds = vec![
        e.vertex_a(),
        e.vertex_b(),
        circle.center + Point2::new(r, r),
        circle.center - Point2::new(r, r),
    ];
    bounds.extend(c.apex);
    let mut svg = Svg::new(Viewport::fit(&bounds), "tangent construction of a cone through an ellipse");
    let reach = 2.0 * svg.viewport().extent();

    svg.segment("axis-line", GUIDE_STROKE, Point2::new(-reach, 0.0), Point2::new(reach, 0.0));
    svg.segment("major-axis", ELLIPSE_STROKE, e.vertex_b(), e.vertex_a());
    svg.circle("sphere-section", HYPERBOLA_STROKE, circle.center, circle.radius);
    for ((line, anchor), contact) in c.elements.iter().zip(c.anchors).zip(c.contacts) {
        let far = match c.apex {
            Some(apex) => element_end(anchor, apex, contact),
            None => line.at(reach),
        };
        let near = match c.apex {
            Some(_) => anchor,
            None => line.at(-reach),
        };
        svg.segment("element", ELEMENT_STROKE, near, far);
    }
    if let Some(apex) = c.apex {
        svg.segment("cone-axis", GUIDE_STROKE, apex, circle.center);
        svg.marker("apex", "black", apex, &[("r", r)]);
        svg.label("E", apex);
    }
    for (name, p) in [
        ("A", e.vertex_a()),
        ("B", e.vertex_b()),
        ("F1", e.focus1()),
        ("F2", e.focus2()),
        ("O", circle.center),
        ("H", c.contacts[0]),
        ("D", c.contacts[1]),
    ] {
        svg.marker("point", "black", p, &[]);
        svg.label(name, p);
    }
    Ok(svg.finish())
}

fn rho_section(h: &Hyperbola, r1: f64, sel: FamilySelector) -> Result<String, CliError> {
    let res = cone_from_hyperbola(h, r1, sel)?;
    let c = &res.construction;
    let apex = c.apex.expect("hyperbola cones have an apex");
    let (o3, o4) = (c.circles[0], c.circles[1]);
    let dual = vertex_locus_ellipse(h);
    let mut bounds = ellipse_points(&dual);
    for o in [o3, o4] {
        bounds.push(o.center + Point2::new(o.radius, o.radius));
        bounds.push(o.center - Point2::new(o.radius, o.radius));
    }
    bounds.push(apex);
    bounds.extend(c.contacts);
    let mut svg = Svg::new(Viewport::fit(&bounds), "tangent construction of a cone through a hyperbola");
    let reach = 2.0 * svg.viewport().extent();

    svg.segment("axis-line", GUIDE_STROKE, Point2::new(-reach, 0.0), Point2::new(reach, 0.0));
    svg.polyline("ellipse", ELLIPSE_STROKE, &ellipse_points(&dual));
    svg.circle("sphere-section", HYPERBOLA_STROKE, o3.center, o3.radius);
    svg.circle("sphere-section", HYPERBOLA_STROKE, o4.center, o4.radius);
    for (anchor, contact) in c.anchors.into_iter().zip(c.contacts) {
        svg.segment("element", ELEMENT_STROKE, anchor, element_end(anchor, apex, contact));
    }
    svg.segment("cone-axis", GUIDE_STROKE, apex, o3.center);
    svg.segment("cone-axis", GUIDE_STROKE, apex, o4.center);
    svg.marker("apex", "black", apex, &[("r", r1), ("r2", o4.radius)]);
    svg.label("G", apex);
    for (name, p) in [
        ("A", h.focus_a()),
        ("B", h.focus_b()),
        ("F1", h.vertex_f1()),
        ("F2", h.vertex_f2()),
        ("K", c.contacts[0]),
        ("M", c.contacts[1]),
    ] {
        svg.marker("point", "black", p, &[]);
        svg.label(name, p);
    }
    Ok(svg.finish())
}

fn require_r(r: Option<f64>) -> Result<f64, CliError> {
    r.ok_or_else(|| CliError::Usage("this view needs --r".into()))
}

pub fn render(args: &RenderArgs) -> Result<String, CliError> {
    let curve = Curve::from_params(args.curve.params()?)?;
    let sel = args.selector.selector();
    match (args.view, curve) {
        (RenderView::Conjunction, Curve::Ellipse(e)) => conjunction(&e, args.cones, sel),
        (RenderView::Conjunction, Curve::Hyperbola(h)) => {
            conjunction(&vertex_locus_ellipse(&h), args.cones, sel)
        }
        (RenderView::TauSection, Curve::Ellipse(e)) => tau_section(&e, require_r(args.r)?, sel),
        (RenderView::RhoSection, Curve::Hyperbola(h)) => rho_section(&h, require_r(args.r)?, sel),
        (RenderView::TauSection, Curve::Hyperbola(_)) => Err(CliError::Usage(
            "tau-section draws a cone through an ellipse; give --ra and --rb".into(),
        )),
        (RenderView::RhoSection, Curve::Ellipse(_)) => Err(CliError::Usage(
            "rho-section draws a cone through a hyperbola; give --ah and --ch".into(),
        )),
    }
}

pub fn cmd_render(args: &RenderArgs) -> Result<(), CliError> {
    let svg = render(args)?;
    emit(args.out.as_deref(), svg.as_bytes())
}
