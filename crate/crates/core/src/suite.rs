//! Seeded randomized invariant suite over both cone families.
//!
//! The generator is SplitMix64 seeded with the state equal to the seed.
//! A uniform draw in `[0, 1)` is `(next_u64 >> 11) · 2⁻⁵³`; a selector is
//! `FamilySelector::ALL[next_u64 >> 62]`. Each trial draws, in order:
//!
//! 1. ellipse: `a ∈ [0.5, 5]`, `e ∈ [0.05, 0.95]`, `r/r_max ∈ [0.01, 0.99]`,
//!    selector, then a log-uniform factor in `[0.05, 20]` for the closure cone;
//! 2. hyperbola: `a_h ∈ [0.5, 5]`, `a_h/c_h ∈ [0.05, 0.95]`, a log-uniform
//!    factor in `[0.05, 20]` times `sqrt(r_a r_b)` for `r1`, selector.

use std::fmt;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::cone::{
    cone_from_ellipse, cone_from_hyperbola, locus_sample, max_sphere_radius,
    second_dandelin_sphere, ConeResult, FamilySelector, FocusChoice, Generator, Side,
};
use crate::conic::{
    vertex_locus_ellipse, vertex_locus_hyperbola, ConicSpec, EllipseSpec, HyperbolaSpec,
    ImplicitCurve,
};
use crate::geom::{Line2, Plane3, Point3, Sphere3};
use crate::section::verify_generation;

/// Tolerance of the exact identities (radius limit, duality round trip).
pub const IDENTITY_TOL: f64 = 1e-12;
/// Pass threshold of the section oracle, relative to the curve scale.
pub const ORACLE_TOL: f64 = 1e-6;
/// Required agreement between the two oracle paths.
pub const AGREEMENT_TOL: f64 = 1e-7;
/// Tangent-length identities hold at least this tightly.
pub const TANGENT_LENGTH_TOL: f64 = 1e-10;

const ELEMENT_PROBES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    /// Tolerance for the construction properties, relative to the curve scale.
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 42,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub passed: usize,
    /// Largest normalized deviation seen.
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Parameters of the first failing instance.
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            checked: 0,
            passed: 0,
            max_deviation: 0.0,
            tolerance,
            first_failure: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.checked
    }

    fn check(&mut self, deviation: f64, context: impl FnOnce() -> String) {
        self.checked += 1;
        if deviation > self.max_deviation || deviation.is_nan() {
            self.max_deviation = deviation;
        }
        if deviation <= self.tolerance {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(format!("{} (deviation {deviation:e})", context()));
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::all_passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Ellipse instance of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseTrial {
    pub r_a: f64,
    pub r_b: f64,
    pub r: f64,
    pub selector: FamilySelector,
    /// `r1` of the cone built on the ellipse's apex hyperbola.
    pub closure_r1: f64,
}

/// Hyperbola instance of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolaTrial {
    pub a_h: f64,
    pub c_h: f64,
    pub r1: f64,
    pub selector: FamilySelector,
}

fn selector_label(sel: FamilySelector) -> String {
    let focus = match sel.focus {
        FocusChoice::F1 => "f1",
        FocusChoice::F2 => "f2",
    };
    let side = match sel.side {
        Side::Above => "above",
        Side::Below => "below",
    };
    format!("--focus {focus} --side {side}")
}

impl fmt::Display for EllipseTrial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "--ra {} --rb {} --r {} {} (closure r1 {})",
            self.r_a,
            self.r_b,
            self.r,
            selector_label(self.selector),
            self.closure_r1
        )
    }
}

impl fmt::Display for HyperbolaTrial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "--ah {} --ch {} --r {} {}",
            self.a_h,
            self.c_h,
            self.r1,
            selector_label(self.selector)
        )
    }
}

fn unit(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (-53f64).exp2()
}

fn uniform(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit(rng)
}

fn log_uniform(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    (lo.ln() + (hi.ln() - lo.ln()) * unit(rng)).exp()
}

fn selector(rng: &mut SplitMix64) -> FamilySelector {
    FamilySelector::ALL[(rng.next_u64() >> 62) as usize]
}

impl EllipseTrial {
    fn draw(rng: &mut SplitMix64) -> Self {
        let a = uniform(rng, 0.5, 5.0);
        let c = a * uniform(rng, 0.05, 0.95);
        let (r_a, r_b) = (a + c, a - c);
        let r = uniform(rng, 0.01, 0.99) * (r_a * r_b).sqrt();
        let selector = selector(rng);
        // apex hyperbola has focal radii a + c and a - c as well
        let closure_r1 = log_uniform(rng, 0.05, 20.0) * (r_a * r_b).sqrt();
        Self {
            r_a,
            r_b,
            r,
            selector,
            closure_r1,
        }
    }
}

impl HyperbolaTrial {
    fn draw(rng: &mut SplitMix64) -> Self {
        let a_h = uniform(rng, 0.5, 5.0);
        let c_h = a_h / uniform(rng, 0.05, 0.95);
        let r1 = log_uniform(rng, 0.05, 20.0) * (c_h * c_h - a_h * a_h).sqrt();
        let selector = selector(rng);
        Self {
            a_h,
            c_h,
            r1,
            selector,
        }
    }
}

/// The first `n` trial instances, drawn exactly as [`run_suite`] draws them.
pub fn draw_trials(seed: u64, n: usize) -> Vec<(EllipseTrial, HyperbolaTrial)> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let e = EllipseTrial::draw(&mut rng);
            let h = HyperbolaTrial::draw(&mut rng);
            (e, h)
        })
        .collect()
}

struct Tallies {
    max_radius: PropertyOutcome,
    ellipse_apex_law: PropertyOutcome,
    ellipse_locus_residual: PropertyOutcome,
    branch_assignment: PropertyOutcome,
    tangent_lengths: PropertyOutcome,
    dandelin_tangency: PropertyOutcome,
    second_sphere: PropertyOutcome,
    hyperbola_apex_law: PropertyOutcome,
    hyperbola_locus_residual: PropertyOutcome,
    radius_product: PropertyOutcome,
    tangent_sum: PropertyOutcome,
    collinearity: PropertyOutcome,
    duality_round_trip: PropertyOutcome,
    conjunction_closure: PropertyOutcome,
    oracle_ellipse: PropertyOutcome,
    oracle_hyperbola: PropertyOutcome,
    oracle_agreement: PropertyOutcome,
}

impl Tallies {
    fn new(tol: f64) -> Self {
        Self {
            max_radius: PropertyOutcome::new("max-radius", IDENTITY_TOL),
            ellipse_apex_law: PropertyOutcome::new("ellipse-apex-law", tol),
            ellipse_locus_residual: PropertyOutcome::new("ellipse-locus-residual", tol),
            branch_assignment: PropertyOutcome::new("branch-assignment", 0.0),
            tangent_lengths: PropertyOutcome::new("tangent-lengths", tol.min(TANGENT_LENGTH_TOL)),
            dandelin_tangency: PropertyOutcome::new("dandelin-tangency", tol),
            second_sphere: PropertyOutcome::new("second-sphere", tol),
            hyperbola_apex_law: PropertyOutcome::new("hyperbola-apex-law", tol),
            hyperbola_locus_residual: PropertyOutcome::new("hyperbola-locus-residual", tol),
            radius_product: PropertyOutcome::new("radius-product", tol),
            tangent_sum: PropertyOutcome::new("tangent-sum", tol),
            collinearity: PropertyOutcome::new("collinearity", tol),
            duality_round_trip: PropertyOutcome::new("duality-round-trip", IDENTITY_TOL),
            conjunction_closure: PropertyOutcome::new("conjunction-closure", tol),
            oracle_ellipse: PropertyOutcome::new("oracle-ellipse", ORACLE_TOL),
            oracle_hyperbola: PropertyOutcome::new("oracle-hyperbola", ORACLE_TOL),
            oracle_agreement: PropertyOutcome::new("oracle-agreement", AGREEMENT_TOL),
        }
    }

    fn into_vec(self) -> Vec<PropertyOutcome> {
        vec![
            self.max_radius,
            self.ellipse_apex_law,
            self.ellipse_locus_residual,
            self.branch_assignment,
            self.tangent_lengths,
            self.dandelin_tangency,
            self.second_sphere,
            self.hyperbola_apex_law,
            self.hyperbola_locus_residual,
            self.radius_product,
            self.tangent_sum,
            self.collinearity,
            self.duality_round_trip,
            self.conjunction_closure,
            self.oracle_ellipse,
            self.oracle_hyperbola,
            self.oracle_agreement,
        ]
    }
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

/// Worst tangency defect of `sphere` against `plane` (touching at `focus`)
/// and against the generator's element lines.
fn tangency_defect(
    generator: &Generator<f64>,
    sphere: &Sphere3<f64>,
    plane: &Plane3<f64>,
    focus: Point3<f64>,
) -> f64 {
    let to_plane = (plane.signed_distance(sphere.center).abs() - sphere.radius).abs();
    let contact = plane.project(sphere.center).distance(focus);
    let to_elements = (0..ELEMENT_PROBES)
        .map(|i| {
            let phi = std::f64::consts::TAU * i as f64 / ELEMENT_PROBES as f64;
            (generator.element_line(phi).distance_to(sphere.center) - sphere.radius).abs()
        })
        .fold(0.0, f64::max);
    to_plane.max(contact).max(to_elements)
}

fn construction_tangency(result: &ConeResult<f64>) -> f64 {
    let plane = result.section_plane.plane3();
    result
        .spheres
        .iter()
        .zip(&result.focus_contacts)
        .map(|(s, &f)| tangency_defect(&result.generator, s, &plane, f))
        .fold(0.0, f64::max)
}

fn check_ellipse(index: usize, t: &EllipseTrial, p: &mut Tallies) {
    let ctx = || format!("trial {index}: ellipse {t}");
    let e = match EllipseSpec::from_radii(t.r_a, t.r_b) {
        Ok(e) => e,
        Err(err) => {
            p.max_radius.check(f64::INFINITY, || format!("{}: {err}", ctx()));
            return;
        }
    };
    let spec = ConicSpec::Ellipse(e);
    let scale = spec.scale();
    p.max_radius.check(rel(max_sphere_radius(&e), e.b()), ctx);

    match vertex_locus_hyperbola(&e).hyperbola() {
        Ok(h) => {
            let back = vertex_locus_ellipse(&h);
            let dev = rel(back.r_a, e.r_a).max(rel(back.r_b, e.r_b));
            let dev = if back.plane == e.plane { dev } else { f64::INFINITY };
            p.duality_round_trip.check(dev, ctx);

            match cone_from_hyperbola(&h, t.closure_r1, t.selector) {
                Ok(res) => {
                    let g = res.construction.apex.expect("hyperbola cones have an apex");
                    p.conjunction_closure
                        .check(e.implicit_residual(g).abs() / e.residual_scale(g), ctx);
                }
                Err(err) => p
                    .conjunction_closure
                    .check(f64::INFINITY, || format!("{}: {err}", ctx())),
            }
        }
        Err(err) => p
            .duality_round_trip
            .check(f64::INFINITY, || format!("{}: {err}", ctx())),
    }

    let res = match cone_from_ellipse(&e, t.r, t.selector) {
        Ok(res) => res,
        Err(err) => {
            let fail = |o: &mut PropertyOutcome| o.check(f64::INFINITY, || format!("{}: {err}", ctx()));
            fail(&mut p.ellipse_apex_law);
            fail(&mut p.dandelin_tangency);
            fail(&mut p.oracle_ellipse);
            return;
        }
    };

    if let Some(Ok(point)) = locus_sample(&spec, &[t.r], t.selector).pop() {
        p.ellipse_apex_law
            .check((point.distance_law.abs() - 2.0 * e.c()).abs() / scale, ctx);
        p.ellipse_locus_residual
            .check(point.residual.abs() / point.residual_scale, ctx);
    } else {
        p.ellipse_apex_law.check(f64::INFINITY, ctx);
    }

    let focus = match t.selector.focus {
        FocusChoice::F1 => e.focus1(),
        FocusChoice::F2 => e.focus2(),
    };
    let other_focus = match t.selector.focus {
        FocusChoice::F1 => e.focus2(),
        FocusChoice::F2 => e.focus1(),
    };
    let c = &res.construction;
    if let Some(apex) = c.apex {
        let left = matches!(t.selector.focus, FocusChoice::F1);
        let up = matches!(t.selector.side, Side::Above);
        let ok = (apex.x < 0.0) == left && (apex.y > 0.0) == up;
        p.branch_assignment.check(if ok { 0.0 } else { 1.0 }, ctx);
    }
    let [h, d] = c.contacts;
    let [va, vb] = c.anchors;
    let dev = (va.distance(h) - va.distance(focus))
        .abs()
        .max((vb.distance(d) - vb.distance(focus)).abs());
    p.tangent_lengths.check(dev / scale, ctx);
    p.dandelin_tangency.check(construction_tangency(&res) / scale, ctx);

    if let Generator::Cone(cone) = &res.generator {
        let plane = e.plane.plane3();
        let dev = match second_dandelin_sphere(cone, &plane) {
            Ok(s) => tangency_defect(&res.generator, &s, &plane, e.plane.embed(other_focus)),
            Err(_) => f64::INFINITY,
        };
        p.second_sphere.check(dev / scale, ctx);
    }

    check_oracle(&spec, &res, &mut p.oracle_ellipse, &mut p.oracle_agreement, ctx);
}

fn check_oracle(
    spec: &ConicSpec<f64>,
    res: &ConeResult<f64>,
    outcome: &mut PropertyOutcome,
    agreement: &mut PropertyOutcome,
    ctx: impl Fn() -> String,
) {
    match verify_generation(spec, res, &spec.plane().plane3()) {
        Ok(report) => {
            let dev = report
                .focus_deviation
                .max(report.vertex_deviation)
                .max(report.max_point_residual);
            outcome.check(dev / spec.scale(), &ctx);
            agreement.check(report.path_agreement, &ctx);
        }
        Err(err) => outcome.check(f64::INFINITY, || format!("{}: {err}", ctx())),
    }
}

fn check_hyperbola(index: usize, t: &HyperbolaTrial, p: &mut Tallies) {
    let ctx = || format!("trial {index}: hyperbola {t}");
    let h = match HyperbolaSpec::new(t.a_h, t.c_h) {
        Ok(h) => h,
        Err(err) => {
            p.hyperbola_apex_law.check(f64::INFINITY, || format!("{}: {err}", ctx()));
            return;
        }
    };
    let spec = ConicSpec::Hyperbola(h);
    let scale = spec.scale();

    let dual = vertex_locus_ellipse(&h);
    let dev = match vertex_locus_hyperbola(&dual).hyperbola() {
        Ok(back) if back.plane == h.plane => rel(back.a_h, h.a_h).max(rel(back.c_h, h.c_h)),
        _ => f64::INFINITY,
    };
    p.duality_round_trip.check(dev, ctx);

    let res = match cone_from_hyperbola(&h, t.r1, t.selector) {
        Ok(res) => res,
        Err(err) => {
            let fail = |o: &mut PropertyOutcome| o.check(f64::INFINITY, || format!("{}: {err}", ctx()));
            fail(&mut p.hyperbola_apex_law);
            fail(&mut p.dandelin_tangency);
            fail(&mut p.oracle_hyperbola);
            return;
        }
    };

    if let Some(Ok(point)) = locus_sample(&spec, &[t.r1], t.selector).pop() {
        p.hyperbola_apex_law
            .check((point.distance_law - 2.0 * h.c_h).abs() / scale, ctx);
        p.hyperbola_locus_residual
            .check(point.residual.abs() / point.residual_scale, ctx);
    } else {
        p.hyperbola_apex_law.check(f64::INFINITY, ctx);
    }

    let (r_a, r_b) = h.focal_radii();
    let c = &res.construction;
    let (o3, o4) = (&c.circles[0], &c.circles[1]);
    let near = c.plane.project(res.focus_contacts[0]);
    let far = c.plane.project(res.focus_contacts[1]);
    let from3 = c.anchors[0];
    let proportion = rel(o3.radius / from3.distance(near), from3.distance(far) / o4.radius);
    p.radius_product
        .check(rel(o3.radius * o4.radius, r_a * r_b).max(proportion), ctx);

    let g = c.apex.expect("hyperbola cones have an apex");
    let [k, m] = c.contacts;
    p.tangent_sum
        .check((g.distance(k) + g.distance(m) - (r_b - r_a).abs()).abs() / scale, ctx);
    let off_axis = Line2::through(g, o3.center)
        .map(|axis| axis.distance_to(o4.center))
        .unwrap_or(f64::INFINITY);
    p.collinearity.check(off_axis / scale, ctx);
    p.dandelin_tangency.check(construction_tangency(&res) / scale, ctx);

    check_oracle(&spec, &res, &mut p.oracle_hyperbola, &mut p.oracle_agreement, ctx);
}

/// Runs every property over `config.trials` seeded trials.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let mut tallies = Tallies::new(config.tol);
    for (index, (e, h)) in draw_trials(config.seed, config.trials).iter().enumerate() {
        check_ellipse(index, e, &mut tallies);
        check_hyperbola(index, h, &mut tallies);
    }
    SuiteReport {
        config: *config,
        properties: tallies.into_vec(),
    }
}
