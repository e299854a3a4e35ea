use std::path::Path;
use std::process::{Command, Output};

use dandelin::{cone_from_ellipse, cone_from_hyperbola, Ellipse, FamilySelector, Hyperbola, ImplicitCurve};
use dandelin_cli::locus::{EllipseRow, HyperbolaRow, ELLIPSE_HEADER, HYPERBOLA_HEADER};

const SQRT3: f64 = 1.7320508075688772;

fn dandelin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dandelin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn csv_rows<T: serde::de::DeserializeOwned>(text: &str) -> (Vec<String>, Vec<T>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader.deserialize().map(Result::unwrap).collect();
    (header, rows)
}

/// Pulls `data-<key>="..."` values out of every element carrying `class`.
fn data_attrs(svg: &str, class: &str, key: &str) -> Vec<f64> {
    let class_attr = format!(r#"class="{class}""#);
    let needle = format!(r#"data-{key}=""#);
    svg.lines()
        .filter(|l| l.contains(&class_attr))
        .map(|l| {
            let start = l.find(&needle).unwrap() + needle.len();
            let end = start + l[start..].find('"').unwrap();
            l[start..end].parse().unwrap()
        })
        .collect()
}

#[test]
fn ellipse_locus_csv() {
    let out = dandelin(&["ellipse-locus", "--ra", "3", "--rb", "1", "--radii", "0.1:1.7:0.1", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("r,apex_x,apex_z,diff_dist,residual\n"));
    let (header, rows): (_, Vec<EllipseRow>) = csv_rows(&text);
    assert_eq!(header, ELLIPSE_HEADER);
    assert_eq!(rows.len(), 17);
    for row in &rows {
        assert!(row.residual.abs() <= 1e-9, "{row:?}");
        assert!((row.diff_dist.abs() - 2.0).abs() <= 1e-9, "{row:?}");
    }
}

#[test]
fn ellipse_locus_parameter_errors() {
    let out = dandelin(&["ellipse-locus", "--ra", "1", "--rb", "1", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degenerate circle: locus is the axis"));

    let out = dandelin(&["ellipse-locus", "--ra", "3", "--rb", "1", "--radii", "2:3:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("out of range"), "{}", stderr(&out));

    let out = dandelin(&["ellipse-locus", "--ra", "1", "--rb", "3", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = dandelin(&["ellipse-locus", "--ra", "3", "--rb", "1", "--radii", "1:2:0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hyperbola_locus_csv() {
    let out = dandelin(&["hyperbola-locus", "--ah", "1", "--ch", "2", "--radii", "0.5:3.0:0.25", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (header, rows): (_, Vec<HyperbolaRow>) = csv_rows(&stdout(&out));
    assert_eq!(header, HYPERBOLA_HEADER);
    assert_eq!(rows.len(), 11);
    for row in &rows {
        assert!((row.sum_dist - 4.0).abs() <= 1e-9, "{row:?}");
        assert!((row.r1 * row.r2 - 3.0).abs() <= 1e-12, "{row:?}");
    }

    let out = dandelin(&["hyperbola-locus", "--ah", "1", "--ch", "2", "--r", "1.7320508075688772"]);
    let (_, rows): (_, Vec<HyperbolaRow>) = csv_rows(&stdout(&out));
    assert!(rows[0].g_x.abs() <= 1e-12);
    assert!((rows[0].g_y - SQRT3).abs() <= 1e-12);
}

#[test]
fn empty_range_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    let out = dandelin(&[
        "hyperbola-locus", "--ah", "1", "--ch", "2", "--radii", "3:1:0.5",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "r1,r2,g_x,g_y,sum_dist,residual\n");
}

#[test]
fn json_locus_round_trip() {
    let out = dandelin(&["ellipse-locus", "--ra", "5", "--rb", "2", "--radii", "0.2:3:0.2", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["locus"]["type"], "hyperbola");
    let rows: Vec<EllipseRow> = serde_json::from_value(doc["rows"].clone()).unwrap();
    let h = dandelin::vertex_locus_hyperbola(&Ellipse::from_radii(5.0, 2.0).unwrap())
        .hyperbola()
        .unwrap();
    for row in rows {
        let apex = dandelin::Point2::new(row.apex_x, row.apex_z);
        assert!((h.implicit_residual(apex) - row.residual).abs() <= 1e-12);
    }
}

#[test]
fn cone_document() {
    let out = dandelin(&["cone", "--ra", "3", "--rb", "1", "--r", "1", "--focus", "f1", "--side", "above"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "cone");
    let apex: Vec<f64> = serde_json::from_value(doc["apex"].clone()).unwrap();
    assert!((apex[0] + 2.0).abs() <= 1e-12 && apex[1] == 0.0 && (apex[2] - 3.0).abs() <= 1e-12);
    assert!((doc["half_angle_deg"].as_f64().unwrap() - 26.5650512).abs() <= 1e-7);

    let spheres = doc["spheres"].as_array().unwrap();
    assert_eq!(spheres.len(), 2);
    let touch: Vec<f64> = serde_json::from_value(spheres[1]["focus_contact"].clone()).unwrap();
    assert!((touch[0] - 1.0).abs() <= 1e-9);
    let line = &spheres[0]["contact_circle"]["section_line"];
    assert!((line["point"][0].as_f64().unwrap() + 4.0).abs() <= 1e-12);

    let out = dandelin(&["cone", "--ra", "3", "--rb", "1", "--r", "1.7320508075688772"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "cylinder");
    assert_eq!(doc["limiting_case"], true);

    let out = dandelin(&["cone", "--ah", "1", "--ch", "2", "--r", "1.7320508075688772"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((doc["half_angle_deg"].as_f64().unwrap() - 60.0).abs() <= 1e-10);

    assert_eq!(dandelin(&["cone", "--ra", "3", "--rb", "1"]).status.code(), Some(2));
    assert_eq!(dandelin(&["cone", "--r", "1"]).status.code(), Some(2));
    assert_eq!(dandelin(&["cone", "--ra", "3", "--rb", "1", "--r", "2"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = dandelin(&["verify", "--trials", "1", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("overall: PASS\n"));

    let out = dandelin(&["verify", "--trials", "3", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL") && text.contains("first failure: trial 0"), "{text}");

    let out = dandelin(&["verify", "--trials", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"], "PASS");
    assert_eq!(doc["generator"], "splitmix64");

    assert_eq!(dandelin(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(dandelin(&["verify", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(dandelin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn conjunction_markers_match_constructions() {
    let out = dandelin(&["render", "conjunction", "--ra", "3", "--rb", "1", "--cones", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let svg = stdout(&out);
    assert!(svg.contains(r#"class="ellipse""#) && svg.contains(r#"class="hyperbola""#));

    let e = Ellipse::from_radii(3.0, 1.0).unwrap();
    let radii = data_attrs(&svg, "apex ellipse-family", "r");
    let xs = data_attrs(&svg, "apex ellipse-family", "x");
    let ys = data_attrs(&svg, "apex ellipse-family", "y");
    assert_eq!(radii.len(), 5);
    for ((r, x), y) in radii.iter().zip(xs).zip(ys) {
        let apex = cone_from_ellipse(&e, *r, FamilySelector::default())
            .unwrap()
            .construction
            .apex
            .unwrap();
        assert_eq!((apex.x, apex.y), (x, y));
    }

    let h = Hyperbola::new(1.0, 2.0).unwrap();
    let radii = data_attrs(&svg, "apex hyperbola-family", "r");
    assert_eq!(radii.len(), 5);
    for (r, (x, y)) in radii.iter().zip(
        data_attrs(&svg, "apex hyperbola-family", "x")
            .into_iter()
            .zip(data_attrs(&svg, "apex hyperbola-family", "y")),
    ) {
        let g = cone_from_hyperbola(&h, *r, FamilySelector::default())
            .unwrap()
            .construction
            .apex
            .unwrap();
        assert_eq!((g.x, g.y), (x, y));
        assert!(e.implicit_residual(g).abs() <= 1e-9);
    }

    let out = dandelin(&["render", "conjunction", "--ra", "3", "--rb", "1", "--cones", "0"]);
    let svg = stdout(&out);
    assert!(svg.contains(r#"class="ellipse""#));
    assert!(!svg.contains("class=\"apex"));
}

#[test]
fn render_views_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tau.svg");
    let out = dandelin(&["render", "tau-section", "--ra", "3", "--rb", "1", "--r", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(data_attrs(&svg, "apex", "x"), vec![-1.9999999999999998]);
    assert!(svg.contains(r#"class="sphere-section""#));

    let out = dandelin(&["render", "rho-section", "--ah", "1", "--ch", "2", "--r", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(">K</text>"));

    assert_eq!(dandelin(&["render", "tau-section", "--ra", "3", "--rb", "1"]).status.code(), Some(2));
    assert_eq!(dandelin(&["render", "rho-section", "--ra", "3", "--rb", "1", "--r", "1"]).status.code(), Some(2));
    let missing = Path::new("/nonexistent-dir/fig.svg");
    let out = dandelin(&["render", "conjunction", "--ra", "3", "--rb", "1", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let runs: [&[&str]; 5] = [
        &["ellipse-locus", "--ra", "3", "--rb", "1", "--radii", "0.1:1.7:0.1"],
        &["hyperbola-locus", "--ah", "1", "--ch", "2", "--radii", "0.5:3:0.25", "--format", "json"],
        &["cone", "--ah", "1.5", "--ch", "4", "--r", "0.7", "--focus", "f2", "--side", "below"],
        &["verify", "--trials", "5", "--seed", "99", "--format", "json"],
        &["render", "conjunction", "--ra", "4", "--rb", "1.5", "--cones", "3"],
    ];
    for args in runs {
        let a = dandelin(args);
        let b = dandelin(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
