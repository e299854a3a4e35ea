use serde::{Deserialize, Serialize};

use dandelin::{
    locus_sample, vertex_locus_ellipse, vertex_locus_hyperbola, ConicSpec, Ellipse,
    FamilySelector, Hyperbola,
};

use crate::args::{EllipseLocusArgs, Format, HyperbolaLocusArgs};
use crate::error::CliError;
use crate::output::{emit, json_bytes, num, CurveDoc, SelectorDoc};

pub const ELLIPSE_HEADER: [&str; 5] = ["r", "apex_x", "apex_z", "diff_dist", "residual"];
pub const HYPERBOLA_HEADER: [&str; 6] = ["r1", "r2", "g_x", "g_y", "sum_dist", "residual"];

/// Apex of one cone through an ellipse, in the τ plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseRow {
    pub r: f64,
    pub apex_x: f64,
    pub apex_z: f64,
    /// `|EB| - |EA|`.
    pub diff_dist: f64,
    /// Implicit residual against the apex hyperbola.
    pub residual: f64,
}

/// Apex of one cone through a hyperbola, in the ρ plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolaRow {
    pub r1: f64,
    pub r2: f64,
    pub g_x: f64,
    pub g_y: f64,
    /// `|GF1| + |GF2|`.
    pub sum_dist: f64,
    /// Implicit residual against the dual ellipse.
    pub residual: f64,
}

#[derive(Serialize)]
struct LocusDoc<'a, R> {
    curve: CurveDoc,
    locus: CurveDoc,
    selector: SelectorDoc,
    rows: &'a [R],
}

fn row_error(r: f64, err: impl std::fmt::Display) -> CliError {
    CliError::Parameter(format!("r = {}: {err}", num(r)))
}

pub fn ellipse_rows(
    e: &Ellipse,
    radii: &[f64],
    sel: FamilySelector,
) -> Result<Vec<EllipseRow>, CliError> {
    vertex_locus_hyperbola(e).hyperbola()?;
    locus_sample(&ConicSpec::Ellipse(*e), radii, sel)
        .into_iter()
        .zip(radii)
        .map(|(res, &r)| {
            let p = res.map_err(|err| row_error(r, err))?;
            Ok(EllipseRow {
                r,
                apex_x: p.apex.x,
                apex_z: p.apex.y,
                diff_dist: p.distance_law,
                residual: p.residual,
            })
        })
        .collect()
}

pub fn hyperbola_rows(
    h: &Hyperbola,
    radii: &[f64],
    sel: FamilySelector,
) -> Result<Vec<HyperbolaRow>, CliError> {
    locus_sample(&ConicSpec::Hyperbola(*h), radii, sel)
        .into_iter()
        .zip(radii)
        .map(|(res, &r)| {
            let p = res.map_err(|err| row_error(r, err))?;
            Ok(HyperbolaRow {
                r1: r,
                r2: p.partner_radius.unwrap_or(f64::NAN),
                g_x: p.apex.x,
                g_y: p.apex.y,
                sum_dist: p.distance_law,
                residual: p.residual,
            })
        })
        .collect()
}

fn csv_bytes<const N: usize>(
    header: [&str; N],
    rows: impl Iterator<Item = [f64; N]>,
) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.map(num))?;
    }
    w.into_inner().map_err(|e| CliError::Write(e.into_error()))
}

pub fn ellipse_csv(rows: &[EllipseRow]) -> Result<Vec<u8>, CliError> {
    csv_bytes(
        ELLIPSE_HEADER,
        rows.iter()
            .map(|r| [r.r, r.apex_x, r.apex_z, r.diff_dist, r.residual]),
    )
}

pub fn hyperbola_csv(rows: &[HyperbolaRow]) -> Result<Vec<u8>, CliError> {
    csv_bytes(
        HYPERBOLA_HEADER,
        rows.iter()
            .map(|r| [r.r1, r.r2, r.g_x, r.g_y, r.sum_dist, r.residual]),
    )
}

pub fn cmd_ellipse_locus(args: &EllipseLocusArgs) -> Result<(), CliError> {
    let e = Ellipse::from_radii(args.ra, args.rb)?;
    let sel = args.selector.selector();
    let rows = ellipse_rows(&e, &args.radius.values(), sel)?;
    let bytes = match args.output.format {
        Format::Csv => ellipse_csv(&rows)?,
        Format::Json => {
            let locus = vertex_locus_hyperbola(&e).hyperbola()?;
            json_bytes(&LocusDoc {
                curve: CurveDoc::ellipse(&e),
                locus: CurveDoc::hyperbola(&locus),
                selector: sel.into(),
                rows: &rows,
            })?
        }
    };
    emit(args.output.out.as_deref(), &bytes)
}

pub fn cmd_hyperbola_locus(args: &HyperbolaLocusArgs) -> Result<(), CliError> {
    let h = Hyperbola::new(args.ah, args.ch)?;
    let sel = args.selector.selector();
    let rows = hyperbola_rows(&h, &args.radius.values(), sel)?;
    let bytes = match args.output.format {
        Format::Csv => hyperbola_csv(&rows)?,
        Format::Json => json_bytes(&LocusDoc {
            curve: CurveDoc::hyperbola(&h),
            locus: CurveDoc::ellipse(&vertex_locus_ellipse(&h)),
            selector: sel.into(),
            rows: &rows,
        })?,
    };
    emit(args.output.out.as_deref(), &bytes)
}
