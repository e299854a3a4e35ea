use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::CurveParams;
use crate::error::CliError;
use dandelin::{FamilySelector, FocusChoice, Side};

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CurveDoc {
    Ellipse { r_a: f64, r_b: f64, plane: &'static str },
    Hyperbola { a_h: f64, c_h: f64, plane: &'static str },
}

impl CurveDoc {
    pub fn ellipse(e: &dandelin::Ellipse) -> Self {
        Self::Ellipse {
            r_a: e.r_a,
            r_b: e.r_b,
            plane: e.plane.name(),
        }
    }

    pub fn hyperbola(h: &dandelin::Hyperbola) -> Self {
        Self::Hyperbola {
            a_h: h.a_h,
            c_h: h.c_h,
            plane: h.plane.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SelectorDoc {
    pub focus: &'static str,
    pub side: &'static str,
}

impl From<FamilySelector> for SelectorDoc {
    fn from(sel: FamilySelector) -> Self {
        Self {
            focus: match sel.focus {
                FocusChoice::F1 => "f1",
                FocusChoice::F2 => "f2",
            },
            side: match sel.side {
                Side::Above => "above",
                Side::Below => "below",
            },
        }
    }
}

/// Validated curve for commands taking either kind.
#[derive(Debug, Clone, Copy)]
pub enum Curve {
    Ellipse(dandelin::Ellipse),
    Hyperbola(dandelin::Hyperbola),
}

impl Curve {
    pub fn from_params(params: CurveParams) -> Result<Self, CliError> {
        Ok(match params {
            CurveParams::Ellipse { r_a, r_b } => Self::Ellipse(dandelin::Ellipse::from_radii(r_a, r_b)?),
            CurveParams::Hyperbola { a_h, c_h } => Self::Hyperbola(dandelin::Hyperbola::new(a_h, c_h)?),
        })
    }
}
