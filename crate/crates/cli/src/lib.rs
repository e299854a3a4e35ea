//! Command-line front end: locus tables, single cones, the randomized
//! invariant suite and SVG figures.

use std::process::ExitCode;

pub mod args;
pub mod cone_doc;
pub mod error;
pub mod locus;
pub mod output;
pub mod range;
pub mod render;
pub mod svg;
pub mod verify;

use args::{Cli, Command};
use error::CliError;

/// All checked properties passed.
pub const EXIT_OK: u8 = 0;
/// The verification suite found a failing property.
pub const EXIT_PROPERTY_FAILURE: u8 = 1;
/// Bad arguments or parameters, or an I/O failure.
pub const EXIT_USAGE: u8 = 2;

pub fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::EllipseLocus(a) => locus::cmd_ellipse_locus(a)?,
        Command::HyperbolaLocus(a) => locus::cmd_hyperbola_locus(a)?,
        Command::Cone(a) => cone_doc::cmd_cone(a)?,
        Command::Render(a) => render::cmd_render(a)?,
        Command::Verify(a) => {
            if !verify::cmd_verify(a)? {
                return Ok(ExitCode::from(EXIT_PROPERTY_FAILURE));
            }
        }
    }
    Ok(ExitCode::from(EXIT_OK))
}
