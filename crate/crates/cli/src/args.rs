use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dandelin::{FamilySelector, FocusChoice, Side};

use crate::error::CliError;
use crate::range::RadiusRange;

#[derive(Debug, Parser)]
#[command(
    name = "dandelin",
    version,
    about = "Cone families through a given ellipse or hyperbola"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apexes of cones through an ellipse, checked against the apex hyperbola.
    #[command(allow_negative_numbers = true)]
    EllipseLocus(EllipseLocusArgs),
    /// Apexes of cones through a hyperbola, checked against the dual ellipse.
    #[command(allow_negative_numbers = true)]
    HyperbolaLocus(HyperbolaLocusArgs),
    /// One cone of a family, with its Dandelin spheres, as JSON.
    #[command(allow_negative_numbers = true)]
    Cone(ConeArgs),
    /// Seeded randomized invariant suite.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// SVG figure of a construction.
    #[command(allow_negative_numbers = true)]
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FocusArg {
    F1,
    F2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Above,
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderView {
    /// Ellipse, its apex hyperbola and cones from both families.
    Conjunction,
    /// Tangent construction of one cone through an ellipse.
    TauSection,
    /// Tangent construction of one cone through a hyperbola.
    RhoSection,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SelectorArgs {
    /// Focus the Dandelin sphere touches.
    #[arg(long, value_enum, default_value_t = FocusArg::F1)]
    pub focus: FocusArg,
    /// Side of the section plane the sphere sits on.
    #[arg(long, value_enum, default_value_t = SideArg::Above)]
    pub side: SideArg,
}

impl SelectorArgs {
    pub fn selector(&self) -> FamilySelector {
        let focus = match self.focus {
            FocusArg::F1 => FocusChoice::F1,
            FocusArg::F2 => FocusChoice::F2,
        };
        let side = match self.side {
            SideArg::Above => Side::Above,
            SideArg::Below => Side::Below,
        };
        FamilySelector::new(focus, side)
    }
}

#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct RadiusArgs {
    /// Single sphere radius.
    #[arg(long)]
    pub r: Option<f64>,
    /// Radius range `start:stop:step`; stop is included within half a step.
    #[arg(long)]
    pub radii: Option<RadiusRange>,
}

impl RadiusArgs {
    pub fn values(&self) -> Vec<f64> {
        match (self.r, self.radii) {
            (Some(r), _) => vec![r],
            (None, Some(range)) => range.values(),
            (None, None) => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EllipseLocusArgs {
    /// Focal radius |F1A| (the larger one).
    #[arg(long)]
    pub ra: f64,
    /// Focal radius |F1B|.
    #[arg(long)]
    pub rb: f64,
    #[command(flatten)]
    pub radius: RadiusArgs,
    #[command(flatten)]
    pub selector: SelectorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HyperbolaLocusArgs {
    /// Semi-transverse axis.
    #[arg(long)]
    pub ah: f64,
    /// Semi-focal distance.
    #[arg(long)]
    pub ch: f64,
    #[command(flatten)]
    pub radius: RadiusArgs,
    #[command(flatten)]
    pub selector: SelectorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Either `--ra --rb` or `--ah --ch`.
#[derive(Debug, Clone, Copy, Args)]
pub struct CurveArgs {
    #[arg(long, requires = "rb", conflicts_with_all = ["ah", "ch"])]
    pub ra: Option<f64>,
    #[arg(long, requires = "ra")]
    pub rb: Option<f64>,
    #[arg(long, requires = "ch")]
    pub ah: Option<f64>,
    #[arg(long, requires = "ah")]
    pub ch: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveParams {
    Ellipse { r_a: f64, r_b: f64 },
    Hyperbola { a_h: f64, c_h: f64 },
}

impl CurveArgs {
    pub fn params(&self) -> Result<CurveParams, CliError> {
        match (self.ra, self.rb, self.ah, self.ch) {
            (Some(r_a), Some(r_b), None, None) => Ok(CurveParams::Ellipse { r_a, r_b }),
            (None, None, Some(a_h), Some(c_h)) => Ok(CurveParams::Hyperbola { a_h, c_h }),
            _ => Err(CliError::Usage(
                "give either --ra and --rb (ellipse) or --ah and --ch (hyperbola)".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConeArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Sphere radius (`r1` for a hyperbola).
    #[arg(long)]
    pub r: f64,
    #[command(flatten)]
    pub selector: SelectorArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Tolerance of the construction identities, relative to the curve scale.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    #[arg(value_enum)]
    pub view: RenderView,
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Sphere radius for the section views.
    #[arg(long)]
    pub r: Option<f64>,
    /// Number of cones drawn from each family in the conjunction view.
    #[arg(long, default_value_t = 5)]
    pub cones: usize,
    #[command(flatten)]
    pub selector: SelectorArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
