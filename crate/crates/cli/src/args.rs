use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flatnorm::NeighborhoodStencil;

#[derive(Parser, Debug)]
#[command(name = "flatnorm", version, about = "Multiscale flat norm of chains and shapes on planar grids")]
pub struct Cli {
    /// Only log errors.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Flat norm decomposition of a shape boundary or a chain.
    Compute(ComputeArgs),
    /// Flat distance between two shapes.
    Distance(DistanceArgs),
    /// Flat norm over a list of scales.
    Sweep(SweepArgs),
    /// Randomized invariant suites with a pass/fail table.
    Selftest(SelftestArgs),
    /// Rasterize a disk, square or polygon into a PGM image.
    Rasterize(RasterizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Lp,
    Graphcut,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepMethodArg {
    Lp,
    Graphcut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StencilArg {
    #[value(name = "N4", alias = "n4")]
    N4,
    #[value(name = "N8", alias = "n8")]
    N8,
    #[value(name = "N16", alias = "n16")]
    N16,
}

impl From<StencilArg> for NeighborhoodStencil {
    fn from(s: StencilArg) -> Self {
        match s {
            StencilArg::N4 => NeighborhoodStencil::N4,
            StencilArg::N8 => NeighborhoodStencil::N8,
            StencilArg::N16 => NeighborhoodStencil::N16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Json,
}

/// How PGM pixels map to the plane. Without flags, the placement recorded
/// by `rasterize` is used, else spacing 1 and origin 0,0.
#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Pixel side length.
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Pixels per unit length; the reciprocal of --spacing.
    #[arg(long)]
    pub resolution: Option<f64>,
    /// Plane coordinates of the lower-left image corner, as `x,y`.
    #[arg(long, allow_hyphen_values = true)]
    pub origin: Option<String>,
    /// Gray values at or above this are foreground.
    #[arg(long, default_value_t = 128)]
    pub threshold: u16,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// PGM image (P2 or P5) or chain JSON document.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    /// `both` runs LP and graph cut and appends an agreement report.
    #[arg(long, value_enum, default_value = "lp")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "N16")]
    pub stencil: StencilArg,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Result JSON destination; `-` is stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Also render the decomposition as SVG.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    /// First PGM image.
    pub a: PathBuf,
    /// Second PGM image.
    pub b: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value = "lp")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "N16")]
    pub stencil: StencilArg,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated values and `start:stop:step` ranges (stop
    /// included), e.g. `0.5:3:0.5` or `0.1,0.2,1:4:1`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambdas: String,
    #[arg(long, value_enum, default_value = "graphcut")]
    pub method: SweepMethodArg,
    #[arg(long, value_enum, default_value = "N16")]
    pub stencil: StencilArg,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: SweepFormat,
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Plot of the curve as SVG.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cases per randomized suite.
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
    /// Report destination; `-` is stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args, Debug)]
pub struct RasterizeArgs {
    /// Disk as `cx,cy,r`.
    #[arg(long, allow_hyphen_values = true)]
    pub disk: Option<String>,
    /// Axis-aligned square as `x,y,side` (lower-left corner).
    #[arg(long, allow_hyphen_values = true)]
    pub square: Option<String>,
    /// Polygon as `x1,y1;x2,y2;...`.
    #[arg(long, allow_hyphen_values = true)]
    pub polygon: Option<String>,
    /// Pixels per unit length.
    #[arg(long)]
    pub resolution: f64,
    /// Write plain (P2) instead of raw (P5) PGM.
    #[arg(long)]
    pub plain: bool,
    #[arg(long)]
    pub out: String,
}
