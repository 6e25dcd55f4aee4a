//! Flat norm of shape boundaries by s–t minimum cut.

mod corner;
mod maxflow;
mod solver;
mod stencil;

pub use corner::{
    corner_rounding_check, CornerReport, CORNER_MIN_RESOLUTION, CORNER_RADIUS_TOLERANCE,
    CORNER_VALUE_TOLERANCE,
};
pub use maxflow::{FlowNetwork, MaxFlowAlgorithm};
pub use solver::{flatnorm_graphcut, l1tv_denoise, CutSolution, GraphCutSolver};
pub use stencil::{Link, NeighborhoodStencil};
