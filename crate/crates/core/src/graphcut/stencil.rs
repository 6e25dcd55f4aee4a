use std::str::FromStr;

use crate::error::Error;
use crate::Real;

/// Pixel neighborhood defining the cut edges of the flow network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NeighborhoodStencil {
    /// 4-neighborhood with weight `spacing` per link: exact cubical perimeter.
    N4,
    /// 8-neighborhood with Cauchy–Crofton weights.
    N8,
    /// 16-neighborhood with Cauchy–Crofton weights.
    N16,
}

/// One directed link of a stencil.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Link<T> {
    pub dx: i32,
    pub dy: i32,
    pub weight: T,
}

const N4_HALF: [(i32, i32); 2] = [(1, 0), (0, 1)];
const N8_HALF: [(i32, i32); 4] = [(1, 0), (1, 1), (0, 1), (-1, 1)];
const N16_HALF: [(i32, i32); 8] = [
    (1, 0),
    (2, 1),
    (1, 1),
    (1, 2),
    (0, 1),
    (-1, 2),
    (-1, 1),
    (-2, 1),
];

impl NeighborhoodStencil {
    pub fn as_str(self) -> &'static str {
        match self {
            NeighborhoodStencil::N4 => "N4",
            NeighborhoodStencil::N8 => "N8",
            NeighborhoodStencil::N16 => "N16",
        }
    }

    /// One offset per undirected link family, angles in `[0, π)`.
    pub fn half_offsets(self) -> &'static [(i32, i32)] {
        match self {
            NeighborhoodStencil::N4 => &N4_HALF,
            NeighborhoodStencil::N8 => &N8_HALF,
            NeighborhoodStencil::N16 => &N16_HALF,
        }
    }

    /// Angular cell `Δθ` of each half offset: half the gap to each angular
    /// neighbor, wrapping modulo π. The cells sum to π.
    pub fn angular_cells(self) -> Vec<f64> {
        let angles: Vec<f64> = self
            .half_offsets()
            .iter()
            .map(|&(x, y)| (y as f64).atan2(x as f64))
            .collect();
        let n = angles.len();
        let pi = std::f64::consts::PI;
        // half offsets are listed in increasing angle
        (0..n)
            .map(|k| {
                let prev = if k == 0 { angles[n - 1] - pi } else { angles[k - 1] };
                let next = if k == n - 1 { angles[0] + pi } else { angles[k + 1] };
                (next - prev) / 2.0
            })
            .collect()
    }

    /// Weight of each half-offset link for a grid of the given spacing.
    pub fn half_weights<T: Real>(self, spacing: T) -> Vec<T> {
        match self {
            NeighborhoodStencil::N4 => vec![spacing; 2],
            _ => self
                .half_offsets()
                .iter()
                .zip(self.angular_cells())
                .map(|(&(x, y), dtheta)| {
                    // spacing² Δθ / (2 |e|) with |e| = spacing · |offset|
                    let len = ((x * x + y * y) as f64).sqrt();
                    spacing * T::of(dtheta / (2.0 * len))
                })
                .collect(),
        }
    }

    /// Both orientations of every link; `links[k]` and `links[k ^ 1]` are
    /// opposite.
    pub fn links<T: Real>(self, spacing: T) -> Vec<Link<T>> {
        self.half_offsets()
            .iter()
            .zip(self.half_weights(spacing))
            .flat_map(|(&(dx, dy), weight)| {
                [
                    Link { dx, dy, weight },
                    Link {
                        dx: -dx,
                        dy: -dy,
                        weight,
                    },
                ]
            })
            .collect()
    }

    /// Largest offset coordinate; shapes need this much background margin
    /// for the stencil to see their whole outline inside the grid.
    pub fn reach(self) -> usize {
        match self {
            NeighborhoodStencil::N16 => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for NeighborhoodStencil {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NeighborhoodStencil {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "N4" => Ok(NeighborhoodStencil::N4),
            "N8" => Ok(NeighborhoodStencil::N8),
            "N16" => Ok(NeighborhoodStencil::N16),
            _ => Err(Error::invalid(format!(
                "unknown stencil {s:?}, expected N4, N8 or N16"
            ))),
        }
    }
}
