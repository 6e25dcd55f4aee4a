//! Rounded-corner check for an axis-aligned square under the N16 stencil.

use super::solver::GraphCutSolver;
use super::stencil::NeighborhoodStencil;
use crate::analysis::oracles::{rounding_threshold, square_flatnorm_euclid};
use crate::error::{Error, Result};
use crate::shape_io::{rasterize, BinaryShape, Region};
use crate::Real;

/// Relative tolerance on the cut value.
pub const CORNER_VALUE_TOLERANCE: f64 = 0.03;
/// Relative tolerance on each fitted corner radius.
pub const CORNER_RADIUS_TOLERANCE: f64 = 0.15;
pub const CORNER_MIN_RESOLUTION: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct CornerReport<T> {
    pub side: T,
    pub lambda: T,
    pub resolution: usize,
    pub value: T,
    pub expected_value: T,
    pub value_error: T,
    /// Circle-fit radius at the corners `(0,0), (a,0), (a,a), (0,a)`.
    pub radii: [T; 4],
    pub expected_radius: T,
    /// Largest `|r − 1/λ| · λ` over the four corners.
    pub radius_error: T,
    pub value_ok: bool,
    pub radius_ok: bool,
}

impl<T: Real> CornerReport<T> {
    pub fn passed(&self) -> bool {
        self.value_ok && self.radius_ok
    }
}

/// Algebraic (Kåsa) circle fit; returns the radius.
fn fit_radius(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 8 {
        return None;
    }
    // least squares for x² + y² + Dx + Ey + F = 0, centered for conditioning
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut m = [[0.0f64; 4]; 3];
    for &(x, y) in points {
        let (x, y) = (x - mx, y - my);
        let row = [x, y, 1.0];
        let rhs = -(x * x + y * y);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            m[i][3] += row[i] * rhs;
        }
    }
    for c in 0..3 {
        let piv = (c..3).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))?;
        m.swap(c, piv);
        if m[c][c].abs() < 1e-300 {
            return None;
        }
        for r in 0..3 {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..4 {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let (d, e, f) = (m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]);
    let r2 = d * d / 4.0 + e * e / 4.0 - f;
    (r2 > 0.0).then(|| r2.sqrt())
}

/// Midpoints of the pixel edges separating `Σ` from its complement.
fn outline_midpoints<T: Real>(sigma: &BinaryShape<T>) -> Vec<(f64, f64)> {
    let h = sigma.spacing().as_f64();
    let (ox, oy) = (sigma.origin().0.as_f64(), sigma.origin().1.as_f64());
    let (w, ht) = (sigma.width(), sigma.height());
    let inside = |x: i64, y: i64| {
        x >= 0 && y >= 0 && (x as usize) < w && (y as usize) < ht && sigma.get(x as usize, y as usize)
    };
    let mut pts = Vec::new();
    for y in 0..ht as i64 {
        for x in 0..w as i64 {
            if !inside(x, y) {
                continue;
            }
            let (cx, cy) = (ox + (x as f64 + 0.5) * h, oy + (y as f64 + 0.5) * h);
            for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                if !inside(x + dx, y + dy) {
                    pts.push((cx + 0.5 * h * dx as f64, cy + 0.5 * h * dy as f64));
                }
            }
        }
    }
    pts
}

/// Solves the square `[0, a]²` at `resolution` cells per unit length with
/// the N16 stencil and compares against arcs of radius `1/λ` at the corners.
pub fn corner_rounding_check<T: Real>(side: T, lambda: T, resolution: usize) -> Result<CornerReport<T>> {
    let expected_value = square_flatnorm_euclid(side, lambda).map_err(|_| {
        Error::invalid(format!(
            "corner rounding needs lambda >= (2 + sqrt(pi))/a = {}, got {lambda}",
            rounding_threshold(side)
        ))
    })?;
    if resolution < CORNER_MIN_RESOLUTION {
        return Err(Error::invalid(format!(
            "corner rounding needs resolution >= {CORNER_MIN_RESOLUTION}, got {resolution}"
        )));
    }
    let shape = rasterize(
        &Region::square((T::zero(), T::zero()), side)?,
        T::from_usize(resolution).unwrap(),
    )?;
    let sol = GraphCutSolver::new(&shape, NeighborhoodStencil::N16).solve(lambda)?;
    let value = sol.perimeter + lambda * sol.area_change;
    let value_error = ((value - expected_value) / expected_value).abs();

    let a = side.as_f64();
    let r = 1.0 / lambda.as_f64();
    let h = shape.spacing().as_f64();
    let pts = outline_midpoints(&sol.sigma);
    let corners = [(0.0, 0.0, 1.0, 1.0), (a, 0.0, -1.0, 1.0), (a, a, -1.0, -1.0), (0.0, a, 1.0, -1.0)];
    let mut radii = [T::nan(); 4];
    for (slot, &(cx, cy, sx, sy)) in radii.iter_mut().zip(&corners) {
        // points off both straight sides, within the corner quadrant
        let local: Vec<(f64, f64)> = pts
            .iter()
            .copied()
            .filter(|&(x, y)| {
                let (u, v) = (sx * (x - cx), sy * (y - cy));
                u > 1.5 * h && v > 1.5 * h && u < a / 2.0 && v < a / 2.0
            })
            .collect();
        if let Some(fit) = fit_radius(&local) {
            *slot = T::of(fit);
        }
    }
    let radius_error = radii
        .iter()
        .map(|&x| ((x.as_f64() - r) / r).abs())
        .fold(0.0f64, |m, e| if e.is_nan() { f64::INFINITY } else { m.max(e) });
    let radius_error = T::of(radius_error);
    Ok(CornerReport {
        side,
        lambda,
        resolution,
        value,
        expected_value,
        value_error,
        radii,
        expected_radius: T::of(r),
        radius_error,
        value_ok: value_error <= T::of(CORNER_VALUE_TOLERANCE),
        radius_ok: radius_error <= T::of(CORNER_RADIUS_TOLERANCE),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_fit_recovers_radius() {
        let pts: Vec<(f64, f64)> = (0..20)
            .map(|k| {
                let t = 0.1 + 1.3 * k as f64 / 19.0;
                (2.0 + 0.5 * t.cos(), -1.0 + 0.5 * t.sin())
            })
            .collect();
        assert!((fit_radius(&pts).unwrap() - 0.5).abs() < 1e-9);
        assert!(fit_radius(&pts[..3]).is_none());
    }

    #[test]
    fn regime_and_resolution_checked() {
        let e = corner_rounding_check(1.0, 3.0, 512).unwrap_err().to_string();
        assert!(e.contains("3.77"), "{e}");
        assert!(corner_rounding_check(1.0, 8.0, 128).is_err());
    }
}
