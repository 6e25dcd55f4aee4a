//! Euclidean length of closed cubical 1-chains.
//!
//! A closed chain on the cubical grid is the boundary of a unique integer
//! pixel function `u`. Its length is estimated by Cauchy–Crofton counting
//! of `|u(p + e) − u(p)|` over eight lattice directions `e`, with weights
//! that make the estimate exact for axis-parallel and diagonal lines and
//! unbiased on average over orientations. Lattice pairs miss a fixed
//! amount at every pixel corner; a per-corner term restores it, which makes
//! pixel-aligned rectangles exact.

use crate::complex::{Chain, GridComplex2, Topology};
use crate::error::{Error, Result};
use crate::Real;

const DIRECTIONS: [(i64, i64); 8] = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1)];

/// `(axis, knight, diagonal)` weights solving
/// `α + 6β + 2γ = 1`, `2α + 8β + 2γ = √2`, `2α + 4√5 β + 2√2 γ = π/2`.
fn weights() -> (f64, f64, f64) {
    let s2 = std::f64::consts::SQRT_2;
    let s5 = 5f64.sqrt();
    let half_pi = std::f64::consts::FRAC_PI_2;
    // eliminate α between the equations, then Cramer on (β, γ)
    let (a1, b1, r1) = (8.0 - 12.0, 2.0 - 4.0, s2 - 2.0);
    let (a2, b2, r2) = (4.0 * s5 - 12.0, 2.0 * s2 - 4.0, half_pi - 2.0);
    let det = a1 * b2 - a2 * b1;
    let beta = (r1 * b2 - r2 * b1) / det;
    let gamma = (a1 * r2 - a2 * r1) / det;
    (1.0 - 6.0 * beta - 2.0 * gamma, beta, gamma)
}

fn direction_weight(k: usize) -> f64 {
    let (alpha, beta, gamma) = weights();
    match DIRECTIONS[k] {
        (_, 0) | (0, _) => alpha,
        (x, y) if x.abs() == y.abs() => gamma,
        _ => beta,
    }
}

/// Pixel function with boundary `c`, padded by two zero pixels per side.
struct Potential {
    width: usize,
    height: usize,
    values: Vec<i64>,
}

impl Potential {
    const PAD: usize = 2;

    fn get(&self, x: i64, y: i64) -> i64 {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            0
        } else {
            self.values[y as usize * self.width + x as usize]
        }
    }

    fn recover<T: Real>(complex: &GridComplex2<T>, c: &Chain) -> Result<Self> {
        let (w, h) = (complex.width(), complex.height());
        // ∂u on the vertical edge left of pixel (i, j) is u(i−1, j) − u(i, j)
        let mut u = vec![0i64; w * h];
        for j in 0..h {
            let mut prev = 0i64;
            for i in 0..w {
                let cur = prev
                    .checked_sub(c.coefficient(complex.vertical_edge(i, j)))
                    .ok_or_else(|| Error::invalid("chain coefficient overflow"))?;
                u[j * w + i] = cur;
                prev = cur;
            }
        }
        let fill = Chain::from_cells(complex, 2, u.iter().enumerate().map(|(f, &v)| (f, v)))?;
        if complex.boundary(&fill)? != *c {
            return Err(Error::invalid("closed chain is not a boundary on this grid"));
        }
        let pw = w + 2 * Self::PAD;
        let ph = h + 2 * Self::PAD;
        let mut values = vec![0i64; pw * ph];
        for j in 0..h {
            for i in 0..w {
                values[(j + Self::PAD) * pw + i + Self::PAD] = u[j * w + i];
            }
        }
        Ok(Potential {
            width: pw,
            height: ph,
            values,
        })
    }

    fn crofton_counts(&self) -> [i64; 8] {
        let mut counts = [0i64; 8];
        for (k, &(dx, dy)) in DIRECTIONS.iter().enumerate() {
            let mut n = 0i64;
            for y in -2..self.height as i64 {
                for x in -2..self.width as i64 + 2 {
                    n += (self.get(x + dx, y + dy) - self.get(x, y)).abs();
                }
            }
            counts[k] = n;
        }
        counts
    }

    /// Sum over level sets of convex minus reflex corners, with
    /// checkerboard vertices counting as two convex corners.
    fn corner_score(&self) -> i64 {
        let mut score = 0i64;
        for y in -1..self.height as i64 {
            for x in -1..self.width as i64 {
                let q = [self.get(x, y), self.get(x + 1, y), self.get(x, y + 1), self.get(x + 1, y + 1)];
                let hi = q.iter().copied().max().unwrap().max(0);
                let lo = q.iter().copied().min().unwrap().min(0);
                let levels = (1..=hi).map(|s| q.map(|v| v >= s)).chain((1..=-lo).map(|s| q.map(|v| v <= -s)));
                for b in levels {
                    let n = b.iter().filter(|&&v| v).count();
                    score += match n {
                        1 => 1,
                        3 => -1,
                        2 if b[0] == b[3] => 2,
                        _ => 0,
                    };
                }
            }
        }
        score
    }
}

/// Euclidean length estimate of a closed 1-chain on a cubical complex.
pub fn euclidean_length<T: Real>(complex: &GridComplex2<T>, c: &Chain) -> Result<T> {
    if complex.topology() != Topology::Cubical {
        return Err(Error::invalid("length estimation needs a cubical complex"));
    }
    if c.dim() != 1 || !c.lives_on(complex) {
        return Err(Error::invalid("expected a 1-chain on the given complex"));
    }
    if c.is_zero() {
        return Ok(T::zero());
    }
    let b = complex.boundary(c)?;
    if !b.is_zero() {
        let (v, coeff) = b.cells()[0];
        let (i, j) = complex.vertex_coords(v);
        return Err(Error::invalid(format!(
            "chain is not closed: its boundary is nonzero on {} vertices, e.g. {coeff} at vertex ({i}, {j})",
            b.support_len()
        )));
    }
    let u = Potential::recover(complex, c)?;
    let counts = u.crofton_counts();
    let crofton: f64 = (0..8).map(|k| direction_weight(k) * counts[k] as f64).sum();
    let (_, beta, gamma) = weights();
    let corner = (4.0 * beta + gamma) * u.corner_score() as f64;
    Ok(complex.spacing() * T::of(crofton + corner))
}
