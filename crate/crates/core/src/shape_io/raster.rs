//! Pixel-center rasterization of polygons and disks.
//!
//! A pixel is foreground iff its center is inside the region. Points on a
//! polygon edge follow the half-open crossing rule: left and bottom edges
//! are inside, right and top edges are outside.

use super::shape::{BinaryShape, Frame};
use crate::error::{Error, Result};
use crate::Real;

/// Margin, in pixels, added around a region's bounding box.
pub const DEFAULT_MARGIN: usize = 2;

/// A simple counterclockwise polygon, implicitly closed.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonShape<T> {
    vertices: Vec<(T, T)>,
}

fn cross<T: Real>(o: (T, T), a: (T, T), b: (T, T)) -> T {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn segments_touch<T: Real>(p1: (T, T), p2: (T, T), q1: (T, T), q2: (T, T)) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    let z = T::zero();
    if ((d1 > z && d2 < z) || (d1 < z && d2 > z)) && ((d3 > z && d4 < z) || (d3 < z && d4 > z)) {
        return true;
    }
    let on = |a: (T, T), b: (T, T), p: (T, T)| {
        p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
    };
    (d1 == z && on(q1, q2, p1))
        || (d2 == z && on(q1, q2, p2))
        || (d3 == z && on(p1, p2, q1))
        || (d4 == z && on(p1, p2, q2))
}

impl<T: Real> PolygonShape<T> {
    pub fn new(vertices: Vec<(T, T)>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::invalid(format!("polygon needs at least 3 vertices, got {n}")));
        }
        if vertices.iter().any(|v| !v.0.is_finite() || !v.1.is_finite()) {
            return Err(Error::invalid("polygon vertex is not finite"));
        }
        let poly = PolygonShape { vertices };
        let area = poly.signed_area();
        if !(area > T::zero()) {
            return Err(Error::invalid(format!(
                "polygon must be counterclockwise with positive area, signed area is {area}"
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                // adjacent edges share a vertex by construction
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (a, b) = poly.edge(i);
                let (c, d) = poly.edge(j);
                if segments_touch(a, b, c, d) {
                    return Err(Error::invalid(format!(
                        "polygon is not simple: edges {i} and {j} intersect"
                    )));
                }
            }
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[(T, T)] {
        &self.vertices
    }

    fn edge(&self, i: usize) -> ((T, T), (T, T)) {
        (self.vertices[i], self.vertices[(i + 1) % self.vertices.len()])
    }

    pub fn signed_area(&self) -> T {
        let n = self.vertices.len();
        let twice = (0..n)
            .map(|i| {
                let (a, b) = self.edge(i);
                a.0 * b.1 - b.0 * a.1
            })
            .fold(T::zero(), |s, v| s + v);
        twice / T::of(2.0)
    }

    /// Crossing-number test with half-open edges.
    pub fn contains(&self, p: (T, T)) -> bool {
        let mut inside = false;
        for i in 0..self.vertices.len() {
            let (a, b) = self.edge(i);
            if (a.1 > p.1) != (b.1 > p.1) {
                let x = a.0 + (p.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
                if p.0 < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn bounds(&self) -> ((T, T), (T, T)) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for &(x, y) in &self.vertices {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        (lo, hi)
    }
}

/// Regions the rasterizer understands.
#[derive(Clone, Debug, PartialEq)]
pub enum Region<T> {
    Polygon(PolygonShape<T>),
    Disk { center: (T, T), radius: T },
}

impl<T: Real> Region<T> {
    pub fn disk(center: (T, T), radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::invalid(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Region::Disk { center, radius })
    }

    pub fn polygon(vertices: Vec<(T, T)>) -> Result<Self> {
        PolygonShape::new(vertices).map(Region::Polygon)
    }

    /// Axis-aligned square `[x, x + side] x [y, y + side]`.
    pub fn square(corner: (T, T), side: T) -> Result<Self> {
        let (x, y) = corner;
        Self::polygon(vec![(x, y), (x + side, y), (x + side, y + side), (x, y + side)])
    }

    pub fn contains(&self, p: (T, T)) -> bool {
        match self {
            Region::Polygon(poly) => poly.contains(p),
            Region::Disk { center, radius } => {
                let dx = p.0 - center.0;
                let dy = p.1 - center.1;
                dx * dx + dy * dy < *radius * *radius
            }
        }
    }

    pub fn bounds(&self) -> ((T, T), (T, T)) {
        match self {
            Region::Polygon(poly) => poly.bounds(),
            Region::Disk { center, radius } => (
                (center.0 - *radius, center.1 - *radius),
                (center.0 + *radius, center.1 + *radius),
            ),
        }
    }
}

/// Rasterizes onto the lattice-aligned bounding frame at `resolution`
/// cells per unit length, with [`DEFAULT_MARGIN`] background pixels.
pub fn rasterize<T: Real>(region: &Region<T>, resolution: T) -> Result<BinaryShape<T>> {
    let (lo, hi) = region.bounds();
    let frame = Frame::covering(lo, hi, resolution, DEFAULT_MARGIN)?;
    Ok(rasterize_onto(region, &frame))
}

/// Rasterizes onto a given frame.
pub fn rasterize_onto<T: Real>(region: &Region<T>, frame: &Frame<T>) -> BinaryShape<T> {
    let mut shape = BinaryShape::empty(*frame);
    for y in 0..frame.height {
        for x in 0..frame.width {
            if region.contains(frame.pixel_center(x, y)) {
                shape.set(x, y, true);
            }
        }
    }
    shape
}

/// Union of several regions on one frame.
pub fn rasterize_all<T: Real>(regions: &[Region<T>], frame: &Frame<T>) -> BinaryShape<T> {
    let mut shape = BinaryShape::empty(*frame);
    for y in 0..frame.height {
        for x in 0..frame.width {
            let c = frame.pixel_center(x, y);
            if regions.iter().any(|r| r.contains(c)) {
                shape.set(x, y, true);
            }
        }
    }
    shape
}
