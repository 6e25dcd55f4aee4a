use crate::complex::{Chain, GridComplex2, Topology};
use crate::error::{Error, Result};
use crate::Real;

/// Placement of a pixel grid in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame<T> {
    pub width: usize,
    pub height: usize,
    pub spacing: T,
    /// Physical coordinates of the lower-left corner.
    pub origin: (T, T),
}

impl<T: Real> Frame<T> {
    pub fn new(width: usize, height: usize, spacing: T, origin: (T, T)) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid(format!(
                "frame dimensions must be positive, got {width}x{height}"
            )));
        }
        if !(spacing > T::zero()) || !spacing.is_finite() {
            return Err(Error::invalid(format!("spacing must be positive, got {spacing}")));
        }
        Ok(Frame {
            width,
            height,
            spacing,
            origin,
        })
    }

    /// Smallest lattice-aligned frame covering `[min, max]` with `margin`
    /// extra pixels on every side. Grid lines sit at integer multiples of
    /// `1 / resolution`.
    pub fn covering(min: (T, T), max: (T, T), resolution: T, margin: usize) -> Result<Self> {
        if !(resolution > T::zero()) || !resolution.is_finite() {
            return Err(Error::invalid(format!(
                "resolution must be positive, got {resolution}"
            )));
        }
        let spacing = T::one() / resolution;
        let m = T::from_usize(margin).unwrap();
        // Bounds within round-off of a grid line snap onto it.
        let x0 = (min.0 * resolution + T::round_off()).floor() - m;
        let y0 = (min.1 * resolution + T::round_off()).floor() - m;
        let x1 = (max.0 * resolution - T::round_off()).ceil() + m;
        let y1 = (max.1 * resolution - T::round_off()).ceil() + m;
        let width = (x1 - x0).to_usize().unwrap_or(0).max(1);
        let height = (y1 - y0).to_usize().unwrap_or(0).max(1);
        Frame::new(width, height, spacing, (x0 * spacing, y0 * spacing))
    }

    pub fn pixel_center(&self, x: usize, y: usize) -> (T, T) {
        let half = T::of(0.5);
        (
            self.origin.0 + (T::from_usize(x).unwrap() + half) * self.spacing,
            self.origin.1 + (T::from_usize(y).unwrap() + half) * self.spacing,
        )
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A rasterized planar set: `width x height` bits, row 0 at the bottom.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryShape<T> {
    frame: Frame<T>,
    bits: Vec<bool>,
}

impl<T: Real> BinaryShape<T> {
    pub fn empty(frame: Frame<T>) -> Self {
        BinaryShape {
            bits: vec![false; frame.len()],
            frame,
        }
    }

    /// `bits` is row-major with row 0 at the bottom.
    pub fn from_bits(frame: Frame<T>, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != frame.len() {
            return Err(Error::invalid(format!(
                "bit grid has {} entries, frame needs {}",
                bits.len(),
                frame.len()
            )));
        }
        Ok(BinaryShape { frame, bits })
    }

    /// Rows listed top to bottom, as an image is usually written.
    pub fn from_rows_top_down(frame: Frame<T>, rows: &[&[u8]]) -> Result<Self> {
        if rows.len() != frame.height || rows.iter().any(|r| r.len() != frame.width) {
            return Err(Error::invalid("row layout does not match the frame"));
        }
        let mut bits = Vec::with_capacity(frame.len());
        for row in rows.iter().rev() {
            bits.extend(row.iter().map(|&b| b != 0));
        }
        Self::from_bits(frame, bits)
    }

    pub fn frame(&self) -> &Frame<T> {
        &self.frame
    }

    pub fn width(&self) -> usize {
        self.frame.width
    }

    pub fn height(&self) -> usize {
        self.frame.height
    }

    pub fn spacing(&self) -> T {
        self.frame.spacing
    }

    pub fn origin(&self) -> (T, T) {
        self.frame.origin
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.frame.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        let w = self.frame.width;
        self.bits[y * w + x] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// Foreground area: pixel count times `spacing²`.
    pub fn area(&self) -> T {
        T::from_usize(self.count()).unwrap() * self.frame.spacing * self.frame.spacing
    }

    fn zip_with(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.frame != other.frame {
            return Err(Error::invalid("shapes are on different frames"));
        }
        Ok(BinaryShape {
            frame: self.frame,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    /// Set difference `self \ other` on a shared frame.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a != b)
    }

    /// The cubical complex whose faces are this shape's pixels.
    pub fn cubical_complex(&self) -> Result<GridComplex2<T>> {
        GridComplex2::cubical(self.frame.width, self.frame.height, self.frame.spacing)
    }

    fn check_complex(&self, complex: &GridComplex2<T>) -> Result<()> {
        if complex.width() != self.frame.width || complex.height() != self.frame.height {
            return Err(Error::invalid(format!(
                "complex is {}x{} but the bit grid is {}x{}",
                complex.width(),
                complex.height(),
                self.frame.width,
                self.frame.height
            )));
        }
        let (a, b) = (complex.spacing(), self.frame.spacing);
        if (a - b).abs() > T::round_off() * a.max(b) {
            return Err(Error::invalid(format!(
                "complex spacing {a} differs from shape spacing {b}"
            )));
        }
        Ok(())
    }

    /// 2-chain with coefficient 1 on every foreground pixel (both triangles
    /// of the pixel on a triangulated complex).
    pub fn to_2chain(&self, complex: &GridComplex2<T>) -> Result<Chain> {
        self.check_complex(complex)?;
        let w = self.frame.width;
        let mut cells = Vec::with_capacity(self.count() * 2);
        for (p, _) in self.bits.iter().enumerate().filter(|&(_, &b)| b) {
            for f in complex.pixel_faces(p % w, p / w) {
                cells.push((f, 1));
            }
        }
        Chain::from_cells(complex, 2, cells)
    }

    /// `∂` of [`to_2chain`](Self::to_2chain): the oriented outline.
    pub fn boundary_chain(&self, complex: &GridComplex2<T>) -> Result<Chain> {
        complex.boundary(&self.to_2chain(complex)?)
    }

    /// Recovers a shape from a {0,1}-valued 2-chain on a matching complex.
    pub fn from_2chain(frame: Frame<T>, complex: &GridComplex2<T>, chain: &Chain) -> Result<Self> {
        let mut shape = BinaryShape::empty(frame);
        shape.check_complex(complex)?;
        if chain.dim() != 2 || !chain.lives_on(complex) {
            return Err(Error::invalid("expected a 2-chain on the given complex"));
        }
        let per_pixel = match complex.topology() {
            Topology::Cubical => 1,
            Topology::RightTriangulated => 2,
        };
        let mut seen = vec![0usize; frame.len()];
        for &(f, c) in chain.cells() {
            if c != 1 {
                return Err(Error::invalid(format!(
                    "coefficient {c} on face {f} is not 0 or 1"
                )));
            }
            let (x, y) = complex.face_pixel(f);
            seen[y * frame.width + x] += 1;
        }
        for (p, &n) in seen.iter().enumerate() {
            if n == per_pixel {
                shape.bits[p] = true;
            } else if n != 0 {
                return Err(Error::invalid("pixel only partially covered by the chain"));
            }
        }
        Ok(shape)
    }

    /// Copies this shape into a larger frame with the same spacing whose
    /// origin differs by whole pixels.
    pub fn padded_to(&self, frame: &Frame<T>) -> Result<Self> {
        let (dx, dy) = pixel_offset(frame, &self.frame)?;
        if dx < 0
            || dy < 0
            || dx as usize + self.frame.width > frame.width
            || dy as usize + self.frame.height > frame.height
        {
            return Err(Error::invalid("target frame does not contain the shape"));
        }
        let mut out = BinaryShape::empty(*frame);
        for y in 0..self.frame.height {
            for x in 0..self.frame.width {
                if self.get(x, y) {
                    out.set(x + dx as usize, y + dy as usize, true);
                }
            }
        }
        Ok(out)
    }
}

/// Integer pixel offset of `inner`'s origin relative to `outer`'s.
fn pixel_offset<T: Real>(outer: &Frame<T>, inner: &Frame<T>) -> Result<(i64, i64)> {
    let s = outer.spacing;
    if (s - inner.spacing).abs() > T::round_off() * s {
        return Err(Error::invalid(format!(
            "incompatible spacing {} vs {}",
            outer.spacing, inner.spacing
        )));
    }
    let fx = (inner.origin.0 - outer.origin.0) / s;
    let fy = (inner.origin.1 - outer.origin.1) / s;
    let (rx, ry) = (fx.round(), fy.round());
    let tol = T::of(1e-6);
    if (fx - rx).abs() > tol || (fy - ry).abs() > tol {
        return Err(Error::invalid(
            "origins differ by a non-integer number of pixels",
        ));
    }
    Ok((rx.to_i64().unwrap(), ry.to_i64().unwrap()))
}

/// Pads two shapes onto their common bounding frame.
pub fn align_shapes<T: Real>(
    a: &BinaryShape<T>,
    b: &BinaryShape<T>,
) -> Result<(BinaryShape<T>, BinaryShape<T>)> {
    let (dx, dy) = pixel_offset(&a.frame, &b.frame)?;
    let x0 = dx.min(0);
    let y0 = dy.min(0);
    let x1 = (a.frame.width as i64).max(dx + b.frame.width as i64);
    let y1 = (a.frame.height as i64).max(dy + b.frame.height as i64);
    let s = a.frame.spacing;
    let frame = Frame::new(
        (x1 - x0) as usize,
        (y1 - y0) as usize,
        s,
        (
            a.frame.origin.0 + T::of_i64(x0) * s,
            a.frame.origin.1 + T::of_i64(y0) * s,
        ),
    )?;
    Ok((a.padded_to(&frame)?, b.padded_to(&frame)?))
}
