//! Oriented cubical and right-triangulated grid complexes.
//!
//! Indexing is row-major with the origin at the lower-left corner.
//!
//! * vertex `(i, j)`, `0 <= i <= w`, `0 <= j <= h`: `j * (w + 1) + i`
//! * horizontal edge `(i, j)` from vertex `(i, j)` to `(i + 1, j)`:
//!   `j * w + i`
//! * vertical edge `(i, j)` from vertex `(i, j)` to `(i, j + 1)`:
//!   `w * (h + 1) + j * (w + 1) + i`
//! * diagonal edge `(i, j)` (triangulated only) from vertex `(i, j)` to
//!   `(i + 1, j + 1)`: `w * (h + 1) + h * (w + 1) + j * w + i`
//! * cubical face `(i, j)`: `j * w + i`
//! * triangulated faces of cell `(i, j)`: `2 * (j * w + i)` for the lower-right
//!   triangle and `2 * (j * w + i) + 1` for the upper-left one.
//!
//! Edges point toward +x, +y or +x+y; faces are oriented counterclockwise.

use std::sync::atomic::{AtomicU64, Ordering};

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Real;

static NEXT_COMPLEX_ID: AtomicU64 = AtomicU64::new(1);

/// Opaque identity of a constructed complex. Clones share it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComplexId(u64);

impl ComplexId {
    fn fresh() -> Self {
        ComplexId(NEXT_COMPLEX_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    Cubical,
    RightTriangulated,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Cubical => "cubical",
            Topology::RightTriangulated => "right-triangulated",
        }
    }
}

/// The construction parameters of a complex, as stored in chain files.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexParams<T> {
    pub width: usize,
    pub height: usize,
    pub spacing: T,
    pub topology: Topology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Horizontal { i: usize, j: usize },
    Vertical { i: usize, j: usize },
    Diagonal { i: usize, j: usize },
}

/// Boundary of one face: up to four `(edge, sign)` pairs.
pub type FaceBoundary = ArrayVec<(usize, i64), 4>;

/// A finite oriented 2-D cell complex over a `width x height` grid of cells.
#[derive(Clone, Debug)]
pub struct GridComplex2<T> {
    width: usize,
    height: usize,
    spacing: T,
    topology: Topology,
    id: ComplexId,
}

impl<T: Real> GridComplex2<T> {
    pub fn new(width: usize, height: usize, spacing: T, topology: Topology) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid(format!(
                "grid dimensions must be positive, got {width}x{height}"
            )));
        }
        if !(spacing > T::zero()) || !spacing.is_finite() {
            return Err(Error::invalid(format!(
                "spacing must be positive and finite, got {spacing}"
            )));
        }
        // Keep every index representable together with the largest table.
        let cells = width
            .checked_add(1)
            .and_then(|w1| height.checked_add(1).and_then(|h1| w1.checked_mul(h1)))
            .and_then(|n| n.checked_mul(4));
        if cells.is_none() {
            return Err(Error::invalid("grid dimensions overflow the index space"));
        }
        Ok(GridComplex2 {
            width,
            height,
            spacing,
            topology,
            id: ComplexId::fresh(),
        })
    }

    pub fn cubical(width: usize, height: usize, spacing: T) -> Result<Self> {
        Self::new(width, height, spacing, Topology::Cubical)
    }

    pub fn triangulated(width: usize, height: usize, spacing: T) -> Result<Self> {
        Self::new(width, height, spacing, Topology::RightTriangulated)
    }

    pub fn from_params(params: &ComplexParams<T>) -> Result<Self> {
        Self::new(params.width, params.height, params.spacing, params.topology)
    }

    pub fn params(&self) -> ComplexParams<T> {
        ComplexParams {
            width: self.width,
            height: self.height,
            spacing: self.spacing,
            topology: self.topology,
        }
    }

    pub fn id(&self) -> ComplexId {
        self.id
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn num_vertices(&self) -> usize {
        (self.width + 1) * (self.height + 1)
    }

    fn num_horizontal(&self) -> usize {
        self.width * (self.height + 1)
    }

    fn num_vertical(&self) -> usize {
        self.height * (self.width + 1)
    }

    pub fn num_edges(&self) -> usize {
        let axis = self.num_horizontal() + self.num_vertical();
        match self.topology {
            Topology::Cubical => axis,
            Topology::RightTriangulated => axis + self.width * self.height,
        }
    }

    pub fn num_faces(&self) -> usize {
        match self.topology {
            Topology::Cubical => self.width * self.height,
            Topology::RightTriangulated => 2 * self.width * self.height,
        }
    }

    /// Number of cells of dimension `dim` (0, 1 or 2).
    pub fn num_cells(&self, dim: usize) -> usize {
        match dim {
            0 => self.num_vertices(),
            1 => self.num_edges(),
            2 => self.num_faces(),
            _ => 0,
        }
    }

    pub fn vertex(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= self.width && j <= self.height);
        j * (self.width + 1) + i
    }

    pub fn vertex_coords(&self, v: usize) -> (usize, usize) {
        (v % (self.width + 1), v / (self.width + 1))
    }

    pub fn horizontal_edge(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.width && j <= self.height);
        j * self.width + i
    }

    pub fn vertical_edge(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= self.width && j < self.height);
        self.num_horizontal() + j * (self.width + 1) + i
    }

    /// The diagonal of cell `(i, j)`; `None` on a cubical complex.
    pub fn diagonal_edge(&self, i: usize, j: usize) -> Option<usize> {
        debug_assert!(i < self.width && j < self.height);
        match self.topology {
            Topology::Cubical => None,
            Topology::RightTriangulated => {
                Some(self.num_horizontal() + self.num_vertical() + j * self.width + i)
            }
        }
    }

    pub fn edge_kind(&self, e: usize) -> EdgeKind {
        let nh = self.num_horizontal();
        let nv = self.num_vertical();
        if e < nh {
            EdgeKind::Horizontal {
                i: e % self.width,
                j: e / self.width,
            }
        } else if e < nh + nv {
            let r = e - nh;
            EdgeKind::Vertical {
                i: r % (self.width + 1),
                j: r / (self.width + 1),
            }
        } else {
            let r = e - nh - nv;
            EdgeKind::Diagonal {
                i: r % self.width,
                j: r / self.width,
            }
        }
    }

    /// `(tail, head)` vertex indices of an edge.
    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        match self.edge_kind(e) {
            EdgeKind::Horizontal { i, j } => (self.vertex(i, j), self.vertex(i + 1, j)),
            EdgeKind::Vertical { i, j } => (self.vertex(i, j), self.vertex(i, j + 1)),
            EdgeKind::Diagonal { i, j } => (self.vertex(i, j), self.vertex(i + 1, j + 1)),
        }
    }

    /// Signed vertex boundary of an edge: `+1` at the head, `-1` at the tail.
    pub fn edge_boundary(&self, e: usize) -> [(usize, i64); 2] {
        let (tail, head) = self.edge_endpoints(e);
        [(head, 1), (tail, -1)]
    }

    /// Faces covering pixel `(i, j)`.
    pub fn pixel_faces(&self, i: usize, j: usize) -> ArrayVec<usize, 2> {
        let cell = j * self.width + i;
        let mut out = ArrayVec::new();
        match self.topology {
            Topology::Cubical => out.push(cell),
            Topology::RightTriangulated => {
                out.push(2 * cell);
                out.push(2 * cell + 1);
            }
        }
        out
    }

    /// The pixel `(i, j)` a face belongs to.
    pub fn face_pixel(&self, f: usize) -> (usize, usize) {
        let cell = match self.topology {
            Topology::Cubical => f,
            Topology::RightTriangulated => f / 2,
        };
        (cell % self.width, cell / self.width)
    }

    /// Counterclockwise signed edge boundary of a face.
    pub fn face_boundary(&self, f: usize) -> FaceBoundary {
        let (i, j) = self.face_pixel(f);
        let mut out = FaceBoundary::new();
        match self.topology {
            Topology::Cubical => {
                out.push((self.horizontal_edge(i, j), 1));
                out.push((self.vertical_edge(i + 1, j), 1));
                out.push((self.horizontal_edge(i, j + 1), -1));
                out.push((self.vertical_edge(i, j), -1));
            }
            Topology::RightTriangulated => {
                let d = self.diagonal_edge(i, j).expect("triangulated complex");
                if f % 2 == 0 {
                    // (i,j) -> (i+1,j) -> (i+1,j+1) -> (i,j)
                    out.push((self.horizontal_edge(i, j), 1));
                    out.push((self.vertical_edge(i + 1, j), 1));
                    out.push((d, -1));
                } else {
                    // (i,j) -> (i+1,j+1) -> (i,j+1) -> (i,j)
                    out.push((d, 1));
                    out.push((self.horizontal_edge(i, j + 1), -1));
                    out.push((self.vertical_edge(i, j), -1));
                }
            }
        }
        out
    }

    /// Corner vertices of a face in counterclockwise order.
    pub fn face_vertices(&self, f: usize) -> ArrayVec<usize, 4> {
        let (i, j) = self.face_pixel(f);
        let mut out = ArrayVec::new();
        match self.topology {
            Topology::Cubical => {
                out.push(self.vertex(i, j));
                out.push(self.vertex(i + 1, j));
                out.push(self.vertex(i + 1, j + 1));
                out.push(self.vertex(i, j + 1));
            }
            Topology::RightTriangulated if f % 2 == 0 => {
                out.push(self.vertex(i, j));
                out.push(self.vertex(i + 1, j));
                out.push(self.vertex(i + 1, j + 1));
            }
            Topology::RightTriangulated => {
                out.push(self.vertex(i, j));
                out.push(self.vertex(i + 1, j + 1));
                out.push(self.vertex(i, j + 1));
            }
        }
        out
    }

    pub fn edge_length(&self, e: usize) -> T {
        match self.edge_kind(e) {
            EdgeKind::Diagonal { .. } => self.spacing * T::SQRT_2(),
            _ => self.spacing,
        }
    }

    pub fn face_area(&self, _f: usize) -> T {
        let square = self.spacing * self.spacing;
        match self.topology {
            Topology::Cubical => square,
            Topology::RightTriangulated => square / T::of(2.0),
        }
    }

    /// Weight of a cell in the mass functional; vertices weigh 1.
    pub fn cell_weight(&self, dim: usize, index: usize) -> T {
        match dim {
            0 => T::one(),
            1 => self.edge_length(index),
            _ => self.face_area(index),
        }
    }

    /// Every face's signed boundary, in face order.
    pub fn face_incidence(&self) -> impl Iterator<Item = FaceBoundary> + '_ {
        (0..self.num_faces()).map(move |f| self.face_boundary(f))
    }

    /// Physical coordinates of a vertex relative to the lower-left corner.
    pub fn vertex_position(&self, v: usize) -> (T, T) {
        let (i, j) = self.vertex_coords(v);
        (
            T::from_usize(i).unwrap() * self.spacing,
            T::from_usize(j).unwrap() * self.spacing,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_cubical() {
        let k = GridComplex2::cubical(2, 2, 1.0).unwrap();
        assert_eq!(
            (k.num_vertices(), k.num_edges(), k.num_faces()),
            (9, 12, 4)
        );
        let k = GridComplex2::cubical(3, 2, 0.5).unwrap();
        assert_eq!(
            (k.num_vertices(), k.num_edges(), k.num_faces()),
            (12, 17, 6)
        );
        assert!((0..k.num_edges()).all(|e| k.edge_length(e) == 0.5));
        assert!((0..k.num_faces()).all(|f| k.face_area(f) == 0.25));
    }

    #[test]
    fn counts_triangulated() {
        let k = GridComplex2::triangulated(1, 1, 1.0).unwrap();
        assert_eq!((k.num_vertices(), k.num_edges(), k.num_faces()), (4, 5, 2));
        let diag = k.diagonal_edge(0, 0).unwrap();
        assert!((k.edge_length(diag) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(k.face_area(0), 0.5);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(GridComplex2::cubical(0, 3, 1.0).is_err());
        assert!(GridComplex2::cubical(3, 0, 1.0).is_err());
        assert!(GridComplex2::cubical(3, 3, 0.0).is_err());
        assert!(GridComplex2::cubical(3, 3, -1.0).is_err());
        assert!(GridComplex2::cubical(3, 3, f64::NAN).is_err());
    }

    #[test]
    fn face_boundary_is_a_closed_cycle() {
        for topo in [Topology::Cubical, Topology::RightTriangulated] {
            let k = GridComplex2::new(3, 4, 1.0, topo).unwrap();
            for f in 0..k.num_faces() {
                let mut vb = vec![0i64; k.num_vertices()];
                for (e, s) in k.face_boundary(f) {
                    for (v, t) in k.edge_boundary(e) {
                        vb[v] += s * t;
                    }
                }
                assert!(vb.iter().all(|&c| c == 0), "face {f} of {topo:?}");
            }
        }
    }

    #[test]
    fn orientation_convention() {
        let k = GridComplex2::cubical(2, 2, 1.0).unwrap();
        for e in 0..k.num_edges() {
            let (t, h) = k.edge_endpoints(e);
            let (ti, tj) = k.vertex_coords(t);
            let (hi, hj) = k.vertex_coords(h);
            assert!((hi == ti + 1 && hj == tj) || (hi == ti && hj == tj + 1));
        }
        // bottom edge traversed +x, top edge -x: counterclockwise
        let b = k.face_boundary(k.pixel_faces(1, 1)[0]);
        assert_eq!(b[0], (k.horizontal_edge(1, 1), 1));
        assert_eq!(b[2], (k.horizontal_edge(1, 2), -1));
    }

    #[test]
    fn edge_kind_round_trip() {
        let k = GridComplex2::triangulated(4, 3, 1.0).unwrap();
        for e in 0..k.num_edges() {
            let back = match k.edge_kind(e) {
                EdgeKind::Horizontal { i, j } => k.horizontal_edge(i, j),
                EdgeKind::Vertical { i, j } => k.vertical_edge(i, j),
                EdgeKind::Diagonal { i, j } => k.diagonal_edge(i, j).unwrap(),
            };
            assert_eq!(back, e);
        }
    }

    #[test]
    fn clones_share_identity() {
        let a = GridComplex2::cubical(2, 2, 1.0).unwrap();
        let b = GridComplex2::cubical(2, 2, 1.0).unwrap();
        assert_eq!(a.id(), a.clone().id());
        assert_ne!(a.id(), b.id());
    }
}
