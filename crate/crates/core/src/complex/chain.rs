use serde::{Deserialize, Serialize};

use super::grid::{ComplexId, ComplexParams, GridComplex2};
use crate::error::{Error, Result};
use crate::Real;

/// Integer-coefficient formal sum of oriented cells of one dimension.
///
/// Coefficients are stored sparsely, sorted by cell index, and are never
/// zero. A chain remembers the identity of the complex it was built on;
/// arithmetic between chains of different complexes or dimensions fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    complex: ComplexId,
    cells: Vec<(usize, i64)>,
}

/// Sorts, merges duplicates and drops zeros.
fn normalize(mut cells: Vec<(usize, i64)>) -> Result<Vec<(usize, i64)>> {
    cells.sort_unstable_by_key(|&(i, _)| i);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(cells.len());
    for (i, c) in cells {
        match out.last_mut() {
            Some((j, acc)) if *j == i => {
                *acc = acc
                    .checked_add(c)
                    .ok_or_else(|| Error::invalid("chain coefficient overflow"))?;
            }
            _ => out.push((i, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    Ok(out)
}

impl Chain {
    pub fn zero<T: Real>(complex: &GridComplex2<T>, dim: usize) -> Result<Self> {
        Self::from_cells(complex, dim, std::iter::empty())
    }

    /// Builds a chain from `(cell, coefficient)` pairs; repeated cells add up.
    pub fn from_cells<T: Real>(
        complex: &GridComplex2<T>,
        dim: usize,
        cells: impl IntoIterator<Item = (usize, i64)>,
    ) -> Result<Self> {
        if dim > 2 {
            return Err(Error::invalid(format!("chain dimension {dim} exceeds 2")));
        }
        let limit = complex.num_cells(dim);
        let cells = normalize(cells.into_iter().collect())?;
        if let Some(&(i, _)) = cells.iter().find(|&&(i, _)| i >= limit) {
            return Err(Error::invalid(format!(
                "cell index {i} out of range for dimension {dim} ({limit} cells)"
            )));
        }
        Ok(Chain {
            dim,
            complex: complex.id(),
            cells,
        })
    }

    /// Chain with a single cell.
    pub fn cell<T: Real>(
        complex: &GridComplex2<T>,
        dim: usize,
        index: usize,
        coefficient: i64,
    ) -> Result<Self> {
        Self::from_cells(complex, dim, [(index, coefficient)])
    }

    /// Dense coefficient vector of length `complex.num_cells(dim)`.
    pub fn from_dense<T: Real>(complex: &GridComplex2<T>, dim: usize, dense: &[i64]) -> Result<Self> {
        if dense.len() != complex.num_cells(dim) {
            return Err(Error::invalid(format!(
                "dense vector has {} entries, expected {}",
                dense.len(),
                complex.num_cells(dim)
            )));
        }
        Ok(Chain {
            dim,
            complex: complex.id(),
            cells: dense
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn complex_id(&self) -> ComplexId {
        self.complex
    }

    /// Nonzero `(cell, coefficient)` pairs in ascending cell order.
    pub fn cells(&self) -> &[(usize, i64)] {
        &self.cells
    }

    pub fn coefficient(&self, index: usize) -> i64 {
        self.cells
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|k| self.cells[k].1)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of cells with nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.cells.len()
    }

    pub fn max_abs_coefficient(&self) -> i64 {
        self.cells.iter().map(|&(_, c)| c.abs()).max().unwrap_or(0)
    }

    pub fn to_dense(&self, len: usize) -> Vec<i64> {
        let mut out = vec![0; len];
        for &(i, c) in &self.cells {
            out[i] = c;
        }
        out
    }

    pub fn lives_on<T: Real>(&self, complex: &GridComplex2<T>) -> bool {
        self.complex == complex.id()
    }

    fn check_compatible(&self, other: &Chain) -> Result<()> {
        if self.complex != other.complex {
            return Err(Error::invalid("chains live on different complexes"));
        }
        if self.dim != other.dim {
            return Err(Error::invalid(format!(
                "cannot combine a {}-chain with a {}-chain",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        let mut out = Vec::with_capacity(self.cells.len() + other.cells.len());
        let (mut a, mut b) = (self.cells.iter().peekable(), other.cells.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(&&(i, x)), Some(&&(j, y))) if i == j => {
                    a.next();
                    b.next();
                    let s = x
                        .checked_add(y)
                        .ok_or_else(|| Error::invalid("chain coefficient overflow"))?;
                    (i, s)
                }
                (Some(&&(i, x)), Some(&&(j, _))) if i < j => {
                    a.next();
                    (i, x)
                }
                (Some(_), Some(_)) => *b.next().unwrap(),
                (Some(_), None) => *a.next().unwrap(),
                (None, Some(_)) => *b.next().unwrap(),
                (None, None) => break,
            };
            if next.1 != 0 {
                out.push(next);
            }
        }
        Ok(Chain {
            dim: self.dim,
            complex: self.complex,
            cells: out,
        })
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, k: i64) -> Result<Chain> {
        if k == 0 {
            return Ok(Chain {
                dim: self.dim,
                complex: self.complex,
                cells: Vec::new(),
            });
        }
        let cells = self
            .cells
            .iter()
            .map(|&(i, c)| {
                c.checked_mul(k)
                    .map(|v| (i, v))
                    .ok_or_else(|| Error::invalid("chain coefficient overflow"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Chain {
            dim: self.dim,
            complex: self.complex,
            cells,
        })
    }

    pub fn neg(&self) -> Chain {
        self.scale(-1).expect("negation overflows only at i64::MIN")
    }

    pub fn to_document<T: Real>(&self, complex: &GridComplex2<T>) -> Result<ChainDocument> {
        self.check_host(complex)?;
        let p = complex.params();
        Ok(ChainDocument {
            complex: ComplexParams {
                width: p.width,
                height: p.height,
                spacing: p.spacing.as_f64(),
                topology: p.topology,
            },
            dim: self.dim,
            cells: self.cells.clone(),
        })
    }

    /// Same coefficients on a structurally identical complex.
    pub(crate) fn rehost<T: Real>(&self, complex: &GridComplex2<T>) -> Result<Chain> {
        if self.cells.last().is_some_and(|&(i, _)| i >= complex.num_cells(self.dim)) {
            return Err(Error::invalid("chain does not fit the target complex"));
        }
        Ok(Chain {
            dim: self.dim,
            complex: complex.id(),
            cells: self.cells.clone(),
        })
    }

    pub(crate) fn check_host<T: Real>(&self, complex: &GridComplex2<T>) -> Result<()> {
        if self.lives_on(complex) {
            Ok(())
        } else {
            Err(Error::invalid("chain does not live on this complex"))
        }
    }
}

impl<T: Real> GridComplex2<T> {
    /// Boundary operator `∂` on 1- and 2-chains.
    pub fn boundary(&self, chain: &Chain) -> Result<Chain> {
        chain.check_host(self)?;
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(chain.cells.len() * 4);
        match chain.dim {
            0 => return Err(Error::invalid("boundary of a 0-chain is undefined")),
            1 => {
                for &(e, c) in &chain.cells {
                    for (v, s) in self.edge_boundary(e) {
                        out.push((v, s * c));
                    }
                }
            }
            _ => {
                for &(f, c) in &chain.cells {
                    for (e, s) in self.face_boundary(f) {
                        out.push((e, s * c));
                    }
                }
            }
        }
        Ok(Chain {
            dim: chain.dim - 1,
            complex: self.id(),
            cells: normalize(out)?,
        })
    }

    /// Multiplicity-weighted volume `Σ |c| · weight(cell)`.
    pub fn mass(&self, chain: &Chain) -> Result<T> {
        chain.check_host(self)?;
        Ok(chain
            .cells
            .iter()
            .map(|&(i, c)| T::of_i64(c.abs()) * self.cell_weight(chain.dim, i))
            .fold(T::zero(), |a, b| a + b))
    }

    /// Rebuilds a chain from its document, checking the parameters match.
    pub fn chain_from_document(&self, doc: &ChainDocument) -> Result<Chain> {
        let p = self.params();
        let same = p.width == doc.complex.width
            && p.height == doc.complex.height
            && p.topology == doc.complex.topology
            && (p.spacing.as_f64() - doc.complex.spacing).abs()
                <= 1e-12 * doc.complex.spacing.abs();
        if !same {
            return Err(Error::invalid(
                "chain document was written for a different complex",
            ));
        }
        Chain::from_cells(self, doc.dim, doc.cells.iter().copied())
    }
}

/// Serialized chain: `{"complex": {...}, "dim": d, "cells": [[index, coeff], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainDocument {
    pub complex: ComplexParams<f64>,
    pub dim: usize,
    pub cells: Vec<(usize, i64)>,
}

impl ChainDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chain documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ChainDocument = serde_json::from_str(text)?;
        if doc.cells.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::invalid("chain cells must be sorted by ascending index"));
        }
        Ok(doc)
    }

    /// Builds a fresh complex from the stored parameters and the chain on it.
    pub fn into_complex_and_chain<T: Real>(&self) -> Result<(GridComplex2<T>, Chain)> {
        let params = ComplexParams {
            width: self.complex.width,
            height: self.complex.height,
            spacing: T::of(self.complex.spacing),
            topology: self.complex.topology,
        };
        let complex = GridComplex2::from_params(&params)?;
        let chain = complex.chain_from_document(self)?;
        Ok((complex, chain))
    }
}
