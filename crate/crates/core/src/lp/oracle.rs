use super::{check_inputs, decomposition};
use crate::complex::{Chain, EdgeKind, GridComplex2};
use crate::error::{Error, Result};
use crate::result::{Diagnostics, FlatNormResult, Method};
use crate::Real;

pub const MAX_ORACLE_FACES: usize = 20;
/// `3^20`: the full enumeration at the default range on the largest
/// admissible complex.
pub const MAX_ORACLE_CANDIDATES: u64 = 3_486_784_401;

/// Global minimum over every 2-chain with coefficients in `[−range, range]`.
///
/// Candidates are visited in reflected Gray order, so each step moves one
/// coefficient by ±1 and the residual is updated on at most four edges.
/// Costs are tracked as exact integer counts per weight class (axis edges,
/// diagonal edges, faces), so comparisons are free of accumulated
/// round-off. Among equal minima the first visited wins.
pub fn exhaustive_oracle<T: Real>(
    complex: &GridComplex2<T>,
    t: &Chain,
    lambda: T,
    range: u32,
) -> Result<FlatNormResult<T>> {
    check_inputs(complex, t, lambda)?;
    let f = complex.num_faces();
    if f > MAX_ORACLE_FACES {
        return Err(Error::Resource(format!(
            "exhaustive oracle handles at most {MAX_ORACLE_FACES} faces, complex has {f}"
        )));
    }
    let base = 2 * range as u64 + 1;
    let candidates = (0..f).try_fold(1u64, |acc, _| acc.checked_mul(base));
    let candidates = match candidates {
        Some(c) if c <= MAX_ORACLE_CANDIDATES => c,
        _ => {
            return Err(Error::Resource(format!(
                "{base}^{f} candidates exceed the oracle cap {MAX_ORACLE_CANDIDATES}"
            )))
        }
    };

    let h = complex.spacing();
    let axis_w = h;
    let diag_w = h * T::SQRT_2();
    let face_w = lambda * complex.face_area(0);
    let cost = |axis: i64, diag: i64, faces: i64| {
        axis_w * T::of_i64(axis) + diag_w * T::of_i64(diag) + face_w * T::of_i64(faces)
    };
    let diagonal: Vec<bool> = (0..complex.num_edges())
        .map(|e| matches!(complex.edge_kind(e), EdgeKind::Diagonal { .. }))
        .collect();
    let boundaries: Vec<Vec<(usize, i64)>> = complex.face_incidence().map(|b| b.to_vec()).collect();

    let r = range as i64;
    let mut y = vec![-r; f];
    let mut residual = t.to_dense(complex.num_edges());
    // start from y = (−r, …, −r): residual = t − ∂y
    for (j, b) in boundaries.iter().enumerate() {
        for &(e, s) in b {
            residual[e] -= s * y[j];
        }
    }
    let (mut axis, mut diag) = (0i64, 0i64);
    for (e, &c) in residual.iter().enumerate() {
        if diagonal[e] {
            diag += c.abs();
        } else {
            axis += c.abs();
        }
    }
    let mut faces = r * f as i64;

    let mut best_value = cost(axis, diag, faces);
    let mut best_y = y.clone();
    let tie = best_value.abs().max(T::one()) * T::round_off();
    // flat per-face incidence for the hot loop
    let stride = 4;
    let mut inc_edge = vec![0usize; f * stride];
    let mut inc_sign = vec![0i64; f * stride];
    let mut inc_class = vec![0usize; f * stride];
    for (j, b) in boundaries.iter().enumerate() {
        for (k, &(e, s)) in b.iter().enumerate() {
            inc_edge[j * stride + k] = e;
            inc_sign[j * stride + k] = s;
            inc_class[j * stride + k] = diagonal[e] as usize;
        }
    }
    // edge counts per weight class: axis, diagonal
    let mut counts = [axis, diag];
    // loopless reflected mixed-radix Gray code: direction and focus pointers
    let mut dir = vec![1i64; f];
    let mut focus: Vec<usize> = (0..=f).collect();
    if range > 0 {
        loop {
            let j = focus[0];
            focus[0] = 0;
            if j == f {
                break;
            }
            let d = dir[j];
            let old = y[j];
            let new = old + d;
            y[j] = new;
            faces += new.abs() - old.abs();
            for k in j * stride..j * stride + stride {
                let e = inc_edge[k];
                let before = residual[e].abs();
                residual[e] -= inc_sign[k] * d;
                counts[inc_class[k]] += residual[e].abs() - before;
            }
            if new == -r || new == r {
                dir[j] = -d;
                focus[j] = focus[j + 1];
                focus[j + 1] = j + 1;
            }
            let value = cost(counts[0], counts[1], faces);
            if value < best_value - tie {
                best_value = value;
                best_y.copy_from_slice(&y);
            }
        }
    }

    let s = Chain::from_cells(complex, 2, best_y.iter().enumerate().map(|(j, &c)| (j, c)))?;
    decomposition(
        complex,
        t,
        s,
        lambda,
        Method::Exhaustive,
        Diagnostics {
            iterations: candidates,
            augmentations: 0,
            integral: true,
            fractional_s: None,
        },
    )
}

/// LP against oracle on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleComparison<T> {
    pub lp_value: T,
    pub oracle_value: T,
    pub range: u32,
    /// Largest `|S_j|` in the LP optimum.
    pub lp_max_coefficient: i64,
    /// The LP optimum lies outside the enumerated box, so the oracle could
    /// not have found it.
    pub lp_exceeds_range: bool,
}

impl<T: Real> OracleComparison<T> {
    pub fn agrees(&self, tolerance: T) -> bool {
        (self.lp_value - self.oracle_value).abs() <= tolerance
    }
}

pub fn compare_with_oracle<T: Real>(
    lp: &FlatNormResult<T>,
    oracle: &FlatNormResult<T>,
    range: u32,
) -> OracleComparison<T> {
    let lp_max_coefficient = lp.s_chain.max_abs_coefficient();
    OracleComparison {
        lp_value: lp.value,
        oracle_value: oracle.value,
        range,
        lp_max_coefficient,
        lp_exceeds_range: lp_max_coefficient > range as i64,
    }
}
