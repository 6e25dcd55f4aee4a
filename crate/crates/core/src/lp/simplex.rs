//! Primal simplex for the split-variable flat norm program
//!
//! ```text
//! minimize   Σ w_i (x⁺_i + x⁻_i) + Σ v_j (y⁺_j + y⁻_j)
//! subject to x⁺ − x⁻ + B (y⁺ − y⁻) = t,   all variables ≥ 0
//! ```
//!
//! Each `(+, −)` pair has opposite columns, so the tableau stores one column
//! per pair and the `−` reduced cost is `2c − r⁺`. Starting from the basis
//! `x⁺_i` (or `x⁻_i` where `t_i < 0`) the program is primal feasible, so no
//! first phase is needed. Pivots follow Bland's rule over the variable order
//! `x⁺_0, x⁻_0, x⁺_1, …, y⁺_0, y⁻_0, …`.

use crate::complex::GridComplex2;
use crate::error::{Error, Result};
use crate::Real;

/// Tableau entries allowed before an instance is refused.
pub const MAX_TABLEAU_ENTRIES: usize = 40_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem<T> {
    /// Edge weights `w_i`.
    pub edge_costs: Vec<T>,
    /// Face weights `v_j = λ·area_j`.
    pub face_costs: Vec<T>,
    /// Signed boundary of each face as `(edge, ±1)`.
    pub incidence: Vec<Vec<(usize, i64)>>,
    /// Right-hand side `t`.
    pub rhs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub objective: T,
    /// `y⁺_j − y⁻_j` per face.
    pub faces: Vec<T>,
    pub iterations: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpOptions {
    /// Pivot cap; `None` picks a cap from the instance size.
    pub max_iterations: Option<u64>,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            max_iterations: None,
        }
    }
}

impl<T: Real> LpProblem<T> {
    /// The flat norm program of `t` (dense edge coefficients) at scale `λ`.
    pub fn flatnorm(complex: &GridComplex2<T>, t: &[i64], lambda: T) -> Result<Self> {
        if t.len() != complex.num_edges() {
            return Err(Error::invalid("right-hand side does not match the edge count"));
        }
        Ok(LpProblem {
            edge_costs: (0..complex.num_edges()).map(|e| complex.edge_length(e)).collect(),
            face_costs: (0..complex.num_faces())
                .map(|f| lambda * complex.face_area(f))
                .collect(),
            incidence: complex.face_incidence().map(|b| b.to_vec()).collect(),
            rhs: t.to_vec(),
        })
    }

    pub fn num_rows(&self) -> usize {
        self.edge_costs.len()
    }

    pub fn num_pairs(&self) -> usize {
        self.edge_costs.len() + self.face_costs.len()
    }

    fn cost(&self, pair: usize) -> T {
        let m = self.edge_costs.len();
        if pair < m {
            self.edge_costs[pair]
        } else {
            self.face_costs[pair - m]
        }
    }

    pub fn solve(&self, options: &LpOptions) -> Result<LpSolution<T>> {
        let m = self.num_rows();
        let f = self.face_costs.len();
        let n = m + f;
        if self.incidence.len() != f || self.rhs.len() != m {
            return Err(Error::invalid("inconsistent program dimensions"));
        }
        if m.saturating_mul(n) > MAX_TABLEAU_ENTRIES {
            return Err(Error::Resource(format!(
                "program with {m} rows and {n} column pairs exceeds the simplex size limit"
            )));
        }
        let cap = options
            .max_iterations
            .unwrap_or(100_000 + 50 * (m as u64 + n as u64));

        // Row i is multiplied by sign_i so that t_i ≥ 0; the basic variable of
        // row i is then x⁺_i (sign +1) or x⁻_i (sign −1).
        let sign: Vec<T> = self
            .rhs
            .iter()
            .map(|&t| if t < 0 { -T::one() } else { T::one() })
            .collect();
        let mut tab = vec![T::zero(); m * n];
        for i in 0..m {
            tab[i * n + i] = sign[i];
        }
        for (j, b) in self.incidence.iter().enumerate() {
            for &(e, s) in b {
                if e >= m {
                    return Err(Error::invalid(format!("face {j} references edge {e}")));
                }
                tab[e * n + m + j] += T::of_i64(s) * sign[e];
            }
        }
        let mut rhs: Vec<T> = self.rhs.iter().map(|&t| T::of_i64(t.abs())).collect();
        // basis[i] = 2·pair + (1 for the − variable)
        let mut basis: Vec<usize> = (0..m)
            .map(|i| 2 * i + usize::from(self.rhs[i] < 0))
            .collect();

        // reduced costs of the + variables: r⁺_j = c_j − Σ_i c_B(i) tab[i][j]
        let basic_cost: Vec<T> = (0..m).map(|i| self.cost(basis[i] / 2)).collect();
        let mut reduced: Vec<T> = (0..n).map(|j| self.cost(j)).collect();
        for i in 0..m {
            let row = &tab[i * n..(i + 1) * n];
            for j in 0..n {
                if row[j] != T::zero() {
                    reduced[j] -= basic_cost[i] * row[j];
                }
            }
        }
        let mut objective = (0..m).fold(T::zero(), |s, i| s + basic_cost[i] * rhs[i]);

        let max_cost = (0..n).fold(T::zero(), |a, j| a.max(self.cost(j)));
        let tol = max_cost * T::round_off() * T::of(16.0);
        let pivot_tol = T::of(1e-6);
        let mut iterations = 0u64;
        let mut pivot_cols: Vec<usize> = Vec::with_capacity(n);
        let mut pivot_vals: Vec<T> = Vec::with_capacity(n);
        loop {
            // Bland: lowest-index variable with negative reduced cost
            let mut entering = None;
            for j in 0..n {
                let rp = reduced[j];
                if rp < -tol {
                    entering = Some((j, T::one(), rp));
                    break;
                }
                let rm = self.cost(j) + self.cost(j) - rp;
                if rm < -tol {
                    entering = Some((j, -T::one(), rm));
                    break;
                }
            }
            let Some((q, sigma, rc)) = entering else { break };
            if iterations >= cap {
                return Err(Error::Resource(format!(
                    "simplex iteration cap {cap} reached; best feasible objective so far {objective}"
                )));
            }
            iterations += 1;

            // ratio test, ties broken by the lowest leaving variable index
            let mut leave: Option<(usize, T)> = None;
            for i in 0..m {
                let d = sigma * tab[i * n + q];
                if d > pivot_tol {
                    let ratio = rhs[i] / d;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best || (ratio == best && basis[i] < basis[r]) {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                // cannot happen: the objective is bounded below by zero
                return Err(Error::Resource("simplex found an unbounded direction".into()));
            };

            // normalize the pivot row so the entering variable has coefficient 1
            let d = sigma * tab[r * n + q];
            pivot_cols.clear();
            pivot_vals.clear();
            {
                let row = &mut tab[r * n..(r + 1) * n];
                for (j, v) in row.iter_mut().enumerate() {
                    if *v != T::zero() {
                        *v /= d;
                        pivot_cols.push(j);
                        pivot_vals.push(*v);
                    }
                }
            }
            rhs[r] /= d;
            let pivot_rhs = rhs[r];
            for i in 0..m {
                if i == r {
                    continue;
                }
                let factor = sigma * tab[i * n + q];
                if factor == T::zero() {
                    continue;
                }
                let row = &mut tab[i * n..(i + 1) * n];
                for (&j, &v) in pivot_cols.iter().zip(&pivot_vals) {
                    row[j] -= factor * v;
                }
                rhs[i] -= factor * pivot_rhs;
            }
            for (&j, &v) in pivot_cols.iter().zip(&pivot_vals) {
                reduced[j] -= rc * v;
            }
            objective += rc * pivot_rhs;
            basis[r] = 2 * q + usize::from(sigma < T::zero());
        }

        let mut faces = vec![T::zero(); f];
        for i in 0..m {
            let pair = basis[i] / 2;
            if pair >= m {
                let v = if basis[i] % 2 == 0 { rhs[i] } else { -rhs[i] };
                faces[pair - m] = v;
            }
        }
        log::debug!("simplex: {iterations} pivots, objective {objective}");
        Ok(LpSolution {
            objective,
            faces,
            iterations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_face_program() {
        // one 1×1 square, t = its boundary
        let k = GridComplex2::cubical(1, 1, 1.0f64).unwrap();
        let t: Vec<i64> = {
            let mut t = vec![0; k.num_edges()];
            for (e, s) in k.face_boundary(0) {
                t[e] = s;
            }
            t
        };
        let fill = LpProblem::flatnorm(&k, &t, 1.0).unwrap().solve(&LpOptions::default()).unwrap();
        assert!((fill.objective - 1.0).abs() < 1e-12);
        assert_eq!(fill.faces, vec![1.0]);
        let keep = LpProblem::flatnorm(&k, &t, 10.0).unwrap().solve(&LpOptions::default()).unwrap();
        assert!((keep.objective - 4.0).abs() < 1e-12);
        assert_eq!(keep.faces, vec![0.0]);
        // reversed orientation fills with −1
        let neg: Vec<i64> = t.iter().map(|c| -c).collect();
        let s = LpProblem::flatnorm(&k, &neg, 1.0).unwrap().solve(&LpOptions::default()).unwrap();
        assert_eq!(s.faces, vec![-1.0]);
    }

    #[test]
    fn iteration_cap_reports_bound() {
        let k = GridComplex2::cubical(3, 3, 1.0).unwrap();
        let mut t = vec![0; k.num_edges()];
        for f in 0..k.num_faces() {
            for (e, s) in k.face_boundary(f) {
                t[e] += s;
            }
        }
        let p = LpProblem::flatnorm(&k, &t, 0.1).unwrap();
        let err = p
            .solve(&LpOptions {
                max_iterations: Some(1),
            })
            .unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        assert!(err.to_string().contains("best feasible objective"));
    }
}
