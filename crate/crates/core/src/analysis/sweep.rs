use std::fmt::Write as _;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::complex::{Chain, GridComplex2};
use crate::error::{Error, Result};
use crate::graphcut::{GraphCutSolver, NeighborhoodStencil};
use crate::lp::flatnorm_lp;
use crate::result::Method;
use crate::shape_io::{format_sig12, BinaryShape};
use crate::Real;

/// What a sweep evaluates: the boundary of a shape, or an explicit 1-chain.
#[derive(Clone, Copy, Debug)]
pub enum SweepInput<'a, T> {
    Shape(&'a BinaryShape<T>),
    Chain(&'a GridComplex2<T>, &'a Chain),
}

impl<T: Real> SweepInput<'_, T> {
    /// SHA-256 over a canonical encoding of the input.
    pub fn digest(&self) -> Result<String> {
        let mut h = Sha256::new();
        match self {
            SweepInput::Shape(s) => {
                h.update(b"shape\n");
                let f = s.frame();
                h.update(
                    format!(
                        "{} {} {} {} {}\n",
                        f.width,
                        f.height,
                        format_sig12(f.spacing.as_f64()),
                        format_sig12(f.origin.0.as_f64()),
                        format_sig12(f.origin.1.as_f64())
                    )
                    .as_bytes(),
                );
                let bytes: Vec<u8> = s.bits().iter().map(|&b| b as u8).collect();
                h.update(&bytes);
            }
            SweepInput::Chain(k, c) => {
                h.update(b"chain\n");
                h.update(c.to_document(k)?.to_json().as_bytes());
            }
        }
        Ok(hex::encode(h.finalize()))
    }
}

/// `λ ↦ F_λ` sampled at increasing λ.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepCurve<T> {
    pub points: Vec<(T, T)>,
    pub method: Method,
    pub stencil: Option<NeighborhoodStencil>,
    pub digest: String,
}

impl<T: Real> SweepCurve<T> {
    pub fn lambdas(&self) -> Vec<T> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn values(&self) -> Vec<T> {
        self.points.iter().map(|p| p.1).collect()
    }

    fn stencil_label(&self) -> &'static str {
        self.stencil.map(|s| s.as_str()).unwrap_or("none")
    }

    /// `lambda,value,method,stencil` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,value,method,stencil\n");
        for &(l, v) in &self.points {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                format_sig12(l.as_f64()),
                format_sig12(v.as_f64()),
                self.method.as_str(),
                self.stencil_label()
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"method\": \"{}\",", self.method.as_str());
        let _ = writeln!(out, "  \"stencil\": \"{}\",", self.stencil_label());
        let _ = writeln!(out, "  \"input_sha256\": \"{}\",", self.digest);
        out.push_str("  \"points\": [");
        for (k, &(l, v)) in self.points.iter().enumerate() {
            let sep = if k == 0 { "\n" } else { ",\n" };
            let _ = write!(
                out,
                "{sep}    {{\"lambda\": {}, \"value\": {}}}",
                format_sig12(l.as_f64()),
                format_sig12(v.as_f64())
            );
        }
        if !self.points.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }

    /// Largest decrease between consecutive values (0 when nondecreasing).
    pub fn max_decrease(&self) -> T {
        self.points
            .windows(2)
            .map(|w| w[0].1 - w[1].1)
            .fold(T::zero(), |m, d| m.max(d))
    }

    /// Second differences generalized to uneven λ spacing:
    /// `(s_k − s_{k−1}) · (λ_{k+1} − λ_{k−1}) / 2` with `s_k` the slope of
    /// segment `k`. Equals `v_{k+1} − 2v_k + v_{k−1}` on a uniform grid.
    pub fn second_differences(&self) -> Vec<T> {
        let p = &self.points;
        let slope = |k: usize| (p[k + 1].1 - p[k].1) / (p[k + 1].0 - p[k].0);
        (1..p.len().saturating_sub(1))
            .map(|k| (slope(k) - slope(k - 1)) * (p[k + 1].0 - p[k - 1].0) / T::of(2.0))
            .collect()
    }

    pub fn max_second_difference(&self) -> T {
        self.second_differences()
            .into_iter()
            .fold(T::neg_infinity(), |m, d| m.max(d))
    }

    pub fn is_nondecreasing(&self, tol: T) -> bool {
        self.max_decrease() <= tol
    }

    pub fn is_concave(&self, tol: T) -> bool {
        self.second_differences().iter().all(|&d| d <= tol)
    }

    /// λ where the curve bends most: the intersection of the two segment
    /// lines around the most negative slope change.
    pub fn kink(&self) -> Option<T> {
        let p = &self.points;
        let d = self.second_differences();
        let (k, _) = d
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < T::zero())
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())?;
        let k = k + 1;
        let s0 = (p[k].1 - p[k - 1].1) / (p[k].0 - p[k - 1].0);
        let s1 = (p[k + 1].1 - p[k].1) / (p[k + 1].0 - p[k].0);
        // lines through p[k−1] with slope s0 and p[k+1] with slope s1
        let x = (p[k + 1].1 - p[k - 1].1 + s0 * p[k - 1].0 - s1 * p[k + 1].0) / (s0 - s1);
        Some(x)
    }
}

fn check_lambdas<T: Real>(lambdas: &[T]) -> Result<()> {
    if lambdas.is_empty() {
        return Err(Error::invalid("lambda list is empty"));
    }
    if let Some(l) = lambdas.iter().find(|l| !(**l > T::zero()) || !l.is_finite()) {
        return Err(Error::invalid(format!("lambda must be positive, got {l}")));
    }
    if let Some(w) = lambdas.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::invalid(format!(
            "lambda list must be strictly increasing, got {} then {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// One solve per λ, possibly in parallel; the curve is always in λ order.
/// Graph-cut sweeps share one solver across λ.
pub fn lambda_sweep<T: Real>(
    input: SweepInput<'_, T>,
    lambdas: &[T],
    method: Method,
    stencil: NeighborhoodStencil,
) -> Result<SweepCurve<T>> {
    check_lambdas(lambdas)?;
    let digest = input.digest()?;
    let values: Vec<T> = match (method, input) {
        (Method::GraphCut, SweepInput::Shape(shape)) => {
            let solver = GraphCutSolver::new(shape, stencil);
            lambdas
                .par_iter()
                .map(|&l| solver.solve(l).map(|s| s.perimeter + l * s.area_change))
                .collect::<Result<_>>()?
        }
        (Method::GraphCut, SweepInput::Chain(..)) => {
            return Err(Error::invalid("graph-cut sweeps need a shape input"));
        }
        (Method::Lp, SweepInput::Shape(shape)) => {
            let complex = shape.cubical_complex()?;
            let t = shape.boundary_chain(&complex)?;
            lp_values(&complex, &t, lambdas)?
        }
        (Method::Lp, SweepInput::Chain(complex, t)) => lp_values(complex, t, lambdas)?,
        (Method::Exhaustive, _) => {
            return Err(Error::invalid("sweeps support the lp and graphcut methods"));
        }
    };
    Ok(SweepCurve {
        points: lambdas.iter().copied().zip(values).collect(),
        method,
        stencil: (method == Method::GraphCut).then_some(stencil),
        digest,
    })
}

fn lp_values<T: Real>(complex: &GridComplex2<T>, t: &Chain, lambdas: &[T]) -> Result<Vec<T>> {
    lambdas
        .par_iter()
        .map(|&l| flatnorm_lp(complex, t, l).map(|r| r.value))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape_io::Frame;

    fn curve(points: &[(f64, f64)]) -> SweepCurve<f64> {
        SweepCurve {
            points: points.to_vec(),
            method: Method::Lp,
            stencil: None,
            digest: String::new(),
        }
    }

    #[test]
    fn disk_like_curve() {
        let pi = std::f64::consts::PI;
        let pts: Vec<(f64, f64)> = (1..=6)
            .map(|k| {
                let l = 0.5 * k as f64;
                (l, (2.0 * pi).min(l * pi))
            })
            .collect();
        let c = curve(&pts);
        assert!(c.is_nondecreasing(0.0));
        assert!(c.is_concave(1e-12));
        assert!((c.kink().unwrap() - 2.0).abs() < 1e-12);
        let uneven = curve(&[(1.0, 1.0), (2.0, 2.0), (4.0, 4.0)]);
        assert!(uneven.second_differences()[0].abs() < 1e-12);
        assert!(uneven.kink().is_none());
    }

    #[test]
    fn csv_layout() {
        let c = SweepCurve {
            points: vec![(0.5, 1.0), (1.0, 2.0)],
            method: Method::GraphCut,
            stencil: Some(NeighborhoodStencil::N16),
            digest: "x".into(),
        };
        assert_eq!(c.to_csv(), "lambda,value,method,stencil\n0.5,1,graphcut,N16\n1,2,graphcut,N16\n");
        assert!(c.to_json().contains("\"input_sha256\": \"x\""));
    }

    #[test]
    fn zero_input_and_bad_lists() {
        let s = BinaryShape::<f64>::empty(Frame::new(6, 6, 1.0, (0.0, 0.0)).unwrap());
        for m in [Method::Lp, Method::GraphCut] {
            let c = lambda_sweep(SweepInput::Shape(&s), &[0.5, 1.0, 2.0], m, NeighborhoodStencil::N8).unwrap();
            assert!(c.values().iter().all(|&v| v == 0.0));
        }
        let inp = SweepInput::Shape(&s);
        assert!(lambda_sweep(inp, &[], Method::Lp, NeighborhoodStencil::N4).is_err());
        assert!(lambda_sweep(inp, &[1.0, 1.0], Method::Lp, NeighborhoodStencil::N4).is_err());
        assert!(lambda_sweep(inp, &[-1.0, 1.0], Method::Lp, NeighborhoodStencil::N4).is_err());
    }
}
