use super::maxflow::FlowNetwork;
use super::stencil::{Link, NeighborhoodStencil};
use crate::error::{Error, Result};
use crate::result::{Diagnostics, FlatNormResult, Method};
use crate::shape_io::BinaryShape;
use crate::Real;

/// Minimizer `Σ` of `Per(Σ) + λ·area(Σ Δ Ω)` with its cost split.
#[derive(Clone, Debug, PartialEq)]
pub struct CutSolution<T> {
    pub sigma: BinaryShape<T>,
    pub lambda: T,
    /// Stencil perimeter of `Σ`, the background outside the grid included.
    pub perimeter: T,
    /// `area(Σ Δ Ω)`.
    pub area_change: T,
    /// Cut capacity recomputed from the original network.
    pub value: T,
    pub phases: u64,
    pub augmentations: u64,
}

/// Graph-cut flat norm solver for one shape and stencil. The n-links do not
/// depend on λ, so one solver serves a whole sweep.
#[derive(Clone, Debug)]
pub struct GraphCutSolver<'a, T> {
    shape: &'a BinaryShape<T>,
    stencil: NeighborhoodStencil,
    links: Vec<Link<T>>,
    /// Capacity of links leaving the grid, charged to the sink: the grid is
    /// surrounded by fixed background.
    exterior: Vec<T>,
}

fn check_lambda<T: Real>(lambda: T) -> Result<()> {
    if !(lambda > T::zero()) || !lambda.is_finite() {
        return Err(Error::invalid(format!("lambda must be positive, got {lambda}")));
    }
    Ok(())
}

impl<'a, T: Real> GraphCutSolver<'a, T> {
    pub fn new(shape: &'a BinaryShape<T>, stencil: NeighborhoodStencil) -> Self {
        let links = stencil.links(shape.spacing());
        let (w, h) = (shape.width() as i64, shape.height() as i64);
        let mut exterior = vec![T::zero(); shape.width() * shape.height()];
        for y in 0..h {
            for x in 0..w {
                for l in &links {
                    let (qx, qy) = (x + l.dx as i64, y + l.dy as i64);
                    if qx < 0 || qy < 0 || qx >= w || qy >= h {
                        exterior[(y * w + x) as usize] += l.weight;
                    }
                }
            }
        }
        GraphCutSolver {
            shape,
            stencil,
            links,
            exterior,
        }
    }

    pub fn stencil(&self) -> NeighborhoodStencil {
        self.stencil
    }

    pub fn shape(&self) -> &BinaryShape<T> {
        self.shape
    }

    /// The flow network for `λ`: t-links `λ·spacing²` from the source for
    /// pixels of `Ω`, to the sink for the others.
    pub fn network(&self, lambda: T) -> Result<FlowNetwork<T>> {
        check_lambda(lambda)?;
        let mut net = FlowNetwork::new(self.shape.width(), self.shape.height(), &self.links)?;
        let h = self.shape.spacing();
        let t = lambda * h * h;
        for (p, &inside) in self.shape.bits().iter().enumerate() {
            let (src, snk) = if inside { (t, T::zero()) } else { (T::zero(), t) };
            net.add_terminal(p, src, snk + self.exterior[p]);
        }
        Ok(net)
    }

    /// Stencil perimeter of a set on this solver's grid.
    pub fn perimeter(&self, sigma: &BinaryShape<T>) -> T {
        let (w, h) = (sigma.width() as i64, sigma.height() as i64);
        let bits = sigma.bits();
        let mut per = T::zero();
        for y in 0..h {
            for x in 0..w {
                let p = (y * w + x) as usize;
                if !bits[p] {
                    continue;
                }
                per += self.exterior[p];
                for l in &self.links {
                    let (qx, qy) = (x + l.dx as i64, y + l.dy as i64);
                    if qx >= 0 && qy >= 0 && qx < w && qy < h && !bits[(qy * w + qx) as usize] {
                        per += l.weight;
                    }
                }
            }
        }
        per
    }

    pub fn solve(&self, lambda: T) -> Result<CutSolution<T>> {
        let mut net = self.network(lambda)?;
        if self.shape.is_empty() {
            return Ok(CutSolution {
                sigma: BinaryShape::empty(*self.shape.frame()),
                lambda,
                perimeter: T::zero(),
                area_change: T::zero(),
                value: T::zero(),
                phases: 0,
                augmentations: 0,
            });
        }
        let flow = net.max_flow();
        let side = net.source_side();
        let cut = net.cut_capacity(&side);
        let total = net.total_capacity();
        if (cut - flow).abs() > T::of(1e-9) * total.max(T::one()) {
            return Err(Error::Resource(format!(
                "max-flow {flow} and min-cut {cut} disagree beyond tolerance"
            )));
        }
        let sigma = BinaryShape::from_bits(*self.shape.frame(), side)?;
        let perimeter = self.perimeter(&sigma);
        let area_change = sigma.symmetric_difference(self.shape)?.area();
        Ok(CutSolution {
            sigma,
            lambda,
            perimeter,
            area_change,
            value: cut,
            phases: net.phases(),
            augmentations: net.augmentations(),
        })
    }

    /// Full decomposition on the shape's cubical complex:
    /// `S = χΩ − χΣ` and residual `∂χΣ`.
    pub fn result(&self, lambda: T) -> Result<FlatNormResult<T>> {
        let sol = self.solve(lambda)?;
        let complex = self.shape.cubical_complex()?;
        let s = self.shape.to_2chain(&complex)?.sub(&sol.sigma.to_2chain(&complex)?)?;
        let residual = sol.sigma.boundary_chain(&complex)?;
        Ok(FlatNormResult {
            lambda,
            value: sol.perimeter + lambda * sol.area_change,
            mass_residual: sol.perimeter,
            mass_s: sol.area_change,
            s_chain: s,
            residual_chain: residual,
            complex: complex.params(),
            method: Method::GraphCut,
            stencil: Some(self.stencil),
            layered: false,
            diagnostics: Diagnostics {
                iterations: sol.phases,
                augmentations: sol.augmentations,
                integral: true,
                fractional_s: None,
            },
        })
    }
}

/// Flat norm of `∂Ω` by minimum cut.
pub fn flatnorm_graphcut<T: Real>(
    shape: &BinaryShape<T>,
    lambda: T,
    stencil: NeighborhoodStencil,
) -> Result<FlatNormResult<T>> {
    GraphCutSolver::new(shape, stencil).result(lambda)
}

/// The L1TV minimizer `Σ`.
pub fn l1tv_denoise<T: Real>(
    shape: &BinaryShape<T>,
    lambda: T,
    stencil: NeighborhoodStencil,
) -> Result<BinaryShape<T>> {
    Ok(GraphCutSolver::new(shape, stencil).solve(lambda)?.sigma)
}
