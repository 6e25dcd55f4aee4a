use crate::complex::{Chain, ComplexParams, GridComplex2};
use crate::error::Result;
use crate::graphcut::NeighborhoodStencil;
use crate::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Lp,
    GraphCut,
    Exhaustive,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Lp => "lp",
            Method::GraphCut => "graphcut",
            Method::Exhaustive => "exhaustive",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Solver bookkeeping attached to a result.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Diagnostics<T> {
    /// Simplex pivots, max-flow phases, or enumerated candidates.
    pub iterations: u64,
    /// Augmenting paths (graph cut only).
    pub augmentations: u64,
    /// Whether the LP optimum was integral within tolerance.
    pub integral: bool,
    /// Raw relaxed face values, kept only when the optimum was not integral.
    pub fractional_s: Option<Vec<(usize, T)>>,
}

/// A flat norm decomposition `T = (T - ∂S) + ∂S` with its cost.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatNormResult<T> {
    pub lambda: T,
    pub value: T,
    pub mass_residual: T,
    pub mass_s: T,
    /// The 2-chain `S`.
    pub s_chain: Chain,
    /// The 1-chain `T - ∂S`.
    pub residual_chain: Chain,
    /// Parameters of the complex both chains live on.
    pub complex: ComplexParams<T>,
    pub method: Method,
    pub stencil: Option<NeighborhoodStencil>,
    /// Set when the value was assembled from several binary cuts.
    pub layered: bool,
    pub diagnostics: Diagnostics<T>,
}

impl<T: Real> FlatNormResult<T> {
    /// Zero decomposition of the zero chain.
    pub(crate) fn zero(complex: &GridComplex2<T>, lambda: T, method: Method) -> Result<Self> {
        Ok(FlatNormResult {
            lambda,
            value: T::zero(),
            mass_residual: T::zero(),
            mass_s: T::zero(),
            s_chain: Chain::zero(complex, 2)?,
            residual_chain: Chain::zero(complex, 1)?,
            complex: complex.params(),
            method,
            stencil: None,
            layered: false,
            diagnostics: Diagnostics {
                integral: true,
                ..Diagnostics::default()
            },
        })
    }

    /// Reconstructs the input `T = (T - ∂S) + ∂S` on `complex`.
    pub fn input_chain(&self, complex: &GridComplex2<T>) -> Result<Chain> {
        self.residual_chain.add(&complex.boundary(&self.s_chain)?)
    }

    pub fn stencil_label(&self) -> &'static str {
        self.stencil.map(|s| s.as_str()).unwrap_or("none")
    }
}
