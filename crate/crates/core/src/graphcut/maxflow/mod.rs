//! Max-flow on an implicit pixel-grid graph.
//!
//! Every pixel links to the pixels at the stencil offsets; arcs that would
//! leave the grid simply do not exist. Residual capacities are stored per
//! node and direction, so no adjacency lists are materialized.

mod bk;
mod dinic;
mod push_relabel;

use super::stencil::Link;
use crate::error::{Error, Result};
use crate::Real;

const UNSEEN: u32 = u32::MAX;

/// Max-flow strategy. All are deterministic and reach the same flow value;
/// the canonical cut does not depend on the choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MaxFlowAlgorithm {
    /// Highest-label push-relabel.
    #[default]
    PushRelabel,
    /// Boykov–Kolmogorov search trees, reused between augmentations.
    BoykovKolmogorov,
    /// Dinic level graphs and blocking flows.
    Dinic,
}

/// s–t flow network over a `width x height` pixel grid.
#[derive(Clone, Debug)]
pub struct FlowNetwork<T> {
    width: usize,
    height: usize,
    offsets: Vec<(i32, i32)>,
    weights: Vec<T>,
    step: Vec<isize>,
    /// `residual[p * K + k]` for the arc `p -> p + offsets[k]`.
    residual: Vec<T>,
    source: Vec<T>,
    sink: Vec<T>,
    source_cap: Vec<T>,
    sink_cap: Vec<T>,
    flow: T,
    phases: u64,
    augmentations: u64,
    solved: bool,
    /// Terminals were swapped to solve the reversed network.
    reversed: bool,
    algorithm: MaxFlowAlgorithm,
}

impl<T: Real> FlowNetwork<T> {
    /// Network with the given n-links and no terminal capacity. `links[k]`
    /// and `links[k ^ 1]` must be opposite offsets of equal weight.
    pub fn new(width: usize, height: usize, links: &[Link<T>]) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid("flow network needs a non-empty grid"));
        }
        if links.len() % 2 != 0 || links.len() > u8::MAX as usize {
            return Err(Error::invalid("links must come in opposite pairs"));
        }
        for pair in links.chunks(2) {
            if pair[0].dx != -pair[1].dx || pair[0].dy != -pair[1].dy || pair[0].weight != pair[1].weight {
                return Err(Error::invalid("links must come in opposite pairs"));
            }
            if !(pair[0].weight >= T::zero()) {
                return Err(Error::invalid("link weights must be nonnegative"));
            }
        }
        let n = width * height;
        let k = links.len();
        let mut residual = vec![T::zero(); n * k];
        for y in 0..height {
            for x in 0..width {
                let p = y * width + x;
                for (d, l) in links.iter().enumerate() {
                    let qx = x as i64 + l.dx as i64;
                    let qy = y as i64 + l.dy as i64;
                    if qx >= 0 && qy >= 0 && (qx as usize) < width && (qy as usize) < height {
                        residual[p * k + d] = l.weight;
                    }
                }
            }
        }
        Ok(FlowNetwork {
            width,
            height,
            offsets: links.iter().map(|l| (l.dx, l.dy)).collect(),
            weights: links.iter().map(|l| l.weight).collect(),
            step: links
                .iter()
                .map(|l| l.dy as isize * width as isize + l.dx as isize)
                .collect(),
            residual,
            source: vec![T::zero(); n],
            sink: vec![T::zero(); n],
            source_cap: vec![T::zero(); n],
            sink_cap: vec![T::zero(); n],
            flow: T::zero(),
            phases: 0,
            augmentations: 0,
            solved: false,
            reversed: false,
            algorithm: MaxFlowAlgorithm::default(),
        })
    }

    pub fn with_algorithm(mut self, algorithm: MaxFlowAlgorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn algorithm(&self) -> MaxFlowAlgorithm {
        self.algorithm
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn num_nodes(&self) -> usize {
        self.width * self.height
    }

    /// Adds terminal capacity to pixel `p`.
    pub fn add_terminal(&mut self, p: usize, source: T, sink: T) {
        assert!(!self.solved, "network already solved");
        assert!(source >= T::zero() && sink >= T::zero());
        self.source[p] += source;
        self.sink[p] += sink;
        self.source_cap[p] += source;
        self.sink_cap[p] += sink;
    }

    pub fn flow(&self) -> T {
        self.flow
    }

    pub fn phases(&self) -> u64 {
        self.phases
    }

    pub fn augmentations(&self) -> u64 {
        self.augmentations
    }

    /// Sum of all original capacities, each undirected n-link once.
    pub fn total_capacity(&self) -> T {
        let k = self.offsets.len();
        let links = self.residual_capacity_sum_original(k);
        let terminals = self
            .source_cap
            .iter()
            .chain(&self.sink_cap)
            .fold(T::zero(), |s, &c| s + c);
        links + terminals
    }

    fn residual_capacity_sum_original(&self, k: usize) -> T {
        let mut sum = T::zero();
        for y in 0..self.height {
            for x in 0..self.width {
                for d in (0..k).step_by(2) {
                    if self.neighbor(x, y, d).is_some() {
                        sum += self.weights[d];
                    }
                }
            }
        }
        sum
    }

    fn neighbor(&self, x: usize, y: usize, d: usize) -> Option<usize> {
        let (dx, dy) = self.offsets[d];
        let qx = x as i64 + dx as i64;
        let qy = y as i64 + dy as i64;
        if qx >= 0 && qy >= 0 && (qx as usize) < self.width && (qy as usize) < self.height {
            Some(qy as usize * self.width + qx as usize)
        } else {
            None
        }
    }

    fn max_capacity(&self) -> T {
        self.weights
            .iter()
            .chain(&self.source_cap)
            .chain(&self.sink_cap)
            .fold(T::zero(), |m, &c| m.max(c))
    }

    /// Residual capacities at or below this count as saturated.
    fn eps(&self) -> T {
        self.max_capacity() * T::round_off() * T::of(64.0)
    }

    /// Runs the selected algorithm to completion and returns the flow value.
    pub fn max_flow(&mut self) -> T {
        if self.solved {
            return self.flow;
        }
        self.solved = true;
        let eps = self.eps();
        // s -> p -> t paths through a single pixel
        for p in 0..self.num_nodes() {
            let m = self.source[p].min(self.sink[p]);
            if m > T::zero() {
                self.source[p] -= m;
                self.sink[p] -= m;
                self.flow += m;
            }
        }
        match self.algorithm {
            MaxFlowAlgorithm::PushRelabel => self.push_relabel(eps),
            MaxFlowAlgorithm::BoykovKolmogorov => self.boykov_kolmogorov(eps),
            MaxFlowAlgorithm::Dinic => self.dinic(eps),
        }
        log::debug!(
            "max flow {} ({:?}): {} phases, {} augmentations",
            self.flow,
            self.algorithm,
            self.phases,
            self.augmentations
        );
        self.flow
    }

    /// Pixels reachable from the source in the residual graph: the
    /// inclusion-minimal source side of a minimum cut.
    pub fn source_side(&self) -> Vec<bool> {
        let n = self.num_nodes();
        let kk = self.offsets.len();
        let eps = self.eps();
        if self.reversed {
            return self.sink_reachers(eps);
        }
        let mut seen = vec![false; n];
        let mut queue = Vec::new();
        for p in 0..n {
            if self.source[p] > eps {
                seen[p] = true;
                queue.push(p);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for d in 0..kk {
                if self.residual[u * kk + d] > eps {
                    let q = (u as isize + self.step[d]) as usize;
                    if !seen[q] {
                        seen[q] = true;
                        queue.push(q);
                    }
                }
            }
        }
        seen
    }

    /// Capacity of the cut with the given source side, from the original
    /// capacities.
    pub fn cut_capacity(&self, side: &[bool]) -> T {
        assert_eq!(side.len(), self.num_nodes());
        let kk = self.offsets.len();
        let mut cut = T::zero();
        for y in 0..self.height {
            for x in 0..self.width {
                let p = y * self.width + x;
                if side[p] {
                    cut += self.sink_cap[p];
                    for d in 0..kk {
                        if let Some(q) = self.neighbor(x, y, d) {
                            if !side[q] {
                                cut += self.weights[d];
                            }
                        }
                    }
                } else {
                    cut += self.source_cap[p];
                }
            }
        }
        cut
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcut::NeighborhoodStencil;

    fn brute_min_cut(net: &FlowNetwork<f64>) -> f64 {
        let n = net.num_nodes();
        (0..1u32 << n)
            .map(|mask| {
                let side: Vec<bool> = (0..n).map(|p| mask >> p & 1 == 1).collect();
                net.cut_capacity(&side)
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn flow_matches_enumerated_cut() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for stencil in [NeighborhoodStencil::N4, NeighborhoodStencil::N8, NeighborhoodStencil::N16] {
            for _ in 0..30 {
                let (w, h) = (rng.random_range(1..=4), rng.random_range(1..=4));
                let mut net = FlowNetwork::new(w, h, &stencil.links(1.0)).unwrap();
                for p in 0..w * h {
                    // sparse terminals leave some pixels free
                    let src = if rng.random_bool(0.6) { rng.random_range(0.0..3.0) } else { 0.0 };
                    let snk = if rng.random_bool(0.6) { rng.random_range(0.0..3.0) } else { 0.0 };
                    net.add_terminal(p, src, snk);
                }
                let expected = brute_min_cut(&net);
                let mut sides = Vec::new();
                for alg in [MaxFlowAlgorithm::PushRelabel, MaxFlowAlgorithm::BoykovKolmogorov, MaxFlowAlgorithm::Dinic] {
                    let mut net = net.clone().with_algorithm(alg);
                    let flow = net.max_flow();
                    assert!((flow - expected).abs() < 1e-9, "{alg:?}: {flow} vs {expected}");
                    let side = net.source_side();
                    assert!((net.cut_capacity(&side) - flow).abs() < 1e-9);
                    sides.push(side);
                }
                // the minimal source side is unique
                assert_eq!(sides[0], sides[1]);
                assert_eq!(sides[0], sides[2]);
            }
        }
    }

    #[test]
    fn chain_of_pixels() {
        // source at one end, sink at the other: flow limited by one link
        let mut net = FlowNetwork::new(5, 1, &NeighborhoodStencil::N4.links(0.5)).unwrap();
        net.add_terminal(0, 10.0, 0.0);
        net.add_terminal(4, 0.0, 10.0);
        for alg in [MaxFlowAlgorithm::BoykovKolmogorov, MaxFlowAlgorithm::Dinic] {
            assert_eq!(net.clone().with_algorithm(alg).max_flow(), 0.5);
        }
        assert_eq!(net.max_flow(), 0.5);
        assert_eq!(net.source_side(), vec![true, false, false, false, false]);
    }

    #[test]
    fn rejects_unpaired_links() {
        let mut links = NeighborhoodStencil::N4.links(1.0);
        links.pop();
        assert!(FlowNetwork::new(2, 2, &links).is_err());
    }
}
