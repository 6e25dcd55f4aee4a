//! Boykov–Kolmogorov max-flow: a source tree and a sink tree grow until
//! they touch, the connecting path is augmented, and nodes cut off by
//! saturated tree arcs are re-attached or released. Trees persist between
//! augmentations, which suits grids whose augmenting paths are long.

use std::collections::VecDeque;

use super::FlowNetwork;
use crate::Real;

const FREE: u8 = 0;
const SOURCE: u8 = 1;
const SINK: u8 = 2;

/// `parent` codes besides a direction index.
const ORPHAN: u8 = u8::MAX;
const TERMINAL: u8 = u8::MAX - 1;

struct Trees {
    tree: Vec<u8>,
    /// Direction `c` such that the parent is `v + step[c]`.
    parent: Vec<u8>,
    ts: Vec<u32>,
    dist: Vec<u32>,
    queued: Vec<bool>,
    active: VecDeque<u32>,
    orphans: VecDeque<u32>,
    time: u32,
}

impl Trees {
    fn activate(&mut self, v: usize) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.active.push_back(v as u32);
        }
    }
}

impl<T: Real> FlowNetwork<T> {
    /// `v + step[d]` if that pixel is on the grid.
    #[inline]
    fn step_from(&self, x: usize, y: usize, v: usize, d: usize) -> Option<usize> {
        let (dx, dy) = self.offsets[d];
        let qx = x as i64 + dx as i64;
        let qy = y as i64 + dy as i64;
        if qx >= 0 && qy >= 0 && (qx as usize) < self.width && (qy as usize) < self.height {
            Some((v as isize + self.step[d]) as usize)
        } else {
            None
        }
    }

    pub(super) fn boykov_kolmogorov(&mut self, eps: T) {
        let n = self.num_nodes();
        let kk = self.offsets.len();
        let mut t = Trees {
            tree: vec![FREE; n],
            parent: vec![ORPHAN; n],
            ts: vec![0; n],
            dist: vec![0; n],
            queued: vec![false; n],
            active: VecDeque::new(),
            orphans: VecDeque::new(),
            time: 0,
        };
        for v in 0..n {
            let tree = if self.source[v] > eps {
                SOURCE
            } else if self.sink[v] > eps {
                SINK
            } else {
                continue;
            };
            t.tree[v] = tree;
            t.parent[v] = TERMINAL;
            t.dist[v] = 1;
            t.activate(v);
        }

        let mut current: Option<usize> = None;
        loop {
            let u = match current.take().filter(|&c| t.tree[c] != FREE) {
                Some(c) => c,
                None => loop {
                    match t.active.pop_front() {
                        None => break usize::MAX,
                        Some(v) => {
                            let v = v as usize;
                            t.queued[v] = false;
                            if t.tree[v] != FREE {
                                break v;
                            }
                        }
                    }
                },
            };
            if u == usize::MAX {
                break;
            }
            self.phases += 1;

            // grow the tree of u by one layer of neighbors
            let (x, y) = (u % self.width, u / self.width);
            let mut meet = None;
            if t.tree[u] == SOURCE {
                for d in 0..kk {
                    if self.residual[u * kk + d] <= eps {
                        continue;
                    }
                    let q = (u as isize + self.step[d]) as usize;
                    match t.tree[q] {
                        FREE => {
                            t.tree[q] = SOURCE;
                            t.parent[q] = (d ^ 1) as u8;
                            t.ts[q] = t.ts[u];
                            t.dist[q] = t.dist[u] + 1;
                            t.activate(q);
                        }
                        SINK => {
                            meet = Some((u, d));
                            break;
                        }
                        _ => {
                            if t.ts[q] <= t.ts[u] && t.dist[q] > t.dist[u] {
                                t.parent[q] = (d ^ 1) as u8;
                                t.ts[q] = t.ts[u];
                                t.dist[q] = t.dist[u] + 1;
                            }
                        }
                    }
                }
            } else {
                for d in 0..kk {
                    let Some(q) = self.step_from(x, y, u, d) else { continue };
                    if self.residual[q * kk + (d ^ 1)] <= eps {
                        continue;
                    }
                    match t.tree[q] {
                        FREE => {
                            t.tree[q] = SINK;
                            t.parent[q] = (d ^ 1) as u8;
                            t.ts[q] = t.ts[u];
                            t.dist[q] = t.dist[u] + 1;
                            t.activate(q);
                        }
                        SOURCE => {
                            meet = Some((q, d ^ 1));
                            break;
                        }
                        _ => {
                            if t.ts[q] <= t.ts[u] && t.dist[q] > t.dist[u] {
                                t.parent[q] = (d ^ 1) as u8;
                                t.ts[q] = t.ts[u];
                                t.dist[q] = t.dist[u] + 1;
                            }
                        }
                    }
                }
            }

            if let Some((p, d)) = meet {
                // u may still have unexplored arcs
                current = Some(u);
                t.time += 1;
                self.augment_trees(&mut t, p, d, eps);
                while let Some(v) = t.orphans.pop_front() {
                    self.adopt(&mut t, v as usize, eps);
                }
            }
        }
    }

    /// Pushes the bottleneck along source root → p → q → sink root.
    fn augment_trees(&mut self, t: &mut Trees, p: usize, d: usize, eps: T) {
        let kk = self.offsets.len();
        let q = (p as isize + self.step[d]) as usize;
        let mut f = self.residual[p * kk + d];
        let mut v = p;
        loop {
            let c = t.parent[v];
            if c == TERMINAL {
                f = f.min(self.source[v]);
                break;
            }
            let c = c as usize;
            let par = (v as isize + self.step[c]) as usize;
            f = f.min(self.residual[par * kk + (c ^ 1)]);
            v = par;
        }
        let mut v = q;
        loop {
            let c = t.parent[v];
            if c == TERMINAL {
                f = f.min(self.sink[v]);
                break;
            }
            let c = c as usize;
            f = f.min(self.residual[v * kk + c]);
            v = (v as isize + self.step[c]) as usize;
        }

        self.residual[p * kk + d] -= f;
        self.residual[q * kk + (d ^ 1)] += f;
        let mut v = p;
        loop {
            let c = t.parent[v];
            if c == TERMINAL {
                self.source[v] -= f;
                if self.source[v] <= eps {
                    t.parent[v] = ORPHAN;
                    t.orphans.push_back(v as u32);
                }
                break;
            }
            let c = c as usize;
            let par = (v as isize + self.step[c]) as usize;
            self.residual[par * kk + (c ^ 1)] -= f;
            self.residual[v * kk + c] += f;
            if self.residual[par * kk + (c ^ 1)] <= eps {
                t.parent[v] = ORPHAN;
                t.orphans.push_back(v as u32);
            }
            v = par;
        }
        let mut v = q;
        loop {
            let c = t.parent[v];
            if c == TERMINAL {
                self.sink[v] -= f;
                if self.sink[v] <= eps {
                    t.parent[v] = ORPHAN;
                    t.orphans.push_back(v as u32);
                }
                break;
            }
            let c = c as usize;
            let par = (v as isize + self.step[c]) as usize;
            self.residual[v * kk + c] -= f;
            self.residual[par * kk + (c ^ 1)] += f;
            if self.residual[v * kk + c] <= eps {
                t.parent[v] = ORPHAN;
                t.orphans.push_back(v as u32);
            }
            v = par;
        }
        self.flow += f;
        self.augmentations += 1;
    }

    /// Finds a new parent for orphan `v` in its own tree, preferring the
    /// shortest verified route to the terminal, or frees it.
    fn adopt(&mut self, t: &mut Trees, v: usize, eps: T) {
        let kk = self.offsets.len();
        let own = t.tree[v];
        let (x, y) = (v % self.width, v / self.width);
        let arc_ok = |net: &Self, q: usize, c: usize| {
            if own == SOURCE {
                net.residual[q * kk + (c ^ 1)] > eps
            } else {
                net.residual[v * kk + c] > eps
            }
        };
        let mut best: Option<(usize, u32)> = None;
        for c in 0..kk {
            let Some(q) = self.step_from(x, y, v, c) else { continue };
            if t.tree[q] != own || !arc_ok(self, q, c) {
                continue;
            }
            // walk to the root, stopping at nodes verified this round
            let mut k = q;
            let mut steps = 0u32;
            let reached = loop {
                if t.ts[k] == t.time {
                    steps += t.dist[k];
                    break true;
                }
                let a = t.parent[k];
                steps += 1;
                if a == TERMINAL {
                    t.ts[k] = t.time;
                    t.dist[k] = 1;
                    break true;
                }
                if a == ORPHAN {
                    break false;
                }
                k = (k as isize + self.step[a as usize]) as usize;
            };
            if !reached {
                continue;
            }
            if best.map_or(true, |(_, d)| steps < d) {
                best = Some((c, steps));
            }
            let mut k = q;
            let mut d = steps;
            while t.ts[k] != t.time {
                t.ts[k] = t.time;
                t.dist[k] = d;
                d -= 1;
                k = (k as isize + self.step[t.parent[k] as usize]) as usize;
            }
        }
        if let Some((c, d)) = best {
            t.parent[v] = c as u8;
            t.ts[v] = t.time;
            t.dist[v] = d + 1;
            return;
        }
        for c in 0..kk {
            let Some(q) = self.step_from(x, y, v, c) else { continue };
            if t.tree[q] != own {
                continue;
            }
            if arc_ok(self, q, c) {
                t.activate(q);
            }
            let a = t.parent[q];
            if a != ORPHAN && a != TERMINAL && (q as isize + self.step[a as usize]) as usize == v {
                t.parent[q] = ORPHAN;
                t.orphans.push_back(q as u32);
            }
        }
        t.tree[v] = FREE;
    }
}
