//! Highest-label push-relabel with periodic global relabeling by
//! breadth-first search and the gap heuristic.
//!
//! The first phase yields a maximum preflow; its value is the max-flow value
//! and the nodes that still reach the sink form the minimal sink side of a
//! minimum cut. The minimal source side is obtained in one of two ways:
//!
//! * forward: a second preflow returns the stranded excess to the source
//!   t-links it came from, leaving a true maximum flow whose residual graph
//!   is searched from the source;
//! * reversed: the first phase runs on the network with terminals swapped
//!   (n-links are symmetric), where the minimal sink side is the wanted set.
//!
//! Whichever terminal supplies less capacity acts as the source, so less
//! excess gets stranded.

use super::FlowNetwork;
use crate::Real;

const NONE: u32 = u32::MAX;

struct State<T> {
    excess: Vec<T>,
    label: Vec<u32>,
    current: Vec<u8>,
    /// Active nodes by label; entries go stale and are skipped on pop.
    buckets: Vec<Vec<u32>>,
    highest: usize,
    dead: u32,
    /// Every live node, in a doubly linked list per label.
    first: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    max_label: usize,
}

impl<T> State<T> {
    fn link(&mut self, v: usize, l: u32) {
        self.label[v] = l;
        let h = self.first[l as usize];
        self.next[v] = h;
        self.prev[v] = NONE;
        if h != NONE {
            self.prev[h as usize] = v as u32;
        }
        self.first[l as usize] = v as u32;
        self.max_label = self.max_label.max(l as usize);
    }

    fn unlink(&mut self, v: usize) {
        let (p, q) = (self.prev[v], self.next[v]);
        if p == NONE {
            self.first[self.label[v] as usize] = q;
        } else {
            self.next[p as usize] = q;
        }
        if q != NONE {
            self.prev[q as usize] = p;
        }
    }

    /// No node is left at label `l`, so nothing above it reaches the sink.
    fn gap(&mut self, l: usize) {
        for k in l + 1..=self.max_label {
            let mut v = self.first[k];
            while v != NONE {
                self.label[v as usize] = self.dead;
                v = self.next[v as usize];
            }
            self.first[k] = NONE;
        }
        self.max_label = l.saturating_sub(1);
    }
}

impl<T: Real> FlowNetwork<T> {
    pub(super) fn push_relabel(&mut self, eps: T) {
        let total = |v: &[T]| v.iter().fold(T::zero(), |s, &c| s + c);
        let n = self.num_nodes();
        if total(&self.source) > total(&self.sink) {
            std::mem::swap(&mut self.source, &mut self.sink);
            self.reversed = true;
            let excess = std::mem::replace(&mut self.source, vec![T::zero(); n]);
            let mut sink = std::mem::take(&mut self.sink);
            let (_, delivered) = self.preflow(excess, &mut sink, eps);
            self.sink = sink;
            self.flow += delivered;
            return;
        }
        let supply = std::mem::replace(&mut self.source, vec![T::zero(); n]);
        let mut sink = std::mem::take(&mut self.sink);
        let (stranded, delivered) = self.preflow(supply.clone(), &mut sink, eps);
        self.sink = sink;
        self.flow += delivered;
        // send the stranded excess back; what returns is residual source capacity
        let mut back = supply;
        let before = back.clone();
        self.preflow(stranded, &mut back, eps);
        for v in 0..n {
            self.source[v] = before[v] - back[v];
        }
    }

    /// Routes `excess` into `target` as far as possible. Returns what was
    /// left where it could not be delivered and the amount delivered.
    fn preflow(&mut self, excess: Vec<T>, target: &mut [T], eps: T) -> (Vec<T>, T) {
        let n = self.num_nodes();
        let kk = self.offsets.len();
        let dead = n as u32 + 1;
        let mut st = State {
            excess,
            label: vec![0; n],
            current: vec![0; n],
            buckets: vec![Vec::new(); n + 2],
            highest: 0,
            dead,
            first: vec![NONE; n + 2],
            next: vec![NONE; n],
            prev: vec![NONE; n],
            max_label: 0,
        };
        let mut delivered = T::zero();
        self.global_relabel(&mut st, target, eps);
        // BFS over the whole grid is costly, so relabel globally sparingly
        let relabel_budget = 5 * (6 * n + n * kk / 2);
        let mut work = 0usize;

        loop {
            while st.highest > 0 && st.buckets[st.highest].is_empty() {
                st.highest -= 1;
            }
            let Some(v) = st.buckets[st.highest].pop() else { break };
            let v = v as usize;
            if st.label[v] as usize != st.highest || !(st.excess[v] > eps) {
                continue;
            }
            self.phases += 1;
            // discharge v
            loop {
                if target[v] > eps {
                    let f = st.excess[v].min(target[v]);
                    target[v] -= f;
                    st.excess[v] -= f;
                    delivered += f;
                    self.augmentations += 1;
                    if !(st.excess[v] > eps) {
                        break;
                    }
                }
                let lv = st.label[v];
                let mut d = st.current[v] as usize;
                while d < kk && st.excess[v] > eps {
                    let r = self.residual[v * kk + d];
                    if r > eps {
                        let q = (v as isize + self.step[d]) as usize;
                        if st.label[q] + 1 == lv {
                            let f = st.excess[v].min(r);
                            self.residual[v * kk + d] -= f;
                            self.residual[q * kk + (d ^ 1)] += f;
                            st.excess[v] -= f;
                            let was_active = st.excess[q] > eps;
                            st.excess[q] += f;
                            if !was_active && st.excess[q] > eps {
                                // v may have been relabeled above the current highest
                                let l = st.label[q] as usize;
                                st.buckets[l].push(q as u32);
                                st.highest = st.highest.max(l);
                            }
                            if st.excess[v] > eps {
                                d += 1;
                            }
                            continue;
                        }
                    }
                    d += 1;
                }
                st.current[v] = d.min(kk - 1) as u8;
                if !(st.excess[v] > eps) {
                    break;
                }
                // relabel
                work += kk + 12;
                let mut lowest = dead;
                for d in 0..kk {
                    if self.residual[v * kk + d] > eps {
                        let q = (v as isize + self.step[d]) as usize;
                        lowest = lowest.min(st.label[q]);
                    }
                }
                st.current[v] = 0;
                let old = lv as usize;
                st.unlink(v);
                if st.first[old] == NONE {
                    st.label[v] = dead;
                    st.gap(old);
                    break;
                }
                if lowest + 1 >= dead {
                    st.label[v] = dead;
                    break;
                }
                st.link(v, lowest + 1);
            }
            if st.excess[v] > eps && st.label[v] < dead {
                let l = st.label[v] as usize;
                st.buckets[l].push(v as u32);
                st.highest = st.highest.max(l);
            }
            if work > relabel_budget {
                work = 0;
                self.global_relabel(&mut st, target, eps);
            }
        }
        (st.excess, delivered)
    }

    /// Exact distance-to-target labels in the residual graph; nodes that
    /// cannot reach the sink are retired.
    fn global_relabel(&self, st: &mut State<T>, target: &[T], eps: T) {
        let n = self.num_nodes();
        let kk = self.offsets.len();
        st.label.fill(st.dead);
        st.current.fill(0);
        st.first.fill(NONE);
        st.max_label = 0;
        for b in &mut st.buckets {
            b.clear();
        }
        st.highest = 0;
        let mut queue: Vec<u32> = Vec::with_capacity(n);
        for v in 0..n {
            if target[v] > eps {
                st.link(v, 1);
                queue.push(v as u32);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            let (x, y) = (u % self.width, u / self.width);
            let next = st.label[u] + 1;
            for d in 0..kk {
                let Some(q) = self.neighbor(x, y, d) else { continue };
                if st.label[q] == st.dead && self.residual[q * kk + (d ^ 1)] > eps {
                    st.link(q, next);
                    queue.push(q as u32);
                }
            }
        }
        // highest labels last so that the stack pops them first
        for &v in queue.iter() {
            let v = v as usize;
            if st.excess[v] > eps {
                let l = st.label[v] as usize;
                st.buckets[l].push(v as u32);
                st.highest = st.highest.max(l);
            }
        }
    }

    /// Nodes with a residual path to the sink.
    pub(super) fn sink_reachers(&self, eps: T) -> Vec<bool> {
        let n = self.num_nodes();
        let kk = self.offsets.len();
        let mut seen = vec![false; n];
        let mut queue = Vec::new();
        for v in 0..n {
            if self.sink[v] > eps {
                seen[v] = true;
                queue.push(v);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let (x, y) = (u % self.width, u / self.width);
            for d in 0..kk {
                let Some(q) = self.neighbor(x, y, d) else { continue };
                if !seen[q] && self.residual[q * kk + (d ^ 1)] > eps {
                    seen[q] = true;
                    queue.push(q);
                }
            }
        }
        seen
    }
}
