use super::{FlowNetwork, UNSEEN};
use crate::Real;

impl<T: Real> FlowNetwork<T> {
    /// Dinic: level graphs by breadth-first search, blocking flows by
    /// depth-first search with current-arc pointers.
    pub(super) fn dinic(&mut self, eps: T) {
        let n = self.num_nodes();
        let kk = self.offsets.len();

        let mut level = vec![UNSEEN; n];
        let mut arc = vec![0u8; n];
        let mut queue: Vec<u32> = Vec::with_capacity(n);
        let mut stack: Vec<u32> = Vec::new();
        loop {
            // level graph, truncated at the first layer touching the sink
            level.fill(UNSEEN);
            queue.clear();
            for p in 0..n {
                if self.source[p] > eps {
                    level[p] = 0;
                    queue.push(p as u32);
                }
            }
            let mut head = 0;
            let mut layer_end = queue.len();
            let mut depth = 0u32;
            let mut sink_depth = None;
            while head < queue.len() {
                if head == layer_end {
                    if sink_depth.is_some() {
                        break;
                    }
                    depth += 1;
                    layer_end = queue.len();
                }
                let u = queue[head] as usize;
                head += 1;
                if self.sink[u] > eps {
                    sink_depth = Some(depth);
                }
                if sink_depth.is_some() {
                    continue;
                }
                let base = u * kk;
                for d in 0..kk {
                    if self.residual[base + d] > eps {
                        let q = (u as isize + self.step[d]) as usize;
                        if level[q] == UNSEEN {
                            level[q] = depth + 1;
                            queue.push(q as u32);
                        }
                    }
                }
            }
            let Some(sink_depth) = sink_depth else { break };
            self.phases += 1;

            // blocking flow by depth-first search with current-arc pointers
            arc.fill(0);
            let roots = queue.iter().take_while(|&&p| level[p as usize] == 0).count();
            for r in 0..roots {
                let root = queue[r] as usize;
                stack.clear();
                stack.push(root as u32);
                while !stack.is_empty() && self.source[root] > eps {
                    let u = *stack.last().unwrap() as usize;
                    let lu = level[u];
                    if lu == sink_depth {
                        if self.sink[u] > eps {
                            self.augment(&stack, &arc, eps);
                            // back up to the tail of the first saturated arc
                            let mut cut = stack.len();
                            for i in 0..stack.len() - 1 {
                                let v = stack[i] as usize;
                                if self.residual[v * kk + arc[v] as usize] <= eps {
                                    cut = i + 1;
                                    break;
                                }
                            }
                            stack.truncate(cut);
                            continue;
                        }
                    } else {
                        let base = u * kk;
                        let mut d = arc[u] as usize;
                        let mut next = None;
                        while d < kk {
                            if self.residual[base + d] > eps {
                                let q = (u as isize + self.step[d]) as usize;
                                if level[q] == lu + 1 {
                                    next = Some(q);
                                    break;
                                }
                            }
                            d += 1;
                        }
                        arc[u] = d as u8;
                        if let Some(q) = next {
                            stack.push(q as u32);
                            continue;
                        }
                    }
                    // dead end
                    level[u] = UNSEEN;
                    stack.pop();
                    if let Some(&parent) = stack.last() {
                        arc[parent as usize] += 1;
                    }
                }
            }
        }
    }

    fn augment(&mut self, path: &[u32], arc: &[u8], eps: T) {
        let kk = self.offsets.len();
        let root = path[0] as usize;
        let last = *path.last().unwrap() as usize;
        let mut f = self.source[root].min(self.sink[last]);
        for &v in &path[..path.len() - 1] {
            let v = v as usize;
            f = f.min(self.residual[v * kk + arc[v] as usize]);
        }
        debug_assert!(f > eps);
        self.source[root] -= f;
        self.sink[last] -= f;
        for &v in &path[..path.len() - 1] {
            let v = v as usize;
            let d = arc[v] as usize;
            let q = (v as isize + self.step[d]) as usize;
            self.residual[v * kk + d] -= f;
            self.residual[q * kk + (d ^ 1)] += f;
        }
        self.flow += f;
        self.augmentations += 1;
    }
}
