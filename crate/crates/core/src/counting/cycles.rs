//! Simple directed cycles, enumerated from their minimum vertex.

use crate::bitset::{any_and3_not, count_and3_not, BitSet};
use crate::graph::Digraph;
use crate::par::{self, Execution};

/// Per-start search state. `reach[t]` holds the vertices above `start` from
/// which `start` can be reached by a walk of exactly `t` arcs that stays above
/// `start` until its last arc.
pub(crate) struct StartFrame<'g> {
    g: &'g Digraph,
    k: usize,
    start: usize,
    above: BitSet,
    reach: Vec<BitSet>,
    used: BitSet,
    path: Vec<usize>,
}

impl<'g> StartFrame<'g> {
    pub(crate) fn new(g: &'g Digraph, k: usize, start: usize) -> Self {
        let n = g.n();
        let above = BitSet::above(n, start);
        let mut reach = Vec::with_capacity(k);
        let mut r0 = BitSet::new(n);
        r0.insert(start);
        reach.push(r0);
        for t in 1..k {
            let mut next = BitSet::new(n);
            for v in above.iter() {
                if g.out_set(v).intersects(&reach[t - 1]) {
                    next.insert(v);
                }
            }
            reach.push(next);
        }
        let mut used = BitSet::new(n);
        used.insert(start);
        StartFrame { g, k, start, above, reach, used, path: vec![start] }
    }

    /// Whether the start can still close a `k`-cycle at all.
    fn viable(&self) -> bool {
        self.k >= 2 && self.g.out_set(self.start).intersects(&self.reach[self.k - 1])
    }

    pub(crate) fn count(&mut self) -> u128 {
        if !self.viable() {
            return 0;
        }
        if self.k == 2 {
            return count_and3_not(self.g.out_set(self.start), self.g.in_set(self.start), &self.above, &self.used)
                as u128;
        }
        self.count_from(self.start, 1)
    }

    fn count_from(&mut self, v: usize, depth: usize) -> u128 {
        let g = self.g;
        if depth == self.k - 1 {
            return count_and3_not(g.out_set(v), g.in_set(self.start), &self.above, &self.used) as u128;
        }
        let mut total = 0;
        let mut cand = g.out_set(v).clone();
        cand.intersect_with(&self.reach[self.k - depth]);
        cand.difference_with(&self.used);
        for w in cand.iter() {
            self.used.insert(w);
            total += self.count_from(w, depth + 1);
            self.used.remove(w);
        }
        total
    }

    pub(crate) fn exists(&mut self) -> bool {
        if !self.viable() {
            return false;
        }
        if self.k == 2 {
            return any_and3_not(self.g.out_set(self.start), self.g.in_set(self.start), &self.above, &self.used);
        }
        self.exists_from(self.start, 1)
    }

    fn exists_from(&mut self, v: usize, depth: usize) -> bool {
        let g = self.g;
        if depth == self.k - 1 {
            return any_and3_not(g.out_set(v), g.in_set(self.start), &self.above, &self.used);
        }
        let mut cand = g.out_set(v).clone();
        cand.intersect_with(&self.reach[self.k - depth]);
        cand.difference_with(&self.used);
        for w in cand.iter() {
            self.used.insert(w);
            let found = self.exists_from(w, depth + 1);
            self.used.remove(w);
            if found {
                return true;
            }
        }
        false
    }

    /// Calls `visit` with the vertex sequence of every cycle whose minimum
    /// vertex is `start`; stops early when `visit` returns `false`.
    pub(crate) fn for_each(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if !self.viable() {
            return true;
        }
        self.each_from(self.start, visit)
    }

    fn each_from(&mut self, v: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let g = self.g;
        let depth = self.path.len();
        let mut cand = g.out_set(v).clone();
        if depth == self.k {
            // path is complete; only the closing arc remains
            if g.has_arc(v, self.start) {
                return visit(&self.path);
            }
            return true;
        }
        cand.intersect_with(&self.reach[self.k - depth]);
        cand.difference_with(&self.used);
        for w in cand.iter() {
            self.used.insert(w);
            self.path.push(w);
            let go_on = self.each_from(w, visit);
            self.path.pop();
            self.used.remove(w);
            if !go_on {
                return false;
            }
        }
        true
    }
}

pub(crate) fn count_copies(g: &Digraph, k: usize, exec: Execution) -> u128 {
    if k < 2 || k > g.n() {
        return 0;
    }
    par::map_sum(exec, 0..g.n(), |s| StartFrame::new(g, k, s).count())
}

pub(crate) fn has_copy(g: &Digraph, k: usize, exec: Execution) -> bool {
    if k < 2 || k > g.n() {
        return false;
    }
    par::any(exec, 0..g.n(), |s| StartFrame::new(g, k, s).exists())
}

/// Number of simple paths `from → … → to` with exactly `len` arcs whose
/// interior avoids `avoid`.
pub(crate) fn count_paths_between(g: &Digraph, from: usize, to: usize, len: usize, avoid: &BitSet) -> u128 {
    if from == to || len == 0 {
        return 0;
    }
    let n = g.n();
    // back[t]: vertices with a walk of exactly t arcs to `to`
    let mut back = Vec::with_capacity(len + 1);
    let mut b0 = BitSet::new(n);
    b0.insert(to);
    back.push(b0);
    for t in 1..=len {
        let mut next = BitSet::new(n);
        for v in 0..n {
            if g.out_set(v).intersects(&back[t - 1]) {
                next.insert(v);
            }
        }
        back.push(next);
    }
    if !back[len].contains(from) {
        return 0;
    }
    let mut used = avoid.clone();
    used.insert(from);
    used.insert(to);
    fn rec(g: &Digraph, v: usize, to: usize, left: usize, back: &[BitSet], used: &mut BitSet) -> u128 {
        if left == 1 {
            return u128::from(g.has_arc(v, to));
        }
        let mut cand = g.out_set(v).clone();
        cand.intersect_with(&back[left - 1]);
        cand.difference_with(used);
        let mut total = 0;
        for w in cand.iter() {
            used.insert(w);
            total += rec(g, w, to, left - 1, back, used);
            used.remove(w);
        }
        total
    }
    rec(g, from, to, len, &back, &mut used)
}
