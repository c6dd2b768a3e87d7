//! Exact counts of directed cycles, closed walks and paths, plus the
//! structural checks built on them.

mod cycles;
mod walks;

pub use walks::{closed_walk_lengths, count_closed_walks, count_closed_walks_with, has_closed_walk};

use crate::bitset::BitSet;
use crate::graph::Digraph;
use crate::par::{self, Execution};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

/// Number of copies of the directed `k`-cycle (each copy counted once).
///
/// `k = 2` counts digons; `k < 2` yields zero.
pub fn count_cycle_copies(g: &Digraph, k: usize) -> BigUint {
    count_cycle_copies_with(g, k, Execution::default())
}

pub fn count_cycle_copies_with(g: &Digraph, k: usize, exec: Execution) -> BigUint {
    BigUint::from(cycles::count_copies(g, k, exec))
}

/// Whether `g` has a directed cycle of length exactly `l` as a subgraph.
pub fn has_cycle_subgraph(g: &Digraph, l: usize) -> bool {
    has_cycle_subgraph_with(g, l, Execution::default())
}

pub fn has_cycle_subgraph_with(g: &Digraph, l: usize, exec: Execution) -> bool {
    if l < 2 || l > g.n() || !has_closed_walk(g, l) {
        return false;
    }
    cycles::has_copy(g, l, exec)
}

/// Calls `visit` once per `k`-cycle copy, with its vertices listed from the
/// minimum vertex along the cycle. Returning `false` stops the enumeration.
pub fn for_each_cycle(g: &Digraph, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k < 2 || k > g.n() {
        return;
    }
    for s in 0..g.n() {
        if !cycles::StartFrame::new(g, k, s).for_each(&mut visit) {
            return;
        }
    }
}

/// Number of `l`-cycles through the arc `u → v` (the arc itself need not be
/// present; the count is of paths `v ⇝ u` with `l − 1` arcs).
pub fn cycles_through_arc(g: &Digraph, u: usize, v: usize, l: usize) -> u128 {
    if l < 2 {
        return 0;
    }
    cycles::count_paths_between(g, v, u, l - 1, &BitSet::new(g.n()))
}

/// Number of simple directed paths on `i` vertices.
pub fn count_paths(g: &Digraph, i: usize) -> BigUint {
    count_paths_with(g, i, Execution::default())
}

pub fn count_paths_with(g: &Digraph, i: usize, exec: Execution) -> BigUint {
    let n = g.n();
    if i == 0 || i > n {
        return BigUint::from(0u8);
    }
    if i == 1 {
        return BigUint::from(n);
    }
    fn rec(g: &Digraph, v: usize, left: usize, used: &mut BitSet) -> u128 {
        if left == 1 {
            let mut c = g.out_set(v).clone();
            c.difference_with(used);
            return c.len() as u128;
        }
        let mut total = 0;
        let mut cand = g.out_set(v).clone();
        cand.difference_with(used);
        for w in cand.iter() {
            used.insert(w);
            total += rec(g, w, left - 1, used);
            used.remove(w);
        }
        total
    }
    let total: u128 = par::map_sum(exec, 0..n, |s| {
        let mut used = BitSet::new(n);
        used.insert(s);
        rec(g, s, i - 1, &mut used)
    });
    BigUint::from(total)
}

/// Whether `g` contains a transitive triangle `a→b, b→c, a→c`.
pub fn has_transitive_triangle(g: &Digraph) -> bool {
    g.arcs().any(|(a, c)| g.out_set(a).intersects(g.in_set(c)))
}

/// Per-arc `k`-cycle multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcMultiplicities {
    counts: BTreeMap<(usize, usize), u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcClass {
    /// On no cycle.
    Free,
    /// On at least one but fewer than `threshold` cycles.
    Thin,
    Thick,
}

impl ArcMultiplicities {
    pub fn get(&self, u: usize, v: usize) -> Option<u64> {
        self.counts.get(&(u, v)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.counts.iter().map(|(&a, &c)| (a, c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Arcs on at least `threshold` cycles are thick; with `threshold = 2`
    /// thin means "on exactly one cycle".
    pub fn classify(&self, u: usize, v: usize, threshold: u64) -> Option<ArcClass> {
        self.get(u, v).map(|c| match c {
            0 => ArcClass::Free,
            c if c >= threshold.max(1) => ArcClass::Thick,
            _ => ArcClass::Thin,
        })
    }
}

/// For each arc of `g`, the number of `k`-cycle copies through it.
pub fn arc_cycle_multiplicities(g: &Digraph, k: usize) -> ArcMultiplicities {
    let mut counts: BTreeMap<(usize, usize), u64> = g.arcs().map(|a| (a, 0)).collect();
    for_each_cycle(g, k, |c| {
        for i in 0..c.len() {
            *counts.get_mut(&(c[i], c[(i + 1) % c.len()])).expect("cycle arc") += 1;
        }
        true
    });
    ArcMultiplicities { counts }
}

/// `t_v`: number of `k`-cycle copies through each vertex.
pub fn vertex_cycle_counts(g: &Digraph, k: usize) -> Vec<u64> {
    let mut t = vec![0u64; g.n()];
    for_each_cycle(g, k, |c| {
        for &v in c {
            t[v] += 1;
        }
        true
    });
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClearingResult {
    pub cleared: Digraph,
    /// Original label of each vertex of `cleared`.
    pub kept: Vec<usize>,
    pub removed_arcs: usize,
    pub removed_vertices: usize,
    /// True when the input already had every arc and vertex on a `k`-cycle.
    pub is_fixed_point: bool,
    /// True when `cleared` has no closed `l`-walk, i.e. it is fully cleared.
    pub walk_free: bool,
}

/// Deletes arcs and then vertices lying on no `k`-cycle. One pass reaches the
/// fixed point: a cycle never uses an arc or vertex that lies on no cycle.
pub fn clear(g: &Digraph, k: usize, l: usize) -> ClearingResult {
    let mult = arc_cycle_multiplicities(g, k);
    let dead: Vec<(usize, usize)> = mult.iter().filter(|&(_, c)| c == 0).map(|(a, _)| a).collect();
    let pruned = g.without_arcs(&dead);
    let t = vertex_cycle_counts(&pruned, k);
    let kept: Vec<usize> = (0..g.n()).filter(|&v| t[v] > 0).collect();
    let cleared = pruned.induced(&kept);
    let removed_vertices = g.n() - kept.len();
    let walk_free = !has_closed_walk(&cleared, l);
    ClearingResult {
        removed_arcs: g.arc_count() - cleared.arc_count(),
        removed_vertices,
        is_fixed_point: dead.is_empty() && removed_vertices == 0,
        walk_free,
        cleared,
        kept,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborViolation {
    pub vertex: usize,
    pub cycle: Vec<usize>,
    pub neighbors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborCheck {
    pub bound: usize,
    pub violation: Option<NeighborViolation>,
}

impl NeighborCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that every vertex has at most `⌊2k/d⌋` neighbours (in or out) on
/// every `k`-cycle. The reported witness is the first in enumeration order.
pub fn check_neighbor_condition(g: &Digraph, k: usize, d: usize) -> NeighborCheck {
    check_neighbor_condition_with(g, k, d, Execution::default())
}

pub fn check_neighbor_condition_with(g: &Digraph, k: usize, d: usize, exec: Execution) -> NeighborCheck {
    let bound = 2 * k / d.max(1);
    let n = g.n();
    if k < 2 || k > n {
        return NeighborCheck { bound, violation: None };
    }
    let nbrs: Vec<BitSet> = (0..n).map(|v| g.neighbor_set(v)).collect();
    let per_start = par::map_collect(exec, 0..n, |s| {
        let mut found = None;
        cycles::StartFrame::new(g, k, s).for_each(&mut |c: &[usize]| {
            let set: BitSet = {
                let mut b = BitSet::new(n);
                for &x in c {
                    b.insert(x);
                }
                b
            };
            for (v, nb) in nbrs.iter().enumerate() {
                let mut hit = nb.clone();
                hit.intersect_with(&set);
                let cnt = hit.len();
                if cnt > bound {
                    found = Some(NeighborViolation { vertex: v, cycle: c.to_vec(), neighbors: cnt });
                    return false;
                }
            }
            true
        });
        found
    });
    NeighborCheck { bound, violation: per_start.into_iter().flatten().next() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// `|#forward − #backward|` around an oriented cycle.
pub fn cycle_type(orientation: &[Direction]) -> usize {
    let f = orientation.iter().filter(|&&d| d == Direction::Forward).count();
    f.abs_diff(orientation.len() - f)
}

/// Which optional parts of a [`CountReport`] to compute.
#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub paths: Vec<usize>,
    pub per_arc: bool,
    pub per_vertex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub k: usize,
    pub copies: BigUint,
    pub closed_walks: BigUint,
    pub paths: Option<BTreeMap<usize, BigUint>>,
    pub per_arc: Option<ArcMultiplicities>,
    pub per_vertex: Option<Vec<u64>>,
}

impl CountReport {
    pub fn compute(g: &Digraph, k: usize, opts: &ReportOptions) -> Self {
        CountReport {
            k,
            copies: count_cycle_copies(g, k),
            closed_walks: count_closed_walks(g, k),
            paths: (!opts.paths.is_empty()).then(|| opts.paths.iter().map(|&i| (i, count_paths(g, i))).collect()),
            per_arc: opts.per_arc.then(|| arc_cycle_multiplicities(g, k)),
            per_vertex: opts.per_vertex.then(|| vertex_cycle_counts(g, k)),
        }
    }

    /// JSON with every big integer as a decimal string.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("k".into(), json!(self.k));
        m.insert("copies".into(), json!(self.copies.to_string()));
        m.insert("closed_walks".into(), json!(self.closed_walks.to_string()));
        m.insert(
            "paths".into(),
            match &self.paths {
                Some(p) => Value::Object(p.iter().map(|(i, c)| (i.to_string(), json!(c.to_string()))).collect()),
                None => Value::Null,
            },
        );
        m.insert(
            "per_arc".into(),
            match &self.per_arc {
                Some(a) => Value::Object(a.iter().map(|((u, v), c)| (format!("{u}->{v}"), json!(c.to_string()))).collect()),
                None => Value::Null,
            },
        );
        m.insert(
            "per_vertex".into(),
            match &self.per_vertex {
                Some(t) => Value::Object(t.iter().enumerate().map(|(v, c)| (v.to_string(), json!(c.to_string()))).collect()),
                None => Value::Null,
            },
        );
        Value::Object(m)
    }
}
