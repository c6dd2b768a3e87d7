//! Digraph representation, blow-ups and generators.
//!
//! A [`Digraph`] is a finite simple digraph on vertices `0..n`. In
//! [`Mode::Oriented`] at most one of `uv`, `vu` is present; [`Mode::Directed`]
//! additionally allows digons. Self-loops are never allowed.
//!
//! Graphs are immutable once built; every "modification" returns a new value.

mod generators;
mod io;
mod pattern;
mod quotient;

pub use generators::{balanced_sizes, iterated_blow_up, iterated_blow_up_count, random_bipartite_orientation, random_oriented,
    random_triangle_free,
};
pub use io::{read_graph, write_graph};
pub use pattern::{
    blow_up, sizes_from_weights, split_sizes, ArcRule, BlobAssignment, BlobInternal, InternalFile, PatternArc,
    PatternFile, PatternSpec,
};
pub use quotient::quotient_by_equivalence;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Oriented,
    Directed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    mode: Mode,
    out: Vec<BitSet>,
    inn: Vec<BitSet>,
    arcs: usize,
}

impl Digraph {
    /// Build a graph, deduplicating repeated arcs.
    pub fn new(n: usize, arcs: &[(usize, usize)], mode: Mode) -> Result<Self> {
        let mut g = Digraph::empty(n, mode);
        for &(u, v) in arcs {
            g.try_add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize, mode: Mode) -> Self {
        Digraph {
            n,
            mode,
            out: vec![BitSet::new(n); n],
            inn: vec![BitSet::new(n); n],
            arcs: 0,
        }
    }

    pub(crate) fn try_add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.mode == Mode::Oriented && self.out[v].contains(u) {
            return Err(Error::DigonInOrientedMode(u, v));
        }
        if !self.out[u].contains(v) {
            self.out[u].insert(v);
            self.inn[v].insert(u);
            self.arcs += 1;
        }
        Ok(())
    }

    pub(crate) fn remove_arc_mut(&mut self, u: usize, v: usize) {
        if self.out[u].contains(v) {
            self.out[u].remove(v);
            self.inn[v].remove(u);
            self.arcs -= 1;
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mode(&self) -> Mode {
        self.mode
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    #[inline]
    pub fn out_set(&self, v: usize) -> &BitSet {
        &self.out[v]
    }

    #[inline]
    pub fn in_set(&self, v: usize) -> &BitSet {
        &self.inn[v]
    }

    /// In- or out-neighbours of `v`.
    pub fn neighbor_set(&self, v: usize) -> BitSet {
        let mut s = self.out[v].clone();
        s.union_with(&self.inn[v]);
        s
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    pub fn has_digon(&self) -> bool {
        (0..self.n).any(|u| self.out[u].intersects(&self.inn[u]))
    }

    /// Same arcs, different mode. Fails when going to oriented mode with digons.
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        if mode == Mode::Oriented {
            if let Some((u, v)) = self.arcs().find(|&(u, v)| self.has_arc(v, u)) {
                return Err(Error::DigonInOrientedMode(u, v));
            }
        }
        let mut g = self.clone();
        g.mode = mode;
        Ok(g)
    }

    /// Subgraph induced on `keep` (listed in the order they should be relabelled).
    pub fn induced(&self, keep: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Digraph::empty(keep.len(), self.mode);
        for (i, &u) in keep.iter().enumerate() {
            for v in self.out[u].iter() {
                if index[v] != usize::MAX {
                    g.try_add_arc(i, index[v]).expect("induced arcs are valid");
                }
            }
        }
        g
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let arcs: Vec<_> = self.arcs().map(|(u, v)| (perm[u], perm[v])).collect();
        Digraph::new(self.n, &arcs, self.mode).expect("relabelling preserves validity")
    }

    /// Graph with the given arcs removed.
    pub fn without_arcs(&self, arcs: &[(usize, usize)]) -> Digraph {
        let mut g = self.clone();
        for &(u, v) in arcs {
            g.remove_arc_mut(u, v);
        }
        g
    }

    /// Graph with one extra arc.
    pub fn with_arc(&self, u: usize, v: usize) -> Result<Digraph> {
        let mut g = self.clone();
        g.try_add_arc(u, v)?;
        Ok(g)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let mode = if self.mode == Mode::Directed || other.mode == Mode::Directed {
            Mode::Directed
        } else {
            Mode::Oriented
        };
        let n = self.n + other.n;
        let arcs: Vec<_> =
            self.arcs().chain(other.arcs().map(|(u, v)| (u + self.n, v + self.n))).collect();
        Digraph::new(n, &arcs, mode).expect("disjoint union is valid")
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| u8::from(self.has_arc(u, v))).collect())
            .collect()
    }

    /// Directed cycle `0 → 1 → … → k-1 → 0`.
    pub fn directed_cycle(k: usize) -> Digraph {
        let mode = if k == 2 { Mode::Directed } else { Mode::Oriented };
        let arcs: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Digraph::new(k, &arcs, mode).expect("cycle is valid")
    }

    /// Transitive tournament with arcs `i → j` for `i < j`.
    pub fn transitive_tournament(n: usize) -> Digraph {
        let arcs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Digraph::new(n, &arcs, Mode::Oriented).expect("tournament is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)], Mode::Oriented).unwrap();
        assert_eq!(g.arc_count(), 3);
        assert!(g.has_arc(2, 0));
        assert!(!g.has_arc(0, 2));
    }

    #[test]
    fn digon_rules() {
        assert_eq!(
            Digraph::new(2, &[(0, 1), (1, 0)], Mode::Oriented),
            Err(Error::DigonInOrientedMode(1, 0))
        );
        let g = Digraph::new(2, &[(0, 1), (1, 0)], Mode::Directed).unwrap();
        assert!(g.has_digon());
        assert_eq!(g.arc_count(), 2);
        assert!(g.with_mode(Mode::Oriented).is_err());
    }

    #[test]
    fn invalid_arcs() {
        assert_eq!(Digraph::new(3, &[(1, 1)], Mode::Oriented), Err(Error::SelfLoop(1)));
        assert_eq!(
            Digraph::new(3, &[(0, 3)], Mode::Oriented),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn dedup() {
        let g = Digraph::new(3, &[(0, 1), (0, 1), (1, 2)], Mode::Oriented).unwrap();
        assert_eq!(g.arc_count(), 2);
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn induced_and_relabel() {
        let g = Digraph::directed_cycle(4);
        let h = g.induced(&[1, 2, 3]);
        assert_eq!(h.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let r = g.relabel(&[1, 2, 3, 0]);
        assert!(r.has_arc(1, 2) && r.has_arc(0, 1));
    }
}
