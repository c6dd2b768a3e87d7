use super::{blow_up, BlobAssignment, Digraph, Mode, PatternSpec};
use num_bigint::BigUint;
use num_traits::Zero;
use crate::bitset::BitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` split into `p` parts differing by at most one; the remainder goes to
/// the lowest-indexed parts.
pub fn balanced_sizes(p: usize, n: usize) -> Vec<usize> {
    assert!(p > 0, "need at least one part");
    (0..p).map(|i| n / p + usize::from(i < n % p)).collect()
}

/// Balanced blow-up of `base`, then the same construction recursively inside
/// every blob with at least `|V(base)|` vertices.
pub fn iterated_blow_up(base: &Digraph, n: usize) -> Digraph {
    assert!(base.n() >= 3, "iterated blow-up needs a base on at least 3 vertices");
    let mut g = Digraph::empty(n, base.mode());
    fill_iterated(base, &mut g, 0, n);
    g
}

fn fill_iterated(base: &Digraph, g: &mut Digraph, start: usize, len: usize) {
    let p = base.n();
    if len < p {
        return;
    }
    let sizes = balanced_sizes(p, len);
    let pattern = PatternSpec::uniform(base.clone());
    let layer = blow_up(&pattern, &BlobAssignment::new(sizes.clone())).expect("uniform blow-up");
    for (u, v) in layer.arcs() {
        g.try_add_arc(start + u, start + v).expect("layers are arc-disjoint");
    }
    let mut off = start;
    for s in sizes {
        fill_iterated(base, g, off, s);
        off += s;
    }
}

/// Number of directed `p`-cycles in the iterated blow-up of the directed
/// `p`-cycle on `n` vertices: `f(n) = Π aᵢ + Σ f(aᵢ)` over the balanced
/// blob sizes `aᵢ`, with `f(n) = 0` for `n < p`.
pub fn iterated_blow_up_count(p: usize, n: usize) -> BigUint {
    if n < p {
        return BigUint::zero();
    }
    let sizes = balanced_sizes(p, n);
    let product: BigUint = sizes.iter().map(|&s| BigUint::from(s)).product();
    let inner: BigUint = sizes.iter().map(|&s| iterated_blow_up_count(p, s)).sum();
    product + inner
}

/// Each pair becomes an arc with probability `p`, with a fair coin for its
/// direction.
pub fn random_oriented(n: usize, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                arcs.push(if rng.random::<bool>() { (u, v) } else { (v, u) });
            }
        }
    }
    Digraph::new(n, &arcs, Mode::Oriented).expect("orientation is valid")
}

/// Random greedy triangle-free orientation: pairs are visited in a seeded
/// random order and kept, with a random direction, unless they would close a
/// triangle in the underlying graph.
pub fn random_triangle_free(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut nbrs = vec![BitSet::new(n); n];
    let mut arcs = Vec::new();
    for (u, v) in pairs {
        if !nbrs[u].intersects(&nbrs[v]) {
            nbrs[u].insert(v);
            nbrs[v].insert(u);
            arcs.push(if rng.random::<bool>() { (u, v) } else { (v, u) });
        }
    }
    Digraph::new(n, &arcs, Mode::Oriented).expect("orientation is valid")
}

/// Complete bipartite graph with parts `0..⌈n/2⌉` and `⌈n/2⌉..n`, every cross
/// pair oriented by an independent fair coin drawn from a ChaCha8 stream seeded
/// with `seed`.
pub fn random_bipartite_orientation(n: usize, seed: u64) -> Digraph {
    let m = n.div_ceil(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(m * (n - m));
    for a in 0..m {
        for b in m..n {
            if rng.random::<bool>() {
                arcs.push((a, b));
            } else {
                arcs.push((b, a));
            }
        }
    }
    Digraph::new(n, &arcs, Mode::Oriented).expect("bipartite orientation is valid")
}
