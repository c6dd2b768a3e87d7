//! Closed walks via exact and boolean matrix powers.

use crate::bitset::BitSet;
use crate::graph::Digraph;
use crate::par::{self, Execution};
use num_bigint::BigUint;
use num_traits::Zero;

/// `tr(M^l)` for the 0/1 adjacency matrix `M`.
pub fn count_closed_walks(g: &Digraph, l: usize) -> BigUint {
    count_closed_walks_with(g, l, Execution::default())
}

pub fn count_closed_walks_with(g: &Digraph, l: usize, exec: Execution) -> BigUint {
    if l == 0 {
        return BigUint::from(g.n());
    }
    if g.n() == 0 || !has_closed_walk(g, l) {
        return BigUint::zero();
    }
    let base: Vec<Vec<u128>> = g.adjacency_rows().into_iter().map(|r| r.into_iter().map(u128::from).collect()).collect();
    if let Some(t) = trace_power(&base, l, exec, |a, b| a.checked_mul(*b), |a, b| a.checked_add(b)) {
        return BigUint::from(t);
    }
    let big: Vec<Vec<BigUint>> =
        base.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect();
    trace_power(&big, l, exec, |a, b| Some(a * b), |a, b| Some(a + b)).expect("unbounded arithmetic")
}

type Matrix<T> = Vec<Vec<T>>;

/// Exact trace of `m^l` by squaring. Returns `None` on overflow.
fn trace_power<T, Mul, Add>(m: &Matrix<T>, l: usize, exec: Execution, mul: Mul, add: Add) -> Option<T>
where
    T: Clone + Zero + Send + Sync,
    Mul: Fn(&T, &T) -> Option<T> + Sync + Send,
    Add: Fn(T, T) -> Option<T> + Sync + Send,
{
    let n = m.len();
    let product = |a: &Matrix<T>, b: &Matrix<T>| -> Option<Matrix<T>> {
        par::map_collect(exec, 0..n, |i| {
            let mut row = vec![T::zero(); n];
            for (k, aik) in a[i].iter().enumerate() {
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !b[k][j].is_zero() {
                        row[j] = add(std::mem::replace(&mut row[j], T::zero()), mul(aik, &b[k][j])?)?;
                    }
                }
            }
            Some(row)
        })
        .into_iter()
        .collect()
    };
    // m^l = acc · sq, with the last product reduced to its diagonal
    let mut acc: Option<Matrix<T>> = None;
    let mut sq = m.clone();
    let mut e = l;
    loop {
        if e & 1 == 1 {
            if e == 1 {
                return match acc {
                    None => (0..n).try_fold(T::zero(), |t, i| add(t, sq[i][i].clone())),
                    Some(a) => {
                        let mut t = T::zero();
                        for i in 0..n {
                            for k in 0..n {
                                if !a[i][k].is_zero() && !sq[k][i].is_zero() {
                                    t = add(t, mul(&a[i][k], &sq[k][i])?)?;
                                }
                            }
                        }
                        Some(t)
                    }
                };
            }
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => product(&a, &sq)?,
            });
        }
        e >>= 1;
        sq = product(&sq, &sq)?;
    }
}

/// Boolean product `a · b` on bit rows.
fn bool_product(a: &[BitSet], b: &[BitSet]) -> Vec<BitSet> {
    let n = a.len();
    a.iter()
        .map(|row| {
            let mut out = BitSet::new(n);
            for k in row.iter() {
                out.union_with(&b[k]);
            }
            out
        })
        .collect()
}

/// Whether some closed walk of exactly `l` arcs exists.
pub fn has_closed_walk(g: &Digraph, l: usize) -> bool {
    let n = g.n();
    if n == 0 || l == 0 {
        return n > 0 && l == 0;
    }
    let mut sq: Vec<BitSet> = (0..n).map(|v| g.out_set(v).clone()).collect();
    let mut acc: Option<Vec<BitSet>> = None;
    let mut e = l;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => bool_product(&a, &sq),
            });
        }
        e >>= 1;
        if e > 0 {
            sq = bool_product(&sq, &sq);
        }
    }
    let p = acc.expect("l > 0");
    (0..n).any(|i| p[i].contains(i))
}

/// `result[l]` tells whether a closed walk of length `l` exists, for
/// `0 ≤ l ≤ max_len`.
pub fn closed_walk_lengths(g: &Digraph, max_len: usize) -> Vec<bool> {
    let n = g.n();
    let mut res = vec![false; max_len + 1];
    if n == 0 {
        return res;
    }
    res[0] = true;
    for s in 0..n {
        let mut layer = BitSet::new(n);
        layer.insert(s);
        for l in 1..=max_len {
            let mut next = BitSet::new(n);
            for v in layer.iter() {
                next.union_with(g.out_set(v));
            }
            if next.contains(s) {
                res[l] = true;
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
    }
    res
}
