//! Data-parallel helpers with a sequential fallback.
//!
//! Every reduction used by the crate goes through this module so that results
//! are identical whichever [`Execution`] is selected: reductions are sums or
//! order-independent merges, never "first found" races.

use std::ops::Range;

/// How index-parallel loops are executed.
///
/// Without the `parallel` feature both variants run sequentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `Σ f(i)` over `range`.
pub fn map_sum<T, F>(exec: Execution, range: Range<usize>, f: F) -> T
where
    T: Send + std::iter::Sum<T>,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).sum();
    }
    let _ = exec;
    range.map(f).sum()
}

/// `[f(i) for i in range]`, order preserved.
pub fn map_collect<T, F>(exec: Execution, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// Map each index then fold with an associative, commutative `merge`.
pub fn map_reduce<T, F, I, M>(exec: Execution, range: Range<usize>, f: F, identity: I, merge: M) -> T
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
    I: Fn() -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).reduce(&identity, &merge);
    }
    let _ = exec;
    range.map(f).fold(identity(), merge)
}

/// True if `pred(i)` holds for some index. Short-circuits; the answer does not
/// depend on scheduling.
pub fn any<F>(exec: Execution, range: Range<usize>, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().any(pred);
    }
    let _ = exec;
    range.into_iter().any(pred)
}
