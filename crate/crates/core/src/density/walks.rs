//! Step kernels of a pattern and its rooted closed walks.

use super::piecewise::Piecewise;
use crate::graph::{ArcRule, BlobInternal, PatternSpec};
use crate::rational::ratio_to_f64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Density of the arc `x → y` between coordinates of consecutive walk
/// vertices.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Kernel {
    /// Every pair.
    One,
    /// `x < y` (transitive tournament blob).
    Less,
    /// `x < s ≤ y` (one-way bipartite blob).
    Split { s: BigRational },
    /// `y ≤ x + c` (threshold arc, forward).
    Forward(f64),
    /// `y < x − c` (threshold arc, reversed).
    Backward(f64),
}

impl Kernel {
    pub(crate) fn eval(&self, x: f64, y: f64) -> bool {
        match self {
            Kernel::One => true,
            Kernel::Less => x < y,
            Kernel::Split { s } => {
                let s = ratio_to_f64(s);
                x < s && s <= y
            }
            Kernel::Forward(c) => y <= x + c,
            Kernel::Backward(c) => y < x - c,
        }
    }

    pub(crate) fn apply(&self, phi: &Piecewise) -> Piecewise {
        match self {
            Kernel::One => Piecewise::constant(phi.integral()),
            Kernel::Less => phi.less(),
            Kernel::Split { s } => phi.split(ratio_to_f64(s)),
            Kernel::Forward(c) => phi.forward(*c),
            Kernel::Backward(c) => phi.backward(*c),
        }
    }

    fn is_threshold(&self) -> bool {
        matches!(self, Kernel::Forward(_) | Kernel::Backward(_))
    }

    /// Average of the kernel over the grid cell `[i, i+1] × [j, j+1]` of
    /// `r × r` cells.
    pub(crate) fn cell_average(&self, i: usize, j: usize, r: usize) -> f64 {
        let h = 1.0 / r as f64;
        let frac_below = |s: f64, cell: usize| ((s - cell as f64 * h) / h).clamp(0.0, 1.0);
        match self {
            Kernel::One => 1.0,
            Kernel::Less => match i.cmp(&j) {
                std::cmp::Ordering::Less => 1.0,
                std::cmp::Ordering::Equal => 0.5,
                std::cmp::Ordering::Greater => 0.0,
            },
            Kernel::Split { s } => {
                let s = ratio_to_f64(s);
                frac_below(s, i) * (1.0 - frac_below(s, j))
            }
            // fraction of the cell with y − x ≤ d, in cell units
            Kernel::Forward(c) => diagonal_fraction((c - (j as f64 - i as f64) * h) / h),
            Kernel::Backward(c) => diagonal_fraction((-c - (j as f64 - i as f64) * h) / h),
        }
    }
}

/// Area of `{(s, t) ∈ [0,1]² : t − s ≤ d}`.
fn diagonal_fraction(d: f64) -> f64 {
    if d <= -1.0 {
        0.0
    } else if d <= 0.0 {
        (1.0 + d) * (1.0 + d) / 2.0
    } else if d < 1.0 {
        1.0 - (1.0 - d) * (1.0 - d) / 2.0
    } else {
        1.0
    }
}

/// Outgoing steps of each blob: `(target, kernel)`.
pub(crate) fn step_graph(p: &PatternSpec) -> Vec<Vec<(usize, Kernel)>> {
    let mut steps: Vec<Vec<(usize, Kernel)>> = vec![Vec::new(); p.blobs()];
    for (b, internal) in p.internal().iter().enumerate() {
        match internal {
            BlobInternal::Independent => {}
            BlobInternal::TransitiveTournament => steps[b].push((b, Kernel::Less)),
            BlobInternal::OneWayBipartite { split } => steps[b].push((b, Kernel::Split { s: split.clone() })),
        }
    }
    for &((u, v), rule) in p.rules() {
        match rule {
            ArcRule::Full => steps[u].push((v, Kernel::One)),
            ArcRule::Threshold { c } => {
                steps[u].push((v, Kernel::Forward(c)));
                steps[v].push((u, Kernel::Backward(c)));
            }
        }
    }
    steps
}

/// A rooted closed walk: `kernels[i]` joins `blobs[i]` to `blobs[i+1 mod k]`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Walk {
    pub blobs: Vec<usize>,
    pub kernels: Vec<Kernel>,
}

impl Walk {
    pub(crate) fn has_threshold(&self) -> bool {
        self.kernels.iter().any(Kernel::is_threshold)
    }

    /// Exact coordinate integral for walks without threshold kernels: runs of
    /// `m` tournament steps give `1/(m+1)!`, a bipartite step `s(1 − s)`.
    pub(crate) fn exact_integral(&self) -> BigRational {
        debug_assert!(!self.has_threshold());
        let k = self.kernels.len();
        if self.kernels.iter().all(|q| *q != Kernel::One) {
            // never leaves one blob: tournaments and one-way bipartite graphs are acyclic
            return BigRational::zero();
        }
        let start = self.kernels.iter().position(|q| *q == Kernel::One).expect("checked") + 1;
        let mut total = BigRational::one();
        let mut run = 0u64;
        let mut split_run = 0usize;
        for off in 0..k {
            match &self.kernels[(start + off) % k] {
                Kernel::One => {
                    total *= BigRational::new(BigInt::one(), factorial(run + 1));
                    run = 0;
                    split_run = 0;
                }
                Kernel::Less => run += 1,
                Kernel::Split { s } => {
                    split_run += 1;
                    if split_run > 1 {
                        return BigRational::zero();
                    }
                    total *= s * (BigRational::one() - s);
                }
                _ => unreachable!(),
            }
        }
        total
    }

    /// Coordinate integral using exact chain propagation when the walk uses a
    /// full arc; `None` otherwise.
    pub(crate) fn chain_integral(&self) -> Option<f64> {
        let k = self.kernels.len();
        let cut = self.kernels.iter().position(|q| *q == Kernel::One)?;
        let mut total = 1.0;
        let mut phi = Piecewise::constant(1.0);
        for off in 1..=k {
            let q = &self.kernels[(cut + off) % k];
            if *q == Kernel::One {
                total *= phi.integral();
                phi = Piecewise::constant(1.0);
            } else {
                phi = q.apply(&phi);
            }
        }
        Some(total)
    }

    /// Grid approximation of the coordinate integral with `grids.r` cells per axis.
    pub(crate) fn grid_integral(&self, grids: &KernelGrids) -> f64 {
        let k = self.kernels.len();
        let r = grids.r;
        let mats: Vec<&[f64]> = self.kernels.iter().map(|q| grids.get(q)).collect();
        let h = 1.0 / r as f64;
        if let Some(cut) = self.kernels.iter().position(|q| *q == Kernel::One) {
            // row vector propagation, restarting at every full arc
            let mut total = 1.0;
            let mut v = vec![h; r];
            for off in 1..=k {
                let idx = (cut + off) % k;
                if self.kernels[idx] == Kernel::One {
                    total *= v.iter().sum::<f64>();
                    v = vec![h; r];
                } else {
                    let m = mats[idx];
                    let mut next = vec![0.0; r];
                    for (i, &vi) in v.iter().enumerate() {
                        if vi != 0.0 {
                            let row = &m[i * r..(i + 1) * r];
                            for j in 0..r {
                                next[j] += vi * row[j] * h;
                            }
                        }
                    }
                    v = next;
                }
            }
            return total;
        }
        // trace of the full product
        let mut acc = mats[0].to_vec();
        for m in &mats[1..] {
            let mut next = vec![0.0; r * r];
            for i in 0..r {
                for l in 0..r {
                    let a = acc[i * r + l];
                    if a != 0.0 {
                        for j in 0..r {
                            next[i * r + j] += a * m[l * r + j];
                        }
                    }
                }
            }
            acc = next;
        }
        (0..r).map(|i| acc[i * r + i]).sum::<f64>() * h.powi(k as i32)
    }
}

/// Cell-average matrices of every kernel in a set of walks, built once.
pub(crate) struct KernelGrids {
    r: usize,
    mats: Vec<(Kernel, Vec<f64>)>,
}

impl KernelGrids {
    pub(crate) fn new<'a>(walks: impl IntoIterator<Item = &'a Walk>, r: usize) -> Self {
        let mut mats: Vec<(Kernel, Vec<f64>)> = Vec::new();
        for q in walks.into_iter().flat_map(|w| &w.kernels) {
            if !mats.iter().any(|(p, _)| p == q) {
                let mut m = vec![0.0; r * r];
                for i in 0..r {
                    for j in 0..r {
                        m[i * r + j] = q.cell_average(i, j, r);
                    }
                }
                mats.push((q.clone(), m));
            }
        }
        KernelGrids { r, mats }
    }

    fn get(&self, q: &Kernel) -> &[f64] {
        &self.mats.iter().find(|(p, _)| p == q).expect("kernel registered").1
    }
}

fn factorial(m: u64) -> BigInt {
    (1..=m).map(BigInt::from).product()
}

/// Every rooted closed walk with `k` steps.
pub(crate) fn closed_walks(p: &PatternSpec, k: usize) -> Vec<Walk> {
    let steps = step_graph(p);
    let mut out = Vec::new();
    let mut blobs = Vec::with_capacity(k);
    let mut kernels = Vec::with_capacity(k);
    fn rec(
        steps: &[Vec<(usize, Kernel)>],
        k: usize,
        at: usize,
        blobs: &mut Vec<usize>,
        kernels: &mut Vec<Kernel>,
        out: &mut Vec<Walk>,
    ) {
        if kernels.len() + 1 == k {
            for (t, q) in &steps[at] {
                if *t == blobs[0] {
                    let mut ks = kernels.clone();
                    ks.push(q.clone());
                    out.push(Walk { blobs: blobs.clone(), kernels: ks });
                }
            }
            return;
        }
        for (t, q) in &steps[at] {
            blobs.push(*t);
            kernels.push(q.clone());
            rec(steps, k, *t, blobs, kernels, out);
            blobs.pop();
            kernels.pop();
        }
    }
    if k == 0 {
        return out;
    }
    for b in 0..p.blobs() {
        blobs.push(b);
        rec(&steps, k, b, &mut blobs, &mut kernels, &mut out);
        blobs.pop();
    }
    out
}
