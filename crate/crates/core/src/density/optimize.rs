//! Multi-start projected gradient ascent over blob weights, and a scalar
//! search over the threshold constant.

use super::{evaluate_monte_carlo, evaluate_quadrature, DensityModel};
use crate::error::{Error, Result};
use crate::graph::PatternSpec;
use crate::par::{self, Execution};
use crate::rational::{approximate, ratio_to_f64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Euclidean projection onto `{x ≥ 0, Σ x = 1}`.
pub(crate) fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut css = 0.0;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        css += ui;
        let t = (css - 1.0) / (i + 1) as f64;
        if ui - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightsResult {
    pub weights: Vec<f64>,
    pub value: f64,
    /// Small-denominator rational weights matching the optimum, if found.
    pub rational_weights: Option<Vec<BigRational>>,
    /// Exact value at `rational_weights` for threshold-free patterns.
    pub rational_value: Option<BigRational>,
    pub starts: usize,
}

/// The uniform point followed by `count − 1` seeded uniform-simplex samples,
/// all on the free blobs.
pub fn default_initializations(model: &DensityModel, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let p = model.pattern().blobs();
    let free = model.free_blobs();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut uniform = vec![0.0; p];
    for &b in &free {
        uniform[b] = 1.0 / free.len() as f64;
    }
    out.push(uniform);
    for _ in 1..count {
        let mut w = vec![0.0; p];
        let mut s = 0.0;
        for &b in &free {
            // exponential spacings give a uniform point on the simplex
            let e = -(1.0 - rng.random::<f64>()).ln();
            w[b] = e;
            s += e;
        }
        for x in w.iter_mut() {
            *x /= s;
        }
        out.push(w);
    }
    out
}

fn ascend(model: &DensityModel, free: &[usize], init: &[f64], tol: f64) -> (Vec<f64>, f64) {
    let embed = |y: &[f64]| {
        let mut w = vec![0.0; init.len()];
        for (i, &b) in free.iter().enumerate() {
            w[b] = y[i];
        }
        w
    };
    let mut x = project_simplex(&free.iter().map(|&b| init[b]).collect::<Vec<_>>());
    let mut fx = model.value_unchecked(&embed(&x));
    let mut eta = f64::NAN;
    for _ in 0..200_000 {
        let g_full = model.gradient(&embed(&x));
        let g: Vec<f64> = free.iter().map(|&b| g_full[b]).collect();
        let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if gmax == 0.0 {
            break;
        }
        if !eta.is_finite() {
            eta = 0.1 / gmax;
        }
        eta *= 2.0;
        let mut moved = None;
        while eta * gmax > 1e-18 {
            let y = project_simplex(&x.iter().zip(&g).map(|(a, b)| a + eta * b).collect::<Vec<_>>());
            let fy = model.value_unchecked(&embed(&y));
            let dir: f64 = y.iter().zip(&x).zip(&g).map(|((a, b), gi)| (a - b) * gi).sum();
            if fy >= fx + 1e-4 * dir && fy >= fx {
                moved = Some((y, fy));
                break;
            }
            eta /= 2.0;
        }
        let Some((y, fy)) = moved else { break };
        let step = y.iter().zip(&x).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        x = y;
        fx = fy;
        if step < tol {
            break;
        }
    }
    (embed(&x), fx)
}

/// Best weights over all starts. Each start is deterministic; the best value
/// wins and exact ties go to the lexicographically smallest weights.
pub fn optimize_weights(model: &DensityModel, inits: &[Vec<f64>], tol: f64) -> Result<WeightsResult> {
    let p = model.pattern().blobs();
    if inits.is_empty() {
        return Err(Error::InvalidParameters("no initial points".into()));
    }
    if inits.iter().any(|w| w.len() != p) {
        return Err(Error::SizeMismatch(format!("initial points must have {p} weights")));
    }
    let free = model.free_blobs();
    let tol = tol.max(1e-15);
    let runs = par::map_collect(Execution::default(), 0..inits.len(), |i| ascend(model, &free, &inits[i], tol));
    let (weights, value) = runs
        .into_iter()
        .reduce(|a, b| match a.1.total_cmp(&b.1) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Equal => {
                if b.0.iter().zip(&a.0).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()) == Some(std::cmp::Ordering::Less)
                {
                    b
                } else {
                    a
                }
            }
        })
        .expect("non-empty");

    // polish: look for nearby small-denominator weights that are at least as good
    let mut rational_weights = None;
    let mut rational_value = None;
    let mut out_w = weights.clone();
    let mut out_v = value;
    for max_den in [10u64, 100, 1000] {
        let r: Vec<BigRational> = weights.iter().map(|&x| approximate(x, max_den)).collect();
        let sum: BigRational = r.iter().cloned().sum();
        if !sum.is_one() || r.iter().zip(&weights).any(|(a, &b)| (ratio_to_f64(a) - b).abs() > 1e-4) {
            continue;
        }
        let rf: Vec<f64> = r.iter().map(ratio_to_f64).collect();
        let v = model.value_unchecked(&rf);
        if v >= value - 1e-12 * value.abs().max(1e-300) {
            rational_value = model.value_exact(&r)?;
            out_v = rational_value.as_ref().map(ratio_to_f64).unwrap_or(v);
            out_w = rf;
            rational_weights = Some(r);
            break;
        }
    }
    if rational_value.as_ref().is_some_and(|v| v.is_zero()) {
        rational_value = None;
    }
    Ok(WeightsResult { weights: out_w, value: out_v, rational_weights, rational_value, starts: inits.len() })
}

/// How a threshold family is evaluated during the search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Evaluator {
    /// Exact chain integration (grid quadrature only for walks that avoid
    /// every full arc).
    Exact,
    Quadrature { resolution: usize },
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdResult {
    pub c_star: f64,
    /// Density per `n^k`.
    pub density: f64,
    /// Density as a multiple of `C(n, k)`.
    pub density_binomial: f64,
    pub evaluations: usize,
    /// More than one strict local maximum on the initial grid.
    pub multimodal: bool,
    /// The coarse scan `(c, density)`.
    pub scan: Vec<(f64, f64)>,
}

fn density_at<F>(family: &F, k: usize, weights: &[f64], c: f64, ev: Evaluator) -> Result<f64>
where
    F: Fn(f64) -> Result<PatternSpec>,
{
    let resolution = match ev {
        Evaluator::Quadrature { resolution } => resolution,
        _ => 512,
    };
    let model = DensityModel::with_grid(family(c)?, k, resolution)?;
    match ev {
        Evaluator::Exact => model.value_f64(weights),
        Evaluator::Quadrature { resolution } => evaluate_quadrature(&model, weights, resolution),
        Evaluator::MonteCarlo { samples, seed } => Ok(evaluate_monte_carlo(&model, weights, samples, seed)?.0),
    }
}

/// Maximize the `k`-cycle density of `family(c)` over `c ∈ c_range`: a
/// 21-point scan locates the best bracket, then golden-section search refines
/// it to `1e-5`.
pub fn optimize_threshold<F>(
    family: F,
    k: usize,
    weights: &[f64],
    c_range: (f64, f64),
    evaluator: Evaluator,
) -> Result<ThresholdResult>
where
    F: Fn(f64) -> Result<PatternSpec> + Sync + Send,
{
    let (a, b) = c_range;
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a > b {
        return Err(Error::InvalidParameters(format!("threshold range [{a}, {b}] not inside [0, 1]")));
    }
    const SCAN: usize = 21;
    let grid: Vec<f64> = (0..SCAN).map(|i| a + (b - a) * i as f64 / (SCAN - 1) as f64).collect();
    let vals = par::map_collect(Execution::default(), 0..SCAN, |i| density_at(&family, k, weights, grid[i], evaluator));
    let vals: Vec<f64> = vals.into_iter().collect::<Result<_>>()?;
    let best = (0..SCAN).fold(0, |m, i| if vals[i] > vals[m] { i } else { m });
    let peaks = (0..SCAN)
        .filter(|&i| (i == 0 || vals[i] > vals[i - 1]) && (i + 1 == SCAN || vals[i] > vals[i + 1]))
        .count();
    let mut lo = grid[best.saturating_sub(1)];
    let mut hi = grid[(best + 1).min(SCAN - 1)];
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut evaluations = SCAN;
    let f = |c: f64| density_at(&family, k, weights, c, evaluator);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    evaluations += 2;
    // quadrature noise dominates below this width
    while hi - lo > 1e-5 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2)?;
        }
        evaluations += 1;
    }
    let (mut c_star, mut density) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if vals[best] > density {
        c_star = grid[best];
        density = vals[best];
    }
    Ok(ThresholdResult {
        c_star,
        density,
        density_binomial: super::binomial_units(density, k),
        evaluations,
        multimodal: peaks > 1,
        scan: grid.into_iter().zip(vals).collect(),
    })
}
