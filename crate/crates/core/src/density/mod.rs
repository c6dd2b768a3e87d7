//! Limit densities of directed cycles in pattern blow-ups, and optimizers
//! over blob weights and threshold constants.
//!
//! For a pattern with blob weights `w`, the number of directed `k`-cycles in
//! the blow-up on `n` vertices is `value(w) · n^k + o(n^k)`. The value is
//! `1/k` times the sum over rooted closed `k`-walks in the pattern of the
//! product of visited weights times the integral of the walk's kernels over
//! vertex coordinates in `[0, 1]`.

mod optimize;
mod piecewise;
mod walks;

pub use optimize::{
    default_initializations, optimize_threshold, optimize_weights, Evaluator, ThresholdResult, WeightsResult,
};

use crate::error::{Error, Result};
use crate::graph::{ArcRule, BlobInternal, PatternSpec};
use crate::par::{self, Execution};
use crate::rational::ratio_to_f64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use walks::{closed_walks, KernelGrids, Walk};

/// Exponents of the free blob weights in one monomial.
type Monomial = Vec<u32>;

#[derive(Clone, Debug)]
struct Term {
    exps: Monomial,
    /// Product of fixed-blob factors and `1/k`, without the integral.
    scale: BigRational,
    walk: Walk,
}

#[derive(Clone, Debug)]
pub struct DensityModel {
    pattern: PatternSpec,
    k: usize,
    fixed: Vec<Option<usize>>,
    resolution: usize,
    power: usize,
    terms: Vec<Term>,
    exact: Option<Vec<(Monomial, BigRational)>>,
    approx: Vec<(Monomial, f64)>,
    grid_walks: usize,
}

/// A density value, exact when the pattern has no threshold arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityValue {
    pub value: f64,
    pub exact: Option<BigRational>,
}

fn falling(a: usize, m: usize) -> BigInt {
    (0..m).map(|i| BigInt::from(a as i64 - i as i64)).product()
}

impl DensityModel {
    pub fn new(pattern: PatternSpec, k: usize) -> Result<Self> {
        Self::with_grid(pattern, k, 512)
    }

    /// Like [`DensityModel::new`], with `resolution` grid cells per axis for
    /// threshold walks that avoid every full arc.
    pub fn with_grid(pattern: PatternSpec, k: usize, resolution: usize) -> Result<Self> {
        let fixed = vec![None; pattern.blobs()];
        Self::build(pattern, k, fixed, resolution.max(1))
    }

    /// Treat `blob` as a set of `size` vertices that does not grow with `n`.
    pub fn with_fixed_blob(self, blob: usize, size: usize) -> Result<Self> {
        if blob >= self.pattern.blobs() {
            return Err(Error::InvalidPattern(format!("no blob {blob}")));
        }
        if self.pattern.internal()[blob] != BlobInternal::Independent
            || self.pattern.rules().iter().any(|&((u, v), r)| (u == blob || v == blob) && r != ArcRule::Full)
        {
            return Err(Error::InvalidPattern("a fixed blob must be independent with full arcs".into()));
        }
        let mut fixed = self.fixed;
        fixed[blob] = Some(size);
        Self::build(self.pattern, self.k, fixed, self.resolution)
    }

    /// Grid resolution used for threshold walks that avoid every full arc.
    pub fn with_resolution(self, resolution: usize) -> Result<Self> {
        Self::build(self.pattern, self.k, self.fixed, resolution.max(1))
    }

    fn build(pattern: PatternSpec, k: usize, fixed: Vec<Option<usize>>, resolution: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameters(format!("cycle length {k} < 2")));
        }
        let p = pattern.blobs();
        let kq = BigRational::from_integer(BigInt::from(k));
        let mut terms = Vec::new();
        let mut min_fixed = usize::MAX;
        for walk in closed_walks(&pattern, k) {
            let mut exps = vec![0u32; p];
            let mut visits = vec![0usize; p];
            for &b in &walk.blobs {
                match fixed[b] {
                    Some(_) => visits[b] += 1,
                    None => exps[b] += 1,
                }
            }
            let mut scale = BigRational::one() / &kq;
            for b in 0..p {
                if let Some(size) = fixed[b] {
                    scale *= BigRational::from_integer(falling(size, visits[b]));
                }
            }
            if scale.is_zero() {
                continue;
            }
            let m: usize = visits.iter().sum();
            min_fixed = min_fixed.min(m);
            terms.push((m, Term { exps, scale, walk }));
        }
        let terms: Vec<Term> = terms.into_iter().filter(|(m, _)| *m == min_fixed).map(|(_, t)| t).collect();
        let power = if min_fixed == usize::MAX { k } else { k - min_fixed };

        let exact = (!pattern.has_threshold()).then(|| {
            let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
            for t in &terms {
                let v = t.walk.exact_integral() * &t.scale;
                if !v.is_zero() {
                    *acc.entry(t.exps.clone()).or_insert_with(BigRational::zero) += v;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()
        });
        let mut grid_walks = 0;
        let approx = match &exact {
            Some(e) => e.iter().map(|(m, c)| (m.clone(), ratio_to_f64(c))).collect(),
            None => {
                let grids = KernelGrids::new(terms.iter().filter(|t| t.walk.chain_integral().is_none()).map(|t| &t.walk), resolution);
                let vals: Vec<(f64, bool)> = par::map_collect(Execution::default(), 0..terms.len(), |i| {
                    let w = &terms[i].walk;
                    match w.chain_integral() {
                        Some(v) => (v, false),
                        None => (w.grid_integral(&grids), true),
                    }
                });
                let mut acc: BTreeMap<Monomial, f64> = BTreeMap::new();
                for (t, (v, grid)) in terms.iter().zip(vals) {
                    grid_walks += usize::from(grid);
                    *acc.entry(t.exps.clone()).or_insert(0.0) += v * ratio_to_f64(&t.scale);
                }
                acc.into_iter().filter(|(_, c)| *c != 0.0).collect()
            }
        };
        Ok(DensityModel { pattern, k, fixed, resolution, power, terms, exact, approx, grid_walks })
    }

    pub fn pattern(&self) -> &PatternSpec {
        &self.pattern
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Exponent of `n` in the leading term (`k` minus visits to fixed blobs).
    pub fn power(&self) -> usize {
        self.power
    }

    /// True when values are exact rationals.
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// True when no part of the value comes from grid quadrature.
    pub fn is_grid_free(&self) -> bool {
        self.grid_walks == 0
    }

    /// The value is a polynomial in the weights, so a gradient always exists.
    pub fn has_gradient(&self) -> bool {
        true
    }

    /// Blobs whose weights are optimization variables.
    pub fn free_blobs(&self) -> Vec<usize> {
        (0..self.pattern.blobs()).filter(|&b| self.fixed[b].is_none()).collect()
    }

    /// Exact polynomial coefficients, for patterns without threshold arcs.
    pub fn exact_terms(&self) -> Option<&[(Vec<u32>, BigRational)]> {
        self.exact.as_deref()
    }

    fn check_f64(&self, w: &[f64]) -> Result<()> {
        let p = self.pattern.blobs();
        if w.len() != p {
            return Err(Error::SizeMismatch(format!("{} weights for {p} blobs", w.len())));
        }
        let mut sum = 0.0;
        for b in 0..p {
            match self.fixed[b] {
                Some(_) if w[b].abs() > 1e-12 => return Err(Error::WeightsOffSimplex),
                Some(_) => {}
                None if w[b] < -1e-12 || !w[b].is_finite() => return Err(Error::WeightsOffSimplex),
                None => sum += w[b],
            }
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::WeightsOffSimplex);
        }
        Ok(())
    }

    /// Value at floating-point weights on the simplex of free blobs (fixed
    /// blobs carry weight 0).
    pub fn value_f64(&self, w: &[f64]) -> Result<f64> {
        self.check_f64(w)?;
        Ok(self.value_unchecked(w))
    }

    pub(crate) fn value_unchecked(&self, w: &[f64]) -> f64 {
        self.approx
            .iter()
            .map(|(m, c)| c * m.iter().zip(w).map(|(&e, &x)| x.powi(e as i32)).product::<f64>())
            .sum()
    }

    /// Gradient of the value polynomial with respect to every weight.
    pub fn gradient(&self, w: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; w.len()];
        for (m, c) in &self.approx {
            for b in 0..w.len() {
                if m[b] == 0 {
                    continue;
                }
                let mut t = c * m[b] as f64 * w[b].powi(m[b] as i32 - 1);
                for (j, (&e, &x)) in m.iter().zip(w).enumerate() {
                    if j != b {
                        t *= x.powi(e as i32);
                    }
                }
                g[b] += t;
            }
        }
        g
    }

    /// Exact value at rational weights, when the pattern has no thresholds.
    pub fn value_exact(&self, w: &[BigRational]) -> Result<Option<BigRational>> {
        let p = self.pattern.blobs();
        if w.len() != p {
            return Err(Error::SizeMismatch(format!("{} weights for {p} blobs", w.len())));
        }
        let mut sum = BigRational::zero();
        for b in 0..p {
            if w[b] < BigRational::zero() || (self.fixed[b].is_some() && !w[b].is_zero()) {
                return Err(Error::WeightsOffSimplex);
            }
            sum += &w[b];
        }
        if !sum.is_one() {
            return Err(Error::WeightsOffSimplex);
        }
        Ok(self.exact.as_ref().map(|terms| {
            terms
                .iter()
                .map(|(m, c)| {
                    m.iter().zip(w).fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
                })
                .sum()
        }))
    }

    fn walk_weight(&self, t: &Term, w: &[f64]) -> f64 {
        ratio_to_f64(&t.scale) * t.exps.iter().zip(w).map(|(&e, &x)| x.powi(e as i32)).product::<f64>()
    }
}

/// Density at rational weights: exact for patterns without threshold arcs.
pub fn evaluate_density(model: &DensityModel, weights: &[BigRational]) -> Result<DensityValue> {
    let exact = model.value_exact(weights)?;
    let wf: Vec<f64> = weights.iter().map(ratio_to_f64).collect();
    let value = match &exact {
        Some(e) => ratio_to_f64(e),
        None => model.value_f64(&wf)?,
    };
    Ok(DensityValue { value, exact })
}

/// Density from grid quadrature alone (`resolution` cells per axis), as an
/// independent check of [`evaluate_density`].
pub fn evaluate_quadrature(model: &DensityModel, weights: &[f64], resolution: usize) -> Result<f64> {
    model.check_f64(weights)?;
    let grids = KernelGrids::new(model.terms.iter().map(|t| &t.walk), resolution.max(1));
    Ok(par::map_sum(Execution::default(), 0..model.terms.len(), |i| {
        let t = &model.terms[i];
        let ww = model.walk_weight(t, weights);
        if ww == 0.0 {
            0.0
        } else {
            ww * t.walk.grid_integral(&grids)
        }
    }))
}

/// Monte Carlo estimate `(mean, standard error)` from `samples` uniform
/// coordinate vectors drawn from a ChaCha8 stream.
pub fn evaluate_monte_carlo(model: &DensityModel, weights: &[f64], samples: usize, seed: u64) -> Result<(f64, f64)> {
    model.check_f64(weights)?;
    if samples < 2 {
        return Err(Error::InvalidParameters("need at least two samples".into()));
    }
    let coeffs: Vec<f64> = model.terms.iter().map(|t| model.walk_weight(t, weights)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = model.k;
    let mut u = vec![0.0; k];
    let (mut mean, mut m2) = (0.0, 0.0);
    for s in 0..samples {
        for x in u.iter_mut() {
            *x = rng.random::<f64>();
        }
        let mut x = 0.0;
        for (t, &c) in model.terms.iter().zip(&coeffs) {
            if c != 0.0 && (0..k).all(|i| t.walk.kernels[i].eval(u[i], u[(i + 1) % k])) {
                x += c;
            }
        }
        // Welford update
        let d = x - mean;
        mean += d / (s + 1) as f64;
        m2 += d * (x - mean);
    }
    let var = m2 / (samples - 1) as f64;
    Ok((mean, (var / samples as f64).sqrt()))
}

/// `value · k!`: the density as a multiple of `C(n, k)`.
pub fn binomial_units(value: f64, k: usize) -> f64 {
    value * (1..=k).map(|i| i as f64).product::<f64>()
}
