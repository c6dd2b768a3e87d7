//! Eigenvalues of adjacency matrices and the spectral bound for cycles in
//! orientations of complete bipartite graphs.
//!
//! Exact counts come from [`crate::counting`]; the floating-point spectra
//! here are checked against a residual tolerance before they are returned.

use crate::counting::count_cycle_copies;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::par::{self, Execution};
use nalgebra::{Complex, DMatrix, SymmetricEigen};
use num_bigint::BigUint;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const RESIDUAL_TOL: f64 = 1e-9;
const MAX_ITER: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Sorted by real part, then imaginary part, both non-increasing.
    pub eigenvalues: Vec<Complex<f64>>,
    /// Eigenvalues of `(M + Mᵀ)/2`, non-increasing.
    pub symmetrized: Vec<f64>,
    /// Part sizes `(m, n − m)` when the underlying graph is complete bipartite.
    pub bipartition: Option<(usize, usize)>,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest modulus over the spectrum.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Every eigenvalue pairs with its conjugate within `tol`.
    pub fn is_conjugation_closed(&self, tol: f64) -> bool {
        closed_under(&self.eigenvalues, |z| z.conj(), tol)
    }

    /// Every eigenvalue pairs with its negative within `tol`.
    pub fn is_negation_closed(&self, tol: f64) -> bool {
        closed_under(&self.eigenvalues, |z| -z, tol)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "eigenvalues": self.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "symmetrized": self.symmetrized,
            "bipartition": self.bipartition.map(|(a, b)| [a, b]),
        })
    }
}

// greedy matching is fine here: eigenvalue clusters are far apart compared to tol
fn closed_under(zs: &[Complex<f64>], f: impl Fn(Complex<f64>) -> Complex<f64>, tol: f64) -> bool {
    let mut used = vec![false; zs.len()];
    for &z in zs {
        let target = f(z);
        let hit = (0..zs.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (zs[a] - target).norm().total_cmp(&(zs[b] - target).norm()));
        match hit {
            Some(j) if (zs[j] - target).norm() <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

fn adjacency(g: &Digraph) -> DMatrix<f64> {
    let n = g.n();
    DMatrix::from_fn(n, n, |i, j| if g.has_arc(i, j) { 1.0 } else { 0.0 })
}

/// Side assignment and `m = |side 0|` if `g` orients `K_{m, n−m}` with both
/// parts non-empty. Digons disqualify.
pub fn complete_bipartition(g: &Digraph) -> Option<(Vec<bool>, usize)> {
    let n = g.n();
    if n < 2 || g.has_digon() {
        return None;
    }
    let nb0 = g.neighbor_set(0);
    let side: Vec<bool> = (0..n).map(|v| nb0.contains(v)).collect();
    let m = side.iter().filter(|&&s| !s).count();
    if m == n {
        return None;
    }
    for u in 0..n {
        let nb = g.neighbor_set(u);
        for v in 0..n {
            if nb.contains(v) != (side[u] != side[v]) {
                return None;
            }
        }
    }
    Some((side, m))
}

fn nonsymmetric_eigenvalues(a: &DMatrix<f64>, scale: f64) -> Result<Vec<Complex<f64>>> {
    let n = a.nrows();
    // Francis steps can stall on permutation-like matrices; an orthogonal
    // similarity with a seeded random basis breaks the symmetry
    for attempt in 0..4u64 {
        let (b, basis) = if attempt == 0 {
            (a.clone(), None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(attempt);
            let r = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
            let q = r.qr().q();
            (q.transpose() * a * &q, Some(q))
        };
        let Some(schur) = b.clone().try_schur(f64::EPSILON, MAX_ITER) else { continue };
        let eigenvalues: Vec<Complex<f64>> = schur.complex_eigenvalues().iter().copied().collect();
        let (q, t) = schur.unpack();
        let q = match basis {
            Some(basis) => basis * q,
            None => q,
        };
        let residual = (&q * &t * q.transpose() - a).norm();
        if !(residual <= RESIDUAL_TOL * scale) {
            return Err(Error::ConvergenceFailure(format!("Schur residual {residual:e}")));
        }
        return Ok(eigenvalues);
    }
    Err(Error::ConvergenceFailure("Schur iteration did not converge".into()))
}

const PRIMES: [u64; 2] = [(1 << 61) - 1, (1 << 62) - 57];

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        let (mut r, mut base, mut e) = (1u64, a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..n).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let f = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = mul(*x, f);
        }
        for r in 0..n {
            if r != rank && rows[r][c] != 0 {
                let m = rows[r][c];
                for j in c..cols {
                    let sub = mul(m, rows[rank][j]);
                    rows[r][j] = (rows[r][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn matmul_mod(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    par::map_collect(Execution::default(), 0..n, |i| {
        let mut row = vec![0u128; n];
        for (k, &x) in a[i].iter().enumerate() {
            if x != 0 {
                for (acc, &y) in row.iter_mut().zip(&b[k]) {
                    *acc = (*acc + x as u128 * y as u128) % p as u128;
                }
            }
        }
        row.into_iter().map(|v| v as u64).collect()
    })
}

/// Algebraic multiplicity of the eigenvalue 0, i.e. `n − rank(M^n)`.
///
/// The rank is taken modulo two large primes and the larger value kept; it can
/// only be underestimated if both primes divide every maximal minor of `M^n`.
pub fn zero_multiplicity(g: &Digraph) -> usize {
    let n = g.n();
    let rank = PRIMES
        .iter()
        .map(|&p| {
            let mut m: Vec<Vec<u64>> = g.adjacency_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect();
            let mut e = 1;
            while e < n {
                m = matmul_mod(&m, &m, p);
                e *= 2;
            }
            rank_mod(m, p)
        })
        .max()
        .unwrap_or(0);
    n - rank
}

/// Eigenvalues of the adjacency matrix and of its symmetric part.
///
/// With `bipartition = Some(m)` the graph must orient `K_{m, n−m}`; with
/// `None` the bipartition is detected when present.
pub fn spectrum(g: &Digraph, bipartition: Option<usize>) -> Result<Spectrum> {
    let n = g.n();
    let detected = complete_bipartition(g).map(|(_, m)| (m, n - m));
    let bipartition = match bipartition {
        None => detected,
        Some(m) => match detected {
            Some((a, b)) if a == m || b == m => Some((m, n - m)),
            _ => return Err(Error::NotCompleteBipartite),
        },
    };
    if n == 0 {
        return Ok(Spectrum { eigenvalues: vec![], symmetrized: vec![], bipartition });
    }
    let a = adjacency(g);
    let scale = a.norm().max(1.0);
    let mut eigenvalues = nonsymmetric_eigenvalues(&a, scale)?;
    // the zero eigenvalue is usually defective, so its floating-point
    // images scatter far beyond the residual; its exact multiplicity fixes them
    let zeros = zero_multiplicity(g);
    eigenvalues.sort_by(|x, y| x.norm().total_cmp(&y.norm()));
    for z in &mut eigenvalues[..zeros] {
        *z = Complex::new(0.0, 0.0);
    }
    eigenvalues.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));

    let s = (&a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(s.clone(), f64::EPSILON, MAX_ITER)
        .ok_or_else(|| Error::ConvergenceFailure("symmetric eigensolver did not converge".into()))?;
    let residual = (&eig.eigenvectors * DMatrix::from_diagonal(&eig.eigenvalues) * eig.eigenvectors.transpose() - &s).norm();
    if !(residual <= RESIDUAL_TOL * scale) {
        return Err(Error::ConvergenceFailure(format!("symmetric residual {residual:e}")));
    }
    let mut symmetrized: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    symmetrized.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum { eigenvalues, symmetrized, bipartition })
}

/// `Σ λ_i^k / k`, the number of closed `k`-walks divided by `k`.
pub fn hom_count_via_spectrum(g: &Digraph, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    let spec = spectrum(g, None)?;
    let sum: Complex<f64> = spec.eigenvalues.iter().map(|z| z.powu(k as u32)).sum();
    let scale = spec.eigenvalues.iter().map(|z| z.norm().powi(k as i32)).sum::<f64>().max(1.0);
    if sum.im.abs() > 1e-6 * scale {
        return Err(Error::ConvergenceFailure(format!("imaginary part {} in trace", sum.im)));
    }
    Ok(sum.re / k as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivePartCheck {
    /// `Σ_{i ≤ ⌊n/2⌋} Re λ_i`.
    pub sum: f64,
    /// `Σ_{i ≤ ⌊n/2⌋} ρ_i`.
    pub symmetric_sum: f64,
    /// `½ √(m (n − m))`.
    pub bound: f64,
    pub ky_fan_holds: bool,
    pub bound_holds: bool,
}

impl PositivePartCheck {
    pub fn holds(&self) -> bool {
        self.ky_fan_holds && self.bound_holds
    }
}

/// Sum of the `⌊n/2⌋` largest real parts, checked against the symmetric part
/// and against `½ √(m (n − m))`.
pub fn positive_real_part_sum(spec: &Spectrum) -> Result<PositivePartCheck> {
    let (m, rest) = spec.bipartition.ok_or(Error::NotCompleteBipartite)?;
    let h = spec.n() / 2;
    let sum: f64 = spec.eigenvalues[..h].iter().map(|z| z.re).sum();
    let symmetric_sum: f64 = spec.symmetrized[..h].iter().sum();
    let bound = 0.5 * ((m * rest) as f64).sqrt();
    let slack = RESIDUAL_TOL * (spec.n() as f64).max(1.0);
    Ok(PositivePartCheck {
        sum,
        symmetric_sum,
        bound,
        ky_fan_holds: sum <= symmetric_sum + slack,
        bound_holds: sum <= bound + slack,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteCycleBound {
    pub count: BigUint,
    /// `2/k · (n/4)^k` as a float, for display.
    pub bound: f64,
    /// `2/k · (½√(m(n−m)))^k`, never above `bound`.
    pub spectral_bound: f64,
    /// Exact comparison `k · 4^k · count ≤ 2 · n^k`.
    pub holds: bool,
}

/// Exact `C_k` count in an orientation of a complete bipartite graph against
/// `2/k · (n/4)^k`. Needs `k ≡ 2 (mod 4)`.
pub fn bipartite_cycle_bound(g: &Digraph, k: usize) -> Result<BipartiteCycleBound> {
    if k % 4 != 2 {
        return Err(Error::PreconditionViolated(format!("k = {k} is not 2 mod 4")));
    }
    let Some((_, m)) = complete_bipartition(g) else {
        return Err(Error::PreconditionViolated("graph is not a complete bipartite orientation".into()));
    };
    let n = g.n();
    let count = count_cycle_copies(g, k);
    let lhs = BigUint::from(k) * Pow::pow(BigUint::from(4u32), k) * &count;
    let rhs = BigUint::from(2u32) * Pow::pow(BigUint::from(n), k);
    let half_root = 0.5 * ((m * (n - m)) as f64).sqrt();
    Ok(BipartiteCycleBound {
        count,
        bound: 2.0 / k as f64 * (n as f64 / 4.0).powi(k as i32),
        spectral_bound: 2.0 / k as f64 * half_root.powi(k as i32),
        holds: lhs <= rhs,
    })
}
