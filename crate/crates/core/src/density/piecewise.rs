//! Piecewise polynomials on `[0, 1]`, used to integrate kernel chains.

/// Pieces `[breaks[i], breaks[i+1]]` carrying polynomials in the global
/// variable (coefficients in increasing degree).
#[derive(Clone, Debug)]
pub(crate) struct Piecewise {
    breaks: Vec<f64>,
    polys: Vec<Vec<f64>>,
}

fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn poly_integral(p: &[f64]) -> Vec<f64> {
    let mut q = vec![0.0; p.len() + 1];
    for (i, &a) in p.iter().enumerate() {
        q[i + 1] = a / (i + 1) as f64;
    }
    q
}

/// `p(x + s)`.
fn poly_shift(p: &[f64], s: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    for (i, &a) in p.iter().enumerate() {
        // (x + s)^i = Σ C(i, j) s^(i−j) x^j
        let mut binom = 1.0;
        for j in (0..=i).rev() {
            out[j] += a * binom * s.powi((i - j) as i32);
            binom = binom * j as f64 / (i - j + 1) as f64;
        }
    }
    out
}

impl Piecewise {
    pub(crate) fn constant(c: f64) -> Self {
        Piecewise { breaks: vec![0.0, 1.0], polys: vec![vec![c]] }
    }

    fn from_pieces(mut pieces: Vec<(f64, f64, Vec<f64>)>) -> Self {
        pieces.retain(|(a, b, _)| b > a);
        if pieces.is_empty() {
            return Piecewise::constant(0.0);
        }
        let mut breaks = vec![pieces[0].0];
        let mut polys = Vec::with_capacity(pieces.len());
        for (_, b, p) in pieces {
            breaks.push(b);
            polys.push(p);
        }
        Piecewise { breaks, polys }
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        let i = self.breaks[1..self.breaks.len() - 1].partition_point(|&b| b <= x);
        poly_eval(&self.polys[i], x)
    }

    /// Continuous antiderivative vanishing at 0.
    fn antiderivative(&self) -> Piecewise {
        let mut acc = 0.0;
        let mut polys = Vec::with_capacity(self.polys.len());
        for (i, p) in self.polys.iter().enumerate() {
            let mut q = poly_integral(p);
            let a = self.breaks[i];
            q[0] += acc - poly_eval(&q, a);
            acc = poly_eval(&q, self.breaks[i + 1]);
            polys.push(q);
        }
        Piecewise { breaks: self.breaks.clone(), polys }
    }

    pub(crate) fn integral(&self) -> f64 {
        let big = self.antiderivative();
        poly_eval(big.polys.last().expect("non-empty"), 1.0)
    }

    /// The antiderivative restricted to `[lo, hi]` and reparametrized as
    /// `y ↦ Φ(y + s)` on `[lo − s, hi − s]`, negated and offset by `total`.
    fn shifted_tail(phi: &Piecewise, lo: f64, hi: f64, s: f64, total: f64) -> Vec<(f64, f64, Vec<f64>)> {
        let mut out = Vec::new();
        for i in 0..phi.polys.len() {
            let a = phi.breaks[i].max(lo);
            let b = phi.breaks[i + 1].min(hi);
            if b <= a {
                continue;
            }
            let mut q: Vec<f64> = poly_shift(&phi.polys[i], s).into_iter().map(|x| -x).collect();
            q[0] += total;
            out.push((a - s, b - s, q));
        }
        out
    }

    /// `ψ(y) = ∫ φ(x) [y ≤ x + c] dx`.
    pub(crate) fn forward(&self, c: f64) -> Piecewise {
        let phi = self.antiderivative();
        let total = poly_eval(phi.polys.last().unwrap(), 1.0);
        if c >= 1.0 {
            return Piecewise::constant(total);
        }
        let mut pieces = vec![(0.0, c, vec![total])];
        // y > c: total − Φ(y − c), with y − c ranging over [0, 1 − c]
        pieces.extend(Self::shifted_tail(&phi, 0.0, 1.0 - c, -c, total));
        Piecewise::from_pieces(pieces)
    }

    /// `ψ(y) = ∫ φ(x) [y < x − c] dx`.
    pub(crate) fn backward(&self, c: f64) -> Piecewise {
        let phi = self.antiderivative();
        let total = poly_eval(phi.polys.last().unwrap(), 1.0);
        if c >= 1.0 {
            return Piecewise::constant(0.0);
        }
        // y < 1 − c: total − Φ(y + c), with y + c ranging over [c, 1]
        let mut pieces = Self::shifted_tail(&phi, c, 1.0, c, total);
        pieces.push((1.0 - c, 1.0, vec![0.0]));
        Piecewise::from_pieces(pieces)
    }

    /// `ψ(y) = ∫ φ(x) [x < y] dx`.
    pub(crate) fn less(&self) -> Piecewise {
        self.antiderivative()
    }

    /// `ψ(y) = [y ≥ s] ∫ φ(x) [x < s] dx`.
    pub(crate) fn split(&self, s: f64) -> Piecewise {
        let phi = self.antiderivative();
        let mass = phi.eval(s);
        Piecewise::from_pieces(vec![(0.0, s, vec![0.0]), (s, 1.0, vec![mass])])
    }
}
