//! Coin-problem representability, gcd chains and the divisor `d` that selects
//! the extremal blow-up, plus the table of known extremal values.

use crate::error::{Error, Result};
use crate::graph::Mode;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// `d_i = gcd(a_1, …, a_i)`.
pub fn gcd_chain(gens: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(gens.len());
    let mut g = 0u64;
    for &a in gens {
        g = g.gcd(&a);
        out.push(g);
    }
    out
}

fn check_gens(gens: &[u64]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if gens.contains(&0) {
        return Err(Error::InvalidParameters("generators must be positive".into()));
    }
    Ok(())
}

/// `a_2 d_1/d_2 + … + a_k d_{k−1}/d_k − Σ a_i`.
pub fn brauer_bound(gens: &[u64]) -> Result<i128> {
    check_gens(gens)?;
    let d = gcd_chain(gens);
    let mut b: i128 = 0;
    for i in 1..gens.len() {
        b += gens[i] as i128 * (d[i - 1] / d[i]) as i128;
    }
    Ok(b - gens.iter().map(|&a| a as i128).sum::<i128>())
}

/// Smallest representable value in each residue class mod `gens[0]`
/// (`u64::MAX` when the class is unreachable).
fn residue_table(gens: &[u64]) -> Vec<u64> {
    let m = gens[0] as usize;
    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((dv, r))) = heap.pop() {
        if dv > dist[r] {
            continue;
        }
        for &a in &gens[1..] {
            let nd = dv.saturating_add(a);
            let nr = (r + (a % m as u64) as usize) % m;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentabilityResult {
    pub representable: bool,
    /// Lexicographically smallest coefficient vector, when one exists.
    pub witness: Option<Vec<u64>>,
    pub brauer_bound: i128,
    pub gcd_chain: Vec<u64>,
}

/// Decides whether `target = Σ x_i a_i` with non-negative integers `x_i`.
pub fn representable(target: u64, gens: &[u64]) -> Result<RepresentabilityResult> {
    check_gens(gens)?;
    // tables[i] answers representability by gens[i..]
    let tables: Vec<Vec<u64>> = (0..gens.len()).map(|i| residue_table(&gens[i..])).collect();
    let can = |i: usize, v: u64| -> bool {
        if i == gens.len() {
            return v == 0;
        }
        let t = &tables[i];
        t[(v % gens[i]) as usize] <= v
    };
    let witness = can(0, target).then(|| {
        let mut rest = target;
        let mut x = Vec::with_capacity(gens.len());
        for (i, &a) in gens.iter().enumerate() {
            let mut xi = 0;
            while !can(i + 1, rest) {
                rest -= a;
                xi += 1;
            }
            x.push(xi);
        }
        x
    });
    Ok(RepresentabilityResult {
        representable: witness.is_some(),
        witness,
        brauer_bound: brauer_bound(gens)?,
        gcd_chain: gcd_chain(gens),
    })
}

/// The divisor `d` selecting the extremal cycle blow-up: the smallest divisor
/// of `k` not dividing `l`, restricted to `d > 2` for oriented graphs.
pub fn smallest_valid_divisor(k: u64, l: u64, mode: Mode) -> Result<u64> {
    let lo = match mode {
        Mode::Oriented => 3,
        Mode::Directed => 1,
    };
    (lo..=k)
        .find(|d| k % d == 0 && l % d != 0)
        .ok_or(Error::NoSuchDivisor { k, ell: l })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Exact,
    Asymptotic,
    Conjectural,
    OpenInterval,
    OrderOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
}

/// A known construction and its leading-term count `coefficient · n^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub construction: String,
    pub coefficient: BigRational,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PredictedValue {
    pub k: u64,
    pub l: u64,
    pub n: u64,
    pub mode: Mode,
    pub regime: Regime,
    /// Name of the result family that applies.
    pub source: &'static str,
    /// Exponent of `n` in the order of magnitude.
    pub power: u32,
    /// Leading coefficient of `n^power`, when known.
    pub coefficient: Option<BigRational>,
    /// Exact extremal number at `n` for the exact regime.
    pub exact: Option<BigUint>,
    /// `[lo, hi]` in units of `C(n, k)` for the open-interval regime.
    pub interval_binomial: Option<(f64, f64)>,
    pub divisor: Option<u64>,
    pub hypotheses: Vec<Hypothesis>,
    pub lower_bound: Option<LowerBound>,
    pub notes: Vec<String>,
}

impl PredictedValue {
    /// `coefficient · n^power` exactly.
    pub fn leading_term(&self) -> Option<BigRational> {
        self.coefficient.as_ref().map(|c| c * BigRational::from_integer(BigInt::from(self.n).pow(self.power)))
    }

    /// Numerical prediction at `n` (interval midpoint for open intervals).
    pub fn value_f64(&self) -> Option<f64> {
        if let Some(e) = &self.exact {
            return e.to_f64();
        }
        if let Some((lo, hi)) = self.interval_binomial {
            let b = binomial(self.n, self.k);
            return Some((lo + hi) / 2.0 * b);
        }
        self.leading_term().and_then(|t| t.to_f64())
    }

    pub fn to_json(&self) -> serde_json::Value {
        use crate::rational::ratio_to_string;
        serde_json::json!({
            "k": self.k,
            "l": self.l,
            "n": self.n,
            "mode": self.mode,
            "regime": self.regime,
            "source": self.source,
            "power": self.power,
            "coefficient": self.coefficient.as_ref().map(ratio_to_string),
            "leading_term": self.leading_term().as_ref().map(ratio_to_string),
            "exact": self.exact.as_ref().map(|e| e.to_string()),
            "interval_binomial": self.interval_binomial.map(|(a, b)| [a, b]),
            "value": self.value_f64(),
            "divisor": self.divisor,
            "hypotheses": self.hypotheses,
            "lower_bound": self.lower_bound.as_ref().map(|b| serde_json::json!({
                "construction": b.construction,
                "coefficient": ratio_to_string(&b.coefficient),
                "power": b.power,
            })),
            "notes": self.notes,
        })
    }
}

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// `1 / (k · d^{k−1})`: the leading coefficient of a balanced `C_d` blow-up.
fn blowup_coefficient(k: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(k) * BigInt::from(d).pow((k - 1) as u32))
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Known value of the maximum number of directed `k`-cycles in an `n`-vertex
/// graph without a directed `l`-cycle.
pub fn predicted_extremal(k: u64, l: u64, n: u64, mode: Mode) -> Result<PredictedValue> {
    if k < 3 || l < 3 || k == l {
        return Err(Error::InvalidParameters(format!("need k, l >= 3 and k != l (got k={k}, l={l})")));
    }
    let divides = l % k == 0;
    let d = smallest_valid_divisor(k, l, mode).ok();
    let long = l >= 2 * (k - 1) * (k - 1);
    let parity = k % 2 == 1 || l % 2 == 0 || d.is_some_and(|d| d <= 4);
    let very_long = l > 33 * k * k;
    let bip = k % 2 == 0 && k % 4 != 0 && l % 2 == 1 && (k % 3 != 0 || l % 3 == 0);

    let mut hypotheses = vec![
        Hypothesis { name: "k does not divide l", holds: !divides },
        Hypothesis { name: "l >= 2(k-1)^2", holds: long },
    ];
    if mode == Mode::Oriented {
        hypotheses.extend([
            Hypothesis { name: "k odd or l even or d <= 4", holds: parity },
            Hypothesis { name: "l > 33k^2", holds: very_long },
            Hypothesis { name: "2 | k, 4 does not divide k, l odd, and (3 does not divide k or 3 | l)", holds: bip },
        ]);
    }

    let lower_bound = match d {
        Some(d) => Some(LowerBound {
            construction: format!("balanced blow-up of C{d}"),
            coefficient: blowup_coefficient(k, d),
            power: k as u32,
        }),
        None if divides => Some(LowerBound {
            construction: format!("blow-up of C{k} with one singleton blob"),
            coefficient: BigRational::new(BigInt::one(), BigInt::from(k - 1).pow((k - 1) as u32)),
            power: (k - 1) as u32,
        }),
        None => None,
    };

    let mut p = PredictedValue {
        k,
        l,
        n,
        mode,
        regime: Regime::OrderOnly,
        source: "order of magnitude",
        power: if divides { (k - 1) as u32 } else { k as u32 },
        coefficient: None,
        exact: None,
        interval_binomial: None,
        divisor: d,
        hypotheses,
        lower_bound,
        notes: Vec::new(),
    };
    let set = |p: &mut PredictedValue, regime, source, power: u64, coef: BigRational| {
        p.regime = regime;
        p.source = source;
        p.power = power as u32;
        p.coefficient = Some(coef);
    };

    if mode == Mode::Directed {
        if !divides && long {
            let d = d.expect("k does not divide l");
            set(&mut p, Regime::Asymptotic, "directed cycle blow-up", k, blowup_coefficient(k, d));
        }
        return Ok(p);
    }

    match (k, l) {
        (3, 4) | (3, 5) => {
            set(&mut p, Regime::Exact, "small case k=3", 3, r(1, 27));
            p.exact = Some(BigUint::from(ceil_div(n, 3)) * ceil_div(n.saturating_sub(1), 3) * ceil_div(n.saturating_sub(2), 3));
        }
        (3, 6) => set(&mut p, Regime::Asymptotic, "sparse case k=3", 2, r(1, 4)),
        (3, l) if l % 3 == 0 => {
            let t = (l / 3) as i64;
            set(&mut p, Regime::Conjectural, "sparse case k=3", 2, r(t - 1, 4));
        }
        (3, _) => set(&mut p, Regime::Asymptotic, "small case k=3", 3, r(1, 27)),
        (4, 3) => {
            set(&mut p, Regime::Asymptotic, "iterated blow-up of C4", 4, r(1, 255));
            p.notes.push("the iterated C4 blow-up recursion f(n) = (n/4)^4 + 4 f(n/4) evaluates to n^4/252".into());
        }
        (4, l) if l % 4 != 0 => set(&mut p, Regime::Asymptotic, "small case k=4", 4, r(1, 256)),
        (5, 3) => set(&mut p, Regime::Asymptotic, "small case k=5", 5, r(1, 512)),
        (5, 4) => {
            p.regime = Regime::OpenInterval;
            p.source = "small case k=5";
            p.power = 5;
            p.interval_binomial = Some((0.0517, 0.0567));
        }
        (5, 7) => set(&mut p, Regime::Asymptotic, "small case k=5", 5, r(27, 50000)),
        (5, l) if l % 5 != 0 => set(&mut p, Regime::Asymptotic, "small case k=5", 5, r(1, 3125)),
        _ if !divides && long && parity => {
            let d = d.expect("k does not divide l");
            set(&mut p, Regime::Asymptotic, "cycle blow-up", k, blowup_coefficient(k, d));
        }
        _ if !divides && very_long && bip => {
            let c = BigRational::new(BigInt::from(2), BigInt::from(k) * BigInt::from(4).pow(k as u32));
            set(&mut p, Regime::Asymptotic, "random bipartite orientation", k, c);
        }
        _ => {}
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(target: u64, gens: &[u64]) -> bool {
        fn rec(t: u64, g: &[u64]) -> bool {
            match g.split_first() {
                None => t == 0,
                Some((&a, rest)) => (0..=t / a).any(|x| rec(t - x * a, rest)),
            }
        }
        rec(target, gens)
    }

    #[test]
    fn representability_examples() {
        let r = representable(7, &[3, 5]).unwrap();
        assert!(!r.representable && r.witness.is_none());
        let r = representable(8, &[3, 5]).unwrap();
        assert_eq!(r.witness, Some(vec![1, 1]));
        let r = representable(20, &[5, 6]).unwrap();
        assert_eq!(r.witness, Some(vec![4, 0]));
        assert_eq!(r.brauer_bound, 19);
        assert_eq!(representable(0, &[4]).unwrap().witness, Some(vec![0]));
        assert!(representable(3, &[]).is_err());
    }

    #[test]
    fn lexicographic_witness() {
        // smallest x_1 first, then x_2, ...
        let r = representable(12, &[2, 3, 6]).unwrap();
        assert_eq!(r.witness, Some(vec![0, 0, 2]));
        let r = representable(13, &[2, 3, 6]).unwrap();
        assert_eq!(r.witness, Some(vec![2, 1, 1]));
    }

    #[test]
    fn brauer_examples() {
        assert_eq!(brauer_bound(&[3, 5]).unwrap(), 7);
        assert_eq!(brauer_bound(&[4, 4]).unwrap(), -4);
        for k in 3..20u64 {
            assert_eq!(brauer_bound(&[k, k + 1]).unwrap(), (k * k - k - 1) as i128);
        }
        assert_eq!(brauer_bound(&[]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn sweep_small() {
        for a in 1..=7u64 {
            for b in a..=7 {
                let gens = [a, b];
                let res: Vec<_> = (0..=60).map(|t| representable(t, &gens).unwrap()).collect();
                for (t, r) in res.iter().enumerate() {
                    assert_eq!(r.representable, brute(t as u64, &gens), "{t} {gens:?}");
                    if let Some(w) = &r.witness {
                        assert_eq!(w.iter().zip(&gens).map(|(x, g)| x * g).sum::<u64>(), t as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn divisors() {
        assert_eq!(smallest_valid_divisor(12, 9, Mode::Oriented), Ok(4));
        assert_eq!(smallest_valid_divisor(6, 9, Mode::Oriented), Ok(6));
        assert_eq!(smallest_valid_divisor(6, 9, Mode::Directed), Ok(2));
        assert!(matches!(smallest_valid_divisor(3, 9, Mode::Oriented), Err(Error::NoSuchDivisor { .. })));
    }

    #[test]
    fn prediction_examples() {
        let p = predicted_extremal(3, 4, 6, Mode::Oriented).unwrap();
        assert_eq!(p.regime, Regime::Exact);
        assert_eq!(p.exact, Some(BigUint::from(8u8)));
        let p = predicted_extremal(5, 7, 10, Mode::Oriented).unwrap();
        assert_eq!(p.regime, Regime::Asymptotic);
        assert_eq!(p.coefficient, Some(r(27, 16) * r(1, 3125)));
        let p = predicted_extremal(5, 4, 10, Mode::Oriented).unwrap();
        assert_eq!(p.regime, Regime::OpenInterval);
        assert_eq!(p.interval_binomial, Some((0.0517, 0.0567)));
        let p = predicted_extremal(5, 13, 10, Mode::Oriented).unwrap();
        assert_eq!(p.coefficient, Some(r(1, 3125)));
        let p = predicted_extremal(3, 9, 10, Mode::Oriented).unwrap();
        assert_eq!(p.regime, Regime::Conjectural);
        assert_eq!(p.coefficient, Some(r(2, 4)));
        let p = predicted_extremal(6, 101, 10, Mode::Oriented).unwrap();
        assert_eq!(p.source, "cycle blow-up");
        assert_eq!(p.divisor, Some(3));
        let p = predicted_extremal(10, 3301, 10, Mode::Oriented).unwrap();
        assert_eq!(p.source, "random bipartite orientation");
        let p = predicted_extremal(4, 9, 8, Mode::Directed).unwrap();
        assert_eq!(p.regime, Regime::OrderOnly);
        assert_eq!(p.lower_bound.unwrap().coefficient, r(1, 32));
        let p = predicted_extremal(4, 19, 8, Mode::Directed).unwrap();
        assert_eq!(p.coefficient, Some(r(1, 32)));
        assert!(predicted_extremal(3, 3, 5, Mode::Oriented).is_err());
    }
}
