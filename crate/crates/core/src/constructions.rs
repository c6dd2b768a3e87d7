//! Named lower-bound constructions with exact copy counts.

use crate::counting::{count_cycle_copies, has_closed_walk, has_cycle_subgraph};
use crate::error::{Error, Result};
use crate::graph::{
    balanced_sizes, blow_up, iterated_blow_up, iterated_blow_up_count, random_bipartite_orientation,
    sizes_from_weights, split_sizes, ArcRule, BlobAssignment, BlobInternal, Digraph, Mode, PatternSpec,
};
use crate::rational::ratio;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

/// Placement of the two large groups in the C5-without-C7 construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum C5c7Variant {
    /// Large groups on consecutive blobs of the 4-cycle.
    #[default]
    Adjacent,
    Opposite,
}

/// Which arcs of the C7-plus-chords skeleton use the threshold rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThresholdPairs {
    /// The seven cycle arcs `i → i+1`; chords stay full.
    #[default]
    Cycle,
    /// The seven chords `i → i+3`; cycle arcs stay full.
    Chords,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConstructionId {
    /// Balanced blow-up of the directed `d`-cycle (`d = 2` gives digons).
    BalancedCycleBlowup { d: usize },
    /// Blow-up of the directed `k`-cycle with one singleton blob.
    SparseSingletonBlowup { k: usize },
    IteratedC4,
    /// Balanced C4 blow-up whose blobs are transitive tournaments.
    C5c3TournamentBlobs,
    /// C4 blow-up with weights (3, 3, 2, 2)/10 and the two large blobs split
    /// into one-way complete bipartite graphs.
    C5c7BipartiteBlobs { variant: C5c7Variant },
    /// A vertex `v` with `v → A → B → v`.
    C3c6Sparse,
    /// Balanced blow-up of C7 plus the chords `i → i+3`.
    C7ChordsBlowup,
    /// [`ConstructionId::C7ChordsBlowup`] with threshold-oriented blob pairs.
    ThresholdC7 { c: f64, pairs: ThresholdPairs },
    RandomBipartite,
    /// Complete balanced bipartite digraph (all cross digons).
    CompleteBipartiteDigraph,
    /// `t − 1` vertices in one blob with `blob → A → B → blob`.
    C3_3tSparse { t: usize },
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionId::*;
        match self {
            BalancedCycleBlowup { d } => write!(f, "balanced_cycle_blowup({d})"),
            SparseSingletonBlowup { k } => write!(f, "sparse_singleton_blowup({k})"),
            IteratedC4 => write!(f, "iterated_c4"),
            C5c3TournamentBlobs => write!(f, "c5c3_tournament_blobs"),
            C5c7BipartiteBlobs { variant: C5c7Variant::Adjacent } => write!(f, "c5c7_bipartite_blobs"),
            C5c7BipartiteBlobs { variant: C5c7Variant::Opposite } => write!(f, "c5c7_bipartite_blobs(opposite)"),
            C3c6Sparse => write!(f, "c3c6_sparse"),
            C7ChordsBlowup => write!(f, "c7_chords_blowup"),
            ThresholdC7 { c, pairs } => match pairs {
                ThresholdPairs::Cycle => write!(f, "threshold_c7({c})"),
                ThresholdPairs::Chords => write!(f, "threshold_c7({c}, chords)"),
                ThresholdPairs::All => write!(f, "threshold_c7({c}, all)"),
            },
            RandomBipartite => write!(f, "random_bipartite"),
            CompleteBipartiteDigraph => write!(f, "complete_bipartite_digraph"),
            C3_3tSparse { t } => write!(f, "c3_3t_sparse({t})"),
        }
    }
}

impl ConstructionId {
    /// Every identifier name accepted by [`ConstructionId::parse`].
    pub const NAMES: [&'static str; 11] = [
        "balanced_cycle_blowup",
        "sparse_singleton_blowup",
        "iterated_c4",
        "c5c3_tournament_blobs",
        "c5c7_bipartite_blobs",
        "c3c6_sparse",
        "c7_chords_blowup",
        "threshold_c7",
        "random_bipartite",
        "complete_bipartite_digraph",
        "c3_3t_sparse",
    ];

    /// Parse a name plus an optional parameter (`d`, `k`, `c`, `t`, or a
    /// variant keyword).
    pub fn parse(name: &str, param: Option<&str>) -> Result<Self> {
        use ConstructionId::*;
        let bad = |what: &str| Error::InvalidParameters(format!("{name}: {what}"));
        let int = |p: Option<&str>| -> Result<usize> {
            p.ok_or_else(|| bad("missing integer parameter"))?
                .parse()
                .map_err(|_| bad("parameter must be an integer"))
        };
        let id = match name {
            "balanced_cycle_blowup" => BalancedCycleBlowup { d: int(param)? },
            "sparse_singleton_blowup" => SparseSingletonBlowup { k: int(param)? },
            "iterated_c4" => IteratedC4,
            "c5c3_tournament_blobs" => C5c3TournamentBlobs,
            "c5c7_bipartite_blobs" => C5c7BipartiteBlobs {
                variant: match param {
                    None | Some("adjacent") => C5c7Variant::Adjacent,
                    Some("opposite") => C5c7Variant::Opposite,
                    Some(_) => return Err(bad("variant must be adjacent or opposite")),
                },
            },
            "c3c6_sparse" => C3c6Sparse,
            "c7_chords_blowup" => C7ChordsBlowup,
            "threshold_c7" => {
                let (c, pairs) = match param {
                    None => (0.67757, ThresholdPairs::Cycle),
                    Some(p) => {
                        let mut it = p.split(',');
                        let c = it.next().unwrap_or("").trim().parse().map_err(|_| bad("c must be a number"))?;
                        let pairs = match it.next().map(str::trim) {
                            None | Some("cycle") => ThresholdPairs::Cycle,
                            Some("chords") => ThresholdPairs::Chords,
                            Some("all") => ThresholdPairs::All,
                            Some(_) => return Err(bad("pair set must be cycle, chords or all")),
                        };
                        (c, pairs)
                    }
                };
                ThresholdC7 { c, pairs }
            }
            "random_bipartite" => RandomBipartite,
            "complete_bipartite_digraph" => CompleteBipartiteDigraph,
            "c3_3t_sparse" => C3_3tSparse { t: int(param)? },
            _ => return Err(Error::InvalidParameters(format!("unknown construction {name}"))),
        };
        id.validate()?;
        Ok(id)
    }

    pub fn validate(&self) -> Result<()> {
        use ConstructionId::*;
        let bad = |m: String| Err(Error::InvalidParameters(m));
        match *self {
            BalancedCycleBlowup { d } if d < 2 => bad(format!("cycle length {d} < 2")),
            SparseSingletonBlowup { k } if k < 3 => bad(format!("cycle length {k} < 3")),
            ThresholdC7 { c, .. } if !(0.0..=1.0).contains(&c) => bad(format!("threshold {c} outside [0, 1]")),
            C3_3tSparse { t } if t < 2 => bad(format!("t = {t} < 2")),
            _ => Ok(()),
        }
    }

    /// Graph mode of the generated graphs.
    pub fn mode(&self) -> Mode {
        match self {
            ConstructionId::BalancedCycleBlowup { d: 2 } | ConstructionId::CompleteBipartiteDigraph => Mode::Directed,
            _ => Mode::Oriented,
        }
    }

    /// Smallest admissible vertex count.
    pub fn n_min(&self) -> usize {
        use ConstructionId::*;
        match *self {
            BalancedCycleBlowup { d } => d,
            SparseSingletonBlowup { k } => k,
            IteratedC4 | C5c3TournamentBlobs => 4,
            // both large groups need two parts
            C5c7BipartiteBlobs { .. } => 6,
            C3c6Sparse => 3,
            C7ChordsBlowup | ThresholdC7 { .. } => 7,
            RandomBipartite | CompleteBipartiteDigraph => 2,
            C3_3tSparse { t } => t + 1,
        }
    }

    /// The cycle length the construction is designed to maximize.
    pub fn target_k(&self) -> usize {
        use ConstructionId::*;
        match *self {
            BalancedCycleBlowup { d } => d,
            SparseSingletonBlowup { k } => k,
            IteratedC4 => 4,
            C5c3TournamentBlobs | C5c7BipartiteBlobs { .. } | C7ChordsBlowup | ThresholdC7 { .. } => 5,
            C3c6Sparse | C3_3tSparse { .. } => 3,
            RandomBipartite => 6,
            CompleteBipartiteDigraph => 4,
        }
    }

    /// Blueprint and blob sizes at `n`, for the ids realized as a single
    /// blow-up.
    pub fn realization(&self, n: usize) -> Result<Option<(PatternSpec, BlobAssignment)>> {
        use ConstructionId::*;
        self.validate()?;
        if n < self.n_min() {
            return Err(Error::TooSmall { n_min: self.n_min() });
        }
        let r = match *self {
            BalancedCycleBlowup { d } => {
                (PatternSpec::uniform(Digraph::directed_cycle(d)), BlobAssignment::new(balanced_sizes(d, n)))
            }
            SparseSingletonBlowup { k } => {
                let mut sizes = vec![1];
                sizes.extend(balanced_sizes(k - 1, n - 1));
                (PatternSpec::uniform(Digraph::directed_cycle(k)), BlobAssignment::new(sizes))
            }
            C5c3TournamentBlobs => {
                let mut p = PatternSpec::uniform(Digraph::directed_cycle(4));
                for b in 0..4 {
                    p = p.with_internal(b, BlobInternal::TransitiveTournament)?;
                }
                (p, BlobAssignment::new(balanced_sizes(4, n)))
            }
            C5c7BipartiteBlobs { variant } => {
                let p = c5c7_pattern(variant);
                let sizes = sizes_from_weights(p.weights(), n);
                (p, BlobAssignment::new(sizes))
            }
            C3c6Sparse => sparse_triangle(1, n),
            C3_3tSparse { t } => sparse_triangle(t - 1, n),
            C7ChordsBlowup => (PatternSpec::uniform(c7_chords_base()), BlobAssignment::new(balanced_sizes(7, n))),
            ThresholdC7 { c, pairs } => {
                (threshold_c7_pattern(c, pairs)?, BlobAssignment::equispaced(balanced_sizes(7, n)))
            }
            CompleteBipartiteDigraph => {
                (PatternSpec::uniform(Digraph::directed_cycle(2)), BlobAssignment::new(balanced_sizes(2, n)))
            }
            IteratedC4 | RandomBipartite => return Ok(None),
        };
        Ok(Some(r))
    }
}

fn sparse_triangle(fixed: usize, n: usize) -> (PatternSpec, BlobAssignment) {
    let rest = n - fixed;
    let sizes = vec![fixed, rest.div_ceil(2), rest / 2];
    (PatternSpec::uniform(Digraph::directed_cycle(3)), BlobAssignment::new(sizes))
}

/// C7 (`i → i+1`) plus the chords `i → i+3`.
pub fn c7_chords_base() -> Digraph {
    let mut arcs: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    arcs.extend((0..7).map(|i| (i, (i + 3) % 7)));
    let g = Digraph::new(7, &arcs, Mode::Oriented).expect("C7 with chords is oriented");
    for i in 0..7 {
        // the chord closes a C5 with the four cycle arcs from i+3 back to i
        let closes = (3..7).all(|s| g.has_arc((i + s) % 7, (i + s + 1) % 7));
        assert!(closes && g.has_arc(i, (i + 3) % 7), "chord {i} does not close a 5-cycle");
    }
    g
}

/// The C5-without-C7 blueprint with its optimal weights.
pub fn c5c7_pattern(variant: C5c7Variant) -> PatternSpec {
    let (big, small) = (ratio(3, 10), ratio(1, 5));
    let (weights, large) = match variant {
        C5c7Variant::Adjacent => (vec![big.clone(), big, small.clone(), small], [0, 1]),
        C5c7Variant::Opposite => (vec![big.clone(), small.clone(), big, small], [0, 2]),
    };
    let mut p = PatternSpec::uniform(Digraph::directed_cycle(4)).with_weights(weights).expect("weights sum to 1");
    for b in large {
        p = p.with_internal(b, BlobInternal::OneWayBipartite { split: ratio(1, 2) }).expect("valid split");
    }
    p
}

/// The C7-plus-chords blueprint with threshold rules on the chosen arcs.
pub fn threshold_c7_pattern(c: f64, pairs: ThresholdPairs) -> Result<PatternSpec> {
    let mut p = PatternSpec::uniform(c7_chords_base());
    for i in 0..7 {
        let cycle = (i, (i + 1) % 7);
        let chord = (i, (i + 3) % 7);
        if matches!(pairs, ThresholdPairs::Cycle | ThresholdPairs::All) {
            p = p.with_rule(cycle, ArcRule::Threshold { c })?;
        }
        if matches!(pairs, ThresholdPairs::Chords | ThresholdPairs::All) {
            p = p.with_rule(chord, ArcRule::Threshold { c })?;
        }
    }
    Ok(p)
}

/// Build the construction on `n` vertices. `seed` is used only by the random
/// construction.
pub fn generate(id: &ConstructionId, n: usize, seed: u64) -> Result<Digraph> {
    match id {
        ConstructionId::IteratedC4 => {
            id.validate()?;
            if n < id.n_min() {
                return Err(Error::TooSmall { n_min: id.n_min() });
            }
            Ok(iterated_blow_up(&Digraph::directed_cycle(4), n))
        }
        ConstructionId::RandomBipartite => {
            if n < id.n_min() {
                return Err(Error::TooSmall { n_min: id.n_min() });
            }
            Ok(random_bipartite_orientation(n, seed))
        }
        _ => {
            let (p, a) = id.realization(n)?.expect("pattern-based construction");
            blow_up(&p, &a)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    /// The exact count in the generated graph.
    Exact,
    /// Expected count over the random construction.
    Expectation,
    /// Target limit constant, not a finite-n count.
    Limit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub value: BigRational,
    pub kind: CountKind,
}

impl ClosedForm {
    fn exact(v: BigUint) -> Self {
        ClosedForm { value: BigRational::from_integer(BigInt::from(v)), kind: CountKind::Exact }
    }

    /// The value as an integer, for exact counts.
    pub fn as_integer(&self) -> Option<BigUint> {
        (self.kind == CountKind::Exact && self.value.is_integer())
            .then(|| self.value.to_integer().to_biguint())
            .flatten()
    }
}

fn falling(a: usize, r: usize) -> BigUint {
    (0..r).fold(BigUint::one(), |acc, i| if i < a { acc * BigUint::from(a - i) } else { BigUint::zero() })
}

fn product(xs: impl IntoIterator<Item = usize>) -> BigUint {
    xs.into_iter().map(BigUint::from).product()
}

fn binom2(a: usize) -> BigUint {
    BigUint::from(a * a.saturating_sub(1) / 2)
}

/// `k`-cycles in a blow-up of the directed `d`-cycle with independent blobs
/// of the given sizes: every copy winds `k/d` times around.
fn cycle_blowup_count(sizes: &[usize], k: usize) -> BigUint {
    let d = sizes.len();
    if k % d != 0 {
        return BigUint::zero();
    }
    let r = k / d;
    let walks: BigUint = sizes.iter().map(|&a| falling(a, r)).product();
    walks / BigUint::from(r)
}

/// Exact number of directed `k`-cycles in `generate(id, n, ·)`, or the target
/// expectation or limit for the random and threshold constructions.
pub fn closed_form_count(id: &ConstructionId, n: usize, k: usize) -> Result<ClosedForm> {
    use ConstructionId::*;
    id.validate()?;
    if n < id.n_min() {
        return Err(Error::TooSmall { n_min: id.n_min() });
    }
    let none = || Err(Error::NoClosedForm(format!("{id} has no closed form for k = {k}")));
    if k < 2 {
        return Ok(ClosedForm::exact(BigUint::zero()));
    }
    let sizes = || -> Vec<usize> { id.realization(n).expect("validated").expect("pattern-based").1.sizes().to_vec() };
    let v = match *id {
        BalancedCycleBlowup { .. }
        | CompleteBipartiteDigraph
        | SparseSingletonBlowup { .. }
        | C3c6Sparse
        | C3_3tSparse { .. } => cycle_blowup_count(&sizes(), k),
        C7ChordsBlowup => {
            // the only closed 5-walks of the skeleton use one chord and four cycle arcs
            if k != 5 {
                return none();
            }
            let s = sizes();
            (0..7).map(|i| product([0, 3, 4, 5, 6].map(|o| s[(i + o) % 7]))).sum()
        }
        IteratedC4 => {
            if k != 4 {
                return none();
            }
            iterated_blow_up_count(4, n)
        }
        C5c3TournamentBlobs => {
            // one lap around the 4-cycle plus k − 4 steps inside the acyclic blobs
            let s = sizes();
            match k {
                2 | 3 => BigUint::zero(),
                4 => product(s.iter().copied()),
                5 => (0..4)
                    .map(|i| binom2(s[i]) * product((0..4).filter(|&j| j != i).map(|j| s[j])))
                    .sum(),
                _ => return none(),
            }
        }
        C5c7BipartiteBlobs { .. } => {
            let (p, a) = id.realization(n)?.expect("pattern-based");
            let s = a.sizes();
            // internal arcs exist only in the split blobs, at most one per visit
            let inner: Vec<Option<BigUint>> = p
                .internal()
                .iter()
                .zip(s)
                .map(|(b, &size)| match b {
                    BlobInternal::OneWayBipartite { split } => {
                        let (h1, h2) = split_sizes(size, split);
                        Some(BigUint::from(h1 * h2))
                    }
                    _ => None,
                })
                .collect();
            let full = |i: usize| BigUint::from(s[i]);
            match k {
                2 | 3 => BigUint::zero(),
                4 => product(s.iter().copied()),
                5 => (0..4)
                    .filter_map(|i| {
                        inner[i].as_ref().map(|h| h * (0..4).filter(|&j| j != i).map(full).product::<BigUint>())
                    })
                    .sum(),
                6 => (0..4).map(|i| inner[i].clone().unwrap_or_else(|| full(i))).product(),
                7 => BigUint::zero(),
                _ => return none(),
            }
        }
        ThresholdC7 { .. } => {
            if k != 5 {
                return none();
            }
            let binom = falling(n, 5) / BigUint::from(120u32);
            return Ok(ClosedForm {
                value: ratio(517, 10000) * BigRational::from_integer(BigInt::from(binom)),
                kind: CountKind::Limit,
            });
        }
        RandomBipartite => {
            // (a)_r (b)_r / 2r undirected k-cycles, each directed with probability 2 · 2^-k
            let value = if k % 2 == 1 {
                BigRational::zero()
            } else {
                let r = k / 2;
                let num = falling(n.div_ceil(2), r) * falling(n / 2, r);
                let den = BigUint::from(r) << k;
                BigRational::new(BigInt::from(num), BigInt::from(den))
            };
            return Ok(ClosedForm { value, kind: CountKind::Expectation });
        }
    };
    Ok(ClosedForm::exact(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessEntry {
    pub l: usize,
    pub has_cycle_subgraph: bool,
    pub has_closed_walk: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub construction: String,
    pub n: usize,
    pub entries: Vec<FreenessEntry>,
    /// No listed cycle occurs as a subgraph.
    pub pass: bool,
}

pub fn verify_freeness(id: &ConstructionId, n: usize, forbidden: &[usize], seed: u64) -> Result<FreenessReport> {
    let g = generate(id, n, seed)?;
    let entries: Vec<FreenessEntry> = forbidden
        .iter()
        .map(|&l| FreenessEntry { l, has_cycle_subgraph: has_cycle_subgraph(&g, l), has_closed_walk: has_closed_walk(&g, l) })
        .collect();
    Ok(FreenessReport {
        construction: id.to_string(),
        n,
        pass: entries.iter().all(|e| !e.has_cycle_subgraph),
        entries,
    })
}

/// Generated count compared with the closed form, for exact closed forms.
pub fn check_closed_form(id: &ConstructionId, n: usize, k: usize, seed: u64) -> Result<(BigUint, ClosedForm)> {
    let g = generate(id, n, seed)?;
    Ok((count_cycle_copies(&g, k), closed_form_count(id, n, k)?))
}

#[cfg(test)]
mod tests;
