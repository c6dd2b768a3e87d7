//! Extremal values at small `n`: exhaustive enumeration of every graph on
//! `n ≤ 6` vertices and a seeded annealing search for lower bounds beyond.

use crate::counting::{count_cycle_copies, has_cycle_subgraph, has_transitive_triangle};
use crate::error::{Error, Result};
use crate::graph::{iterated_blow_up_count, write_graph, Digraph, Mode};
use crate::numtheory::predicted_extremal;
use crate::par::{self, Execution};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Largest `n` accepted by [`exhaustive_extremal`].
pub const EXHAUSTIVE_MAX_N: usize = 6;
/// Largest `n` accepted by [`local_search_extremal`].
pub const LOCAL_MAX_N: usize = 64;
const CANONICAL_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Forbidden {
    Cycle(usize),
    TransitiveTriangle,
}

impl fmt::Display for Forbidden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Forbidden::Cycle(l) => write!(f, "C{l}"),
            Forbidden::TransitiveTriangle => f.write_str("TT3"),
        }
    }
}

impl FromStr for Forbidden {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("tt3") || t.eq_ignore_ascii_case("transitive_triangle") {
            return Ok(Forbidden::TransitiveTriangle);
        }
        match t.strip_prefix(['C', 'c']).and_then(|r| r.parse::<usize>().ok()) {
            Some(l) if l >= 2 => Ok(Forbidden::Cycle(l)),
            _ => Err(Error::InvalidParameters(format!("unknown forbidden pattern {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    LocalSearch,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub k: usize,
    pub forbidden: Vec<Forbidden>,
    pub mode: Mode,
    pub max_copies: BigUint,
    /// Graphs attaining `max_copies`, canonically labelled when `n ≤ 8`.
    pub witnesses: Vec<Digraph>,
    pub method: Method,
    /// Leaves visited (exhaustive) or moves proposed (local search).
    pub search_budget: u64,
}

impl ExtremalRecord {
    /// Local search only certifies a lower bound.
    pub fn is_lower_bound_only(&self) -> bool {
        self.method == Method::LocalSearch
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "forbidden": self.forbidden.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "mode": self.mode,
            "max_copies": self.max_copies.to_string(),
            "witnesses": self.witnesses.iter().map(write_graph).collect::<Vec<_>>(),
            "method": match self.method {
                Method::Exhaustive => "exhaustive",
                Method::LocalSearch => "local_search",
            },
            "lower_bound_only": self.is_lower_bound_only(),
            "search_budget": self.search_budget,
        })
    }
}

/// Adjacency as bit masks, for `n ≤ 64`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Masks {
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Masks {
    fn new(n: usize) -> Self {
        Masks { out: vec![0; n], inn: vec![0; n] }
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    fn add(&mut self, u: usize, v: usize) {
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.out[u] &= !(1 << v);
        self.inn[v] &= !(1 << u);
    }

    fn paths(&self, cur: usize, target: usize, steps: usize, used: u64, stop_at_one: bool) -> u128 {
        if steps == 1 {
            return (self.out[cur] >> target & 1) as u128;
        }
        let mut cand = self.out[cur] & !used & !(1 << target);
        let mut total = 0;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            total += self.paths(w, target, steps - 1, used | 1 << w, stop_at_one);
            if stop_at_one && total > 0 {
                return total;
            }
        }
        total
    }

    /// Simple `len`-cycles using the (present) arc `u → v`.
    fn cycles_through(&self, u: usize, v: usize, len: usize) -> u128 {
        if len < 2 || len > self.out.len() {
            return 0;
        }
        self.paths(v, u, len - 1, 1 << u | 1 << v, false)
    }

    fn has_cycle_through(&self, u: usize, v: usize, len: usize) -> bool {
        len >= 2 && len <= self.out.len() && self.paths(v, u, len - 1, 1 << u | 1 << v, true) > 0
    }

    fn has_tt3_through(&self, u: usize, v: usize) -> bool {
        // u→v as the first, second or long arc of a→b→c, a→c
        self.out[v] & self.out[u] != 0 || self.inn[u] & self.inn[v] != 0 || self.out[u] & self.inn[v] != 0
    }

    fn creates_forbidden(&self, u: usize, v: usize, forbidden: &[Forbidden]) -> bool {
        forbidden.iter().any(|f| match *f {
            Forbidden::Cycle(l) => self.has_cycle_through(u, v, l),
            Forbidden::TransitiveTriangle => self.has_tt3_through(u, v),
        })
    }

    fn to_digraph(&self, mode: Mode) -> Digraph {
        let n = self.out.len();
        let arcs: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| self.out[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
        Digraph::new(n, &arcs, mode).expect("search graphs respect the mode")
    }
}

/// Pair state: bit 0 is `u → v`, bit 1 is `v → u`.
fn states(mode: Mode) -> &'static [u8] {
    match mode {
        Mode::Oriented => &[0, 1, 2],
        Mode::Directed => &[0, 1, 2, 3],
    }
}

fn arcs_of(state: u8, (u, v): (usize, usize)) -> impl Iterator<Item = (usize, usize)> {
    [(state & 1 == 1).then_some((u, v)), (state & 2 == 2).then_some((v, u))].into_iter().flatten()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Lexicographically smallest row-major adjacency string over all
/// relabellings, packed most significant bit first.
fn canonical_code(m: &Masks, perms: &[Vec<usize>]) -> u128 {
    let n = m.out.len();
    perms
        .iter()
        .map(|p| {
            let mut code = 0u128;
            for u in 0..n {
                let mut row = m.out[u];
                while row != 0 {
                    let v = row.trailing_zeros() as usize;
                    row &= row - 1;
                    code |= 1 << (n * n - 1 - (p[u] * n + p[v]));
                }
            }
            code
        })
        .min()
        .unwrap_or(0)
}

fn from_code(code: u128, n: usize, mode: Mode) -> Digraph {
    let arcs: Vec<_> = (0..n * n).filter(|&b| code >> (n * n - 1 - b) & 1 == 1).map(|b| (b / n, b % n)).collect();
    Digraph::new(n, &arcs, mode).expect("canonical code decodes to a valid graph")
}

fn verify_witness(g: &Digraph, k: usize, forbidden: &[Forbidden], copies: &BigUint) {
    assert_eq!(&count_cycle_copies(g, k), copies, "witness count disagrees with the counting module");
    for f in forbidden {
        let present = match *f {
            Forbidden::Cycle(l) => has_cycle_subgraph(g, l),
            Forbidden::TransitiveTriangle => has_transitive_triangle(g),
        };
        assert!(!present, "witness contains forbidden {f}");
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustiveOptions {
    pub execution: Execution,
    /// Visit vertex pairs in a seeded random order instead of lexicographic.
    pub shuffle_seed: Option<u64>,
    pub max_witnesses: usize,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions { execution: Execution::default(), shuffle_seed: None, max_witnesses: 4 }
    }
}

#[derive(Clone, Debug, Default)]
struct Best {
    max: Option<u128>,
    codes: BTreeSet<u128>,
    leaves: u64,
}

impl Best {
    fn offer(&mut self, count: u128, code: impl FnOnce() -> u128, limit: usize) {
        match self.max {
            Some(m) if count < m => return,
            Some(m) if count > m => self.codes.clear(),
            _ => {}
        }
        self.max = Some(count);
        self.codes.insert(code());
        while self.codes.len() > limit {
            self.codes.pop_last();
        }
    }

    fn merge(mut self, other: Best, limit: usize) -> Best {
        self.leaves += other.leaves;
        match (self.max, other.max) {
            (_, None) => self,
            (None, _) => Best { leaves: self.leaves, ..other },
            (Some(a), Some(b)) if b > a => Best { leaves: self.leaves, ..other },
            (Some(a), Some(b)) if b < a => self,
            _ => {
                self.codes.extend(other.codes);
                while self.codes.len() > limit {
                    self.codes.pop_last();
                }
                self
            }
        }
    }
}

struct Exhaustive<'a> {
    k: usize,
    forbidden: &'a [Forbidden],
    states: &'static [u8],
    pairs: Vec<(usize, usize)>,
    perms: Vec<Vec<usize>>,
    limit: usize,
}

impl Exhaustive<'_> {
    /// Applies `state` to `pair`; `None` if a forbidden pattern appears.
    fn apply(&self, m: &mut Masks, pair: (usize, usize), state: u8) -> Option<u128> {
        let mut gained = 0;
        for (a, b) in arcs_of(state, pair) {
            m.add(a, b);
            if m.creates_forbidden(a, b, self.forbidden) {
                return None;
            }
            gained += m.cycles_through(a, b, self.k);
        }
        Some(gained)
    }

    /// Adding any single missing arc would create a forbidden pattern.
    fn is_maximal(&self, m: &mut Masks, assignment: &[u8]) -> bool {
        self.pairs.iter().zip(assignment).all(|(&(u, v), &s)| {
            let missing = [(s & 1 == 0).then_some((u, v)), (s & 2 == 0).then_some((v, u))];
            missing.into_iter().flatten().all(|(a, b)| {
                if s != 0 && !self.states.contains(&3) {
                    return true;
                }
                m.add(a, b);
                let blocked = m.creates_forbidden(a, b, self.forbidden);
                m.remove(a, b);
                blocked
            })
        })
    }

    fn dfs(&self, m: &mut Masks, assignment: &mut Vec<u8>, count: u128, best: &mut Best) {
        let depth = assignment.len();
        if depth == self.pairs.len() {
            best.leaves += 1;
            if best.max.is_some_and(|b| count < b) || !self.is_maximal(m, assignment) {
                return;
            }
            best.offer(count, || canonical_code(m, &self.perms), self.limit);
            return;
        }
        let pair = self.pairs[depth];
        for &s in self.states {
            let saved = m.clone();
            if let Some(gained) = self.apply(m, pair, s) {
                assignment.push(s);
                self.dfs(m, assignment, count + gained, best);
                assignment.pop();
            }
            *m = saved;
        }
    }
}

/// Exact maximum number of `C_k` copies over all graphs on `n ≤ 6` vertices
/// avoiding every pattern in `forbidden`.
pub fn exhaustive_extremal(n: usize, k: usize, forbidden: &[Forbidden], mode: Mode) -> Result<ExtremalRecord> {
    exhaustive_extremal_with(n, k, forbidden, mode, &ExhaustiveOptions::default())
}

pub fn exhaustive_extremal_with(
    n: usize,
    k: usize,
    forbidden: &[Forbidden],
    mode: Mode,
    opts: &ExhaustiveOptions,
) -> Result<ExtremalRecord> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge { n, max: EXHAUSTIVE_MAX_N });
    }
    if k < 2 {
        return Err(Error::InvalidParameters("k must be at least 2".into()));
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if let Some(seed) = opts.shuffle_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..pairs.len()).rev() {
            pairs.swap(i, rng.random_range(0..=i));
        }
    }
    let mut forbidden = forbidden.to_vec();
    forbidden.sort();
    forbidden.dedup();
    let search = Exhaustive {
        k,
        forbidden: &forbidden,
        states: states(mode),
        pairs,
        perms: permutations(n),
        limit: opts.max_witnesses.max(1),
    };

    // split the tree at a prefix of pair states and search the parts in parallel
    let base = search.states.len();
    let mut depth = 0;
    while depth < search.pairs.len() && base.pow(depth as u32) < 256 {
        depth += 1;
    }
    let prefixes = base.pow(depth as u32);
    let limit = search.limit;
    let best = par::map_reduce(
        opts.execution,
        0..prefixes,
        |idx| {
            let mut best = Best::default();
            let mut m = Masks::new(n);
            let mut assignment = Vec::with_capacity(search.pairs.len());
            let mut count = 0;
            let mut rest = idx;
            for d in 0..depth {
                let s = search.states[rest % base];
                rest /= base;
                match search.apply(&mut m, search.pairs[d], s) {
                    Some(g) => count += g,
                    None => return best,
                }
                assignment.push(s);
            }
            search.dfs(&mut m, &mut assignment, count, &mut best);
            best
        },
        Best::default,
        |a, b| a.merge(b, limit),
    );

    // the empty graph is always admissible, so some leaf is maximal
    let max = BigUint::from(best.max.unwrap_or(0));
    let witnesses: Vec<Digraph> = best.codes.iter().map(|&c| from_code(c, n, mode)).collect();
    for w in &witnesses {
        verify_witness(w, k, &forbidden, &max);
    }
    Ok(ExtremalRecord {
        n,
        k,
        forbidden,
        mode,
        max_copies: max,
        witnesses,
        method: Method::Exhaustive,
        search_budget: best.leaves,
    })
}

/// Simulated annealing over pair states. The result is a lower bound.
///
/// Moves change one pair's state and are rejected outright when they create
/// a forbidden pattern. The temperature decays geometrically; after a long
/// stretch without improvement the walk restarts from the best state found.
pub fn local_search_extremal(
    n: usize,
    k: usize,
    forbidden: &[Forbidden],
    mode: Mode,
    budget: u64,
    seed: u64,
) -> Result<ExtremalRecord> {
    if n > LOCAL_MAX_N {
        return Err(Error::TooLarge { n, max: LOCAL_MAX_N });
    }
    if k < 2 {
        return Err(Error::InvalidParameters("k must be at least 2".into()));
    }
    let mut forbidden = forbidden.to_vec();
    forbidden.sort();
    forbidden.dedup();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let allowed = states(mode);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Masks::new(n);
    let mut state = vec![0u8; pairs.len()];
    let mut count: i128 = 0;
    let mut best = (0i128, m.clone());

    let t0 = 1.0f64;
    let t_min = 0.02f64;
    let stage = (budget / 8).max(1);
    let alpha = (t_min / t0).powf(1.0 / stage as f64);
    let mut temp = t0;
    let mut since_best = 0u64;

    for _ in 0..if pairs.is_empty() { 0 } else { budget } {
        let i = rng.random_range(0..pairs.len());
        let pair = pairs[i];
        let old = state[i];
        // pair states are 0..len, so skipping `old` gives a uniform other state
        let r = rng.random_range(0..allowed.len() as u8 - 1);
        let new = if r >= old { r + 1 } else { r };
        let mut delta: i128 = 0;
        for (a, b) in arcs_of(old & !new, pair) {
            delta -= m.cycles_through(a, b, k) as i128;
            m.remove(a, b);
        }
        let mut ok = true;
        let mut added = Vec::new();
        for (a, b) in arcs_of(new & !old, pair) {
            m.add(a, b);
            added.push((a, b));
            if m.creates_forbidden(a, b, &forbidden) {
                ok = false;
                break;
            }
            delta += m.cycles_through(a, b, k) as i128;
        }
        let accept = ok && (delta >= 0 || rng.random::<f64>() < (delta as f64 / temp).exp());
        if accept {
            state[i] = new;
            count += delta;
            if count > best.0 {
                best = (count, m.clone());
                since_best = 0;
            }
        } else {
            for (a, b) in added {
                m.remove(a, b);
            }
            for (a, b) in arcs_of(old & !new, pair) {
                m.add(a, b);
            }
        }
        since_best += 1;
        temp = (temp * alpha).max(t_min);
        if since_best > stage {
            m = best.1.clone();
            count = best.0;
            for (s, &(u, v)) in state.iter_mut().zip(&pairs) {
                *s = m.has(u, v) as u8 | (m.has(v, u) as u8) << 1;
            }
            temp = t0;
            since_best = 0;
        }
    }

    let max = BigUint::from(best.0 as u128);
    let witness = if n <= CANONICAL_MAX_N {
        from_code(canonical_code(&best.1, &permutations(n)), n, mode)
    } else {
        best.1.to_digraph(mode)
    };
    verify_witness(&witness, k, &forbidden, &max);
    Ok(ExtremalRecord {
        n,
        k,
        forbidden,
        mode,
        max_copies: max,
        witnesses: vec![witness],
        method: Method::LocalSearch,
        search_budget: budget,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormulaRow {
    pub n: usize,
    pub search_value: BigUint,
    pub predicted: Option<BigUint>,
    pub source: Option<&'static str>,
    pub matches: Option<bool>,
}

/// Exact value at `n` from a known closed form, when one applies.
pub fn exact_prediction(k: usize, forbidden: &[Forbidden], n: usize, mode: Mode) -> Option<(BigUint, &'static str)> {
    if mode != Mode::Oriented {
        return None;
    }
    let ceil3 = |x: usize| BigUint::from(x.div_ceil(3));
    match (k, forbidden) {
        (3, [Forbidden::TransitiveTriangle]) => {
            Some((ceil3(n) * ceil3(n.saturating_sub(1)) * ceil3(n.saturating_sub(2)), "balanced C3 blow-up"))
        }
        (4, [Forbidden::Cycle(3)]) => Some((iterated_blow_up_count(4, n), "iterated C4 blow-up")),
        (_, [Forbidden::Cycle(l)]) => {
            let p = predicted_extremal(k as u64, *l as u64, n as u64, mode).ok()?;
            p.exact.map(|e| (e, p.source))
        }
        _ => None,
    }
}

/// Exhaustive values for each `n` next to the closed-form prediction.
pub fn verify_formula(
    k: usize,
    forbidden: &[Forbidden],
    n_range: std::ops::RangeInclusive<usize>,
    mode: Mode,
) -> Result<Vec<FormulaRow>> {
    let mut sorted = forbidden.to_vec();
    sorted.sort();
    sorted.dedup();
    n_range
        .map(|n| {
            let rec = exhaustive_extremal(n, k, &sorted, mode)?;
            let pred = exact_prediction(k, &sorted, n, mode);
            Ok(FormulaRow {
                n,
                matches: pred.as_ref().map(|(p, _)| *p == rec.max_copies),
                source: pred.as_ref().map(|(_, s)| *s),
                predicted: pred.map(|(p, _)| p),
                search_value: rec.max_copies,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests;
