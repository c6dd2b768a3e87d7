//! Weighted blueprints ("patterns") and their finite realizations.

use super::{Digraph, Mode};
use crate::error::{Error, Result};
use crate::rational::{parse_ratio, ratio_to_string};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// Structure placed inside a blob.
#[derive(Clone, Debug, PartialEq)]
pub enum BlobInternal {
    Independent,
    /// Arcs `x → y` for every pair with `x` before `y` in vertex order.
    TransitiveTournament,
    /// The blob is split into a first part (fraction `split`) and a second
    /// part, with every arc going from the first part to the second.
    OneWayBipartite { split: BigRational },
}

/// How a base arc `A → B` is realized between blobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArcRule {
    /// Every `x ∈ A` points to every `y ∈ B`.
    Full,
    /// With `f(x) = min(x + c, 1)`: `x → y` when `f(coord x) ≥ coord y`,
    /// otherwise `y → x`.
    Threshold { c: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatternSpec {
    base: Digraph,
    weights: Vec<BigRational>,
    internal: Vec<BlobInternal>,
    /// One rule per base arc, in lexicographic arc order.
    rules: Vec<((usize, usize), ArcRule)>,
}

impl PatternSpec {
    pub fn new(
        base: Digraph,
        weights: Vec<BigRational>,
        internal: Vec<BlobInternal>,
        rules: Vec<((usize, usize), ArcRule)>,
    ) -> Result<Self> {
        let p = base.n();
        if weights.len() != p || internal.len() != p {
            return Err(Error::InvalidPattern(format!(
                "{p} blobs but {} weights and {} internal structures",
                weights.len(),
                internal.len()
            )));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidPattern("negative blob weight".into()));
        }
        let total: BigRational = weights.iter().cloned().sum();
        if !total.is_one() {
            return Err(Error::InvalidPattern(format!("weights sum to {total}, not 1")));
        }
        for b in &internal {
            if let BlobInternal::OneWayBipartite { split } = b {
                if !split.is_positive() || *split >= BigRational::one() {
                    return Err(Error::InvalidPattern(format!("split {split} not in (0, 1)")));
                }
            }
        }
        let mut sorted = rules.clone();
        sorted.sort_by_key(|r| r.0);
        let arcs: Vec<_> = base.arcs().collect();
        if sorted.iter().map(|r| r.0).collect::<Vec<_>>() != arcs {
            return Err(Error::InvalidPattern("exactly one rule per base arc is required".into()));
        }
        for &((u, v), rule) in &sorted {
            if let ArcRule::Threshold { c } = rule {
                if !(0.0..=1.0).contains(&c) {
                    return Err(Error::InvalidPattern(format!("threshold constant {c} outside [0, 1]")));
                }
                if u == v || base.has_arc(v, u) {
                    return Err(Error::InvalidPattern(format!(
                        "threshold rule on ({u}, {v}) needs two distinct blobs without a digon"
                    )));
                }
            }
        }
        Ok(PatternSpec { base, weights, internal, rules: sorted })
    }

    /// Independent blobs, full arcs, equal weights.
    pub fn uniform(base: Digraph) -> Self {
        let p = base.n();
        let w = BigRational::new(BigInt::one(), BigInt::from(p.max(1)));
        let rules = base.arcs().map(|a| (a, ArcRule::Full)).collect();
        PatternSpec::new(base, vec![w; p], vec![BlobInternal::Independent; p], rules)
            .expect("uniform pattern is valid")
    }

    pub fn with_weights(mut self, weights: Vec<BigRational>) -> Result<Self> {
        self.weights = weights;
        PatternSpec::new(self.base, self.weights, self.internal, self.rules)
    }

    pub fn with_internal(mut self, blob: usize, internal: BlobInternal) -> Result<Self> {
        if blob >= self.internal.len() {
            return Err(Error::InvalidPattern(format!("no blob {blob}")));
        }
        self.internal[blob] = internal;
        PatternSpec::new(self.base, self.weights, self.internal, self.rules)
    }

    pub fn with_rule(mut self, arc: (usize, usize), rule: ArcRule) -> Result<Self> {
        match self.rules.iter_mut().find(|r| r.0 == arc) {
            Some(r) => r.1 = rule,
            None => return Err(Error::InvalidPattern(format!("{arc:?} is not a base arc"))),
        }
        PatternSpec::new(self.base, self.weights, self.internal, self.rules)
    }

    pub fn base(&self) -> &Digraph {
        &self.base
    }

    pub fn blobs(&self) -> usize {
        self.base.n()
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn internal(&self) -> &[BlobInternal] {
        &self.internal
    }

    pub fn rules(&self) -> &[((usize, usize), ArcRule)] {
        &self.rules
    }

    pub fn rule(&self, u: usize, v: usize) -> Option<ArcRule> {
        self.rules.iter().find(|r| r.0 == (u, v)).map(|r| r.1)
    }

    pub fn has_threshold(&self) -> bool {
        self.rules.iter().any(|r| matches!(r.1, ArcRule::Threshold { .. }))
    }

    /// Blobs that need point coordinates to be realized.
    pub fn coordinate_blobs(&self) -> Vec<bool> {
        let mut need = vec![false; self.blobs()];
        for &((u, v), rule) in &self.rules {
            if matches!(rule, ArcRule::Threshold { .. }) {
                need[u] = true;
                need[v] = true;
            }
        }
        need
    }

    pub fn to_file(&self) -> PatternFile {
        PatternFile {
            blobs: self.blobs(),
            mode: self.base.mode(),
            arcs: self
                .rules
                .iter()
                .map(|&((u, v), rule)| PatternArc {
                    from: u,
                    to: v,
                    threshold: match rule {
                        ArcRule::Full => None,
                        ArcRule::Threshold { c } => Some(c),
                    },
                })
                .collect(),
            weights: self.weights.iter().map(ratio_to_string).collect(),
            internal: self
                .internal
                .iter()
                .map(|b| match b {
                    BlobInternal::Independent => InternalFile::Independent,
                    BlobInternal::TransitiveTournament => InternalFile::TransitiveTournament,
                    BlobInternal::OneWayBipartite { split } => {
                        InternalFile::OneWayBipartite { split: ratio_to_string(split) }
                    }
                })
                .collect(),
        }
    }

    pub fn from_file(f: &PatternFile) -> Result<Self> {
        let arcs: Vec<_> = f.arcs.iter().map(|a| (a.from, a.to)).collect();
        let base = Digraph::new(f.blobs, &arcs, f.mode)?;
        let weights = f
            .weights
            .iter()
            .map(|w| parse_ratio(w).ok_or_else(|| Error::InvalidPattern(format!("bad weight {w:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let internal = f
            .internal
            .iter()
            .map(|b| {
                Ok(match b {
                    InternalFile::Independent => BlobInternal::Independent,
                    InternalFile::TransitiveTournament => BlobInternal::TransitiveTournament,
                    InternalFile::OneWayBipartite { split } => BlobInternal::OneWayBipartite {
                        split: parse_ratio(split)
                            .ok_or_else(|| Error::InvalidPattern(format!("bad split {split:?}")))?,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rules = f
            .arcs
            .iter()
            .map(|a| {
                let rule = match a.threshold {
                    None => ArcRule::Full,
                    Some(c) => ArcRule::Threshold { c },
                };
                ((a.from, a.to), rule)
            })
            .collect();
        PatternSpec::new(base, weights, internal, rules)
    }
}

/// JSON form of a [`PatternSpec`]; rationals are `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PatternFile {
    pub blobs: usize,
    #[serde(default)]
    pub mode: Mode,
    pub arcs: Vec<PatternArc>,
    pub weights: Vec<String>,
    pub internal: Vec<InternalFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PatternArc {
    pub from: usize,
    pub to: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum InternalFile {
    Independent,
    TransitiveTournament,
    OneWayBipartite { split: String },
}

/// Blob sizes of a finite realization, plus per-vertex coordinates in `[0, 1]`
/// for blobs that need them.
#[derive(Clone, Debug, PartialEq)]
pub struct BlobAssignment {
    sizes: Vec<usize>,
    coordinates: Vec<Option<Vec<f64>>>,
}

impl BlobAssignment {
    pub fn new(sizes: Vec<usize>) -> Self {
        let coordinates = vec![None; sizes.len()];
        BlobAssignment { sizes, coordinates }
    }

    /// Every blob gets coordinates `i / (size - 1)`; a singleton sits at 1/2.
    pub fn equispaced(sizes: Vec<usize>) -> Self {
        let coordinates = sizes.iter().map(|&s| Some(equispaced(s))).collect();
        BlobAssignment { sizes, coordinates }
    }

    pub fn with_coordinates(mut self, blob: usize, coords: Vec<f64>) -> Result<Self> {
        if blob >= self.sizes.len() {
            return Err(Error::SizeMismatch(format!("no blob {blob}")));
        }
        self.coordinates[blob] = Some(coords);
        Ok(self)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn coordinates(&self, blob: usize) -> Option<&[f64]> {
        self.coordinates.get(blob).and_then(|c| c.as_deref())
    }
}

pub(crate) fn equispaced(size: usize) -> Vec<f64> {
    match size {
        0 => vec![],
        1 => vec![0.5],
        s => (0..s).map(|i| i as f64 / (s - 1) as f64).collect(),
    }
}

/// Sizes of the two parts of a one-way bipartite blob: the first part has
/// `round(split · size)` vertices (halves rounded up).
pub fn split_sizes(size: usize, split: &BigRational) -> (usize, usize) {
    let scaled = split * BigRational::from_integer(BigInt::from(size))
        + BigRational::new(BigInt::one(), BigInt::from(2));
    let first = scaled.floor().to_integer().to_usize().unwrap_or(0).min(size);
    (first, size - first)
}

/// Realize `pattern` with the blob sizes of `assignment`. Vertices are numbered
/// blob by blob.
pub fn blow_up(pattern: &PatternSpec, assignment: &BlobAssignment) -> Result<Digraph> {
    let p = pattern.blobs();
    if assignment.sizes.len() != p {
        return Err(Error::SizeMismatch(format!("pattern has {p} blobs, assignment has {}", assignment.sizes.len())));
    }
    let need = pattern.coordinate_blobs();
    for b in 0..p {
        if need[b] {
            let c = assignment.coordinates(b).ok_or(Error::MissingCoordinates(b))?;
            if c.len() != assignment.sizes[b] {
                return Err(Error::SizeMismatch(format!(
                    "blob {b} has {} vertices but {} coordinates",
                    assignment.sizes[b],
                    c.len()
                )));
            }
            if c.windows(2).any(|w| w[0] >= w[1]) || c.iter().any(|x| !(0.0..=1.0).contains(x)) {
                return Err(Error::InvalidPattern(format!("coordinates of blob {b} must increase within [0, 1]")));
            }
        }
    }
    let mut offset = Vec::with_capacity(p + 1);
    offset.push(0);
    for &s in &assignment.sizes {
        offset.push(offset.last().unwrap() + s);
    }
    let n = offset[p];
    let mut g = Digraph::empty(n, pattern.base.mode());
    let range = |b: usize| offset[b]..offset[b + 1];

    for (b, internal) in pattern.internal.iter().enumerate() {
        match internal {
            BlobInternal::Independent => {}
            BlobInternal::TransitiveTournament => {
                for x in range(b) {
                    for y in x + 1..offset[b + 1] {
                        g.try_add_arc(x, y)?;
                    }
                }
            }
            BlobInternal::OneWayBipartite { split } => {
                let (first, _) = split_sizes(assignment.sizes[b], split);
                let mid = offset[b] + first;
                for x in offset[b]..mid {
                    for y in mid..offset[b + 1] {
                        g.try_add_arc(x, y)?;
                    }
                }
            }
        }
    }
    for &((a, b), rule) in &pattern.rules {
        match rule {
            ArcRule::Full => {
                for x in range(a) {
                    for y in range(b) {
                        g.try_add_arc(x, y)?;
                    }
                }
            }
            ArcRule::Threshold { c } => {
                let ca = assignment.coordinates(a).expect("validated");
                let cb = assignment.coordinates(b).expect("validated");
                for (i, x) in range(a).enumerate() {
                    let fx = (ca[i] + c).min(1.0);
                    for (j, y) in range(b).enumerate() {
                        if fx >= cb[j] {
                            g.try_add_arc(x, y)?;
                        } else {
                            g.try_add_arc(y, x)?;
                        }
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Largest-remainder rounding of `weights · n`; ties go to the lowest index.
pub fn sizes_from_weights(weights: &[BigRational], n: usize) -> Vec<usize> {
    let nn = BigRational::from_integer(BigInt::from(n));
    let exact: Vec<BigRational> = weights.iter().map(|w| w * &nn).collect();
    let mut sizes: Vec<usize> = exact.iter().map(|x| x.floor().to_integer().to_usize().unwrap_or(0)).collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    // stable sort keeps lower indices first among equal remainders
    order.sort_by(|&i, &j| {
        let ri = &exact[i] - exact[i].floor();
        let rj = &exact[j] - exact[j].floor();
        rj.cmp(&ri)
    });
    for &i in order.iter().take(n.saturating_sub(assigned)) {
        sizes[i] += 1;
    }
    sizes
}
