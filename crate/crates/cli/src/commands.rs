use crate::manifest::RunManifest;
use crate::{CliError, Outcome};
use clap::{Args, ValueEnum};
use dicycles::constructions::{closed_form_count, generate, ConstructionId};
use dicycles::counting::{
    check_neighbor_condition, clear as clear_graph, has_closed_walk, has_cycle_subgraph, has_transitive_triangle,
    CountReport, ReportOptions,
};
use dicycles::density::{
    binomial_units, default_initializations, optimize_threshold, optimize_weights, DensityModel, Evaluator,
};
use dicycles::graph::{read_graph, write_graph, ArcRule, PatternFile, PatternSpec};
use dicycles::numtheory::{predicted_extremal, representable};
use dicycles::rational::ratio_to_string;
use dicycles::search::{exhaustive_extremal, local_search_extremal, Forbidden};
use dicycles::spectral::{bipartite_cycle_bound, hom_count_via_spectrum, positive_real_part_sum, spectrum};
use dicycles::{Digraph, Mode};
use serde_json::{json, Map, Value};
use std::path::Path;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Oriented,
    Directed,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Oriented => Mode::Oriented,
            ModeArg::Directed => Mode::Directed,
        }
    }
}

fn read_file(path: &str, manifest: &mut RunManifest) -> Result<String, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    manifest.input(path, &bytes);
    String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{path} is not UTF-8")))
}

fn write_file(path: &str, text: &str, manifest: &mut RunManifest) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })?;
    manifest.output(path, text.as_bytes());
    Ok(())
}

fn load_graph(path: &str, manifest: &mut RunManifest) -> Result<Digraph, CliError> {
    Ok(read_graph(&read_file(path, manifest)?)?)
}

fn parse_forbidden(list: &[String]) -> Result<Vec<Forbidden>, CliError> {
    list.iter().map(|s| s.parse::<Forbidden>().map_err(CliError::from)).collect()
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    construction: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Construction parameter (d, k, c[,pairs], t or a variant name).
    #[arg(long)]
    param: Option<String>,
    #[arg(short, long)]
    output: String,
}

pub fn gen(a: GenArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    manifest.seed(a.seed);
    let id = ConstructionId::parse(&a.construction, a.param.as_deref())?;
    let g = generate(&id, a.n, a.seed)?;
    let k = id.target_k();
    let closed = match closed_form_count(&id, a.n, k) {
        Ok(c) => json!({"value": ratio_to_string(&c.value), "kind": c.kind}),
        Err(dicycles::Error::NoClosedForm(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    write_file(&a.output, &write_graph(&g), manifest)?;
    let mut sidecar = json!({
        "construction": id.to_string(),
        "n": a.n,
        "seed": a.seed,
        "mode": id.mode(),
        "k": k,
        "arcs": g.arc_count(),
        "closed_form_count": closed,
        "graph": a.output,
    });
    let sidecar_path = format!("{}.json", a.output);
    let text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    write_file(&sidecar_path, &text, manifest)?;
    sidecar["sidecar"] = json!(sidecar_path);
    Ok(Outcome::ok(sidecar))
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long = "in")]
    input: String,
    #[arg(long)]
    k: usize,
    /// Path vertex counts to report, comma separated.
    #[arg(long, value_delimiter = ',')]
    paths: Vec<usize>,
    #[arg(long)]
    per_arc: bool,
    #[arg(long)]
    per_vertex: bool,
}

pub fn count(a: CountArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    let g = load_graph(&a.input, manifest)?;
    let opts = ReportOptions { paths: a.paths, per_arc: a.per_arc, per_vertex: a.per_vertex };
    Ok(Outcome::ok(CountReport::compute(&g, a.k, &opts).to_json()))
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "in")]
    input: String,
    /// Patterns that must be absent (C<l> or TT3), comma separated.
    #[arg(long, value_delimiter = ',')]
    forbid: Vec<String>,
    /// Lengths with no closed walk allowed, comma separated.
    #[arg(long, value_delimiter = ',')]
    no_closed_walk: Vec<usize>,
    /// Check the neighbor condition for k-cycles with divisor d.
    #[arg(long, num_args = 2, value_names = ["K", "D"])]
    neighbor: Option<Vec<usize>>,
}

pub fn check(a: CheckArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    let g = load_graph(&a.input, manifest)?;
    let mut passed = true;
    let mut forbidden = Map::new();
    for f in parse_forbidden(&a.forbid)? {
        let present = match f {
            Forbidden::Cycle(l) => has_cycle_subgraph(&g, l),
            Forbidden::TransitiveTriangle => has_transitive_triangle(&g),
        };
        passed &= !present;
        forbidden.insert(f.to_string(), json!({"present": present}));
    }
    let mut walks = Map::new();
    for l in a.no_closed_walk {
        let present = has_closed_walk(&g, l);
        passed &= !present;
        walks.insert(l.to_string(), json!({"present": present}));
    }
    let neighbor = match a.neighbor.as_deref() {
        Some(&[k, d]) => {
            let c = check_neighbor_condition(&g, k, d);
            passed &= c.holds();
            json!({
                "k": k,
                "d": d,
                "bound": c.bound,
                "holds": c.holds(),
                "violation": c.violation.map(|v| json!({"vertex": v.vertex, "cycle": v.cycle, "neighbors": v.neighbors})),
            })
        }
        _ => Value::Null,
    };
    Ok(Outcome { report: json!({"forbidden": forbidden, "closed_walks": walks, "neighbor": neighbor, "pass": passed}), passed })
}

#[derive(Debug, Args)]
pub struct ClearArgs {
    #[arg(long = "in")]
    input: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(short, long)]
    output: Option<String>,
}

pub fn clear(a: ClearArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    let g = load_graph(&a.input, manifest)?;
    let r = clear_graph(&g, a.k, a.l);
    if let Some(path) = &a.output {
        write_file(path, &write_graph(&r.cleared), manifest)?;
    }
    Ok(Outcome::ok(json!({
        "k": a.k,
        "l": a.l,
        "n": r.cleared.n(),
        "arcs": r.cleared.arc_count(),
        "kept": r.kept,
        "removed_arcs": r.removed_arcs,
        "removed_vertices": r.removed_vertices,
        "is_fixed_point": r.is_fixed_point,
        "walk_free": r.walk_free,
    })))
}

#[derive(Debug, Args)]
pub struct FrobeniusArgs {
    #[arg(long)]
    l: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    gens: Vec<u64>,
}

pub fn frobenius(a: FrobeniusArgs) -> Result<Outcome, CliError> {
    let r = representable(a.l, &a.gens)?;
    let mut v = serde_json::to_value(&r).expect("result serializes");
    v["l"] = json!(a.l);
    v["gens"] = json!(a.gens);
    Ok(Outcome::ok(v))
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    l: u64,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "oriented")]
    mode: ModeArg,
}

pub fn predict(a: PredictArgs) -> Result<Outcome, CliError> {
    Ok(Outcome::ok(predicted_extremal(a.k, a.l, a.n, a.mode.into())?.to_json()))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EvaluatorArg {
    Exact,
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Construction id or path to a pattern JSON file.
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    param: Option<String>,
    #[arg(long)]
    k: usize,
    /// Optimize the threshold constant over [A, B] instead of the weights.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    threshold_range: Option<Vec<f64>>,
    #[arg(long, default_value_t = 16)]
    starts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, value_enum, default_value = "exact")]
    evaluator: EvaluatorArg,
    #[arg(long, default_value_t = 512)]
    resolution: usize,
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
}

/// Pattern plus the blob that stays fixed in size, if any.
fn load_pattern(a: &OptimizeArgs, manifest: &mut RunManifest) -> Result<(PatternSpec, Option<(usize, usize)>), CliError> {
    if Path::new(&a.pattern).is_file() {
        let text = read_file(&a.pattern, manifest)?;
        let file: PatternFile =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", a.pattern)))?;
        return Ok((PatternSpec::from_file(&file)?, None));
    }
    let id = ConstructionId::parse(&a.pattern, a.param.as_deref())?;
    let Some((p, sizes)) = id.realization(id.n_min())? else {
        return Err(CliError::Usage(format!("{id} is not a single blow-up pattern")));
    };
    let fixed = match id {
        ConstructionId::SparseSingletonBlowup { .. } | ConstructionId::C3c6Sparse | ConstructionId::C3_3tSparse { .. } => {
            Some((0, sizes.sizes()[0]))
        }
        _ => None,
    };
    Ok((p, fixed))
}

fn with_threshold(p: &PatternSpec, c: f64) -> dicycles::Result<PatternSpec> {
    let mut q = p.clone();
    for &(arc, rule) in p.rules() {
        if let ArcRule::Threshold { .. } = rule {
            q = q.with_rule(arc, ArcRule::Threshold { c })?;
        }
    }
    Ok(q)
}

pub fn optimize(a: OptimizeArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    manifest.seed(a.seed);
    let (pattern, fixed) = load_pattern(&a, manifest)?;
    let evaluator = match a.evaluator {
        EvaluatorArg::Exact => Evaluator::Exact,
        EvaluatorArg::Quadrature => Evaluator::Quadrature { resolution: a.resolution },
        EvaluatorArg::MonteCarlo => Evaluator::MonteCarlo { samples: a.samples, seed: a.seed },
    };
    if let Some(range) = &a.threshold_range {
        if !pattern.has_threshold() {
            return Err(CliError::Usage("--threshold-range needs a pattern with threshold rules".into()));
        }
        let weights: Vec<f64> = pattern.weights().iter().map(dicycles::rational::ratio_to_f64).collect();
        let family = |c: f64| with_threshold(&pattern, c);
        let r = optimize_threshold(family, a.k, &weights, (range[0], range[1]), evaluator)?;
        return Ok(Outcome::ok(json!({
            "k": a.k,
            "weights": weights,
            "c_star": r.c_star,
            "value": r.density,
            "value_binomial": r.density_binomial,
            "evaluations": r.evaluations,
            "multimodal": r.multimodal,
            "scan": r.scan,
        })));
    }
    let mut model = DensityModel::with_grid(pattern, a.k, a.resolution)?;
    if let Some((blob, size)) = fixed {
        model = model.with_fixed_blob(blob, size)?;
    }
    let inits = default_initializations(&model, a.starts.max(1), a.seed);
    let r = optimize_weights(&model, &inits, a.tol)?;
    Ok(Outcome::ok(json!({
        "k": a.k,
        "power": model.power(),
        "weights": r.weights,
        "value": r.value,
        "value_binomial": (model.power() == a.k).then(|| binomial_units(r.value, a.k)),
        "rational_weights": r.rational_weights.as_ref().map(|w| w.iter().map(ratio_to_string).collect::<Vec<_>>()),
        "value_as_rational": r.rational_value.as_ref().map(ratio_to_string),
        "starts": r.starts,
    })))
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[arg(long = "in")]
    input: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    bipartition: Option<usize>,
}

pub fn spectral(a: SpectralArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    let g = load_graph(&a.input, manifest)?;
    let spec = spectrum(&g, a.bipartition)?;
    let mut report = spec.to_json();
    let mut passed = true;
    if spec.bipartition.is_some() {
        let p = positive_real_part_sum(&spec)?;
        passed &= p.holds();
        report["positive_part"] = json!({
            "sum": p.sum,
            "symmetric_sum": p.symmetric_sum,
            "bound": p.bound,
            "ky_fan_holds": p.ky_fan_holds,
            "bound_holds": p.bound_holds,
        });
    }
    if let Some(k) = a.k {
        report["k"] = json!(k);
        report["hom_count"] = json!(hom_count_via_spectrum(&g, k)?);
        if spec.bipartition.is_some() && k % 4 == 2 {
            let b = bipartite_cycle_bound(&g, k)?;
            passed &= b.holds;
            report["cycle_bound"] = json!({
                "count": b.count.to_string(),
                "bound": b.bound,
                "spectral_bound": b.spectral_bound,
                "holds": b.holds,
            });
        }
    }
    Ok(Outcome { report, passed })
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    forbid: Vec<String>,
    #[arg(long, value_enum, default_value = "oriented")]
    mode: ModeArg,
    /// Simulated annealing instead of exhaustive enumeration.
    #[arg(long)]
    local: bool,
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory to write the witness graphs into.
    #[arg(long)]
    witness_dir: Option<String>,
}

pub fn search(a: SearchArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    let forbidden = parse_forbidden(&a.forbid)?;
    let rec = if a.local {
        manifest.seed(a.seed);
        local_search_extremal(a.n, a.k, &forbidden, a.mode.into(), a.budget, a.seed)?
    } else {
        exhaustive_extremal(a.n, a.k, &forbidden, a.mode.into())?
    };
    if let Some(dir) = &a.witness_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
        for (i, w) in rec.witnesses.iter().enumerate() {
            let path = Path::new(dir).join(format!("witness_{i}.graph"));
            write_file(&path.to_string_lossy(), &write_graph(w), manifest)?;
        }
    }
    Ok(Outcome::ok(rec.to_json()))
}
