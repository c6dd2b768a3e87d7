//! Acceptance run: twelve criteria, one PASS/FAIL line each.
//!
//! Every criterion is checked against an oracle written here (brute-force
//! enumeration, dynamic programming or an explicit formula) rather than
//! against the library's own closed forms where one can be avoided.

use dicycles::constructions::{
    c5c7_pattern, closed_form_count, generate, threshold_c7_pattern, C5c7Variant, ConstructionId, CountKind,
    ThresholdPairs,
};
use dicycles::counting::{
    check_neighbor_condition, closed_walk_lengths, count_closed_walks, count_cycle_copies, count_paths,
    has_cycle_subgraph, has_transitive_triangle,
};
use dicycles::density::{default_initializations, optimize_threshold, optimize_weights, DensityModel, Evaluator};
use dicycles::graph::{random_bipartite_orientation, random_oriented, random_triangle_free, PatternSpec};
use dicycles::numtheory::{brauer_bound, predicted_extremal, representable};
use dicycles::rational::biguint_to_f64;
use dicycles::search::{exhaustive_extremal, Forbidden};
use dicycles::spectral::{bipartite_cycle_bound, positive_real_part_sum, spectrum};
use dicycles::{Digraph, Mode};
use num_bigint::BigUint;
use std::io::Write;
use std::time::Instant;

/// Cycles as vertex sequences starting at their smallest vertex.
fn naive_cycles(g: &Digraph, k: usize) -> u64 {
    fn rec(g: &Digraph, k: usize, path: &mut Vec<usize>, count: &mut u64) {
        let last = *path.last().unwrap();
        if path.len() == k {
            *count += g.has_arc(last, path[0]) as u64;
            return;
        }
        for v in path[0] + 1..g.n() {
            if !path.contains(&v) && g.has_arc(last, v) {
                path.push(v);
                rec(g, k, path, count);
                path.pop();
            }
        }
    }
    let mut count = 0;
    for s in 0..g.n() {
        rec(g, k, &mut vec![s], &mut count);
    }
    count
}

/// Directed paths on `k` vertices, each counted once.
fn naive_paths(g: &Digraph, k: usize) -> u64 {
    fn rec(g: &Digraph, k: usize, path: &mut Vec<usize>) -> u64 {
        if path.len() == k {
            return 1;
        }
        let last = *path.last().unwrap();
        let mut total = 0;
        for v in 0..g.n() {
            if !path.contains(&v) && g.has_arc(last, v) {
                path.push(v);
                total += rec(g, k, path);
                path.pop();
            }
        }
        total
    }
    (0..g.n()).map(|s| rec(g, k, &mut vec![s])).sum()
}

fn c3_formula(n: u64) -> u64 {
    let c = |x: u64| x.div_ceil(3);
    c(n) * c(n.saturating_sub(1)) * c(n.saturating_sub(2))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c1_small_values() -> (bool, String) {
    let mut ok = true;
    let mut slowest = 0.0f64;
    let mut values = Vec::new();
    for f in [Forbidden::Cycle(4), Forbidden::Cycle(5), Forbidden::TransitiveTriangle] {
        for n in 3..=6 {
            let t = Instant::now();
            let r = exhaustive_extremal(n, 3, &[f], Mode::Oriented).unwrap();
            let secs = t.elapsed().as_secs_f64();
            slowest = slowest.max(secs);
            ok &= r.max_copies == BigUint::from(c3_formula(n as u64)) && secs <= 600.0;
            if n == 6 {
                values.push(format!("{f}:{}", r.max_copies));
            }
        }
    }
    (ok, format!("n=6 values {} (formula 8), slowest run {slowest:.2}s", values.join(" ")))
}

fn c2_counting_oracle() -> (bool, String) {
    let mut ok = true;
    let mut worst = 0.0f64;
    for i in 0..200u64 {
        let n = 3 + (i % 6) as usize;
        let g = random_oriented(n, 0.3 + 0.1 * (i % 6) as f64, 2_000 + i);
        for k in 3..=n {
            ok &= count_cycle_copies(&g, k) == BigUint::from(naive_cycles(&g, k));
        }
        let Ok(s) = spectrum(&g, None) else {
            ok = false;
            continue;
        };
        for l in 1..=10u32 {
            let exact = biguint_to_f64(&count_closed_walks(&g, l as usize));
            let approx: f64 = s.eigenvalues.iter().map(|z| z.powu(l).re).sum();
            let rel = (approx - exact).abs() / exact.max(1.0);
            worst = worst.max(rel);
            ok &= rel <= 1e-6;
        }
    }
    (ok, format!("200 graphs, worst walk relative error {worst:.2e}"))
}

fn c3_closed_forms() -> (bool, String) {
    use ConstructionId::*;
    let mut ids = vec![
        IteratedC4,
        C5c3TournamentBlobs,
        C5c7BipartiteBlobs { variant: C5c7Variant::Adjacent },
        C5c7BipartiteBlobs { variant: C5c7Variant::Opposite },
        C3c6Sparse,
        C7ChordsBlowup,
        CompleteBipartiteDigraph,
    ];
    ids.extend((2..=6).map(|d| BalancedCycleBlowup { d }));
    ids.extend((3..=6).map(|k| SparseSingletonBlowup { k }));
    ids.extend((2..=4).map(|t| C3_3tSparse { t }));
    let mut ok = true;
    let mut checked = 0;
    for id in &ids {
        let k = id.target_k();
        for n in id.n_min()..=60 {
            let cf = closed_form_count(id, n, k).unwrap();
            if cf.kind != CountKind::Exact {
                continue;
            }
            let count = count_cycle_copies(&generate(id, n, 0).unwrap(), k);
            ok &= Some(&count) == cf.as_integer().as_ref();
            checked += 1;
        }
    }
    // the two formulas named explicitly, computed here
    for n in (8..=60).step_by(4) {
        let q = n as u64 / 4;
        let g = generate(&C5c3TournamentBlobs, n, 0).unwrap();
        ok &= count_cycle_copies(&g, 5) == BigUint::from(4 * binom(q, 2) * q.pow(3));
    }
    for n in C3c6Sparse.n_min()..=60 {
        let m = n as u64 - 1;
        let g = generate(&C3c6Sparse, n, 0).unwrap();
        ok &= count_cycle_copies(&g, 3) == BigUint::from(m.div_ceil(2) * (m / 2));
    }
    (ok, format!("{checked} (construction, n) pairs, zero tolerance"))
}

fn c4_freeness() -> (bool, String) {
    let mut ok = true;
    for d in 3..=6 {
        let id = ConstructionId::BalancedCycleBlowup { d };
        for n in d..=60 {
            let lens = closed_walk_lengths(&generate(&id, n, 0).unwrap(), 60);
            ok &= (1..=60).filter(|l| l % d != 0).all(|l| !lens[l]);
        }
    }
    let sweeps: [(ConstructionId, usize, usize); 4] = [
        (ConstructionId::C5c7BipartiteBlobs { variant: C5c7Variant::Adjacent }, 40, 7),
        (ConstructionId::ThresholdC7 { c: 0.67757, pairs: ThresholdPairs::Cycle }, 210, 4),
        (ConstructionId::C5c3TournamentBlobs, 60, 3),
        (ConstructionId::C3c6Sparse, 60, 6),
    ];
    let mut graphs = 0;
    for (id, n_max, l) in sweeps {
        let step = if n_max > 100 { 7 } else { 1 };
        for n in (id.n_min()..=n_max).step_by(step) {
            ok &= !has_cycle_subgraph(&generate(&id, n, 0).unwrap(), l);
            graphs += 1;
        }
    }
    (ok, format!("C_d blow-ups d=3..6 to n=60, {graphs} further graphs"))
}

fn c5_spectral_bound() -> (bool, String) {
    let start = Instant::now();
    let mut ok = true;
    let mut worst = 0.0f64;
    for n in [12usize, 20] {
        for seed in 0..100 {
            let g = random_bipartite_orientation(n, 5_000 + seed);
            for k in [6usize, 10] {
                let b = bipartite_cycle_bound(&g, k).unwrap();
                // k · 4^k · copies ≤ 2 · n^k
                let exact = BigUint::from(k) * BigUint::from(4u32).pow(k as u32) * &b.count
                    <= BigUint::from(2u32) * BigUint::from(n).pow(k as u32);
                ok &= exact && b.holds;
                worst = worst.max(biguint_to_f64(&b.count) / (2.0 / k as f64 * (n as f64 / 4.0).powi(k as i32)));
            }
            match spectrum(&g, Some(n / 2)).and_then(|s| positive_real_part_sum(&s)) {
                Ok(p) => {
                    let m = (n / 2) as f64;
                    ok &= p.ky_fan_holds && p.sum <= 0.5 * (m * (n as f64 - m)).sqrt() + 1e-9;
                }
                Err(_) => ok = false,
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs <= 120.0;
    (ok, format!("max copies/bound {worst:.4}, {secs:.1}s"))
}

fn c6_frobenius() -> (bool, String) {
    let mut sets: Vec<Vec<u64>> = Vec::new();
    for a in 1..=12 {
        sets.push(vec![a]);
        for b in a..=12 {
            sets.push(vec![a, b]);
            for c in b..=12 {
                sets.push(vec![a, b, c]);
            }
        }
    }
    let mut ok = true;
    for gens in &sets {
        // coefficient search over x_i ≤ 200 / g_i
        let mut reach = [false; 201];
        let b = gens.get(1).copied();
        let c = gens.get(2).copied();
        for x in 0..=200 / gens[0] {
            for y in 0..=b.map_or(0, |b| 200 / b) {
                for z in 0..=c.map_or(0, |c| 200 / c) {
                    let t = x * gens[0] + y * b.unwrap_or(0) + z * c.unwrap_or(0);
                    if t <= 200 {
                        reach[t as usize] = true;
                    }
                }
            }
        }
        let bound = brauer_bound(gens).unwrap();
        let d = gens.iter().fold(0, |a, &b| gcd(a, b));
        for l in 0..=200u64 {
            let r = representable(l, gens).unwrap();
            ok &= r.representable == reach[l as usize];
            if i128::from(l) > bound && l % d == 0 {
                ok &= r.representable;
            }
        }
    }
    (ok, format!("{} generator multisets, l <= 200", sets.len()))
}

fn c7_weights() -> (bool, String) {
    let m = DensityModel::new(c5c7_pattern(C5c7Variant::Adjacent), 5).unwrap();
    let r = optimize_weights(&m, &default_initializations(&m, 16, 0), 1e-12).unwrap();
    let w_err = r.weights.iter().zip([0.3, 0.3, 0.2, 0.2]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let v_err = (r.value - 27.0 / 50000.0).abs();
    let mut ok = w_err <= 1e-3 && v_err <= 1e-5;
    let mut cyc_err = 0.0f64;
    for d in 3..=7 {
        let m = DensityModel::new(PatternSpec::uniform(Digraph::directed_cycle(d)), d).unwrap();
        let r = optimize_weights(&m, &default_initializations(&m, 16, 0), 1e-12).unwrap();
        let err = r.weights.iter().map(|w| (w - 1.0 / d as f64).abs()).fold(0.0, f64::max);
        cyc_err = cyc_err.max(err);
    }
    ok &= cyc_err <= 1e-6;
    (ok, format!("weight err {w_err:.1e}, value err {v_err:.1e}, C_d balance err {cyc_err:.1e}"))
}

fn c8_threshold() -> (bool, String) {
    let start = Instant::now();
    let family = |c: f64| threshold_c7_pattern(c, ThresholdPairs::Cycle);
    let r = optimize_threshold(family, 5, &[1.0 / 7.0; 7], (0.4, 0.9), Evaluator::Quadrature { resolution: 512 })
        .unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ok = (r.c_star - 0.67757).abs() <= 5e-3 && (0.0516..=0.0567).contains(&r.density_binomial) && secs <= 300.0;
    (ok, format!("c* = {:.6}, density {:.6}·C(n,5), {secs:.1}s", r.c_star, r.density_binomial))
}

fn c9_neighbor_condition() -> (bool, String) {
    let mut ok = true;
    for (k, d) in [(4usize, 4usize), (6, 3), (5, 5)] {
        let id = ConstructionId::BalancedCycleBlowup { d };
        for n in d..=40 {
            let g = generate(&id, n, 0).unwrap();
            let copies = count_cycle_copies(&g, k);
            let lhs = BigUint::from(k) * BigUint::from(d).pow(k as u32 - 1) * &copies;
            ok &= check_neighbor_condition(&g, k, d).holds() && lhs <= BigUint::from(n).pow(k as u32);
        }
    }
    (ok, "(4,4) (6,3) (5,5) for n <= 40".into())
}

fn c10_path_bound() -> (bool, String) {
    let mut ok = true;
    let mut worst = 0.0f64;
    for i in 0..100u64 {
        let n = 8 + (i as usize * 7) % 33;
        let g = random_triangle_free(n, 10_000 + i);
        ok &= !has_cycle_subgraph(&g, 3) && !has_transitive_triangle(&g);
        for j in [2u32, 3, 4] {
            let p = count_paths(&g, 2 * j as usize);
            if n <= 12 {
                ok &= p == BigUint::from(naive_paths(&g, 2 * j as usize));
            }
            ok &= p.clone() * BigUint::from(4u32).pow(2 * j - 1) <= BigUint::from(n).pow(2 * j);
            worst = worst.max(biguint_to_f64(&p) / (n as f64 * (n as f64 / 4.0).powi(2 * j as i32 - 1)));
        }
    }
    (ok, format!("100 graphs, max p/bound {worst:.4}"))
}

fn iterated_recursion(n: u64) -> BigUint {
    if n < 4 {
        return BigUint::from(0u32);
    }
    let parts: Vec<u64> = (0..4).map(|i| (n + 3 - i) / 4).collect();
    parts.iter().map(|&p| BigUint::from(p)).product::<BigUint>() + parts.iter().map(|&p| iterated_recursion(p)).sum::<BigUint>()
}

fn c11_iterated() -> (bool, String) {
    let mut ok = true;
    let mut trend = Vec::new();
    for n in [16usize, 64, 256] {
        let count = count_cycle_copies(&generate(&ConstructionId::IteratedC4, n, 0).unwrap(), 4);
        ok &= count == iterated_recursion(n as u64);
        trend.push(format!("{:.6}", biguint_to_f64(&count) * 256.0 / (n as f64).powi(4)));
    }
    (
        ok,
        format!("count·256/n⁴ = {} vs 256/255 = {:.6}, 256/252 = {:.6}", trend.join(", "), 256.0 / 255.0, 256.0 / 252.0),
    )
}

fn c12_directed() -> (bool, String) {
    let mut ok = true;
    let mut regime = String::new();
    for n in (2..=24usize).step_by(2) {
        let g = generate(&ConstructionId::CompleteBipartiteDigraph, n, 0).unwrap();
        let count = count_cycle_copies(&g, 4);
        let m = n as u64 / 2;
        ok &= count == BigUint::from(m * m * (m.max(1) - 1) * (m.max(1) - 1) / 2);
        ok &= !closed_walk_lengths(&g, 9)[9];
        if n <= 12 {
            ok &= count == BigUint::from(naive_cycles(&g, 4));
        }
        // count = n/4 · (n/2)^3 · ((m-1)/m)^2
        let n4 = BigUint::from(n).pow(4);
        ok &= &n4 * (m.max(1) - 1) * (m.max(1) - 1) == &count * 32u32 * m * m;
        let p = predicted_extremal(4, 9, n as u64, Mode::Directed).unwrap();
        let lb = p.lower_bound.as_ref().unwrap();
        ok &= p.divisor == Some(2)
            && lb.power == 4
            && lb.coefficient == num_rational::BigRational::new(1.into(), 32.into())
            && count * 32u32 <= n4;
        regime = format!("{:?}", p.regime);
    }
    (ok, format!("m²(m−1)²/2 for n <= 24, no closed 9-walk, prediction regime {regime} with C2 blow-up bound n⁴/32"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> (bool, String)); 12] = [
        ("small values", c1_small_values),
        ("counting oracle", c2_counting_oracle),
        ("closed forms", c3_closed_forms),
        ("freeness", c4_freeness),
        ("spectral bound", c5_spectral_bound),
        ("frobenius", c6_frobenius),
        ("weight optimization", c7_weights),
        ("threshold constant", c8_threshold),
        ("neighbor condition", c9_neighbor_condition),
        ("path bound", c10_path_bound),
        ("iterated blow-up", c11_iterated),
        ("directed mode", c12_directed),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        let line = format!("criterion {:>2} {name}: {} ({detail})", i + 1, if ok { "PASS" } else { "FAIL" });
        // straight to the handle so the lines survive libtest's output capture
        let _ = writeln!(std::io::stderr(), "{line}");
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
