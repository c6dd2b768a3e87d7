use dicycles::constructions::{closed_form_count, generate, ConstructionId};
use dicycles::counting::{
    clear, count_closed_walks, count_closed_walks_with, count_cycle_copies, count_cycle_copies_with, count_paths,
    count_paths_with, vertex_cycle_counts,
};
use dicycles::graph::{random_oriented, read_graph, write_graph};
use dicycles::numtheory::{brauer_bound, representable, smallest_valid_divisor};
use dicycles::{Digraph, Execution, Mode};
use num_bigint::BigUint;
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Digraph> {
    (2usize..9, 0.1f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| random_oriented(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_format_round_trips(g in graph()) {
        let back = read_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn counts_ignore_labels(g in graph(), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        // cheap deterministic shuffle
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm);
        for k in 3..=n {
            prop_assert_eq!(count_cycle_copies(&g, k), count_cycle_copies(&h, k));
        }
        prop_assert_eq!(count_paths(&g, 4), count_paths(&h, 4));
    }

    #[test]
    fn counts_add_over_disjoint_union(a in graph(), b in graph()) {
        let u = a.disjoint_union(&b);
        for k in 3..=5 {
            prop_assert_eq!(count_cycle_copies(&u, k), count_cycle_copies(&a, k) + count_cycle_copies(&b, k));
            prop_assert_eq!(count_closed_walks(&u, k), count_closed_walks(&a, k) + count_closed_walks(&b, k));
        }
    }

    #[test]
    fn sequential_matches_parallel(g in graph()) {
        for k in 3..=g.n() {
            prop_assert_eq!(
                count_cycle_copies_with(&g, k, Execution::Sequential),
                count_cycle_copies_with(&g, k, Execution::Parallel)
            );
        }
        prop_assert_eq!(count_closed_walks_with(&g, 7, Execution::Sequential), count_closed_walks_with(&g, 7, Execution::Parallel));
        prop_assert_eq!(count_paths_with(&g, 3, Execution::Sequential), count_paths_with(&g, 3, Execution::Parallel));
    }

    #[test]
    fn vertex_counts_sum_to_k_times_copies(g in graph(), k in 3usize..6) {
        let total: u64 = vertex_cycle_counts(&g, k).iter().sum();
        prop_assert_eq!(BigUint::from(total), count_cycle_copies(&g, k) * k);
    }

    #[test]
    fn clearing_keeps_every_cycle(g in graph(), k in 3usize..6) {
        let r = clear(&g, k, 2 * k + 1);
        prop_assert_eq!(count_cycle_copies(&r.cleared, k), count_cycle_copies(&g, k));
        let again = clear(&r.cleared, k, 2 * k + 1);
        prop_assert!(again.is_fixed_point);
    }

    #[test]
    fn representability_matches_reachability(gens in prop::collection::vec(1u64..15, 1..4), l in 0u64..120) {
        let mut reach = vec![false; l as usize + 1];
        reach[0] = true;
        for t in 1..=l as usize {
            reach[t] = gens.iter().any(|&g| t >= g as usize && reach[t - g as usize]);
        }
        let r = representable(l, &gens).unwrap();
        prop_assert_eq!(r.representable, reach[l as usize]);
        if let Some(w) = r.witness {
            prop_assert_eq!(w.iter().zip(&gens).map(|(x, g)| x * g).sum::<u64>(), l);
        }
        let d = gens.iter().fold(0, |a, &b| num_integer::gcd(a, b));
        if i128::from(l) > brauer_bound(&gens).unwrap() && l % d == 0 {
            prop_assert!(r.representable);
        }
    }

    #[test]
    fn divisor_is_smallest(k in 3u64..40, l in 3u64..200) {
        match smallest_valid_divisor(k, l, Mode::Oriented) {
            Ok(d) => {
                prop_assert!(d >= 3 && k % d == 0 && l % d != 0);
                prop_assert!((3..d).all(|e| k % e != 0 || l % e == 0));
            }
            Err(_) => prop_assert!((3..=k).all(|e| k % e != 0 || l % e == 0)),
        }
    }

    #[test]
    fn blowup_counts_match_closed_form(d in 3usize..7, n in 3usize..40) {
        let n = n.max(d);
        let id = ConstructionId::BalancedCycleBlowup { d };
        let cf = closed_form_count(&id, n, d).unwrap();
        prop_assert_eq!(Some(count_cycle_copies(&generate(&id, n, 0).unwrap(), d)), cf.as_integer());
    }
}

#[test]
fn malformed_graph_text_is_rejected() {
    assert!(read_graph("3 1\n0 5\n").is_err());
    assert!(read_graph("2 1\n0 1\n1 0\n").is_err());
    assert!(read_graph("").is_err());
    let g = read_graph("# triangle\n3 3\n0 1\n1 2\n2 0\n").unwrap();
    assert_eq!(count_cycle_copies(&g, 3), BigUint::from(1u32));
}
