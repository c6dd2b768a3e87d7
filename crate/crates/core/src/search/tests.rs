use super::*;

fn formula(n: usize) -> u64 {
    let c = |x: usize| x.div_ceil(3) as u64;
    c(n) * c(n.saturating_sub(1)) * c(n.saturating_sub(2))
}

#[test]
fn forbidden_parsing() {
    assert_eq!("C4".parse::<Forbidden>(), Ok(Forbidden::Cycle(4)));
    assert_eq!("tt3".parse::<Forbidden>(), Ok(Forbidden::TransitiveTriangle));
    assert!("C1".parse::<Forbidden>().is_err());
    assert!("K4".parse::<Forbidden>().is_err());
    assert_eq!(Forbidden::Cycle(7).to_string(), "C7");
}

#[test]
fn canonical_code_is_relabelling_invariant() {
    let perms = permutations(4);
    assert_eq!(perms.len(), 24);
    let g = crate::graph::random_oriented(4, 0.7, 3);
    let mut m = Masks::new(4);
    g.arcs().for_each(|(u, v)| m.add(u, v));
    let code = canonical_code(&m, &perms);
    for p in &perms {
        let h = g.relabel(p);
        let mut mh = Masks::new(4);
        h.arcs().for_each(|(u, v)| mh.add(u, v));
        assert_eq!(canonical_code(&mh, &perms), code);
    }
}

#[test]
fn masks_agree_with_counting() {
    for seed in 0..30 {
        let g = crate::graph::random_oriented(7, 0.6, seed);
        let mut m = Masks::new(7);
        let mut total = [0u128; 8];
        for (u, v) in g.arcs() {
            m.add(u, v);
            for l in 3..=7 {
                total[l] += m.cycles_through(u, v, l);
            }
        }
        for l in 3..=7 {
            assert_eq!(BigUint::from(total[l]), count_cycle_copies(&g, l));
        }
        let has_tt = g.arcs().any(|(u, v)| m.has_tt3_through(u, v));
        assert_eq!(has_tt, has_transitive_triangle(&g));
    }
}

#[test]
fn small_exact_values() {
    for n in 3..=5 {
        for f in [Forbidden::Cycle(4), Forbidden::Cycle(5), Forbidden::TransitiveTriangle] {
            let r = exhaustive_extremal(n, 3, &[f], Mode::Oriented).unwrap();
            assert_eq!(r.max_copies, BigUint::from(formula(n)), "n={n} {f}");
            assert!(!r.witnesses.is_empty());
        }
    }
    let r = exhaustive_extremal(5, 4, &[Forbidden::Cycle(3)], Mode::Oriented).unwrap();
    assert_eq!(r.max_copies, BigUint::from(2u32));
}

#[test]
fn relabelled_search_agrees() {
    let a = exhaustive_extremal(5, 3, &[Forbidden::Cycle(4)], Mode::Oriented).unwrap();
    let opts = ExhaustiveOptions { shuffle_seed: Some(9), execution: Execution::Sequential, ..Default::default() };
    let b = exhaustive_extremal_with(5, 3, &[Forbidden::Cycle(4)], Mode::Oriented, &opts).unwrap();
    assert_eq!(a.max_copies, b.max_copies);
    assert_eq!(a.witnesses, b.witnesses);
}

#[test]
fn directed_mode_small() {
    // the complete bipartite digraph K_{2,2} with all digons is C3-free
    let r = exhaustive_extremal(4, 4, &[Forbidden::Cycle(3)], Mode::Directed).unwrap();
    let brute = {
        let g = Digraph::new(4, &[(0, 2), (2, 0), (0, 3), (3, 0), (1, 2), (2, 1), (1, 3), (3, 1)], Mode::Directed).unwrap();
        count_cycle_copies(&g, 4)
    };
    assert!(r.max_copies >= brute);
    assert_eq!(r.mode, Mode::Directed);
}

#[test]
fn too_large_rejected() {
    assert_eq!(
        exhaustive_extremal(7, 3, &[Forbidden::Cycle(4)], Mode::Oriented),
        Err(Error::TooLarge { n: 7, max: EXHAUSTIVE_MAX_N })
    );
}

#[test]
fn local_search_lower_bounds() {
    let r = local_search_extremal(9, 3, &[Forbidden::Cycle(4)], Mode::Oriented, 200_000, 1).unwrap();
    assert!(r.max_copies >= BigUint::from(27u32), "{}", r.max_copies);
    assert!(r.is_lower_bound_only());
    let r = local_search_extremal(7, 3, &[Forbidden::Cycle(6)], Mode::Oriented, 200_000, 1).unwrap();
    assert!(r.max_copies >= BigUint::from(9u32), "{}", r.max_copies);
    let r = local_search_extremal(8, 4, &[Forbidden::Cycle(6)], Mode::Oriented, 200_000, 1).unwrap();
    assert!(r.max_copies >= BigUint::from(16u32), "{}", r.max_copies);
}

#[test]
fn local_search_is_deterministic_and_bounded() {
    let a = local_search_extremal(5, 3, &[Forbidden::Cycle(4)], Mode::Oriented, 20_000, 5).unwrap();
    let b = local_search_extremal(5, 3, &[Forbidden::Cycle(4)], Mode::Oriented, 20_000, 5).unwrap();
    assert_eq!(a, b);
    let exact = exhaustive_extremal(5, 3, &[Forbidden::Cycle(4)], Mode::Oriented).unwrap();
    assert!(a.max_copies <= exact.max_copies);
}

#[test]
fn formula_table() {
    let rows = verify_formula(3, &[Forbidden::Cycle(4)], 3..=5, Mode::Oriented).unwrap();
    assert!(rows.iter().all(|r| r.matches == Some(true)), "{rows:?}");
    let json = exhaustive_extremal(4, 3, &[Forbidden::Cycle(4)], Mode::Oriented).unwrap().to_json();
    assert_eq!(json["max_copies"], "2");
    assert_eq!(json["mode"], "oriented");
    assert_eq!(json["forbidden"][0], "C4");
}
