use super::*;
use crate::counting::count_cycle_copies;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn all_ids() -> Vec<ConstructionId> {
    use ConstructionId::*;
    vec![
        BalancedCycleBlowup { d: 2 },
        BalancedCycleBlowup { d: 3 },
        BalancedCycleBlowup { d: 5 },
        SparseSingletonBlowup { k: 4 },
        IteratedC4,
        C5c3TournamentBlobs,
        C5c7BipartiteBlobs { variant: C5c7Variant::Adjacent },
        C5c7BipartiteBlobs { variant: C5c7Variant::Opposite },
        C3c6Sparse,
        C7ChordsBlowup,
        ThresholdC7 { c: 0.67757, pairs: ThresholdPairs::Cycle },
        RandomBipartite,
        CompleteBipartiteDigraph,
        C3_3tSparse { t: 3 },
    ]
}

#[test]
fn c3c6_example() {
    let g = generate(&ConstructionId::C3c6Sparse, 9, 0).unwrap();
    assert_eq!(g.n(), 9);
    assert_eq!(g.arc_count(), 24);
    assert_eq!(count_cycle_copies(&g, 3), big(16));
    assert!(!has_cycle_subgraph(&g, 6));
}

#[test]
fn c5c3_example() {
    let g = generate(&ConstructionId::C5c3TournamentBlobs, 8, 0).unwrap();
    assert_eq!(count_cycle_copies(&g, 5), big(32));
    assert!(!has_cycle_subgraph(&g, 3));
}

#[test]
fn c4_blowup_example() {
    let g = generate(&ConstructionId::BalancedCycleBlowup { d: 4 }, 8, 0).unwrap();
    assert_eq!(count_cycle_copies(&g, 4), big(16));
    assert!(!has_closed_walk(&g, 6));
}

#[test]
fn c5c7_at_twenty() {
    for variant in [C5c7Variant::Adjacent, C5c7Variant::Opposite] {
        let id = ConstructionId::C5c7BipartiteBlobs { variant };
        let g = generate(&id, 20, 0).unwrap();
        let cf = closed_form_count(&id, 20, 5).unwrap();
        // two choices of split group, 3·3·6·4·4 each
        assert_eq!(cf.as_integer(), Some(big(1728)));
        assert_eq!(count_cycle_copies(&g, 5), big(1728));
        assert!(!has_cycle_subgraph(&g, 7));
        assert!(has_cycle_subgraph(&g, 5));
    }
    assert_eq!(
        generate(&ConstructionId::C5c7BipartiteBlobs { variant: C5c7Variant::Adjacent }, 5, 0),
        Err(Error::TooSmall { n_min: 6 })
    );
}

#[test]
fn closed_forms_match_counts() {
    for id in all_ids() {
        let k = id.target_k();
        for n in id.n_min()..=id.n_min() + 9 {
            let cf = closed_form_count(&id, n, k).unwrap();
            if cf.kind != CountKind::Exact {
                continue;
            }
            let g = generate(&id, n, 1).unwrap();
            assert_eq!(Some(count_cycle_copies(&g, k)), cf.as_integer(), "{id} n={n}");
        }
    }
}

#[test]
fn secondary_lengths_match() {
    use ConstructionId::*;
    let cases: Vec<(ConstructionId, Vec<usize>)> = vec![
        (BalancedCycleBlowup { d: 3 }, vec![3, 4, 6, 9]),
        (CompleteBipartiteDigraph, vec![2, 3, 4, 6]),
        (C5c3TournamentBlobs, vec![3, 4, 5]),
        (C5c7BipartiteBlobs { variant: C5c7Variant::Adjacent }, vec![3, 4, 5, 6, 7]),
        (C3_3tSparse { t: 3 }, vec![3, 6]),
    ];
    for (id, ks) in cases {
        for n in [id.n_min(), 9, 12] {
            let g = generate(&id, n, 0).unwrap();
            for &k in &ks {
                let cf = closed_form_count(&id, n, k).unwrap();
                assert_eq!(Some(count_cycle_copies(&g, k)), cf.as_integer(), "{id} n={n} k={k}");
            }
        }
    }
}

#[test]
fn iterated_values() {
    let cf = |n| closed_form_count(&ConstructionId::IteratedC4, n, 4).unwrap().as_integer().unwrap();
    assert_eq!(cf(16), big(260));
    assert_eq!(cf(5), big(2));
    assert_eq!(cf(4), big(1));
}

#[test]
fn chords_close_five_cycles() {
    let g = c7_chords_base();
    assert_eq!(g.arc_count(), 14);
    assert_eq!(count_cycle_copies(&g, 5), big(7));
    assert!(!has_closed_walk(&g, 4));
}

#[test]
fn threshold_is_c4_free() {
    let id = ConstructionId::ThresholdC7 { c: 0.67757, pairs: ThresholdPairs::Cycle };
    let rep = verify_freeness(&id, 70, &[4], 0).unwrap();
    assert!(rep.pass);
    let full = generate(&ConstructionId::ThresholdC7 { c: 1.0, pairs: ThresholdPairs::Cycle }, 21, 0).unwrap();
    assert_eq!(full, generate(&ConstructionId::C7ChordsBlowup, 21, 0).unwrap());
}

#[test]
fn random_bipartite_expectation() {
    let cf = closed_form_count(&ConstructionId::RandomBipartite, 12, 6).unwrap();
    assert_eq!(cf.kind, CountKind::Expectation);
    assert_eq!(cf.value, BigRational::from_integer(75.into()));
}

#[test]
fn freeness_examples() {
    let r = verify_freeness(&ConstructionId::BalancedCycleBlowup { d: 5 }, 25, &[3, 4, 6, 7, 8, 9], 0).unwrap();
    assert!(r.pass);
    assert!(r.entries.iter().all(|e| !e.has_closed_walk));
}

#[test]
fn parse_display_round_trip() {
    for id in all_ids() {
        let s = id.to_string();
        let (name, param) = match s.find('(') {
            Some(i) => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            None => (s.as_str(), None),
        };
        assert_eq!(ConstructionId::parse(name, param).unwrap(), id, "{s}");
    }
    assert!(ConstructionId::parse("balanced_cycle_blowup", Some("1")).is_err());
    assert!(ConstructionId::parse("threshold_c7", Some("1.5")).is_err());
    assert!(ConstructionId::parse("nope", None).is_err());
}
