mod common;

use std::collections::{BTreeSet, HashMap};

use common::*;
use forestry::graph::{canonical_form, parse_edge_list, parse_graph, parse_graph6, to_edge_list, to_graph6};
use forestry::{canonical_key, CanonicalKey, MultiGraph};
use proptest::prelude::*;

#[test]
fn four_vertex_simple_graphs_have_eleven_classes() {
    let perms = permutations(4);
    let graphs: Vec<MultiGraph> = all_labeled_simple(4).collect();
    let keys: BTreeSet<CanonicalKey> = graphs.iter().map(canonical_key).collect();
    assert_eq!(keys.len(), 11);
    // independent count of classes by pairwise brute-force isomorphism
    let mut reps: Vec<&MultiGraph> = Vec::new();
    for g in &graphs {
        if !reps.iter().any(|r| isomorphic_bruteforce(r, g, &perms)) {
            reps.push(g);
        }
    }
    assert_eq!(reps.len(), 11);
}

#[test]
fn simple_graph_class_counts() {
    // 1, 2, 4, 11, 34, 156 graphs on 1..=6 vertices
    let expected = [1usize, 2, 4, 11, 34, 156];
    for (i, &want) in expected.iter().enumerate() {
        let keys: BTreeSet<CanonicalKey> = all_labeled_simple(i + 1).map(|g| canonical_key(&g)).collect();
        assert_eq!(keys.len(), want, "n = {}", i + 1);
    }
}

/// Every labeled multigraph on `n` vertices with multiplicity at most `t`.
fn all_labeled_multi(n: usize, t: u32) -> Vec<MultiGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let base = t as usize + 1;
    let total = base.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut triples = Vec::new();
            for &(u, v) in &pairs {
                let m = (code % base) as u32;
                code /= base;
                if m > 0 {
                    triples.push((u, v, m));
                }
            }
            MultiGraph::from_weighted(n, &triples).unwrap()
        })
        .collect()
}

#[test]
fn key_equality_is_isomorphism_exhaustive_small() {
    // all pairs on 4 vertices with multiplicity <= 2, and on 3 vertices with <= 3
    for (n, t) in [(3usize, 3u32), (4, 2)] {
        let perms = permutations(n);
        let graphs = all_labeled_multi(n, t);
        let keys: Vec<CanonicalKey> = graphs.iter().map(canonical_key).collect();
        // group by key, then check one brute-force representative per class
        let mut classes: HashMap<&CanonicalKey, Vec<usize>> = HashMap::new();
        for (i, k) in keys.iter().enumerate() {
            classes.entry(k).or_default().push(i);
        }
        for members in classes.values() {
            let r = &graphs[members[0]];
            for &i in members {
                assert!(isomorphic_bruteforce(r, &graphs[i], &perms));
            }
        }
        let reps: Vec<&MultiGraph> = classes.values().map(|m| &graphs[m[0]]).collect();
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(!isomorphic_bruteforce(a, b, &perms), "distinct keys for isomorphic graphs");
            }
        }
    }
}

#[test]
fn canonical_order_rebuilds_key() {
    let g = MultiGraph::from_weighted(5, &[(0, 1, 2), (1, 2, 1), (2, 3, 3), (3, 4, 1), (4, 0, 1), (1, 3, 1)]).unwrap();
    let c = canonical_form(&g);
    let h = g.permute(&c.positions());
    assert_eq!(canonical_key(&h), c.key);
    assert_eq!(canonical_form(&h).key, c.key);
}

fn arb_pair() -> impl Strategy<Value = (MultiGraph, MultiGraph)> {
    // same vertex count, often the same graph relabelled and lightly edited
    (2usize..=6).prop_flat_map(|n| {
        let triples = proptest::collection::vec((0..n, 0..n, 1u32..=3), 0..=10);
        (
            triples.clone(),
            triples,
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            0u8..3,
        )
            .prop_map(move |(a, b, perm, mode)| {
                let g = build(n, &a);
                let h = match mode {
                    0 => g.permute(&perm),
                    1 => {
                        let mut h = g.permute(&perm);
                        if let Some(&(u, v)) = h.edge_list().first() {
                            h = h.delete_edge(u, v).unwrap().with_edge((u + 1) % n, v).unwrap_or(h);
                        }
                        h
                    }
                    _ => build(n, &b),
                };
                (g, h)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn key_equality_iff_isomorphic((g, h) in arb_pair()) {
        let perms = permutations(g.vertex_count());
        let same = canonical_key(&g) == canonical_key(&h);
        prop_assert_eq!(same, isomorphic_bruteforce(&g, &h, &perms));
    }

    #[test]
    fn hex_round_trip(g in arb_multigraph(8, 12, 3)) {
        let k = canonical_key(&g);
        prop_assert_eq!(CanonicalKey::from_hex(&k.to_hex()), Some(k));
    }

    #[test]
    fn edge_list_round_trip(g in arb_multigraph(9, 12, 3)) {
        let text = to_edge_list(&g);
        prop_assert_eq!(&parse_edge_list(&text).unwrap(), &g);
        prop_assert_eq!(&parse_graph(&text).unwrap(), &g);
    }

    #[test]
    fn graph6_round_trip(g in arb_multigraph(12, 20, 1).prop_filter("simple", MultiGraph::is_simple)) {
        let s = to_graph6(&g).expect("simple graph");
        prop_assert_eq!(&parse_graph6(&s).unwrap(), &g);
    }
}

#[test]
fn graph6_rejects_multigraphs() {
    let g = MultiGraph::from_weighted(2, &[(0, 1, 2)]).unwrap();
    assert_eq!(to_graph6(&g), None);
}
