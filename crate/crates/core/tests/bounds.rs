use std::cmp::Ordering;

use forestry::bound::{
    compare, girth_limit, p_bound, per_vertex_root, q_bound, ring_family, ring_graph, upper_bound_fd,
    AsymptoticError, BoundExpr, Radical,
};
use forestry::count::{count_forests_bruteforce, MemoCache};
use forestry::harness::catalog_entry;
use forestry::{count_forests, Count, MultiGraph};
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

fn f(g: &MultiGraph) -> Count {
    count_forests(g, &MemoCache::default())
}

/// `value^s` against the prime product, by direct integer arithmetic.
fn reference_compare(value: &Count, b: &BoundExpr) -> Ordering {
    // 198 = 2 * 3^2 * 11
    let (e2, e3, e11) = (b.a + b.c, b.b + 2 * b.c, b.c);
    let mut left = value.pow(b.s);
    let mut right = BigUint::one();
    for (p, e) in [(2u32, e2), (3, e3), (11, e11)] {
        let factor = BigUint::from(p).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            right *= factor;
        } else {
            left *= factor;
        }
    }
    left.cmp(&right)
}

proptest! {
    #[test]
    fn compare_agrees_with_reference(v in 1u64..1_000_000, a in -40i64..80, b in 0i64..30, c in 0i64..30, s in prop::sample::select(vec![1u32, 2, 4, 5, 10])) {
        let bound = BoundExpr { a, b, c, s };
        let value = Count::from(v);
        let ord = compare(&value, &bound);
        prop_assert_eq!(ord, reference_compare(&value, &bound));
        // far from the boundary the float evaluation agrees
        let gap = (v as f64).ln() - bound.ln();
        if gap.abs() > 1e-9 {
            prop_assert_eq!(ord, if gap > 0.0 { Ordering::Greater } else { Ordering::Less });
        }
    }

    #[test]
    fn compare_is_monotone(v in 1u64..100_000, a in 0i64..60, b in 0i64..20) {
        let bound = BoundExpr { a, b, c: 0, s: 4 };
        let lo = compare(&Count::from(v), &bound);
        let hi = compare(&Count::from(v + 1), &bound);
        prop_assert!(hi >= lo);
        if lo == Ordering::Equal {
            prop_assert_eq!(hi, Ordering::Greater);
        }
    }

    #[test]
    fn per_vertex_root_tracks_exact_power(base in 2u32..50, n in 1usize..4000) {
        let value = Count::from(base).pow(n as u32);
        let r = per_vertex_root(&value, n);
        prop_assert!(r.within(base as f64, 1e-9), "{:?}", r);
    }
}

#[test]
fn bound_examples() {
    let k4e = MultiGraph::complete(4).delete_edge(0, 1).unwrap();
    assert_eq!(p_bound(&k4e).unwrap().compare(&Count::from(24u32)), Ordering::Equal);
    let k33 = MultiGraph::complete_bipartite(3, 3);
    assert_eq!(p_bound(&k33).unwrap().compare(&Count::from(288u32)), Ordering::Equal);
    assert_eq!(compare(&f(&k33), &p_bound(&k33).unwrap()), Ordering::Greater);
    let k3 = MultiGraph::complete(3);
    // 7 > 2^2 3^(1/2)
    assert_eq!(compare(&f(&k3), &p_bound(&k3).unwrap()), Ordering::Greater);
    let y5p = catalog_entry("Y5'").unwrap().graph;
    assert_eq!(compare(&f(&y5p), &q_bound(&y5p).unwrap()), Ordering::Equal);
}

#[test]
fn upper_bounds_as_radicals() {
    let three = upper_bound_fd(3).unwrap();
    assert_eq!((three.radical.radicand.clone(), three.radical.index), (Count::from(48u32), 4));
    assert!(three.radical.same_value(&Radical::from_factors(&[(2, 1, 1), (3, 1, 4)])));
    let four = upper_bound_fd(4).unwrap();
    assert_eq!(four.radical.radicand, Count::from(396u32));
    assert!(four.radical.same_value(&Radical::from_factors(&[(2, 2, 5), (99, 1, 5)])));
    let five = upper_bound_fd(5).unwrap();
    let k6e = MultiGraph::complete(6).delete_edge(0, 1).unwrap();
    assert_eq!(five.radical.radicand, f(&k6e) * 2u32);
    assert_eq!(five.radical.index, 6);
    assert!(matches!(upper_bound_fd(2), Err(AsymptoticError::CapExceeded { .. })));
}

#[test]
fn girth_limit_values() {
    assert!((girth_limit(3) - 2f64.powf(1.5)).abs() < 1e-12);
    assert!((girth_limit(4) - 27.0 / 7.0).abs() < 1e-12);
    assert!((girth_limit(5) - 256.0 / 14f64.powf(1.5)).abs() < 1e-12);
}

#[test]
fn k5_contracted_edge() {
    let g = MultiGraph::complete(5).contract_edge(0, 1).unwrap();
    assert_eq!(count_forests_bruteforce(&g).unwrap(), Count::from(93u32));
    assert_eq!(f(&g), Count::from(93u32));
}

#[test]
fn ring_family_seeds() {
    let seeds = [
        MultiGraph::complete(4),
        MultiGraph::complete(5),
        catalog_entry("D5").unwrap().graph,
        catalog_entry("Y5").unwrap().graph,
        MultiGraph::complete_bipartite(3, 3),
    ];
    for g in &seeds {
        let (u, v) = g.edge_list()[0];
        let series = ring_family(g, u, v, &[1, 2, 3, 6]).unwrap();
        assert!(series.direct_counts_agree());
        assert_eq!(series.rows[0].forests, f(g));
        assert!(series.rows[..3].iter().all(|r| r.direct.is_some()));
        assert!(series.rows[3].direct.is_none());
    }
    let k5 = ring_family(&MultiGraph::complete(5), 0, 1, &[1]).unwrap();
    assert_eq!((k5.a.clone(), k5.b.clone()), (Count::from(198u32), Count::from(105u32)));
}

#[test]
fn ring_graph_shape() {
    let k4 = MultiGraph::complete(4);
    let r = ring_graph(&k4, 0, 1, 3).unwrap();
    assert_eq!(r.vertex_count(), 12);
    assert_eq!(r.edge_count(), 18);
    assert!(r.degrees().iter().all(|&d| d == 3));
    let path = MultiGraph::path(3);
    assert!(matches!(ring_family(&path, 0, 1, &[1]), Err(AsymptoticError::BridgeEdge(..))));
}
