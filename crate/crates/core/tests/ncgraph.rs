use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use noncomm_core::constructions::build_str;
use noncomm_core::ncgraph::{clique_number, fingerprint, graphs_isomorphic, graphs_isomorphic_within};
use noncomm_core::{build_graph, gl2, sl2, CentralizerProfile, Group, NcGraphError};
use proptest::prelude::*;

const BUDGET: Duration = Duration::from_secs(120);

fn brute_centralizer(g: &Group, x: usize) -> Vec<usize> {
    (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).collect()
}

/// `(w, distinct)` computed from raw multiplication.
fn brute_profile(g: &Group) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let n = g.order();
    let center: Vec<usize> = (0..n).filter(|&x| brute_centralizer(g, x).len() == n).collect();
    let mut w = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for x in (0..n).filter(|x| !center.contains(x)) {
        let c = brute_centralizer(g, x);
        *w.entry(c.len()).or_insert(0) += 1;
        seen.insert(c);
    }
    let mut distinct = BTreeMap::new();
    for c in seen {
        *distinct.entry(c.len()).or_insert(0) += 1;
    }
    (w, distinct)
}

fn map(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

#[test]
fn small_graphs() {
    let s3 = build_graph(&build_str("S3").unwrap()).unwrap();
    assert_eq!((s3.vertex_count(), s3.edge_count()), (5, 9));
    let sl23 = build_graph(&sl2(3).unwrap()).unwrap();
    assert_eq!(sl23.vertex_count(), 22);
    let d8 = build_graph(&build_str("D8").unwrap()).unwrap();
    assert_eq!((d8.vertex_count(), d8.edge_count()), (6, 12));
    assert!(matches!(build_graph(&build_str("C6").unwrap()), Err(NcGraphError::Abelian(_))));
}

#[test]
fn edges_match_commutators() {
    for g in [sl2(3).unwrap(), build_str("S4").unwrap(), gl2(3).unwrap()] {
        let graph = build_graph(&g).unwrap();
        let mut edges = 0;
        for u in 0..graph.vertex_count() {
            assert!(!graph.adjacent(u, u));
            for v in 0..graph.vertex_count() {
                let (x, y) = (graph.element(u), graph.element(v));
                assert_eq!(graph.adjacent(u, v), g.mul(x, y) != g.mul(y, x));
                edges += usize::from(u < v && graph.adjacent(u, v));
            }
            assert_eq!(graph.degree(u), g.order() - brute_centralizer(&g, graph.element(u)).len());
        }
        assert_eq!(graph.edge_count(), edges);
        assert_eq!(graph.degree_mismatch(), None);
    }
}

#[test]
fn profiles() {
    let gl24 = gl2(4).unwrap();
    let p = CentralizerProfile::from_group(&gl24).unwrap();
    assert_eq!(p.w, map(&[(9, 60), (12, 45), (15, 72)]));
    assert_eq!(p.w_prime, map(&[(3, 60), (4, 45), (5, 72)]));
    assert_eq!(p.distinct_centralizer_counts, map(&[(9, 10), (12, 5), (15, 6)]));
    let sl25 = CentralizerProfile::from_group(&sl2(5).unwrap()).unwrap();
    assert_eq!(sl25.w, map(&[(4, 30), (6, 40), (10, 48)]));
    assert_eq!(sl25.total(), 118);
    let sl23 = CentralizerProfile::from_group(&sl2(3).unwrap()).unwrap();
    assert_eq!(sl23.w, map(&[(4, 6), (6, 16)]));
    assert_eq!(sl23.distinct_centralizer_counts, map(&[(4, 3), (6, 4)]));
}

#[test]
fn profiles_match_brute_force_and_graph() {
    for text in ["S3", "D8", "A4", "S4", "Dic12", "direct(C3,Q8)", "semidirect(C5,C4,x^2)"] {
        let g = build_str(text).unwrap();
        let p = CentralizerProfile::from_group(&g).unwrap();
        let (w, distinct) = brute_profile(&g);
        assert_eq!(p.w, w, "{text}");
        assert_eq!(p.distinct_centralizer_counts, distinct, "{text}");
        let via = CentralizerProfile::from_graph(&build_graph(&g).unwrap());
        assert_eq!(via, p, "{text}");
    }
}

/// Largest set of pairwise non-commuting elements by subset enumeration.
fn brute_omega(graph: &noncomm_core::NcGraph) -> usize {
    let n = graph.vertex_count();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|&m| {
            let set: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            graph.is_clique(&set)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

#[test]
fn clique_numbers() {
    for text in ["S3", "D8", "Q8", "A4", "D12", "Dic12"] {
        let graph = build_graph(&build_str(text).unwrap()).unwrap();
        let c = clique_number(&graph, BUDGET).unwrap();
        assert_eq!(c.size, brute_omega(&graph), "{text}");
        assert!(graph.is_clique(&c.vertices));
    }
    // for AC-groups the clique number equals the number of distinct proper centralizers
    for (g, expected) in [(gl2(3).unwrap(), 13), (sl2(5).unwrap(), 31)] {
        let distinct: usize = brute_profile(&g).1.values().sum();
        assert_eq!(distinct, expected);
        let graph = build_graph(&g).unwrap();
        let c = clique_number(&graph, BUDGET).unwrap();
        assert_eq!(c.size, expected, "{}", g.label());
        assert!(graph.is_clique(&c.vertices));
    }
}

#[test]
fn fingerprints_and_isomorphism() {
    let sl23 = build_graph(&sl2(3).unwrap()).unwrap();
    let d24 = build_graph(&build_str("D24").unwrap()).unwrap();
    assert_eq!(sl23.vertex_count(), d24.vertex_count());
    assert!(!fingerprint(&sl23).matches(&fingerprint(&d24)));
    assert_eq!(graphs_isomorphic(&sl23, &d24).unwrap(), None);
    let d8 = build_graph(&build_str("D8").unwrap()).unwrap();
    let q8 = build_graph(&build_str("Q8").unwrap()).unwrap();
    assert!(fingerprint(&d8).matches(&fingerprint(&q8)));
    let map = graphs_isomorphic(&d8, &q8).unwrap().unwrap();
    for u in 0..6 {
        for v in 0..6 {
            assert_eq!(d8.adjacent(u, v), q8.adjacent(map[u], map[v]));
        }
    }
    let big = build_graph(&sl2(5).unwrap()).unwrap();
    assert!(matches!(graphs_isomorphic(&big, &big), Err(NcGraphError::IsoBoundExceeded { .. })));
    assert!(graphs_isomorphic_within(&big, &big, 200).unwrap().is_some());
}

#[test]
fn isomorphic_graphs_share_profiles() {
    let groups: Vec<Group> = ["D8", "Q8", "S3", "D12", "Dic12", "direct(C2,S3)", "A4", "direct(C3,S3)", "direct(C3,Q8)", "direct(C3,D8)"]
        .iter()
        .map(|t| build_str(t).unwrap())
        .collect();
    let graphs: Vec<_> = groups.iter().map(|g| build_graph(g).unwrap()).collect();
    let mut pairs = 0;
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            if groups[i].order() != groups[j].order() {
                continue;
            }
            if graphs_isomorphic(&graphs[i], &graphs[j]).unwrap().is_some() {
                pairs += 1;
                let a = CentralizerProfile::from_group(&groups[i]).unwrap();
                let b = CentralizerProfile::from_group(&groups[j]).unwrap();
                assert_eq!(a.w, b.w);
                assert_eq!(a.distinct_centralizer_counts, b.distinct_centralizer_counts);
            }
        }
    }
    // D8 ~ Q8, D12 ~ Dic12 ~ C2xS3, C3xQ8 ~ C3xD8
    assert_eq!(pairs, 5);
}

#[test]
fn dimacs_export() {
    let graph = build_graph(&build_str("S3").unwrap()).unwrap();
    let text = graph.to_dimacs();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("c "));
    assert_eq!(lines[1], "p edge 5 9");
    assert_eq!(lines.len(), 2 + 9);
    for line in &lines[2..] {
        let parts: Vec<usize> = line[2..].split(' ').map(|s| s.parse().unwrap()).collect();
        assert!(parts[0] < parts[1] && parts[0] >= 1 && parts[1] <= 5);
        assert!(graph.adjacent(parts[0] - 1, parts[1] - 1));
    }
    let json = graph.to_edge_list();
    assert_eq!(json.edges.len(), 9);
    assert_eq!(json.group_order, 6);
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabel_preserves_invariants(perm in permutation(22)) {
        let graph = build_graph(&sl2(3).unwrap()).unwrap();
        let moved = graph.relabel(&perm).unwrap();
        prop_assert_eq!(fingerprint(&graph), fingerprint(&moved));
        prop_assert_eq!(
            clique_number(&graph, BUDGET).unwrap().size,
            clique_number(&moved, BUDGET).unwrap().size
        );
        prop_assert!(graphs_isomorphic(&graph, &moved).unwrap().is_some());
        for (u, &p) in perm.iter().enumerate() {
            prop_assert_eq!(moved.element(p), graph.element(u));
        }
    }

    #[test]
    fn independent_iff_commuting(seed in prop::collection::vec(0usize..22, 1..5)) {
        let g = sl2(3).unwrap();
        let graph = build_graph(&g).unwrap();
        let mut set = seed.clone();
        set.sort_unstable();
        set.dedup();
        let commuting = set.iter().all(|&u| set.iter().all(|&v| g.commute(graph.element(u), graph.element(v))));
        prop_assert_eq!(graph.is_independent(&set), commuting);
    }
}
