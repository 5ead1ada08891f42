use std::collections::HashSet;

use noncomm_core::constructions::build_str;
use noncomm_core::groups::serial_keys;
use noncomm_core::matgroups::standard_transvections;
use noncomm_core::{gl2, pgl2, sl2, Group, GroupError, Subgroup};
use proptest::prelude::*;

fn brute_centralizer(g: &Group, x: usize) -> Vec<usize> {
    (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).collect()
}

/// Closure of every commutator `[a, b]`, by repeated products until stable.
fn brute_derived(g: &Group) -> Vec<usize> {
    let mut set: HashSet<usize> = (0..g.order())
        .flat_map(|a| (0..g.order()).map(move |b| (a, b)))
        .map(|(a, b)| g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)))
        .collect();
    loop {
        let items: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for &a in &items {
            for &b in &items {
                set.insert(g.mul(a, b));
            }
        }
        if set.len() == before {
            let mut out: Vec<usize> = set.into_iter().collect();
            out.sort_unstable();
            return out;
        }
    }
}

/// Counts subsets closed under products (finite, so subgroups), for tiny groups.
fn brute_subgroup_count(g: &Group) -> usize {
    let n = g.order();
    assert!(n <= 12);
    (1u32..(1 << n))
        .filter(|&mask| {
            let has = |x: usize| mask >> x & 1 == 1;
            has(g.identity()) && (0..n).all(|a| !has(a) || (0..n).all(|b| !has(b) || has(g.mul(a, b))))
        })
        .count()
}

#[test]
fn closure_examples() {
    let s3 = build_str("S3").unwrap();
    assert_eq!(s3.closure(&[s3.identity()]).order(), 1);
    let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
    assert_eq!(s3.closure(&[t]).order(), 2);
    let sl23 = sl2(3).unwrap();
    let (a, b) = standard_transvections(&sl23).unwrap();
    assert_eq!(sl23.closure(&[a, b]).order(), 24);
}

#[test]
fn centers() {
    assert!(build_str("S3").unwrap().center().is_trivial());
    assert_eq!(sl2(3).unwrap().center().order(), 2);
    assert_eq!(gl2(4).unwrap().center().order(), 3);
}

#[test]
fn centralizers_match_brute_force() {
    for g in [sl2(3).unwrap(), sl2(5).unwrap(), build_str("S4").unwrap()] {
        assert_eq!(g.centralizer(g.identity()).order(), g.order());
        for x in 0..g.order() {
            let c = g.centralizer(x);
            assert_eq!(c.members(), brute_centralizer(&g, x).as_slice());
            assert_eq!(g.centralizer_orders()[x] as usize, c.order());
            let mut gens = vec![x];
            gens.extend_from_slice(g.center().members());
            assert!(g.closure(&gens).is_subset_of(&c));
        }
    }
    let sl23 = sl2(3).unwrap();
    assert!(sl23.centralizer_orders().contains(&4));
    // unipotent elements of SL(2,5) have centralizer order 2q
    let sl25 = sl2(5).unwrap();
    let (a, _) = standard_transvections(&sl25).unwrap();
    assert_eq!(sl25.centralizer(a).order(), 10);
}

#[test]
fn derived_subgroups() {
    assert!(build_str("C6").unwrap().derived_subgroup().is_trivial());
    let s3 = build_str("S3").unwrap();
    assert_eq!(s3.derived_subgroup().order(), 3);
    for g in [s3, build_str("S4").unwrap(), sl2(3).unwrap(), build_str("direct(C2,A4)").unwrap()] {
        assert_eq!(g.derived_subgroup().members(), brute_derived(&g).as_slice(), "{}", g.label());
    }
    let gl24 = gl2(4).unwrap();
    let d = gl24.derived_subgroup();
    assert_eq!(d.order(), 60);
    let dg = gl24.subgroup_as_group(&d, "G'").unwrap();
    assert!(dg.is_isomorphic(&sl2(4).unwrap()).unwrap().is_some());
}

#[test]
fn quotients() {
    let s3 = build_str("S3").unwrap();
    let same = s3.quotient(&s3.trivial_subgroup()).unwrap();
    assert!(same.is_isomorphic(&s3).unwrap().is_some());
    let sl23 = sl2(3).unwrap();
    let q = sl23.quotient(sl23.center()).unwrap();
    assert_eq!(q.order(), 12);
    assert!(q.is_isomorphic(&build_str("A4").unwrap()).unwrap().is_some());
    let gl25 = gl2(5).unwrap();
    let q = gl25.quotient(gl25.center()).unwrap();
    assert_eq!(q.order(), 120);
    assert!(q.is_isomorphic(&pgl2(5).unwrap()).unwrap().is_some());
    let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
    assert!(matches!(s3.quotient(&s3.closure(&[t])), Err(GroupError::NotNormal)));
}

#[test]
fn solvable_and_nilpotent() {
    assert!(build_str("D8").unwrap().is_nilpotent());
    let sl23 = sl2(3).unwrap();
    assert!(!sl23.is_nilpotent());
    assert!(sl23.is_solvable());
    assert!(!sl2(5).unwrap().is_solvable());
}

#[test]
fn sylow_counts() {
    let s3 = build_str("S3").unwrap();
    assert_eq!(s3.sylow(3).unwrap().count, 1);
    assert_eq!(sl2(3).unwrap().sylow(3).unwrap().count, 4);
    assert_eq!(sl2(5).unwrap().sylow(5).unwrap().count, 6);
    assert!(matches!(s3.sylow(5), Err(GroupError::PrimeDoesNotDivide { .. })));
}

#[test]
fn isomorphisms() {
    let sl23 = sl2(3).unwrap();
    let id = sl23.is_isomorphic(&sl23).unwrap().unwrap();
    assert_eq!(id, (0..24).collect::<Vec<_>>());
    let s3 = build_str("S3").unwrap();
    let map = sl2(2).unwrap().is_isomorphic(&s3).unwrap().unwrap();
    assert!(sl2(2).unwrap().verify_isomorphism(&s3, &map));
    assert!(sl23.is_isomorphic(&build_str("direct(C2,A4)").unwrap()).unwrap().is_none());
    let big = gl2(7).unwrap();
    assert!(matches!(big.is_isomorphic(&big), Err(GroupError::IsoBoundExceeded { .. })));
}

#[test]
fn direct_products() {
    let s3 = build_str("S3").unwrap();
    assert!(s3.internal_direct_product(&s3.whole(), &s3.trivial_subgroup()));
    let gl24 = gl2(4).unwrap();
    assert!(gl24.internal_direct_product(&gl24.derived_subgroup(), gl24.center()));
    let gl25 = gl2(5).unwrap();
    let d = gl25.derived_subgroup();
    assert!(!gl25.internal_direct_product(&d, gl25.center()));
    assert_eq!(d.intersection(gl25.center()).order(), 2);
}

#[test]
fn lattices() {
    let z6 = build_str("C6").unwrap();
    assert_eq!(z6.subgroup_lattice().unwrap().len(), 4);
    for (text, count) in [("S3", 6), ("A4", 10), ("D8", 10), ("Q8", 6), ("C12", 6)] {
        let g = build_str(text).unwrap();
        let lattice = g.subgroup_lattice().unwrap();
        assert_eq!(lattice.len(), count, "{text}");
        assert_eq!(lattice.len(), brute_subgroup_count(&g), "{text}");
    }
    assert!(matches!(sl2(7).unwrap().subgroup_lattice(), Err(GroupError::LatticeBoundExceeded { .. })));
}

#[test]
fn json_round_trip() {
    let sl23 = sl2(3).unwrap();
    let json = sl23.to_json();
    assert!(json.table.is_some());
    let back = Group::from_json_table(&json).unwrap();
    assert_eq!(back.order(), 24);
    assert!(back.is_isomorphic(&sl23).unwrap().is_some());
    let text = serde_json::to_string(&Subgroup::from_members(vec![3, 1, 0])).unwrap();
    assert_eq!(text, "[0,1,3]");
}

fn battery() -> Vec<Group> {
    ["S3", "D8", "Q8", "A4", "Dic12", "D12", "direct(C2,S3)", "S4", "semidirect(C5,C4,x^2)", "direct(C3,Q8)", "C12"]
        .iter()
        .map(|t| build_str(t).unwrap())
        .chain([sl2(3).unwrap(), gl2(3).unwrap(), sl2(5).unwrap()])
        .collect()
}

fn cyclic(n: usize) -> Group {
    Group::from_fn(format!("C{n}"), serial_keys(n), move |a, b| (a + b) % n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lagrange_and_sylow(idx in 0usize..14, seeds in prop::collection::vec(0usize..1000, 1..3)) {
        let g = &battery()[idx];
        let gens: Vec<usize> = seeds.iter().map(|s| s % g.order()).collect();
        let s = g.closure(&gens);
        prop_assert_eq!(g.order() % s.order(), 0);
        for (p, _) in noncomm_core::arith::factorize(g.order() as u64) {
            let info = g.sylow(p).unwrap();
            let p_part = noncomm_core::arith::p_part(g.order() as u64, p) as usize;
            prop_assert_eq!(info.count % p as usize, 1);
            prop_assert_eq!((g.order() / p_part) % info.count, 0);
            prop_assert_eq!(info.representative.order(), p_part);
        }
    }

    #[test]
    fn quotient_by_center(idx in 0usize..14) {
        let g = &battery()[idx];
        let qm = g.quotient_map(g.center()).unwrap();
        prop_assert_eq!(qm.group.order() * g.center().order(), g.order());
        let pulled = qm.preimage(qm.group.center());
        prop_assert!(g.center().is_subset_of(&pulled));
        prop_assert!(g.is_normal(&pulled));
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(i in 0usize..14, j in 0usize..14) {
        let all = battery();
        let (a, b) = (&all[i], &all[j]);
        let ab = a.is_isomorphic(b).unwrap();
        let ba = b.is_isomorphic(a).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let Some(map) = ab {
            prop_assert!(a.verify_isomorphism(b, &map));
        }
        prop_assert!(a.is_isomorphic(a).unwrap().is_some());
    }

    #[test]
    fn cyclic_products(m in 1usize..8, n in 1usize..8) {
        let gcd = (1..=m.min(n)).rev().find(|d| m % d == 0 && n % d == 0).unwrap();
        let prod = build_str(&format!("direct(C{m},C{n})")).unwrap();
        prop_assert_eq!(prod.is_isomorphic(&cyclic(m * n)).unwrap().is_some(), gcd == 1);
    }
}
