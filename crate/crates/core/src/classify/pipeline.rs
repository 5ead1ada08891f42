//! End-to-end checks on `M = SL(2,q)` and `M = GL(2,q)`, and the rival scan
//! over a catalog of groups of one order.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use super::{is_ac_group, schmidt_nonsolvable_case, ClassifyError, SchmidtCase, OMEGA_VERTEX_LIMIT};
use crate::arith::{gcd, shared_prime_power};
use crate::constructions::{build_str, order24_catalog, order6_catalog};
use crate::groups::Group;
use crate::matgroups::{gl2, maximal_abelian_partition, pgl2, psl2, sl2};
use crate::ncgraph::{build_graph, clique_number, fingerprint, graphs_isomorphic, CentralizerProfile, NcGraph};
use crate::report::{Assertion, Assertions, Verdict};

/// Values of `q` accepted by [`verify_theorem_sl`].
pub const SL_QS: &[u64] = &[2, 3, 4, 5, 7, 8, 9];
/// Values of `q` accepted by [`verify_theorem_gl`].
pub const GL_QS: &[u64] = &[4, 5, 7, 8, 9];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: &'static str,
    pub q: u64,
    pub group: String,
    pub verdict: Verdict,
    pub assertions: Assertions,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RivalEntry {
    pub group: String,
    pub abelian: bool,
    pub fingerprint_match: bool,
    /// Exact graph isomorphism, run only on fingerprint ties.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphic: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RivalReport {
    pub order: usize,
    pub target: String,
    pub entries: Vec<RivalEntry>,
    pub matches: Vec<String>,
}

/// True when no prime has two of `q-1`, `q`, `q+1` among its positive powers.
pub fn prime_power_incompatible(q: u64) -> bool {
    q >= 2 && shared_prime_power(&[q - 1, q, q + 1]).is_none()
}

/// Compares every non-abelian catalog group's graph with `target`.
pub fn rival_scan(target: &NcGraph, catalog: &[Group]) -> Result<RivalReport, ClassifyError> {
    let order = target.group().order();
    let target_fp = fingerprint(target);
    let mut entries = Vec::new();
    for g in catalog {
        if g.order() != order {
            return Err(ClassifyError::Precondition(format!(
                "catalog group {} has order {}, target has {order}",
                g.label(),
                g.order()
            )));
        }
        if g.is_abelian() {
            entries.push(RivalEntry { group: g.label().into(), abelian: true, fingerprint_match: false, isomorphic: None });
            continue;
        }
        let graph = build_graph(g)?;
        let fingerprint_match = fingerprint(&graph).matches(&target_fp);
        let isomorphic = if fingerprint_match { Some(graphs_isomorphic(&graph, target)?.is_some()) } else { None };
        entries.push(RivalEntry { group: g.label().into(), abelian: false, fingerprint_match, isomorphic });
    }
    let matches = entries.iter().filter(|e| e.isomorphic == Some(true)).map(|e| e.group.clone()).collect();
    Ok(RivalReport { order, target: target.group().label().into(), entries, matches })
}

/// One family of centralizers: order, number of distinct centralizers, and
/// non-central elements in each.
struct Family {
    order: u64,
    count: u64,
    noncentral: u64,
}

fn families(q: u64, center: u64, orders: [u64; 3]) -> Vec<Family> {
    let counts = [q * (q + 1) / 2, q * (q - 1) / 2, q + 1];
    orders
        .into_iter()
        .zip(counts)
        .filter(|&(order, _)| order > center)
        .map(|(order, count)| Family { order, count, noncentral: order - center })
        .collect()
}

fn expected_w(fams: &[Family]) -> BTreeMap<u64, u64> {
    fams.iter().map(|f| (f.order, f.count * f.noncentral)).collect()
}

fn expected_distinct(fams: &[Family]) -> BTreeMap<u64, u64> {
    fams.iter().map(|f| (f.order, f.count)).collect()
}

/// Shared steps on a linear group: orders, graph bookkeeping, centralizer
/// multisets, AC, nilpotency, ω and the partition.
fn common_steps(
    m: &Group,
    q: u64,
    fams: &[Family],
    unipotent_order: u64,
    budget: Duration,
    out: &mut Assertions,
    data: &mut serde_json::Map<String, Value>,
) -> Result<NcGraph, ClassifyError> {
    let z = m.center().order();
    let graph = build_graph(m)?;
    out.push(Assertion::equal("graph vertices equal |G| - |Z(G)|", m.order() - z, graph.vertex_count()));
    out.push(Assertion::equal("every degree equals |G| - |C(x)|", Value::Null, graph.degree_mismatch()));

    let profile = CentralizerProfile::from_group(m)?;
    let as_u64 = |map: &BTreeMap<usize, usize>| -> BTreeMap<u64, u64> {
        map.iter().map(|(&k, &v)| (k as u64, v as u64)).collect()
    };
    let w = expected_w(fams);
    out.push(Assertion::equal("W distinct values", w.keys().collect::<Vec<_>>(), profile.w_values()));
    out.push(Assertion::equal(
        "W' distinct values",
        w.keys().map(|k| k / z as u64).collect::<Vec<_>>(),
        profile.w_prime_values(),
    ));
    out.push(Assertion::equal("W element multiplicities", &w, as_u64(&profile.w)));
    out.push(Assertion::equal(
        "distinct centralizer counts",
        expected_distinct(fams),
        as_u64(&profile.distinct_centralizer_counts),
    ));
    out.push(Assertion::equal("W multiplicities sum to |G| - |Z(G)|", m.order() - z, profile.total()));
    let from_graph = CentralizerProfile::from_graph(&graph);
    out.push(Assertion::holds("graph-only profile equals group profile", from_graph == profile));

    let degrees: BTreeMap<usize, usize> =
        profile.w.iter().map(|(&c, &mult)| (m.order() - c, mult)).collect();
    let fp = fingerprint(&graph);
    out.push(Assertion::equal("fingerprint degrees follow W", &degrees, &fp.degrees));

    out.push(Assertion::holds("AC-group", is_ac_group(m)));

    let cents = m.centralizer_orders();
    let center = m.center();
    let same_order: Vec<usize> =
        (0..m.order()).filter(|&x| !center.contains(x) && cents[x] as u64 == unipotent_order).collect();
    let distinct_pair = same_order
        .first()
        .and_then(|&x| same_order.iter().find(|&&y| m.centralizer(y) != m.centralizer(x)).map(|&y| (x, y)));
    out.push(Assertion::holds(
        format!("distinct centralizers of equal order {unipotent_order}"),
        distinct_pair.is_some(),
    ));
    out.push(Assertion::equal("nilpotent", false, m.is_nilpotent()));

    let partition = maximal_abelian_partition(m)?;
    // the split family is the one that can be empty
    let split = if fams.len() == 3 { (q * (q + 1) / 2) as usize } else { 0 };
    out.push(Assertion::equal(
        "partition counts (Sylow, split tori, non-split tori)",
        [q as usize + 1, split, (q * (q - 1) / 2) as usize],
        [partition.sylow_count, partition.split_tori_count, partition.nonsplit_tori_count],
    ));
    out.push(Assertion::holds("partition covers pairwise trivially", partition.covers));

    let expected_omega: u64 = fams.iter().map(|f| f.count).sum();
    if graph.vertex_count() <= OMEGA_VERTEX_LIMIT {
        let clique = clique_number(&graph, budget)?;
        out.push(Assertion::equal("clique number equals partition size", partition.components, clique.size));
        out.push(Assertion::equal("clique number", expected_omega, clique.size as u64));
        data.insert("omega".into(), json!(clique.size));
        data.insert("omega_witness".into(), json!(clique.elements));
    } else {
        data.insert(
            "omega_skipped".into(),
            json!(format!("{} vertices exceeds {OMEGA_VERTEX_LIMIT}", graph.vertex_count())),
        );
    }
    data.insert("profile".into(), serde_json::to_value(&profile).expect("serializable"));
    data.insert("partition".into(), serde_json::to_value(&partition).expect("serializable"));
    data.insert("fingerprint_classes".into(), json!(fp.classes.len()));
    data.insert("distinct_centralizers".into(), json!(profile.distinct_total()));
    if let Some((x, y)) = distinct_pair {
        data.insert("equal_order_centralizers".into(), json!([x, y]));
    }
    Ok(graph)
}

fn check_q(family: &'static str, q: u64, supported: &'static [u64]) -> Result<(), ClassifyError> {
    if supported.contains(&q) {
        Ok(())
    } else {
        Err(ClassifyError::UnsupportedQ { family, q, supported })
    }
}

/// Runs every check on `M = SL(2,q)`; `q` must be in [`SL_QS`].
pub fn verify_theorem_sl(q: u64, budget: Duration) -> Result<TheoremReport, ClassifyError> {
    check_q("SL", q, SL_QS)?;
    let m = sl2(q)?;
    let d = gcd(2, q - 1);
    let mut out = Assertions::default();
    let mut data = serde_json::Map::new();
    out.push(Assertion::equal("order q(q^2-1)", q * (q * q - 1), m.order() as u64));
    out.push(Assertion::equal("center order gcd(2,q-1)", d, m.center().order() as u64));
    let fams = families(q, d, [q - 1, q + 1, d * q]);
    let graph = common_steps(&m, q, &fams, d * q, budget, &mut out, &mut data)?;
    out.push(Assertion::equal("solvable", q <= 3, m.is_solvable()));

    match q {
        2 => {
            let s3 = build_str("S3")?;
            out.push(Assertion::holds("SL(2,2) isomorphic to S3", m.is_isomorphic(&s3)?.is_some()));
            let rivals = rival_scan(&graph, &order6_catalog()?)?;
            out.push(Assertion::equal("order-6 rivals with the same graph", ["S3"], &rivals.matches));
            data.insert("rivals".into(), serde_json::to_value(&rivals).expect("serializable"));
        }
        3 => {
            let cents = m.centralizer_orders();
            out.push(Assertion::holds("some centralizer has order 6", cents.contains(&6)));
            out.push(Assertion::holds("some centralizer has order 4", cents.contains(&4)));
            let a4 = build_str("A4")?;
            let quotient = m.quotient(m.center())?;
            out.push(Assertion::holds("G/Z(G) isomorphic to A4", quotient.is_isomorphic(&a4)?.is_some()));
            let catalog = order24_catalog()?;
            out.push(Assertion::equal("order-24 catalog size", 15, catalog.len()));
            if let Some(z2a4) = catalog.iter().find(|g| g.label() == "Z2xA4") {
                let center = z2a4.center();
                let orders: Vec<u32> = (0..z2a4.order())
                    .filter(|&x| !center.contains(x))
                    .map(|x| z2a4.centralizer_orders()[x])
                    .collect();
                out.push(Assertion::holds("Z2xA4 has no centralizer of order 4", !orders.contains(&4)));
            }
            let rivals = rival_scan(&graph, &catalog)?;
            out.push(Assertion::equal("order-24 rivals with the same graph", ["SL(2,3)"], &rivals.matches));
            data.insert("rivals".into(), serde_json::to_value(&rivals).expect("serializable"));
        }
        _ => {
            out.push(Assertion::holds("q-1, q, q+1 are not powers of a common prime", prime_power_incompatible(q)));
            let report = schmidt_nonsolvable_case(&m)?;
            out.push(Assertion::equal("non-solvable case", SchmidtCase::Ns1, report.schmidt_case));
            out.push(Assertion::equal("case parameter r^m", Some(q), report.matches.first().and_then(|c| c.parameter)));
            if q.is_multiple_of(2) {
                let psl = psl2(q)?;
                out.push(Assertion::holds("SL(2,q) isomorphic to PSL(2,q)", m.is_isomorphic(&psl)?.is_some()));
            }
            data.insert("schmidt".into(), json!({
                "case": report.schmidt_case,
                "matches": report.matched(),
                "notes": report.notes,
            }));
        }
    }
    Ok(finish_report("SL", q, &m, out, data))
}

/// Runs every check on `M = GL(2,q)`; `q` must be in [`GL_QS`].
pub fn verify_theorem_gl(q: u64, budget: Duration) -> Result<TheoremReport, ClassifyError> {
    check_q("GL", q, GL_QS)?;
    let m = gl2(q)?;
    let mut out = Assertions::default();
    let mut data = serde_json::Map::new();
    out.push(Assertion::equal("order (q^2-1)(q^2-q)", (q * q - 1) * (q * q - q), m.order() as u64));
    out.push(Assertion::equal("center order q-1", q - 1, m.center().order() as u64));
    let fams = families(q, q - 1, [(q - 1) * (q - 1), q * q - 1, q * (q - 1)]);
    common_steps(&m, q, &fams, q * (q - 1), budget, &mut out, &mut data)?;
    out.push(Assertion::equal("solvable", false, m.is_solvable()));
    out.push(Assertion::holds("q-1, q, q+1 are not powers of a common prime", prime_power_incompatible(q)));

    let quotient = m.quotient(m.center())?;
    out.push(Assertion::holds("G/Z(G) isomorphic to PGL(2,q)", quotient.is_isomorphic(&pgl2(q)?)?.is_some()));
    let derived = m.derived_subgroup();
    let derived_group = m.subgroup_as_group(&derived, "G'")?;
    out.push(Assertion::holds("G' isomorphic to SL(2,q)", derived_group.is_isomorphic(&sl2(q)?)?.is_some()));
    let meet = derived.intersection(m.center()).order() as u64;
    out.push(Assertion::equal("|G' ∩ Z(G)| = gcd(2,q-1)", gcd(2, q - 1), meet));
    out.push(Assertion::equal(
        "G = G' x Z(G) exactly when q is even",
        q.is_multiple_of(2),
        m.internal_direct_product(&derived, m.center()),
    ));
    let report = schmidt_nonsolvable_case(&m)?;
    out.push(Assertion::equal("non-solvable case", SchmidtCase::Ns2, report.schmidt_case));
    data.insert("schmidt".into(), json!({
        "case": report.schmidt_case,
        "matches": report.matched(),
        "notes": report.notes,
    }));
    Ok(finish_report("GL", q, &m, out, data))
}

fn finish_report(
    theorem: &'static str,
    q: u64,
    m: &Group,
    assertions: Assertions,
    data: serde_json::Map<String, Value>,
) -> TheoremReport {
    TheoremReport {
        theorem,
        q,
        group: m.label().to_string(),
        verdict: assertions.verdict(),
        assertions,
        data: Value::Object(data),
    }
}
