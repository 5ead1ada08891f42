//! Fingerprints by color refinement, and exact isomorphism of small graphs
//! by individualization and refinement.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::bits::BitMatrix;
use super::{NcGraph, NcGraphError};

/// Default vertex bound for [`graphs_isomorphic`].
pub const GRAPH_ISO_LIMIT: usize = 64;

/// Isomorphism invariant of a graph; equal fingerprints are necessary, not
/// sufficient, for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub vertices: usize,
    pub edges: usize,
    /// degree -> number of vertices
    pub degrees: BTreeMap<usize, usize>,
    /// stable refinement color -> class size
    pub classes: BTreeMap<u64, usize>,
    pub rounds: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<usize>,
}

impl Fingerprint {
    /// Equality ignoring `omega` unless both sides carry it.
    pub fn matches(&self, other: &Fingerprint) -> bool {
        let omega_ok = match (self.omega, other.omega) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        };
        omega_ok
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.degrees == other.degrees
            && self.classes == other.classes
    }
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// 1-dimensional Weisfeiler-Leman colors, hashed so that they do not depend
/// on vertex numbering. Neighborhoods are read from the complement, which is
/// sparse for non-commuting graphs; a vertex's color together with the global
/// class sizes determines the same refinement.
fn refine_hashes(adj: &BitMatrix) -> (Vec<u64>, usize) {
    let n = adj.size();
    let mut colors: Vec<u64> = (0..n).map(|v| mix(adj.row_count(v) as u64)).collect();
    let mut classes = count_distinct(&colors);
    let mut rounds = 0;
    loop {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut around: Vec<u64> = adj.zeros(v).map(|u| colors[u]).collect();
                around.sort_unstable();
                around.iter().fold(mix(colors[v] ^ 0x5151), |h, &c| mix(h ^ c))
            })
            .collect();
        rounds += 1;
        let next_classes = count_distinct(&next);
        colors = next;
        if next_classes == classes {
            return (colors, rounds);
        }
        classes = next_classes;
    }
}

fn count_distinct(colors: &[u64]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

pub fn fingerprint(graph: &NcGraph) -> Fingerprint {
    let adj = graph.adjacency();
    let mut degrees = BTreeMap::new();
    for d in graph.degrees() {
        *degrees.entry(d).or_insert(0) += 1;
    }
    let (colors, rounds) = refine_hashes(adj);
    let mut classes = BTreeMap::new();
    for c in colors {
        *classes.entry(c).or_insert(0) += 1;
    }
    Fingerprint { vertices: graph.vertex_count(), edges: graph.edge_count(), degrees, classes, rounds, omega: None }
}

/// A vertex bijection `a -> b` preserving adjacency, or `None`.
pub fn graphs_isomorphic(a: &NcGraph, b: &NcGraph) -> Result<Option<Vec<usize>>, NcGraphError> {
    graphs_isomorphic_within(a, b, GRAPH_ISO_LIMIT)
}

pub fn graphs_isomorphic_within(a: &NcGraph, b: &NcGraph, bound: usize) -> Result<Option<Vec<usize>>, NcGraphError> {
    for g in [a, b] {
        if g.vertex_count() > bound {
            return Err(NcGraphError::IsoBoundExceeded { vertices: g.vertex_count(), bound });
        }
    }
    if !fingerprint(a).matches(&fingerprint(b)) {
        return Ok(None);
    }
    let n = a.vertex_count();
    let found = search(a.adjacency(), b.adjacency(), vec![0; n], vec![0; n]);
    Ok(found.filter(|map| is_isomorphism(a.adjacency(), b.adjacency(), map)))
}

/// Checks a vertex map edge by edge.
pub(crate) fn is_isomorphism(a: &BitMatrix, b: &BitMatrix, map: &[usize]) -> bool {
    let n = a.size();
    let mut seen = vec![false; n];
    if b.size() != n || map.len() != n || map.iter().any(|&m| m >= n || std::mem::replace(&mut seen[m], true)) {
        return false;
    }
    (0..n).all(|u| (u + 1..n).all(|v| a.get(u, v) == b.get(map[u], map[v])))
}

/// Refines two colorings with a shared signature table so that equal colors
/// mean the same thing on both sides. `None` when the class sizes diverge.
fn refine_pair(a: &BitMatrix, b: &BitMatrix, mut ca: Vec<usize>, mut cb: Vec<usize>) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut classes = 0;
    loop {
        let signature = |adj: &BitMatrix, c: &[usize], v: usize| -> (usize, Vec<usize>) {
            let mut around: Vec<usize> = adj.ones(v).map(|u| c[u]).collect();
            around.sort_unstable();
            (c[v], around)
        };
        let sa: Vec<_> = (0..a.size()).map(|v| signature(a, &ca, v)).collect();
        let sb: Vec<_> = (0..b.size()).map(|v| signature(b, &cb, v)).collect();
        let mut table: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in sa.iter().chain(&sb) {
            table.insert(s, 0);
        }
        for (i, v) in table.values_mut().enumerate() {
            *v = i;
        }
        ca = sa.iter().map(|s| table[s]).collect();
        cb = sb.iter().map(|s| table[s]).collect();
        if histogram(&ca) != histogram(&cb) {
            return None;
        }
        if table.len() == classes {
            return Some((ca, cb));
        }
        classes = table.len();
    }
}

fn histogram(c: &[usize]) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn search(a: &BitMatrix, b: &BitMatrix, ca: Vec<usize>, cb: Vec<usize>) -> Option<Vec<usize>> {
    let (ca, cb) = refine_pair(a, b, ca, cb)?;
    let sizes = histogram(&ca);
    // first vertex in the smallest non-singleton class
    let pick = (0..ca.len()).filter(|&v| sizes[&ca[v]] > 1).min_by_key(|&v| (sizes[&ca[v]], ca[v], v));
    let Some(v) = pick else {
        let mut at = HashMap::new();
        for (w, &c) in cb.iter().enumerate() {
            at.insert(c, w);
        }
        let map: Vec<usize> = ca.iter().map(|c| at[c]).collect();
        return is_isomorphism(a, b, &map).then_some(map);
    };
    let fresh = ca.iter().chain(&cb).max().map_or(0, |m| m + 1);
    for w in (0..cb.len()).filter(|&w| cb[w] == ca[v]) {
        let (mut na, mut nb) = (ca.clone(), cb.clone());
        na[v] = fresh;
        nb[w] = fresh;
        if let Some(map) = search(a, b, na, nb) {
            return Some(map);
        }
    }
    None
}
