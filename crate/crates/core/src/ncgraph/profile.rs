use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{build_graph, NcGraph, NcGraphError};
use crate::groups::Group;

/// Centralizer orders of non-central elements.
///
/// `w` counts elements, `w_prime` holds the same values divided by `|Z(G)|`,
/// and `distinct_centralizer_counts` counts distinct subgroups per order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerProfile {
    pub group: String,
    pub order: usize,
    pub center_order: usize,
    pub w: BTreeMap<usize, usize>,
    pub w_prime: BTreeMap<usize, usize>,
    pub distinct_centralizer_counts: BTreeMap<usize, usize>,
}

impl CentralizerProfile {
    /// Read directly off the group.
    pub fn from_group(g: &Group) -> Result<Self, NcGraphError> {
        if g.is_abelian() {
            return Err(NcGraphError::Abelian(g.label().to_string()));
        }
        let center = g.center();
        let z = center.order();
        let cents = g.centralizer_orders();
        let mut w = BTreeMap::new();
        for x in (0..g.order()).filter(|&x| !center.contains(x)) {
            *w.entry(cents[x] as usize).or_insert(0) += 1;
        }
        let mut seen = HashSet::new();
        let mut distinct = BTreeMap::new();
        for c in g.all_centralizers() {
            if c.order() < g.order() && seen.insert(c.members().to_vec()) {
                *distinct.entry(c.order()).or_insert(0) += 1;
            }
        }
        Ok(Self::assemble(g.label(), g.order(), z, w, distinct))
    }

    /// Read off the graph alone plus `|G|`: degrees give `|G| - |C(x)|`, and
    /// the closed non-neighborhood of `x` is `C(x) \ Z(G)`.
    pub fn from_graph(graph: &NcGraph) -> Self {
        let order = graph.group().order();
        let n = graph.vertex_count();
        let z = order - n;
        let mut w = BTreeMap::new();
        for v in 0..n {
            *w.entry(order - graph.degree(v)).or_insert(0) += 1;
        }
        let mut seen = HashSet::new();
        let mut distinct = BTreeMap::new();
        for v in 0..n {
            let mut closed: Vec<usize> = graph.adjacency().zeros(v).collect();
            closed.push(v);
            closed.sort_unstable();
            let size = closed.len() + z;
            if seen.insert(closed) {
                *distinct.entry(size).or_insert(0) += 1;
            }
        }
        Self::assemble(graph.group().label(), order, z, w, distinct)
    }

    pub fn from_group_via_graph(g: &Group) -> Result<Self, NcGraphError> {
        Ok(Self::from_graph(&build_graph(g)?))
    }

    fn assemble(
        label: &str,
        order: usize,
        z: usize,
        w: BTreeMap<usize, usize>,
        distinct: BTreeMap<usize, usize>,
    ) -> Self {
        let w_prime = w.iter().map(|(&k, &m)| (k / z, m)).collect();
        CentralizerProfile {
            group: label.to_string(),
            order,
            center_order: z,
            w,
            w_prime,
            distinct_centralizer_counts: distinct,
        }
    }

    /// Sum of element-level multiplicities; equals `|G| - |Z(G)|`.
    pub fn total(&self) -> usize {
        self.w.values().sum()
    }

    pub fn w_values(&self) -> Vec<usize> {
        self.w.keys().copied().collect()
    }

    pub fn w_prime_values(&self) -> Vec<usize> {
        self.w_prime.keys().copied().collect()
    }

    /// Number of distinct centralizers of non-central elements.
    pub fn distinct_total(&self) -> usize {
        self.distinct_centralizer_counts.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_str;

    #[test]
    fn s3_profile_both_routes() {
        let s3 = build_str("S3").unwrap();
        let p = CentralizerProfile::from_group(&s3).unwrap();
        assert_eq!(p.w, BTreeMap::from([(2, 3), (3, 2)]));
        assert_eq!(p.distinct_centralizer_counts, BTreeMap::from([(2, 3), (3, 1)]));
        assert_eq!(p.total(), 5);
        assert_eq!(CentralizerProfile::from_group_via_graph(&s3).unwrap(), p);
    }
}
