//! Non-commuting graphs: vertices `G \ Z(G)`, edges between elements that do
//! not commute.

mod bits;
mod clique;
mod iso;
mod profile;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::Group;

pub use bits::BitMatrix;
pub use clique::{clique_number, Clique, CLIQUE_VERTEX_LIMIT};
pub use iso::{fingerprint, graphs_isomorphic, graphs_isomorphic_within, Fingerprint, GRAPH_ISO_LIMIT};
pub use profile::CentralizerProfile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcGraphError {
    #[error("graph undefined for abelian groups ({0})")]
    Abelian(String),
    #[error("clique budget exhausted; best clique found has {lower_bound} vertices")]
    BudgetExhausted { lower_bound: usize, witness: Vec<usize> },
    #[error("clique search limited to {bound} vertices, graph has {vertices}")]
    CliqueBoundExceeded { vertices: usize, bound: usize },
    #[error("iso bound exceeded; compare fingerprints instead ({vertices} vertices, bound {bound})")]
    IsoBoundExceeded { vertices: usize, bound: usize },
    #[error("clique witness failed verification at elements {0} and {1}")]
    BadWitness(usize, usize),
    #[error("vertex permutation is not a bijection on {0} vertices")]
    BadPermutation(usize),
}

const NO_VERTEX: u32 = u32::MAX;

/// The non-commuting graph of a group.
#[derive(Clone, Debug)]
pub struct NcGraph {
    group: Group,
    vertices: Vec<usize>,
    position: Vec<u32>,
    adj: BitMatrix,
}

/// Edge list export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub group: String,
    pub group_order: usize,
    /// Element index of each vertex.
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Builds `A_G`; vertices are the non-central elements in index order.
pub fn build_graph(g: &Group) -> Result<NcGraph, NcGraphError> {
    if g.is_abelian() {
        return Err(NcGraphError::Abelian(g.label().to_string()));
    }
    let center = g.center();
    let vertices: Vec<usize> = (0..g.order()).filter(|&x| !center.contains(x)).collect();
    let n = vertices.len();
    let rows: Vec<Vec<u64>> = vertices
        .par_iter()
        .map(|&x| {
            let mut row = vec![0u64; BitMatrix::words_for(n)];
            for (j, &y) in vertices.iter().enumerate() {
                if !g.commute(x, y) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let mut position = vec![NO_VERTEX; g.order()];
    for (i, &x) in vertices.iter().enumerate() {
        position[x] = i as u32;
    }
    Ok(NcGraph { group: g.clone(), vertices, position, adj: BitMatrix::from_rows(n, rows) })
}

impl NcGraph {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Group element at vertex `v`.
    pub fn element(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn elements(&self) -> &[usize] {
        &self.vertices
    }

    /// Vertex holding element `x`, if `x` is not central.
    pub fn vertex_of(&self, x: usize) -> Option<usize> {
        self.position.get(x).filter(|&&p| p != NO_VERTEX).map(|&p| p as usize)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row_count(v)
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// First vertex whose degree differs from `|G| - |C_G(x)|`.
    pub fn degree_mismatch(&self) -> Option<usize> {
        let cents = self.group.centralizer_orders();
        let n = self.group.order();
        (0..self.vertex_count()).find(|&v| self.degree(v) != n - cents[self.vertices[v]] as usize)
    }

    /// Whether the vertices are pairwise non-adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u == v || !self.adjacent(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// The same graph with vertex `i` moved to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<NcGraph, NcGraphError> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(NcGraphError::BadPermutation(n));
        }
        let mut vertices = vec![0; n];
        let mut position = self.position.clone();
        for (i, &p) in perm.iter().enumerate() {
            vertices[p] = self.vertices[i];
            position[self.vertices[i]] = p as u32;
        }
        let mut adj = BitMatrix::new(n);
        for u in 0..n {
            for v in self.adj.ones(u) {
                adj.set(perm[u], perm[v]);
            }
        }
        Ok(NcGraph { group: self.group.clone(), vertices, position, adj })
    }

    /// DIMACS `p edge` format, 1-based vertex numbers.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "c non-commuting graph of {}", self.group.label());
        let _ = writeln!(out, "p edge {} {}", self.vertex_count(), self.edge_count());
        for u in 0..self.vertex_count() {
            for v in self.adj.ones(u).filter(|&v| v > u) {
                let _ = writeln!(out, "e {} {}", u + 1, v + 1);
            }
        }
        out
    }

    pub fn to_edge_list(&self) -> EdgeListJson {
        let edges = (0..self.vertex_count())
            .flat_map(|u| self.adj.ones(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect();
        EdgeListJson {
            group: self.group.label().to_string(),
            group_order: self.group.order(),
            vertices: self.vertices.clone(),
            edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_str;

    #[test]
    fn s3_graph() {
        let s3 = build_str("S3").unwrap();
        let a = build_graph(&s3).unwrap();
        assert_eq!(a.vertex_count(), 5);
        let mut degrees = a.degrees();
        degrees.sort();
        assert_eq!(degrees, vec![3, 3, 4, 4, 4]);
        assert_eq!(a.degree_mismatch(), None);
        assert_eq!(a.edge_count(), 9);
        let dimacs = a.to_dimacs();
        assert!(dimacs.contains("p edge 5 9\n"));
        assert_eq!(dimacs.lines().filter(|l| l.starts_with("e ")).count(), 9);
    }

    #[test]
    fn abelian_is_rejected() {
        assert!(matches!(build_graph(&build_str("C6").unwrap()), Err(NcGraphError::Abelian(_))));
    }

    #[test]
    fn relabel_round_trip() {
        let a = build_graph(&build_str("D8").unwrap()).unwrap();
        let perm: Vec<usize> = (0..6).rev().collect();
        let b = a.relabel(&perm).unwrap();
        for u in 0..6 {
            assert_eq!(b.element(perm[u]), a.element(u));
            for v in 0..6 {
                assert_eq!(a.adjacent(u, v), b.adjacent(perm[u], perm[v]));
            }
        }
        assert!(a.relabel(&[0, 0, 1, 2, 3, 4]).is_err());
    }
}
