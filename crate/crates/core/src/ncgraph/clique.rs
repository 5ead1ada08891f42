//! Exact maximum clique: branch and bound over bitsets, greedy coloring as
//! the upper bound, vertices taken in degeneracy order.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::bits::{iter_bits, BitMatrix};
use super::{NcGraph, NcGraphError};

/// Largest graph the exact solver accepts.
pub const CLIQUE_VERTEX_LIMIT: usize = 1000;

const CLOCK_EVERY: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clique {
    pub size: usize,
    /// Graph vertices of the witness, ascending.
    pub vertices: Vec<usize>,
    /// Group elements of the witness, ascending.
    pub elements: Vec<usize>,
    /// Search nodes expanded.
    pub nodes: u64,
}

/// `ω(A_G)` with a witness checked pairwise in the group.
pub fn clique_number(graph: &NcGraph, budget: Duration) -> Result<Clique, NcGraphError> {
    let n = graph.vertex_count();
    if n > CLIQUE_VERTEX_LIMIT {
        return Err(NcGraphError::CliqueBoundExceeded { vertices: n, bound: CLIQUE_VERTEX_LIMIT });
    }
    let order = degeneracy_order(graph.adjacency());
    let mut local = BitMatrix::new(n);
    let mut at = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        at[v] = i;
    }
    for u in 0..n {
        for v in graph.adjacency().ones(u).filter(|&v| v > u) {
            local.set(at[u], at[v]);
        }
    }
    let mut search = Search {
        adj: &local,
        best: Vec::new(),
        nodes: 0,
        start: Instant::now(),
        budget,
    };
    let mut all = vec![0u64; BitMatrix::words_for(n)];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let outcome = search.expand(&mut Vec::new(), all);
    let mut vertices: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    vertices.sort_unstable();
    if outcome.is_err() {
        return Err(NcGraphError::BudgetExhausted { lower_bound: vertices.len(), witness: vertices });
    }
    let g = graph.group();
    let mut elements: Vec<usize> = vertices.iter().map(|&v| graph.element(v)).collect();
    elements.sort_unstable();
    for (i, &x) in elements.iter().enumerate() {
        if let Some(&y) = elements[i + 1..].iter().find(|&&y| g.commute(x, y)) {
            return Err(NcGraphError::BadWitness(x, y));
        }
    }
    Ok(Clique { size: vertices.len(), vertices, elements, nodes: search.nodes })
}

/// Highest core first; ties broken by vertex index.
fn degeneracy_order(adj: &BitMatrix) -> Vec<usize> {
    let n = adj.size();
    let mut degree: Vec<usize> = (0..n).map(|v| adj.row_count(v)).collect();
    let mut removed = vec![false; n];
    let mut peeled = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (degree[v], v)).unwrap();
        removed[v] = true;
        peeled.push(v);
        for u in adj.ones(v) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    peeled.reverse();
    peeled
}

struct Search<'a> {
    adj: &'a BitMatrix,
    best: Vec<usize>,
    nodes: u64,
    start: Instant,
    budget: Duration,
}

struct OutOfTime;

impl Search<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, mut candidates: Vec<u64>) -> Result<(), OutOfTime> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CLOCK_EVERY) && self.start.elapsed() > self.budget {
            return Err(OutOfTime);
        }
        let (order, colors) = self.color(&candidates);
        for i in (0..order.len()).rev() {
            if current.len() + colors[i] <= self.best.len() {
                return Ok(());
            }
            let v = order[i];
            current.push(v);
            let next: Vec<u64> = candidates.iter().zip(self.adj.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next)?;
            }
            current.pop();
            candidates[v / 64] &= !(1 << (v % 64));
        }
        Ok(())
    }

    /// Greedy sequential coloring; vertices come back in ascending color.
    fn color(&self, candidates: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = candidates.to_vec();
        let (mut order, mut colors) = (Vec::new(), Vec::new());
        let mut k = 0;
        while uncolored.iter().any(|&w| w != 0) {
            k += 1;
            let mut open = uncolored.clone();
            loop {
                let Some(v) = iter_bits(&open).next() else { break };
                open[v / 64] &= !(1 << (v % 64));
                uncolored[v / 64] &= !(1 << (v % 64));
                for (o, a) in open.iter_mut().zip(self.adj.row(v)) {
                    *o &= !a;
                }
                order.push(v);
                colors.push(k);
            }
        }
        (order, colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_str;
    use crate::ncgraph::build_graph;

    fn omega(text: &str) -> usize {
        let g = build_graph(&build_str(text).unwrap()).unwrap();
        clique_number(&g, Duration::from_secs(60)).unwrap().size
    }

    #[test]
    fn small_clique_numbers() {
        assert_eq!(omega("S3"), 4);
        assert_eq!(omega("D8"), 3);
        assert_eq!(omega("Q8"), 3);
        assert_eq!(omega("A4"), 5);
    }

    #[test]
    fn zero_budget_reports_lower_bound() {
        let g = build_graph(&build_str("S4").unwrap()).unwrap();
        match clique_number(&g, Duration::ZERO) {
            Ok(c) => assert!(c.size > 0),
            Err(NcGraphError::BudgetExhausted { lower_bound, witness }) => assert_eq!(lower_bound, witness.len()),
            Err(e) => panic!("{e}"),
        }
    }
}
