//! AC-group detection, the solvable and non-solvable AC case lists, and
//! the verification pipelines for GL(2,q) and SL(2,q).

mod frobenius;
mod pipeline;
mod schmidt;
mod transfer;

use std::collections::HashSet;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::groups::{Group, GroupError};
use crate::matgroups::MatrixError;
use crate::ncgraph::{build_graph, clique_number, NcGraphError};

pub use frobenius::{frobenius_structure, FrobeniusStructure};
pub use pipeline::{
    prime_power_incompatible, rival_scan, verify_theorem_gl, verify_theorem_sl, RivalEntry, RivalReport,
    TheoremReport, GL_QS, SL_QS,
};
pub use schmidt::{
    classify, schmidt_nonsolvable_case, schmidt_solvable_case, CaseMatch, ClassificationReport, OmegaCheck,
    SchmidtCase,
};
pub use transfer::{ac_transfer_check, TransferCheck};

/// Graphs up to this many vertices get an exact clique number in reports.
pub const OMEGA_VERTEX_LIMIT: usize = 600;

/// Default time budget for one clique search.
pub const DEFAULT_CLIQUE_BUDGET: Duration = Duration::from_secs(300);

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("classification failure: {0}")]
    ClassificationFailure(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid isomorphism: {0}")]
    InvalidIsomorphism(String),
    #[error("{family}(2,{q}) is outside the supported set {supported:?}")]
    UnsupportedQ { family: &'static str, q: u64, supported: &'static [u64] },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Graph(#[from] NcGraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// A non-central `x` whose centralizer contains the non-commuting pair `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AcWitness {
    pub x: usize,
    pub a: usize,
    pub b: usize,
}

/// `None` when every centralizer of a non-central element is abelian;
/// otherwise the smallest such `x` with a non-abelian centralizer.
pub fn ac_witness(g: &Group) -> Option<AcWitness> {
    let center = g.center();
    let cents = g.all_centralizers();
    let mut seen = HashSet::new();
    let firsts: Vec<usize> = (0..g.order())
        .filter(|&x| !center.contains(x) && seen.insert(cents[x].members()))
        .collect();
    let verdicts: Vec<Option<AcWitness>> = firsts
        .par_iter()
        .map(|&x| {
            let gens = g.subgroup_generators(&cents[x]);
            gens.iter().enumerate().find_map(|(i, &a)| {
                gens[i + 1..].iter().find(|&&b| !g.commute(a, b)).map(|&b| AcWitness { x, a, b })
            })
        })
        .collect();
    verdicts.into_iter().flatten().next()
}

pub fn is_ac_group(g: &Group) -> bool {
    ac_witness(g).is_none()
}

/// Checks a claimed witness from scratch.
pub fn verify_ac_witness(g: &Group, w: &AcWitness) -> bool {
    !g.center().contains(w.x) && g.commute(w.a, w.x) && g.commute(w.b, w.x) && !g.commute(w.a, w.b)
}

/// Exact `ω(A_G)` when the graph has at most [`OMEGA_VERTEX_LIMIT`] vertices.
pub fn omega_if_small(g: &Group, budget: Duration) -> Result<Option<usize>, ClassifyError> {
    if g.order() - g.center().order() > OMEGA_VERTEX_LIMIT {
        return Ok(None);
    }
    Ok(Some(clique_number(&build_graph(g)?, budget)?.size))
}

/// Number of distinct centralizers of non-central elements.
pub fn distinct_centralizer_count(g: &Group) -> usize {
    let center = g.center();
    let cents = g.all_centralizers();
    let mut seen = HashSet::new();
    (0..g.order()).filter(|&x| !center.contains(x) && seen.insert(cents[x].members())).count()
}
