use serde::Serialize;

use super::ClassifyError;
use crate::ncgraph::NcGraph;

/// Outcome of checking that a vertex bijection `A_G -> A_H` carries each
/// `C_G(x) \ Z(G)` onto `C_H(φ(x)) \ Z(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferCheck {
    pub holds: bool,
    /// First vertex of `A_G` where the correspondence breaks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    pub vertices_checked: usize,
    /// Whether `G` and `H` are AC-groups, read off the centralizer sets.
    pub source_ac: bool,
    pub target_ac: bool,
}

/// Checks the centralizer correspondence under `iso` (vertex of `a` to vertex of `b`).
///
/// A map that is not a bijection is an error; a bijection that breaks the
/// correspondence is reported with `holds = false` and a witness vertex.
pub fn ac_transfer_check(a: &NcGraph, b: &NcGraph, iso: &[usize]) -> Result<TransferCheck, ClassifyError> {
    let n = a.vertex_count();
    if b.vertex_count() != n || iso.len() != n {
        return Err(ClassifyError::InvalidIsomorphism(format!(
            "map has {} entries for graphs on {} and {} vertices",
            iso.len(),
            n,
            b.vertex_count()
        )));
    }
    let mut seen = vec![false; n];
    if let Some(&bad) = iso.iter().find(|&&m| m >= n || std::mem::replace(&mut seen[m], true)) {
        return Err(ClassifyError::InvalidIsomorphism(format!("target vertex {bad} is repeated or out of range")));
    }
    // vertex sets of C(x) \ Z for every vertex, via the groups
    let cent_vertices = |graph: &NcGraph, v: usize| -> Vec<usize> {
        let group = graph.group();
        let x = graph.element(v);
        let mut out: Vec<usize> = group.centralizer(x).members().iter().filter_map(|&y| graph.vertex_of(y)).collect();
        out.sort_unstable();
        out
    };
    let mut witness = None;
    for v in 0..n {
        let mut image: Vec<usize> = cent_vertices(a, v).into_iter().map(|u| iso[u]).collect();
        image.sort_unstable();
        if image != cent_vertices(b, iso[v]) {
            witness = Some(v);
            break;
        }
    }
    // C(x) is abelian iff C(x) \ Z is an independent set
    let ac = |graph: &NcGraph| (0..graph.vertex_count()).all(|v| graph.is_independent(&cent_vertices(graph, v)));
    Ok(TransferCheck {
        holds: witness.is_none(),
        witness,
        vertices_checked: witness.map_or(n, |w| w + 1),
        source_ac: ac(a),
        target_ac: ac(b),
    })
}
