use serde::Serialize;

use super::ClassifyError;
use crate::groups::{Group, Subgroup};

/// Preimages `F`, `K` in `G` of a Frobenius kernel and complement of `G/Z(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusStructure {
    pub kernel: Subgroup,
    pub complement: Subgroup,
    /// `|F : Z(G)|`
    pub kernel_index: usize,
    /// `|K : Z(G)|`
    pub complement_index: usize,
}

/// Searches the subgroup lattice of `G/Z(G)` for a Frobenius kernel and
/// complement; the first pair in lattice order is returned.
pub fn frobenius_structure(g: &Group) -> Result<Option<FrobeniusStructure>, ClassifyError> {
    let qm = g.quotient_map(g.center())?;
    let q = &qm.group;
    let lattice = q.subgroup_lattice()?;
    let n = q.order();
    for kernel in &lattice {
        if kernel.order() == 1 || kernel.order() == n || !q.is_normal(kernel) {
            continue;
        }
        for complement in lattice.iter().filter(|h| h.order() * kernel.order() == n) {
            if is_frobenius_pair(q, kernel, complement) {
                let (f, k) = (qm.preimage(kernel), qm.preimage(complement));
                return Ok(Some(FrobeniusStructure {
                    kernel_index: kernel.order(),
                    complement_index: complement.order(),
                    kernel: f,
                    complement: k,
                }));
            }
        }
    }
    Ok(None)
}

impl FrobeniusStructure {
    /// Recomputes `G/Z(G)` and checks the Frobenius conditions on the images.
    pub fn verify(&self, g: &Group) -> Result<bool, ClassifyError> {
        let z = g.center();
        if !z.is_subset_of(&self.kernel) || !z.is_subset_of(&self.complement) {
            return Ok(false);
        }
        let qm = g.quotient_map(z)?;
        let (n, h) = (qm.image(&self.kernel), qm.image(&self.complement));
        Ok(n.order() == self.kernel_index
            && h.order() == self.complement_index
            && is_frobenius_pair(&qm.group, &n, &h))
    }
}

/// `N` normal, `|N||H| = |G|`, `H` meets each distinct conjugate trivially,
/// and `N` is exactly the identity plus the elements outside every conjugate of `H`.
fn is_frobenius_pair(g: &Group, n: &Subgroup, h: &Subgroup) -> bool {
    let size = g.order();
    if n.order() * h.order() != size || h.order() == 1 || n.order() == 1 || !g.is_normal(n) {
        return false;
    }
    if n.intersection(h).order() != 1 {
        return false;
    }
    let mut in_conjugate = vec![false; size];
    for t in 0..size {
        let conj: Vec<usize> = h.members().iter().map(|&x| g.conj(t, x)).collect();
        let conj = Subgroup::from_members(conj);
        if !h.contains(t) && conj.intersection(h).order() != 1 {
            return false;
        }
        for &x in conj.members() {
            in_conjugate[x] = true;
        }
    }
    let e = g.identity();
    (0..size).all(|x| n.contains(x) == (x == e || !in_conjugate[x]))
}
