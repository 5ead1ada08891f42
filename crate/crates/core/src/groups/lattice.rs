use std::collections::HashSet;

use super::{Group, GroupError, Subgroup};

/// Default order bound for [`Group::subgroup_lattice`].
pub const LATTICE_LIMIT: usize = 200;

impl Group {
    /// Every subgroup, sorted by order and then by member list.
    pub fn subgroup_lattice(&self) -> Result<Vec<Subgroup>, GroupError> {
        self.subgroup_lattice_within(LATTICE_LIMIT)
    }

    /// Joins of cyclic subgroups, grown one cyclic subgroup at a time until
    /// nothing new appears. A join that passes `|G|/2` elements must be `G`.
    pub fn subgroup_lattice_within(&self, bound: usize) -> Result<Vec<Subgroup>, GroupError> {
        let n = self.order();
        if n > bound {
            return Err(GroupError::LatticeBoundExceeded { order: n, bound });
        }
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        for x in 0..n {
            let c = self.closure(&[x]);
            if seen.insert(c.clone()) {
                cyclic.push((x, c));
            }
        }
        // (generators, subgroup) pairs still to be extended
        let mut frontier: Vec<(Vec<usize>, Subgroup)> =
            cyclic.iter().map(|(x, c)| (vec![*x], c.clone())).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (gens, s) in &frontier {
                for (x, _) in &cyclic {
                    if s.contains(*x) {
                        continue;
                    }
                    let mut joined = gens.clone();
                    joined.push(*x);
                    let t = self.closure_within(&joined, n / 2).unwrap_or_else(|| self.whole());
                    if seen.insert(t.clone()) {
                        next.push((joined, t));
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<Subgroup> = seen.into_iter().collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use crate::groups::{serial_keys, Group};

    #[test]
    fn cyclic_lattice_is_divisor_lattice() {
        let z6 = Group::from_fn("C6", serial_keys(6), |a, b| (a + b) % 6).unwrap();
        let orders: Vec<usize> = z6.subgroup_lattice().unwrap().iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn lattice_bound() {
        let g = Group::from_fn("C300", serial_keys(300), |a, b| (a + b) % 300).unwrap();
        assert!(g.subgroup_lattice().is_err());
    }
}
