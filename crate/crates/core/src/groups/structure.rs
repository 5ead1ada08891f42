//! Structural queries: closures, centers, centralizers, derived series,
//! quotients, Sylow subgroups.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{Group, GroupError, MulRule, Subgroup, TABLE_LIMIT};
use crate::arith::{p_part, prime_divisors};

/// A quotient group together with its projection from the parent.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub group: Group,
    /// Coset index of every parent element.
    pub coset_of: Vec<u32>,
    /// Minimal parent index of every coset.
    pub reps: Vec<usize>,
}

impl QuotientMap {
    pub fn project(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    /// Image of a parent subgroup in the quotient.
    pub fn image(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_members(s.members().iter().map(|&x| self.project(x)).collect())
    }

    /// Full preimage of a quotient subgroup.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_members(
            (0..self.coset_of.len()).filter(|&x| s.contains(self.project(x))).collect(),
        )
    }
}

#[derive(Debug)]
struct QuotientRule {
    parent: Group,
    coset_of: Vec<u32>,
    reps: Vec<usize>,
}

impl MulRule for QuotientRule {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.coset_of[self.parent.mul(self.reps[a], self.reps[b])] as usize
    }
}

#[derive(Debug)]
struct SubgroupRule {
    parent: Group,
    members: Vec<usize>,
}

impl MulRule for SubgroupRule {
    fn mul(&self, a: usize, b: usize) -> usize {
        let c = self.parent.mul(self.members[a], self.members[b]);
        self.members.binary_search(&c).expect("subgroup is closed")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowInfo {
    pub p: u64,
    pub count: usize,
    pub representative: Subgroup,
}

impl Group {
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(vec![self.identity()])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members((0..self.order()).collect())
    }

    /// Smallest subgroup containing `gens`, by breadth-first saturation.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        self.closure_within(gens, self.order()).expect("unbounded closure")
    }

    /// Like [`Self::closure`] but gives up once more than `limit` elements are found.
    pub fn closure_within(&self, gens: &[usize], limit: usize) -> Option<Subgroup> {
        let mut seen = vec![false; self.order()];
        let e = self.identity();
        seen[e] = true;
        let mut members = vec![e];
        let mut head = 0;
        while head < members.len() {
            let y = members[head];
            head += 1;
            for &g in gens {
                let z = self.mul(y, g);
                if !seen[z] {
                    seen[z] = true;
                    members.push(z);
                    if members.len() > limit {
                        return None;
                    }
                }
            }
        }
        Some(Subgroup::from_members(members))
    }

    /// `Z(G)`, cached.
    pub fn center(&self) -> &Subgroup {
        self.0.center.get_or_init(|| {
            let gens = self.generators();
            Subgroup::from_members(
                (0..self.order())
                    .into_par_iter()
                    .filter(|&z| gens.iter().all(|&g| self.commute(z, g)))
                    .collect(),
            )
        })
    }

    pub fn centralizer(&self, x: usize) -> Subgroup {
        Subgroup::from_members((0..self.order()).filter(|&g| self.commute(g, x)).collect())
    }

    /// `C_G(x)` for every `x`, in element order.
    pub fn all_centralizers(&self) -> Vec<Subgroup> {
        (0..self.order()).into_par_iter().map(|x| self.centralizer(x)).collect()
    }

    /// A generating set picked greedily in index order, cached.
    pub fn generators(&self) -> &[usize] {
        self.0.generators.get_or_init(|| self.subgroup_generators(&self.whole()))
    }

    /// Generators of `s`: each member not yet in the running closure is added.
    pub fn subgroup_generators(&self, s: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &x in s.members() {
            if current.order() == s.order() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        self.is_subgroup_abelian(&self.whole())
    }

    pub fn is_subgroup_abelian(&self, s: &Subgroup) -> bool {
        let gens = self.subgroup_generators(s);
        gens.iter().enumerate().all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// `g S g^-1 = S` for all `g`, tested on generators of both.
    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let sg = self.subgroup_generators(s);
        self.generators()
            .iter()
            .all(|&g| sg.iter().all(|&t| s.contains(self.conj(g, t))))
    }

    /// Closure of `gens` under multiplication and conjugation by `ambient`.
    pub fn normal_closure(&self, ambient: &[usize], gens: &[usize]) -> Subgroup {
        let mut ngens = gens.to_vec();
        let mut closure = self.closure(&ngens);
        loop {
            let mut grew = false;
            let mut i = 0;
            while i < ngens.len() {
                let t = ngens[i];
                for &g in ambient {
                    let c = self.conj(g, t);
                    if !closure.contains(c) {
                        ngens.push(c);
                        closure = self.closure(&ngens);
                        grew = true;
                    }
                }
                i += 1;
            }
            if !grew {
                return closure;
            }
        }
    }

    /// `G'`, the subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Subgroup {
        self.derived_of(&self.whole())
    }

    /// `S'` for a subgroup `S`: the normal closure in `S` of the commutators
    /// of a generating set of `S`.
    pub fn derived_of(&self, s: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(s);
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.commutator(a, b);
                if c != self.identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&gens, &comms)
    }

    /// `G = G^(0) > G^(1) > ..` down to the first repeated term.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = self.derived_of(last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Nilpotent iff every Sylow subgroup is normal (unique).
    pub fn is_nilpotent(&self) -> bool {
        prime_divisors(self.order() as u64)
            .into_iter()
            .all(|p| self.sylow(p).map(|s| s.count == 1).unwrap_or(false))
    }

    /// Number of Sylow `p`-subgroups and one representative.
    ///
    /// The representative is grown from the trivial group by adjoining the
    /// smallest-index `p`-element that normalizes the current `p`-subgroup.
    /// The count is the number of conjugates, `|G : N_G(P)|`.
    pub fn sylow(&self, p: u64) -> Result<SylowInfo, GroupError> {
        let n = self.order();
        if p < 2 || !(n as u64).is_multiple_of(p) {
            return Err(GroupError::PrimeDoesNotDivide { p, order: n });
        }
        let target = p_part(n as u64, p) as usize;
        let orders = self.element_orders();
        let is_p_element = |x: usize| p_part(orders[x] as u64, p) == orders[x] as u64;
        let mut gens: Vec<usize> = Vec::new();
        let mut sylow = self.trivial_subgroup();
        while sylow.order() < target {
            let x = (0..n)
                .find(|&x| {
                    is_p_element(x)
                        && !sylow.contains(x)
                        && gens.iter().all(|&t| sylow.contains(self.conj(x, t)))
                })
                .expect("a p-subgroup below Sylow order is properly contained in its normalizer");
            gens.push(x);
            sylow = self.closure(&gens);
        }
        let normalizer = (0..n)
            .into_par_iter()
            .filter(|&g| gens.iter().all(|&t| sylow.contains(self.conj(g, t))))
            .count();
        Ok(SylowInfo { p, count: n / normalizer, representative: sylow })
    }

    /// A and B normal, meeting trivially, with `|A||B| = |G|`.
    pub fn internal_direct_product(&self, a: &Subgroup, b: &Subgroup) -> bool {
        self.is_normal(a)
            && self.is_normal(b)
            && a.intersection(b).is_trivial()
            && a.order() * b.order() == self.order()
    }

    /// `G/N` with minimal-index coset representatives.
    pub fn quotient(&self, normal: &Subgroup) -> Result<Group, GroupError> {
        Ok(self.quotient_map(normal)?.group)
    }

    pub fn quotient_map(&self, normal: &Subgroup) -> Result<QuotientMap, GroupError> {
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / normal.order());
        for g in 0..n {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &m in normal.members() {
                coset_of[self.mul(g, m)] = id;
            }
        }
        let keys = reps.iter().map(|&r| self.0.keys[r].clone()).collect();
        let label = format!("{}/N{}", self.label(), normal.order());
        let group = if reps.len() <= TABLE_LIMIT {
            Group::from_fn(label, keys, |a, b| coset_of[self.mul(reps[a], reps[b])] as usize)?
        } else {
            let rule = QuotientRule { parent: self.clone(), coset_of: coset_of.clone(), reps: reps.clone() };
            Group::from_rule(label, keys, Arc::new(rule))?
        };
        Ok(QuotientMap { group, coset_of, reps })
    }

    /// `S` as a group in its own right; index `i` of the result is `s.members()[i]`.
    pub fn subgroup_as_group(&self, s: &Subgroup, label: impl Into<String>) -> Result<Group, GroupError> {
        let keys = s.members().iter().map(|&x| self.0.keys[x].clone()).collect();
        let members = s.members();
        if members.len() <= TABLE_LIMIT {
            Group::from_fn(label, keys, |a, b| {
                members
                    .binary_search(&self.mul(members[a], members[b]))
                    .expect("subgroup is closed")
            })
        } else {
            let rule = SubgroupRule { parent: self.clone(), members: members.to_vec() };
            Group::from_rule(label, keys, Arc::new(rule))
        }
    }

    /// Relabels a subgroup-as-group index set back into the parent.
    pub fn lift(s: &Subgroup, inner: &Subgroup) -> Subgroup {
        Subgroup::from_members(inner.members().iter().map(|&i| s.members()[i]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::serial_keys;

    fn sym3() -> Group {
        // permutations of {0,1,2} in lexicographic order, (a*b)(i) = a(b(i))
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        Group::from_fn("S3", serial_keys(6), |a, b| {
            let (x, y) = (perms[a], perms[b]);
            idx([x[y[0]], x[y[1]], x[y[2]]])
        })
        .unwrap()
    }

    #[test]
    fn s3_structure() {
        let g = sym3();
        assert!(g.center().is_trivial());
        assert_eq!(g.closure(&[g.identity()]).order(), 1);
        assert_eq!(g.closure(&[1]).order(), 2);
        assert_eq!(g.derived_subgroup().order(), 3);
        assert!(g.is_solvable());
        assert!(!g.is_nilpotent());
        assert_eq!(g.sylow(3).unwrap().count, 1);
        assert_eq!(g.sylow(2).unwrap().count, 3);
        assert!(g.sylow(5).is_err());
        assert_eq!(g.centralizer(g.identity()).order(), 6);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = sym3();
        let t = g.closure(&[1]);
        assert_eq!(g.quotient(&t).unwrap_err(), GroupError::NotNormal);
        let a3 = g.derived_subgroup();
        let q = g.quotient_map(&a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.preimage(&q.group.trivial_subgroup()), a3);
    }

    #[test]
    fn direct_product_checks() {
        let g = sym3();
        assert!(g.internal_direct_product(&g.whole(), &g.trivial_subgroup()));
        assert!(!g.internal_direct_product(&g.derived_subgroup(), &g.closure(&[1])));
    }
}
