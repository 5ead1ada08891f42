//! Isomorphism testing by backtracking over generator images.

use std::collections::BTreeMap;

use super::{Group, GroupError};

/// Default order bound for [`Group::is_isomorphic`].
pub const ISO_LIMIT: usize = 2000;

const UNSET: u32 = u32::MAX;

impl Group {
    /// An isomorphism `self -> other` as an index map, or `None`.
    pub fn is_isomorphic(&self, other: &Group) -> Result<Option<Vec<usize>>, GroupError> {
        self.is_isomorphic_within(other, ISO_LIMIT)
    }

    pub fn is_isomorphic_within(&self, other: &Group, bound: usize) -> Result<Option<Vec<usize>>, GroupError> {
        for g in [self, other] {
            if g.order() > bound {
                return Err(GroupError::IsoBoundExceeded { order: g.order(), bound });
            }
        }
        if self.order() != other.order() || order_profile(self) != order_profile(other) {
            return Ok(None);
        }
        let gens = self.minimal_generating_sequence();
        let (gc, hc) = (self.centralizer_orders(), other.centralizer_orders());
        let (go, ho) = (self.element_orders(), other.element_orders());
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let mut c: Vec<usize> = (0..other.order())
                    .filter(|&h| ho[h] == go[g] && hc[h] == gc[g])
                    .collect();
                // Trying the same key first makes G ~ G come back as the identity.
                c.sort_by_key(|&h| other.key(h) != self.key(g));
                c
            })
            .collect();
        let mut images = Vec::with_capacity(gens.len());
        let found = self.search(other, &gens, &candidates, &mut images);
        Ok(found.filter(|map| self.verify_isomorphism(other, map)))
    }

    fn search(
        &self,
        other: &Group,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let depth = images.len();
        if depth == gens.len() {
            let map = self.extend(other, gens, images)?;
            return (map.iter().all(|&m| m != UNSET)).then(|| map.into_iter().map(|m| m as usize).collect());
        }
        for &h in &candidates[depth] {
            if images.contains(&h) {
                continue;
            }
            images.push(h);
            if self.extend(other, &gens[..=depth], images).is_some() {
                if let Some(map) = self.search(other, gens, candidates, images) {
                    return Some(map);
                }
            }
            images.pop();
        }
        None
    }

    /// Extends `gens[i] -> images[i]` along the Cayley graph of `<gens>`,
    /// failing on any inconsistency or collision.
    fn extend(&self, other: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
        let mut map = vec![UNSET; self.order()];
        let mut used = vec![false; other.order()];
        let e = self.identity();
        map[e] = other.identity() as u32;
        used[other.identity()] = true;
        let mut queue = vec![e];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for (&g, &h) in gens.iter().zip(images) {
                let z = self.mul(y, g);
                let w = other.mul(map[y] as usize, h) as u32;
                if map[z] == UNSET {
                    if used[w as usize] {
                        return None;
                    }
                    used[w as usize] = true;
                    map[z] = w;
                    queue.push(z);
                } else if map[z] != w {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Bijective, and `map(x g) = map(x) map(g)` for all `x` and generators `g`.
    pub fn verify_isomorphism(&self, other: &Group, map: &[usize]) -> bool {
        if map.len() != self.order() || other.order() != self.order() {
            return false;
        }
        let mut seen = vec![false; other.order()];
        for &m in map {
            if m >= other.order() || std::mem::replace(&mut seen[m], true) {
                return false;
            }
        }
        let gens = self.generators();
        (0..self.order()).all(|x| gens.iter().all(|&g| map[self.mul(x, g)] == other.mul(map[x], map[g])))
    }

    /// A short generating sequence: each step adjoins the element whose
    /// closure with the current subgroup is largest (smallest index on ties).
    pub fn minimal_generating_sequence(&self) -> Vec<usize> {
        let n = self.order();
        let orders = self.element_orders();
        // One candidate per cyclic subgroup: its smallest-index generator.
        let candidates: Vec<usize> = (0..n)
            .filter(|&x| {
                let ord = orders[x] as u64;
                let mut cur = x;
                for k in 2..ord {
                    cur = self.mul(cur, x);
                    if crate::arith::gcd(k, ord) == 1 && cur < x {
                        return false;
                    }
                }
                true
            })
            .collect();
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        while current.order() < n {
            let mut best: Option<(usize, usize)> = None;
            for &c in &candidates {
                if current.contains(c) {
                    continue;
                }
                gens.push(c);
                let size = self.closure(&gens).order();
                gens.pop();
                if best.is_none_or(|(_, s)| size > s) {
                    best = Some((c, size));
                }
                if size == n {
                    break;
                }
            }
            let (c, _) = best.expect("a proper subgroup misses some element");
            gens.push(c);
            current = self.closure(&gens);
        }
        gens
    }
}

/// Multiset of (element order, centralizer order) pairs.
fn order_profile(g: &Group) -> BTreeMap<(u32, u32), usize> {
    let mut out = BTreeMap::new();
    for (&o, &c) in g.element_orders().iter().zip(g.centralizer_orders()) {
        *out.entry((o, c)).or_insert(0) += 1;
    }
    out
}
