//! Finite groups with indexed elements.
//!
//! A [`Group`] stores one opaque key per element and a total multiplication
//! on indices. Groups of order at most [`TABLE_LIMIT`] carry a materialized
//! Cayley table; larger groups compute products on demand through a
//! [`MulRule`]. Everything downstream (subgroups, quotients, isomorphisms)
//! talks in element indices, and ties are always broken by the smallest index.

mod iso;
mod lattice;
mod serial;
mod structure;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use iso::ISO_LIMIT;
pub use lattice::LATTICE_LIMIT;
pub use serial::GroupJson;
pub use structure::{QuotientMap, SylowInfo};

/// Largest order for which a Cayley table is materialized.
pub const TABLE_LIMIT: usize = 4096;

/// Orders up to this are checked for associativity exhaustively.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;
const SAMPLED_TRIPLES: usize = 4096;

pub type ElementKey = Box<[u32]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not normal")]
    NotNormal,
    #[error("isomorphism bound exceeded: order {order} > {bound}")]
    IsoBoundExceeded { order: usize, bound: usize },
    #[error("lattice bound exceeded: order {order} > {bound}")]
    LatticeBoundExceeded { order: usize, bound: usize },
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: usize },
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("order {0} exceeds the table limit; supply a multiplication rule")]
    TooLargeForTable(usize),
}

/// On-demand multiplication for groups too large for a table.
pub trait MulRule: Send + Sync + fmt::Debug {
    fn mul(&self, a: usize, b: usize) -> usize;
}

#[derive(Clone, Debug)]
enum Law {
    Table(Arc<[u16]>),
    Rule(Arc<dyn MulRule>),
}

#[derive(Clone, Debug)]
struct Inner {
    label: String,
    descriptor: Option<String>,
    keys: Vec<ElementKey>,
    identity: usize,
    inverse: Vec<u32>,
    law: Law,
    orders: OnceLock<Vec<u32>>,
    centralizer_orders: OnceLock<Vec<u32>>,
    center: OnceLock<Subgroup>,
    generators: OnceLock<Vec<usize>>,
    key_index: OnceLock<HashMap<ElementKey, usize>>,
}

/// A finite group. Cloning is cheap; the data is shared.
#[derive(Clone, Debug)]
pub struct Group(Arc<Inner>);

/// A subgroup of some parent group, as a sorted set of element indices.
///
/// The parent is not stored; every operation that needs the multiplication
/// takes the parent [`Group`] explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps an index set; sorts and deduplicates.
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            members: self.members.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }
}

impl Group {
    /// Materializes the Cayley table of `mul` over `keys.len()` elements.
    pub fn from_fn<F>(label: impl Into<String>, keys: Vec<ElementKey>, mul: F) -> Result<Self, GroupError>
    where
        F: Fn(usize, usize) -> usize + Sync,
    {
        let n = keys.len();
        if n > TABLE_LIMIT {
            return Err(GroupError::TooLargeForTable(n));
        }
        let table: Vec<usize> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| mul(a, b))
            .collect();
        Self::from_table(label, keys, table)
    }

    /// A group from a row-major Cayley table; validates the group axioms.
    pub fn from_table(label: impl Into<String>, keys: Vec<ElementKey>, table: Vec<usize>) -> Result<Self, GroupError> {
        let n = keys.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty element set".into()));
        }
        if n > TABLE_LIMIT {
            return Err(GroupError::TooLargeForTable(n));
        }
        if table.len() != n * n || table.iter().any(|&x| x >= n) {
            return Err(GroupError::NotAGroup("table has wrong shape or out-of-range entries".into()));
        }
        let table: Arc<[u16]> = table.into_iter().map(|x| x as u16).collect();
        Self::finish(label.into(), keys, Law::Table(table))
    }

    /// A group whose products are computed by `rule`; associativity is spot-checked.
    pub fn from_rule(label: impl Into<String>, keys: Vec<ElementKey>, rule: Arc<dyn MulRule>) -> Result<Self, GroupError> {
        if keys.is_empty() {
            return Err(GroupError::NotAGroup("empty element set".into()));
        }
        Self::finish(label.into(), keys, Law::Rule(rule))
    }

    fn finish(label: String, keys: Vec<ElementKey>, law: Law) -> Result<Self, GroupError> {
        let n = keys.len();
        let mul = |a: usize, b: usize| match &law {
            Law::Table(t) => t[a * n + b] as usize,
            Law::Rule(r) => r.mul(a, b),
        };
        let identity = (0..n)
            .find(|&e| mul(e, e) == e)
            .ok_or_else(|| GroupError::NotAGroup("no idempotent element".into()))?;
        let inverse = match &law {
            Law::Table(_) => {
                // Latin-square rows make the inverse well defined.
                let mut inverse = vec![u32::MAX; n];
                for (a, inv) in inverse.iter_mut().enumerate() {
                    let mut seen = vec![false; n];
                    for b in 0..n {
                        let c = mul(a, b);
                        if seen[c] {
                            return Err(GroupError::NotAGroup(format!("row {a} repeats {c}")));
                        }
                        seen[c] = true;
                        if c == identity {
                            *inv = b as u32;
                        }
                    }
                }
                for (a, &inv) in inverse.iter().enumerate() {
                    if mul(identity, a) != a || mul(a, identity) != a {
                        return Err(GroupError::NotAGroup(format!("{identity} is not a two-sided identity")));
                    }
                    if mul(inv as usize, a) != identity {
                        return Err(GroupError::NotAGroup(format!("{a} has no two-sided inverse")));
                    }
                }
                inverse
            }
            Law::Rule(_) => (0..n)
                .into_par_iter()
                .map(|a| {
                    let (mut prev, mut cur) = (identity, a);
                    for _ in 0..n {
                        if cur == identity {
                            return Ok(prev as u32);
                        }
                        prev = cur;
                        cur = mul(cur, a);
                    }
                    Err(GroupError::NotAGroup(format!("element {a} has no finite order")))
                })
                .collect::<Result<Vec<u32>, _>>()?,
        };
        check_associativity(n, &mul)?;
        Ok(Group(Arc::new(Inner {
            label,
            descriptor: None,
            keys,
            identity,
            inverse,
            law,
            orders: OnceLock::new(),
            centralizer_orders: OnceLock::new(),
            center: OnceLock::new(),
            generators: OnceLock::new(),
            key_index: OnceLock::new(),
        })))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        Arc::make_mut(&mut self.0).label = label.into();
        self
    }

    /// Attaches the constructor descriptor used when serializing large groups.
    pub fn with_descriptor(mut self, descriptor: impl Into<String>) -> Self {
        Arc::make_mut(&mut self.0).descriptor = Some(descriptor.into());
        self
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn descriptor(&self) -> Option<&str> {
        self.0.descriptor.as_deref()
    }

    pub fn order(&self) -> usize {
        self.0.keys.len()
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.0.law, Law::Table(_))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.0.law {
            Law::Table(t) => t[a * self.order() + b] as usize,
            Law::Rule(r) => r.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a] as usize
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let (mut acc, mut base, mut k) = (self.identity(), x, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn key(&self, x: usize) -> &[u32] {
        &self.0.keys[x]
    }

    pub fn keys(&self) -> &[ElementKey] {
        &self.0.keys
    }

    pub fn index_of(&self, key: &[u32]) -> Option<usize> {
        self.0
            .key_index
            .get_or_init(|| self.0.keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
            .get(key)
            .copied()
    }

    pub fn check_index(&self, x: usize) -> Result<(), GroupError> {
        if x < self.order() {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange(x))
        }
    }

    /// Order of every element, cached.
    pub fn element_orders(&self) -> &[u32] {
        self.0.orders.get_or_init(|| {
            let e = self.identity();
            (0..self.order())
                .into_par_iter()
                .map(|x| {
                    let (mut cur, mut k) = (x, 1u32);
                    while cur != e {
                        cur = self.mul(cur, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn element_order(&self, x: usize) -> u32 {
        self.element_orders()[x]
    }

    /// `|C_G(x)|` for every element, cached.
    pub fn centralizer_orders(&self) -> &[u32] {
        self.0.centralizer_orders.get_or_init(|| {
            let n = self.order();
            (0..n)
                .into_par_iter()
                .map(|x| (0..n).filter(|&g| self.commute(g, x)).count() as u32)
                .collect()
        })
    }
}

fn check_associativity(n: usize, mul: &(impl Fn(usize, usize) -> usize + Sync)) -> Result<(), GroupError> {
    let bad = |(a, b, c): (usize, usize, usize)| mul(mul(a, b), c) != mul(a, mul(b, c));
    let failure = if n <= EXHAUSTIVE_ASSOCIATIVITY {
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&t| bad(t))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..SAMPLED_TRIPLES)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)))
            .find(|&t| bad(t))
    };
    match failure {
        Some((a, b, c)) => Err(GroupError::NotAGroup(format!("associativity fails on ({a}, {b}, {c})"))),
        None => Ok(()),
    }
}

/// Single-integer keys `[0], [1], ..`.
pub fn serial_keys(n: usize) -> Vec<ElementKey> {
    (0..n as u32).map(|i| vec![i].into_boxed_slice()).collect()
}
