//! GL(2,q), SL(2,q) and their central quotients, enumerated as 2x2 matrices
//! over GF(q).
//!
//! Element keys are the entry codes `[a, b, c, d]` of `[[a, b], [c, d]]`,
//! enumerated in lexicographic order, so element indices are reproducible.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, prime_power};
use crate::classify::ac_witness;
use crate::ffield::{make_field, FieldElem, FieldError, FieldSpec, FieldTables};
use crate::groups::{ElementKey, Group, GroupError, MulRule, Subgroup, TABLE_LIMIT};

pub const MAX_Q: u64 = 81;
/// Matrix groups above this many elements are refused.
pub const MAX_MATRIX_ORDER: u64 = 1 << 20;
const DENSE_LOOKUP_LIMIT: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {q} out of range: {reason}")]
    QOutOfRange { q: u64, reason: String },
    #[error("not an AC-group: centralizer of element {x} contains non-commuting {a} and {b}")]
    NotAc { x: usize, a: usize, b: usize },
    #[error("partition cover failure at element {witness}: {reason}")]
    CoverFailure { witness: usize, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LinearFamily {
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "PGL")]
    Pgl,
    #[serde(rename = "PSL")]
    Psl,
}

impl LinearFamily {
    pub fn name(self) -> &'static str {
        match self {
            LinearFamily::Gl => "GL",
            LinearFamily::Sl => "SL",
            LinearFamily::Pgl => "PGL",
            LinearFamily::Psl => "PSL",
        }
    }

    /// Group order for parameter `q`.
    pub fn order(self, q: u64) -> u64 {
        match self {
            LinearFamily::Gl => (q * q - 1) * (q * q - q),
            LinearFamily::Sl | LinearFamily::Pgl => q * (q * q - 1),
            LinearFamily::Psl => q * (q * q - 1) / gcd(2, q - 1),
        }
    }

    pub fn build(self, q: u64) -> Result<Group, MatrixError> {
        match self {
            LinearFamily::Gl => gl2(q),
            LinearFamily::Sl => sl2(q),
            LinearFamily::Pgl => pgl2(q),
            LinearFamily::Psl => psl2(q),
        }
    }

    pub fn label(self, q: u64) -> String {
        format!("{}(2,{q})", self.name())
    }
}

/// A 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Mat2 {
    pub fn from_key(field: &FieldSpec, key: &[u32]) -> Mat2 {
        let e = |i: usize| field.from_code(key[i] as u64);
        Mat2 { a: e(0), b: e(1), c: e(2), d: e(3) }
    }

    pub fn key(&self, field: &FieldSpec) -> ElementKey {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .map(|e| field.code(e) as u32)
            .collect()
    }

    pub fn det(&self, field: &FieldSpec) -> Result<FieldElem, FieldError> {
        field.sub(&field.mul(&self.a, &self.d)?, &field.mul(&self.b, &self.c)?)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// GF(q) for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<FieldSpec, MatrixError> {
    let (p, n) = prime_power(q).ok_or(MatrixError::NotPrimePower(q))?;
    Ok(make_field(p, n)?)
}

#[derive(Debug)]
enum Lookup {
    Dense(Vec<u32>),
    Sparse(HashMap<u32, u32>),
}

#[derive(Debug)]
struct MatRule {
    q: u32,
    tables: FieldTables,
    mats: Vec<[u32; 4]>,
    lookup: Lookup,
}

impl MatRule {
    fn encode(&self, m: [u32; 4]) -> u32 {
        m.iter().fold(0, |acc, &e| acc * self.q + e)
    }

    fn index(&self, m: [u32; 4]) -> usize {
        let code = self.encode(m);
        match &self.lookup {
            Lookup::Dense(v) => v[code as usize] as usize,
            Lookup::Sparse(h) => h[&code] as usize,
        }
    }

    fn product(&self, x: [u32; 4], y: [u32; 4]) -> [u32; 4] {
        let t = &self.tables;
        let dot = |p: u32, q: u32, r: u32, s: u32| t.add(t.mul(p, q), t.mul(r, s));
        [
            dot(x[0], y[0], x[1], y[2]),
            dot(x[0], y[1], x[1], y[3]),
            dot(x[2], y[0], x[3], y[2]),
            dot(x[2], y[1], x[3], y[3]),
        ]
    }
}

impl MulRule for MatRule {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.index(self.product(self.mats[a], self.mats[b]))
    }
}

fn check_q(q: u64, family: LinearFamily) -> Result<FieldSpec, MatrixError> {
    let field = field_of_order(q)?;
    if q > MAX_Q {
        return Err(MatrixError::QOutOfRange { q, reason: format!("q must be at most {MAX_Q}") });
    }
    if family.order(q) > MAX_MATRIX_ORDER {
        return Err(MatrixError::QOutOfRange {
            q,
            reason: format!("{} has more than {MAX_MATRIX_ORDER} elements", family.label(q)),
        });
    }
    Ok(field)
}

fn matrix_group(q: u64, family: LinearFamily) -> Result<Group, MatrixError> {
    let field = check_q(q, family)?;
    let tables = field.tables();
    let q32 = q as u32;
    let mut mats = Vec::new();
    for a in 0..q32 {
        for b in 0..q32 {
            for c in 0..q32 {
                for d in 0..q32 {
                    let det = tables.sub(tables.mul(a, d), tables.mul(b, c));
                    let keep = match family {
                        LinearFamily::Gl => det != 0,
                        _ => det == 1,
                    };
                    if keep {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let total = q.pow(4);
    let encode = |m: &[u32; 4]| m.iter().fold(0u32, |acc, &e| acc * q32 + e);
    let lookup = if total <= DENSE_LOOKUP_LIMIT {
        let mut v = vec![u32::MAX; total as usize];
        for (i, m) in mats.iter().enumerate() {
            v[encode(m) as usize] = i as u32;
        }
        Lookup::Dense(v)
    } else {
        Lookup::Sparse(mats.iter().enumerate().map(|(i, m)| (encode(m), i as u32)).collect())
    };
    let keys: Vec<ElementKey> = mats.iter().map(|m| m.to_vec().into_boxed_slice()).collect();
    let rule = MatRule { q: q32, tables, mats, lookup };
    let label = family.label(q);
    let group = if keys.len() <= TABLE_LIMIT {
        Group::from_fn(label.clone(), keys, |a, b| rule.mul(a, b))?
    } else {
        Group::from_rule(label.clone(), keys, Arc::new(rule))?
    };
    Ok(group.with_descriptor(label))
}

/// All invertible 2x2 matrices over GF(q).
pub fn gl2(q: u64) -> Result<Group, MatrixError> {
    matrix_group(q, LinearFamily::Gl)
}

/// Determinant-one 2x2 matrices over GF(q), enumerated directly.
pub fn sl2(q: u64) -> Result<Group, MatrixError> {
    matrix_group(q, LinearFamily::Sl)
}

/// `GL(2,q) / Z`.
pub fn pgl2(q: u64) -> Result<Group, MatrixError> {
    check_q(q, LinearFamily::Gl)?;
    let g = gl2(q)?;
    let label = LinearFamily::Pgl.label(q);
    Ok(g.quotient(g.center())?.with_label(label.clone()).with_descriptor(label))
}

/// `SL(2,q) / Z`.
pub fn psl2(q: u64) -> Result<Group, MatrixError> {
    let g = sl2(q)?;
    let label = LinearFamily::Psl.label(q);
    Ok(g.quotient(g.center())?.with_label(label.clone()).with_descriptor(label))
}

/// The elementary transvections `[[1,1],[0,1]]` and `[[1,0],[1,1]]` as indices of `g`.
pub fn standard_transvections(g: &Group) -> Option<(usize, usize)> {
    Some((g.index_of(&[1, 1, 0, 1])?, g.index_of(&[1, 0, 1, 1])?))
}

/// Recovers `(family, q)` from a matrix-group descriptor such as `"SL(2,5)"`.
pub fn parse_linear(text: &str) -> Option<(LinearFamily, u64)> {
    let (name, rest) = text.trim().split_once("(2,")?;
    let q: u64 = rest.strip_suffix(')')?.trim().parse().ok()?;
    let family = match name.trim() {
        "GL" => LinearFamily::Gl,
        "SL" => LinearFamily::Sl,
        "PGL" => LinearFamily::Pgl,
        "PSL" => LinearFamily::Psl,
        _ => return None,
    };
    Some((family, q))
}

/// One family of partition components sharing an order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    /// `|C_G(x)|`.
    pub subgroup_order: usize,
    /// `|C_G(x) / Z(G)|`, the order of the component in `G/Z(G)`.
    pub quotient_order: usize,
    pub count: usize,
}

/// The partition of `G/Z(G)` cut out by the distinct centralizers of
/// non-central elements of an AC-group `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub group: String,
    pub center_order: usize,
    pub components: usize,
    pub component_orders: Vec<ComponentClass>,
    /// Set when the group is a known GL/SL(2,q), whose central quotient is PGL/PSL(2,q).
    pub q: Option<u64>,
    pub sylow_count: Option<usize>,
    pub split_tori_count: Option<usize>,
    pub nonsplit_tori_count: Option<usize>,
    pub covers: bool,
}

/// Distinct centralizers of non-central elements, verified to meet pairwise
/// in `Z(G)` and to cover `G`.
///
/// For `G = SL(2,q)` (resp. `GL(2,q)`) the images in `G/Z(G)` form the
/// partition of `PSL(2,q)` (resp. `PGL(2,q)`) into `q+1` Sylow subgroups and
/// two families of cyclic tori; in that case the three family counts are filled in.
pub fn maximal_abelian_partition(g: &Group) -> Result<PartitionReport, MatrixError> {
    if let Some(w) = ac_witness(g) {
        return Err(MatrixError::NotAc { x: w.x, a: w.a, b: w.b });
    }
    let center = g.center();
    let z = center.order();
    let mut components: Vec<Subgroup> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for c in g.all_centralizers().into_iter() {
        if c.order() < g.order() && seen.insert(c.clone()) {
            components.push(c);
        }
    }
    let mut owner = vec![usize::MAX; g.order()];
    for (i, c) in components.iter().enumerate() {
        for &x in c.members() {
            if center.contains(x) {
                continue;
            }
            if owner[x] != usize::MAX {
                return Err(MatrixError::CoverFailure {
                    witness: x,
                    reason: format!("lies in components {} and {i}", owner[x]),
                });
            }
            owner[x] = i;
        }
    }
    if let Some(x) = (0..g.order()).find(|&x| owner[x] == usize::MAX && !center.contains(x)) {
        return Err(MatrixError::CoverFailure { witness: x, reason: "not covered".into() });
    }
    let mut classes: Vec<ComponentClass> = Vec::new();
    for c in &components {
        match classes.iter_mut().find(|k| k.subgroup_order == c.order()) {
            Some(k) => k.count += 1,
            None => classes.push(ComponentClass { subgroup_order: c.order(), quotient_order: c.order() / z, count: 1 }),
        }
    }
    classes.sort_by_key(|k| k.quotient_order);
    let linear = g
        .descriptor()
        .and_then(parse_linear)
        .filter(|(f, _)| matches!(f, LinearFamily::Gl | LinearFamily::Sl));
    let count_of = |order: u64| {
        classes.iter().find(|k| k.quotient_order as u64 == order).map_or(0, |k| k.count)
    };
    let (q, sylow, split, nonsplit) = match linear {
        Some((family, q)) => {
            let d = if family == LinearFamily::Sl { gcd(2, q - 1) } else { 1 };
            let split_order = (q - 1) / d;
            // the order-1 torus family of SL(2,2), SL(2,3) is empty
            let split = if split_order > 1 { count_of(split_order) } else { 0 };
            (Some(q), Some(count_of(q)), Some(split), Some(count_of((q + 1) / d)))
        }
        None => (None, None, None, None),
    };
    Ok(PartitionReport {
        group: g.label().to_string(),
        center_order: z,
        components: components.len(),
        component_orders: classes,
        q,
        sylow_count: sylow,
        split_tori_count: split,
        nonsplit_tori_count: nonsplit,
        covers: true,
    })
}

/// Partition of `PSL(2,q)`, realized through `SL(2,q)`.
pub fn psl2_partition(q: u64) -> Result<PartitionReport, MatrixError> {
    maximal_abelian_partition(&sl2(q)?)
}

/// Partition of `PGL(2,q)`, realized through `GL(2,q)`.
pub fn pgl2_partition(q: u64) -> Result<PartitionReport, MatrixError> {
    maximal_abelian_partition(&gl2(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(sl2(2).unwrap().order(), 6);
        assert_eq!(gl2(2).unwrap().order(), 6);
        assert_eq!(gl2(3).unwrap().order(), 48);
        assert_eq!(psl2(3).unwrap().order(), 12);
        assert_eq!(pgl2(3).unwrap().order(), 24);
    }

    #[test]
    fn q_validation() {
        assert_eq!(gl2(6).unwrap_err(), MatrixError::NotPrimePower(6));
        assert!(matches!(sl2(121), Err(MatrixError::QOutOfRange { .. })));
        assert!(matches!(gl2(81), Err(MatrixError::QOutOfRange { .. })));
    }

    #[test]
    fn parse_descriptors() {
        assert_eq!(parse_linear("SL(2,5)"), Some((LinearFamily::Sl, 5)));
        assert_eq!(parse_linear("PGL(2,9)"), Some((LinearFamily::Pgl, 9)));
        assert_eq!(parse_linear("SL(3,5)"), None);
    }

    #[test]
    fn matrices_print_in_polynomial_form() {
        let f = field_of_order(4).unwrap();
        let m = Mat2::from_key(&f, &[2, 3, 1, 1]);
        assert_eq!(m.to_string(), "[[x,x+1],[1,1]]");
        assert_eq!(m.det(&f).unwrap(), f.one());
        assert_eq!(&*m.key(&f), &[2, 3, 1, 1]);
    }

    #[test]
    fn psl27_is_not_ac() {
        // involution centralizers in PSL(2,7) are dihedral of order 8
        let err = maximal_abelian_partition(&psl2(7).unwrap()).unwrap_err();
        assert!(matches!(err, MatrixError::NotAc { .. }));
    }
}
