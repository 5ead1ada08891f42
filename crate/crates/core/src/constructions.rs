//! Standard groups from descriptors, and the rival catalogs for orders 6 and 24.
//!
//! Descriptor strings:
//!
//! | form | group |
//! |---|---|
//! | `C12` or `Z12` | cyclic of order 12 |
//! | `D8` | dihedral of order 8 |
//! | `Dic12`, `Q8` | dicyclic of order 12, quaternion of order 8 |
//! | `S4`, `A4` | symmetric, alternating |
//! | `direct(C2,A4)` | direct product |
//! | `semidirect(C5,C4,x^2)` | `C5 ⋊ C4`, generator of `C4` acting as `x -> x^2` |
//! | `semidirect(Q8,C3,[a->x,x->ax])` | explicit images of each generator of the normal factor |
//! | `GL(2,5)`, `SL(2,5)`, `PGL(2,5)`, `PSL(2,5)` | matrix groups |
//!
//! In the bracket form, `;` separates the generators of the acting group.
//! Canonical generators: cyclic `x`; dihedral `r`, `s`; dicyclic `a`, `x`
//! (with `x^2 = a^n`); symmetric `t = (0 1)`, `c = (0 1 .. n-1)`; alternating
//! `u = (0 1 2)` and `v`, the long cycle on `0..n` (n odd) or `1..n` (n even).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{ElementKey, Group, GroupError, GroupJson};
use crate::matgroups::{parse_linear, LinearFamily, MatrixError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("bad action: {0}")]
    BadAction(String),
    #[error("cannot parse group descriptor {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("invalid descriptor: {0}")]
    Invalid(String),
    #[error("catalog groups {0} and {1} are isomorphic")]
    CatalogDuplicate(String, String),
    #[error("no rival catalog for order {0}")]
    NoCatalog(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Images of the normal factor's generators, one list per generator of the
/// acting factor: `action[i]` holds `(generator name, image word)` pairs.
pub type Action = Vec<Vec<(String, String)>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDescriptor {
    Cyclic { n: usize },
    Dihedral { order: usize },
    Dicyclic { order: usize },
    Symmetric { n: usize },
    Alternating { n: usize },
    Direct { factors: Vec<GroupDescriptor> },
    Semidirect { normal: Box<GroupDescriptor>, acting: Box<GroupDescriptor>, action: Action },
    Linear { family: String, q: u64 },
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic { n } => write!(f, "C{n}"),
            GroupDescriptor::Dihedral { order } => write!(f, "D{order}"),
            GroupDescriptor::Dicyclic { order } => write!(f, "Dic{order}"),
            GroupDescriptor::Symmetric { n } => write!(f, "S{n}"),
            GroupDescriptor::Alternating { n } => write!(f, "A{n}"),
            GroupDescriptor::Direct { factors } => {
                let parts: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
                write!(f, "direct({})", parts.join(","))
            }
            GroupDescriptor::Semidirect { normal, acting, action } => {
                let shorthand = matches!(**normal, GroupDescriptor::Cyclic { .. })
                    && action.len() == 1
                    && action[0].len() == 1;
                if shorthand {
                    write!(f, "semidirect({normal},{acting},{})", action[0][0].1)
                } else {
                    let per_gen: Vec<String> = action
                        .iter()
                        .map(|maps| maps.iter().map(|(g, w)| format!("{g}->{w}")).collect::<Vec<_>>().join(","))
                        .collect();
                    write!(f, "semidirect({normal},{acting},[{}])", per_gen.join(";"))
                }
            }
            GroupDescriptor::Linear { family, q } => write!(f, "{family}(2,{q})"),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        parse_descriptor(&text).map_err(|reason| ConstructionError::Parse { text: s.to_string(), reason })
    }
}

fn parse_descriptor(text: &str) -> Result<GroupDescriptor, String> {
    if let Some((family, q)) = parse_linear(text) {
        return Ok(GroupDescriptor::Linear { family: family.name().to_string(), q });
    }
    if let Some(inner) = text.strip_prefix("direct(").and_then(|t| t.strip_suffix(')')) {
        let factors = split_top(inner)
            .iter()
            .map(|part| parse_descriptor(part))
            .collect::<Result<Vec<_>, _>>()?;
        if factors.is_empty() {
            return Err("direct product needs factors".into());
        }
        return Ok(GroupDescriptor::Direct { factors });
    }
    if let Some(inner) = text.strip_prefix("semidirect(").and_then(|t| t.strip_suffix(')')) {
        let parts = split_top(inner);
        let [normal, acting, action] = parts.as_slice() else {
            return Err("semidirect takes (normal, acting, action)".into());
        };
        let normal = parse_descriptor(normal)?;
        let acting = parse_descriptor(acting)?;
        let action = parse_action(action, &normal)?;
        return Ok(GroupDescriptor::Semidirect { normal: Box::new(normal), acting: Box::new(acting), action });
    }
    let num = |prefix: &str| -> Option<Result<usize, String>> {
        text.strip_prefix(prefix).map(|rest| {
            rest.parse::<usize>().map_err(|_| format!("expected a number after {prefix:?}"))
        })
    };
    // longer prefixes first
    if let Some(n) = num("Dic") {
        return Ok(GroupDescriptor::Dicyclic { order: n? });
    }
    for (prefix, make) in [
        ("C", (|n| GroupDescriptor::Cyclic { n }) as fn(usize) -> GroupDescriptor),
        ("Z", |n| GroupDescriptor::Cyclic { n }),
        ("D", |order| GroupDescriptor::Dihedral { order }),
        ("Q", |order| GroupDescriptor::Dicyclic { order }),
        ("S", |n| GroupDescriptor::Symmetric { n }),
        ("A", |n| GroupDescriptor::Alternating { n }),
    ] {
        if let Some(n) = num(prefix) {
            return Ok(make(n?));
        }
    }
    Err("unknown group kind".into())
}

/// Splits on commas outside parentheses and brackets.
fn split_top(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !text.is_empty() {
        parts.push(&text[start..]);
    }
    parts
}

fn parse_action(text: &str, normal: &GroupDescriptor) -> Result<Action, String> {
    match text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        Some(inner) => inner
            .split(';')
            .map(|per_gen| {
                per_gen
                    .split(',')
                    .filter(|m| !m.is_empty())
                    .map(|m| {
                        let (g, w) = m.split_once("->").ok_or_else(|| format!("expected name->word, got {m:?}"))?;
                        Ok((g.to_string(), w.to_string()))
                    })
                    .collect()
            })
            .collect(),
        None => {
            let names = generator_names(normal);
            if names.len() != 1 {
                return Err("shorthand action needs a normal factor with one generator".into());
            }
            Ok(vec![vec![(names[0].to_string(), text.to_string())]])
        }
    }
}

fn generator_names(desc: &GroupDescriptor) -> Vec<&'static str> {
    match desc {
        GroupDescriptor::Cyclic { .. } => vec!["x"],
        GroupDescriptor::Dihedral { .. } => vec!["r", "s"],
        GroupDescriptor::Dicyclic { .. } => vec!["a", "x"],
        GroupDescriptor::Symmetric { .. } => vec!["t", "c"],
        GroupDescriptor::Alternating { n } if *n <= 3 => vec!["u"],
        GroupDescriptor::Alternating { .. } => vec!["u", "v"],
        _ => Vec::new(),
    }
}

/// A built group together with its named canonical generators.
struct Built {
    group: Group,
    gens: Vec<(&'static str, usize)>,
}

/// Builds the group described by `desc`; the label is the descriptor string.
pub fn build(desc: &GroupDescriptor) -> Result<Group, ConstructionError> {
    let label = desc.to_string();
    Ok(build_named(desc)?.group.with_label(label.clone()).with_descriptor(label))
}

/// Parses and builds a descriptor string.
pub fn build_str(text: &str) -> Result<Group, ConstructionError> {
    build(&text.parse()?)
}

fn positive(n: usize, what: &str) -> Result<(), ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::Invalid(format!("{what} must be positive")));
    }
    Ok(())
}

fn build_named(desc: &GroupDescriptor) -> Result<Built, ConstructionError> {
    let label = desc.to_string();
    match desc {
        GroupDescriptor::Cyclic { n } => {
            let n = *n;
            positive(n, "cyclic order")?;
            let keys = (0..n as u32).map(|i| vec![i].into_boxed_slice()).collect();
            let group = Group::from_fn(label, keys, |a, b| (a + b) % n)?;
            Ok(Built { gens: vec![("x", 1 % n)], group })
        }
        GroupDescriptor::Dihedral { order } => {
            if *order < 2 || order % 2 != 0 {
                return Err(ConstructionError::Invalid(format!("dihedral order {order} must be even")));
            }
            let m = order / 2;
            // index 2i + j is r^i s^j
            let keys = (0..m as u32).flat_map(|i| (0..2).map(move |j| vec![i, j].into_boxed_slice())).collect();
            let group = Group::from_fn(label, keys, |a, b| {
                let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
                let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
                2 * rot + (j ^ l)
            })?;
            Ok(Built { gens: vec![("r", 2 % (2 * m)), ("s", 1)], group })
        }
        GroupDescriptor::Dicyclic { order } => {
            if *order < 4 || order % 4 != 0 {
                return Err(ConstructionError::Invalid(format!("dicyclic order {order} must be a multiple of 4")));
            }
            let m = order / 4;
            let two_m = 2 * m;
            // index 2i + j is a^i x^j, a of order 2m, x^2 = a^m, x a x^-1 = a^-1
            let keys = (0..two_m as u32).flat_map(|i| (0..2).map(move |j| vec![i, j].into_boxed_slice())).collect();
            let group = Group::from_fn(label, keys, |p, r| {
                let (i, j, k, l) = (p / 2, p % 2, r / 2, r % 2);
                if j == 0 {
                    2 * ((i + k) % two_m) + l
                } else if l == 0 {
                    2 * ((i + two_m - k) % two_m) + 1
                } else {
                    2 * ((i + two_m - k + m) % two_m)
                }
            })?;
            Ok(Built { gens: vec![("a", 2 % two_m), ("x", 1)], group })
        }
        GroupDescriptor::Symmetric { n } | GroupDescriptor::Alternating { n } => {
            positive(*n, "degree")?;
            let even_only = matches!(desc, GroupDescriptor::Alternating { .. });
            let n = *n;
            let perms: Vec<Vec<u32>> = permutations(n).into_iter().filter(|p| !even_only || is_even(p)).collect();
            let built = perm_group(label, perms)?;
            let cycle = |from: usize| -> Vec<u32> {
                let mut p: Vec<u32> = (0..n as u32).collect();
                for (i, slot) in p.iter_mut().enumerate().skip(from) {
                    *slot = if i + 1 < n { i as u32 + 1 } else { from as u32 };
                }
                p
            };
            let mut gens = Vec::new();
            if even_only {
                if n >= 3 {
                    let mut u: Vec<u32> = (0..n as u32).collect();
                    u[0..3].copy_from_slice(&[1, 2, 0]);
                    gens.push(("u", built.index_of(&u).unwrap()));
                }
                if n >= 4 {
                    let v = if n % 2 == 1 { cycle(0) } else { cycle(1) };
                    gens.push(("v", built.index_of(&v).unwrap()));
                }
            } else if n >= 2 {
                let mut t: Vec<u32> = (0..n as u32).collect();
                t.swap(0, 1);
                gens.push(("t", built.index_of(&t).unwrap()));
                gens.push(("c", built.index_of(&cycle(0)).unwrap()));
            }
            Ok(Built { group: built, gens })
        }
        GroupDescriptor::Direct { factors } => {
            let parts = factors.iter().map(build_named).collect::<Result<Vec<_>, _>>()?;
            let group = direct_product(label, &parts.iter().map(|b| &b.group).collect::<Vec<_>>())?;
            Ok(Built { group, gens: Vec::new() })
        }
        GroupDescriptor::Semidirect { normal, acting, action } => {
            let n = build_named(normal)?;
            let h = build_named(acting)?;
            Ok(Built { group: semidirect(label, &n, &h, action)?, gens: Vec::new() })
        }
        GroupDescriptor::Linear { family, q } => {
            let family = match parse_linear(&format!("{family}(2,{q})")) {
                Some((f, _)) => f,
                None => return Err(ConstructionError::Invalid(format!("unknown linear family {family}"))),
            };
            Ok(Built { group: family.build(*q)?, gens: Vec::new() })
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut p: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn is_even(p: &[u32]) -> bool {
    let inversions: usize = (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum();
    inversions.is_multiple_of(2)
}

/// Permutations composed right to left: `(a*b)(i) = a(b(i))`.
fn perm_group(label: String, perms: Vec<Vec<u32>>) -> Result<Group, GroupError> {
    let index: HashMap<&[u32], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let compose = |a: usize, b: usize| {
        let c: Vec<u32> = perms[b].iter().map(|&i| perms[a][i as usize]).collect();
        index[c.as_slice()]
    };
    let keys = perms.iter().map(|p| p.clone().into_boxed_slice()).collect();
    Group::from_fn(label, keys, compose)
}

/// Component-wise product; keys are the factor indices.
fn direct_product(label: String, factors: &[&Group]) -> Result<Group, GroupError> {
    let sizes: Vec<usize> = factors.iter().map(|g| g.order()).collect();
    let total: usize = sizes.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            d[i] = x % sizes[i];
            x /= sizes[i];
        }
        d
    };
    let keys: Vec<ElementKey> =
        (0..total).map(|x| digits(x).into_iter().map(|d| d as u32).collect()).collect();
    Group::from_fn(label, keys, |a, b| {
        let (da, db) = (digits(a), digits(b));
        (0..sizes.len()).fold(0, |acc, i| acc * sizes[i] + factors[i].mul(da[i], db[i]))
    })
}

fn eval_word(built: &Built, word: &str) -> Result<usize, ConstructionError> {
    let g = &built.group;
    let mut acc = g.identity();
    let chars: Vec<char> = word.chars().collect();
    let mut i = 0;
    if word == "1" || word == "e" {
        return Ok(acc);
    }
    while i < chars.len() {
        let name = chars[i];
        let gen = built
            .gens
            .iter()
            .find(|(n, _)| n.starts_with(name))
            .map(|&(_, x)| x)
            .ok_or_else(|| ConstructionError::BadAction(format!("unknown generator {name:?} in {word:?}")))?;
        i += 1;
        let mut exp: i64 = 1;
        if chars.get(i) == Some(&'^') {
            let start = i + 1;
            let mut end = start;
            if chars.get(end) == Some(&'-') {
                end += 1;
            }
            while chars.get(end).is_some_and(|c| c.is_ascii_digit()) {
                end += 1;
            }
            let digits: String = chars[start..end].iter().collect();
            exp = digits
                .parse()
                .map_err(|_| ConstructionError::BadAction(format!("bad exponent in {word:?}")))?;
            i = end;
        }
        let ord = g.element_order(gen) as i64;
        acc = g.mul(acc, g.pow(gen, exp.rem_euclid(ord) as u64));
    }
    Ok(acc)
}

/// `N ⋊ H` with `(n1, h1)(n2, h2) = (n1 · h1(n2), h1 h2)`.
///
/// Each generator image list must extend to an automorphism of `N`, and the
/// assignment generator -> automorphism must respect the relations of `H`;
/// both are checked by walking the Cayley graphs.
fn semidirect(label: String, n: &Built, h: &Built, action: &Action) -> Result<Group, ConstructionError> {
    if n.gens.is_empty() || (h.gens.is_empty() && h.group.order() > 1) {
        return Err(ConstructionError::BadAction("both factors need named generators".into()));
    }
    if action.len() != h.gens.len() {
        return Err(ConstructionError::BadAction(format!(
            "{} generator maps given, acting group has {} generators",
            action.len(),
            h.gens.len()
        )));
    }
    let ng = &n.group;
    let nsize = ng.order();
    let mut automorphisms: Vec<Vec<usize>> = Vec::new();
    for (i, maps) in action.iter().enumerate() {
        let mut images = Vec::new();
        for (name, _) in &n.gens {
            let (_, word) = maps
                .iter()
                .find(|(g, _)| g == name)
                .ok_or_else(|| ConstructionError::BadAction(format!("no image for generator {name} under acting generator {i}")))?;
            images.push(eval_word(n, word)?);
        }
        let gens: Vec<usize> = n.gens.iter().map(|&(_, x)| x).collect();
        let auto = extend_map(ng, &gens, &images)
            .ok_or_else(|| ConstructionError::BadAction(format!("acting generator {i} does not induce an automorphism")))?;
        automorphisms.push(auto);
    }
    // psi(h * h_i) = psi(h) ∘ alpha_i
    let hg = &h.group;
    let identity_map: Vec<usize> = (0..nsize).collect();
    let mut psi: Vec<Option<Vec<usize>>> = vec![None; hg.order()];
    psi[hg.identity()] = Some(identity_map);
    let mut queue = vec![hg.identity()];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        for (i, &(_, gen)) in h.gens.iter().enumerate() {
            let z = hg.mul(y, gen);
            let current = psi[y].as_ref().unwrap();
            let composed: Vec<usize> = (0..nsize).map(|x| current[automorphisms[i][x]]).collect();
            match &psi[z] {
                None => {
                    psi[z] = Some(composed);
                    queue.push(z);
                }
                Some(existing) if *existing != composed => {
                    return Err(ConstructionError::BadAction("action does not respect the relations of the acting group".into()));
                }
                Some(_) => {}
            }
        }
    }
    let psi: Vec<Vec<usize>> = psi.into_iter().map(|m| m.expect("generators reach every element")).collect();
    let hsize = hg.order();
    let keys = (0..nsize as u32)
        .flat_map(|a| (0..hsize as u32).map(move |b| vec![a, b].into_boxed_slice()))
        .collect();
    Ok(Group::from_fn(label, keys, |x, y| {
        let (n1, h1, n2, h2) = (x / hsize, x % hsize, y / hsize, y % hsize);
        ng.mul(n1, psi[h1][n2]) * hsize + hg.mul(h1, h2)
    })?)
}

/// Extends generator images to a bijective homomorphism `g -> g`, if one exists.
fn extend_map(g: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; g.order()];
    map[g.identity()] = g.identity();
    used[g.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let z = g.mul(y, s);
            let w = g.mul(map[y], t);
            if map[z] == usize::MAX {
                if used[w] {
                    return None;
                }
                used[w] = true;
                map[z] = w;
                queue.push(z);
            } else if map[z] != w {
                return None;
            }
        }
    }
    map.iter().all(|&m| m != usize::MAX).then_some(map)
}

/// Catalog entries as (display label, descriptor).
const ORDER_24: [(&str, &str); 15] = [
    ("Z24", "C24"),
    ("Z2xZ12", "direct(C2,C12)"),
    ("Z2xZ2xZ6", "direct(C2,C2,C6)"),
    ("S4", "S4"),
    ("SL(2,3)", "semidirect(Q8,C3,[a->x,x->ax])"),
    ("Z2xA4", "direct(C2,A4)"),
    ("D24", "D24"),
    ("Dic24", "Dic24"),
    ("Z3:Z8", "semidirect(C3,C8,x^2)"),
    ("Z4xS3", "direct(C4,S3)"),
    ("Z2xD12", "direct(C2,D12)"),
    ("Z2x(Z3:Z4)", "direct(C2,Dic12)"),
    ("Z3:D8", "semidirect(C3,D8,[x->x^2;x->x])"),
    ("Z3xD8", "direct(C3,D8)"),
    ("Z3xQ8", "direct(C3,Q8)"),
];

const ORDER_6: [(&str, &str); 2] = [("Z6", "C6"), ("S3", "S3")];

fn build_catalog(entries: &[(&str, &str)]) -> Result<Vec<Group>, ConstructionError> {
    let groups = entries
        .iter()
        .map(|(label, text)| {
            let desc: GroupDescriptor = text.parse()?;
            Ok(build(&desc)?.with_label(*label))
        })
        .collect::<Result<Vec<Group>, ConstructionError>>()?;
    for (i, a) in groups.iter().enumerate() {
        for b in &groups[i + 1..] {
            if a.is_isomorphic(b)?.is_some() {
                return Err(ConstructionError::CatalogDuplicate(a.label().into(), b.label().into()));
            }
        }
    }
    Ok(groups)
}

/// The fifteen groups of order 24, verified pairwise non-isomorphic.
pub fn order24_catalog() -> Result<Vec<Group>, ConstructionError> {
    build_catalog(&ORDER_24)
}

/// `Z6` and `S3`.
pub fn order6_catalog() -> Result<Vec<Group>, ConstructionError> {
    build_catalog(&ORDER_6)
}

pub fn catalog_for_order(order: usize) -> Result<Vec<Group>, ConstructionError> {
    match order {
        6 => order6_catalog(),
        24 => order24_catalog(),
        _ => Err(ConstructionError::NoCatalog(order)),
    }
}

/// Rebuilds a serialized group from its table, or from its descriptor when
/// no table was written.
pub fn group_from_json(json: &GroupJson) -> Result<Group, ConstructionError> {
    if json.table.is_some() {
        return Ok(Group::from_json_table(json)?);
    }
    let desc = json
        .descriptor
        .as_deref()
        .ok_or_else(|| ConstructionError::Invalid("group JSON has neither table nor descriptor".into()))?;
    let group = build_str(desc)?.with_label(json.label.clone());
    if group.order() != json.order {
        return Err(ConstructionError::Invalid(format!("descriptor {desc} has order {}, JSON says {}", group.order(), json.order)));
    }
    Ok(group)
}

/// Linear family of a descriptor string, if it names a matrix group.
pub fn linear_family(text: &str) -> Option<(LinearFamily, u64)> {
    parse_linear(text)
}
