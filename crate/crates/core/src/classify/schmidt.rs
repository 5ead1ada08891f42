//! The case lists for finite AC-groups: four non-solvable cases and five
//! solvable ones. Every match carries witnesses that are re-checked before
//! the report is returned.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use super::{
    ac_witness, distinct_centralizer_count, frobenius_structure, is_ac_group, omega_if_small, AcWitness,
    ClassifyError,
};
use crate::arith::{factorize, gcd, prime_power, prime_powers_in};
use crate::constructions::build_str;
use crate::groups::{Group, Subgroup};
use crate::matgroups::{pgl2, psl2, sl2, MAX_Q};
use crate::ncgraph::{build_graph, clique_number};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SchmidtCase {
    #[serde(rename = "NS1")]
    Ns1,
    #[serde(rename = "NS2")]
    Ns2,
    /// Detected from orders only; the covering group is never built.
    #[serde(rename = "NS3*")]
    Ns3Star,
    #[serde(rename = "NS4*")]
    Ns4Star,
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl SchmidtCase {
    pub fn name(self) -> &'static str {
        match self {
            SchmidtCase::Ns1 => "NS1",
            SchmidtCase::Ns2 => "NS2",
            SchmidtCase::Ns3Star => "NS3*",
            SchmidtCase::Ns4Star => "NS4*",
            SchmidtCase::S1 => "S1",
            SchmidtCase::S2 => "S2",
            SchmidtCase::S3 => "S3",
            SchmidtCase::S4 => "S4",
            SchmidtCase::S5 => "S5",
        }
    }

    pub fn numerics_only(self) -> bool {
        matches!(self, SchmidtCase::Ns3Star | SchmidtCase::Ns4Star)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaCheck {
    pub expected: usize,
    pub computed: usize,
    /// "clique" for the exact solver, "centralizers" for the distinct-centralizer count.
    pub method: &'static str,
}

impl OmegaCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseMatch {
    pub case: SchmidtCase,
    /// `q = p^n` for the non-solvable cases, the prime index for S1, the prime for S5.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<u64>,
    pub witnesses: BTreeMap<String, Subgroup>,
    /// Isomorphism `G/Z(G) -> target` (coset representative order), when the case names one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_iso: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaCheck>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub group: String,
    pub order: usize,
    pub center_order: usize,
    pub is_ac: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ac_witness: Option<AcWitness>,
    pub solvable: bool,
    pub nilpotent: bool,
    /// The primary case; `None` for non-AC groups.
    pub schmidt_case: Option<SchmidtCase>,
    pub matches: Vec<CaseMatch>,
    pub numerics_only: bool,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    fn base(g: &Group) -> Self {
        let w = ac_witness(g);
        ClassificationReport {
            group: g.label().to_string(),
            order: g.order(),
            center_order: g.center().order(),
            is_ac: w.is_none(),
            ac_witness: w,
            solvable: g.is_solvable(),
            nilpotent: g.is_nilpotent(),
            schmidt_case: None,
            matches: Vec::new(),
            numerics_only: false,
            notes: Vec::new(),
        }
    }

    pub fn matched(&self) -> Vec<SchmidtCase> {
        self.matches.iter().map(|m| m.case).collect()
    }
}

/// AC test followed by whichever case list applies.
pub fn classify(g: &Group, budget: Duration) -> Result<ClassificationReport, ClassifyError> {
    if g.is_abelian() {
        return Err(ClassifyError::Precondition(format!("{} is abelian", g.label())));
    }
    if !is_ac_group(g) {
        let mut report = ClassificationReport::base(g);
        report.notes.push("not an AC-group; no case applies".into());
        return Ok(report);
    }
    if g.is_solvable() {
        schmidt_solvable_case(g, budget)
    } else {
        schmidt_nonsolvable_case(g)
    }
}

fn require(g: &Group, solvable: bool) -> Result<ClassificationReport, ClassifyError> {
    if g.is_abelian() {
        return Err(ClassifyError::Precondition(format!("{} is abelian", g.label())));
    }
    let report = ClassificationReport::base(g);
    if !report.is_ac {
        return Err(ClassifyError::Precondition(format!("{} is not an AC-group", g.label())));
    }
    if report.solvable != solvable {
        let what = if solvable { "solvable" } else { "non-solvable" };
        return Err(ClassifyError::Precondition(format!("{} is not {what}", g.label())));
    }
    Ok(report)
}

fn witnesses(pairs: &[(&str, &Subgroup)]) -> BTreeMap<String, Subgroup> {
    pairs.iter().map(|(k, s)| (k.to_string(), (*s).clone())).collect()
}

fn is_prime_power(n: usize) -> bool {
    prime_power(n as u64).is_some()
}

// ---------------------------------------------------------------------------
// solvable

/// Matches the five solvable cases; all matches are listed and the first
/// one in case order is primary.
pub fn schmidt_solvable_case(g: &Group, budget: Duration) -> Result<ClassificationReport, ClassifyError> {
    let mut report = require(g, true)?;
    let omega = match omega_if_small(g, budget)? {
        Some(w) => (w, "clique"),
        None => (distinct_centralizer_count(g), "centralizers"),
    };
    let check = |expected: usize| OmegaCheck { expected, computed: omega.0, method: omega.1 };
    let z = g.center();
    let mut matches = Vec::new();

    // S1: non-nilpotent, abelian normal N of prime index
    if !report.nilpotent {
        let lattice = g.subgroup_lattice()?;
        let found = lattice.iter().find(|n| {
            let index = g.order() / n.order();
            prime_power(index as u64).is_some_and(|(_, e)| e == 1)
                && g.is_normal(n)
                && g.is_subgroup_abelian(n)
                && check(n.order() / z.order() + 1).holds()
        });
        if let Some(n) = found {
            matches.push(CaseMatch {
                case: SchmidtCase::S1,
                parameter: Some((g.order() / n.order()) as u64),
                witnesses: witnesses(&[("N", n)]),
                quotient_iso: None,
                omega: Some(check(n.order() / z.order() + 1)),
                verified: false,
            });
        }
    }

    // S2, S3: G/Z(G) Frobenius
    if let Some(fs) = frobenius_structure(g)? {
        let (f, k) = (&fs.kernel, &fs.complement);
        let f_abelian = g.is_subgroup_abelian(f);
        let k_abelian = g.is_subgroup_abelian(k);
        if f_abelian && k_abelian && check(fs.kernel_index + 1).holds() {
            matches.push(CaseMatch {
                case: SchmidtCase::S2,
                parameter: None,
                witnesses: witnesses(&[("F", f), ("K", k)]),
                quotient_iso: None,
                omega: Some(check(fs.kernel_index + 1)),
                verified: false,
            });
        }
        if !f_abelian && k_abelian && is_prime_power(fs.kernel_index) {
            let fg = g.subgroup_as_group(f, "F")?;
            let center_f = Group::lift(f, fg.center());
            if center_f == *z {
                let omega_f = clique_number(&build_graph(&fg)?, budget)?.size;
                let expected = fs.kernel_index + omega_f;
                if check(expected).holds() {
                    matches.push(CaseMatch {
                        case: SchmidtCase::S3,
                        parameter: None,
                        witnesses: witnesses(&[("F", f), ("K", k)]),
                        quotient_iso: None,
                        omega: Some(check(expected)),
                        verified: false,
                    });
                }
            }
        }
    }

    // S4: G/Z(G) = S4 with the Klein subgroup lifting to a non-abelian V
    if g.order() / z.order() == 24 {
        let qm = g.quotient_map(z)?;
        let s4 = build_str("S4")?;
        if let Some(map) = qm.group.is_isomorphic(&s4)? {
            let klein = qm.group.derived_of(&qm.group.derived_subgroup());
            let v = qm.preimage(&klein);
            if klein.order() == 4 && !g.is_subgroup_abelian(&v) && check(13).holds() {
                matches.push(CaseMatch {
                    case: SchmidtCase::S4,
                    parameter: None,
                    witnesses: witnesses(&[("V", &v)]),
                    quotient_iso: Some(map),
                    omega: Some(check(13)),
                    verified: false,
                });
            }
        }
    }

    // S5: G = A x P, A abelian, P an AC p-group
    if report.nilpotent {
        let sylows: Vec<(u64, Subgroup)> = factorize(g.order() as u64)
            .into_iter()
            .map(|(p, _)| Ok((p, g.sylow(p)?.representative)))
            .collect::<Result<_, ClassifyError>>()?;
        let non_abelian: Vec<&(u64, Subgroup)> = sylows.iter().filter(|(_, s)| !g.is_subgroup_abelian(s)).collect();
        if let [(p, sp)] = non_abelian.as_slice() {
            let rest: Vec<usize> = sylows
                .iter()
                .filter(|(r, _)| r != p)
                .flat_map(|(_, s)| g.subgroup_generators(s))
                .collect();
            let a = g.closure(&rest);
            let p_group = g.subgroup_as_group(sp, "P")?;
            if g.is_subgroup_abelian(&a) && is_ac_group(&p_group) && g.internal_direct_product(&a, sp) {
                matches.push(CaseMatch {
                    case: SchmidtCase::S5,
                    parameter: Some(*p),
                    witnesses: witnesses(&[("A", &a), ("P", sp)]),
                    quotient_iso: None,
                    omega: None,
                    verified: false,
                });
            }
        }
    }

    for m in &mut matches {
        m.verified = verify_solvable_match(g, m)?;
    }
    finish(report_with(&mut report, matches)?, "solvable")
}

fn verify_solvable_match(g: &Group, m: &CaseMatch) -> Result<bool, ClassifyError> {
    let z = g.center();
    let w = |name: &str| m.witnesses.get(name).cloned();
    let omega_ok = m.omega.as_ref().is_none_or(OmegaCheck::holds);
    let ok = match m.case {
        SchmidtCase::S1 => {
            let Some(n) = w("N") else { return Ok(false) };
            let index = g.order() / n.order();
            !g.is_nilpotent()
                && g.closure(n.members()) == n
                && g.is_normal(&n)
                && g.is_subgroup_abelian(&n)
                && factorize(index as u64).len() == 1
                && factorize(index as u64)[0].1 == 1
        }
        SchmidtCase::S2 | SchmidtCase::S3 => {
            let (Some(f), Some(k)) = (w("F"), w("K")) else { return Ok(false) };
            let qm = g.quotient_map(z)?;
            let structure = super::FrobeniusStructure {
                kernel_index: qm.image(&f).order(),
                complement_index: qm.image(&k).order(),
                kernel: f.clone(),
                complement: k.clone(),
            };
            structure.verify(g)?
                && g.is_subgroup_abelian(&k)
                && (m.case == SchmidtCase::S3 || g.is_subgroup_abelian(&f))
        }
        SchmidtCase::S4 => {
            let Some(v) = w("V") else { return Ok(false) };
            let qm = g.quotient_map(z)?;
            let s4 = build_str("S4")?;
            let klein = qm.image(&v);
            m.quotient_iso.as_ref().is_some_and(|map| qm.group.verify_isomorphism(&s4, map))
                && klein.order() == 4
                && qm.group.is_normal(&klein)
                && klein.members().iter().all(|&x| qm.group.element_order(x) <= 2)
                && !g.is_subgroup_abelian(&v)
        }
        SchmidtCase::S5 => {
            let (Some(a), Some(p)) = (w("A"), w("P")) else { return Ok(false) };
            g.is_subgroup_abelian(&a)
                && prime_power(p.order() as u64).is_some()
                && is_ac_group(&g.subgroup_as_group(&p, "P")?)
                && g.internal_direct_product(&a, &p)
        }
        _ => false,
    };
    Ok(ok && omega_ok)
}

// ---------------------------------------------------------------------------
// non-solvable

/// Candidate `q` with `|G/Z(G)|` equal to `|PSL(2,q)|` or `|PGL(2,q)|`.
fn candidate_qs(quotient_order: usize) -> Vec<(u64, bool, bool)> {
    prime_powers_in(4, MAX_Q)
        .into_iter()
        .filter_map(|q| {
            let pgl = q * (q * q - 1);
            let psl = pgl / gcd(2, q - 1);
            let n = quotient_order as u64;
            (n == psl || n == pgl).then_some((q, n == psl, n == pgl))
        })
        .collect()
}

/// Matches the four non-solvable cases by isomorphism tests on `G/Z(G)`
/// and `G'`; the last two are recognized from orders alone.
pub fn schmidt_nonsolvable_case(g: &Group) -> Result<ClassificationReport, ClassifyError> {
    let mut report = require(g, false)?;
    let z = g.center();
    let qm = g.quotient_map(z)?;
    let derived = g.derived_subgroup();
    let derived_group = g.subgroup_as_group(&derived, "G'")?;
    let mut matches = Vec::new();
    for (q, is_psl, is_pgl) in candidate_qs(qm.group.order()) {
        let sl_order = (q * (q * q - 1)) as usize;
        if derived.order() == sl_order {
            let sl = sl2(q)?;
            if derived_group.is_isomorphic(&sl)?.is_none() {
                continue;
            }
            for (flag, case, target) in [(is_psl, SchmidtCase::Ns1, psl2 as fn(u64) -> _), (is_pgl, SchmidtCase::Ns2, pgl2)] {
                if !flag {
                    continue;
                }
                if let Some(map) = qm.group.is_isomorphic(&target(q)?)? {
                    matches.push(CaseMatch {
                        case,
                        parameter: Some(q),
                        witnesses: witnesses(&[("G'", &derived), ("Z", z)]),
                        quotient_iso: Some(map),
                        omega: None,
                        verified: false,
                    });
                }
            }
        }
        if q == 9 && derived.order() == 2160 {
            let (case, target) = if is_psl { (SchmidtCase::Ns3Star, psl2(9)?) } else { (SchmidtCase::Ns4Star, pgl2(9)?) };
            if let Some(map) = qm.group.is_isomorphic(&target)? {
                matches.push(CaseMatch {
                    case,
                    parameter: Some(9),
                    witnesses: witnesses(&[("G'", &derived), ("Z", z)]),
                    quotient_iso: Some(map),
                    omega: None,
                    verified: false,
                });
                report.numerics_only = true;
                report.notes.push(format!("{} detected by numerics only; the covering group is not constructed", case.name()));
            }
        }
    }
    for m in &mut matches {
        m.verified = verify_nonsolvable_match(g, &derived, m)?;
    }
    let cases: Vec<SchmidtCase> = matches.iter().map(|m| m.case).collect();
    if cases.contains(&SchmidtCase::Ns1) && cases.contains(&SchmidtCase::Ns2) {
        report.notes.push("PSL(2,q) and PGL(2,q) coincide for even q; both cases match".into());
        let perfect = derived.order() == g.order();
        let primary = if perfect { SchmidtCase::Ns1 } else { SchmidtCase::Ns2 };
        matches.sort_by_key(|m| m.case != primary);
    }
    finish(report_with(&mut report, matches)?, "non-solvable")
}

fn verify_nonsolvable_match(g: &Group, derived: &Subgroup, m: &CaseMatch) -> Result<bool, ClassifyError> {
    let Some(q) = m.parameter else { return Ok(false) };
    let qm = g.quotient_map(g.center())?;
    let target = match m.case {
        SchmidtCase::Ns1 | SchmidtCase::Ns3Star => psl2(q)?,
        SchmidtCase::Ns2 | SchmidtCase::Ns4Star => pgl2(q)?,
        _ => return Ok(false),
    };
    let map_ok = m.quotient_iso.as_ref().is_some_and(|map| qm.group.verify_isomorphism(&target, map));
    // G' is normal, contains every commutator of generators, and G/G' is abelian
    let gens = g.generators();
    let commutators_inside = gens.iter().all(|&a| gens.iter().all(|&b| derived.contains(g.commutator(a, b))));
    let abelian_quotient = g.quotient(derived)?.is_abelian();
    let order_ok = match m.case {
        SchmidtCase::Ns1 | SchmidtCase::Ns2 => derived.order() as u64 == q * (q * q - 1),
        _ => derived.order() == 2160,
    };
    Ok(map_ok && g.is_normal(derived) && commutators_inside && abelian_quotient && order_ok)
}

fn report_with(report: &mut ClassificationReport, matches: Vec<CaseMatch>) -> Result<ClassificationReport, ClassifyError> {
    report.schmidt_case = matches.first().map(|m| m.case);
    report.matches = matches;
    Ok(report.clone())
}

fn finish(report: ClassificationReport, which: &str) -> Result<ClassificationReport, ClassifyError> {
    if report.matches.is_empty() {
        return Err(ClassifyError::ClassificationFailure(format!(
            "no {which} case matches {} (order {}, center {})",
            report.group, report.order, report.center_order
        )));
    }
    if let Some(m) = report.matches.iter().find(|m| !m.verified) {
        return Err(ClassifyError::ClassificationFailure(format!(
            "witnesses for {} on {} failed re-verification",
            m.case.name(),
            report.group
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroups::gl2;

    const BUDGET: Duration = Duration::from_secs(60);

    #[test]
    fn small_solvable_cases() {
        let cases = |text: &str| schmidt_solvable_case(&build_str(text).unwrap(), BUDGET).unwrap().matched();
        assert_eq!(cases("S3"), vec![SchmidtCase::S1, SchmidtCase::S2]);
        assert_eq!(cases("A4"), vec![SchmidtCase::S1, SchmidtCase::S2]);
        assert_eq!(cases("D8"), vec![SchmidtCase::S5]);
        assert_eq!(cases("semidirect(C5,C4,x^2)"), vec![SchmidtCase::S2]);
        assert_eq!(cases("semidirect(Q8,C3,[a->x,x->ax])"), vec![SchmidtCase::S3]);
    }

    #[test]
    fn gl23_is_case_four() {
        let r = schmidt_solvable_case(&gl2(3).unwrap(), BUDGET).unwrap();
        assert_eq!(r.schmidt_case, Some(SchmidtCase::S4));
        assert_eq!(r.matches[0].omega.as_ref().unwrap().computed, 13);
    }

    #[test]
    fn preconditions() {
        assert!(schmidt_solvable_case(&build_str("S4").unwrap(), BUDGET).is_err());
        assert!(schmidt_nonsolvable_case(&build_str("S3").unwrap()).is_err());
        assert!(classify(&build_str("C4").unwrap(), BUDGET).is_err());
        let s4 = classify(&build_str("S4").unwrap(), BUDGET).unwrap();
        assert!(!s4.is_ac && s4.schmidt_case.is_none());
    }
}
