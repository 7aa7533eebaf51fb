//! The polynomial frontier construction for L(>=, and, top) and its
//! verification harness.

use serde::{Deserialize, Serialize};

use crate::reason::{enumerate_concepts, EnumBounds, ReasonError};
use crate::reason::{nf_irredundant, nf_subsumes, nf_to_concept, to_nf, Nf};
use crate::syntax::{concept_size, render_concept, role_depth, ConceptExpr, FragmentSpec, Signature};

/// A frontier for `base`: finitely many strict weakenings covering every
/// strict weakening up to subsumption.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frontier {
    pub base: ConceptExpr,
    pub members: Vec<ConceptExpr>,
}

impl Frontier {
    /// Sum of the rendered sizes of all members.
    pub fn total_size(&self) -> u64 {
        self.members.iter().map(concept_size).sum()
    }
}

/// The frontier size bound certified by the construction: `5 * dp(C) * |C|^3`
/// at positive depth, `|C|^2` for depth-zero concepts.
pub fn frontier_size_bound(c: &ConceptExpr) -> u64 {
    let dp = role_depth(c) as u64;
    let size = concept_size(c);
    if dp == 0 {
        size * size
    } else {
        5 * dp * size * size * size
    }
}

fn nf_frontier(nf: &Nf) -> Vec<Nf> {
    let mut members: Vec<Nf> = Vec::new();
    // (a) drop one atomic conjunct
    for a in &nf.atoms {
        let mut m = nf.clone();
        m.atoms.remove(a);
        members.push(m);
    }
    // (b) weaken one number restriction: lower the count by one and guard
    // with >=k R.D for every frontier member D of the filler
    for (i, (k, role, filler)) in nf.numeric.iter().enumerate() {
        let mut replacement: Vec<(u32, String, Nf)> = Vec::new();
        if *k > 1 {
            replacement.push((*k - 1, role.clone(), filler.clone()));
        }
        for d in nf_frontier(filler) {
            replacement.push((*k, role.clone(), d));
        }
        let mut m = nf.clone();
        m.numeric.remove(i);
        m.numeric.extend(replacement);
        m.numeric.sort();
        m.numeric.dedup();
        members.push(m);
    }
    members.into_iter().map(|m| nf_irredundant(&m)).collect()
}

/// Constructs a frontier for an L(>=, and, top) concept: member (a) drops one
/// atomic conjunct, member (b) replaces one conjunct `>=k R.C'` by
/// `>=(k-1) R.C'` conjoined with `>=k R.D` for every `D` in the frontier of
/// `C'`. The input is normalized to irredundant form first.
pub fn frontier(c: &ConceptExpr) -> Result<Frontier, ReasonError> {
    let nf = nf_irredundant(&to_nf(c)?);
    let mut members: Vec<ConceptExpr> = nf_frontier(&nf).iter().map(nf_to_concept).collect();
    members.sort_by_key(|m| (concept_size(m), render_concept(m)));
    members.dedup();
    Ok(Frontier { base: c.clone(), members })
}

/// One discrepancy found by `verify_frontier`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrontierViolation {
    /// member is not subsumed by the base
    NotWeaker { member: String },
    /// member is equivalent to the base
    NotStrict { member: String },
    /// an enumerated strict subsumer is covered by no member
    Uncovered { subsumer: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierReport {
    pub violations: Vec<FrontierViolation>,
    pub candidates_checked: usize,
}

impl FrontierReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both frontier conditions: every member strictly subsumes the base,
/// and every enumerated concept strictly subsuming the base within the bounds
/// is subsumed by some member.
pub fn verify_frontier(
    c: &ConceptExpr,
    fr: &Frontier,
    sig: &Signature,
    bounds: &EnumBounds,
) -> Result<FrontierReport, ReasonError> {
    let base = to_nf(c)?;
    let members: Vec<Nf> = fr.members.iter().map(to_nf).collect::<Result<_, _>>()?;
    let mut violations = Vec::new();

    for (m, mc) in members.iter().zip(&fr.members) {
        if !nf_subsumes(&base, m) {
            violations.push(FrontierViolation::NotWeaker { member: render_concept(mc) });
        } else if nf_subsumes(m, &base) {
            violations.push(FrontierViolation::NotStrict { member: render_concept(mc) });
        }
    }

    let enumeration = enumerate_concepts(&FragmentSpec::elq(), sig, bounds)?;
    let mut checked = 0;
    for d in &enumeration.concepts {
        let dn = to_nf(d)?;
        checked += 1;
        let strict = nf_subsumes(&base, &dn) && !nf_subsumes(&dn, &base);
        if strict && !members.iter().any(|m| nf_subsumes(m, &dn)) {
            violations.push(FrontierViolation::Uncovered { subsumer: render_concept(d) });
        }
    }
    Ok(FrontierReport { violations, candidates_checked: checked })
}
