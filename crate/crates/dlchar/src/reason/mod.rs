//! Subsumption and equivalence for L(>=, and, top) under the empty ontology,
//! irredundant normal forms, bounded countermodel search, and concept
//! enumeration.

pub(crate) mod bounded;

pub use bounded::{shared_oracle, BoundedModelOracle};
pub(crate) use bounded::search_witnesses;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::interp::PointedInterpretation;
use crate::ontology::DLLiteOntology;
use crate::syntax::{
    concept_size, depth_nr_size, render_concept, ConceptExpr, FragmentSpec, Op, RoleExpr, Signature,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReasonError {
    #[error("operation requires the fragment {expected}, got `{concept}`")]
    FragmentViolation { expected: &'static str, concept: String },
    #[error("enumeration budget of {budget} candidates exceeded")]
    BudgetExceeded { budget: usize },
}

/// Verdict of a subsumption check backed by countermodel search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsumptionVerdict {
    Holds,
    FailsWithWitness(PointedInterpretation),
    Unknown,
}

impl SubsumptionVerdict {
    pub fn witness(&self) -> Option<&PointedInterpretation> {
        match self {
            SubsumptionVerdict::FailsWithWitness(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SubsumptionVerdict::Unknown)
    }
}

// --- normal form for L(>=, and, top) -----------------------------------------

/// Conjunctive normal view of an L(>=, and, top) concept: a set of atoms plus
/// number-restriction conjuncts, kept sorted for structural comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Nf {
    pub atoms: BTreeSet<String>,
    pub numeric: Vec<(u32, String, Nf)>,
}

impl Nf {
    pub fn top() -> Nf {
        Nf { atoms: BTreeSet::new(), numeric: Vec::new() }
    }

    fn normalize(&mut self) {
        self.numeric.sort();
        self.numeric.dedup();
    }
}

fn elq_violation(c: &ConceptExpr) -> Option<ReasonError> {
    let bad = |c: &ConceptExpr| ReasonError::FragmentViolation {
        expected: "L(geq,and,top)",
        concept: render_concept(c),
    };
    match c {
        ConceptExpr::Name(_) | ConceptExpr::Top => None,
        ConceptExpr::And(cs) => cs.iter().find_map(elq_violation),
        ConceptExpr::Exists(r, ch) | ConceptExpr::AtLeast(_, r, ch) => {
            if r.inverted {
                Some(bad(c))
            } else {
                elq_violation(ch)
            }
        }
        _ => Some(bad(c)),
    }
}

pub(crate) fn to_nf(c: &ConceptExpr) -> Result<Nf, ReasonError> {
    if let Some(err) = elq_violation(c) {
        return Err(err);
    }
    Ok(to_nf_unchecked(c))
}

fn to_nf_unchecked(c: &ConceptExpr) -> Nf {
    let mut nf = Nf::top();
    fn walk(c: &ConceptExpr, nf: &mut Nf) {
        match c {
            ConceptExpr::Top => {}
            ConceptExpr::Name(a) => {
                nf.atoms.insert(a.clone());
            }
            ConceptExpr::And(cs) => {
                for ch in cs {
                    walk(ch, nf);
                }
            }
            ConceptExpr::Exists(r, ch) => {
                nf.numeric.push((1, r.name.clone(), to_nf_unchecked(ch)));
            }
            ConceptExpr::AtLeast(k, r, ch) => {
                nf.numeric.push((*k, r.name.clone(), to_nf_unchecked(ch)));
            }
            _ => unreachable!("fragment checked"),
        }
    }
    walk(c, &mut nf);
    nf.normalize();
    nf
}

/// `|= C <= D` by decomposition: atom containment, and each conjunct of `D`
/// covered by some conjunct of `C` with a larger count and subsumed filler.
pub(crate) fn nf_subsumes(c: &Nf, d: &Nf) -> bool {
    if !d.atoms.is_subset(&c.atoms) {
        return false;
    }
    d.numeric.iter().all(|(kd, rd, fd)| {
        c.numeric.iter().any(|(kc, rc, fc)| kc >= kd && rc == rd && nf_subsumes(fc, fd))
    })
}

pub(crate) fn nf_to_concept(nf: &Nf) -> ConceptExpr {
    let mut parts: Vec<ConceptExpr> =
        nf.atoms.iter().map(|a| ConceptExpr::name(a.clone())).collect();
    for (k, role, filler) in &nf.numeric {
        let child = nf_to_concept(filler);
        let role = RoleExpr::new(role.clone());
        parts.push(if *k == 1 {
            ConceptExpr::exists(role, child)
        } else {
            ConceptExpr::at_least(*k, role, child)
        });
    }
    ConceptExpr::and(parts)
}

pub(crate) fn nf_irredundant(nf: &Nf) -> Nf {
    let mut numeric: Vec<(u32, String, Nf)> = nf
        .numeric
        .iter()
        .map(|(k, r, f)| (*k, r.clone(), nf_irredundant(f)))
        .collect();
    numeric.sort();
    numeric.dedup();
    // drop any conjunct that is subsumed by a distinct remaining conjunct
    let mut alive: Vec<bool> = vec![true; numeric.len()];
    for i in 0..numeric.len() {
        if !alive[i] {
            continue;
        }
        for j in 0..numeric.len() {
            if i == j || !alive[j] || !alive[i] {
                continue;
            }
            let (ki, ri, fi) = &numeric[i];
            let (kj, rj, fj) = &numeric[j];
            // conjunct i implies conjunct j: remove j
            if ri == rj && ki >= kj && nf_subsumes(fi, fj) {
                alive[j] = false;
            }
        }
    }
    Nf {
        atoms: nf.atoms.clone(),
        numeric: numeric
            .into_iter()
            .zip(alive)
            .filter_map(|(c, keep)| if keep { Some(c) } else { None })
            .collect(),
    }
}

// --- public operations --------------------------------------------------------

/// Decides `|= C <= D` for L(>=, and, top) concepts in polynomial time.
pub fn subsumes_empty(c: &ConceptExpr, d: &ConceptExpr) -> Result<bool, ReasonError> {
    Ok(nf_subsumes(&to_nf(c)?, &to_nf(d)?))
}

/// `C` and `D` subsume each other under the empty ontology.
pub fn equivalent_empty(c: &ConceptExpr, d: &ConceptExpr) -> Result<bool, ReasonError> {
    let cn = to_nf(c)?;
    let dn = to_nf(d)?;
    Ok(nf_subsumes(&cn, &dn) && nf_subsumes(&dn, &cn))
}

/// Rewrites an L(>=, and, top) concept into an equivalent irredundant one: no
/// conjunction keeps a conjunct subsumed by a distinct sibling.
pub fn irredundant(c: &ConceptExpr) -> Result<ConceptExpr, ReasonError> {
    Ok(nf_to_concept(&nf_irredundant(&to_nf(c)?)))
}

/// Searches pointed interpretations of increasing size `1..=max_size` for a
/// model of `c & !d` (satisfying `o` when given). Sound for refutation only:
/// `Unknown` means no countermodel within the bound, never a proof. Sizes
/// beyond six exceed the packed-structure representation and are clamped.
pub fn find_countermodel(
    c: &ConceptExpr,
    d: &ConceptExpr,
    o: Option<&DLLiteOntology>,
    max_size: usize,
) -> SubsumptionVerdict {
    let sig = search_signature(&[c, d], o);
    match search_witnesses(c, std::slice::from_ref(d), o, &sig, max_size).pop().flatten() {
        Some(w) => SubsumptionVerdict::FailsWithWitness(w),
        None => SubsumptionVerdict::Unknown,
    }
}

/// Constructs a countermodel of `c <= d` for L(>=, and, top) concepts, or
/// `None` when the subsumption holds. The model follows the decomposition
/// that justifies the subsumption check: the root carries exactly the atoms
/// of `c`, low-count same-role conjuncts share `k-1` bundled subtrees, and
/// covering conjuncts recurse into countermodels of their fillers, so the
/// chosen failing conjunct of `d` stays below its count.
pub fn elq_countermodel(
    c: &ConceptExpr,
    d: &ConceptExpr,
) -> Result<Option<PointedInterpretation>, ReasonError> {
    let cn = to_nf(c)?;
    let dn = to_nf(d)?;
    let mut builder = ModelBuilder::default();
    match build_separating(&cn, &dn, &mut builder) {
        Some(root) => {
            let pi = builder.finish(root);
            debug_assert!(pi.satisfies(c) && !pi.satisfies(d));
            Ok(Some(pi))
        }
        None => Ok(None),
    }
}

#[derive(Default)]
struct ModelBuilder {
    atoms: Vec<BTreeSet<String>>,
    edges: Vec<(usize, String, usize)>,
}

impl ModelBuilder {
    fn node(&mut self, atoms: BTreeSet<String>) -> usize {
        self.atoms.push(atoms);
        self.atoms.len() - 1
    }

    fn edge(&mut self, src: usize, role: &str, dst: usize) {
        self.edges.push((src, role.to_string(), dst));
    }

    /// Attaches a fresh minimal tree model of `nf` and returns its root.
    fn tree(&mut self, nf: &Nf) -> usize {
        let root = self.node(nf.atoms.clone());
        for (k, role, filler) in &nf.numeric {
            for _ in 0..*k {
                let child = self.tree(filler);
                self.edge(root, role, child);
            }
        }
        root
    }

    fn finish(&self, root: usize) -> PointedInterpretation {
        let ids: Vec<String> = (0..self.atoms.len()).map(|i| format!("w{i}")).collect();
        let mut interp =
            crate::interp::Interpretation::new(ids.clone()).expect("nonempty model");
        for (i, atoms) in self.atoms.iter().enumerate() {
            for a in atoms {
                interp.add_atom(a, &ids[i]).unwrap();
            }
        }
        for (s, role, t) in &self.edges {
            interp.add_edge(role, &ids[*s], &ids[*t]).unwrap();
        }
        PointedInterpretation::new(interp, ids[root].clone()).unwrap()
    }
}

/// Recursive countermodel construction; returns the root node of a model of
/// `c & !d` inside the builder, or `None` when `c <= d`.
fn build_separating(c: &Nf, d: &Nf, b: &mut ModelBuilder) -> Option<usize> {
    if nf_subsumes(c, d) {
        return None;
    }
    // a missing atom falsifies d at any exact-atom model of c
    if !d.atoms.is_subset(&c.atoms) {
        return Some(b.tree(c));
    }
    // otherwise some numeric conjunct of d is uncovered
    let (kd, rd, fd) = d
        .numeric
        .iter()
        .find(|(kd, rd, fd)| {
            !c.numeric.iter().any(|(kc, rc, fc)| kc >= kd && rc == rd && nf_subsumes(fc, fd))
        })
        .expect("some conjunct fails");

    let root = b.node(c.atoms.clone());
    // bundle all low-count same-role fillers into k-1 shared subtrees
    let low: Vec<&Nf> = c
        .numeric
        .iter()
        .filter(|(kc, rc, _)| rc == rd && kc < kd)
        .map(|(_, _, fc)| fc)
        .collect();
    if !low.is_empty() {
        let mut bundle = Nf::top();
        for f in &low {
            bundle.atoms.extend(f.atoms.iter().cloned());
            bundle.numeric.extend(f.numeric.iter().cloned());
        }
        bundle.numeric.sort();
        for _ in 0..kd.saturating_sub(1) {
            let child = b.tree(&bundle);
            b.edge(root, rd, child);
        }
    }
    for (kc, rc, fc) in &c.numeric {
        if rc != rd {
            for _ in 0..*kc {
                let child = b.tree(fc);
                b.edge(root, rc, child);
            }
        } else if kc >= kd {
            // filler must avoid fd; recursion succeeds by the failing choice
            for _ in 0..*kc {
                let child = build_separating(fc, fd, b).expect("uncovered conjunct");
                b.edge(root, rc, child);
            }
        }
    }
    Some(root)
}

/// The joint signature of some concepts plus an optional ontology.
pub fn search_signature(concepts: &[&ConceptExpr], o: Option<&DLLiteOntology>) -> Signature {
    let mut sig = o.map(|o| o.signature.clone()).unwrap_or_default();
    for c in concepts {
        sig.concepts.extend(c.concept_names());
        sig.roles.extend(c.role_names());
    }
    sig
}

/// Bounds for concept enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBounds {
    pub dp: u32,
    pub nr: u32,
    pub size: u64,
    pub budget: usize,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds { dp: 2, nr: 2, size: 14, budget: 100_000 }
    }
}

impl EnumBounds {
    pub fn new(dp: u32, nr: u32, size: u64) -> Self {
        EnumBounds { dp, nr, size, ..Default::default() }
    }
}

/// Result of `enumerate_concepts`; `exact_dedup` reports whether the list is
/// duplicate-free up to semantic equivalence (always true for subsets of
/// L(>=, and, top); other fragments may retain semantic duplicates).
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub concepts: Vec<ConceptExpr>,
    pub exact_dedup: bool,
}

/// Enumerates fragment concepts within the bounds: every concept of the
/// fragment within `(dp, nr, size)` is equivalent to some listed concept.
pub fn enumerate_concepts(
    f: &FragmentSpec,
    sig: &Signature,
    bounds: &EnumBounds,
) -> Result<Enumeration, ReasonError> {
    let elq_ops: BTreeSet<Op> = [Op::Exists, Op::Geq, Op::And, Op::Top].into_iter().collect();
    if f.operators.is_subset(&elq_ops) {
        let nfs = enumerate_elq(f, sig, bounds)?;
        let mut concepts: Vec<ConceptExpr> = nfs.iter().map(nf_to_concept).collect();
        sort_enumeration(&mut concepts);
        return Ok(Enumeration { concepts, exact_dedup: true });
    }

    let mut concepts = enumerate_syntactic(f, sig, bounds)?;
    sort_enumeration(&mut concepts);
    // best-effort semantic dedup on small lists via bounded countermodels
    let mut exact = false;
    if concepts.len() <= 250 {
        let mut kept: Vec<ConceptExpr> = Vec::new();
        for c in concepts {
            let dup = kept.iter().any(|k| {
                find_countermodel(k, &c, None, 3).is_unknown()
                    && find_countermodel(&c, k, None, 3).is_unknown()
            });
            if !dup {
                kept.push(c);
            }
        }
        concepts = kept;
        exact = false; // countermodel dedup may conflate only up to the cap
    }
    Ok(Enumeration { concepts, exact_dedup: exact })
}

/// Syntactic enumeration without any semantic deduplication; used by
/// verification passes that inspect every candidate anyway.
pub fn enumerate_syntactic(
    f: &FragmentSpec,
    sig: &Signature,
    bounds: &EnumBounds,
) -> Result<Vec<ConceptExpr>, ReasonError> {
    let elq_ops: BTreeSet<Op> = [Op::Exists, Op::Geq, Op::And, Op::Top].into_iter().collect();
    if f.operators.is_subset(&elq_ops) {
        let nfs = enumerate_elq(f, sig, bounds)?;
        return Ok(nfs.iter().map(nf_to_concept).collect());
    }

    let size_max = bounds.size as usize;
    let mut budget = bounds.budget;
    // pool[s] = concepts of rendered size exactly s, with (dp, nr) attached
    let mut pool: Vec<Vec<(ConceptExpr, u32, u32)>> = vec![Vec::new(); size_max + 1];
    let push = |pool: &mut Vec<Vec<(ConceptExpr, u32, u32)>>,
                    s: usize,
                    c: ConceptExpr,
                    dp: u32,
                    nr: u32,
                    budget: &mut usize|
     -> Result<(), ReasonError> {
        if *budget == 0 {
            return Err(ReasonError::BudgetExceeded { budget: bounds.budget });
        }
        *budget -= 1;
        pool[s].push((c, dp, nr));
        Ok(())
    };

    if size_max >= 1 {
        for a in &sig.concepts {
            push(&mut pool, 1, ConceptExpr::name(a.clone()), 0, 0, &mut budget)?;
        }
        if f.allows(Op::Top) {
            push(&mut pool, 1, ConceptExpr::Top, 0, 0, &mut budget)?;
        }
        if f.allows(Op::Bot) {
            push(&mut pool, 1, ConceptExpr::Bot, 0, 0, &mut budget)?;
        }
    }

    let roles: Vec<RoleExpr> = sig
        .roles
        .iter()
        .flat_map(|r| {
            let mut v = vec![RoleExpr::new(r.clone())];
            if f.allows(Op::Inv) {
                v.push(RoleExpr::inverse(r.clone()));
            }
            v
        })
        .collect();

    for s in 2..=size_max {
        let mut new: Vec<(ConceptExpr, u32, u32)> = Vec::new();
        // negation (double negation skipped)
        if f.allows(Op::Neg) {
            for (c, dp, nr) in &pool[s - 1] {
                if !matches!(c, ConceptExpr::Not(_)) {
                    new.push((ConceptExpr::not(c.clone()), *dp, *nr));
                }
            }
        }
        // quantifiers
        for role in &roles {
            let rsize = if role.inverted { 2 } else { 1 };
            if f.allows(Op::Exists) && s >= 1 + rsize + 1 {
                for (c, dp, nr) in &pool[s - 1 - rsize] {
                    if dp + 1 <= bounds.dp {
                        new.push((
                            ConceptExpr::exists(role.clone(), c.clone()),
                            dp + 1,
                            (*nr).max(1),
                        ));
                    }
                }
            }
            if f.allows(Op::Forall) && s >= 1 + rsize + 1 {
                for (c, dp, nr) in &pool[s - 1 - rsize] {
                    if dp + 1 <= bounds.dp {
                        new.push((ConceptExpr::forall(role.clone(), c.clone()), dp + 1, *nr));
                    }
                }
            }
            if f.allows(Op::Geq) {
                let k_lo = if f.allows(Op::Exists) { 2 } else { 1 };
                for k in k_lo..=bounds.nr {
                    let ksize = (32 - k.leading_zeros()).max(1) as usize;
                    if s < 1 + ksize + rsize + 1 {
                        continue;
                    }
                    for (c, dp, nr) in &pool[s - 1 - ksize - rsize] {
                        if dp + 1 <= bounds.dp {
                            new.push((
                                ConceptExpr::at_least(k, role.clone(), c.clone()),
                                dp + 1,
                                (*nr).max(k),
                            ));
                        }
                    }
                }
            }
        }
        // conjunctions and disjunctions as sorted duplicate-free combinations
        for (op, nested) in [(Op::And, false), (Op::Or, true)] {
            if !f.allows(op) {
                continue;
            }
            let flat: Vec<&(ConceptExpr, u32, u32)> = pool[1..s]
                .iter()
                .flatten()
                .filter(|(c, _, _)| match (op, c) {
                    (Op::And, ConceptExpr::And(_)) => false,
                    (Op::Or, ConceptExpr::Or(_)) => false,
                    _ => true,
                })
                .collect();
            let mut sorted: Vec<&(ConceptExpr, u32, u32)> = flat;
            sorted.sort_by(|a, b| a.0.cmp(&b.0));
            sorted.dedup_by(|a, b| a.0 == b.0);
            let mut acc: Vec<usize> = Vec::new();
            combine(&sorted, s, 0, 0, &mut acc, &mut |parts| {
                let cs: Vec<ConceptExpr> = parts.iter().map(|&i| sorted[i].0.clone()).collect();
                let dp = parts.iter().map(|&i| sorted[i].1).max().unwrap_or(0);
                let nr = parts.iter().map(|&i| sorted[i].2).max().unwrap_or(0);
                let c = if nested { ConceptExpr::Or(cs) } else { ConceptExpr::And(cs) };
                new.push((c, dp, nr));
            });
        }
        for (c, dp, nr) in new {
            push(&mut pool, s, c, dp, nr, &mut budget)?;
        }
    }

    Ok(pool.into_iter().flatten().map(|(c, _, _)| c).collect())
}

/// Enumerates index combinations of at least two parts whose sizes plus
/// separators total exactly `target`.
fn combine(
    sorted: &[&(ConceptExpr, u32, u32)],
    target: usize,
    from: usize,
    acc_size: usize,
    acc: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    for i in from..sorted.len() {
        let part_size = concept_size(&sorted[i].0) as usize;
        let sep = if acc.is_empty() { 0 } else { 1 };
        let new_size = acc_size + sep + part_size;
        if new_size > target {
            continue;
        }
        acc.push(i);
        if acc.len() >= 2 && new_size == target {
            emit(acc);
        }
        if new_size < target {
            combine(sorted, target, i + 1, new_size, acc, emit);
        }
        acc.pop();
    }
}

fn nf_size(nf: &Nf) -> u64 {
    concept_size(&nf_to_concept(nf))
}

fn enumerate_elq(
    f: &FragmentSpec,
    sig: &Signature,
    bounds: &EnumBounds,
) -> Result<Vec<Nf>, ReasonError> {
    let allow_top = f.allows(Op::Top);
    let allow_and = f.allows(Op::And);
    let has_quant = f.allows(Op::Exists) || f.allows(Op::Geq);
    let k_max = if f.allows(Op::Geq) { bounds.nr.max(1) } else { 1 };
    let mut budget = bounds.budget;

    // depth-0 layer: atom conjunctions
    let mut atom_sets: Vec<BTreeSet<String>> = vec![BTreeSet::new()];
    for a in &sig.concepts {
        let mut next = atom_sets.clone();
        for s in &atom_sets {
            let mut s2 = s.clone();
            s2.insert(a.clone());
            next.push(s2);
        }
        atom_sets = next;
    }

    let base: Vec<Nf> = atom_sets
        .into_iter()
        .map(|atoms| Nf { atoms, numeric: Vec::new() })
        .filter(|nf| (allow_top || !nf.atoms.is_empty()) && nf_size(nf) <= bounds.size)
        .filter(|nf| allow_and || nf.atoms.len() <= 1)
        .collect();

    let mut pool = base.clone();
    for _depth in 1..=bounds.dp {
        if !has_quant {
            break;
        }
        // candidate conjuncts over the previous pool, with their rendered sizes
        let mut conjuncts: Vec<(u32, String, Nf)> = Vec::new();
        for role in &sig.roles {
            for k in 1..=k_max {
                for child in &pool {
                    let conj = (k, role.clone(), child.clone());
                    if conjunct_size(&conj) <= bounds.size {
                        conjuncts.push(conj);
                    }
                }
            }
        }
        conjuncts.sort();
        conjuncts.dedup();
        let conjunct_sizes: Vec<u64> = conjuncts.iter().map(conjunct_size).collect();

        let mut next: Vec<Nf> = Vec::new();
        // atom seeds for deeper concepts: the empty seed is allowed even when
        // top is not licensed, since at least one conjunct follows
        let atom_choices: Vec<BTreeSet<String>> = {
            let mut sets: Vec<BTreeSet<String>> = vec![BTreeSet::new()];
            for a in &sig.concepts {
                let mut more = sets.clone();
                for s in &sets {
                    let mut s2 = s.clone();
                    s2.insert(a.clone());
                    more.push(s2);
                }
                sets = more;
            }
            sets.into_iter().filter(|s| allow_and || s.len() <= 1).collect()
        };
        for atoms in &atom_choices {
            let atoms_size: u64 = atoms.len() as u64 + atoms.len().saturating_sub(1) as u64;
            if atoms_size > bounds.size {
                continue;
            }
            let max_parts =
                if allow_and { usize::MAX } else { 1usize.saturating_sub(atoms.len()) };
            let mut chosen: Vec<usize> = Vec::new();
            antichains(
                &conjuncts,
                &conjunct_sizes,
                bounds.size,
                max_parts,
                0,
                atoms_size,
                !atoms.is_empty(),
                &mut chosen,
                &mut |chosen: &[usize]| -> Result<(), ReasonError> {
                    if chosen.is_empty() {
                        return Ok(()); // depth-0 forms already pooled
                    }
                    if budget == 0 {
                        return Err(ReasonError::BudgetExceeded { budget: bounds.budget });
                    }
                    budget -= 1;
                    next.push(Nf {
                        atoms: atoms.clone(),
                        numeric: chosen.iter().map(|&i| conjuncts[i].clone()).collect(),
                    });
                    Ok(())
                },
            )?;
        }
        pool.extend(next);
        pool.sort();
        pool.dedup();
    }

    pool.retain(|nf| {
        let c = nf_to_concept(nf);
        let (dp, nr, size) = depth_nr_size(&c);
        dp <= bounds.dp && nr <= bounds.nr.max(if f.allows(Op::Exists) { 1 } else { 0 }) && size <= bounds.size
    });
    Ok(pool)
}

fn conjunct_size(conj: &(u32, String, Nf)) -> u64 {
    let (k, _, filler) = conj;
    if *k == 1 {
        // rendered as an existential
        2 + nf_size(filler)
    } else {
        let digits = (32 - k.leading_zeros()).max(1) as u64;
        1 + digits + 1 + nf_size(filler)
    }
}

/// Enumerates antichains (under conjunct domination) of the candidate list,
/// pruned by total rendered size.
#[allow(clippy::too_many_arguments)]
fn antichains(
    conjuncts: &[(u32, String, Nf)],
    sizes: &[u64],
    size_max: u64,
    max_parts: usize,
    from: usize,
    acc_size: u64,
    acc_nonempty: bool,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> Result<(), ReasonError>,
) -> Result<(), ReasonError> {
    emit(chosen)?;
    if chosen.len() >= max_parts {
        return Ok(());
    }
    for i in from..conjuncts.len() {
        let sep = if acc_nonempty { 1 } else { 0 };
        let new_size = acc_size + sep + sizes[i];
        if new_size > size_max {
            continue;
        }
        let (ki, ri, fi) = &conjuncts[i];
        let comparable = chosen.iter().any(|&j| {
            let (kj, rj, fj) = &conjuncts[j];
            ri == rj && ((ki >= kj && nf_subsumes(fi, fj)) || (kj >= ki && nf_subsumes(fj, fi)))
        });
        if comparable {
            continue;
        }
        chosen.push(i);
        antichains(conjuncts, sizes, size_max, max_parts, i + 1, new_size, true, chosen, emit)?;
        chosen.pop();
    }
    Ok(())
}

fn sort_enumeration(concepts: &mut [ConceptExpr]) {
    concepts.sort_by_key(|c| (concept_size(c), render_concept(c)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::eval_mask;
    use crate::ontology::parse_ontology;
    use crate::syntax::parse_concept_open;

    fn c(text: &str) -> ConceptExpr {
        parse_concept_open(text).unwrap()
    }

    #[test]
    fn subsumption_declared_examples() {
        assert_eq!(subsumes_empty(&c(">=3 R.(A & B)"), &c(">=2 R.A")), Ok(true));
        assert_eq!(subsumes_empty(&c("exists R.A & exists R.B"), &c("exists R.(A & B)")), Ok(false));
        assert_eq!(subsumes_empty(&c("A"), &c("top")), Ok(true));
        assert!(subsumes_empty(&c("A | B"), &c("A")).is_err());
        assert!(subsumes_empty(&c("exists R-.A"), &c("A")).is_err());
    }

    #[test]
    fn equivalence_declared_examples() {
        assert_eq!(equivalent_empty(&c("exists R.A"), &c(">=1 R.A")), Ok(true));
        assert_eq!(equivalent_empty(&c("A & B"), &c("B & A")), Ok(true));
        assert_eq!(equivalent_empty(&c("exists R.A"), &c("exists R.top")), Ok(false));
    }

    #[test]
    fn irredundant_declared_examples() {
        let out = irredundant(&c("A & exists R.A & exists R.(A & B)")).unwrap();
        assert_eq!(render_concept(&out), "A & exists R.(A & B)");
        assert_eq!(render_concept(&irredundant(&c("top & A")).unwrap()), "A");
        let fixed = c(">=2 R.A");
        assert_eq!(irredundant(&fixed).unwrap(), fixed);
    }

    #[test]
    fn irredundant_preserves_equivalence_and_size() {
        let inputs = [
            "A & exists R.A & exists R.(A & B)",
            ">=2 R.(A & B) & exists R.A & A & A",
            "exists R.(exists R.A & A) & exists R.exists R.A",
            "top & top",
        ];
        for text in inputs {
            let orig = c(text);
            let red = irredundant(&orig).unwrap();
            assert_eq!(equivalent_empty(&orig, &red), Ok(true), "{text}");
            assert!(concept_size(&red) <= concept_size(&orig), "{text}");
            assert_eq!(irredundant(&red).unwrap(), red, "idempotence on {text}");
        }
    }

    #[test]
    fn countermodel_for_disjunction_weakening() {
        let lhs = c("exists R.A | exists R.B");
        let rhs = c("exists R.A");
        match find_countermodel(&lhs, &rhs, None, 3) {
            SubsumptionVerdict::FailsWithWitness(w) => {
                assert!(w.size() <= 3);
                assert!(w.satisfies(&lhs));
                assert!(!w.satisfies(&rhs));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn countermodel_reflexive_is_unknown() {
        assert!(find_countermodel(&c("A"), &c("A"), None, 5).is_unknown());
    }

    #[test]
    fn countermodel_under_loop_ontology() {
        let o = parse_ontology("A <= exists R\nexists R- <= A").unwrap();
        let lhs = c("A");
        let rhs = c("exists R-.A");
        match find_countermodel(&lhs, &rhs, Some(&o), 4) {
            SubsumptionVerdict::FailsWithWitness(w) => {
                assert!(crate::ontology::satisfies_ontology(&w.interp, &o));
                assert!(w.satisfies(&lhs));
                assert!(!w.satisfies(&rhs));
            }
            other => panic!("expected witness, got {other:?}"),
        }
        // the entailed direction has no countermodel
        let rhs2 = c("exists R.A");
        assert!(find_countermodel(&lhs, &rhs2, Some(&o), 4).is_unknown());
    }

    #[test]
    fn enumeration_el_depth_one() {
        let f = FragmentSpec::el();
        let sig = Signature::new(["A"], ["R"]);
        let e = enumerate_concepts(&f, &sig, &EnumBounds::new(1, 1, 14)).unwrap();
        assert!(e.exact_dedup);
        let rendered: Vec<String> = e.concepts.iter().map(render_concept).collect();
        assert_eq!(rendered.len(), 6, "{rendered:?}");
        for expect in
            ["top", "A", "exists R.top", "exists R.A", "A & exists R.top", "A & exists R.A"]
        {
            assert!(rendered.contains(&expect.to_string()), "missing {expect}");
        }
    }

    #[test]
    fn enumeration_depth_zero_and_roleless() {
        let f = FragmentSpec::new([Op::And, Op::Top]);
        let sig = Signature::new(["A"], Vec::<String>::new());
        let e = enumerate_concepts(&f, &sig, &EnumBounds::new(0, 0, 10)).unwrap();
        let rendered: Vec<String> = e.concepts.iter().map(render_concept).collect();
        assert_eq!(rendered, vec!["A".to_string(), "top".to_string()]);
    }

    #[test]
    fn enumeration_counting_no_atoms() {
        let f = FragmentSpec::elq();
        let sig = Signature::new(Vec::<String>::new(), ["R"]);
        let e = enumerate_concepts(&f, &sig, &EnumBounds::new(1, 2, 14)).unwrap();
        let rendered: Vec<String> = e.concepts.iter().map(render_concept).collect();
        assert_eq!(rendered.len(), 3, "{rendered:?}");
        for expect in ["top", "exists R.top", ">=2 R.top"] {
            assert!(rendered.contains(&expect.to_string()), "missing {expect}");
        }
    }

    #[test]
    fn enumeration_budget_guard() {
        let f = FragmentSpec::elq();
        let sig = Signature::new(["A", "B"], ["R"]);
        let mut bounds = EnumBounds::new(2, 2, 14);
        bounds.budget = 10;
        assert!(matches!(
            enumerate_concepts(&f, &sig, &bounds),
            Err(ReasonError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn subsumption_is_reflexive_and_transitive_on_enumeration() {
        let f = FragmentSpec::elq();
        let sig = Signature::new(["A"], ["R"]);
        let e = enumerate_concepts(&f, &sig, &EnumBounds::new(2, 2, 10)).unwrap();
        let nfs: Vec<Nf> = e.concepts.iter().map(|c| to_nf(c).unwrap()).collect();
        for x in &nfs {
            assert!(nf_subsumes(x, x));
        }
        for x in &nfs {
            for y in &nfs {
                for z in &nfs {
                    if nf_subsumes(x, y) && nf_subsumes(y, z) {
                        assert!(nf_subsumes(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_duplicate_free_up_to_equivalence() {
        let f = FragmentSpec::elq();
        let sig = Signature::new(["A", "B"], ["R"]);
        let e = enumerate_concepts(&f, &sig, &EnumBounds::new(2, 2, 10)).unwrap();
        for (i, x) in e.concepts.iter().enumerate() {
            for y in &e.concepts[i + 1..] {
                assert_eq!(
                    equivalent_empty(x, y),
                    Ok(false),
                    "{} and {} are equivalent",
                    render_concept(x),
                    render_concept(y)
                );
            }
        }
    }

    #[test]
    fn dp_sound_against_bounded_oracle() {
        // Soundness half at model cap 3: a DP-accepted subsumption can have no
        // countermodel of any size. The full cap-4 equivalence over the
        // complete dp <= 2 family runs in the acceptance suite.
        let f = FragmentSpec::elq();
        let sig = Signature::new(["A", "B"], ["R"]);
        let e = enumerate_concepts(&f, &sig, &EnumBounds::new(1, 2, 12)).unwrap();
        let oracle = BoundedModelOracle::build(&sig, 3, 1, 2);
        let bits: Vec<Vec<u64>> = e.concepts.iter().map(|x| oracle.truth_bits(x)).collect();
        let mut refuted_by_oracle = 0;
        for (i, x) in e.concepts.iter().enumerate() {
            for (j, y) in e.concepts.iter().enumerate() {
                let dp = subsumes_empty(x, y).unwrap();
                let brute = BoundedModelOracle::bits_subsume(&bits[i], &bits[j]);
                if dp {
                    assert!(brute, "DP accepted {} <= {} but cap-3 countermodel exists",
                        render_concept(x), render_concept(y));
                } else if !brute {
                    refuted_by_oracle += 1;
                }
            }
        }
        assert!(refuted_by_oracle > 50, "oracle refuted too few pairs");
    }

    #[test]
    fn oracle_witness_matches_plain_search() {
        let sig = Signature::new(["A", "B"], ["R"]);
        let oracle = BoundedModelOracle::build(&sig, 3, 2, 2);
        let lhs = c("exists R.A & exists R.B");
        let rhs = c("exists R.(A & B)");
        assert_eq!(subsumes_empty(&lhs, &rhs), Ok(false));
        let w = oracle.find_witness(&lhs, &rhs).expect("witness within 3");
        assert!(w.satisfies(&lhs) && !w.satisfies(&rhs));
        assert!(oracle.find_witness(&c("A & B"), &c("A")).is_none());

        // this pair needs four elements: two A-successors, two B-successors,
        // none satisfying both
        let lhs = c(">=2 R.A & >=2 R.B");
        let rhs = c("exists R.(A & B)");
        assert_eq!(subsumes_empty(&lhs, &rhs), Ok(false));
        assert!(find_countermodel(&lhs, &rhs, None, 3).is_unknown());
        match find_countermodel(&lhs, &rhs, None, 4) {
            SubsumptionVerdict::FailsWithWitness(w2) => {
                assert_eq!(w2.size(), 4);
                assert!(w2.satisfies(&lhs) && !w2.satisfies(&rhs));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn syntactic_enumeration_covers_disjunction_example() {
        let f = FragmentSpec::new([Op::Exists, Op::And, Op::Or]);
        let sig = Signature::new(["A", "B"], ["R"]);
        let list = enumerate_syntactic(&f, &sig, &EnumBounds::new(2, 1, 6)).unwrap();
        let target = c("exists R.(A | B)");
        assert!(list.contains(&target), "enumeration misses exists R.(A | B)");
        // no duplicates syntactically
        let mut sorted = list.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), list.len());
    }

    #[test]
    fn eval_small_agrees_with_interp_eval() {
        use super::bounded::{compile, eval_small, for_each_structure, Reach, SmallStructure};
        let concepts = vec!["A".to_string(), "B".to_string()];
        let roles = vec!["R".to_string()];
        let samples = [
            c("exists R.(A & B)"),
            c(">=2 R.A"),
            c("forall R.A"),
            c("!exists R.!A"),
            c("exists R-.A"),
            c("A | exists R.B"),
        ];
        let compiled: Vec<_> = samples.iter().map(|x| compile(x, &concepts, &roles)).collect();
        let mut count = 0;
        for_each_structure(2, 1, 3, Reach::Undirected, &mut |s: &SmallStructure| {
            count += 1;
            if count > 4000 {
                return false;
            }
            let interp = s.to_interpretation(&concepts, &roles);
            for (cc, orig) in compiled.iter().zip(&samples) {
                let mask = eval_small(cc, s);
                let slow = eval_mask(orig, &interp);
                for d in 0..s.n {
                    assert_eq!(mask & (1 << d) != 0, slow[d], "{orig} at node {d}");
                }
            }
            true
        });
        assert!(count > 100);
    }
}
