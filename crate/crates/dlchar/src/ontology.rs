//! DL-Lite ontologies: parsing, named form, basic-concept reasoning,
//! satisfiability, tree and canonical models, and subsumption relative to an
//! ontology.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interp::{eval_mask, simulates, Interpretation, PointedInterpretation};
use crate::syntax::{ConceptExpr, RoleExpr, Signature};

/// A DL-Lite basic concept: a concept name, `exists R` or `exists R-`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasicConcept {
    Name(String),
    ExistsRole(RoleExpr),
}

impl BasicConcept {
    pub fn name(n: impl Into<String>) -> Self {
        BasicConcept::Name(n.into())
    }

    pub fn exists(r: impl Into<String>) -> Self {
        BasicConcept::ExistsRole(RoleExpr::new(r))
    }

    pub fn exists_inv(r: impl Into<String>) -> Self {
        BasicConcept::ExistsRole(RoleExpr::inverse(r))
    }

    pub fn render(&self) -> String {
        match self {
            BasicConcept::Name(n) => n.clone(),
            BasicConcept::ExistsRole(r) => format!("exists {r}"),
        }
    }

    /// As a concept expression (`exists R` reads as `exists R.top`).
    pub fn to_concept(&self) -> ConceptExpr {
        match self {
            BasicConcept::Name(n) => ConceptExpr::name(n.clone()),
            BasicConcept::ExistsRole(r) => ConceptExpr::exists(r.clone(), ConceptExpr::Top),
        }
    }
}

/// A DL-Lite concept inclusion `B <= C` with `C` a possibly negated basic
/// concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CI {
    pub lhs: BasicConcept,
    pub rhs: BasicConcept,
    pub rhs_negated: bool,
}

impl CI {
    pub fn pos(lhs: BasicConcept, rhs: BasicConcept) -> Self {
        CI { lhs, rhs, rhs_negated: false }
    }

    pub fn neg(lhs: BasicConcept, rhs: BasicConcept) -> Self {
        CI { lhs, rhs, rhs_negated: true }
    }

    pub fn render(&self) -> String {
        let neg = if self.rhs_negated { "!" } else { "" };
        format!("{} <= {}{}", self.lhs.render(), neg, self.rhs.render())
    }
}

/// A finite set of DL-Lite concept inclusions over a signature.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DLLiteOntology {
    pub cis: Vec<CI>,
    pub signature: Signature,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OntologyError {
    #[error("ontology parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("concept is unsatisfiable w.r.t. the ontology: {0}")]
    Unsatisfiable(String),
    #[error("operation requires the fragment {expected}, got `{concept}`")]
    FragmentViolation { expected: &'static str, concept: String },
}

impl DLLiteOntology {
    pub fn new(cis: Vec<CI>, signature: Signature) -> Self {
        let mut o = DLLiteOntology { cis, signature };
        o.extend_signature();
        o
    }

    fn extend_signature(&mut self) {
        for ci in &self.cis {
            for b in [&ci.lhs, &ci.rhs] {
                match b {
                    BasicConcept::Name(n) => {
                        self.signature.concepts.insert(n.clone());
                    }
                    BasicConcept::ExistsRole(r) => {
                        self.signature.roles.insert(r.name.clone());
                    }
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cis.is_empty()
    }

    /// True iff every CI has a concept name on at least one side.
    pub fn is_named_form(&self) -> bool {
        self.cis.iter().all(|ci| {
            matches!(ci.lhs, BasicConcept::Name(_)) || matches!(ci.rhs, BasicConcept::Name(_))
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for ci in &self.cis {
            out.push_str(&ci.render());
            out.push('\n');
        }
        out
    }
}

/// Parses the one-CI-per-line ontology format. `#` starts a comment.
pub fn parse_ontology(text: &str) -> Result<DLLiteOntology, OntologyError> {
    let mut cis = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| OntologyError::Parse {
            line: lineno + 1,
            message: message.to_string(),
        };
        let (lhs_text, rhs_text) =
            line.split_once("<=").ok_or_else(|| err("expected `<=`"))?;
        let lhs = parse_basic(lhs_text.trim()).map_err(|m| err(&m))?;
        let rhs_text = rhs_text.trim();
        let (rhs_negated, rhs_text) = match rhs_text.strip_prefix('!') {
            Some(rest) => (true, rest.trim()),
            None => (false, rhs_text),
        };
        let rhs = parse_basic(rhs_text).map_err(|m| err(&m))?;
        cis.push(CI { lhs, rhs, rhs_negated });
    }
    Ok(DLLiteOntology::new(cis, Signature::default()))
}

fn parse_basic(text: &str) -> Result<BasicConcept, String> {
    let is_name = |s: &str| {
        let mut chars = s.chars();
        chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    };
    if let Some(role) = text.strip_prefix("exists ") {
        let role = role.trim();
        if let Some(name) = role.strip_suffix('-') {
            if !is_name(name) {
                return Err(format!("bad role name `{name}`"));
            }
            Ok(BasicConcept::exists_inv(name))
        } else {
            if !is_name(role) {
                return Err(format!("bad role name `{role}`"));
            }
            Ok(BasicConcept::exists(role))
        }
    } else if is_name(text) {
        Ok(BasicConcept::name(text))
    } else {
        Err(format!("bad basic concept `{text}`"))
    }
}

/// Rewrites `o` into named form: each basic concept `exists S` occurring in a
/// CI gets a fresh name `A_ex_*` that replaces it, plus inclusions in both
/// directions. The result is a conservative extension over the returned
/// (extended) signature.
pub fn named_form(o: &DLLiteOntology) -> (DLLiteOntology, Signature) {
    let mut occurring: BTreeSet<RoleExpr> = BTreeSet::new();
    for ci in &o.cis {
        for b in [&ci.lhs, &ci.rhs] {
            if let BasicConcept::ExistsRole(r) = b {
                occurring.insert(r.clone());
            }
        }
    }

    let mut taken: BTreeSet<String> = o.signature.concepts.clone();
    let mut fresh_names: BTreeMap<RoleExpr, String> = BTreeMap::new();
    for r in &occurring {
        let base = if r.inverted {
            format!("A_ex_{}_inv", r.name)
        } else {
            format!("A_ex_{}", r.name)
        };
        let mut candidate = base.clone();
        let mut suffix = 0;
        while taken.contains(&candidate) {
            suffix += 1;
            candidate = format!("{base}_{suffix}");
        }
        taken.insert(candidate.clone());
        fresh_names.insert(r.clone(), candidate);
    }

    let rename = |b: &BasicConcept| match b {
        BasicConcept::ExistsRole(r) => BasicConcept::name(fresh_names[r].clone()),
        other => other.clone(),
    };
    let mut cis: Vec<CI> = o
        .cis
        .iter()
        .map(|ci| CI { lhs: rename(&ci.lhs), rhs: rename(&ci.rhs), rhs_negated: ci.rhs_negated })
        .collect();
    for (r, name) in &fresh_names {
        cis.push(CI::pos(BasicConcept::ExistsRole(r.clone()), BasicConcept::name(name.clone())));
        cis.push(CI::pos(BasicConcept::name(name.clone()), BasicConcept::ExistsRole(r.clone())));
    }
    let out = DLLiteOntology::new(cis, o.signature.clone());
    let sig = out.signature.clone();
    (out, sig)
}

// --- basic-concept reasoning -------------------------------------------------

/// Reachability/disjointness closure over the basic concepts of an ontology.
struct BasicGraph {
    basics: Vec<BasicConcept>,
    index: BTreeMap<BasicConcept, usize>,
    // reach[i] = basics entailed from i by chaining positive CIs
    reach: Vec<BTreeSet<usize>>,
    disjoint: BTreeSet<(usize, usize)>,
    unsat: Vec<bool>,
}

impl BasicGraph {
    fn build(o: &DLLiteOntology, extra: &[BasicConcept]) -> Self {
        let mut basics: BTreeSet<BasicConcept> = extra.iter().cloned().collect();
        for a in &o.signature.concepts {
            basics.insert(BasicConcept::name(a.clone()));
        }
        for r in &o.signature.roles {
            basics.insert(BasicConcept::exists(r.clone()));
            basics.insert(BasicConcept::exists_inv(r.clone()));
        }
        for ci in &o.cis {
            basics.insert(ci.lhs.clone());
            basics.insert(ci.rhs.clone());
        }
        // pair each exists with its inverse so unsat propagation can see both
        let roles: Vec<RoleExpr> = basics
            .iter()
            .filter_map(|b| match b {
                BasicConcept::ExistsRole(r) => Some(r.clone()),
                _ => None,
            })
            .collect();
        for r in roles {
            basics.insert(BasicConcept::ExistsRole(r.flipped()));
        }

        let basics: Vec<BasicConcept> = basics.into_iter().collect();
        let index: BTreeMap<BasicConcept, usize> =
            basics.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let n = basics.len();

        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut disjoint = BTreeSet::new();
        for ci in &o.cis {
            let l = index[&ci.lhs];
            let r = index[&ci.rhs];
            if ci.rhs_negated {
                disjoint.insert((l.min(r), l.max(r)));
            } else {
                succ[l].push(r);
            }
        }

        let mut reach: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut seen = BTreeSet::new();
            let mut stack = vec![i];
            while let Some(v) = stack.pop() {
                if seen.insert(v) {
                    stack.extend(succ[v].iter().copied());
                }
            }
            reach.push(seen);
        }

        let mut g = BasicGraph { basics, index, reach, disjoint, unsat: vec![false; n] };
        g.compute_unsat();
        g
    }

    fn is_disjoint_pair(&self, x: usize, y: usize) -> bool {
        self.disjoint.contains(&(x.min(y), x.max(y)))
    }

    fn compute_unsat(&mut self) {
        let n = self.basics.len();
        for i in 0..n {
            let r: Vec<usize> = self.reach[i].iter().copied().collect();
            'outer: for (ai, &a) in r.iter().enumerate() {
                for &b in &r[ai..] {
                    if self.is_disjoint_pair(a, b) {
                        self.unsat[i] = true;
                        break 'outer;
                    }
                }
            }
        }
        // propagate: exists R unsat iff exists R- unsat; then close upward
        loop {
            let mut changed = false;
            for i in 0..n {
                if self.unsat[i] {
                    continue;
                }
                if let BasicConcept::ExistsRole(r) = &self.basics[i] {
                    let j = self.index[&BasicConcept::ExistsRole(r.flipped())];
                    if self.unsat[j] {
                        self.unsat[i] = true;
                        changed = true;
                        continue;
                    }
                }
                if self.reach[i].iter().any(|&j| self.unsat[j]) {
                    self.unsat[i] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn idx(&self, b: &BasicConcept) -> Option<usize> {
        self.index.get(b).copied()
    }

    fn entails(&self, b1: &BasicConcept, b2: &BasicConcept) -> bool {
        match (self.idx(b1), self.idx(b2)) {
            (Some(i), Some(j)) => self.unsat[i] || self.reach[i].contains(&j),
            (Some(i), None) => self.unsat[i],
            (None, _) => false,
        }
    }

    fn entails_neg(&self, b1: &BasicConcept, b2: &BasicConcept) -> bool {
        let (Some(i), Some(j)) = (self.idx(b1), self.idx(b2)) else {
            return self.idx(b1).map(|i| self.unsat[i]).unwrap_or(false)
                || self.idx(b2).map(|j| self.unsat[j]).unwrap_or(false);
        };
        if self.unsat[i] || self.unsat[j] {
            return true;
        }
        for &x in &self.reach[i] {
            for &y in &self.reach[j] {
                if self.is_disjoint_pair(x, y) {
                    return true;
                }
            }
        }
        false
    }
}

/// Decides `O |= B1 <= B2` over basic concepts.
pub fn basic_entails(o: &DLLiteOntology, b1: &BasicConcept, b2: &BasicConcept) -> bool {
    BasicGraph::build(o, &[b1.clone(), b2.clone()]).entails(b1, b2)
}

/// Decides `O |= B1 <= !B2` over basic concepts.
pub fn basic_entails_neg(o: &DLLiteOntology, b1: &BasicConcept, b2: &BasicConcept) -> bool {
    BasicGraph::build(o, &[b1.clone(), b2.clone()]).entails_neg(b1, b2)
}

/// True iff the basic concept is satisfiable w.r.t. the ontology.
pub fn basic_satisfiable(o: &DLLiteOntology, b: &BasicConcept) -> bool {
    !basic_entails_neg(o, b, b)
}

// --- EL concepts under an ontology -------------------------------------------

fn el_violation(c: &ConceptExpr, allow_bot: bool) -> Option<OntologyError> {
    let ok = match c {
        ConceptExpr::Name(_) | ConceptExpr::Top => true,
        ConceptExpr::Bot => allow_bot,
        ConceptExpr::And(cs) => {
            return cs.iter().find_map(|ch| el_violation(ch, allow_bot));
        }
        ConceptExpr::Exists(r, ch) => {
            if r.inverted {
                false
            } else {
                return el_violation(ch, allow_bot);
            }
        }
        _ => false,
    };
    if ok {
        None
    } else {
        Some(OntologyError::FragmentViolation {
            expected: if allow_bot { "L(exists,and,top,bot)" } else { "L(exists,and,top)" },
            concept: crate::syntax::render_concept(c),
        })
    }
}

/// Splits an EL concept into root atoms and existential conjuncts.
fn el_root(c: &ConceptExpr) -> (BTreeSet<String>, Vec<(RoleExpr, &ConceptExpr)>, bool) {
    let mut atoms = BTreeSet::new();
    let mut exis = Vec::new();
    let mut has_bot = false;
    fn walk<'a>(
        c: &'a ConceptExpr,
        atoms: &mut BTreeSet<String>,
        exis: &mut Vec<(RoleExpr, &'a ConceptExpr)>,
        has_bot: &mut bool,
    ) {
        match c {
            ConceptExpr::Top => {}
            ConceptExpr::Bot => *has_bot = true,
            ConceptExpr::Name(n) => {
                atoms.insert(n.clone());
            }
            ConceptExpr::And(cs) => {
                for ch in cs {
                    walk(ch, atoms, exis, has_bot);
                }
            }
            ConceptExpr::Exists(r, ch) => exis.push((r.clone(), ch)),
            _ => unreachable!("checked by el_violation"),
        }
    }
    walk(c, &mut atoms, &mut exis, &mut has_bot);
    (atoms, exis, has_bot)
}

fn sat_rec(c: &ConceptExpr, extra: Option<&BasicConcept>, g: &BasicGraph) -> bool {
    let (atoms, exis, has_bot) = el_root(c);
    if has_bot {
        return false;
    }
    let mut root: Vec<BasicConcept> = atoms.into_iter().map(BasicConcept::Name).collect();
    for (r, _) in &exis {
        root.push(BasicConcept::ExistsRole(r.clone()));
    }
    if let Some(b) = extra {
        root.push(b.clone());
    }
    for x in &root {
        for y in &root {
            // an unlisted basic cannot clash with anything
            if g.idx(x).is_some() && g.idx(y).is_some() && g.entails_neg(x, y) {
                return false;
            }
        }
    }
    for (r, ch) in exis {
        let back = BasicConcept::ExistsRole(r.flipped());
        if !sat_rec(ch, Some(&back), g) {
            return false;
        }
    }
    true
}

/// True iff the `L(exists,and,top,bot)` concept `c` is satisfiable w.r.t. `o`.
pub fn satisfiable_wrt(c: &ConceptExpr, o: &DLLiteOntology) -> Result<bool, OntologyError> {
    if let Some(err) = el_violation(c, true) {
        return Err(err);
    }
    let extras: Vec<BasicConcept> =
        c.concept_names().into_iter().map(BasicConcept::Name).collect();
    let g = BasicGraph::build(o, &extras);
    Ok(sat_rec(c, None, &g))
}

// --- tree and canonical models -----------------------------------------------

struct TreeNode {
    atoms: BTreeSet<String>,
    children: Vec<(RoleExpr, usize)>,
    incoming: Option<RoleExpr>,
}

/// Flattens an EL concept into its tree of existential subterms.
fn concept_tree(c: &ConceptExpr) -> Vec<TreeNode> {
    let mut nodes = Vec::new();
    fn add(c: &ConceptExpr, incoming: Option<RoleExpr>, nodes: &mut Vec<TreeNode>) -> usize {
        let (atoms, exis, _) = el_root(c);
        let me = nodes.len();
        nodes.push(TreeNode { atoms, children: Vec::new(), incoming });
        for (r, ch) in exis {
            let child = add(ch, Some(r.clone()), nodes);
            nodes[me].children.push((r, child));
        }
        me
    }
    add(c, None, &mut nodes);
    nodes
}

/// Basic concepts that hold at a tree node by construction: its atoms, one
/// `exists R` per child edge, and the inverse of the incoming role.
fn node_basics(node: &TreeNode) -> Vec<BasicConcept> {
    let mut out: Vec<BasicConcept> =
        node.atoms.iter().cloned().map(BasicConcept::Name).collect();
    for (r, _) in &node.children {
        out.push(BasicConcept::ExistsRole(r.clone()));
    }
    if let Some(r) = &node.incoming {
        out.push(BasicConcept::ExistsRole(r.flipped()));
    }
    out
}

/// The tree-shaped interpretation of an EL concept, rooted at the concept.
pub fn tree_interpretation(c: &ConceptExpr) -> Result<PointedInterpretation, OntologyError> {
    if let Some(err) = el_violation(c, false) {
        return Err(err);
    }
    let nodes = concept_tree(c);
    let ids: Vec<String> = (0..nodes.len()).map(|i| format!("t{i}")).collect();
    let mut i = Interpretation::new(ids.clone()).expect("nonempty");
    for (n, node) in nodes.iter().enumerate() {
        for a in &node.atoms {
            i.add_atom(a, &ids[n]).unwrap();
        }
        for (r, child) in &node.children {
            i.add_edge(&r.name, &ids[n], &ids[*child]).unwrap();
        }
    }
    PointedInterpretation::new(i, ids[0].clone()).map_err(|_| unreachable!())
}

/// The canonical model of an EL concept `c` under a DL-Lite ontology `o`.
///
/// The domain is the concept tree of `c` plus one element per satisfiable
/// basic concept `exists S` over the ontology signature; extensions follow
/// the entailed basic concepts at each element.
pub fn canonical_model(
    c: &ConceptExpr,
    o: &DLLiteOntology,
) -> Result<PointedInterpretation, OntologyError> {
    if let Some(err) = el_violation(c, false) {
        return Err(err);
    }
    let extras: Vec<BasicConcept> =
        c.concept_names().into_iter().map(BasicConcept::Name).collect();
    let g = BasicGraph::build(o, &extras);
    if !sat_rec(c, None, &g) {
        return Err(OntologyError::Unsatisfiable(crate::syntax::render_concept(c)));
    }

    let nodes = concept_tree(c);
    let mut ids: Vec<String> = (0..nodes.len()).map(|i| format!("t{i}")).collect();

    // anonymous elements for satisfiable exists S over sig(O)
    let mut sig_elems: Vec<RoleExpr> = Vec::new();
    for r in &o.signature.roles {
        if basic_satisfiable_via(&g, &BasicConcept::exists(r.clone())) {
            sig_elems.push(RoleExpr::new(r.clone()));
            sig_elems.push(RoleExpr::inverse(r.clone()));
        }
    }
    let sig_offset = ids.len();
    for r in &sig_elems {
        ids.push(if r.inverted { format!("e_{}_inv", r.name) } else { format!("e_{}", r.name) });
    }

    // basic concepts holding at each element by construction
    let mut elem_basics: Vec<Vec<BasicConcept>> =
        nodes.iter().map(node_basics).collect();
    for r in &sig_elems {
        elem_basics.push(vec![BasicConcept::ExistsRole(r.clone())]);
    }

    let entails_basic = |elem: usize, target: &BasicConcept| -> bool {
        elem_basics[elem].iter().any(|b| b == target || g.entails(b, target))
    };

    let mut interp = Interpretation::new(ids.clone()).expect("nonempty");

    let mut all_names: BTreeSet<String> = o.signature.concepts.clone();
    all_names.extend(c.concept_names());
    for (e, _) in ids.iter().enumerate() {
        for a in &all_names {
            if entails_basic(e, &BasicConcept::name(a.clone())) {
                interp.add_atom(a, &ids[e]).unwrap();
            }
        }
    }

    let mut all_roles: BTreeSet<String> = o.signature.roles.clone();
    all_roles.extend(c.role_names());
    let sig_index = |r: &RoleExpr| -> Option<usize> {
        sig_elems.iter().position(|s| s == r).map(|p| sig_offset + p)
    };
    for role in &all_roles {
        // tree edges
        for (n, node) in nodes.iter().enumerate() {
            for (r, child) in &node.children {
                if &r.name == role && !r.inverted {
                    interp.add_edge(role, &ids[n], &ids[*child]).unwrap();
                }
            }
        }
        let fwd = BasicConcept::exists(role.clone());
        let bwd = BasicConcept::exists_inv(role.clone());
        // element entails exists R: edge to the anonymous exists R- element
        if let Some(target) = sig_index(&RoleExpr::inverse(role.clone())) {
            for e in 0..ids.len() {
                if entails_basic(e, &fwd) {
                    interp.add_edge(role, &ids[e], &ids[target]).unwrap();
                }
            }
        }
        // element entails exists R-: edge from the anonymous exists R element
        if let Some(source) = sig_index(&RoleExpr::new(role.clone())) {
            for e in 0..ids.len() {
                if entails_basic(e, &bwd) {
                    interp.add_edge(role, &ids[source], &ids[e]).unwrap();
                }
            }
        }
    }

    PointedInterpretation::new(interp, ids[0].clone()).map_err(|_| unreachable!())
}

fn basic_satisfiable_via(g: &BasicGraph, b: &BasicConcept) -> bool {
    !g.entails_neg(b, b)
}

/// Decides `O |= C <= D` for EL `c`; `d` is evaluated directly on the
/// canonical model and may use inverse roles.
pub fn el_subsumes_wrt(
    c: &ConceptExpr,
    d: &ConceptExpr,
    o: &DLLiteOntology,
) -> Result<bool, OntologyError> {
    let canon_c = canonical_model(c, o)?;
    Ok(canon_c.satisfies(d))
}

/// The simulation route for `O |= C <= D`: a simulation from the canonical
/// model of `d` into the canonical model of `c`. Requires EL `d`.
pub fn el_subsumes_wrt_sim(
    c: &ConceptExpr,
    d: &ConceptExpr,
    o: &DLLiteOntology,
) -> Result<bool, OntologyError> {
    let canon_c = canonical_model(c, o)?;
    let canon_d = canonical_model(d, o)?;
    Ok(simulates(&canon_d.interp, &canon_d.point, &canon_c.interp, &canon_c.point))
}

/// Equivalence relative to the ontology, via `el_subsumes_wrt` both ways.
pub fn el_equivalent_wrt(
    c: &ConceptExpr,
    d: &ConceptExpr,
    o: &DLLiteOntology,
) -> Result<bool, OntologyError> {
    Ok(el_subsumes_wrt(c, d, o)? && el_subsumes_wrt(d, c, o)?)
}

/// True iff every CI of `o` holds extensionally in `i`.
pub fn satisfies_ontology(i: &Interpretation, o: &DLLiteOntology) -> bool {
    for ci in &o.cis {
        let lhs = eval_mask(&ci.lhs.to_concept(), i);
        let rhs = eval_mask(&ci.rhs.to_concept(), i);
        for d in 0..i.len() {
            if lhs[d] {
                let ok = if ci.rhs_negated { !rhs[d] } else { rhs[d] };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// The ontology of Example 3: Cat and Dog are disjoint subconcepts of Animal.
pub fn catdog_ontology() -> DLLiteOntology {
    DLLiteOntology::new(
        vec![
            CI::pos(BasicConcept::name("Cat"), BasicConcept::name("Animal")),
            CI::pos(BasicConcept::name("Dog"), BasicConcept::name("Animal")),
            CI::neg(BasicConcept::name("Cat"), BasicConcept::name("Dog")),
        ],
        Signature::new(["Animal", "Cat", "Dog", "Red"], Vec::<String>::new()),
    )
}
