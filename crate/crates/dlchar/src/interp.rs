//! Finite interpretations, labeled examples, model checking, simulations and
//! role-height measures.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{ConceptExpr, RoleExpr, Signature};

/// A finite relational structure: a nonempty domain of named elements plus
/// extensions for concept and role names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InterpretationFile", into = "InterpretationFile")]
pub struct Interpretation {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    concepts: BTreeMap<String, HashSet<usize>>,
    // forward and backward adjacency per role, indexed by element
    roles: BTreeMap<String, RoleAdj>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct RoleAdj {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

/// Errors from building or evaluating over interpretations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterpError {
    #[error("domain must be nonempty")]
    EmptyDomain,
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("element `{0}` not in domain")]
    UnknownElement(String),
    #[error("unknown {kind} name `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

impl Interpretation {
    pub fn new(domain: Vec<String>) -> Result<Self, InterpError> {
        if domain.is_empty() {
            return Err(InterpError::EmptyDomain);
        }
        let mut index = HashMap::new();
        for (i, id) in domain.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(InterpError::DuplicateElement(id.clone()));
            }
        }
        Ok(Interpretation { ids: domain, index, concepts: BTreeMap::new(), roles: BTreeMap::new() })
    }

    /// Convenience constructor from string literals.
    pub fn build<'a>(
        domain: impl IntoIterator<Item = &'a str>,
        atoms: impl IntoIterator<Item = (&'a str, &'a str)>,
        edges: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Self {
        let mut i =
            Interpretation::new(domain.into_iter().map(String::from).collect()).expect("domain");
        for (a, d) in atoms {
            i.add_atom(a, d).expect("atom");
        }
        for (r, s, t) in edges {
            i.add_edge(r, s, t).expect("edge");
        }
        i
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn domain(&self) -> &[String] {
        &self.ids
    }

    pub fn element_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id_of(&self, idx: usize) -> &str {
        &self.ids[idx]
    }

    pub fn add_atom(&mut self, concept: &str, elem: &str) -> Result<(), InterpError> {
        let i = self
            .element_index(elem)
            .ok_or_else(|| InterpError::UnknownElement(elem.to_string()))?;
        self.concepts.entry(concept.to_string()).or_default().insert(i);
        Ok(())
    }

    pub fn add_edge(&mut self, role: &str, src: &str, dst: &str) -> Result<(), InterpError> {
        let s =
            self.element_index(src).ok_or_else(|| InterpError::UnknownElement(src.to_string()))?;
        let t =
            self.element_index(dst).ok_or_else(|| InterpError::UnknownElement(dst.to_string()))?;
        let n = self.len();
        let adj = self.roles.entry(role.to_string()).or_insert_with(|| RoleAdj {
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
        });
        if !adj.succ[s].contains(&t) {
            adj.succ[s].push(t);
            adj.pred[t].push(s);
        }
        Ok(())
    }

    pub fn has_atom(&self, concept: &str, elem_idx: usize) -> bool {
        self.concepts.get(concept).is_some_and(|s| s.contains(&elem_idx))
    }

    pub fn concept_names(&self) -> impl Iterator<Item = &String> {
        self.concepts.keys()
    }

    pub fn role_names(&self) -> impl Iterator<Item = &String> {
        self.roles.keys()
    }

    /// The signature actually used by the extensions.
    pub fn signature(&self) -> Signature {
        Signature {
            concepts: self.concepts.keys().cloned().collect(),
            roles: self.roles.keys().cloned().collect(),
        }
    }

    pub fn successors(&self, role: &RoleExpr, elem_idx: usize) -> &[usize] {
        static EMPTY: Vec<usize> = Vec::new();
        match self.roles.get(&role.name) {
            Some(adj) => {
                if role.inverted {
                    &adj.pred[elem_idx]
                } else {
                    &adj.succ[elem_idx]
                }
            }
            None => &EMPTY,
        }
    }

    pub fn role_pairs(&self, role: &str) -> Vec<(String, String)> {
        let mut out = Vec::new();
        if let Some(adj) = self.roles.get(role) {
            for (s, ts) in adj.succ.iter().enumerate() {
                for &t in ts {
                    out.push((self.ids[s].clone(), self.ids[t].clone()));
                }
            }
        }
        out
    }

    pub fn concept_extension(&self, concept: &str) -> Vec<String> {
        let mut out: Vec<String> = self
            .concepts
            .get(concept)
            .map(|s| s.iter().map(|&i| self.ids[i].clone()).collect())
            .unwrap_or_default();
        out.sort();
        out
    }

    /// The sub-interpretation induced by `keep` (indices into the domain).
    /// Returns `None` when `keep` is empty.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Option<Interpretation> {
        if keep.is_empty() {
            return None;
        }
        let ids: Vec<String> = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let mut out = Interpretation::new(ids).ok()?;
        for (name, ext) in &self.concepts {
            for &i in ext {
                if keep.contains(&i) {
                    out.add_atom(name, &self.ids[i]).ok()?;
                }
            }
        }
        for (role, adj) in &self.roles {
            for (s, ts) in adj.succ.iter().enumerate() {
                if !keep.contains(&s) {
                    continue;
                }
                for &t in ts {
                    if keep.contains(&t) {
                        out.add_edge(role, &self.ids[s], &self.ids[t]).ok()?;
                    }
                }
            }
        }
        Some(out)
    }

    /// True iff `self` is a sub-interpretation of `other` (matching on ids).
    pub fn is_sub_interpretation_of(&self, other: &Interpretation) -> bool {
        for id in &self.ids {
            if other.element_index(id).is_none() {
                return false;
            }
        }
        for (name, ext) in &self.concepts {
            for &i in ext {
                let j = match other.element_index(&self.ids[i]) {
                    Some(j) => j,
                    None => return false,
                };
                if !other.has_atom(name, j) {
                    return false;
                }
            }
        }
        for (role, adj) in &self.roles {
            for (s, ts) in adj.succ.iter().enumerate() {
                for &t in ts {
                    let os = other.element_index(&self.ids[s]);
                    let ot = other.element_index(&self.ids[t]);
                    match (os, ot) {
                        (Some(os), Some(ot)) => {
                            if !other
                                .successors(&RoleExpr::new(role.clone()), os)
                                .contains(&ot)
                            {
                                return false;
                            }
                        }
                        _ => return false,
                    }
                }
            }
        }
        true
    }
}

/// An interpretation with a distinguished element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedInterpretation {
    pub interp: Interpretation,
    pub point: String,
}

impl PointedInterpretation {
    pub fn new(interp: Interpretation, point: impl Into<String>) -> Result<Self, InterpError> {
        let point = point.into();
        if interp.element_index(&point).is_none() {
            return Err(InterpError::UnknownElement(point));
        }
        Ok(PointedInterpretation { interp, point })
    }

    pub fn point_index(&self) -> usize {
        self.interp.element_index(&self.point).expect("point in domain")
    }

    pub fn size(&self) -> usize {
        self.interp.len()
    }

    /// True iff the distinguished point satisfies `c`.
    pub fn satisfies(&self, c: &ConceptExpr) -> bool {
        eval_mask(c, &self.interp)[self.point_index()]
    }
}

/// Polarity of a labeled example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

/// A pointed interpretation labeled positively or negatively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledExample {
    pub pi: PointedInterpretation,
    pub polarity: Polarity,
}

/// Positively and negatively labeled pointed interpretations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleSet {
    pub positives: Vec<PointedInterpretation>,
    pub negatives: Vec<PointedInterpretation>,
}

impl ExampleSet {
    pub fn new(
        positives: Vec<PointedInterpretation>,
        negatives: Vec<PointedInterpretation>,
    ) -> Self {
        ExampleSet { positives, negatives }
    }

    pub fn len(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positives.is_empty() && self.negatives.is_empty()
    }

    pub fn iter_labeled(&self) -> impl Iterator<Item = (&PointedInterpretation, Polarity)> {
        self.positives
            .iter()
            .map(|pi| (pi, Polarity::Positive))
            .chain(self.negatives.iter().map(|pi| (pi, Polarity::Negative)))
    }

    /// Largest example domain size, 0 when empty.
    pub fn max_domain_size(&self) -> usize {
        self.iter_labeled().map(|(pi, _)| pi.size()).max().unwrap_or(0)
    }

    /// Sorts both lists by rendered form for deterministic output.
    pub fn canonicalize(&mut self) {
        let key = |pi: &PointedInterpretation| {
            (pi.size(), serde_json::to_string(pi).unwrap_or_default())
        };
        self.positives.sort_by_key(key);
        self.negatives.sort_by_key(key);
    }
}

/// Evaluates `c` bottom-up over all of `i`, returning one boolean per element.
pub fn eval_mask(c: &ConceptExpr, i: &Interpretation) -> Vec<bool> {
    let n = i.len();
    match c {
        ConceptExpr::Top => vec![true; n],
        ConceptExpr::Bot => vec![false; n],
        ConceptExpr::Name(a) => {
            let mut m = vec![false; n];
            if let Some(ext) = i.concepts.get(a) {
                for &d in ext {
                    m[d] = true;
                }
            }
            m
        }
        ConceptExpr::Not(ch) => {
            let mut m = eval_mask(ch, i);
            for b in m.iter_mut() {
                *b = !*b;
            }
            m
        }
        ConceptExpr::And(cs) => {
            let mut m = vec![true; n];
            for ch in cs {
                let cm = eval_mask(ch, i);
                for (b, cb) in m.iter_mut().zip(cm) {
                    *b = *b && cb;
                }
            }
            m
        }
        ConceptExpr::Or(cs) => {
            let mut m = vec![false; n];
            for ch in cs {
                let cm = eval_mask(ch, i);
                for (b, cb) in m.iter_mut().zip(cm) {
                    *b = *b || cb;
                }
            }
            m
        }
        ConceptExpr::Exists(r, ch) => {
            let cm = eval_mask(ch, i);
            (0..n).map(|d| i.successors(r, d).iter().any(|&e| cm[e])).collect()
        }
        ConceptExpr::Forall(r, ch) => {
            let cm = eval_mask(ch, i);
            (0..n).map(|d| i.successors(r, d).iter().all(|&e| cm[e])).collect()
        }
        ConceptExpr::AtLeast(k, r, ch) => {
            let cm = eval_mask(ch, i);
            (0..n)
                .map(|d| {
                    let mut count = 0u32;
                    for &e in i.successors(r, d) {
                        if cm[e] {
                            count += 1;
                            if count >= *k {
                                return true;
                            }
                        }
                    }
                    false
                })
                .collect()
        }
    }
}

/// The extension of `c` in `i`, as sorted element ids.
pub fn eval_concept(c: &ConceptExpr, i: &Interpretation) -> Vec<String> {
    let mask = eval_mask(c, i);
    let mut out: Vec<String> = mask
        .iter()
        .enumerate()
        .filter_map(|(d, &b)| if b { Some(i.ids[d].clone()) } else { None })
        .collect();
    out.sort();
    out
}

/// Outcome of a fit check, carrying the first violating example on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitResult {
    Fits,
    Violated { example: PointedInterpretation, polarity: Polarity },
}

impl FitResult {
    pub fn fits(&self) -> bool {
        matches!(self, FitResult::Fits)
    }
}

/// True iff `c` holds at every positive point and at no negative point.
pub fn fits(c: &ConceptExpr, e: &ExampleSet) -> FitResult {
    for (pi, pol) in e.iter_labeled() {
        let sat = pi.satisfies(c);
        let ok = match pol {
            Polarity::Positive => sat,
            Polarity::Negative => !sat,
        };
        if !ok {
            return FitResult::Violated { example: pi.clone(), polarity: pol };
        }
    }
    FitResult::Fits
}

/// The largest simulation from `i1` into `i2`: atom preservation plus forward
/// role matching, computed by fixpoint refinement from the full relation.
pub fn greatest_simulation(i1: &Interpretation, i2: &Interpretation) -> Vec<(String, String)> {
    let n1 = i1.len();
    let n2 = i2.len();
    let mut rel = vec![vec![true; n2]; n1];

    // atom condition
    for (name, ext) in &i1.concepts {
        for &d in ext {
            for e in 0..n2 {
                if rel[d][e] && !i2.has_atom(name, e) {
                    rel[d][e] = false;
                }
            }
        }
    }

    let role_names: BTreeSet<String> =
        i1.roles.keys().chain(i2.roles.keys()).cloned().collect();
    let mut changed = true;
    while changed {
        changed = false;
        for (d, row) in rel.clone().iter().enumerate() {
            for (e, &alive) in row.iter().enumerate() {
                if !alive {
                    continue;
                }
                'cond: for rn in &role_names {
                    let r = RoleExpr::new(rn.clone());
                    for &dsucc in i1.successors(&r, d) {
                        let ok = i2.successors(&r, e).iter().any(|&esucc| rel[dsucc][esucc]);
                        if !ok {
                            rel[d][e] = false;
                            changed = true;
                            break 'cond;
                        }
                    }
                }
            }
        }
    }

    let mut out = Vec::new();
    for (d, row) in rel.iter().enumerate() {
        for (e, &alive) in row.iter().enumerate() {
            if alive {
                out.push((i1.ids[d].clone(), i2.ids[e].clone()));
            }
        }
    }
    out
}

/// True iff `(i1, d1)` simulates into `(i2, d2)`.
pub fn simulates(i1: &Interpretation, d1: &str, i2: &Interpretation, d2: &str) -> bool {
    greatest_simulation(i1, i2).contains(&(d1.to_string(), d2.to_string()))
}

/// Length of the longest outgoing path along a role, or `Infinite` when a
/// cycle is reachable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl Height {
    pub fn as_finite(&self) -> Option<u32> {
        match self {
            Height::Finite(n) => Some(*n),
            Height::Infinite => None,
        }
    }
}

/// The height of `pi` with respect to role `r`: the longest outgoing `r`-path
/// from the point, infinite iff an `r`-cycle is reachable.
pub fn height_wrt_role(pi: &PointedInterpretation, r: &str) -> Height {
    let i = &pi.interp;
    let role = RoleExpr::new(r.to_string());
    let n = i.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut best = vec![0u32; n];
    fn dfs(
        v: usize,
        i: &Interpretation,
        role: &RoleExpr,
        state: &mut [u8],
        best: &mut [u32],
    ) -> Option<u32> {
        if state[v] == 1 {
            return None; // cycle
        }
        if state[v] == 2 {
            return Some(best[v]);
        }
        state[v] = 1;
        let mut h = 0;
        for &w in i.successors(role, v) {
            match dfs(w, i, role, state, best) {
                None => {
                    state[v] = 2;
                    return None;
                }
                Some(hw) => h = h.max(hw + 1),
            }
        }
        state[v] = 2;
        best[v] = h;
        Some(h)
    }
    match dfs(pi.point_index(), i, &role, &mut state, &mut best) {
        Some(h) => Height::Finite(h),
        None => Height::Infinite,
    }
}

/// Selects a small sub-interpretation that still satisfies `c` at the point.
///
/// For `c` in L(>=, and, top) this follows the recursive successor selection
/// whose output has at most `|c|^|c|` elements, preferring successors with
/// small recursive selections, followed by a greedy element-removal pass that
/// preserves satisfaction.
pub fn shrink_positive_example(
    c: &ConceptExpr,
    pi: &PointedInterpretation,
) -> PointedInterpretation {
    let i = &pi.interp;
    let root = pi.point_index();
    if !eval_mask(c, i)[root] {
        return pi.clone();
    }

    let mut keep = BTreeSet::new();
    select(c, i, root, &mut keep);
    keep.insert(root);

    let mut current = i.induced(&keep).expect("nonempty selection");
    // greedy removal pass
    loop {
        let mut removed = false;
        let ids: Vec<String> = current.domain().to_vec();
        for id in ids {
            if id == pi.point {
                continue;
            }
            let keep2: BTreeSet<usize> = (0..current.len())
                .filter(|&j| current.id_of(j) != id)
                .collect();
            if let Some(candidate) = current.induced(&keep2) {
                let p = candidate.element_index(&pi.point).expect("point kept");
                if eval_mask(c, &candidate)[p] {
                    current = candidate;
                    removed = true;
                }
            }
        }
        if !removed {
            break;
        }
    }
    PointedInterpretation::new(current, pi.point.clone()).expect("point kept")
}

fn select(c: &ConceptExpr, i: &Interpretation, d: usize, keep: &mut BTreeSet<usize>) {
    keep.insert(d);
    match c {
        ConceptExpr::And(cs) => {
            for ch in cs {
                select(ch, i, d, keep);
            }
        }
        ConceptExpr::Exists(r, ch) => select_successors(1, r, ch, i, d, keep),
        ConceptExpr::AtLeast(k, r, ch) => select_successors(*k, r, ch, i, d, keep),
        _ => {}
    }
}

fn select_successors(
    k: u32,
    r: &RoleExpr,
    ch: &ConceptExpr,
    i: &Interpretation,
    d: usize,
    keep: &mut BTreeSet<usize>,
) {
    let cm = eval_mask(ch, i);
    let mut witnesses: Vec<(usize, BTreeSet<usize>)> = i
        .successors(r, d)
        .iter()
        .filter(|&&e| cm[e])
        .map(|&e| {
            let mut sub = BTreeSet::new();
            select(ch, i, e, &mut sub);
            (e, sub)
        })
        .collect();
    witnesses.sort_by_key(|(_, sub)| sub.len());
    for (_, sub) in witnesses.into_iter().take(k as usize) {
        keep.extend(sub);
    }
}

// --- file formats -----------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct InterpretationFile {
    domain: Vec<String>,
    #[serde(default)]
    concepts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    roles: BTreeMap<String, Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<String>,
}

impl TryFrom<InterpretationFile> for Interpretation {
    type Error = InterpError;

    fn try_from(f: InterpretationFile) -> Result<Self, InterpError> {
        let mut i = Interpretation::new(f.domain)?;
        for (name, elems) in f.concepts {
            for e in elems {
                i.add_atom(&name, &e)?;
            }
        }
        for (role, pairs) in f.roles {
            for (s, t) in pairs {
                i.add_edge(&role, &s, &t)?;
            }
        }
        Ok(i)
    }
}

impl From<Interpretation> for InterpretationFile {
    fn from(i: Interpretation) -> Self {
        let concepts = i
            .concepts
            .keys()
            .map(|name| (name.clone(), i.concept_extension(name)))
            .collect();
        let roles = i
            .roles
            .keys()
            .map(|role| {
                let mut pairs = i.role_pairs(role);
                pairs.sort();
                (role.clone(), pairs)
            })
            .collect();
        InterpretationFile { domain: i.ids.clone(), concepts, roles, point: None }
    }
}

#[derive(Serialize, Deserialize)]
struct PointedFile {
    domain: Vec<String>,
    #[serde(default)]
    concepts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    roles: BTreeMap<String, Vec<(String, String)>>,
    point: String,
}

#[derive(Serialize, Deserialize)]
struct ExampleSetFile {
    signature: Signature,
    #[serde(default)]
    positive: Vec<PointedFile>,
    #[serde(default)]
    negative: Vec<PointedFile>,
}

/// Parses the pointed-interpretation JSON format (requires a `point` field).
pub fn pointed_from_json(text: &str) -> Result<PointedInterpretation, String> {
    let f: PointedFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    pointed_from_file(f).map_err(|e| e.to_string())
}

fn pointed_from_file(f: PointedFile) -> Result<PointedInterpretation, InterpError> {
    let interp = Interpretation::try_from(InterpretationFile {
        domain: f.domain,
        concepts: f.concepts,
        roles: f.roles,
        point: None,
    })?;
    PointedInterpretation::new(interp, f.point)
}

fn pointed_to_file(pi: &PointedInterpretation) -> PointedFile {
    let f = InterpretationFile::from(pi.interp.clone());
    PointedFile { domain: f.domain, concepts: f.concepts, roles: f.roles, point: pi.point.clone() }
}

/// Parses the example-set JSON format; returns the declared signature too.
pub fn example_set_from_json(text: &str) -> Result<(ExampleSet, Signature), String> {
    let f: ExampleSetFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut set = ExampleSet::default();
    for p in f.positive {
        set.positives.push(pointed_from_file(p).map_err(|e| e.to_string())?);
    }
    for p in f.negative {
        set.negatives.push(pointed_from_file(p).map_err(|e| e.to_string())?);
    }
    Ok((set, f.signature))
}

/// Serializes an example set together with its signature.
pub fn example_set_to_json(e: &ExampleSet, sig: &Signature) -> String {
    let f = ExampleSetFile {
        signature: sig.clone(),
        positive: e.positives.iter().map(pointed_to_file).collect(),
        negative: e.negatives.iter().map(pointed_to_file).collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

/// The interpretation of Example 1: three vehicles and their contents.
pub fn ebike_interpretation() -> Interpretation {
    Interpretation::build(
        ["soltera2", "li360Wh", "px10", "b12", "teslaY", "li81kWh"],
        [
            ("Bicycle", "soltera2"),
            ("Battery", "li360Wh"),
            ("Bicycle", "px10"),
            ("Basket", "b12"),
            ("Car", "teslaY"),
            ("Battery", "li81kWh"),
        ],
        [
            ("Contains", "soltera2", "li360Wh"),
            ("Contains", "px10", "b12"),
            ("Contains", "teslaY", "li81kWh"),
        ],
    )
}

/// The five-element interpretation of Example 2.
pub fn example_two_interpretation() -> Interpretation {
    Interpretation::build(
        ["d1", "d2", "d3", "d4", "d5"],
        [("A", "d2"), ("A", "d3"), ("A", "d5")],
        [("R", "d1", "d2"), ("R", "d3", "d4"), ("R", "d4", "d5"), ("R", "d5", "d5")],
    )
}

/// The eight-element cat/dog interpretation of Example 3.
pub fn catdog_interpretation() -> Interpretation {
    Interpretation::build(
        ["a", "a2", "b", "b2", "c", "c2", "d", "d2"],
        [
            ("Animal", "a"),
            ("Animal", "a2"),
            ("Animal", "c"),
            ("Animal", "c2"),
            ("Animal", "d"),
            ("Animal", "d2"),
            ("Cat", "c"),
            ("Cat", "c2"),
            ("Dog", "d"),
            ("Dog", "d2"),
            ("Red", "a"),
            ("Red", "b"),
            ("Red", "c"),
            ("Red", "d"),
        ],
        [],
    )
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// Naive recursive evaluator used as an independent oracle for
    /// `eval_mask`.
    pub fn naive_holds(c: &ConceptExpr, i: &Interpretation, d: usize) -> bool {
        match c {
            ConceptExpr::Top => true,
            ConceptExpr::Bot => false,
            ConceptExpr::Name(a) => i.has_atom(a, d),
            ConceptExpr::Not(ch) => !naive_holds(ch, i, d),
            ConceptExpr::And(cs) => cs.iter().all(|ch| naive_holds(ch, i, d)),
            ConceptExpr::Or(cs) => cs.iter().any(|ch| naive_holds(ch, i, d)),
            ConceptExpr::Exists(r, ch) => {
                i.successors(r, d).iter().any(|&e| naive_holds(ch, i, e))
            }
            ConceptExpr::Forall(r, ch) => {
                i.successors(r, d).iter().all(|&e| naive_holds(ch, i, e))
            }
            ConceptExpr::AtLeast(k, r, ch) => {
                let count =
                    i.successors(r, d).iter().filter(|&&e| naive_holds(ch, i, e)).count();
                count as u32 >= *k
            }
        }
    }

    /// Exhaustive check that a relation is a simulation.
    pub fn is_simulation(
        rel: &[(usize, usize)],
        i1: &Interpretation,
        i2: &Interpretation,
    ) -> bool {
        for &(d, e) in rel {
            for name in i1.concepts.keys() {
                if i1.has_atom(name, d) && !i2.has_atom(name, e) {
                    return false;
                }
            }
            for role in i1.roles.keys() {
                let r = RoleExpr::new(role.clone());
                for &ds in i1.successors(&r, d) {
                    let ok = i2
                        .successors(&r, e)
                        .iter()
                        .any(|&es| rel.contains(&(ds, es)));
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
}
