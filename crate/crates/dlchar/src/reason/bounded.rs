//! Bounded enumeration of small pointed interpretations and a truth-table
//! oracle over them, used for countermodel search and equivalence checks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::interp::{Interpretation, PointedInterpretation};
use crate::ontology::{BasicConcept, DLLiteOntology};
use crate::syntax::{ConceptExpr, Signature};

pub(crate) const MAX_NODES: usize = 6;

/// A structure with at most `MAX_NODES` elements, encoded as bitmasks.
#[derive(Debug, Clone)]
pub(crate) struct SmallStructure {
    pub n: usize,
    /// atom extension mask per concept name (index into the signature order)
    pub atoms: Vec<u8>,
    /// successor mask per node, per role name
    pub adj: Vec<[u8; MAX_NODES]>,
}

impl SmallStructure {
    fn transpose(&self, role: usize) -> [u8; MAX_NODES] {
        let mut t = [0u8; MAX_NODES];
        for s in 0..self.n {
            let row = self.adj[role][s];
            for d in 0..self.n {
                if row & (1 << d) != 0 {
                    t[d] |= 1 << s;
                }
            }
        }
        t
    }

    pub fn to_interpretation(&self, concepts: &[String], roles: &[String]) -> Interpretation {
        let ids: Vec<String> = (0..self.n).map(|i| format!("m{i}")).collect();
        let mut out = Interpretation::new(ids.clone()).expect("nonempty");
        for (ci, name) in concepts.iter().enumerate() {
            for d in 0..self.n {
                if self.atoms[ci] & (1 << d) != 0 {
                    out.add_atom(name, &ids[d]).unwrap();
                }
            }
        }
        for (ri, role) in roles.iter().enumerate() {
            for s in 0..self.n {
                for d in 0..self.n {
                    if self.adj[ri][s] & (1 << d) != 0 {
                        out.add_edge(role, &ids[s], &ids[d]).unwrap();
                    }
                }
            }
        }
        out
    }
}

/// A concept compiled to indices over a fixed signature order.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Top,
    Bot,
    Atom(usize),
    Missing, // name outside the search signature: empty extension
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    AtLeast(u32, usize, bool, Box<Compiled>),
    Forall(usize, bool, Box<Compiled>),
}

pub(crate) fn compile(c: &ConceptExpr, concepts: &[String], roles: &[String]) -> Compiled {
    let role_idx = |name: &str| roles.iter().position(|r| r == name);
    match c {
        ConceptExpr::Top => Compiled::Top,
        ConceptExpr::Bot => Compiled::Bot,
        ConceptExpr::Name(a) => match concepts.iter().position(|x| x == a) {
            Some(i) => Compiled::Atom(i),
            None => Compiled::Missing,
        },
        ConceptExpr::Not(ch) => Compiled::Not(Box::new(compile(ch, concepts, roles))),
        ConceptExpr::And(cs) => {
            Compiled::And(cs.iter().map(|ch| compile(ch, concepts, roles)).collect())
        }
        ConceptExpr::Or(cs) => {
            Compiled::Or(cs.iter().map(|ch| compile(ch, concepts, roles)).collect())
        }
        ConceptExpr::Exists(r, ch) => match role_idx(&r.name) {
            Some(i) => Compiled::AtLeast(1, i, r.inverted, Box::new(compile(ch, concepts, roles))),
            None => Compiled::Bot,
        },
        ConceptExpr::AtLeast(k, r, ch) => match role_idx(&r.name) {
            Some(i) => Compiled::AtLeast(*k, i, r.inverted, Box::new(compile(ch, concepts, roles))),
            None => Compiled::Bot,
        },
        ConceptExpr::Forall(r, ch) => match role_idx(&r.name) {
            Some(i) => Compiled::Forall(i, r.inverted, Box::new(compile(ch, concepts, roles))),
            None => Compiled::Top,
        },
    }
}

/// Evaluates a compiled concept over a small structure, returning the
/// extension as a node mask.
pub(crate) fn eval_small(c: &Compiled, s: &SmallStructure) -> u8 {
    let full: u8 = ((1u16 << s.n) - 1) as u8;
    match c {
        Compiled::Top => full,
        Compiled::Bot => 0,
        Compiled::Missing => 0,
        Compiled::Atom(i) => s.atoms[*i],
        Compiled::Not(ch) => !eval_small(ch, s) & full,
        Compiled::And(cs) => cs.iter().fold(full, |m, ch| m & eval_small(ch, s)),
        Compiled::Or(cs) => cs.iter().fold(0, |m, ch| m | eval_small(ch, s)),
        Compiled::AtLeast(k, role, inv, ch) => {
            let cm = eval_small(ch, s);
            let rows = if *inv { s.transpose(*role) } else { s.adj[*role] };
            let mut out = 0u8;
            for d in 0..s.n {
                if (rows[d] & cm).count_ones() >= *k {
                    out |= 1 << d;
                }
            }
            out
        }
        Compiled::Forall(role, inv, ch) => {
            let cm = eval_small(ch, s);
            let rows = if *inv { s.transpose(*role) } else { s.adj[*role] };
            let mut out = 0u8;
            for d in 0..s.n {
                if rows[d] & !cm == 0 {
                    out |= 1 << d;
                }
            }
            out
        }
    }
}

/// Compiled form of a DL-Lite ontology for fast satisfaction checks.
pub(crate) struct CompiledOntology {
    cis: Vec<(Compiled, Compiled, bool)>,
}

impl CompiledOntology {
    pub fn new(o: &DLLiteOntology, concepts: &[String], roles: &[String]) -> Self {
        let conv = |b: &BasicConcept| compile(&b.to_concept(), concepts, roles);
        CompiledOntology {
            cis: o.cis.iter().map(|ci| (conv(&ci.lhs), conv(&ci.rhs), ci.rhs_negated)).collect(),
        }
    }

    pub fn satisfied(&self, s: &SmallStructure) -> bool {
        self.cis.iter().all(|(l, r, neg)| {
            let lm = eval_small(l, s);
            let rm = eval_small(r, s);
            if *neg {
                lm & rm == 0
            } else {
                lm & !rm == 0
            }
        })
    }
}

/// Whether unreachable nodes may be pruned by forward reachability only.
#[derive(Clone, Copy, PartialEq)]
pub(crate) enum Reach {
    Forward,
    Undirected,
}

fn connected_to_zero(s: &SmallStructure, reach: Reach) -> bool {
    let mut seen: u8 = 1;
    loop {
        let mut next = seen;
        for v in 0..s.n {
            if seen & (1 << v) == 0 {
                continue;
            }
            for adj in &s.adj {
                next |= adj[v];
                if reach == Reach::Undirected {
                    for u in 0..s.n {
                        if adj[u] & (1 << v) != 0 {
                            next |= 1 << u;
                        }
                    }
                }
            }
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen.count_ones() as usize == s.n
}

/// All color assignments with node 0 free and nodes 1.. non-decreasing.
fn color_assignments(n_colors: u32, n: usize) -> Vec<Vec<u32>> {
    fn rest(n_colors: u32, len: usize, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            out.push(acc.clone());
            return;
        }
        for c in min..n_colors {
            acc.push(c);
            rest(n_colors, len - 1, c, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for c0 in 0..n_colors {
        let mut acc = vec![c0];
        rest(n_colors, n - 1, 0, &mut acc, &mut out);
    }
    out
}

/// Enumerates structures with exactly `n` nodes over the given signature
/// sizes, with node 0 as the distinguished point. Nodes 1..n are required to
/// have non-decreasing atom colors, which prunes isomorphic duplicates
/// without losing any pointed structure up to isomorphism. Structures with
/// nodes not connected to the point are skipped (they arise at smaller
/// sizes). Returns `false` if the callback stopped the enumeration.
pub(crate) fn for_each_structure(
    n_concepts: usize,
    n_roles: usize,
    n: usize,
    reach: Reach,
    f: &mut dyn FnMut(&SmallStructure) -> bool,
) -> bool {
    assert!(n >= 1 && n <= MAX_NODES);
    let edge_bits = n * n * n_roles;
    assert!(edge_bits < 63, "edge space too large to enumerate");

    for colors in color_assignments(1 << n_concepts, n) {
        let mut atoms = vec![0u8; n_concepts];
        for (node, &color) in colors.iter().enumerate() {
            for (ci, a) in atoms.iter_mut().enumerate() {
                if color & (1 << ci) != 0 {
                    *a |= 1 << node;
                }
            }
        }

        let limit: u64 = 1u64 << edge_bits;
        let row_mask: u64 = (1 << n) - 1;
        let mut edges: u64 = 0;
        while edges < limit {
            let mut s =
                SmallStructure { n, atoms: atoms.clone(), adj: vec![[0u8; MAX_NODES]; n_roles] };
            let mut bit = 0;
            for adj in s.adj.iter_mut() {
                for row in adj.iter_mut().take(n) {
                    *row = ((edges >> bit) & row_mask) as u8;
                    bit += n;
                }
            }
            if n == 1 || connected_to_zero(&s, reach) {
                if !f(&s) {
                    return false;
                }
            }
            edges += 1;
        }
    }
    true
}

/// Search signature: deterministic name orders for compilation.
pub(crate) fn signature_order(sig: &Signature) -> (Vec<String>, Vec<String>) {
    (sig.concepts.iter().cloned().collect(), sig.roles.iter().cloned().collect())
}

pub(crate) fn uses_inverse(c: &ConceptExpr) -> bool {
    match c {
        ConceptExpr::Exists(r, ch) | ConceptExpr::Forall(r, ch) | ConceptExpr::AtLeast(_, r, ch) => {
            r.inverted || uses_inverse(ch)
        }
        _ => c.children().iter().any(|ch| uses_inverse(ch)),
    }
}

/// Searches sizes `1..=max_size` for pointed models of `base` that falsify
/// the pending targets; every hit removes its target. Used for batched
/// countermodel search. Returns one witness slot per target.
pub(crate) fn search_witnesses(
    base: &ConceptExpr,
    targets: &[ConceptExpr],
    o: Option<&DLLiteOntology>,
    sig: &Signature,
    max_size: usize,
) -> Vec<Option<PointedInterpretation>> {
    let (concepts, roles) = signature_order(sig);
    let cbase = compile(base, &concepts, &roles);
    let ctargets: Vec<Compiled> = targets.iter().map(|t| compile(t, &concepts, &roles)).collect();
    let conto = o.map(|o| CompiledOntology::new(o, &concepts, &roles));
    let reach = if o.is_none() && !uses_inverse(base) && !targets.iter().any(uses_inverse) {
        Reach::Forward
    } else {
        Reach::Undirected
    };

    let mut found: Vec<Option<PointedInterpretation>> = vec![None; targets.len()];
    let mut remaining = targets.len();
    for n in 1..=max_size.min(MAX_NODES) {
        if remaining == 0 {
            break;
        }
        for_each_structure(concepts.len(), roles.len(), n, reach, &mut |s| {
            if let Some(co) = &conto {
                if !co.satisfied(s) {
                    return true;
                }
            }
            if eval_small(&cbase, s) & 1 == 0 {
                return true;
            }
            for (i, ct) in ctargets.iter().enumerate() {
                if found[i].is_some() {
                    continue;
                }
                if eval_small(ct, s) & 1 == 0 {
                    let interp = s.to_interpretation(&concepts, &roles);
                    let point = interp.domain()[0].clone();
                    found[i] = Some(PointedInterpretation::new(interp, point).unwrap());
                    remaining -= 1;
                }
            }
            remaining > 0
        });
    }
    found
}

type TypeKey = (u32, Vec<((usize, usize), u32)>);

type OracleCache = Mutex<HashMap<(String, usize, u32, u32), Arc<BoundedModelOracle>>>;

/// Process-wide cache of bounded-model oracles, keyed by signature and caps.
/// Oracle construction enumerates every structure up to the size cap, so
/// repeated verification runs share the table.
pub fn shared_oracle(
    sig: &Signature,
    max_size: usize,
    dp_cap: u32,
    nr_cap: u32,
) -> Arc<BoundedModelOracle> {
    static CACHE: OnceLock<OracleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (
        serde_json::to_string(sig).unwrap_or_default(),
        max_size,
        dp_cap,
        nr_cap,
    );
    if let Some(found) = cache.lock().unwrap().get(&key) {
        return Arc::clone(found);
    }
    let built = Arc::new(BoundedModelOracle::build(sig, max_size, dp_cap, nr_cap));
    cache.lock().unwrap().insert(key, Arc::clone(&built));
    built
}

/// A truth-table oracle over all pointed interpretations of size at most
/// `max_size`, collapsed to depth-bounded counting types. Sound and complete
/// for inverse-free concepts with role depth at most `dp_cap` and number
/// restrictions at most `nr_cap`, under the empty ontology.
pub struct BoundedModelOracle {
    concepts: Vec<String>,
    roles: Vec<String>,
    dp_cap: u32,
    nr_cap: u32,
    /// interned types per depth: (atom color, sorted ((role, child type), capped count))
    levels: Vec<Vec<TypeKey>>,
    /// distinct top-level types realized at a point, with a representative each
    top_types: Vec<usize>,
    representatives: Vec<SmallStructure>,
}

impl BoundedModelOracle {
    pub fn build(sig: &Signature, max_size: usize, dp_cap: u32, nr_cap: u32) -> Self {
        let (concepts, roles) = signature_order(sig);
        let depths = dp_cap as usize + 1;
        let mut levels: Vec<Vec<TypeKey>> = vec![Vec::new(); depths];
        let mut intern: Vec<HashMap<TypeKey, usize>> = vec![HashMap::new(); depths];
        let mut top_seen: HashMap<usize, ()> = HashMap::new();
        let mut top_types = Vec::new();
        let mut representatives = Vec::new();

        for n in 1..=max_size.min(MAX_NODES) {
            for_each_structure(concepts.len(), roles.len(), n, Reach::Forward, &mut |s| {
                let mut color = vec![0u32; s.n];
                for (ci, &mask) in s.atoms.iter().enumerate() {
                    for (d, c) in color.iter_mut().enumerate() {
                        if mask & (1 << d) != 0 {
                            *c |= 1 << ci;
                        }
                    }
                }
                let mut node_types: Vec<Vec<usize>> = Vec::new();
                for depth in 0..depths {
                    let mut this_level = vec![0usize; s.n];
                    for d in 0..s.n {
                        let key: TypeKey = if depth == 0 {
                            (color[d], Vec::new())
                        } else {
                            let mut counts: HashMap<(usize, usize), u32> = HashMap::new();
                            for (ri, adj) in s.adj.iter().enumerate() {
                                for e in 0..s.n {
                                    if adj[d] & (1 << e) != 0 {
                                        *counts
                                            .entry((ri, node_types[depth - 1][e]))
                                            .or_insert(0) += 1;
                                    }
                                }
                            }
                            let mut succ: Vec<((usize, usize), u32)> = counts
                                .into_iter()
                                .map(|(rt, c)| (rt, c.min(nr_cap.max(1))))
                                .collect();
                            succ.sort_unstable();
                            (color[d], succ)
                        };
                        let next_id = levels[depth].len();
                        let id = *intern[depth].entry(key.clone()).or_insert_with(|| {
                            levels[depth].push(key);
                            next_id
                        });
                        this_level[d] = id;
                    }
                    node_types.push(this_level);
                }
                let t = node_types[depths - 1][0];
                if top_seen.insert(t, ()).is_none() {
                    top_types.push(t);
                    representatives.push(s.clone());
                }
                true
            });
        }
        BoundedModelOracle { concepts, roles, dp_cap, nr_cap, levels, top_types, representatives }
    }

    pub fn type_count(&self) -> usize {
        self.top_types.len()
    }

    /// Checks that the oracle's type abstraction is exact for `c`.
    pub fn supports(&self, c: &ConceptExpr) -> bool {
        let (dp, nr, _) = crate::syntax::depth_nr_size(c);
        dp <= self.dp_cap && nr <= self.nr_cap.max(1) && !uses_inverse(c)
    }

    fn holds_at(&self, c: &Compiled, depth: usize, t: usize) -> bool {
        let (color, succ) = &self.levels[depth][t];
        match c {
            Compiled::Top => true,
            Compiled::Bot => false,
            Compiled::Missing => false,
            Compiled::Atom(i) => color & (1 << i) != 0,
            Compiled::Not(ch) => !self.holds_at(ch, depth, t),
            Compiled::And(cs) => cs.iter().all(|ch| self.holds_at(ch, depth, t)),
            Compiled::Or(cs) => cs.iter().any(|ch| self.holds_at(ch, depth, t)),
            Compiled::AtLeast(k, role, inv, ch) => {
                assert!(!inv && depth > 0, "oracle does not cover this concept");
                let mut total = 0;
                for ((ri, ct), count) in succ {
                    if ri == role && self.holds_at(ch, depth - 1, *ct) {
                        total += count;
                        if total >= *k {
                            return true;
                        }
                    }
                }
                false
            }
            Compiled::Forall(role, inv, ch) => {
                assert!(!inv && depth > 0, "oracle does not cover this concept");
                succ.iter().all(|((ri, ct), _)| ri != role || self.holds_at(ch, depth - 1, *ct))
            }
        }
    }

    /// Truth of `c` at the point of each realized type.
    pub fn truth_vector(&self, c: &ConceptExpr) -> Vec<bool> {
        debug_assert!(self.supports(c), "oracle does not cover {c}");
        let cc = compile(c, &self.concepts, &self.roles);
        self.top_types.iter().map(|&t| self.holds_at(&cc, self.dp_cap as usize, t)).collect()
    }

    /// Truth of `c` over all realized types, packed 64 types per word.
    pub fn truth_bits(&self, c: &ConceptExpr) -> Vec<u64> {
        let v = self.truth_vector(c);
        let mut out = vec![0u64; v.len().div_ceil(64)];
        for (i, b) in v.iter().enumerate() {
            if *b {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }

    /// `a <= b` over packed truth vectors: no type satisfies `a` but not `b`.
    pub fn bits_subsume(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }

    /// True iff no pointed interpretation within the bound satisfies `c` but
    /// not `d`.
    pub fn subsumes(&self, c: &ConceptExpr, d: &ConceptExpr) -> bool {
        let vc = self.truth_vector(c);
        let vd = self.truth_vector(d);
        vc.iter().zip(&vd).all(|(a, b)| !a || *b)
    }

    pub fn equivalent(&self, c: &ConceptExpr, d: &ConceptExpr) -> bool {
        self.truth_vector(c) == self.truth_vector(d)
    }

    /// A pointed interpretation within the bound satisfying `c` but not `d`,
    /// when one exists.
    pub fn find_witness(&self, c: &ConceptExpr, d: &ConceptExpr) -> Option<PointedInterpretation> {
        self.find_witness_from(&self.truth_vector(c), d)
    }

    /// Witness lookup with the base truth vector precomputed, for batched use.
    pub fn find_witness_from(
        &self,
        base: &[bool],
        d: &ConceptExpr,
    ) -> Option<PointedInterpretation> {
        let vd = self.truth_vector(d);
        for (i, (a, b)) in base.iter().zip(&vd).enumerate() {
            if *a && !b {
                let s = &self.representatives[i];
                let interp = s.to_interpretation(&self.concepts, &self.roles);
                let point = interp.domain()[0].clone();
                return Some(PointedInterpretation::new(interp, point).unwrap());
            }
        }
        None
    }
}
