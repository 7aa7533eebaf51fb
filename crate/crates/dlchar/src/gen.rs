//! Seeded random generators for concepts, interpretations and ontologies,
//! shared by the property suites.

use rand::rngs::StdRng;
use rand::Rng;

use crate::interp::Interpretation;
use crate::ontology::{BasicConcept, DLLiteOntology, CI};
use crate::syntax::{ConceptExpr, RoleExpr, Signature};

/// A random interpretation with up to `max_size` elements.
pub fn random_interpretation(
    rng: &mut StdRng,
    sig: &Signature,
    max_size: usize,
    edge_density: f64,
) -> Interpretation {
    let n = rng.gen_range(1..=max_size.max(1));
    let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut out = Interpretation::new(ids.clone()).expect("nonempty");
    for a in &sig.concepts {
        for id in &ids {
            if rng.gen_bool(0.5) {
                out.add_atom(a, id).unwrap();
            }
        }
    }
    for r in &sig.roles {
        for s in &ids {
            for t in &ids {
                if rng.gen_bool(edge_density) {
                    out.add_edge(r, s, t).unwrap();
                }
            }
        }
    }
    out
}

/// A random L(>=, and, top) concept within the depth and count bounds.
pub fn random_elq_concept(rng: &mut StdRng, sig: &Signature, dp: u32, nr: u32) -> ConceptExpr {
    let concepts: Vec<&String> = sig.concepts.iter().collect();
    let roles: Vec<&String> = sig.roles.iter().collect();
    let mut parts: Vec<ConceptExpr> = Vec::new();
    for a in &concepts {
        if rng.gen_bool(0.4) {
            parts.push(ConceptExpr::name((*a).clone()));
        }
    }
    if dp > 0 && !roles.is_empty() {
        let n_conj = rng.gen_range(0..=2);
        for _ in 0..n_conj {
            let role = RoleExpr::new(roles[rng.gen_range(0..roles.len())].clone());
            let k = rng.gen_range(1..=nr.max(1));
            let child = random_elq_concept(rng, sig, dp - 1, nr);
            parts.push(if k == 1 {
                ConceptExpr::exists(role, child)
            } else {
                ConceptExpr::at_least(k, role, child)
            });
        }
    }
    ConceptExpr::and(parts)
}

/// A random EL concept (existentials only).
pub fn random_el_concept(rng: &mut StdRng, sig: &Signature, dp: u32) -> ConceptExpr {
    random_elq_concept(rng, sig, dp, 1)
}

/// A random L(forall, exists, geq, and, top) concept.
pub fn random_aleq_concept(rng: &mut StdRng, sig: &Signature, dp: u32, nr: u32) -> ConceptExpr {
    let concepts: Vec<&String> = sig.concepts.iter().collect();
    let roles: Vec<&String> = sig.roles.iter().collect();
    let mut parts: Vec<ConceptExpr> = Vec::new();
    for a in &concepts {
        if rng.gen_bool(0.35) {
            parts.push(ConceptExpr::name((*a).clone()));
        }
    }
    if dp > 0 && !roles.is_empty() {
        for _ in 0..rng.gen_range(0..=2) {
            let role = RoleExpr::new(roles[rng.gen_range(0..roles.len())].clone());
            let child = random_aleq_concept(rng, sig, dp - 1, nr);
            let part = match rng.gen_range(0..3) {
                0 => ConceptExpr::exists(role, child),
                1 => ConceptExpr::forall(role, child),
                _ => {
                    let k = rng.gen_range(1..=nr.max(1));
                    if k == 1 {
                        ConceptExpr::exists(role, child)
                    } else {
                        ConceptExpr::at_least(k, role, child)
                    }
                }
            };
            parts.push(part);
        }
    }
    ConceptExpr::and(parts)
}

/// A random DL-Lite ontology over the signature, with arbitrary inclusions
/// between basic concepts (not necessarily in named form).
pub fn random_ontology(
    rng: &mut StdRng,
    sig: &Signature,
    max_cis: usize,
    allow_disjointness: bool,
) -> DLLiteOntology {
    let mut basics: Vec<BasicConcept> = Vec::new();
    for a in &sig.concepts {
        basics.push(BasicConcept::name(a.clone()));
    }
    for r in &sig.roles {
        basics.push(BasicConcept::exists(r.clone()));
        basics.push(BasicConcept::exists_inv(r.clone()));
    }
    let mut cis = Vec::new();
    if !basics.is_empty() {
        for _ in 0..rng.gen_range(0..=max_cis) {
            let lhs = basics[rng.gen_range(0..basics.len())].clone();
            let rhs = basics[rng.gen_range(0..basics.len())].clone();
            let negated = allow_disjointness && rng.gen_bool(0.3);
            if !negated && lhs == rhs {
                continue;
            }
            cis.push(CI { lhs, rhs, rhs_negated: negated });
        }
    }
    DLLiteOntology::new(cis, sig.clone())
}

/// A random DL-Lite ontology in named form over the signature: a few random
/// inclusions between basic concepts, avoiding globally unsatisfiable names
/// unless `allow_disjointness` permits them.
pub fn random_named_ontology(
    rng: &mut StdRng,
    sig: &Signature,
    max_cis: usize,
    allow_disjointness: bool,
) -> DLLiteOntology {
    let mut basics: Vec<BasicConcept> = Vec::new();
    for a in &sig.concepts {
        basics.push(BasicConcept::name(a.clone()));
    }
    for r in &sig.roles {
        basics.push(BasicConcept::exists(r.clone()));
        basics.push(BasicConcept::exists_inv(r.clone()));
    }
    let mut cis = Vec::new();
    if !basics.is_empty() {
        for _ in 0..rng.gen_range(0..=max_cis) {
            let lhs = basics[rng.gen_range(0..basics.len())].clone();
            let rhs = basics[rng.gen_range(0..basics.len())].clone();
            // keep named form: one side must be a concept name
            if !matches!(lhs, BasicConcept::Name(_)) && !matches!(rhs, BasicConcept::Name(_)) {
                continue;
            }
            let negated = allow_disjointness && rng.gen_bool(0.3);
            if !negated && lhs == rhs {
                continue;
            }
            cis.push(CI { lhs, rhs, rhs_negated: negated });
        }
    }
    DLLiteOntology::new(cis, sig.clone())
}
