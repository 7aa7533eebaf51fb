//! Exact learning with membership queries, built from characterisations.

use std::cell::Cell;

use thiserror::Error;

use crate::characterise::{characterise_el_dllite, characterise_elq, CharBounds, CharError, Mode};
use crate::interp::{eval_mask, ExampleSet, PointedInterpretation, Polarity};
use crate::ontology::{satisfies_ontology, DLLiteOntology};
use crate::reason::enumerate_concepts;
use crate::syntax::{fragment_check, render_concept, ConceptExpr, FragmentSpec, Signature};

#[derive(Debug, Error)]
pub enum LearnError {
    #[error("membership query rejected: example violates the ontology")]
    QueryRejected,
    #[error("enumeration exhausted without a fitting candidate (bounds too small?)")]
    Exhausted,
    #[error("candidate `{candidate}` has no complete characterisation at these bounds")]
    CoverageGap { candidate: String },
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Reason(#[from] crate::reason::ReasonError),
}

/// Answers membership queries about a hidden concept, optionally refusing
/// examples that violate an ontology.
pub struct MembershipOracle {
    answer: Box<dyn Fn(&PointedInterpretation) -> bool>,
    constraint: Option<DLLiteOntology>,
    query_count: Cell<u64>,
}

impl MembershipOracle {
    pub fn new(
        answer: Box<dyn Fn(&PointedInterpretation) -> bool>,
        constraint: Option<DLLiteOntology>,
    ) -> Self {
        MembershipOracle { answer, constraint, query_count: Cell::new(0) }
    }

    /// Asks whether the example is a positive example of the hidden concept.
    /// Rejection (an ontology-violating example) is distinct from `false`.
    pub fn query(&self, pi: &PointedInterpretation) -> Result<bool, LearnError> {
        if let Some(o) = &self.constraint {
            if !satisfies_ontology(&pi.interp, o) {
                return Err(LearnError::QueryRejected);
            }
        }
        self.query_count.set(self.query_count.get() + 1);
        Ok((self.answer)(pi))
    }

    pub fn query_count(&self) -> u64 {
        self.query_count.get()
    }
}

/// An oracle that answers by model checking the hidden concept.
pub fn oracle_from_concept(c: &ConceptExpr, o: Option<&DLLiteOntology>) -> MembershipOracle {
    let hidden = c.clone();
    MembershipOracle::new(
        Box::new(move |pi| eval_mask(&hidden, &pi.interp)[pi.point_index()]),
        o.cloned(),
    )
}

/// All queries asked during a learning run, plus the returned hypothesis.
#[derive(Debug, Clone)]
pub struct LearningTranscript {
    pub queried: Vec<(PointedInterpretation, bool)>,
    pub hypothesis: ConceptExpr,
}

impl LearningTranscript {
    /// The transcript read as a labeled example set.
    pub fn as_example_set(&self) -> ExampleSet {
        let mut e = ExampleSet::default();
        for (pi, answer) in &self.queried {
            if *answer {
                e.positives.push(pi.clone());
            } else {
                e.negatives.push(pi.clone());
            }
        }
        e
    }
}

/// Learns a hidden concept by enumerating candidates in order of size and
/// querying each candidate's characterisation; the first candidate whose
/// labels all match is returned. Works for fragments of L(>=, and, top)
/// without an ontology and of L(exists, and, top, bot) under a DL-Lite
/// ontology.
pub fn mq_learn(
    f: &FragmentSpec,
    sig: &Signature,
    bounds: &CharBounds,
    oracle: &MembershipOracle,
    o: Option<&DLLiteOntology>,
) -> Result<LearningTranscript, LearnError> {
    let candidates = enumerate_concepts(f, sig, &bounds.enum_bounds())?;
    let mut queried: Vec<(PointedInterpretation, bool)> = Vec::new();

    for candidate in candidates.concepts {
        let examples = match o {
            Some(o) => {
                if !fragment_check(&candidate, &FragmentSpec::el_bot()) {
                    continue;
                }
                characterise_el_dllite(&candidate, sig, o, bounds)?
            }
            None => {
                if !fragment_check(&candidate, &FragmentSpec::elq()) {
                    continue;
                }
                let built = characterise_elq(&candidate, sig, Mode::BoundedComplete, bounds)?;
                if !built.gaps.is_empty() {
                    return Err(LearnError::CoverageGap {
                        candidate: render_concept(&candidate),
                    });
                }
                built.examples
            }
        };

        let mut all_match = true;
        for (pi, polarity) in examples.iter_labeled() {
            let answer = oracle.query(pi)?;
            queried.push((pi.clone(), answer));
            if answer != (polarity == Polarity::Positive) {
                all_match = false;
                break;
            }
        }
        if all_match {
            return Ok(LearningTranscript { queried, hypothesis: candidate });
        }
    }
    Err(LearnError::Exhausted)
}
