//! Forward-chaining materialization.
//!
//! Rules, applied to a least fixpoint:
//!
//! * R1 subclass transitivity
//! * R2 type inheritance along subclasses
//! * R3 / R4 typing from property domains and ranges
//! * R5 inverse properties, in both directions
//! * R6 `EquivalentClasses(a, b)` gives `a ⊑ b` and `b ⊑ a`; for a conjunction
//!   `a ≡ X ⊓ …` it also gives `a ⊑ X` for every named conjunct `X`
//! * R7 defined-class membership for definitions built from `and`, `some` and
//!   `value` over named classes
//!
//! R7 and queries use closed-world evaluation: membership is decided from the
//! materialized facts alone. This departs from OWL's open-world semantics.

mod engine;
pub(crate) mod state;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Assertion, Axiom, EntityKind, Iri, KnowledgeBase, Literal};
use state::State;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fact {
    SubClass(Iri, Iri),
    Type(Iri, Iri),
    Obj(Iri, Iri, Iri),
    Data(Iri, Iri, Literal),
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::SubClass(a, b) => write!(f, "{a} subClassOf {b}"),
            Fact::Type(i, c) => write!(f, "{i} type {c}"),
            Fact::Obj(s, p, o) => write!(f, "{s} {p} {o}"),
            Fact::Data(s, p, v) => write!(f, "{s} {p} {v}"),
        }
    }
}

impl Serialize for Fact {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    Asserted,
    Reflexivity,
    R1Transitivity,
    R2TypeInheritance,
    R3Domain,
    R4Range,
    R5Inverse,
    R6Equivalence,
    R7Definition,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Asserted => "asserted",
            Rule::Reflexivity => "reflexivity",
            Rule::R1Transitivity => "R1 subclass transitivity",
            Rule::R2TypeInheritance => "R2 type inheritance",
            Rule::R3Domain => "R3 domain",
            Rule::R4Range => "R4 range",
            Rule::R5Inverse => "R5 inverse",
            Rule::R6Equivalence => "R6 equivalence",
            Rule::R7Definition => "R7 defined class",
        })
    }
}

/// How a fact entered the closure: the rule, the facts it was derived from,
/// and the TBox axiom involved, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub premises: Vec<Fact>,
    pub axiom: Option<Axiom>,
}

/// Order in which pending facts are processed. The fixpoint does not depend
/// on it; `Random` exists to test that.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    #[default]
    Fifo,
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("unknown class {0:?}")]
    UnknownClass(Iri),
    #[error("unknown individual {0:?}")]
    UnknownIndividual(Iri),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub fact: Fact,
    pub rule: Rule,
    pub premises: Vec<Fact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub individual: Iri,
    pub class_a: Iri,
    pub class_b: Iri,
    /// Derivation of both memberships, premises before conclusions.
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub violations: Vec<Violation>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A knowledge base together with its closure under R1–R7.
#[derive(Clone, Debug)]
pub struct MaterializedKB {
    base: KnowledgeBase,
    pub(crate) state: State,
    provenance: HashMap<Fact, Derivation>,
}

/// Computes the closure. The knowledge base should validate cleanly; facts
/// about undeclared entities are still closed over but may be unreachable
/// through the class and individual lookups.
pub fn materialize(kb: &KnowledgeBase) -> MaterializedKB {
    materialize_with(kb, Schedule::Fifo)
}

pub fn materialize_with(kb: &KnowledgeBase, schedule: Schedule) -> MaterializedKB {
    let engine = engine::Engine::run(kb, schedule);
    MaterializedKB { base: kb.clone(), state: engine.state, provenance: engine.provenance }
}

impl MaterializedKB {
    pub fn base(&self) -> &KnowledgeBase {
        &self.base
    }

    fn require_class(&self, c: &Iri) -> Result<(), ReasonerError> {
        if self.base.is_declared_as(c, EntityKind::Class) {
            Ok(())
        } else {
            Err(ReasonerError::UnknownClass(c.clone()))
        }
    }

    pub fn require_individual(&self, i: &Iri) -> Result<(), ReasonerError> {
        if self.base.is_declared_as(i, EntityKind::NamedIndividual) {
            Ok(())
        } else {
            Err(ReasonerError::UnknownIndividual(i.clone()))
        }
    }

    pub fn is_subclass_of(&self, a: &Iri, b: &Iri) -> Result<bool, ReasonerError> {
        self.require_class(a)?;
        self.require_class(b)?;
        Ok(self.state.supers_of(a).contains(b))
    }

    /// Every individual typed by `c`, asserted or inferred.
    pub fn instances_of(&self, c: &Iri) -> Result<BTreeSet<Iri>, ReasonerError> {
        self.require_class(c)?;
        Ok(self.state.members_of(c).clone())
    }

    /// Named classes `d` with `d ⊑ c`, including `c` itself.
    pub fn subclasses_of(&self, c: &Iri) -> Result<&BTreeSet<Iri>, ReasonerError> {
        self.require_class(c)?;
        Ok(self.state.subs_of(c))
    }

    /// Named classes `d` with `c ⊑ d`, including `c` itself.
    pub fn superclasses_of(&self, c: &Iri) -> Result<&BTreeSet<Iri>, ReasonerError> {
        self.require_class(c)?;
        Ok(self.state.supers_of(c))
    }

    pub fn types_of(&self, i: &Iri) -> &BTreeSet<Iri> {
        self.state.types_of(i)
    }

    pub fn objects(&self, property: &Iri, subject: &Iri) -> &BTreeSet<Iri> {
        self.state.objects(property, subject)
    }

    pub fn subjects(&self, property: &Iri, object: &Iri) -> &BTreeSet<Iri> {
        self.state.subjects(property, object)
    }

    pub fn values(&self, property: &Iri, subject: &Iri) -> &BTreeSet<Literal> {
        self.state.values(property, subject)
    }

    /// Declared named individuals: the universe for closed-world complement.
    pub fn individuals(&self) -> &BTreeSet<Iri> {
        &self.state.individuals
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.state.contains(fact)
    }

    pub fn derivation(&self, fact: &Fact) -> Option<&Derivation> {
        self.provenance.get(fact)
    }

    pub fn is_inferred(&self, fact: &Fact) -> bool {
        self.provenance.get(fact).is_some_and(|d| d.rule != Rule::Asserted)
    }

    /// All facts in the closure, sorted.
    pub fn facts(&self) -> BTreeSet<Fact> {
        self.provenance.keys().cloned().collect()
    }

    pub fn fact_count(&self) -> usize {
        self.provenance.len()
    }

    pub fn inferred_count(&self) -> usize {
        self.provenance.values().filter(|d| d.rule != Rule::Asserted).count()
    }

    /// The base knowledge base extended with every inferred fact (reflexive
    /// subclass facts excepted). Materializing it again derives nothing new.
    pub fn to_kb(&self) -> KnowledgeBase {
        let mut kb = self.base.clone();
        for fact in self.provenance.keys() {
            match fact {
                Fact::SubClass(a, b) if a != b => kb.add_axiom(Axiom::subclass(a.clone(), b.clone())),
                Fact::SubClass(..) => {}
                Fact::Type(i, c) => kb.add_assertion(Assertion::class(i.clone(), c.clone())),
                Fact::Obj(s, p, o) => kb.add_assertion(Assertion::object(s.clone(), p.clone(), o.clone())),
                Fact::Data(s, p, v) => kb.add_assertion(Assertion::data(s.clone(), p.clone(), v.clone())),
            }
        }
        kb
    }

    /// Every individual typed by both classes of a `DisjointClasses` axiom,
    /// with the derivation of both memberships.
    pub fn check_consistency(&self) -> ConsistencyReport {
        let mut violations = Vec::new();
        for ax in self.base.axioms() {
            let Axiom::DisjointClasses { a, b } = ax else { continue };
            let both: BTreeSet<&Iri> =
                self.state.members_of(a).intersection(self.state.members_of(b)).collect();
            for i in both {
                let mut trace = Vec::new();
                let mut seen = HashSet::new();
                self.trace_into(&Fact::Type(i.clone(), a.clone()), &mut seen, &mut trace);
                self.trace_into(&Fact::Type(i.clone(), b.clone()), &mut seen, &mut trace);
                violations.push(Violation { individual: i.clone(), class_a: a.clone(), class_b: b.clone(), trace });
            }
        }
        ConsistencyReport { violations }
    }

    /// Derivation steps for `fact`, premises first.
    pub fn trace(&self, fact: &Fact) -> Vec<TraceStep> {
        let mut out = Vec::new();
        self.trace_into(fact, &mut HashSet::new(), &mut out);
        out
    }

    fn trace_into(&self, fact: &Fact, seen: &mut HashSet<Fact>, out: &mut Vec<TraceStep>) {
        if !seen.insert(fact.clone()) {
            return;
        }
        let Some(d) = self.provenance.get(fact) else { return };
        for p in &d.premises {
            self.trace_into(p, seen, out);
        }
        out.push(TraceStep { fact: fact.clone(), rule: d.rule, premises: d.premises.clone() });
    }
}
