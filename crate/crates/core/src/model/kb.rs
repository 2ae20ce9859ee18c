use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{ClassExpression, Datatype, Iri, Literal, ModelError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    DataProperty,
    NamedIndividual,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityKind::Class => "class",
            EntityKind::ObjectProperty => "object property",
            EntityKind::DataProperty => "data property",
            EntityKind::NamedIndividual => "individual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityDeclaration {
    pub iri: Iri,
    pub kind: EntityKind,
}

impl EntityDeclaration {
    pub fn new(iri: Iri, kind: EntityKind) -> Self {
        EntityDeclaration { iri, kind }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    SubClassOf { sub: Iri, sup: Iri },
    EquivalentClasses { class: Iri, expr: ClassExpression },
    /// Stored with `a <= b`; build through [`Axiom::disjoint`] or `add_axiom`.
    DisjointClasses { a: Iri, b: Iri },
    ObjectPropertyDomain { property: Iri, class: Iri },
    ObjectPropertyRange { property: Iri, class: Iri },
    DataPropertyDomain { property: Iri, class: Iri },
    DataPropertyRange { property: Iri, datatype: Datatype },
    InverseProperties { p: Iri, q: Iri },
}

impl Axiom {
    pub fn subclass(sub: Iri, sup: Iri) -> Self {
        Axiom::SubClassOf { sub, sup }
    }

    pub fn equivalent(class: Iri, expr: ClassExpression) -> Self {
        Axiom::EquivalentClasses { class, expr }
    }

    pub fn disjoint(a: Iri, b: Iri) -> Self {
        if a <= b {
            Axiom::DisjointClasses { a, b }
        } else {
            Axiom::DisjointClasses { a: b, b: a }
        }
    }

    fn normalized(self) -> Self {
        match self {
            Axiom::DisjointClasses { a, b } => Axiom::disjoint(a, b),
            other => other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assertion {
    ClassAssertion { individual: Iri, class: Iri },
    ObjectAssertion { subject: Iri, property: Iri, object: Iri },
    DataAssertion { subject: Iri, property: Iri, value: Literal },
}

impl Assertion {
    pub fn class(individual: Iri, class: Iri) -> Self {
        Assertion::ClassAssertion { individual, class }
    }

    pub fn object(subject: Iri, property: Iri, object: Iri) -> Self {
        Assertion::ObjectAssertion { subject, property, object }
    }

    pub fn data(subject: Iri, property: Iri, value: Literal) -> Self {
        Assertion::DataAssertion { subject, property, value }
    }
}

/// Opaque key/value annotation such as `rdfs:comment`. Keys are predicate IRIs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Annotation {
    pub key: String,
    pub value: String,
}

/// The TBox and ABox together, with set semantics throughout.
///
/// Every IRI has at most one declared kind. Referential integrity is not
/// enforced on insertion; see [`crate::model::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    declarations: BTreeMap<Iri, EntityKind>,
    axioms: BTreeSet<Axiom>,
    assertions: BTreeSet<Assertion>,
    annotations: BTreeMap<Iri, BTreeSet<Annotation>>,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Idempotent for an identical `(iri, kind)`; rejects a second kind.
    pub fn declare(&mut self, decl: EntityDeclaration) -> Result<(), ModelError> {
        match self.declarations.get(&decl.iri) {
            Some(&existing) if existing != decl.kind => Err(ModelError::KindConflict {
                iri: decl.iri,
                existing,
                requested: decl.kind,
            }),
            Some(_) => Ok(()),
            None => {
                self.declarations.insert(decl.iri, decl.kind);
                Ok(())
            }
        }
    }

    pub fn declare_all(
        &mut self,
        kind: EntityKind,
        iris: impl IntoIterator<Item = Iri>,
    ) -> Result<(), ModelError> {
        iris.into_iter().try_for_each(|iri| self.declare(EntityDeclaration::new(iri, kind)))
    }

    pub fn add_axiom(&mut self, axiom: Axiom) {
        self.axioms.insert(axiom.normalized());
    }

    pub fn add_assertion(&mut self, assertion: Assertion) {
        self.assertions.insert(assertion);
    }

    pub fn annotate(&mut self, subject: Iri, key: impl Into<String>, value: impl Into<String>) {
        self.annotations
            .entry(subject)
            .or_default()
            .insert(Annotation { key: key.into(), value: value.into() });
    }

    pub fn kind_of(&self, iri: &Iri) -> Option<EntityKind> {
        self.declarations.get(iri).copied()
    }

    pub fn is_declared_as(&self, iri: &Iri, kind: EntityKind) -> bool {
        self.kind_of(iri) == Some(kind)
    }

    pub fn declarations(&self) -> impl Iterator<Item = EntityDeclaration> + '_ {
        self.declarations.iter().map(|(iri, &kind)| EntityDeclaration::new(iri.clone(), kind))
    }

    /// Declared IRIs of one kind, ascending.
    pub fn entities(&self, kind: EntityKind) -> impl Iterator<Item = &Iri> + '_ {
        self.declarations.iter().filter(move |(_, &k)| k == kind).map(|(iri, _)| iri)
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Axiom> + '_ {
        self.axioms.iter()
    }

    pub fn assertions(&self) -> impl Iterator<Item = &Assertion> + '_ {
        self.assertions.iter()
    }

    pub fn annotations(&self) -> impl Iterator<Item = (&Iri, &BTreeSet<Annotation>)> + '_ {
        self.annotations.iter()
    }

    pub fn annotations_of(&self, iri: &Iri) -> impl Iterator<Item = &Annotation> + '_ {
        self.annotations.get(iri).into_iter().flatten()
    }

    pub fn contains_axiom(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(&axiom.clone().normalized())
    }

    pub fn contains_assertion(&self, assertion: &Assertion) -> bool {
        self.assertions.contains(assertion)
    }

    pub fn declaration_count(&self) -> usize {
        self.declarations.len()
    }

    pub fn axiom_count(&self) -> usize {
        self.axioms.len()
    }

    pub fn assertion_count(&self) -> usize {
        self.assertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.declarations.is_empty()
            && self.axioms.is_empty()
            && self.assertions.is_empty()
            && self.annotations.is_empty()
    }

    /// Union of two knowledge bases. Fails if an IRI is declared with
    /// different kinds on the two sides.
    pub fn merge(&self, other: &KnowledgeBase) -> Result<KnowledgeBase, ModelError> {
        let mut merged = self.clone();
        merged.absorb(other)?;
        Ok(merged)
    }

    /// In-place form of [`KnowledgeBase::merge`]. On error `self` is left unchanged.
    pub fn absorb(&mut self, other: &KnowledgeBase) -> Result<(), ModelError> {
        for (iri, &kind) in &other.declarations {
            if let Some(&existing) = self.declarations.get(iri) {
                if existing != kind {
                    return Err(ModelError::KindConflict { iri: iri.clone(), existing, requested: kind });
                }
            }
        }
        self.declarations.extend(other.declarations.iter().map(|(i, k)| (i.clone(), *k)));
        self.axioms.extend(other.axioms.iter().cloned());
        self.assertions.extend(other.assertions.iter().cloned());
        for (iri, anns) in &other.annotations {
            self.annotations.entry(iri.clone()).or_default().extend(anns.iter().cloned());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::pmomh(s)
    }

    #[test]
    fn declare_base_case_and_idempotence() {
        let mut kb = KnowledgeBase::new();
        kb.declare(EntityDeclaration::new(iri("MOMH"), EntityKind::Class)).unwrap();
        assert_eq!(kb.declaration_count(), 1);
        let before = kb.clone();
        kb.declare(EntityDeclaration::new(iri("MOMH"), EntityKind::Class)).unwrap();
        assert_eq!(kb, before);
    }

    #[test]
    fn punning_is_a_kind_conflict() {
        let mut kb = KnowledgeBase::new();
        kb.declare(EntityDeclaration::new(iri("x"), EntityKind::Class)).unwrap();
        let err = kb.declare(EntityDeclaration::new(iri("x"), EntityKind::NamedIndividual)).unwrap_err();
        assert!(matches!(err, ModelError::KindConflict { existing: EntityKind::Class, .. }));
    }

    #[test]
    fn disjointness_is_stored_once() {
        let mut kb = KnowledgeBase::new();
        kb.add_axiom(Axiom::DisjointClasses { a: iri("B"), b: iri("A") });
        kb.add_axiom(Axiom::DisjointClasses { a: iri("A"), b: iri("B") });
        assert_eq!(kb.axiom_count(), 1);
        assert!(kb.contains_axiom(&Axiom::DisjointClasses { a: iri("B"), b: iri("A") }));
    }

    #[test]
    fn subclass_and_domain_axioms_are_stored() {
        let mut kb = KnowledgeBase::new();
        kb.add_axiom(Axiom::subclass(iri("Preference_based"), iri("MOMH")));
        kb.add_axiom(Axiom::ObjectPropertyDomain { property: iri("canSolve"), class: iri("MetaHeuristic") });
        assert!(kb.contains_axiom(&Axiom::subclass(iri("Preference_based"), iri("MOMH"))));
        assert_eq!(kb.axiom_count(), 2);
    }

    #[test]
    fn multi_valued_assertions_accumulate() {
        let mut kb = KnowledgeBase::new();
        let p = iri("hasPreferenceInformationFromDM");
        kb.add_assertion(Assertion::object(iri("R-NSGA-II"), p.clone(), iri("ReferencePoint")));
        kb.add_assertion(Assertion::object(iri("R-NSGA-II"), p, iri("weights")));
        kb.add_assertion(Assertion::data(iri("R-NSGA-II"), iri("hasPublishingYear"), Literal::Integer(2006)));
        assert_eq!(kb.assertion_count(), 3);
    }

    #[test]
    fn merge_identity_and_conflict() {
        let mut a = KnowledgeBase::new();
        a.declare(EntityDeclaration::new(iri("x"), EntityKind::Class)).unwrap();
        a.annotate(iri("x"), "k", "v");
        assert_eq!(a.merge(&KnowledgeBase::new()).unwrap(), a);
        let mut b = KnowledgeBase::new();
        b.declare(EntityDeclaration::new(iri("x"), EntityKind::DataProperty)).unwrap();
        assert!(matches!(a.merge(&b), Err(ModelError::KindConflict { .. })));
        let mut c = a.clone();
        assert!(c.absorb(&b).is_err());
        assert_eq!(c, a);
    }
}
