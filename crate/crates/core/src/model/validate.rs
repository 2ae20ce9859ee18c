use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Assertion, Axiom, ClassExpression, Datatype, EntityKind, Iri, KnowledgeBase, Literal, RefRole};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    Undeclared,
    KindMismatch,
    DatatypeMismatch,
    Expression,
    Vocabulary,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Undeclared => "undeclared",
            DiagnosticKind::KindMismatch => "kind-mismatch",
            DiagnosticKind::DatatypeMismatch => "datatype-mismatch",
            DiagnosticKind::Expression => "expression",
            DiagnosticKind::Vocabulary => "vocabulary",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, message: impl Into<String>) -> Self {
        Diagnostic { kind, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

fn expected_kind(role: RefRole) -> EntityKind {
    match role {
        RefRole::Class => EntityKind::Class,
        RefRole::ObjectProperty => EntityKind::ObjectProperty,
        RefRole::DataProperty => EntityKind::DataProperty,
        RefRole::Individual => EntityKind::NamedIndividual,
    }
}

struct Checker<'a> {
    kb: &'a KnowledgeBase,
    ranges: BTreeMap<&'a Iri, Vec<Datatype>>,
    out: Vec<Diagnostic>,
}

impl<'a> Checker<'a> {
    fn reference(&mut self, iri: &Iri, role: RefRole, context: &dyn fmt::Display) {
        let want = expected_kind(role);
        match self.kb.kind_of(iri) {
            None => self.out.push(Diagnostic::new(
                DiagnosticKind::Undeclared,
                format!("{iri:?} used as {want} in {context} is not declared"),
            )),
            Some(k) if k != want => self.out.push(Diagnostic::new(
                DiagnosticKind::KindMismatch,
                format!("{iri:?} is declared as {k} but used as {want} in {context}"),
            )),
            Some(_) => {}
        }
    }

    fn literal(&mut self, property: &Iri, value: &Literal, context: &dyn fmt::Display) {
        let Some(ranges) = self.ranges.get(property) else { return };
        for &dt in ranges {
            if value.datatype() != dt {
                self.out.push(Diagnostic::new(
                    DiagnosticKind::DatatypeMismatch,
                    format!(
                        "{value} is {} but {property:?} has range {dt} in {context}",
                        value.datatype()
                    ),
                ));
            }
        }
    }

    fn expression(&mut self, expr: &ClassExpression, context: &dyn fmt::Display) {
        let mut refs = Vec::new();
        expr.for_each_ref(&mut |iri, role| refs.push((iri.clone(), role)));
        for (iri, role) in refs {
            self.reference(&iri, role, context);
        }
        self.literals_in(expr, context);
    }

    fn literals_in(&mut self, expr: &ClassExpression, context: &dyn fmt::Display) {
        match expr {
            ClassExpression::Named(_) | ClassExpression::ValueObj { .. } => {}
            ClassExpression::And(xs) | ClassExpression::Or(xs) => {
                xs.iter().for_each(|x| self.literals_in(x, context))
            }
            ClassExpression::Not(x) => self.literals_in(x, context),
            ClassExpression::Some { filler, .. } => self.literals_in(filler, context),
            ClassExpression::ValueData { property, literal } => self.literal(property, literal, context),
            ClassExpression::DataCompare { property, op, literal } => {
                if op.is_ordering() && literal.datatype() != Datatype::Integer {
                    self.out.push(Diagnostic::new(
                        DiagnosticKind::Expression,
                        format!("comparison {op} on {property:?} needs an integer, got {literal} in {context}"),
                    ));
                }
                self.literal(property, literal, context);
            }
        }
    }
}

struct Ctx<'a, T: fmt::Debug>(&'static str, &'a T);

impl<T: fmt::Debug> fmt::Display for Ctx<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.0, self.1)
    }
}

/// Structural checks: undeclared references, kind mismatches and literal
/// datatypes against declared ranges. An empty result means the knowledge
/// base is structurally valid. Output is sorted and duplicate-free.
pub fn validate(kb: &KnowledgeBase) -> Vec<Diagnostic> {
    let mut ranges: BTreeMap<&Iri, Vec<Datatype>> = BTreeMap::new();
    for ax in kb.axioms() {
        if let Axiom::DataPropertyRange { property, datatype } = ax {
            ranges.entry(property).or_default().push(*datatype);
        }
    }
    let mut c = Checker { kb, ranges, out: Vec::new() };

    for ax in kb.axioms() {
        let ctx = Ctx("axiom", ax);
        match ax {
            Axiom::SubClassOf { sub, sup } => {
                c.reference(sub, RefRole::Class, &ctx);
                c.reference(sup, RefRole::Class, &ctx);
            }
            Axiom::EquivalentClasses { class, expr } => {
                c.reference(class, RefRole::Class, &ctx);
                c.expression(expr, &ctx);
            }
            Axiom::DisjointClasses { a, b } => {
                c.reference(a, RefRole::Class, &ctx);
                c.reference(b, RefRole::Class, &ctx);
            }
            Axiom::ObjectPropertyDomain { property, class } | Axiom::ObjectPropertyRange { property, class } => {
                c.reference(property, RefRole::ObjectProperty, &ctx);
                c.reference(class, RefRole::Class, &ctx);
            }
            Axiom::DataPropertyDomain { property, class } => {
                c.reference(property, RefRole::DataProperty, &ctx);
                c.reference(class, RefRole::Class, &ctx);
            }
            Axiom::DataPropertyRange { property, .. } => c.reference(property, RefRole::DataProperty, &ctx),
            Axiom::InverseProperties { p, q } => {
                c.reference(p, RefRole::ObjectProperty, &ctx);
                c.reference(q, RefRole::ObjectProperty, &ctx);
            }
        }
    }

    for a in kb.assertions() {
        let ctx = Ctx("assertion", a);
        match a {
            Assertion::ClassAssertion { individual, class } => {
                c.reference(individual, RefRole::Individual, &ctx);
                c.reference(class, RefRole::Class, &ctx);
            }
            Assertion::ObjectAssertion { subject, property, object } => {
                c.reference(subject, RefRole::Individual, &ctx);
                c.reference(property, RefRole::ObjectProperty, &ctx);
                c.reference(object, RefRole::Individual, &ctx);
            }
            Assertion::DataAssertion { subject, property, value } => {
                c.reference(subject, RefRole::Individual, &ctx);
                c.reference(property, RefRole::DataProperty, &ctx);
                c.literal(property, value, &ctx);
            }
        }
    }

    let mut out = c.out;
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EntityDeclaration;

    fn iri(s: &str) -> Iri {
        Iri::pmomh(s)
    }

    fn base() -> KnowledgeBase {
        let mut kb = KnowledgeBase::new();
        kb.declare(EntityDeclaration::new(iri("x"), EntityKind::NamedIndividual)).unwrap();
        kb.declare(EntityDeclaration::new(iri("hasPublishingYear"), EntityKind::DataProperty)).unwrap();
        kb.declare(EntityDeclaration::new(iri("canSolve"), EntityKind::ObjectProperty)).unwrap();
        kb.add_axiom(Axiom::DataPropertyRange { property: iri("hasPublishingYear"), datatype: Datatype::Integer });
        kb
    }

    #[test]
    fn clean_kb_has_no_diagnostics() {
        let mut kb = base();
        kb.add_assertion(Assertion::data(iri("x"), iri("hasPublishingYear"), Literal::Integer(2006)));
        assert!(validate(&kb).is_empty());
    }

    #[test]
    fn datatype_mismatch_against_range() {
        let mut kb = base();
        kb.add_assertion(Assertion::data(iri("x"), iri("hasPublishingYear"), Literal::string("abc")));
        let d = validate(&kb);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::DatatypeMismatch);
    }

    #[test]
    fn undeclared_object() {
        let mut kb = base();
        kb.add_assertion(Assertion::object(iri("x"), iri("canSolve"), iri("ghost")));
        let d = validate(&kb);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::Undeclared);
    }

    #[test]
    fn object_property_in_data_assertion() {
        let mut kb = base();
        kb.add_assertion(Assertion::data(iri("x"), iri("canSolve"), Literal::Integer(1)));
        let d = validate(&kb);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::KindMismatch);
    }

    #[test]
    fn ordering_comparison_needs_integer() {
        let mut kb = base();
        kb.declare(EntityDeclaration::new(iri("C"), EntityKind::Class)).unwrap();
        kb.declare(EntityDeclaration::new(iri("name"), EntityKind::DataProperty)).unwrap();
        kb.add_axiom(Axiom::equivalent(
            iri("C"),
            ClassExpression::DataCompare {
                property: iri("name"),
                op: crate::model::CompareOp::Lt,
                literal: Literal::string("m"),
            },
        ));
        let d = validate(&kb);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::Expression);
    }
}
