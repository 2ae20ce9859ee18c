//! Entities, axioms, assertions and the knowledge base that holds them.

mod expr;
mod iri;
mod kb;
mod literal;
mod validate;

use thiserror::Error;

pub use expr::{ClassExpression, CompareOp, RefRole};
pub use iri::{Iri, OWL, PMOMH, RDF, RDFS, XSD};
pub use kb::{Annotation, Assertion, Axiom, EntityDeclaration, EntityKind, KnowledgeBase};
pub use literal::{Datatype, Literal};
pub(crate) use literal::parse_integer;
pub use validate::{validate, Diagnostic, DiagnosticKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid IRI {iri:?}: {reason}")]
    InvalidIri { iri: String, reason: &'static str },
    #[error("{lexical:?} is not a valid {datatype} literal")]
    InvalidLiteral { lexical: String, datatype: Datatype },
    #[error("{iri:?} is already declared as {existing}, cannot redeclare as {requested}")]
    KindConflict { iri: Iri, existing: EntityKind, requested: EntityKind },
}
