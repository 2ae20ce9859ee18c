use std::fmt;

use serde::Serialize;

use super::{Iri, Literal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CompareOp {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl CompareOp {
    pub const ALL: [CompareOp; 6] =
        [CompareOp::Eq, CompareOp::Ne, CompareOp::Lt, CompareOp::Le, CompareOp::Gt, CompareOp::Ge];

    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
            CompareOp::Lt => "<",
            CompareOp::Le => "<=",
            CompareOp::Gt => ">",
            CompareOp::Ge => ">=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        CompareOp::ALL.into_iter().find(|op| op.symbol() == s)
    }

    /// Only `=` and `!=` apply to non-integer values.
    pub fn is_ordering(self) -> bool {
        !matches!(self, CompareOp::Eq | CompareOp::Ne)
    }

    pub fn holds(self, ord: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            CompareOp::Eq => ord == Equal,
            CompareOp::Ne => ord != Equal,
            CompareOp::Lt => ord == Less,
            CompareOp::Le => ord != Greater,
            CompareOp::Gt => ord == Greater,
            CompareOp::Ge => ord != Less,
        }
    }
}

impl fmt::Display for CompareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Class expressions used by queries and by `EquivalentClasses` definitions.
///
/// `And` and `Or` carry at least two operands; use [`ClassExpression::and`] /
/// [`ClassExpression::or`] to build them from arbitrary lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpression {
    Named(Iri),
    And(Vec<ClassExpression>),
    Or(Vec<ClassExpression>),
    Not(Box<ClassExpression>),
    Some { property: Iri, filler: Box<ClassExpression> },
    ValueObj { property: Iri, individual: Iri },
    ValueData { property: Iri, literal: Literal },
    DataCompare { property: Iri, op: CompareOp, literal: Literal },
}

/// What kind of entity an IRI inside an expression must be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefRole {
    Class,
    ObjectProperty,
    DataProperty,
    Individual,
}

impl ClassExpression {
    pub fn named(iri: Iri) -> Self {
        ClassExpression::Named(iri)
    }

    /// Conjunction; collapses a single operand to itself. Panics on an empty list.
    pub fn and(mut parts: Vec<ClassExpression>) -> Self {
        assert!(!parts.is_empty(), "conjunction needs at least one operand");
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            ClassExpression::And(parts)
        }
    }

    /// Disjunction; collapses a single operand to itself. Panics on an empty list.
    pub fn or(mut parts: Vec<ClassExpression>) -> Self {
        assert!(!parts.is_empty(), "disjunction needs at least one operand");
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            ClassExpression::Or(parts)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: ClassExpression) -> Self {
        ClassExpression::Not(Box::new(inner))
    }

    pub fn some(property: Iri, filler: ClassExpression) -> Self {
        ClassExpression::Some { property, filler: Box::new(filler) }
    }

    /// Visits every IRI the expression references together with the role it plays.
    pub fn for_each_ref(&self, f: &mut impl FnMut(&Iri, RefRole)) {
        match self {
            ClassExpression::Named(c) => f(c, RefRole::Class),
            ClassExpression::And(xs) | ClassExpression::Or(xs) => xs.iter().for_each(|x| x.for_each_ref(f)),
            ClassExpression::Not(x) => x.for_each_ref(f),
            ClassExpression::Some { property, filler } => {
                f(property, RefRole::ObjectProperty);
                filler.for_each_ref(f);
            }
            ClassExpression::ValueObj { property, individual } => {
                f(property, RefRole::ObjectProperty);
                f(individual, RefRole::Individual);
            }
            ClassExpression::ValueData { property, .. } | ClassExpression::DataCompare { property, .. } => {
                f(property, RefRole::DataProperty)
            }
        }
    }

    /// True for expressions the materializer may use as class definitions:
    /// nested `And`/`Some`/`ValueObj`/`ValueData` over named classes. Such
    /// expressions are monotone in the set of known facts.
    pub fn is_definitional(&self) -> bool {
        match self {
            ClassExpression::Named(_) | ClassExpression::ValueObj { .. } | ClassExpression::ValueData { .. } => true,
            ClassExpression::And(xs) => xs.iter().all(ClassExpression::is_definitional),
            ClassExpression::Some { filler, .. } => filler.is_definitional(),
            ClassExpression::Or(_) | ClassExpression::Not(_) | ClassExpression::DataCompare { .. } => false,
        }
    }

    /// Named classes appearing as top-level conjuncts (the expression itself
    /// when it is named).
    pub fn named_conjuncts(&self) -> Vec<&Iri> {
        match self {
            ClassExpression::Named(c) => vec![c],
            ClassExpression::And(xs) => xs.iter().flat_map(ClassExpression::named_conjuncts).collect(),
            _ => Vec::new(),
        }
    }
}
