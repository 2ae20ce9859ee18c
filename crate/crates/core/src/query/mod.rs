//! Manchester-style class expressions evaluated under the closed-world
//! reading of the materialized knowledge base.
//!
//! ```text
//! expr        := or
//! or          := and ("or" and)*
//! and         := unary ("and" unary)*
//! unary       := "not" unary | primary
//! primary     := "(" expr ")" | restriction | NAME
//! restriction := NAME "some" primary | NAME "value" (NAME | literal) | NAME CMP literal
//! CMP         := "=" | "!=" | "<" | "<=" | ">" | ">="
//! literal     := INTEGER | "true" | "false" | "quoted string"
//! ```

mod parse;

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    Axiom, ClassExpression, Datatype, EntityDeclaration, EntityKind, Iri, KnowledgeBase, Literal, ModelError, PMOMH,
};
use crate::reasoner::MaterializedKB;
pub use parse::parse_query;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("{0}")]
    UnsupportedMode(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryMode {
    #[default]
    Instances,
    Subclasses,
    Superclasses,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryResult {
    pub mode: QueryMode,
    /// Sorted ascending, duplicate-free. Individuals for `instances`, classes otherwise.
    pub results: Vec<Iri>,
}

fn write_name(out: &mut String, iri: &Iri) {
    match iri.as_str().strip_prefix(PMOMH) {
        Some(local)
            if !local.is_empty()
                && !local.chars().any(parse::is_delimiter)
                && !parse::KEYWORDS.contains(&local)
                && crate::model::parse_integer(local).is_none() =>
        {
            out.push_str(local)
        }
        _ => {
            let _ = write!(out, "<{}>", iri.as_str());
        }
    }
}

fn write_literal(out: &mut String, l: &Literal) {
    match l {
        Literal::String(s) => {
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    c => out.push(c),
                }
            }
            out.push('"');
        }
        other => {
            let _ = write!(out, "{other}");
        }
    }
}

fn write_expr(out: &mut String, e: &ClassExpression) {
    let nested = |out: &mut String, x: &ClassExpression| {
        if matches!(x, ClassExpression::And(_) | ClassExpression::Or(_)) {
            out.push('(');
            write_expr(out, x);
            out.push(')');
        } else {
            write_expr(out, x);
        }
    };
    match e {
        ClassExpression::Named(c) => write_name(out, c),
        ClassExpression::And(xs) | ClassExpression::Or(xs) => {
            let sep = if matches!(e, ClassExpression::And(_)) { " and " } else { " or " };
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                nested(out, x);
            }
        }
        ClassExpression::Not(x) => {
            out.push_str("not ");
            nested(out, x);
        }
        ClassExpression::Some { property, filler } => {
            write_name(out, property);
            out.push_str(" some ");
            if matches!(**filler, ClassExpression::Not(_)) {
                out.push('(');
                write_expr(out, filler);
                out.push(')');
            } else {
                nested(out, filler);
            }
        }
        ClassExpression::ValueObj { property, individual } => {
            write_name(out, property);
            out.push_str(" value ");
            write_name(out, individual);
        }
        ClassExpression::ValueData { property, literal } => {
            write_name(out, property);
            out.push_str(" value ");
            write_literal(out, literal);
        }
        ClassExpression::DataCompare { property, op, literal } => {
            write_name(out, property);
            let _ = write!(out, " {op} ");
            write_literal(out, literal);
        }
    }
}

/// Query text for an expression; `parse_query` reads it back to an equal AST.
pub fn print_query(e: &ClassExpression) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

fn expect_kind(kb: &KnowledgeBase, iri: &Iri, want: EntityKind) -> Result<(), QueryError> {
    match kb.kind_of(iri) {
        None => Err(QueryError::UnknownName(iri.to_string())),
        Some(k) if k == want => Ok(()),
        Some(k) => Err(QueryError::TypeMismatch(format!("{iri} is a {k}, not a {want}"))),
    }
}

fn data_range(kb: &KnowledgeBase, property: &Iri) -> Option<Datatype> {
    kb.axioms().find_map(|a| match a {
        Axiom::DataPropertyRange { property: p, datatype } if p == property => Some(*datatype),
        _ => None,
    })
}

/// Name resolution and type checks, without evaluating.
pub fn check(kb: &KnowledgeBase, e: &ClassExpression) -> Result<(), QueryError> {
    let literal_fits = |property: &Iri, literal: &Literal| match data_range(kb, property) {
        Some(dt) if dt != literal.datatype() => Err(QueryError::TypeMismatch(format!(
            "{property} has range {dt} but {literal} is {}",
            literal.datatype()
        ))),
        _ => Ok(()),
    };
    match e {
        ClassExpression::Named(c) => expect_kind(kb, c, EntityKind::Class),
        ClassExpression::And(xs) | ClassExpression::Or(xs) => xs.iter().try_for_each(|x| check(kb, x)),
        ClassExpression::Not(x) => check(kb, x),
        ClassExpression::Some { property, filler } => {
            expect_kind(kb, property, EntityKind::ObjectProperty)?;
            check(kb, filler)
        }
        ClassExpression::ValueObj { property, individual } => {
            expect_kind(kb, property, EntityKind::ObjectProperty)?;
            expect_kind(kb, individual, EntityKind::NamedIndividual)
        }
        ClassExpression::ValueData { property, literal } => {
            expect_kind(kb, property, EntityKind::DataProperty)?;
            literal_fits(property, literal)
        }
        ClassExpression::DataCompare { property, op, literal } => {
            expect_kind(kb, property, EntityKind::DataProperty)?;
            if op.is_ordering() {
                if literal.datatype() != Datatype::Integer {
                    return Err(QueryError::TypeMismatch(format!("'{op}' needs an integer, got {literal}")));
                }
                if let Some(dt) = data_range(kb, property).filter(|dt| *dt != Datatype::Integer) {
                    return Err(QueryError::TypeMismatch(format!("'{op}' is not defined on {property} (range {dt})")));
                }
            }
            literal_fits(property, literal)
        }
    }
}

/// Individuals satisfying `e`. `not` complements against all declared individuals.
pub fn eval(mkb: &MaterializedKB, e: &ClassExpression) -> Result<BTreeSet<Iri>, QueryError> {
    check(mkb.base(), e)?;
    Ok(mkb.state.eval(e))
}

fn class_conjuncts(mkb: &MaterializedKB, e: &ClassExpression) -> Result<Vec<Iri>, QueryError> {
    let named = e.named_conjuncts();
    let all_named = match e {
        ClassExpression::Named(_) => true,
        ClassExpression::And(xs) => xs.iter().all(|x| matches!(x, ClassExpression::Named(_))),
        _ => false,
    };
    if !all_named {
        return Err(QueryError::UnsupportedMode(
            "subclass and superclass queries accept only a class name or a conjunction of class names".into(),
        ));
    }
    check(mkb.base(), e)?;
    Ok(named.into_iter().cloned().collect())
}

/// Evaluates query text in the given mode.
pub fn run_query(mkb: &MaterializedKB, text: &str, mode: QueryMode) -> Result<QueryResult, QueryError> {
    let e = parse_query(text)?;
    run_expr(mkb, &e, mode)
}

pub fn run_expr(mkb: &MaterializedKB, e: &ClassExpression, mode: QueryMode) -> Result<QueryResult, QueryError> {
    let results: BTreeSet<Iri> = match mode {
        QueryMode::Instances => eval(mkb, e)?,
        QueryMode::Subclasses => {
            let cs = class_conjuncts(mkb, e)?;
            mkb.base()
                .entities(EntityKind::Class)
                .filter(|d| !cs.contains(d) && cs.iter().all(|c| mkb.state.supers_of(d).contains(c)))
                .cloned()
                .collect()
        }
        QueryMode::Superclasses => {
            let cs = class_conjuncts(mkb, e)?;
            cs.iter()
                .flat_map(|c| mkb.state.supers_of(c).iter().cloned())
                .filter(|d| !cs.contains(d))
                .collect()
        }
    };
    Ok(QueryResult { mode, results: results.into_iter().collect() })
}

/// Named classes below `c`, excluding `c`. With `direct`, only those with no
/// other such class strictly between them and `c`; classes equivalent to `c`
/// are not reported as direct subclasses.
pub fn named_subclasses(mkb: &MaterializedKB, c: &Iri, direct: bool) -> Result<BTreeSet<Iri>, QueryError> {
    let subs = mkb.subclasses_of(c).map_err(|_| QueryError::UnknownName(c.to_string()))?;
    let all: BTreeSet<&Iri> = subs.iter().filter(|d| *d != c).collect();
    if !direct {
        return Ok(all.into_iter().cloned().collect());
    }
    let below = |x: &Iri, y: &Iri| mkb.state.supers_of(x).contains(y);
    let equivalent_to_c = |x: &Iri| below(c, x);
    Ok(all
        .iter()
        .filter(|d| !equivalent_to_c(d))
        .filter(|d| !all.iter().any(|e| !equivalent_to_c(e) && below(d, e) && !below(e, d)))
        .map(|d| (*d).clone())
        .collect())
}

/// Declares `name` as a class defined by `expr`. Re-materialize to populate it.
pub fn define_class(kb: &KnowledgeBase, name: Iri, expr: ClassExpression) -> Result<KnowledgeBase, ModelError> {
    let mut out = kb.clone();
    out.declare(EntityDeclaration::new(name.clone(), EntityKind::Class))?;
    out.add_axiom(Axiom::equivalent(name, expr));
    Ok(out)
}
