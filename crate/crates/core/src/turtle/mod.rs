//! A Turtle subset: parsing to triples, recognition of the OWL/RDFS
//! vocabulary into a [`KnowledgeBase`], and canonical serialization.

mod parser;
mod recognize;
mod serialize;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Iri, Literal};

pub use recognize::{recognize, Mode};
pub use serialize::serialize_turtle;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(String),
    Literal(Literal),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => write!(f, "<{}>", i.as_str()),
            Term::Blank(b) => write!(f, "_:{b}"),
            Term::Literal(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    pub triples: Vec<Triple>,
    /// Prefix directives in order of first definition (later redefinitions win).
    pub prefixes: Vec<(String, String)>,
    pub base: Option<String>,
}

impl Graph {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorCategory {
    Lexical,
    Syntactic,
    Vocabulary,
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorCategory::Lexical => "lexical",
            ErrorCategory::Syntactic => "syntactic",
            ErrorCategory::Vocabulary => "vocabulary",
        })
    }
}

/// Position-bearing parse failure. `line` and `column` are 1-based; columns
/// count bytes, so they stay meaningful for input that is not valid UTF-8.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{line}:{column}: {category} error: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
    pub category: ErrorCategory,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(src: &[u8], offset: usize, category: ErrorCategory, message: impl Into<String>) -> Self {
        let (line, column) = line_column(src, offset);
        ParseError { line, column, offset, category, message: message.into() }
    }
}

/// 1-based line and byte column of `offset`. Lines are split on `\n` only.
pub fn line_column(src: &[u8], offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let line_start = before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    (line, offset - line_start + 1)
}

/// Parses a Turtle document. Stops at the first error.
pub fn parse_turtle(src: &[u8]) -> Result<Graph, ParseError> {
    parser::Parser::new(src).parse()
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{} recognition diagnostics", .0.len())]
    Recognize(Vec<crate::model::Diagnostic>),
}

/// Parse then recognize in one step.
pub fn read_kb(src: &[u8], mode: Mode) -> Result<crate::model::KnowledgeBase, LoadError> {
    let graph = parse_turtle(src)?;
    recognize(&graph, mode).map_err(LoadError::Recognize)
}
