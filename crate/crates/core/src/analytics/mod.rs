//! Recommendation, bibliometrics, the classification matrix and gap listing.

mod matrix;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Axiom, ClassExpression, EntityKind, Iri, Literal};
use crate::query::{run_expr, QueryError, QueryMode, QueryResult};
use crate::reasoner::MaterializedKB;

pub use matrix::{classification_matrix, find_gaps, ColumnSpec, Gap, Matrix, MatrixConfig, RowSpec};

/// Corpus vocabulary the analytics operate on.
pub mod vocab {
    use crate::model::Iri;

    pub fn pmomh() -> Iri {
        Iri::pmomh("PMOMH")
    }
    pub fn mop() -> Iri {
        Iri::pmomh("MOP")
    }
    pub fn researcher() -> Iri {
        Iri::pmomh("Researcher")
    }
    pub fn preference_information() -> Iri {
        Iri::pmomh("PreferenceInformationFromDM")
    }
    pub fn has_preference_information() -> Iri {
        Iri::pmomh("hasPreferenceInformationFromDM")
    }
    pub fn has_search_algorithm() -> Iri {
        Iri::pmomh("hasSearchAlgorithm")
    }
    pub fn can_solve() -> Iri {
        Iri::pmomh("canSolve")
    }
    pub fn has_author() -> Iri {
        Iri::pmomh("hasAuthor")
    }
    pub fn has_publishing_year() -> Iri {
        Iri::pmomh("hasPublishingYear")
    }
    pub fn has_citation_times() -> Iri {
        Iri::pmomh("hasCitationTimes")
    }
    pub fn has_reference() -> Iri {
        Iri::pmomh("hasReference")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticsError {
    #[error("unknown class {0}")]
    UnknownClass(Iri),
    #[error("unknown individual {0}")]
    UnknownIndividual(Iri),
    #[error("{0} is not a kind of PreferenceInformationFromDM")]
    NotAPreference(Iri),
    #[error("{0} is not a data property of MOP")]
    ConstraintOnNonMOPProperty(Iri),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("invalid matrix config: {0}")]
    Config(String),
    #[error(transparent)]
    Query(#[from] QueryError),
}

fn require_class(mkb: &MaterializedKB, c: &Iri) -> Result<(), AnalyticsError> {
    if mkb.base().is_declared_as(c, EntityKind::Class) {
        Ok(())
    } else {
        Err(AnalyticsError::UnknownClass(c.clone()))
    }
}

/// `PMOMH ⊓ ∃hasPreferenceInformationFromDM.preference ⊓ ∃canSolve.(MOP ⊓ constraints…)`.
/// The `canSolve` conjunct is left out when there are no constraints.
pub fn recommendation_expr(preference: &Iri, constraints: &[(Iri, Literal)]) -> ClassExpression {
    let mut parts = vec![
        ClassExpression::Named(vocab::pmomh()),
        ClassExpression::some(vocab::has_preference_information(), ClassExpression::Named(preference.clone())),
    ];
    if !constraints.is_empty() {
        let mut problem = vec![ClassExpression::Named(vocab::mop())];
        problem.extend(
            constraints
                .iter()
                .map(|(p, l)| ClassExpression::ValueData { property: p.clone(), literal: l.clone() }),
        );
        parts.push(ClassExpression::some(vocab::can_solve(), ClassExpression::and(problem)));
    }
    ClassExpression::and(parts)
}

/// Methods using `preference` that solve a problem meeting every constraint.
pub fn recommend(
    mkb: &MaterializedKB,
    preference: &Iri,
    constraints: &[(Iri, Literal)],
) -> Result<QueryResult, AnalyticsError> {
    require_class(mkb, preference)?;
    let root = vocab::preference_information();
    if !mkb.state.supers_of(preference).contains(&root) {
        return Err(AnalyticsError::NotAPreference(preference.clone()));
    }
    let mop = vocab::mop();
    for (p, _) in constraints {
        let on_mop = mkb.base().is_declared_as(p, EntityKind::DataProperty)
            && mkb.base().axioms().any(|a| {
                matches!(a, Axiom::DataPropertyDomain { property, class } if property == p && *class == mop)
            });
        if !on_mop {
            return Err(AnalyticsError::ConstraintOnNonMOPProperty(p.clone()));
        }
    }
    Ok(run_expr(mkb, &recommendation_expr(preference, constraints), QueryMode::Instances)?)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct YearHistogram {
    pub counts: BTreeMap<i64, usize>,
    /// Members without a publishing year.
    pub unknown: usize,
}

impl YearHistogram {
    pub fn total(&self) -> usize {
        self.counts.values().sum::<usize>() + self.unknown
    }
}

/// Members of `class` per publishing year. A member with several years is
/// counted once, under the earliest.
pub fn year_histogram(mkb: &MaterializedKB, class: &Iri) -> Result<YearHistogram, AnalyticsError> {
    require_class(mkb, class)?;
    let year = vocab::has_publishing_year();
    let mut h = YearHistogram::default();
    for i in mkb.state.members_of(class) {
        match mkb.values(&year, i).iter().filter_map(Literal::as_integer).min() {
            Some(y) => *h.counts.entry(y).or_default() += 1,
            None => h.unknown += 1,
        }
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankedEntry {
    pub subject: Iri,
    pub score: i64,
}

/// Score descending, then IRI ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RankedList {
    pub entries: Vec<RankedEntry>,
}

impl RankedList {
    fn from_scores(scores: impl IntoIterator<Item = (Iri, i64)>, k: usize) -> Self {
        let mut entries: Vec<RankedEntry> =
            scores.into_iter().map(|(subject, score)| RankedEntry { subject, score }).collect();
        entries.sort_by(|a, b| b.score.cmp(&a.score).then_with(|| a.subject.cmp(&b.subject)));
        entries.truncate(k);
        RankedList { entries }
    }
}

/// PMOMH instances by `hasCitationTimes`. Instances without a citation count
/// are left out rather than scored zero.
pub fn top_cited(mkb: &MaterializedKB, k: usize) -> Result<RankedList, AnalyticsError> {
    if k == 0 {
        return Err(AnalyticsError::ZeroK);
    }
    let cites = vocab::has_citation_times();
    let scores = mkb
        .state
        .members_of(&vocab::pmomh())
        .iter()
        .filter_map(|i| mkb.values(&cites, i).iter().filter_map(Literal::as_integer).max().map(|n| (i.clone(), n)));
    Ok(RankedList::from_scores(scores, k))
}

/// Researchers by the number of PMOMH instances listing them via `hasAuthor`.
pub fn top_authors(mkb: &MaterializedKB, k: usize) -> Result<RankedList, AnalyticsError> {
    if k == 0 {
        return Err(AnalyticsError::ZeroK);
    }
    let author = vocab::has_author();
    let pmomh = mkb.state.members_of(&vocab::pmomh());
    let scores = mkb.state.members_of(&vocab::researcher()).iter().filter_map(|r| {
        let n = mkb.subjects(&author, r).intersection(pmomh).count();
        (n > 0).then(|| (r.clone(), n as i64))
    });
    Ok(RankedList::from_scores(scores, k))
}

const RELATIONS: [&str; 7] = [
    "hasComparison",
    "hasExtension",
    "isExtensionOf",
    "hasInteractiveVersion",
    "isInteractiveVersionOf",
    "useLibrary",
    "useLanguage",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationGroup {
    pub property: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub individual: Iri,
    /// Fixed order; groups with no facts are present and empty.
    pub groups: Vec<RelationGroup>,
}

/// Asserted and inferred relations of one individual, grouped by property,
/// followed by its `hasReference` values (data or annotation).
pub fn relation_report(mkb: &MaterializedKB, individual: &Iri) -> Result<RelationReport, AnalyticsError> {
    if !mkb.base().is_declared_as(individual, EntityKind::NamedIndividual) {
        return Err(AnalyticsError::UnknownIndividual(individual.clone()));
    }
    let mut groups: Vec<RelationGroup> = RELATIONS
        .iter()
        .map(|p| RelationGroup {
            property: (*p).to_owned(),
            values: mkb.objects(&Iri::pmomh(p), individual).iter().map(Iri::compact).collect(),
        })
        .collect();
    let reference = vocab::has_reference();
    let mut refs: Vec<String> = mkb.values(&reference, individual).iter().map(Literal::lexical).collect();
    refs.extend(
        mkb.base()
            .annotations_of(individual)
            .filter(|a| a.key == reference.as_str())
            .map(|a| a.value.clone()),
    );
    refs.sort();
    refs.dedup();
    groups.push(RelationGroup { property: "hasReference".to_owned(), values: refs });
    Ok(RelationReport { individual: individual.clone(), groups })
}
