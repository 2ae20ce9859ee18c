use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{require_class, vocab, AnalyticsError};
use crate::model::{ClassExpression, Iri};
use crate::reasoner::MaterializedKB;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowSpec {
    pub label: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnSpec {
    pub label: String,
    pub classes: Vec<String>,
}

/// Rows are preference categories, columns search-algorithm families. Class
/// names without a `:` are local names in the corpus namespace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixConfig {
    pub rows: Vec<RowSpec>,
    pub columns: Vec<ColumnSpec>,
}

fn resolve(name: &str) -> Result<Iri, AnalyticsError> {
    Iri::resolve(name).map_err(|e| AnalyticsError::Config(e.to_string()))
}

fn check_unique<'a>(what: &str, labels: impl Iterator<Item = &'a str>) -> Result<(), AnalyticsError> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(AnalyticsError::Config(format!("duplicate {what} label {l:?}")));
        }
    }
    Ok(())
}

impl MatrixConfig {
    pub fn from_json(text: &str) -> Result<Self, AnalyticsError> {
        let config: MatrixConfig = serde_json::from_str(text).map_err(|e| AnalyticsError::Config(e.to_string()))?;
        check_unique("row", config.rows.iter().map(|r| r.label.as_str()))?;
        check_unique("column", config.columns.iter().map(|c| c.label.as_str()))?;
        Ok(config)
    }

    fn resolved(&self) -> Result<(Vec<Iri>, Vec<Vec<Iri>>), AnalyticsError> {
        let rows = self.rows.iter().map(|r| resolve(&r.class)).collect::<Result<_, _>>()?;
        let cols = self
            .columns
            .iter()
            .map(|c| c.classes.iter().map(|n| resolve(n)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        Ok((rows, cols))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub config: MatrixConfig,
    /// `cells[row][column]`, individuals sorted by IRI.
    pub cells: Vec<Vec<BTreeSet<Iri>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub row: String,
    pub column: String,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    label: &'a str,
    cells: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct JsonMatrix<'a> {
    columns: Vec<&'a str>,
    rows: Vec<JsonRow<'a>>,
}

impl Matrix {
    pub fn cell(&self, row: &str, column: &str) -> Option<&BTreeSet<Iri>> {
        let r = self.config.rows.iter().position(|x| x.label == row)?;
        let c = self.config.columns.iter().position(|x| x.label == column)?;
        Some(&self.cells[r][c])
    }

    /// Header `preference,<column labels…>`, then one line per row with each
    /// cell's local names joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let header = std::iter::once("preference").chain(self.config.columns.iter().map(|c| c.label.as_str()));
        w.write_record(header).expect("writing to memory");
        for (spec, row) in self.config.rows.iter().zip(&self.cells) {
            let mut record = vec![spec.label.clone()];
            record.extend(row.iter().map(|cell| cell.iter().map(Iri::compact).collect::<Vec<_>>().join(";")));
            w.write_record(&record).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv of UTF-8 fields")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m = JsonMatrix {
            columns: self.config.columns.iter().map(|c| c.label.as_str()).collect(),
            rows: self
                .config
                .rows
                .iter()
                .zip(&self.cells)
                .map(|(spec, row)| JsonRow {
                    label: &spec.label,
                    cells: row.iter().map(|cell| cell.iter().map(Iri::compact).collect()).collect(),
                })
                .collect(),
        };
        serde_json::to_value(m).expect("matrix serializes")
    }
}

/// Fills each cell with the individuals that have a preference filler typed
/// by the row class and belong to the column's families, either through a
/// `hasSearchAlgorithm` filler or by their own type.
pub fn classification_matrix(mkb: &MaterializedKB, config: &MatrixConfig) -> Result<Matrix, AnalyticsError> {
    let (rows, cols) = config.resolved()?;
    for c in rows.iter().chain(cols.iter().flatten()) {
        require_class(mkb, c)?;
    }
    let pref = vocab::has_preference_information();
    let search = vocab::has_search_algorithm();
    let row_sets: Vec<BTreeSet<Iri>> = rows
        .iter()
        .map(|r| mkb.state.eval(&ClassExpression::some(pref.clone(), ClassExpression::Named(r.clone()))))
        .collect();
    let col_sets: Vec<BTreeSet<Iri>> = cols
        .iter()
        .map(|classes| {
            classes
                .iter()
                .flat_map(|c| {
                    let via = mkb.state.eval(&ClassExpression::some(search.clone(), ClassExpression::Named(c.clone())));
                    via.into_iter().chain(mkb.state.members_of(c).iter().cloned())
                })
                .collect()
        })
        .collect();
    let cells = row_sets
        .iter()
        .map(|r| col_sets.iter().map(|c| r.intersection(c).cloned().collect()).collect())
        .collect();
    Ok(Matrix { config: config.clone(), cells })
}

/// Empty cells, row-major.
pub fn find_gaps(matrix: &Matrix) -> Vec<Gap> {
    let mut out = Vec::new();
    for (r, row) in matrix.config.rows.iter().zip(&matrix.cells) {
        for (c, cell) in matrix.config.columns.iter().zip(row) {
            if cell.is_empty() {
                out.push(Gap { row: r.label.clone(), column: c.label.clone() });
            }
        }
    }
    out
}
