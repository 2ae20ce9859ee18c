//! The bundled PMOMH knowledge base, its manifest, and the file loader used
//! for both the bundled corpus and user-supplied ontology files.
//!
//! The corpus ships as `schema.ttl` + `individuals.ttl`, embedded at compile
//! time. Setting `PREFONTO_CORPUS_DIR` makes [`bundled`] read the same file
//! names (and `manifest.json`, `table5-config.json`) from that directory.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{validate, Diagnostic, Iri, KnowledgeBase, ModelError};
use crate::reasoner::{materialize, ConsistencyReport, MaterializedKB};
use crate::turtle::{parse_turtle, recognize, Mode, ParseError};

pub const CORPUS_DIR_ENV: &str = "PREFONTO_CORPUS_DIR";

const SCHEMA: &str = include_str!("../../corpus/schema.ttl");
const INDIVIDUALS: &str = include_str!("../../corpus/individuals.ttl");
const MANIFEST: &str = include_str!("../../corpus/manifest.json");
const TABLE5_CONFIG: &str = include_str!("../../corpus/table5-config.json");

/// Classes whose instance counts the manifest pins.
pub const STAT_CLASSES: [&str; 5] = ["PMOMH", "MOP", "ImplementationLibrary", "Researcher", "PreferenceModel"];

/// One Turtle document and how strictly to recognize it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    pub name: String,
    pub bytes: Vec<u8>,
    pub mode: Mode,
}

impl Source {
    pub fn read(path: &Path, mode: Mode) -> Result<Self, CorpusError> {
        let bytes = std::fs::read(path).map_err(|e| CorpusError::Io { path: path.to_owned(), source: e })?;
        Ok(Source { name: path.display().to_string(), bytes, mode })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestFile {
    pub name: String,
    /// Lowercase hex SHA-256 of the file bytes.
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusManifest {
    pub version: String,
    /// Loaded in this order.
    pub files: Vec<ManifestFile>,
    /// Full class IRI to instance count after materialization.
    pub expected_counts: BTreeMap<String, usize>,
}

impl CorpusManifest {
    pub fn from_json(text: &str) -> Result<Self, CorpusError> {
        serde_json::from_str(text).map_err(|e| CorpusError::Manifest(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountMismatch {
    pub class: Iri,
    pub expected: usize,
    pub actual: usize,
}

impl fmt::Display for CountMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, found {}", self.class.compact(), self.expected, self.actual)
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{name}:{error}")]
    Parse { name: String, error: ParseError },
    #[error("{name}: {} diagnostics", diagnostics.len())]
    Recognize { name: String, diagnostics: Vec<Diagnostic> },
    #[error(transparent)]
    Merge(#[from] ModelError),
    #[error("{} validation diagnostics", .0.len())]
    Invalid(Vec<Diagnostic>),
    #[error("inconsistent: {} disjointness violations", .0.violations.len())]
    Inconsistent(ConsistencyReport),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("{file}: sha256 {actual} does not match manifest {expected}")]
    HashMismatch { file: String, expected: String, actual: String },
    #[error("counts differ from manifest: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    ManifestMismatch(Vec<CountMismatch>),
}

impl CorpusError {
    /// Diagnostics carried by the error, if it has any.
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            CorpusError::Recognize { diagnostics, .. } | CorpusError::Invalid(diagnostics) => diagnostics,
            _ => &[],
        }
    }
}

/// Parses and recognizes each source, then merges them in order. Stops at
/// the first source that fails.
pub fn merge_sources(sources: &[Source]) -> Result<KnowledgeBase, CorpusError> {
    let mut kb = KnowledgeBase::new();
    for s in sources {
        let graph = parse_turtle(&s.bytes).map_err(|error| CorpusError::Parse { name: s.name.clone(), error })?;
        let part = recognize(&graph, s.mode)
            .map_err(|diagnostics| CorpusError::Recognize { name: s.name.clone(), diagnostics })?;
        kb.absorb(&part)?;
    }
    Ok(kb)
}

/// Merge, validate, materialize and check consistency.
pub fn load_sources(sources: &[Source]) -> Result<MaterializedKB, CorpusError> {
    let kb = merge_sources(sources)?;
    let diagnostics = validate(&kb);
    if !diagnostics.is_empty() {
        return Err(CorpusError::Invalid(diagnostics));
    }
    let mkb = materialize(&kb);
    let report = mkb.check_consistency();
    if !report.is_consistent() {
        return Err(CorpusError::Inconsistent(report));
    }
    Ok(mkb)
}

/// [`load_sources`] over files on disk.
pub fn load_corpus(paths: &[impl AsRef<Path>], mode: Mode) -> Result<MaterializedKB, CorpusError> {
    let sources = paths.iter().map(|p| Source::read(p.as_ref(), mode)).collect::<Result<Vec<_>, _>>()?;
    load_sources(&sources)
}

/// Instance counts of [`STAT_CLASSES`]; classes the KB lacks count zero.
pub fn corpus_stats(mkb: &MaterializedKB) -> BTreeMap<Iri, usize> {
    STAT_CLASSES
        .iter()
        .map(|c| {
            let c = Iri::pmomh(c);
            let n = mkb.state.members_of(&c).len();
            (c, n)
        })
        .collect()
}

/// [`corpus_stats`], failing with every class whose count differs from the
/// manifest. Classes named only by the manifest are counted too.
pub fn check_stats(mkb: &MaterializedKB, manifest: &CorpusManifest) -> Result<BTreeMap<Iri, usize>, CorpusError> {
    let mut stats = corpus_stats(mkb);
    let mut mismatches = Vec::new();
    for (class, &expected) in &manifest.expected_counts {
        let class = Iri::new(class).map_err(|e| CorpusError::Manifest(e.to_string()))?;
        let actual = *stats.entry(class.clone()).or_insert_with(|| mkb.state.members_of(&class).len());
        if actual != expected {
            mismatches.push(CountMismatch { class, expected, actual });
        }
    }
    if mismatches.is_empty() {
        Ok(stats)
    } else {
        Err(CorpusError::ManifestMismatch(mismatches))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The corpus files, hash-checked against the manifest.
#[derive(Clone, Debug)]
pub struct Bundled {
    /// `None` when the embedded copy is in use.
    pub dir: Option<PathBuf>,
    pub manifest: CorpusManifest,
    pub sources: Vec<Source>,
    /// Matrix configuration reproducing the published classification table.
    pub matrix_config: String,
}

impl Bundled {
    /// Loads the corpus strictly and checks the manifest counts.
    pub fn load(&self) -> Result<MaterializedKB, CorpusError> {
        let mkb = load_sources(&self.sources)?;
        check_stats(&mkb, &self.manifest)?;
        Ok(mkb)
    }

    pub fn source_names(&self) -> Vec<String> {
        self.sources.iter().map(|s| s.name.clone()).collect()
    }
}

/// The embedded corpus, or the one in `$PREFONTO_CORPUS_DIR` when set.
pub fn bundled() -> Result<Bundled, CorpusError> {
    match std::env::var_os(CORPUS_DIR_ENV) {
        Some(dir) if !dir.is_empty() => bundled_from(Some(Path::new(&dir))),
        _ => bundled_from(None),
    }
}

pub fn bundled_from(dir: Option<&Path>) -> Result<Bundled, CorpusError> {
    let read = |name: &str| -> Result<Vec<u8>, CorpusError> {
        match dir {
            Some(d) => {
                let path = d.join(name);
                std::fs::read(&path).map_err(|e| CorpusError::Io { path, source: e })
            }
            None => match name {
                "schema.ttl" => Ok(SCHEMA.as_bytes().to_vec()),
                "individuals.ttl" => Ok(INDIVIDUALS.as_bytes().to_vec()),
                "manifest.json" => Ok(MANIFEST.as_bytes().to_vec()),
                "table5-config.json" => Ok(TABLE5_CONFIG.as_bytes().to_vec()),
                other => Err(CorpusError::Manifest(format!("{other} is not part of the embedded corpus"))),
            },
        }
    };
    let text = |name: &str| {
        String::from_utf8(read(name)?).map_err(|_| CorpusError::Manifest(format!("{name} is not UTF-8")))
    };
    let manifest = CorpusManifest::from_json(&text("manifest.json")?)?;
    let mut sources = Vec::new();
    for f in &manifest.files {
        let bytes = read(&f.name)?;
        let actual = sha256_hex(&bytes);
        if !actual.eq_ignore_ascii_case(&f.sha256) {
            return Err(CorpusError::HashMismatch { file: f.name.clone(), expected: f.sha256.clone(), actual });
        }
        sources.push(Source { name: f.name.clone(), bytes, mode: Mode::Strict });
    }
    let matrix_config = text("table5-config.json")?;
    Ok(Bundled { dir: dir.map(Path::to_owned), manifest, sources, matrix_config })
}
