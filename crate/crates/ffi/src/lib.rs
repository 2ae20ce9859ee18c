//! C ABI over `prefonto`.
//!
//! A knowledge base is an opaque `PrefontoKb*`, created by one of the
//! `prefonto_kb_load_*` functions and released with `prefonto_kb_free`.
//! Every fallible call returns a [`PrefontoStatus`]; on failure
//! `prefonto_last_error` describes it until the next call on the same thread.
//! Strings handed out through `out` parameters are UTF-8, NUL-terminated and
//! must be released with `prefonto_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use prefonto::analytics::{self, AnalyticsError, MatrixConfig};
use prefonto::corpus::{self, CorpusError, Source};
use prefonto::model::{Iri, Literal};
use prefonto::query::{self, QueryError, QueryMode};
use prefonto::reasoner::MaterializedKB;
use prefonto::turtle::Mode;
use serde_json::{json, Value};

/// Result of every fallible call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefontoStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Io = 3,
    /// Turtle syntax error.
    Parse = 4,
    /// Unsupported vocabulary, undeclared entities or datatype errors.
    Invalid = 5,
    /// A disjointness axiom is violated.
    Inconsistent = 6,
    /// Bundled corpus does not match its manifest.
    Manifest = 7,
    QuerySyntax = 8,
    /// Unknown name, type mismatch or an argument outside its domain.
    Query = 9,
    /// Malformed JSON argument.
    BadArgument = 10,
    Panic = 11,
}

/// Query modes accepted by `prefonto_query`.
pub const PREFONTO_MODE_INSTANCES: i32 = 0;
pub const PREFONTO_MODE_SUBCLASSES: i32 = 1;
pub const PREFONTO_MODE_SUPERCLASSES: i32 = 2;

/// Materialized knowledge base.
pub struct PrefontoKb {
    mkb: MaterializedKB,
    matrix_config: Option<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PrefontoStatus, String);

fn set_last_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).expect("NULs removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, records its error message and converts panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PrefontoStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f));
    match outcome {
        Ok(Ok(())) => {
            set_last_error(None);
            PrefontoStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(Some(message));
            status
        }
        Err(_) => {
            set_last_error(Some("internal panic".to_owned()));
            PrefontoStatus::Panic
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        let status = match e {
            CorpusError::Io { .. } => PrefontoStatus::Io,
            CorpusError::Parse { .. } => PrefontoStatus::Parse,
            CorpusError::Recognize { .. } | CorpusError::Merge(_) | CorpusError::Invalid(_) => {
                PrefontoStatus::Invalid
            }
            CorpusError::Inconsistent(_) => PrefontoStatus::Inconsistent,
            CorpusError::Manifest(_) | CorpusError::HashMismatch { .. } | CorpusError::ManifestMismatch(_) => {
                PrefontoStatus::Manifest
            }
        };
        let mut message = e.to_string();
        for d in e.diagnostics() {
            message.push_str(&format!("\n{d}"));
        }
        Failure(status, message)
    }
}

impl From<QueryError> for Failure {
    fn from(e: QueryError) -> Self {
        let status = match e {
            QueryError::Parse { .. } => PrefontoStatus::QuerySyntax,
            _ => PrefontoStatus::Query,
        };
        Failure(status, e.to_string())
    }
}

impl From<AnalyticsError> for Failure {
    fn from(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::Query(q) => q.into(),
            AnalyticsError::Config(_) => Failure(PrefontoStatus::BadArgument, e.to_string()),
            _ => Failure(PrefontoStatus::Query, e.to_string()),
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PrefontoStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(PrefontoStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn opt_arg<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        arg(p, what).map(Some)
    }
}

/// # Safety
/// `kb` is null or a live handle.
unsafe fn kb_ref<'a>(kb: *const PrefontoKb) -> Result<&'a PrefontoKb, Failure> {
    kb.as_ref().ok_or_else(|| Failure(PrefontoStatus::NullArgument, "kb is null".to_owned()))
}

fn name(text: &str) -> Result<Iri, Failure> {
    Iri::resolve(text).map_err(|e| Failure(PrefontoStatus::BadArgument, e.to_string()))
}

/// # Safety
/// `out` is null or valid for one write.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PrefontoStatus::NullArgument, "out is null".to_owned()));
    }
    let c = CString::new(s).map_err(|_| Failure(PrefontoStatus::BadArgument, "result contains NUL".to_owned()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `out` is null or valid for one write.
unsafe fn put_kb(out: *mut *mut PrefontoKb, kb: PrefontoKb) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PrefontoStatus::NullArgument, "out is null".to_owned()));
    }
    *out = Box::into_raw(Box::new(kb));
    Ok(())
}

fn names_json(iris: &[Iri]) -> String {
    Value::from(iris.iter().map(Iri::compact).collect::<Vec<_>>()).to_string()
}

fn literal(v: &Value) -> Result<Literal, Failure> {
    match v {
        Value::Bool(b) => Ok(Literal::Boolean(*b)),
        Value::Number(n) => n
            .as_i64()
            .map(Literal::Integer)
            .ok_or_else(|| Failure(PrefontoStatus::BadArgument, format!("{n} is not an integer"))),
        Value::String(s) => Ok(Literal::string(s.as_str())),
        other => Err(Failure(PrefontoStatus::BadArgument, format!("{other} is not a literal"))),
    }
}

/// Library version, static storage. Never null.
#[no_mangle]
pub extern "C" fn prefonto_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn prefonto_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prefonto_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads the bundled corpus, checking hashes and instance counts against its
/// manifest.
///
/// # Safety
/// `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn prefonto_kb_load_bundled(out: *mut *mut PrefontoKb) -> PrefontoStatus {
    guard(|| {
        let b = corpus::bundled()?;
        let mkb = b.load()?;
        put_kb(out, PrefontoKb { mkb, matrix_config: Some(b.matrix_config) })
    })
}

/// Loads `count` Turtle files, optionally after the bundled corpus. With
/// `strict` false unsupported vocabulary in the files is kept as annotations.
///
/// # Safety
/// `paths` points to `count` valid strings (may be null when `count` is 0);
/// `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn prefonto_kb_load_files(
    paths: *const *const c_char,
    count: usize,
    strict: bool,
    with_corpus: bool,
    out: *mut *mut PrefontoKb,
) -> PrefontoStatus {
    guard(|| {
        if paths.is_null() && count > 0 {
            return Err(Failure(PrefontoStatus::NullArgument, "paths is null".to_owned()));
        }
        let mode = if strict { Mode::Strict } else { Mode::Lenient };
        let mut sources = Vec::new();
        let mut matrix_config = None;
        if with_corpus {
            let b = corpus::bundled()?;
            sources.extend(b.sources);
            matrix_config = Some(b.matrix_config);
        }
        for i in 0..count {
            let p = arg(*paths.add(i), "path")?;
            sources.push(Source::read(&PathBuf::from(p), mode)?);
        }
        let mkb = corpus::load_sources(&sources)?;
        put_kb(out, PrefontoKb { mkb, matrix_config })
    })
}

/// Loads one Turtle document from memory.
///
/// # Safety
/// `text` is a valid string; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn prefonto_kb_load_turtle(
    text: *const c_char,
    strict: bool,
    out: *mut *mut PrefontoKb,
) -> PrefontoStatus {
    guard(|| {
        let text = arg(text, "text")?;
        let mode = if strict { Mode::Strict } else { Mode::Lenient };
        let source = Source { name: "<memory>".to_owned(), bytes: text.as_bytes().to_vec(), mode };
        let mkb = corpus::load_sources(&[source])?;
        put_kb(out, PrefontoKb { mkb, matrix_config: None })
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `kb` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prefonto_kb_free(kb: *mut PrefontoKb) {
    if !kb.is_null() {
        drop(Box::from_raw(kb));
    }
}

/// Evaluates a class expression. `*out` receives a JSON array of names,
/// sorted; corpus-namespace names are bare, others are `<iri>`.
///
/// # Safety
/// `kb` is a live handle; `expr` a valid string; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn prefonto_query(
    kb: *const PrefontoKb,
    expr: *const c_char,
    mode: i32,
    out: *mut *mut c_char,
) -> PrefontoStatus {
    guard(|| {
        let kb = kb_ref(kb)?;
        let expr = arg(expr, "expr")?;
        let mode = match mode {
            PREFONTO_MODE_INSTANCES => QueryMode::Instances,
            PREFONTO_MODE_SUBCLASSES => QueryMode::Subclasses,
            PREFONTO_MODE_SUPERCLASSES => QueryMode::Superclasses,
            m => return Err(Failure(PrefontoStatus::BadArgument, format!("unknown mode {m}"))),
        };
        let r = query::run_query(&kb.mkb, expr, mode)?;
        put_string(out, names_json(&r.results))
    })
}

/// Methods using `preference` information. `constraints_json` is null or a
/// JSON object mapping problem data properties to booleans, integers or
/// strings. `*out` receives a JSON array of names.
///
/// # Safety
/// `kb` is a live handle; strings valid or null as documented; `out` valid
/// for one write.
#[no_mangle]
pub unsafe extern "C" fn prefonto_recommend(
    kb: *const PrefontoKb,
    preference: *const c_char,
    constraints_json: *const c_char,
    out: *mut *mut c_char,
) -> PrefontoStatus {
    guard(|| {
        let kb = kb_ref(kb)?;
        let preference = name(arg(preference, "preference")?)?;
        let mut constraints = Vec::new();
        if let Some(text) = opt_arg(constraints_json, "constraints_json")? {
            let v: Value =
                serde_json::from_str(text).map_err(|e| Failure(PrefontoStatus::BadArgument, e.to_string()))?;
            let obj = v
                .as_object()
                .ok_or_else(|| Failure(PrefontoStatus::BadArgument, "constraints must be an object".to_owned()))?;
            for (k, v) in obj {
                constraints.push((name(k)?, literal(v)?));
            }
        }
        let r = analytics::recommend(&kb.mkb, &preference, &constraints)?;
        put_string(out, names_json(&r.results))
    })
}

/// Classification matrix as CSV. `config_json` may be null when the handle
/// includes the bundled corpus, which then supplies the configuration.
///
/// # Safety
/// `kb` is a live handle; `config_json` null or valid; `out` valid for one
/// write.
#[no_mangle]
pub unsafe extern "C" fn prefonto_matrix_csv(
    kb: *const PrefontoKb,
    config_json: *const c_char,
    out: *mut *mut c_char,
) -> PrefontoStatus {
    guard(|| {
        let kb = kb_ref(kb)?;
        let text = match opt_arg(config_json, "config_json")? {
            Some(t) => t,
            None => kb.matrix_config.as_deref().ok_or_else(|| {
                Failure(PrefontoStatus::NullArgument, "config_json is required without the bundled corpus".to_owned())
            })?,
        };
        let config = MatrixConfig::from_json(text)?;
        let m = analytics::classification_matrix(&kb.mkb, &config)?;
        put_string(out, m.to_csv())
    })
}

/// The `k` most cited methods as a JSON array of `{"name", "citations"}`.
///
/// # Safety
/// `kb` is a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn prefonto_top_cited(kb: *const PrefontoKb, k: usize, out: *mut *mut c_char) -> PrefontoStatus {
    guard(|| {
        let kb = kb_ref(kb)?;
        let list = analytics::top_cited(&kb.mkb, k)?;
        let v: Vec<Value> =
            list.entries.iter().map(|e| json!({ "name": e.subject.compact(), "citations": e.score })).collect();
        put_string(out, Value::from(v).to_string())
    })
}

/// Instance counts of the main classes as a JSON object.
///
/// # Safety
/// `kb` is a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn prefonto_stats(kb: *const PrefontoKb, out: *mut *mut c_char) -> PrefontoStatus {
    guard(|| {
        let kb = kb_ref(kb)?;
        let map: serde_json::Map<String, Value> =
            corpus::corpus_stats(&kb.mkb).into_iter().map(|(c, n)| (c.compact(), json!(n))).collect();
        put_string(out, Value::Object(map).to_string())
    })
}
