//! Command-line front end. [`run`] does all the work so it can be driven
//! from tests; the binary only wires it to the process streams.
//!
//! Exit codes: 0 success, 1 domain errors (invalid or inconsistent input,
//! unknown entities, manifest mismatch), 2 usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analytics::{self, AnalyticsError, Matrix, MatrixConfig, RankedList};
use crate::corpus::{self, check_stats, corpus_stats, merge_sources, CorpusError, Source};
use crate::model::{validate, Datatype, Iri, Literal};
use crate::query::{self, QueryError, QueryMode};
use crate::reasoner::{materialize, MaterializedKB};
use crate::turtle::Mode;

/// File name that `--config` falls back to the bundled copy for.
const BUNDLED_CONFIG_NAME: &str = "table5-config.json";

#[derive(Parser, Debug)]
#[command(name = "prefonto", version, about = "Query and analyze the PMOMH knowledge base")]
struct Cli {
    /// Output format. Matrix output is CSV unless json is asked for.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Inputs {
    /// Turtle files to load instead of the bundled corpus.
    files: Vec<PathBuf>,
    /// Reject unknown vocabulary in the given files instead of keeping it as annotations.
    #[arg(long)]
    strict: bool,
    /// Load the bundled corpus in addition to the given files.
    #[arg(long)]
    with_corpus: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Instances,
    Subclasses,
    Superclasses,
}

impl From<ModeArg> for QueryMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Instances => QueryMode::Instances,
            ModeArg::Subclasses => QueryMode::Subclasses,
            ModeArg::Superclasses => QueryMode::Superclasses,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check syntax, vocabulary, declarations and consistency.
    Validate(Inputs),
    /// Evaluate a class expression.
    Query {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(short = 'q', long = "query", value_name = "EXPR")]
        query: String,
        #[arg(long, value_enum, default_value = "instances")]
        mode: ModeArg,
    },
    /// Methods using a kind of preference information, optionally filtered by problem properties.
    Recommend {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_name = "CLASS")]
        preference: String,
        #[arg(long = "constraint", value_name = "PROP=LITERAL")]
        constraints: Vec<String>,
    },
    /// Tables and rankings over the knowledge base.
    #[command(subcommand)]
    Report(Report),
    /// Empty cells of the classification matrix.
    Gaps {
        #[command(flatten)]
        inputs: Inputs,
        /// Matrix configuration; defaults to the bundled one.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Instance counts of the main classes.
    Stats(Inputs),
}

#[derive(Subcommand, Debug)]
enum Report {
    /// Preference category by search family.
    Matrix {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Most cited methods.
    Cited {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(short = 'k', default_value_t = 5)]
        k: usize,
    },
    /// Researchers by number of methods.
    Authors {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(short = 'k', default_value_t = 5)]
        k: usize,
    },
    /// Members of a class per publishing year.
    Years {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "PMOMH")]
        class: String,
    },
    /// Comparison, extension, library and reference facts of one individual.
    Relations {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        individual: String,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Io { .. } | CorpusError::Parse { .. } => Failure::Usage(e.to_string()),
            CorpusError::Inconsistent(ref report) => {
                let mut msg = e.to_string();
                for v in &report.violations {
                    msg.push_str(&format!("\n  {} is both {} and {}", v.individual, v.class_a, v.class_b));
                }
                Failure::Domain(msg)
            }
            _ => {
                let mut msg = e.to_string();
                for d in e.diagnostics() {
                    msg.push_str(&format!("\n  {d}"));
                }
                Failure::Domain(msg)
            }
        }
    }
}

impl From<QueryError> for Failure {
    fn from(e: QueryError) -> Self {
        match e {
            QueryError::Parse { .. } => Failure::Usage(format!("query: {e}")),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<AnalyticsError> for Failure {
    fn from(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::Query(q) => q.into(),
            AnalyticsError::Config(_) | AnalyticsError::ZeroK => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command. Results go to
/// `out`, diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let stream: &mut dyn Write = if code == 0 { out } else { err };
            let _ = stream.write_all(text.as_bytes());
            return if code == 0 { 0 } else { 2 };
        }
    };
    let mut ctx = Ctx { format: cli.format, out, err };
    match ctx.dispatch(cli.command) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message());
            f.code()
        }
    }
}

struct Ctx<'a> {
    format: Format,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

struct Loaded {
    mkb: MaterializedKB,
    inputs: Vec<String>,
    /// Set when the inputs are exactly the bundled corpus.
    bundled: Option<corpus::Bundled>,
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Usage(format!("writing output: {e}"))
}

fn resolve_name(name: &str) -> Result<Iri, Failure> {
    Iri::resolve(name).map_err(|e| Failure::Usage(e.to_string()))
}

/// `true`, `false`, an integer, or a string (quotes optional).
fn parse_literal(text: &str) -> Literal {
    match text {
        "true" => Literal::Boolean(true),
        "false" => Literal::Boolean(false),
        _ => match Literal::new(text, Datatype::Integer) {
            Ok(i) => i,
            Err(_) => {
                let unquoted = text.strip_prefix('"').and_then(|t| t.strip_suffix('"')).unwrap_or(text);
                Literal::string(unquoted)
            }
        },
    }
}

fn names(iris: &[Iri]) -> Vec<String> {
    iris.iter().map(Iri::compact).collect()
}

fn csv_string(records: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in records {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv of UTF-8 fields")
}

impl Ctx<'_> {
    fn dispatch(&mut self, command: Command) -> Outcome {
        match command {
            Command::Validate(inputs) => self.validate(&inputs),
            Command::Query { inputs, query, mode } => self.query(&inputs, &query, mode.into()),
            Command::Recommend { inputs, preference, constraints } => self.recommend(&inputs, &preference, &constraints),
            Command::Report(Report::Matrix { inputs, config }) => self.matrix(&inputs, config.as_deref()),
            Command::Report(Report::Cited { inputs, k }) => {
                let l = self.load(&inputs)?;
                let list = analytics::top_cited(&l.mkb, k)?;
                self.ranked("report cited", &l, &list, "citations")
            }
            Command::Report(Report::Authors { inputs, k }) => {
                let l = self.load(&inputs)?;
                let list = analytics::top_authors(&l.mkb, k)?;
                self.ranked("report authors", &l, &list, "methods")
            }
            Command::Report(Report::Years { inputs, class }) => self.years(&inputs, &class),
            Command::Report(Report::Relations { inputs, individual }) => self.relations(&inputs, &individual),
            Command::Gaps { inputs, config } => self.gaps(&inputs, config.as_deref()),
            Command::Stats(inputs) => self.stats(&inputs),
        }
    }

    fn sources(&self, inputs: &Inputs) -> Result<(Vec<Source>, Option<corpus::Bundled>), Failure> {
        let mode = if inputs.strict { Mode::Strict } else { Mode::Lenient };
        if inputs.files.is_empty() {
            let b = corpus::bundled()?;
            return Ok((b.sources.clone(), Some(b)));
        }
        let mut sources = Vec::new();
        if inputs.with_corpus {
            sources.extend(corpus::bundled()?.sources);
        }
        for f in &inputs.files {
            sources.push(Source::read(f, mode)?);
        }
        Ok((sources, None))
    }

    fn load(&mut self, inputs: &Inputs) -> Result<Loaded, Failure> {
        let (sources, bundled) = self.sources(inputs)?;
        let mkb = corpus::load_sources(&sources)?;
        if let Some(b) = &bundled {
            check_stats(&mkb, &b.manifest)?;
        }
        Ok(Loaded { mkb, inputs: sources.iter().map(|s| s.name.clone()).collect(), bundled })
    }

    fn emit_text(&mut self, text: &str) -> Outcome {
        self.out.write_all(text.as_bytes()).map_err(io_failure)
    }

    fn emit_json(&mut self, command: &str, inputs: &[String], result: Value) -> Outcome {
        let envelope = json!({ "command": command, "inputs": inputs, "result": result });
        let mut text = serde_json::to_string_pretty(&envelope).expect("JSON value serializes");
        text.push('\n');
        self.emit_text(&text)
    }

    fn lines(&mut self, command: &str, inputs: &[String], items: &[String]) -> Outcome {
        match self.format {
            Format::Json => self.emit_json(command, inputs, json!(items)),
            Format::Text | Format::Csv => {
                let text: String = items.iter().map(|i| format!("{i}\n")).collect();
                self.emit_text(&text)
            }
        }
    }

    fn validate(&mut self, inputs: &Inputs) -> Outcome {
        let (sources, bundled) = self.sources(inputs)?;
        let input_names: Vec<String> = sources.iter().map(|s| s.name.clone()).collect();
        let (diagnostics, violations) = match merge_sources(&sources) {
            Err(e @ CorpusError::Recognize { .. }) => (e.diagnostics().to_vec(), Vec::new()),
            Err(e) => return Err(e.into()),
            Ok(kb) => {
                let diagnostics = validate(&kb);
                if diagnostics.is_empty() {
                    (diagnostics, materialize(&kb).check_consistency().violations)
                } else {
                    (diagnostics, Vec::new())
                }
            }
        };
        for d in &diagnostics {
            writeln!(self.err, "{d}").map_err(io_failure)?;
        }
        for v in &violations {
            writeln!(self.err, "violation: {} is both {} and {}", v.individual, v.class_a, v.class_b)
                .map_err(io_failure)?;
            for step in &v.trace {
                writeln!(self.err, "  {} [{}]", step.fact, step.rule).map_err(io_failure)?;
            }
        }
        match self.format {
            Format::Json => self.emit_json(
                "validate",
                &input_names,
                json!({ "diagnostics": diagnostics, "violations": violations }),
            )?,
            _ => self.emit_text(&format!("{} diagnostics\n{} violations\n", diagnostics.len(), violations.len()))?,
        }
        if !diagnostics.is_empty() || !violations.is_empty() {
            return Err(Failure::Domain(format!(
                "{} diagnostics, {} violations",
                diagnostics.len(),
                violations.len()
            )));
        }
        if let Some(b) = bundled {
            // Only reached for a clean corpus, so loading again cannot fail on validity.
            b.load()?;
        }
        Ok(())
    }

    fn query(&mut self, inputs: &Inputs, text: &str, mode: QueryMode) -> Outcome {
        // Syntax errors are reported before any file is read.
        let expr = query::parse_query(text)?;
        let l = self.load(inputs)?;
        let r = query::run_expr(&l.mkb, &expr, mode)?;
        self.lines("query", &l.inputs, &names(&r.results))
    }

    fn recommend(&mut self, inputs: &Inputs, preference: &str, constraints: &[String]) -> Outcome {
        let pref = resolve_name(preference)?;
        let parsed = constraints
            .iter()
            .map(|c| {
                let (p, lit) = c
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage(format!("constraint {c:?} is not of the form PROP=LITERAL")))?;
                Ok((resolve_name(p.trim())?, parse_literal(lit.trim())))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        let l = self.load(inputs)?;
        let r = analytics::recommend(&l.mkb, &pref, &parsed)?;
        self.lines("recommend", &l.inputs, &names(&r.results))
    }

    fn matrix_config(&self, path: Option<&Path>, loaded: &Loaded) -> Result<MatrixConfig, Failure> {
        let text = match path {
            Some(p) => match std::fs::read_to_string(p) {
                Ok(t) => t,
                Err(e) if e.kind() == std::io::ErrorKind::NotFound && p == Path::new(BUNDLED_CONFIG_NAME) => {
                    self.bundled_config(loaded)?
                }
                Err(e) => return Err(Failure::Usage(format!("{}: {e}", p.display()))),
            },
            None => self.bundled_config(loaded)?,
        };
        Ok(MatrixConfig::from_json(&text)?)
    }

    fn bundled_config(&self, loaded: &Loaded) -> Result<String, Failure> {
        match &loaded.bundled {
            Some(b) => Ok(b.matrix_config.clone()),
            None => Ok(corpus::bundled()?.matrix_config),
        }
    }

    fn build_matrix(&mut self, inputs: &Inputs, config: Option<&Path>) -> Result<(Loaded, Matrix), Failure> {
        let l = self.load(inputs)?;
        let config = self.matrix_config(config, &l)?;
        let m = analytics::classification_matrix(&l.mkb, &config)?;
        Ok((l, m))
    }

    fn matrix(&mut self, inputs: &Inputs, config: Option<&Path>) -> Outcome {
        let (l, m) = self.build_matrix(inputs, config)?;
        match self.format {
            Format::Json => self.emit_json("report matrix", &l.inputs, m.to_json()),
            _ => self.emit_text(&m.to_csv()),
        }
    }

    fn gaps(&mut self, inputs: &Inputs, config: Option<&Path>) -> Outcome {
        let (l, m) = self.build_matrix(inputs, config)?;
        let gaps = analytics::find_gaps(&m);
        match self.format {
            Format::Json => self.emit_json("gaps", &l.inputs, json!(gaps)),
            Format::Csv => {
                let mut records = vec![vec!["preference".to_owned(), "family".to_owned()]];
                records.extend(gaps.iter().map(|g| vec![g.row.clone(), g.column.clone()]));
                self.emit_text(&csv_string(&records))
            }
            Format::Text => {
                let text: String = gaps.iter().map(|g| format!("{}\t{}\n", g.row, g.column)).collect();
                self.emit_text(&text)
            }
        }
    }

    fn ranked(&mut self, command: &str, l: &Loaded, list: &RankedList, score: &str) -> Outcome {
        match self.format {
            Format::Json => {
                let entries: Vec<Value> =
                    list.entries.iter().map(|e| json!({ "name": e.subject.compact(), score: e.score })).collect();
                self.emit_json(command, &l.inputs, json!(entries))
            }
            Format::Csv => {
                let mut records = vec![vec!["rank".to_owned(), "name".to_owned(), score.to_owned()]];
                records.extend(
                    list.entries
                        .iter()
                        .enumerate()
                        .map(|(i, e)| vec![(i + 1).to_string(), e.subject.compact(), e.score.to_string()]),
                );
                self.emit_text(&csv_string(&records))
            }
            Format::Text => {
                let text: String = list
                    .entries
                    .iter()
                    .enumerate()
                    .map(|(i, e)| format!("{}\t{}\t{}\n", i + 1, e.subject.compact(), e.score))
                    .collect();
                self.emit_text(&text)
            }
        }
    }

    fn years(&mut self, inputs: &Inputs, class: &str) -> Outcome {
        let class = resolve_name(class)?;
        let l = self.load(inputs)?;
        let h = analytics::year_histogram(&l.mkb, &class)?;
        match self.format {
            Format::Json => self.emit_json(
                "report years",
                &l.inputs,
                json!({ "class": class.compact(), "counts": h.counts, "unknown": h.unknown, "total": h.total() }),
            ),
            Format::Csv => {
                let mut records = vec![vec!["year".to_owned(), "count".to_owned()]];
                records.extend(h.counts.iter().map(|(y, n)| vec![y.to_string(), n.to_string()]));
                records.push(vec!["unknown".to_owned(), h.unknown.to_string()]);
                self.emit_text(&csv_string(&records))
            }
            Format::Text => {
                let mut text: String = h.counts.iter().map(|(y, n)| format!("{y}\t{n}\n")).collect();
                text.push_str(&format!("unknown\t{}\n", h.unknown));
                self.emit_text(&text)
            }
        }
    }

    fn relations(&mut self, inputs: &Inputs, individual: &str) -> Outcome {
        let individual = resolve_name(individual)?;
        let l = self.load(inputs)?;
        let r = analytics::relation_report(&l.mkb, &individual)?;
        match self.format {
            Format::Json => {
                let groups: serde_json::Map<String, Value> =
                    r.groups.iter().map(|g| (g.property.clone(), json!(g.values))).collect();
                self.emit_json(
                    "report relations",
                    &l.inputs,
                    json!({ "individual": individual.compact(), "relations": groups }),
                )
            }
            Format::Csv => {
                let mut records = vec![vec!["property".to_owned(), "value".to_owned()]];
                for g in &r.groups {
                    records.extend(g.values.iter().map(|v| vec![g.property.clone(), v.clone()]));
                }
                self.emit_text(&csv_string(&records))
            }
            Format::Text => {
                let text: String = r
                    .groups
                    .iter()
                    .filter(|g| !g.values.is_empty())
                    .map(|g| format!("{}\t{}\n", g.property, g.values.join(", ")))
                    .collect();
                self.emit_text(&text)
            }
        }
    }

    fn stats(&mut self, inputs: &Inputs) -> Outcome {
        let (sources, bundled) = self.sources(inputs)?;
        let input_names: Vec<String> = sources.iter().map(|s| s.name.clone()).collect();
        let mkb = corpus::load_sources(&sources)?;
        let stats = corpus_stats(&mkb);
        match self.format {
            Format::Json => {
                let map: serde_json::Map<String, Value> =
                    stats.iter().map(|(c, n)| (c.compact(), json!(n))).collect();
                self.emit_json("stats", &input_names, Value::Object(map))?
            }
            Format::Csv => {
                let mut records = vec![vec!["class".to_owned(), "count".to_owned()]];
                records.extend(stats.iter().map(|(c, n)| vec![c.compact(), n.to_string()]));
                self.emit_text(&csv_string(&records))?
            }
            Format::Text => {
                let text: String = stats.iter().map(|(c, n)| format!("{}\t{n}\n", c.compact())).collect();
                self.emit_text(&text)?
            }
        }
        // Counts are printed even when they disagree with the manifest.
        if let Some(b) = bundled {
            check_stats(&mkb, &b.manifest)?;
        }
        Ok(())
    }
}
