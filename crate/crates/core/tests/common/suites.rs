//! Randomized suites shared by the property tests and the acceptance run.
//! Each returns a one-line summary on success and the failing seed otherwise.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use prefonto::model::{Axiom, ClassExpression, EntityDeclaration, EntityKind, Iri, KnowledgeBase};
use prefonto::query::eval;
use prefonto::reasoner::{materialize, materialize_with, Schedule};
use prefonto::turtle::{parse_turtle, read_kb, serialize_turtle, Mode};

use super::gen::{random_annotated_kb, random_dag, random_expr, random_kb, Limits};
use super::oracle::{brute_force_eval, floyd_warshall, isomorphic, line_col, naive_closure};

pub struct ReasonerCounts {
    pub kbs: usize,
    pub dags: usize,
    pub schedules: usize,
}

pub fn reasoner_suite(seed: u64, counts: ReasonerCounts) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for n in 0..counts.kbs {
        let s = rng.random();
        let (kb, _) = random_kb(&mut StdRng::seed_from_u64(s), Limits::default());
        let got = materialize(&kb).facts();
        let want = naive_closure(&kb);
        if got != want {
            let missing: Vec<_> = want.difference(&got).take(3).map(ToString::to_string).collect();
            let extra: Vec<_> = got.difference(&want).take(3).map(ToString::to_string).collect();
            return Err(format!("kb #{n} (seed {s}): missing {missing:?}, extra {extra:?}"));
        }
        for k in 0..counts.schedules {
            let other = materialize_with(&kb, Schedule::Random(s ^ (k as u64 + 1))).facts();
            if other != got {
                return Err(format!("kb #{n} (seed {s}): random schedule {k} gives a different closure"));
            }
        }
    }
    for n in 0..counts.dags {
        let s = rng.random();
        let mut r = StdRng::seed_from_u64(s);
        let nodes = r.random_range(1..=50);
        let edges = random_dag(&mut r, nodes);
        let class = |i: usize| Iri::pmomh(&format!("N{i}"));
        let mut kb = KnowledgeBase::new();
        for i in 0..nodes {
            kb.declare(EntityDeclaration::new(class(i), EntityKind::Class)).unwrap();
        }
        for &(a, b) in &edges {
            kb.add_axiom(Axiom::subclass(class(a), class(b)));
        }
        let mkb = materialize(&kb);
        let reach = floyd_warshall(nodes, &edges);
        for (i, row) in reach.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                if mkb.is_subclass_of(&class(i), &class(j)).unwrap() != want {
                    return Err(format!("dag #{n} (seed {s}): N{i} subClassOf N{j} should be {want}"));
                }
            }
        }
    }
    Ok(format!(
        "{} KBs match the naive fixpoint, {} DAG closures match Floyd-Warshall, {} random schedules each",
        counts.kbs, counts.dags, counts.schedules
    ))
}

pub fn query_suite(seed: u64, pairs: usize) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for n in 0..pairs {
        let s = rng.random();
        let mut r = StdRng::seed_from_u64(s);
        let (kb, v) = random_kb(&mut r, Limits::default());
        let mkb = materialize(&kb);
        let a = random_expr(&mut r, &v, 3);
        let b = random_expr(&mut r, &v, 3);
        let ev = |e: &ClassExpression| eval(&mkb, e).map_err(|err| format!("pair #{n} (seed {s}): {err}"));
        let (ea, eb) = (ev(&a)?, ev(&b)?);
        let not = |e: &ClassExpression| ClassExpression::not(e.clone());
        let and = ClassExpression::And(vec![a.clone(), b.clone()]);
        let or = ClassExpression::Or(vec![a.clone(), b.clone()]);
        let fail = |what: &str| Err(format!("pair #{n} (seed {s}): {what} fails for {a:?} / {b:?}"));
        if ev(&and)? != ea.intersection(&eb).cloned().collect::<BTreeSet<_>>() {
            return fail("intersection");
        }
        if ev(&or)? != ea.union(&eb).cloned().collect::<BTreeSet<_>>() {
            return fail("union");
        }
        // Double negation holds relative to the individual domain.
        let inds = mkb.individuals();
        if ev(&not(&not(&a)))? != ea.intersection(inds).cloned().collect::<BTreeSet<_>>() {
            return fail("double negation");
        }
        if ev(&not(&and))? != ev(&ClassExpression::Or(vec![not(&a), not(&b)]))? {
            return fail("De Morgan (and)");
        }
        if ev(&not(&or))? != ev(&ClassExpression::And(vec![not(&a), not(&b)]))? {
            return fail("De Morgan (or)");
        }
        for e in [&a, &b, &and, &or] {
            if ev(e)?.intersection(inds).cloned().collect::<BTreeSet<_>>() != brute_force_eval(&mkb, e) {
                return fail("brute force");
            }
        }
    }
    Ok(format!("{pairs} (KB, expression) pairs satisfy the identities and match brute force"))
}

pub struct ParserCounts {
    pub round_trips: usize,
    pub fuzz_inputs: usize,
}

fn round_trip(text: &[u8], what: &str) -> Result<(), String> {
    let g1 = parse_turtle(text).map_err(|e| format!("{what}: {e}"))?;
    let kb1 = read_kb(text, Mode::Strict).map_err(|e| format!("{what}: {e}"))?;
    let out = serialize_turtle(&kb1);
    let g2 = parse_turtle(out.as_bytes()).map_err(|e| format!("{what}: reparse: {e}"))?;
    let kb2 = read_kb(out.as_bytes(), Mode::Strict).map_err(|e| format!("{what}: re-recognize: {e}"))?;
    if kb1 != kb2 {
        return Err(format!("{what}: knowledge base changed over a round trip"));
    }
    let out2 = serialize_turtle(&kb2);
    let g3 = parse_turtle(out2.as_bytes()).map_err(|e| format!("{what}: {e}"))?;
    if !isomorphic(&g2, &g3)? {
        return Err(format!("{what}: serialized graph is not isomorphic after a second round trip"));
    }
    if !isomorphic(&g1, &g2)? {
        return Err(format!("{what}: parse of the serialization is not isomorphic to the original"));
    }
    Ok(())
}

/// Every single-byte substitution of `src` either parses or reports an
/// error whose line and column match its offset. Returns the number of
/// variants tried.
pub fn corruption(src: &[u8]) -> Result<usize, String> {
    let replacements: Vec<u8> = (0x20..0x7f).chain([b'\n', b'\t', b'\r', 0, 0x80, 0xc3, 0xff]).collect();
    let mut buf = src.to_vec();
    let mut n = 0;
    for pos in 0..src.len() {
        for &b in &replacements {
            if b == src[pos] {
                continue;
            }
            buf[pos] = b;
            n += 1;
            match parse_turtle(&buf) {
                Ok(_) => {}
                Err(e) => {
                    if e.offset > buf.len() || (e.line, e.column) != line_col(&buf, e.offset) {
                        return Err(format!("byte {pos} -> {b:#04x}: {e} at offset {}", e.offset));
                    }
                }
            }
        }
        buf[pos] = src[pos];
    }
    Ok(n)
}

const TOKENS: [&str; 24] = [
    "@prefix", ":", "<http://x/a>", "a", ".", ";", ",", "[", "]", "(", ")", "\"s\"", "'''x'''", "1", "-2.5",
    "true", "^^", "xsd:string", "_:b", "@en", "owl:Class", "\\u00e9", "#c\n", " ",
];

fn fuzz_input(rng: &mut StdRng, seeds: &[&[u8]]) -> Vec<u8> {
    let len = rng.random_range(0..=4096);
    match rng.random_range(0..3) {
        0 => (0..len).map(|_| rng.random()).collect(),
        1 => {
            let mut out = Vec::new();
            while out.len() < len {
                out.extend_from_slice(TOKENS[rng.random_range(0..TOKENS.len())].as_bytes());
            }
            out.truncate(4096);
            out
        }
        _ => {
            let src = seeds[rng.random_range(0..seeds.len())];
            let mut out = src[..src.len().min(4096)].to_vec();
            for _ in 0..rng.random_range(1..8) {
                if out.is_empty() {
                    break;
                }
                let i = rng.random_range(0..out.len());
                match rng.random_range(0..3) {
                    0 => out[i] = rng.random(),
                    1 => {
                        out.remove(i);
                    }
                    _ => out.truncate(i),
                }
            }
            out
        }
    }
}

pub fn parser_suite(seed: u64, corpus_docs: &[&[u8]], fixture: &[u8], counts: ParserCounts) -> Result<String, String> {
    for (i, doc) in corpus_docs.iter().enumerate() {
        round_trip(doc, &format!("corpus file {i}"))?;
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for n in 0..counts.round_trips {
        let s = rng.random();
        let kb = random_annotated_kb(&mut StdRng::seed_from_u64(s), Limits::default());
        let text = serialize_turtle(&kb);
        let back = read_kb(text.as_bytes(), Mode::Strict).map_err(|e| format!("kb #{n} (seed {s}): {e}\n{text}"))?;
        if back != kb {
            return Err(format!("kb #{n} (seed {s}): round trip changed the knowledge base\n{text}"));
        }
        round_trip(text.as_bytes(), &format!("kb #{n} (seed {s})"))?;
    }

    let mut seeds: Vec<&[u8]> = corpus_docs.to_vec();
    seeds.push(fixture);
    let mut slowest = Duration::ZERO;
    for n in 0..counts.fuzz_inputs {
        let input = fuzz_input(&mut rng, &seeds);
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| match parse_turtle(&input) {
            Ok(g) => {
                let _ = prefonto::turtle::recognize(&g, Mode::Lenient);
            }
            Err(e) => assert!(e.offset <= input.len()),
        }));
        slowest = slowest.max(start.elapsed());
        if outcome.is_err() {
            return Err(format!("fuzz input #{n} panicked: {:?}", String::from_utf8_lossy(&input)));
        }
        if slowest > Duration::from_secs(1) {
            return Err(format!("fuzz input #{n} took {slowest:?}"));
        }
    }

    let variants = corruption(fixture)?;
    Ok(format!(
        "{} corpus files and {} random KBs round-trip, {} fuzz inputs without panic (slowest {:?}), {} corruptions located",
        corpus_docs.len(),
        counts.round_trips,
        counts.fuzz_inputs,
        slowest,
        variants
    ))
}
