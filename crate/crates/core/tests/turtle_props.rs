mod common;

use common::suites::{corruption, parser_suite, ParserCounts};
use prefonto::corpus::bundled;
use prefonto::turtle::{parse_turtle, read_kb, Mode};

const FIXTURE: &[u8] = include_bytes!("fixtures/small.ttl");

#[test]
fn fixture_is_valid() {
    let kb = read_kb(FIXTURE, Mode::Strict).unwrap();
    assert!(prefonto::model::validate(&kb).is_empty());
    assert_eq!(parse_turtle(FIXTURE).unwrap().len(), 22);
}

#[test]
fn round_trip_and_fuzz() {
    let b = bundled().unwrap();
    let docs: Vec<&[u8]> = b.sources.iter().map(|s| s.bytes.as_slice()).collect();
    parser_suite(0x5eed_0003, &docs, FIXTURE, ParserCounts { round_trips: 500, fuzz_inputs: 10_000 }).unwrap();
}

#[test]
fn truncated_string_reports_its_line() {
    let src = b"@prefix : <https://w3id.org/pmomh#> .\n:a :b \"open";
    let e = parse_turtle(src).unwrap_err();
    assert_eq!(e.line, 2);
    assert!(corruption(b":a :b :c .").unwrap() > 0);
}
