use std::ffi::{c_char, CStr, CString};
use std::ptr;

use prefonto_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { prefonto_string_free(s) };
    v
}

fn last_error() -> String {
    let p = prefonto_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn bundled() -> *mut PrefontoKb {
    let mut kb = ptr::null_mut();
    assert_eq!(unsafe { prefonto_kb_load_bundled(&mut kb) }, PrefontoStatus::Ok);
    assert!(prefonto_last_error().is_null());
    kb
}

fn query(kb: *const PrefontoKb, q: &str, mode: i32) -> Result<String, PrefontoStatus> {
    let q = CString::new(q).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { prefonto_query(kb, q.as_ptr(), mode, &mut out) } {
        PrefontoStatus::Ok => Ok(take(out)),
        s => {
            assert!(out.is_null());
            Err(s)
        }
    }
}

#[test]
fn bundled_round_trip() {
    let kb = bundled();
    assert_eq!(query(kb, "canSolve value MOKP", PREFONTO_MODE_INSTANCES).unwrap(), r#"["EMAPS","IEM-CO","iPMA"]"#);
    assert_eq!(query(kb, "PMOMH", PREFONTO_MODE_SUPERCLASSES).unwrap(), r#"["MOMH","MetaHeuristic","Preference_based"]"#);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { prefonto_top_cited(kb, 2, &mut out) }, PrefontoStatus::Ok);
    assert_eq!(take(out), r#"[{"citations":4236,"name":"MOGA"},{"citations":507,"name":"R-NSGA-II"}]"#);

    assert_eq!(unsafe { prefonto_stats(kb, &mut out) }, PrefontoStatus::Ok);
    let stats: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(stats["PMOMH"], 85);

    assert_eq!(unsafe { prefonto_matrix_csv(kb, ptr::null(), &mut out) }, PrefontoStatus::Ok);
    assert_eq!(take(out), include_str!("../../core/tests/golden/table5.csv"));

    let pref = CString::new("ReferencePoint").unwrap();
    let cons = CString::new(r#"{"isDiscreteProblem": true}"#).unwrap();
    assert_eq!(unsafe { prefonto_recommend(kb, pref.as_ptr(), cons.as_ptr(), &mut out) }, PrefontoStatus::Ok);
    let all: Vec<String> = serde_json::from_str(&take(out)).unwrap();
    assert!(!all.is_empty());
    unsafe { prefonto_kb_free(kb) };
}

#[test]
fn errors_are_reported() {
    let kb = bundled();
    assert_eq!(query(kb, "PMOMH and", 0), Err(PrefontoStatus::QuerySyntax));
    assert!(last_error().contains("column"));
    assert_eq!(query(kb, "Nope", 0), Err(PrefontoStatus::Query));
    assert_eq!(query(kb, "PMOMH", 7), Err(PrefontoStatus::BadArgument));
    assert_eq!(query(ptr::null(), "PMOMH", 0), Err(PrefontoStatus::NullArgument));

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { prefonto_query(kb, ptr::null(), 0, &mut out) }, PrefontoStatus::NullArgument);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { prefonto_query(kb, bad.as_ptr().cast(), 0, &mut out) }, PrefontoStatus::InvalidUtf8);
    assert_eq!(unsafe { prefonto_top_cited(kb, 0, &mut out) }, PrefontoStatus::Query);
    let pref = CString::new("ReferencePoint").unwrap();
    let cons = CString::new("[1]").unwrap();
    assert_eq!(unsafe { prefonto_recommend(kb, pref.as_ptr(), cons.as_ptr(), &mut out) }, PrefontoStatus::BadArgument);
    // Success clears the error.
    assert!(query(kb, "PMOMH", 0).is_ok());
    assert!(prefonto_last_error().is_null());
    unsafe { prefonto_kb_free(kb) };
}

#[test]
fn loading_from_memory_and_files() {
    let ttl = "@prefix : <https://w3id.org/pmomh#> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
               :A a owl:Class . :B a owl:Class . :A owl:disjointWith :B .\n:x a owl:NamedIndividual, :A, :B .\n";
    let text = CString::new(ttl).unwrap();
    let mut kb = ptr::null_mut();
    assert_eq!(unsafe { prefonto_kb_load_turtle(text.as_ptr(), true, &mut kb) }, PrefontoStatus::Inconsistent);
    assert!(kb.is_null());
    assert!(last_error().contains("inconsistent"));

    let broken = CString::new(":A a").unwrap();
    assert_eq!(unsafe { prefonto_kb_load_turtle(broken.as_ptr(), true, &mut kb) }, PrefontoStatus::Parse);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ok.ttl");
    std::fs::write(&path, ttl.replace(":A owl:disjointWith :B .", "")).unwrap();
    let p = CString::new(path.to_str().unwrap()).unwrap();
    let paths = [p.as_ptr()];
    assert_eq!(unsafe { prefonto_kb_load_files(paths.as_ptr(), 1, true, false, &mut kb) }, PrefontoStatus::Ok);
    assert_eq!(query(kb, "A and B", 0).unwrap(), r#"["x"]"#);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { prefonto_matrix_csv(kb, ptr::null(), &mut out) }, PrefontoStatus::NullArgument);
    unsafe { prefonto_kb_free(kb) };

    let missing = CString::new(dir.path().join("missing.ttl").to_str().unwrap()).unwrap();
    let paths = [missing.as_ptr()];
    assert_eq!(unsafe { prefonto_kb_load_files(paths.as_ptr(), 1, true, false, &mut kb) }, PrefontoStatus::Io);
    assert_eq!(unsafe { prefonto_kb_load_files(ptr::null(), 1, true, false, &mut kb) }, PrefontoStatus::NullArgument);
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        prefonto_kb_free(ptr::null_mut());
        prefonto_string_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(prefonto_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/prefonto.h");
    for f in [
        "prefonto_version", "prefonto_last_error", "prefonto_string_free", "prefonto_kb_load_bundled",
        "prefonto_kb_load_files", "prefonto_kb_load_turtle", "prefonto_kb_free", "prefonto_query",
        "prefonto_recommend", "prefonto_matrix_csv", "prefonto_top_cited", "prefonto_stats",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("PREFONTO_STATUS_QUERY_SYNTAX = 8"));
}

/// Compiles and runs a C program against the header and static library when
/// a C compiler is on PATH.
#[test]
fn c_program_links() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let lib_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../target/debug");
    let lib = lib_dir.join("libprefonto_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    std::fs::write(
        &src,
        r#"#include "prefonto.h"
#include <stdio.h>
#include <string.h>
int main(void) {
    PrefontoKb *kb = NULL;
    if (prefonto_kb_load_bundled(&kb) != PREFONTO_STATUS_OK) return 1;
    char *out = NULL;
    if (prefonto_query(kb, "canSolve value MOKP", PREFONTO_MODE_INSTANCES, &out) != PREFONTO_STATUS_OK) return 2;
    int ok = strcmp(out, "[\"EMAPS\",\"IEM-CO\",\"iPMA\"]") == 0;
    prefonto_string_free(out);
    if (prefonto_query(kb, "(", 0, &out) != PREFONTO_STATUS_QUERY_SYNTAX || prefonto_last_error() == NULL) return 3;
    prefonto_kb_free(kb);
    return ok ? 0 : 4;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("t");
    let include = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = std::process::Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::process::Command::new(&exe).status().unwrap().code(), Some(0));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
