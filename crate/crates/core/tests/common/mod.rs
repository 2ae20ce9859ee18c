//! Helpers shared by the integration tests. Not every test file uses all of it.
#![allow(dead_code)]

pub mod gen;
pub mod oracle;
pub mod suites;
