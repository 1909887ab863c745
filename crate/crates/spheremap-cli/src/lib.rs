//! Plumbing for the `spheremap` binary: the expression and document
//! parsers, JSON report builders, and the report recheck.

pub mod document;
pub mod parse;
pub mod report;
