//! Harness around `blocklab-core`: the analysis pipeline, the verdict
//! checks, report serialization, the built-in corpus, and JUnit output.

pub mod analyze;
pub mod checks;
pub mod corpus;
pub mod junit;
pub mod matching;
pub mod report;
