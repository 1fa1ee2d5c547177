//! Detection of non-descriptive JUnit test names.
//!
//! A test name is descriptive when the information it carries — the action
//! being tested, the predicate being checked and the scenario it runs under
//! — matches what the test body actually does. This crate parses Java test
//! sources into a statement-level model, extracts that (action, predicate,
//! scenario) triple independently from the name (ten name patterns over
//! split and part-of-speech-tagged words) and from the body (seventeen
//! structural patterns), compares the two sides and reports each name as
//! descriptive, non-descriptive or unknown, with add/remove/replace
//! suggestions.
//!
//! The corpus-mining pipeline that produced the body patterns is included:
//! statement abstraction to numeric code sequences and a closed sequential
//! pattern miner with spanning and grouping filters.

pub mod abstraction;
pub mod body;
pub mod comparison;
pub mod error;
pub mod mining;
pub mod model;
pub mod name;
pub mod parser;
pub mod report;

pub use body::{match_body, BodyMatch, BodyPatternId};
pub use comparison::{
    classify, normalize, pieces_match, suggest, Classification, ComponentResult, Outcome,
    Suggestion,
};
pub use error::{Error, Result};
pub use model::{
    Component, Expression, Extraction, ExtractionSource, Location, Section, SectionRole,
    Statement, StatementKind, TestCase,
};
pub use name::{NameEngine, NameMatch, NamePatternId};
pub use parser::{parse_source, parse_test_classes, Diagnostic, ScanOutcome};
pub use report::{
    analyze_project, compute_match_stats, render_report, AnalyzeOptions, ProjectReport,
    ReportFormat, TestReport,
};
