//! End-to-end checks over the Java fixture corpus.

use std::path::{Path, PathBuf};

use namefit_core::comparison::Outcome;
use namefit_core::report::{analyze_project, render_records, parse_records, AnalyzeOptions};
use namefit_core::{parse_test_classes, BodyPatternId, NamePatternId, StatementKind};

fn fixture(path: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(path)
}

#[test]
fn approach_example_parses_to_two_statements() {
    let out = parse_test_classes(&fixture("figures")).unwrap();
    let test = out
        .tests
        .iter()
        .find(|t| t.name == "testGetSSLProtocol")
        .unwrap();
    assert_eq!(test.statements.len(), 2);
    assert_eq!(test.statements[0].kind, StatementKind::Declaration);
    assert_eq!(test.statements[1].kind, StatementKind::Assertion);
    assert_eq!(test.class_name, "ApproachExampleTest");
    assert!(test
        .methods_under_test
        .contains(&"getSSLProtocol".to_string()));
}

#[test]
fn junit3_tests_are_recognized_and_resolve_the_production_class() {
    let out = parse_test_classes(&fixture("parsing")).unwrap();
    let names: Vec<&str> = out.tests.iter().map(|t| t.name.as_str()).collect();
    assert!(names.contains(&"testAddsNumbers"));
    assert!(!names.contains(&"helperOnly"));
    assert!(!names.contains(&"buildFixture"));
    let test = out
        .tests
        .iter()
        .find(|t| t.name == "testAddsNumbers")
        .unwrap();
    // public methods of Calculator resolved by stripping the Test suffix
    for m in ["add", "total", "reset"] {
        assert!(test.methods_under_test.contains(&m.to_string()), "{m}");
    }
    assert!(!test.methods_under_test.contains(&"recompute".to_string()));
}

#[test]
fn malformed_files_are_diagnosed_not_fatal() {
    let out = parse_test_classes(&fixture("parsing")).unwrap();
    assert!(out
        .diagnostics
        .iter()
        .any(|d| d.file.ends_with("Broken.java")));
    // the rest of the scan still produced tests
    assert!(!out.tests.is_empty());
}

#[test]
fn missing_root_is_an_io_error() {
    assert!(parse_test_classes(&fixture("no-such-dir")).is_err());
}

#[test]
fn classify_corpus_has_one_descriptive_and_one_non_descriptive() {
    let report = analyze_project(&fixture("figures/classify"), &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.counts.descriptive, 1);
    assert_eq!(report.counts.non_descriptive, 1);
    assert_eq!(report.counts.unknown, 0);
}

#[test]
fn every_figure_fixture_name_matches_a_pattern() {
    let report = analyze_project(&fixture("figures"), &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.tests.len(), 6);
    for test in &report.tests {
        assert!(test.name_match.is_some(), "{} has no name match", test.id());
    }
    assert_eq!(report.stats.name_overall.matches, 6);
    assert!((report.stats.name_overall.percent - 100.0).abs() < 1e-9);
}

#[test]
fn figure_corpus_pattern_counts_are_stable() {
    let report = analyze_project(&fixture("figures"), &AnalyzeOptions::default()).unwrap();
    let name_count = |id: NamePatternId| {
        report
            .tests
            .iter()
            .filter(|t| t.name_match.as_ref().is_some_and(|m| m.pattern == id))
            .count()
    };
    assert_eq!(name_count(NamePatternId::SingleEntity), 2);
    assert_eq!(name_count(NamePatternId::VerbPhraseWithPrependedTest), 1);
    assert_eq!(name_count(NamePatternId::NounPhrase), 1);
    assert_eq!(name_count(NamePatternId::RegexMatch), 2);

    let body_count = |id: BodyPatternId| {
        report
            .tests
            .iter()
            .filter(|t| t.body_match.as_ref().is_some_and(|m| m.pattern == id))
            .count()
    };
    assert_eq!(body_count(BodyPatternId::TryCatchRestricted), 1);
    assert_eq!(body_count(BodyPatternId::AllAssertionSingle), 1);
    assert_eq!(body_count(BodyPatternId::NormalRestricted), 2);
    assert_eq!(body_count(BodyPatternId::NormalGeneralized), 1);
    assert_eq!(body_count(BodyPatternId::NoAssertionSoleMethod), 1);
}

#[test]
fn per_pattern_counts_agree_with_an_independent_recount() {
    let report = analyze_project(&fixture("figures"), &AnalyzeOptions::default()).unwrap();
    for row in &report.stats.name_patterns {
        let recount = report
            .tests
            .iter()
            .filter(|t| {
                t.name_match
                    .as_ref()
                    .is_some_and(|m| m.pattern.canonical_name() == row.pattern)
            })
            .count();
        assert_eq!(row.matches, recount, "{}", row.pattern);
    }
    for row in &report.stats.body_patterns {
        let recount = report
            .tests
            .iter()
            .filter(|t| {
                t.body_match
                    .as_ref()
                    .is_some_and(|m| m.pattern.canonical_name() == row.pattern)
            })
            .count();
        assert_eq!(row.matches, recount, "{}", row.pattern);
    }
}

#[test]
fn clean_corpus_is_fully_descriptive() {
    let report = analyze_project(&fixture("clean"), &AnalyzeOptions::default()).unwrap();
    assert!(report.counts.total() > 0);
    assert_eq!(report.counts.non_descriptive, 0);
    assert_eq!(report.counts.unknown, 0);
}

#[test]
fn empty_project_yields_an_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = analyze_project(dir.path(), &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.counts.total(), 0);
    assert!(report.tests.is_empty());
    assert_eq!(report.stats.name_overall.matches, 0);
}

#[test]
fn include_exclude_globs_narrow_the_scan() {
    let mut options = AnalyzeOptions::default();
    options.exclude = vec!["classify/**".into()];
    let report = analyze_project(&fixture("figures"), &options).unwrap();
    assert_eq!(report.tests.len(), 4);

    let mut options = AnalyzeOptions::default();
    options.include = vec!["classify/*.java".into()];
    let report = analyze_project(&fixture("figures"), &options).unwrap();
    assert_eq!(report.tests.len(), 2);
}

#[test]
fn machine_records_round_trip_for_the_figure_corpus() {
    let report = analyze_project(&fixture("figures"), &AnalyzeOptions::default()).unwrap();
    let bytes = render_records(&report);
    let parsed = parse_records(bytes.as_bytes()).unwrap();
    assert_eq!(parsed, report);
}

#[test]
fn analysis_is_deterministic_across_runs() {
    let a = analyze_project(&fixture("figures"), &AnalyzeOptions::default()).unwrap();
    let b = analyze_project(&fixture("figures"), &AnalyzeOptions::default()).unwrap();
    assert_eq!(render_records(&a), render_records(&b));
}

#[test]
fn single_entity_matches_are_flagged_in_text_reports() {
    let report = analyze_project(&fixture("figures"), &AnalyzeOptions::default()).unwrap();
    let text = namefit_core::report::render_text(&report, None, false);
    assert!(text.contains("Single Entity relies on the methods-under-test heuristic"));
}

#[test]
fn empty_test_bodies_flow_through_as_unknown() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("EmptyTest.java"),
        "public class EmptyTest { @Test public void testEntries() { } }",
    )
    .unwrap();
    let report = analyze_project(dir.path(), &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.counts.unknown, 1);
    let test = &report.tests[0];
    assert!(test.body_match.is_none());
    assert_eq!(test.classification.outcome, Outcome::Unknown);
    assert!(test.suggestions.is_empty());
}
