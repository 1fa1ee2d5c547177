//! Project scanning driver, per-test and aggregate reports, match-rate
//! statistics and renderers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::body::{match_body, BodyMatch, BodyPatternId};
use crate::comparison::{classify, suggest, Classification, Outcome, Suggestion};
use crate::error::{Error, Result};
use crate::model::TestCase;
use crate::name::{load_regexes, LexiconTagger, NameEngine, NameMatch, NamePatternId, DEFAULT_REGEXES};
use crate::parser::{parse_test_classes_filtered, Diagnostic};

/// Version of the pattern catalogs (name + body) shipped with the tool.
pub const CATALOG_VERSION: &str = "1";
/// Version of the machine-readable report schema.
pub const SCHEMA_VERSION: &str = "1";

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// What to analyze and with which data files.
#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    /// Include globs relative to the root; empty means `**/*.java`.
    pub include: Vec<String>,
    /// Exclude globs relative to the root.
    pub exclude: Vec<String>,
    /// Regex sub-pattern file; None uses the bundled set.
    pub regexes: Option<PathBuf>,
    /// Lexicon file; None uses the bundled lexicon.
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub tool_version: String,
    pub catalog_version: String,
    pub schema_version: String,
    /// SHA-256 of the regex sub-pattern file ("builtin:" prefix for the
    /// bundled set).
    pub regex_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub class_name: String,
    pub test_name: String,
    pub file: PathBuf,
    pub line: usize,
    pub name_match: Option<NameMatch>,
    pub body_match: Option<BodyMatch>,
    pub classification: Classification,
    pub suggestions: Vec<Suggestion>,
}

impl TestReport {
    pub fn id(&self) -> String {
        format!("{}.{}", self.class_name, self.test_name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub descriptive: usize,
    pub non_descriptive: usize,
    pub unknown: usize,
}

impl OutcomeCounts {
    pub fn total(&self) -> usize {
        self.descriptive + self.non_descriptive + self.unknown
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternStat {
    pub pattern: String,
    pub matches: usize,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchStats {
    /// One row per name pattern, catalog order, zero rows included.
    pub name_patterns: Vec<PatternStat>,
    pub name_overall: PatternStat,
    /// One row per body pattern, catalog order, zero rows included.
    pub body_patterns: Vec<PatternStat>,
    pub body_overall: PatternStat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectReport {
    pub meta: ReportMeta,
    pub tests: Vec<TestReport>,
    pub counts: OutcomeCounts,
    pub stats: MatchStats,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses, matches, classifies and aggregates every test under `root`.
/// Deterministic for identical inputs and options.
pub fn analyze_project(root: &Path, options: &AnalyzeOptions) -> Result<ProjectReport> {
    let (regex_text, regex_digest) = match &options.regexes {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
            (text, digest)
        }
        None => {
            let digest = format!("builtin:{:x}", Sha256::digest(DEFAULT_REGEXES.as_bytes()));
            (DEFAULT_REGEXES.to_string(), digest)
        }
    };
    let regexes = load_regexes(&regex_text)?;
    let tagger = match &options.lexicon {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            LexiconTagger::parse(&text)?
        }
        None => LexiconTagger::bundled(),
    };
    let engine = NameEngine::new(Box::new(tagger), regexes);

    let default_include = [ALL_JAVA.to_string()];
    let include = compile_globs(if options.include.is_empty() {
        &default_include
    } else {
        &options.include
    })?;
    let exclude = compile_globs(&options.exclude)?;
    let outcome = parse_test_classes_filtered(root, |path| {
        let rel = path.strip_prefix(root).unwrap_or(path);
        include.iter().any(|g| g.matches_path(rel))
            && !exclude.iter().any(|g| g.matches_path(rel))
    })?;

    let mut tests = Vec::new();
    for test in &outcome.tests {
        tests.push(analyze_test(test, &engine));
    }
    let counts = count_outcomes(&tests);
    let stats = compute_match_stats(&tests);
    Ok(ProjectReport {
        meta: ReportMeta {
            tool_version: tool_version().to_string(),
            catalog_version: CATALOG_VERSION.to_string(),
            schema_version: SCHEMA_VERSION.to_string(),
            regex_digest,
        },
        tests,
        counts,
        stats,
        diagnostics: outcome.diagnostics,
    })
}

const ALL_JAVA: &str = "**/*.java";

fn compile_globs(patterns: &[String]) -> Result<Vec<glob::Pattern>> {
    patterns
        .iter()
        .map(|p| glob::Pattern::new(p).map_err(|e| Error::InvalidGlob(p.clone(), e.to_string())))
        .collect()
}

/// Name match, body match, classification and suggestions for one test.
pub fn analyze_test(test: &TestCase, engine: &NameEngine) -> TestReport {
    let name_match = engine.match_name(&test.name, &test.methods_under_test);
    let body_match = match_body(test);
    let classification = classify(
        name_match.as_ref().map(|m| &m.extraction),
        body_match.as_ref().map(|m| &m.extraction),
    );
    let suggestions = suggest(
        &classification,
        name_match.as_ref().map(|m| &m.extraction),
        body_match.as_ref().map(|m| &m.extraction),
    );
    TestReport {
        class_name: test.class_name.clone(),
        test_name: test.name.clone(),
        file: test.location.file.clone(),
        line: test.location.start_line,
        name_match,
        body_match,
        classification,
        suggestions,
    }
}

fn count_outcomes(tests: &[TestReport]) -> OutcomeCounts {
    let mut counts = OutcomeCounts::default();
    for t in tests {
        match t.classification.outcome {
            Outcome::Descriptive => counts.descriptive += 1,
            Outcome::NonDescriptive => counts.non_descriptive += 1,
            Outcome::Unknown => counts.unknown += 1,
        }
    }
    counts
}

/// Per-pattern match counts and percentages over all tests, one row per
/// catalog pattern plus an overall row.
pub fn compute_match_stats(tests: &[TestReport]) -> MatchStats {
    let total = tests.len();
    let percent = |matches: usize| -> f64 {
        if total == 0 {
            0.0
        } else {
            matches as f64 * 100.0 / total as f64
        }
    };
    let name_patterns: Vec<PatternStat> = NamePatternId::CATALOG
        .iter()
        .map(|id| {
            let matches = tests
                .iter()
                .filter(|t| t.name_match.as_ref().is_some_and(|m| m.pattern == *id))
                .count();
            PatternStat {
                pattern: id.canonical_name().to_string(),
                matches,
                percent: percent(matches),
            }
        })
        .collect();
    let name_matched = tests.iter().filter(|t| t.name_match.is_some()).count();
    let body_patterns: Vec<PatternStat> = BodyPatternId::DISPATCH
        .iter()
        .map(|id| {
            let matches = tests
                .iter()
                .filter(|t| t.body_match.as_ref().is_some_and(|m| m.pattern == *id))
                .count();
            PatternStat {
                pattern: id.canonical_name().to_string(),
                matches,
                percent: percent(matches),
            }
        })
        .collect();
    let body_matched = tests.iter().filter(|t| t.body_match.is_some()).count();
    MatchStats {
        name_patterns,
        name_overall: PatternStat {
            pattern: "Overall".into(),
            matches: name_matched,
            percent: percent(name_matched),
        },
        body_patterns,
        body_overall: PatternStat {
            pattern: "Overall".into(),
            matches: body_matched,
            percent: percent(body_matched),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Records,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "records" => Ok(ReportFormat::Records),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Renders a report. Text shows the summary, the non-descriptive tests and
/// the match-rate tables; records is the versioned machine format.
pub fn render_report(report: &ProjectReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Text => {
            render_text(report, Some(Outcome::NonDescriptive), true).into_bytes()
        }
        ReportFormat::Records => render_records(report).into_bytes(),
    }
}

/// Human-readable report. `only` restricts the per-test blocks to one
/// outcome; `stats` appends the match-rate tables.
pub fn render_text(report: &ProjectReport, only: Option<Outcome>, stats: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "namefit report (tool {}, catalog {}, schema {})",
        report.meta.tool_version, report.meta.catalog_version, report.meta.schema_version
    );
    let _ = writeln!(
        out,
        "tests: {}  descriptive: {}  non-descriptive: {}  unknown: {}",
        report.counts.total(),
        report.counts.descriptive,
        report.counts.non_descriptive,
        report.counts.unknown
    );
    for test in &report.tests {
        if only.is_some_and(|o| test.classification.outcome != o) {
            continue;
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{} ({}:{}) [{}]",
            test.id(),
            test.file.display(),
            test.line,
            test.classification.outcome
        );
        let fmt_match = |label: &str, extraction: &crate::model::Extraction, via: String| {
            format!("  {label}:  {extraction}   via {via}")
        };
        match &test.body_match {
            Some(m) => {
                let _ = writeln!(
                    out,
                    "{}",
                    fmt_match("body", &m.extraction, m.pattern.canonical_name().to_string())
                );
                for d in &m.diagnostics {
                    let _ = writeln!(out, "    note: {d}");
                }
            }
            None => {
                let _ = writeln!(out, "  body:  no pattern matched");
            }
        }
        match &test.name_match {
            Some(m) => {
                let via = match &m.sub_pattern {
                    Some(sub) => format!("{} ({sub})", m.pattern.canonical_name()),
                    None => m.pattern.canonical_name().to_string(),
                };
                let _ = writeln!(out, "{}", fmt_match("name", &m.extraction, via));
                if m.pattern == NamePatternId::SingleEntity {
                    let _ = writeln!(
                        out,
                        "    note: Single Entity relies on the methods-under-test heuristic"
                    );
                }
            }
            None => {
                let _ = writeln!(out, "  name:  no pattern matched");
            }
        }
        if !test.suggestions.is_empty() {
            let _ = writeln!(out, "  suggest:");
            for s in &test.suggestions {
                let _ = writeln!(out, "    {s}");
            }
        }
    }
    if stats {
        let _ = writeln!(out);
        out.push_str(&render_stats_tables(&report.stats));
    }
    if !report.diagnostics.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "diagnostics:");
        for d in &report.diagnostics {
            let _ = writeln!(out, "  {}: {}", d.file.display(), d.message);
        }
    }
    out
}

pub fn render_stats_tables(stats: &MatchStats) -> String {
    let mut out = String::new();
    let table = |out: &mut String, title: &str, rows: &[PatternStat], overall: &PatternStat| {
        let _ = writeln!(out, "{title}");
        let _ = writeln!(out, "{:<46} {:>9} {:>8}", "Pattern", "# Matches", "(%)");
        for row in rows {
            let _ = writeln!(
                out,
                "{:<46} {:>9} {:>8.2}",
                row.pattern, row.matches, row.percent
            );
        }
        let _ = writeln!(
            out,
            "{:<46} {:>9} {:>8.2}",
            overall.pattern, overall.matches, overall.percent
        );
    };
    table(
        &mut out,
        "match rates for name patterns (over all tests)",
        &stats.name_patterns,
        &stats.name_overall,
    );
    let _ = writeln!(out);
    table(
        &mut out,
        "match rates for body patterns (over all tests)",
        &stats.body_patterns,
        &stats.body_overall,
    );
    out
}

/// One JSON record per line: a meta record, one per test, then stats.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
enum Record {
    Meta {
        meta: ReportMeta,
        counts: OutcomeCounts,
        diagnostics: Vec<Diagnostic>,
    },
    Test {
        test: TestReport,
    },
    Stats {
        stats: MatchStats,
    },
}

pub fn render_records(report: &ProjectReport) -> String {
    let mut out = String::new();
    let mut push = |record: &Record| {
        out.push_str(&serde_json::to_string(record).expect("report serializes"));
        out.push('\n');
    };
    push(&Record::Meta {
        meta: report.meta.clone(),
        counts: report.counts,
        diagnostics: report.diagnostics.clone(),
    });
    for test in &report.tests {
        push(&Record::Test { test: test.clone() });
    }
    push(&Record::Stats {
        stats: report.stats.clone(),
    });
    out
}

/// Parses the records format back into a report.
pub fn parse_records(bytes: &[u8]) -> Result<ProjectReport> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| Error::MalformedRecords(e.to_string()))?;
    let mut meta = None;
    let mut tests = Vec::new();
    let mut stats = None;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: Record = serde_json::from_str(line)
            .map_err(|e| Error::MalformedRecords(format!("line {}: {e}", idx + 1)))?;
        match record {
            Record::Meta {
                meta: m,
                counts,
                diagnostics,
            } => meta = Some((m, counts, diagnostics)),
            Record::Test { test } => tests.push(test),
            Record::Stats { stats: s } => stats = Some(s),
        }
    }
    let (meta, counts, diagnostics) =
        meta.ok_or_else(|| Error::MalformedRecords("missing meta record".into()))?;
    let stats = stats.ok_or_else(|| Error::MalformedRecords("missing stats record".into()))?;
    Ok(ProjectReport {
        meta,
        tests,
        counts,
        stats,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_source;

    fn report_for(source: &str) -> ProjectReport {
        let outcome = parse_source(source, Path::new("T.java")).unwrap();
        let engine = NameEngine::bundled();
        let tests: Vec<TestReport> = outcome
            .tests
            .iter()
            .map(|t| analyze_test(t, &engine))
            .collect();
        let counts = count_outcomes(&tests);
        let stats = compute_match_stats(&tests);
        ProjectReport {
            meta: ReportMeta {
                tool_version: tool_version().into(),
                catalog_version: CATALOG_VERSION.into(),
                schema_version: SCHEMA_VERSION.into(),
                regex_digest: "builtin:test".into(),
            },
            tests,
            counts,
            stats,
            diagnostics: Vec::new(),
        }
    }

    #[test]
    fn outcome_counts_sum_to_total() {
        let report = report_for(
            r#"
            public class MixTest {
                @Test public void testGetGraphNode() { assertEquals(EXPECTED, graph.getGraphNode()); }
                @Test public void testNothing() { }
            }
            "#,
        );
        assert_eq!(report.counts.total(), report.tests.len());
    }

    #[test]
    fn two_noun_phrase_names_make_one_hundred_percent() {
        let report = report_for(
            r#"
            public class NounTest {
                @Test public void testEntries() { assertTrue(map.entries().exist()); }
                @Test public void testToken() { assertNotNull(lexer.token()); }
            }
            "#,
        );
        let row = report
            .stats
            .name_patterns
            .iter()
            .find(|r| r.pattern == "Noun Phrase")
            .unwrap();
        assert_eq!(row.matches, 2);
        assert!((row.percent - 100.0).abs() < 1e-9);
    }

    #[test]
    fn pattern_counts_sum_to_total_matched() {
        let report = report_for(
            r#"
            public class SumTest {
                @Test public void testEntries() { assertTrue(map.entries().exist()); }
                @Test public void testExecute_Action() { try { action.execute(); fail("x"); } catch (E e) { } }
                @Test public void zz9() { }
            }
            "#,
        );
        let name_sum: usize = report.stats.name_patterns.iter().map(|r| r.matches).sum();
        assert_eq!(name_sum, report.stats.name_overall.matches);
        let body_sum: usize = report.stats.body_patterns.iter().map(|r| r.matches).sum();
        assert_eq!(body_sum, report.stats.body_overall.matches);
        assert!(report.stats.name_overall.percent <= 100.0);
    }

    #[test]
    fn records_round_trip_exactly() {
        let report = report_for(
            r#"
            public class RoundTest {
                @Test public void testGetGraphNode() { assertEquals(EXPECTED, graph.getGraphNode()); }
                @Test public void returnFoo2() { Stubbing stub = stubbing; when(stub.getFoo()).thenReturn(foo2); assertEquals(foo2, result); }
            }
            "#,
        );
        let bytes = render_report(&report, ReportFormat::Records);
        let parsed = parse_records(&bytes).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn empty_report_renders_in_both_formats() {
        let report = report_for("public class NoTests { }");
        assert!(report.tests.is_empty());
        let text = render_text(&report, None, true);
        assert!(text.contains("tests: 0"));
        let parsed = parse_records(&render_report(&report, ReportFormat::Records)).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn unknown_format_is_an_error() {
        assert!(matches!(
            "yaml".parse::<ReportFormat>(),
            Err(Error::UnknownFormat(_))
        ));
    }

    #[test]
    fn text_report_shows_the_equation_style_block() {
        let report = report_for(
            r#"
            public class BlockTest {
                @Test public void returnFoo2() { Stubbing stub = stubbing; when(stub.getFoo()).thenReturn(foo2); assertEquals(foo2, result); }
            }
            "#,
        );
        let text = render_text(&report, Some(Outcome::NonDescriptive), false);
        assert!(text.contains("BlockTest.returnFoo2"));
        assert!(text.contains("body:"));
        assert!(text.contains("name:"));
        assert!(text.contains("remove action \"return\""));
    }
}
