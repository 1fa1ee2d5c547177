//! The test-name pattern catalog.
//!
//! Ten patterns tried in a fixed order, most specific first. A name matches
//! the first pattern whose structural requirements it satisfies and that
//! extracts at least one component.

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Component, Extraction, ExtractionSource};
use crate::name::split::split_identifier;
use crate::name::tagger::{pos_tag, LexiconTagger, PosTag, TaggedWord, Tagger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamePatternId {
    VerbWithMultipleNouns,
    DividedDuelVerb,
    IsAndPastParticiple,
    TryCatchName,
    DuelVerb,
    NounPhrase,
    SingleEntity,
    VerbPhraseWithoutPrependedTest,
    VerbPhraseWithPrependedTest,
    RegexMatch,
}

impl NamePatternId {
    /// Dispatch order of the catalog.
    pub const CATALOG: [NamePatternId; 10] = [
        NamePatternId::VerbWithMultipleNouns,
        NamePatternId::DividedDuelVerb,
        NamePatternId::IsAndPastParticiple,
        NamePatternId::TryCatchName,
        NamePatternId::DuelVerb,
        NamePatternId::NounPhrase,
        NamePatternId::SingleEntity,
        NamePatternId::VerbPhraseWithoutPrependedTest,
        NamePatternId::VerbPhraseWithPrependedTest,
        NamePatternId::RegexMatch,
    ];

    pub fn canonical_name(self) -> &'static str {
        use NamePatternId::*;
        match self {
            VerbWithMultipleNouns => "Verb With Multiple Nouns Phrase",
            DividedDuelVerb => "Divided Duel Verb Phrase",
            IsAndPastParticiple => "Is And Past Participle Phrase",
            TryCatchName => "Try Catch",
            DuelVerb => "Duel Verb Phrase",
            NounPhrase => "Noun Phrase",
            SingleEntity => "Single Entity",
            VerbPhraseWithoutPrependedTest => "Verb Phrase Without Prepended Test",
            VerbPhraseWithPrependedTest => "Verb Phrase With Prepended Test",
            RegexMatch => "Regex Match",
        }
    }

    /// (required, allowed) components of an extraction this pattern yields.
    pub fn presence_rule(self) -> (&'static [Component], &'static [Component]) {
        use Component::*;
        use NamePatternId::*;
        match self {
            VerbWithMultipleNouns => (&[Action, Scenario], &[Action, Scenario]),
            DividedDuelVerb => (
                &[Action, Predicate, Scenario],
                &[Action, Predicate, Scenario],
            ),
            IsAndPastParticiple => (&[Action, Predicate], &[Action, Predicate]),
            TryCatchName => (&[Action, Predicate], &[Action, Predicate]),
            DuelVerb => (
                &[Action, Predicate, Scenario],
                &[Action, Predicate, Scenario],
            ),
            NounPhrase => (&[Scenario], &[Scenario]),
            SingleEntity => (&[Action], &[Action]),
            VerbPhraseWithoutPrependedTest | VerbPhraseWithPrependedTest => {
                (&[Action, Scenario], &[Action, Predicate, Scenario])
            }
            RegexMatch => (&[], &[Action, Predicate, Scenario]),
        }
    }
}

/// A Regex Match sub-pattern: named capture groups `action`, `predicate`,
/// `scenario` map to components.
#[derive(Debug, Clone)]
pub struct RegexSubPattern {
    pub id: String,
    pub expression: Regex,
}

pub const DEFAULT_REGEXES: &str = include_str!("../../data/name_regexes.tsv");

/// Parses a sub-pattern file: `id<TAB>expression` lines, `#` comments.
pub fn load_regexes(text: &str) -> Result<Vec<RegexSubPattern>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, expr) = line.split_once('\t').ok_or(Error::InvalidRegexFile {
            line: idx + 1,
            message: "expected `id<TAB>expression`".into(),
        })?;
        let expression = Regex::new(expr.trim()).map_err(|e| Error::InvalidRegexFile {
            line: idx + 1,
            message: e.to_string(),
        })?;
        let has_group = expression
            .capture_names()
            .flatten()
            .any(|n| matches!(n, "action" | "predicate" | "scenario"));
        if !has_group {
            return Err(Error::InvalidRegexFile {
                line: idx + 1,
                message: "no action/predicate/scenario capture group".into(),
            });
        }
        out.push(RegexSubPattern {
            id: id.trim().to_string(),
            expression,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NameMatch {
    pub pattern: NamePatternId,
    /// Regex sub-pattern id when `pattern` is RegexMatch.
    pub sub_pattern: Option<String>,
    pub extraction: Extraction,
}

/// Matches names against the catalog with a fixed tagger and regex set.
pub struct NameEngine {
    tagger: Box<dyn Tagger>,
    regexes: Vec<RegexSubPattern>,
}

impl NameEngine {
    pub fn new(tagger: Box<dyn Tagger>, regexes: Vec<RegexSubPattern>) -> Self {
        NameEngine { tagger, regexes }
    }

    /// Bundled lexicon tagger and regex file.
    pub fn bundled() -> Self {
        NameEngine::new(
            Box::new(LexiconTagger::bundled()),
            load_regexes(DEFAULT_REGEXES).expect("bundled regexes are well-formed"),
        )
    }

    /// Tries the catalog in order; the first structural match wins.
    /// `context` holds the candidate methods under test for Single Entity.
    pub fn match_name(&self, name: &str, context: &[String]) -> Option<NameMatch> {
        let words = split_identifier(name);
        if words.is_empty() {
            return None;
        }
        let seq = pos_tag(name, &words, self.tagger.as_ref());
        let has_test = seq.words[0].text.eq_ignore_ascii_case("test");
        let rest: &[TaggedWord] = if has_test { &seq.words[1..] } else { &seq.words };

        for pattern in NamePatternId::CATALOG {
            let found = match pattern {
                NamePatternId::VerbWithMultipleNouns => {
                    self.verb_with_multiple_nouns(has_test, rest)
                }
                NamePatternId::DividedDuelVerb => self.divided_duel_verb(has_test, rest),
                NamePatternId::IsAndPastParticiple => self.is_and_past_participle(rest),
                NamePatternId::TryCatchName => self.try_catch_name(name),
                NamePatternId::DuelVerb => self.duel_verb(rest),
                NamePatternId::NounPhrase => self.noun_phrase(rest),
                NamePatternId::SingleEntity => self.single_entity(name, has_test, context),
                NamePatternId::VerbPhraseWithoutPrependedTest => {
                    if has_test {
                        None
                    } else {
                        self.verb_phrase(rest)
                    }
                }
                NamePatternId::VerbPhraseWithPrependedTest => {
                    if has_test {
                        self.verb_phrase(rest)
                    } else {
                        None
                    }
                }
                NamePatternId::RegexMatch => {
                    if let Some((sub, extraction)) = self.regex_match(name) {
                        return Some(NameMatch {
                            pattern,
                            sub_pattern: Some(sub),
                            extraction,
                        });
                    }
                    None
                }
            };
            if let Some(extraction) = found {
                return Some(NameMatch {
                    pattern,
                    sub_pattern: None,
                    extraction,
                });
            }
        }
        None
    }

    /// Leading "test", a verb, then exactly three nouns; the nouns combine
    /// into the scenario.
    fn verb_with_multiple_nouns(&self, has_test: bool, rest: &[TaggedWord]) -> Option<Extraction> {
        if !has_test || rest.len() != 4 {
            return None;
        }
        if rest[0].tag != PosTag::Verb || rest[1..].iter().any(|w| w.tag != PosTag::Noun) {
            return None;
        }
        let scenario = format!("{}{}{}", rest[1].text, rest[2].text, rest[3].text);
        Extraction::new(
            ExtractionSource::Name,
            Some(rest[0].text.clone()),
            None,
            Some(scenario),
        )
    }

    /// Leading "test", verb-noun-verb-noun with equal nouns; the third word
    /// is the predicate.
    fn divided_duel_verb(&self, has_test: bool, rest: &[TaggedWord]) -> Option<Extraction> {
        if !has_test || rest.len() != 4 {
            return None;
        }
        let shape = rest[0].tag == PosTag::Verb
            && rest[1].tag == PosTag::Noun
            && rest[2].tag.is_verb()
            && rest[3].tag == PosTag::Noun
            && rest[1].text.eq_ignore_ascii_case(&rest[3].text);
        if !shape {
            return None;
        }
        Extraction::new(
            ExtractionSource::Name,
            Some(rest[0].text.clone()),
            Some(rest[2].text.clone()),
            Some(rest[1].text.clone()),
        )
    }

    /// A verb followed by a past-participle verb; no scenario.
    fn is_and_past_participle(&self, rest: &[TaggedWord]) -> Option<Extraction> {
        if rest.len() != 2
            || rest[0].tag != PosTag::Verb
            || rest[1].tag != PosTag::VerbPastParticiple
        {
            return None;
        }
        Extraction::new(
            ExtractionSource::Name,
            Some(rest[0].text.clone()),
            Some(rest[1].text.clone()),
            None,
        )
    }

    /// Regex family with a "Throws" divider: action before it, predicate
    /// after.
    fn try_catch_name(&self, name: &str) -> Option<Extraction> {
        static PATTERN: std::sync::OnceLock<Regex> = std::sync::OnceLock::new();
        let re = PATTERN.get_or_init(|| {
            Regex::new(
                r"^(?:test|Test)?(?P<action>[A-Za-z0-9_]+?)(?:Throws|Throw)(?P<predicate>[A-Z][A-Za-z0-9_]*)$",
            )
            .expect("static regex compiles")
        });
        let caps = re.captures(name)?;
        let action = caps.name("action")?.as_str();
        if action.eq_ignore_ascii_case("test") {
            return None;
        }
        Extraction::new(
            ExtractionSource::Name,
            Some(action.to_string()),
            Some(caps.name("predicate")?.as_str().to_string()),
            None,
        )
    }

    /// verb-verb-noun: action, predicate, scenario.
    fn duel_verb(&self, rest: &[TaggedWord]) -> Option<Extraction> {
        if rest.len() != 3
            || rest[0].tag != PosTag::Verb
            || !rest[1].tag.is_verb()
            || rest[2].tag != PosTag::Noun
        {
            return None;
        }
        Extraction::new(
            ExtractionSource::Name,
            Some(rest[0].text.clone()),
            Some(rest[1].text.clone()),
            Some(rest[2].text.clone()),
        )
    }

    /// Exactly one word, a noun; scenario only.
    fn noun_phrase(&self, rest: &[TaggedWord]) -> Option<Extraction> {
        if rest.len() != 1 || rest[0].tag != PosTag::Noun {
            return None;
        }
        Extraction::new(
            ExtractionSource::Name,
            None,
            None,
            Some(rest[0].text.clone()),
        )
    }

    /// Leading "test" with the remainder equal (case-insensitively) to a
    /// method under test; the remainder is the action.
    fn single_entity(&self, name: &str, has_test: bool, context: &[String]) -> Option<Extraction> {
        if !has_test || context.is_empty() {
            return None;
        }
        let remainder = name
            .strip_prefix("test")
            .or_else(|| name.strip_prefix("Test"))?
            .trim_start_matches('_');
        if remainder.is_empty() {
            return None;
        }
        if context.iter().any(|m| m.eq_ignore_ascii_case(remainder)) {
            return Extraction::new(
                ExtractionSource::Name,
                Some(remainder.to_string()),
                None,
                None,
            );
        }
        None
    }

    /// A leading verb with a following noun and an optional secondary verb
    /// after the noun. Trailing words are tolerated (the paper's example
    /// extracts Get/SSL from testGetSSLProtocol and ignores the tail), but
    /// a preposition anywhere signals a clause this phrase shape cannot
    /// represent, so the regex catalog handles the name instead.
    fn verb_phrase(&self, rest: &[TaggedWord]) -> Option<Extraction> {
        if rest.len() < 2 || rest.iter().any(|w| w.tag == PosTag::Preposition) {
            return None;
        }
        if rest[0].tag != PosTag::Verb || rest[1].tag != PosTag::Noun {
            return None;
        }
        let predicate = rest
            .get(2)
            .filter(|w| w.tag.is_verb())
            .map(|w| w.text.clone());
        Extraction::new(
            ExtractionSource::Name,
            Some(rest[0].text.clone()),
            predicate,
            Some(rest[1].text.clone()),
        )
    }

    /// First sub-pattern in file order that matches; captured groups map to
    /// components. A capture equal to "test" is never extractable.
    fn regex_match(&self, name: &str) -> Option<(String, Extraction)> {
        for sub in &self.regexes {
            let Some(caps) = sub.expression.captures(name) else {
                continue;
            };
            let grab = |group: &str| -> Option<String> {
                caps.name(group)
                    .map(|m| m.as_str().to_string())
                    .filter(|v| !v.is_empty() && !v.eq_ignore_ascii_case("test"))
            };
            if let Some(extraction) = Extraction::new(
                ExtractionSource::Name,
                grab("action"),
                grab("predicate"),
                grab("scenario"),
            ) {
                return Some((sub.id.clone(), extraction));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> NameEngine {
        NameEngine::bundled()
    }

    fn matched(name: &str, context: &[&str]) -> NameMatch {
        let context: Vec<String> = context.iter().map(|s| s.to_string()).collect();
        engine()
            .match_name(name, &context)
            .unwrap_or_else(|| panic!("no match for {name}"))
    }

    #[test]
    fn verb_phrase_with_prepended_test_splits_on_underscore_names() {
        let m = matched("testExecute_Action", &[]);
        assert_eq!(m.pattern, NamePatternId::VerbPhraseWithPrependedTest);
        assert_eq!(m.extraction.action.as_deref(), Some("Execute"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("Action"));
        assert_eq!(m.extraction.predicate, None);
    }

    #[test]
    fn single_entity_wins_when_context_has_the_method() {
        let m = matched("testGetSSLProtocol", &["getSSLProtocol"]);
        assert_eq!(m.pattern, NamePatternId::SingleEntity);
        assert_eq!(m.extraction.action.as_deref(), Some("GetSSLProtocol"));
        assert_eq!(m.extraction.predicate, None);
        assert_eq!(m.extraction.scenario, None);
    }

    #[test]
    fn verb_phrase_takes_over_without_context_ignoring_the_tail() {
        // the multi-match example: same name, no method-under-test context
        let m = matched("testGetSSLProtocol", &[]);
        assert_eq!(m.pattern, NamePatternId::VerbPhraseWithPrependedTest);
        assert_eq!(m.extraction.action.as_deref(), Some("Get"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("SSL"));
        assert_eq!(m.extraction.predicate, None);
    }

    #[test]
    fn single_entity_requires_nonempty_context() {
        let m = engine().match_name("testEntries", &[]);
        let m = m.unwrap();
        assert_eq!(m.pattern, NamePatternId::NounPhrase);
        assert_eq!(m.extraction.scenario.as_deref(), Some("Entries"));
    }

    #[test]
    fn noun_phrase_fires_before_single_entity_per_catalog_order() {
        let m = matched("testEntries", &["entries"]);
        assert_eq!(m.pattern, NamePatternId::NounPhrase);
    }

    #[test]
    fn regex_catches_predicate_when_scenario_names() {
        let m = matched("testThrowExceptionWhenTokenIsAbsent", &[]);
        assert_eq!(m.pattern, NamePatternId::RegexMatch);
        assert_eq!(m.sub_pattern.as_deref(), Some("predicate_when"));
        assert_eq!(m.extraction.predicate.as_deref(), Some("ThrowException"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("TokenIsAbsent"));
        assert_eq!(m.extraction.action, None);
    }

    #[test]
    fn regex_catches_should_fail_when_names() {
        let m = matched("testShouldFailWhenTokenIsAbsent", &[]);
        assert_eq!(m.pattern, NamePatternId::RegexMatch);
        assert_eq!(m.sub_pattern.as_deref(), Some("should_when"));
        assert_eq!(m.extraction.predicate.as_deref(), Some("Fail"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("TokenIsAbsent"));
    }

    #[test]
    fn trailing_digits_fall_to_the_regex_catalog() {
        let m = matched("returnFoo2", &[]);
        assert_eq!(m.pattern, NamePatternId::RegexMatch);
        assert_eq!(m.sub_pattern.as_deref(), Some("verb_noun_digits"));
        assert_eq!(m.extraction.action.as_deref(), Some("return"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("Foo2"));
    }

    #[test]
    fn verb_with_multiple_nouns_combines_three_nouns() {
        let m = matched("testLoadFileSystemConfig", &[]);
        assert_eq!(m.pattern, NamePatternId::VerbWithMultipleNouns);
        assert_eq!(m.extraction.action.as_deref(), Some("Load"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("FileSystemConfig"));
    }

    #[test]
    fn divided_duel_verb_requires_equal_nouns() {
        let m = matched("testOpenFileCloseFile", &[]);
        assert_eq!(m.pattern, NamePatternId::DividedDuelVerb);
        assert_eq!(m.extraction.action.as_deref(), Some("Open"));
        assert_eq!(m.extraction.predicate.as_deref(), Some("Close"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("File"));

        // unequal nouns fall through
        let m = engine().match_name("testOpenFileCloseStream", &[]).unwrap();
        assert_ne!(m.pattern, NamePatternId::DividedDuelVerb);
    }

    #[test]
    fn is_and_past_participle_has_no_scenario() {
        let m = matched("isClosed", &[]);
        assert_eq!(m.pattern, NamePatternId::IsAndPastParticiple);
        assert_eq!(m.extraction.action.as_deref(), Some("is"));
        assert_eq!(m.extraction.predicate.as_deref(), Some("Closed"));
        assert_eq!(m.extraction.scenario, None);
    }

    #[test]
    fn try_catch_name_splits_on_the_throws_divider() {
        let m = matched("testParseThrowsIOException", &[]);
        assert_eq!(m.pattern, NamePatternId::TryCatchName);
        assert_eq!(m.extraction.action.as_deref(), Some("Parse"));
        assert_eq!(m.extraction.predicate.as_deref(), Some("IOException"));
    }

    #[test]
    fn duel_verb_is_verb_verb_noun() {
        let m = matched("testShouldReturnValue", &[]);
        assert_eq!(m.pattern, NamePatternId::DuelVerb);
        assert_eq!(m.extraction.action.as_deref(), Some("Should"));
        assert_eq!(m.extraction.predicate.as_deref(), Some("Return"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("Value"));
    }

    #[test]
    fn verb_phrase_without_prepended_test() {
        let m = matched("loadConfigFails", &[]);
        assert_eq!(m.pattern, NamePatternId::VerbPhraseWithoutPrependedTest);
        assert_eq!(m.extraction.action.as_deref(), Some("load"));
        assert_eq!(m.extraction.scenario.as_deref(), Some("Config"));
        assert_eq!(m.extraction.predicate.as_deref(), Some("Fails"));
    }

    #[test]
    fn unmatched_names_yield_none() {
        // adjective-shaped remainder matches nothing in the catalog
        assert!(engine().match_name("testEmpty", &[]).is_none());
    }

    #[test]
    fn empty_regex_set_still_terminates() {
        let engine = NameEngine::new(Box::new(LexiconTagger::bundled()), Vec::new());
        assert!(engine.match_name("returnFoo2", &[]).is_none());
    }

    #[test]
    fn extractions_respect_presence_rules() {
        let cases: Vec<(&str, &[&str])> = vec![
            ("testLoadFileSystemConfig", &[]),
            ("testOpenFileCloseFile", &[]),
            ("isClosed", &[]),
            ("testParseThrowsIOException", &[]),
            ("testShouldReturnValue", &[]),
            ("testEntries", &[]),
            ("testGetSSLProtocol", &["getSSLProtocol"]),
            ("loadConfigFails", &[]),
            ("testExecute_Action", &[]),
            ("returnFoo2", &[]),
        ];
        for (name, ctx) in cases {
            let m = matched(name, ctx);
            let (required, allowed) = m.pattern.presence_rule();
            for c in required {
                assert!(
                    m.extraction.component(*c).is_some(),
                    "{name}: {c} required by {:?}",
                    m.pattern
                );
            }
            for c in Component::ALL {
                if m.extraction.component(c).is_some() {
                    assert!(
                        allowed.contains(&c),
                        "{name}: {c} not allowed by {:?}",
                        m.pattern
                    );
                }
            }
        }
    }

    #[test]
    fn malformed_regex_file_is_rejected() {
        assert!(load_regexes("bad line without tab").is_err());
        assert!(load_regexes("id\t[unclosed").is_err());
        assert!(load_regexes("id\t^(?P<other>x)$").is_err());
    }
}
