//! Part-of-speech tagging for identifier words.
//!
//! Test names are tagged by converting them to a sentence (prepend "I",
//! lowercase the words) and tagging that sentence. The bundled tagger is a
//! lexicon of common programming verbs/nouns plus suffix heuristics; it
//! sits behind the [`Tagger`] trait so a statistical tagger can be swapped
//! in without touching the pattern catalog.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PosTag {
    Verb,
    VerbPastParticiple,
    Noun,
    Adjective,
    Preposition,
    Other,
}

impl PosTag {
    pub fn is_verb(self) -> bool {
        matches!(self, PosTag::Verb | PosTag::VerbPastParticiple)
    }
}

/// One word of the sentence handed to a tagger: the lowercased sentence form
/// plus the original spelling for orthographic cues (acronyms).
#[derive(Debug, Clone)]
pub struct SentenceWord {
    pub lower: String,
    pub original: String,
}

pub trait Tagger: Send + Sync {
    /// Tags a full sentence; `words[0]` is the prepended "I".
    fn tag_sentence(&self, words: &[SentenceWord]) -> Vec<PosTag>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaggedWord {
    pub text: String,
    pub tag: PosTag,
}

/// A split identifier with per-word tags.
#[derive(Debug, Clone, PartialEq)]
pub struct WordSequence {
    pub words: Vec<TaggedWord>,
    pub original: String,
}

impl WordSequence {
    pub fn tags(&self) -> Vec<PosTag> {
        self.words.iter().map(|w| w.tag).collect()
    }
}

/// Tags `words` on the sentence "I " + the lowercased words; the prepended
/// "I" is dropped from the output.
pub fn pos_tag(original: &str, words: &[String], tagger: &dyn Tagger) -> WordSequence {
    let mut sentence = Vec::with_capacity(words.len() + 1);
    sentence.push(SentenceWord {
        lower: "i".into(),
        original: "I".into(),
    });
    for w in words {
        sentence.push(SentenceWord {
            lower: w.to_lowercase(),
            original: w.clone(),
        });
    }
    let tags = tagger.tag_sentence(&sentence);
    let tagged = words
        .iter()
        .zip(tags.into_iter().skip(1))
        .map(|(w, tag)| TaggedWord {
            text: w.clone(),
            tag,
        })
        .collect();
    WordSequence {
        words: tagged,
        original: original.to_string(),
    }
}

/// Lexicon-and-heuristics tagger. Lookup order: lexicon, acronym rule
/// (all-caps original), digit rule, suffix rules, Other.
#[derive(Debug, Clone, Default)]
pub struct LexiconTagger {
    lexicon: HashMap<String, PosTag>,
}

pub const DEFAULT_LEXICON: &str = include_str!("../../data/lexicon.tsv");

impl LexiconTagger {
    /// The bundled lexicon.
    pub fn bundled() -> Self {
        Self::parse(DEFAULT_LEXICON).expect("bundled lexicon is well-formed")
    }

    /// Parses `word<TAB>tag` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lexicon = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tag) = line.split_once('\t').ok_or(Error::InvalidLexicon {
                line: idx + 1,
                message: "expected `word<TAB>tag`".into(),
            })?;
            let tag = match tag.trim() {
                "verb" => PosTag::Verb,
                "participle" => PosTag::VerbPastParticiple,
                "noun" => PosTag::Noun,
                "adjective" => PosTag::Adjective,
                "preposition" => PosTag::Preposition,
                "other" => PosTag::Other,
                other => {
                    return Err(Error::InvalidLexicon {
                        line: idx + 1,
                        message: format!("unknown tag {other:?}"),
                    })
                }
            };
            lexicon.insert(word.trim().to_lowercase(), tag);
        }
        Ok(LexiconTagger { lexicon })
    }

    fn tag_word(&self, word: &SentenceWord) -> PosTag {
        if let Some(tag) = self.lexicon.get(&word.lower) {
            return *tag;
        }
        let original = word.original.as_str();
        if original.len() >= 2 && original.chars().all(|c| c.is_ascii_uppercase()) {
            return PosTag::Noun; // acronyms read as nouns
        }
        if original.chars().all(|c| c.is_ascii_digit()) {
            return PosTag::Other;
        }
        suffix_tag(&word.lower).unwrap_or(PosTag::Other)
    }
}

impl Tagger for LexiconTagger {
    fn tag_sentence(&self, words: &[SentenceWord]) -> Vec<PosTag> {
        words.iter().map(|w| self.tag_word(w)).collect()
    }
}

fn suffix_tag(lower: &str) -> Option<PosTag> {
    let n = lower.len();
    if n > 3 && (lower.ends_with("ied") || lower.ends_with("ed")) {
        return Some(PosTag::VerbPastParticiple);
    }
    for s in ["ing", "tion", "sion", "ment", "ness", "ance", "ence", "ity"] {
        if n > s.len() + 1 && lower.ends_with(s) {
            return Some(PosTag::Noun);
        }
    }
    for s in ["ize", "ise", "ify"] {
        if n > s.len() + 1 && lower.ends_with(s) {
            return Some(PosTag::Verb);
        }
    }
    for s in ["able", "ible", "ful", "less", "ous"] {
        if n > s.len() + 1 && lower.ends_with(s) {
            return Some(PosTag::Adjective);
        }
    }
    if n > 2
        && lower.ends_with('s')
        && !lower.ends_with("ss")
        && !lower.ends_with("us")
        && !lower.ends_with("is")
    {
        return Some(PosTag::Noun); // plural
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::name::split::split_identifier;

    fn tag(name: &str) -> Vec<(String, PosTag)> {
        let tagger = LexiconTagger::bundled();
        let words = split_identifier(name);
        pos_tag(name, &words, &tagger)
            .words
            .into_iter()
            .map(|w| (w.text, w.tag))
            .collect()
    }

    #[test]
    fn execute_action_tags_verb_noun() {
        assert_eq!(
            tag("ExecuteAction"),
            vec![
                ("Execute".to_string(), PosTag::Verb),
                ("Action".to_string(), PosTag::Noun)
            ]
        );
    }

    #[test]
    fn entries_is_a_noun() {
        assert_eq!(tag("Entries"), vec![("Entries".to_string(), PosTag::Noun)]);
    }

    #[test]
    fn is_closed_tags_verb_then_past_participle() {
        assert_eq!(
            tag("IsClosed"),
            vec![
                ("Is".to_string(), PosTag::Verb),
                ("Closed".to_string(), PosTag::VerbPastParticiple)
            ]
        );
    }

    #[test]
    fn acronyms_read_as_nouns() {
        assert_eq!(tag("SSL"), vec![("SSL".to_string(), PosTag::Noun)]);
    }

    #[test]
    fn digits_are_other() {
        assert_eq!(tag("2"), vec![("2".to_string(), PosTag::Other)]);
    }

    #[test]
    fn when_is_a_preposition() {
        assert_eq!(tag("When"), vec![("When".to_string(), PosTag::Preposition)]);
    }

    #[test]
    fn unknown_words_fall_back_to_other() {
        assert_eq!(tag("Foo"), vec![("Foo".to_string(), PosTag::Other)]);
    }

    #[test]
    fn tagging_is_deterministic_for_a_fixed_lexicon() {
        assert_eq!(tag("testGetSSLProtocol"), tag("testGetSSLProtocol"));
    }
}
