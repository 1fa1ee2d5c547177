//! Test-name analysis: identifier splitting, part-of-speech tagging and the
//! name pattern catalog.

pub mod patterns;
pub mod split;
pub mod tagger;

pub use patterns::{
    load_regexes, NameEngine, NameMatch, NamePatternId, RegexSubPattern, DEFAULT_REGEXES,
};
pub use split::split_identifier;
pub use tagger::{pos_tag, LexiconTagger, PosTag, TaggedWord, Tagger, WordSequence, DEFAULT_LEXICON};
