//! Information comparison: normalize the name-side and body-side triples,
//! classify the name, and generate improvement suggestions.

use serde::{Deserialize, Serialize};

use crate::model::{Component, Extraction};

/// Classification outcome. Unknown means one side yielded no information at
/// all; it is informational and never actionable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Descriptive,
    NonDescriptive,
    Unknown,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Descriptive => write!(f, "descriptive"),
            Outcome::NonDescriptive => write!(f, "non-descriptive"),
            Outcome::Unknown => write!(f, "unknown"),
        }
    }
}

/// Per-component comparison result. NameOnly (a name component the body
/// does not support) is kept distinct from Mismatch so reports can soften
/// the message for slots the body pattern simply could not extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentResult {
    Match,
    Mismatch,
    NameOnly,
    BodyOnly,
    BothAbsent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub outcome: Outcome,
    pub action: ComponentResult,
    pub predicate: ComponentResult,
    pub scenario: ComponentResult,
}

impl Classification {
    pub fn component(&self, c: Component) -> ComponentResult {
        match c {
            Component::Action => self.action,
            Component::Predicate => self.predicate,
            Component::Scenario => self.scenario,
        }
    }

    fn unknown() -> Self {
        Classification {
            outcome: Outcome::Unknown,
            action: ComponentResult::BothAbsent,
            predicate: ComponentResult::BothAbsent,
            scenario: ComponentResult::BothAbsent,
        }
    }
}

/// Canonical form of an extracted fragment: receiver and parentheses
/// stripped, lowercased.
pub fn normalize(fragment: &str) -> String {
    let fragment = fragment.trim();
    let fragment = match fragment.find('(') {
        Some(idx) => &fragment[..idx],
        None => fragment,
    };
    let fragment = fragment.rsplit('.').next().unwrap_or(fragment);
    fragment
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_lowercase()
}

/// Canonical form of a multi-word fragment: words joined without
/// separators, lowercased; a leading "test" word is dropped (it is never
/// information).
pub fn normalize_words(words: &[String]) -> String {
    let mut words = words.iter();
    let mut out = String::new();
    let mut first = true;
    for w in &mut words {
        if first && w.eq_ignore_ascii_case("test") {
            first = false;
            continue;
        }
        first = false;
        out.push_str(&normalize(w));
    }
    out
}

/// Two canonical fragments match when they are equal or one is strictly
/// contained in the other. Containment needs at least two characters on
/// both sides so one-letter fragments cannot match accidentally.
pub fn pieces_match(a: &str, b: &str) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    if a == b {
        return true;
    }
    if a.len() < 2 || b.len() < 2 {
        return false;
    }
    a.contains(b) || b.contains(a)
}

fn compare_component(name: Option<&str>, body: Option<&str>) -> ComponentResult {
    match (name, body) {
        (None, None) => ComponentResult::BothAbsent,
        (Some(_), None) => ComponentResult::NameOnly,
        (None, Some(_)) => ComponentResult::BodyOnly,
        (Some(n), Some(b)) => {
            if pieces_match(&normalize(n), &normalize(b)) {
                ComponentResult::Match
            } else {
                ComponentResult::Mismatch
            }
        }
    }
}

/// Compares the two extractions componentwise.
///
/// Unknown when either side is absent or empty. Descriptive when every
/// present name component matches its body counterpart (the name is a valid
/// subset of the body); NonDescriptive as soon as one component mismatches
/// or has no body support.
pub fn classify(name_ext: Option<&Extraction>, body_ext: Option<&Extraction>) -> Classification {
    let (Some(name), Some(body)) = (name_ext, body_ext) else {
        return Classification::unknown();
    };
    if name.is_empty() || body.is_empty() {
        return Classification::unknown();
    }
    let action = compare_component(name.action.as_deref(), body.action.as_deref());
    let predicate = compare_component(name.predicate.as_deref(), body.predicate.as_deref());
    let scenario = compare_component(name.scenario.as_deref(), body.scenario.as_deref());
    let bad = |r: ComponentResult| {
        matches!(r, ComponentResult::Mismatch | ComponentResult::NameOnly)
    };
    let outcome = if bad(action) || bad(predicate) || bad(scenario) {
        Outcome::NonDescriptive
    } else {
        Outcome::Descriptive
    };
    Classification {
        outcome,
        action,
        predicate,
        scenario,
    }
}

/// An improvement suggestion for one component of the name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Suggestion {
    /// The body has information the name lacks.
    Add {
        component: Component,
        body_value: String,
    },
    /// The name has information the body does not support.
    Remove {
        component: Component,
        name_value: String,
    },
    /// The name's information contradicts the body's.
    Replace {
        component: Component,
        name_value: String,
        body_value: String,
    },
}

impl std::fmt::Display for Suggestion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Suggestion::Add {
                component,
                body_value,
            } => write!(f, "add {component} \"{body_value}\""),
            Suggestion::Remove {
                component,
                name_value,
            } => write!(f, "remove {component} \"{name_value}\""),
            Suggestion::Replace {
                component,
                name_value,
                body_value,
            } => write!(f, "replace {component} \"{name_value}\" -> \"{body_value}\""),
        }
    }
}

/// Suggestions for the classified pair: Add for every body-only component
/// (descriptive or not), Remove and Replace only for non-descriptive names.
/// Unknown yields nothing. Ordered Add, Remove, Replace, each in
/// action/predicate/scenario order for stable report diffs.
pub fn suggest(
    classification: &Classification,
    name_ext: Option<&Extraction>,
    body_ext: Option<&Extraction>,
) -> Vec<Suggestion> {
    if classification.outcome == Outcome::Unknown {
        return Vec::new();
    }
    let value = |ext: Option<&Extraction>, c: Component| -> String {
        ext.and_then(|e| e.component(c))
            .unwrap_or_default()
            .to_string()
    };
    let mut out = Vec::new();
    for c in Component::ALL {
        if classification.component(c) == ComponentResult::BodyOnly {
            out.push(Suggestion::Add {
                component: c,
                body_value: value(body_ext, c),
            });
        }
    }
    if classification.outcome == Outcome::NonDescriptive {
        for c in Component::ALL {
            if classification.component(c) == ComponentResult::NameOnly {
                out.push(Suggestion::Remove {
                    component: c,
                    name_value: value(name_ext, c),
                });
            }
        }
        for c in Component::ALL {
            if classification.component(c) == ComponentResult::Mismatch {
                out.push(Suggestion::Replace {
                    component: c,
                    name_value: value(name_ext, c),
                    body_value: value(body_ext, c),
                });
            }
        }
    }
    out
}

/// Applies suggestions to the name-side triple: Add and Replace copy the
/// body value in, Remove clears the slot. Used by the closed-loop property
/// (a repaired name re-classifies as Descriptive).
pub fn apply_suggestions(name_ext: &Extraction, suggestions: &[Suggestion]) -> Extraction {
    let mut repaired = name_ext.clone();
    for s in suggestions {
        match s {
            Suggestion::Add {
                component,
                body_value,
            }
            | Suggestion::Replace {
                component,
                body_value,
                ..
            } => repaired.set_component(*component, Some(body_value.clone())),
            Suggestion::Remove { component, .. } => repaired.set_component(*component, None),
        }
    }
    repaired
}
