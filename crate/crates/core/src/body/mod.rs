//! The test-body pattern catalog.
//!
//! Seventeen patterns dispatched in the pilot-study order: If Else, Loop,
//! All Assertion, No Assertion, Try Catch, Normal (Restricted), Normal
//! (Generalized) — with restricted variants before generalized ones inside
//! each family. The first pattern whose requirements a body satisfies wins.

pub mod asserts;
pub mod matchers;

use serde::{Deserialize, Serialize};

use crate::model::{Component, Extraction, TestCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BodyPatternId {
    IfElse,
    Loop,
    TryCatch,
    TryCatchRestricted,
    TryCatchGeneralized,
    AllAssertionSingle,
    AllAssertionMultiple,
    NormalRestricted,
    NormalGeneralized,
    NoAssertion,
    NoAssertionGeneralized,
    NoAssertionSoleMethod,
    NoAssertionSingleDeclaration,
    NoAssertionSingleMethodInvocation,
    NoAssertionSingleNewObject,
    NoAssertionMultipleMethodInvocations,
    NoAssertionMultipleDeclarations,
}

impl BodyPatternId {
    /// Dispatch order: family order of the match-rate tables, restricted
    /// before generalized within each family.
    pub const DISPATCH: [BodyPatternId; 17] = [
        BodyPatternId::IfElse,
        BodyPatternId::Loop,
        BodyPatternId::AllAssertionSingle,
        BodyPatternId::AllAssertionMultiple,
        BodyPatternId::NoAssertionSoleMethod,
        BodyPatternId::NoAssertionSingleDeclaration,
        BodyPatternId::NoAssertionSingleMethodInvocation,
        BodyPatternId::NoAssertionSingleNewObject,
        BodyPatternId::NoAssertion,
        BodyPatternId::NoAssertionGeneralized,
        BodyPatternId::NoAssertionMultipleDeclarations,
        BodyPatternId::NoAssertionMultipleMethodInvocations,
        BodyPatternId::TryCatchRestricted,
        BodyPatternId::TryCatch,
        BodyPatternId::TryCatchGeneralized,
        BodyPatternId::NormalRestricted,
        BodyPatternId::NormalGeneralized,
    ];

    pub fn canonical_name(self) -> &'static str {
        use BodyPatternId::*;
        match self {
            IfElse => "If Else",
            Loop => "Loop",
            TryCatch => "Try Catch",
            TryCatchRestricted => "Try Catch (Restricted)",
            TryCatchGeneralized => "Try Catch (Generalized)",
            AllAssertionSingle => "All Assertion (Single)",
            AllAssertionMultiple => "All Assertion (Multiple)",
            NormalRestricted => "Normal (Restricted)",
            NormalGeneralized => "Normal (Generalized)",
            NoAssertion => "No Assertion",
            NoAssertionGeneralized => "No Assertion (Generalized)",
            NoAssertionSoleMethod => "No Assertion (Specialized for sole method)",
            NoAssertionSingleDeclaration => "No Assertion (Single declaration)",
            NoAssertionSingleMethodInvocation => "No Assertion (Single method invocation)",
            NoAssertionSingleNewObject => "No Assertion (Single new object)",
            NoAssertionMultipleMethodInvocations => "No Assertion (Multiple method invocations)",
            NoAssertionMultipleDeclarations => "No Assertion (Multiple declarations)",
        }
    }

    /// (required, allowed) components of an extraction this pattern yields.
    pub fn presence_rule(self) -> (&'static [Component], &'static [Component]) {
        use BodyPatternId::*;
        use Component::*;
        match self {
            IfElse => (&[Action], &[Action, Predicate, Scenario]),
            Loop => (&[], &[Action, Predicate, Scenario]),
            TryCatchRestricted => (&[Action], &[Action, Predicate, Scenario]),
            TryCatch | TryCatchGeneralized => {
                (&[Action, Scenario], &[Action, Predicate, Scenario])
            }
            AllAssertionSingle | AllAssertionMultiple => {
                (&[], &[Action, Predicate, Scenario])
            }
            NormalRestricted | NormalGeneralized => {
                (&[Predicate], &[Action, Predicate, Scenario])
            }
            NoAssertion => (&[Action], &[Action, Predicate, Scenario]),
            NoAssertionGeneralized => (&[Action, Scenario], &[Action, Scenario]),
            NoAssertionSoleMethod => (&[Action], &[Action, Scenario]),
            NoAssertionSingleDeclaration => (&[Action, Scenario], &[Action, Scenario]),
            NoAssertionSingleMethodInvocation => (&[Action], &[Action, Predicate]),
            NoAssertionSingleNewObject => (
                &[Action, Predicate, Scenario],
                &[Action, Predicate, Scenario],
            ),
            NoAssertionMultipleDeclarations => (&[Action, Scenario], &[Action, Scenario]),
            NoAssertionMultipleMethodInvocations => (&[Action], &[Action, Predicate]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyMatch {
    pub pattern: BodyPatternId,
    pub extraction: Extraction,
    /// Notes recorded during matching (e.g. disagreeing assertion
    /// components under All Assertion (Multiple)).
    pub diagnostics: Vec<String>,
}

/// Matches a body against the catalog; the first pattern whose structural
/// requirements the body satisfies (and that extracts something) wins.
/// No-match is a value, not an error.
pub fn match_body(test: &TestCase) -> Option<BodyMatch> {
    let no_assertions = matchers::assertion_free(test);
    for pattern in BodyPatternId::DISPATCH {
        use BodyPatternId::*;
        if matches!(
            pattern,
            NoAssertion
                | NoAssertionGeneralized
                | NoAssertionSoleMethod
                | NoAssertionSingleDeclaration
                | NoAssertionSingleMethodInvocation
                | NoAssertionSingleNewObject
                | NoAssertionMultipleMethodInvocations
                | NoAssertionMultipleDeclarations
        ) && !no_assertions
        {
            continue;
        }
        let found = match pattern {
            IfElse => matchers::match_if_else(test).map(|e| (e, Vec::new())),
            Loop => matchers::match_loop(test).map(|e| (e, Vec::new())),
            AllAssertionSingle => {
                matchers::match_all_assertion_single(test).map(|e| (e, Vec::new()))
            }
            AllAssertionMultiple => matchers::match_all_assertion_multiple(test),
            NoAssertionSoleMethod => {
                matchers::match_no_assertion_sole_method(test).map(|e| (e, Vec::new()))
            }
            NoAssertionSingleDeclaration => {
                matchers::match_no_assertion_single_declaration(test).map(|e| (e, Vec::new()))
            }
            NoAssertionSingleMethodInvocation => {
                matchers::match_no_assertion_single_method_invocation(test)
                    .map(|e| (e, Vec::new()))
            }
            NoAssertionSingleNewObject => {
                matchers::match_no_assertion_single_new_object(test).map(|e| (e, Vec::new()))
            }
            NoAssertion => matchers::match_no_assertion_base(test).map(|e| (e, Vec::new())),
            NoAssertionGeneralized => {
                matchers::match_no_assertion_generalized(test).map(|e| (e, Vec::new()))
            }
            NoAssertionMultipleDeclarations => {
                matchers::match_no_assertion_multiple_declarations(test).map(|e| (e, Vec::new()))
            }
            NoAssertionMultipleMethodInvocations => {
                matchers::match_no_assertion_multiple_invocations(test).map(|e| (e, Vec::new()))
            }
            TryCatchRestricted => {
                matchers::match_try_catch_restricted(test).map(|e| (e, Vec::new()))
            }
            TryCatch => matchers::match_try_catch_plain(test).map(|e| (e, Vec::new())),
            TryCatchGeneralized => {
                matchers::match_try_catch_generalized(test).map(|e| (e, Vec::new()))
            }
            NormalRestricted => matchers::match_normal_restricted(test).map(|e| (e, Vec::new())),
            NormalGeneralized => matchers::match_normal_generalized(test).map(|e| (e, Vec::new())),
        };
        if let Some((extraction, diagnostics)) = found {
            debug_assert!(!extraction.is_empty());
            return Some(BodyMatch {
                pattern,
                extraction,
                diagnostics,
            });
        }
    }
    None
}
