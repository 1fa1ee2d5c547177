//! The seventeen body pattern matchers.
//!
//! Each matcher checks its structural requirements against the top-level
//! statement list and extracts the (action, predicate, scenario) triple
//! from the positions its pattern fixes. Matchers return None both when the
//! structure does not fit and when nothing could be extracted.

use crate::body::asserts::{
    assertion_parts, assertion_predicate, call_exprs, catch_assertion, contains_kind, find_first,
    object_refs,
};
use crate::model::{
    Expression, Extraction, ExtractionSource, SectionRole, Statement, StatementKind, TestCase,
};

fn extraction(
    action: Option<String>,
    predicate: Option<String>,
    scenario: Option<String>,
) -> Option<Extraction> {
    Extraction::new(ExtractionSource::Body, action, predicate, scenario)
}

fn callee(expr: &Expression) -> Option<String> {
    expr.callee_name.clone()
}

fn receiver(expr: &Expression) -> Option<String> {
    expr.receiver_object().map(|s| s.to_string())
}

/// The sole object declared before `index`, if exactly one declaration
/// precedes it.
fn sole_declared_before(stmts: &[Statement], index: usize) -> Option<String> {
    let mut declared = stmts[..index]
        .iter()
        .filter(|s| s.kind == StatementKind::Declaration)
        .filter_map(|s| s.declared_name.clone());
    let first = declared.next()?;
    if declared.next().is_some() {
        return None;
    }
    Some(first)
}

fn last_declared_before(stmts: &[Statement], index: usize) -> Option<String> {
    stmts[..index]
        .iter()
        .rev()
        .find(|s| s.kind == StatementKind::Declaration)
        .and_then(|s| s.declared_name.clone())
}

/// If Else: a leading declaration, an if/else whose if part begins with a
/// method invocation and whose else part holds the assertions. Conditional
/// expressions (`cond ? a() : b()`) are accepted as cryptically constructed
/// if/else; their arms carry the extraction and the else-side assertion
/// becomes optional.
pub fn match_if_else(test: &TestCase) -> Option<Extraction> {
    let (index, anchor) = test
        .statements
        .iter()
        .enumerate()
        .find(|(_, s)| s.kind == StatementKind::IfElse)?;
    let then = anchor.section(SectionRole::Then)?;
    let first_then = then.statements.first()?;
    if first_then.kind != StatementKind::MethodInvocation {
        return None;
    }
    let action = first_then.expression.as_ref().and_then(callee)?;

    let else_assert = anchor
        .section(SectionRole::Else)
        .and_then(|sec| find_first(&sec.statements, StatementKind::Assertion));
    if !anchor.from_conditional_expr && else_assert.is_none() {
        return None;
    }
    let predicate = else_assert.and_then(assertion_predicate);
    let scenario = sole_declared_before(&test.statements, index);
    extraction(Some(action), predicate, scenario)
}

/// Loop: a loop that repeatedly invokes a method and checks it with an
/// assertion inside the loop. The loop condition's object is the scenario.
pub fn match_loop(test: &TestCase) -> Option<Extraction> {
    let anchor = test.statements.iter().find(|s| {
        s.kind == StatementKind::Loop && s.contains_kind(StatementKind::Assertion)
    })?;
    let body = anchor.section(SectionRole::Body)?;
    let action = find_first(&body.statements, StatementKind::MethodInvocation)
        .and_then(|s| s.expression.as_ref())
        .and_then(callee);
    let predicate = find_first(&body.statements, StatementKind::Assertion)
        .and_then(assertion_predicate);
    let scenario = anchor
        .expression
        .as_ref()
        .and_then(|e| e.first_referenced_object())
        .map(|s| s.to_string());
    extraction(action, predicate, scenario)
}

/// All Assertion (Single): the body is exactly one assertion. The expected
/// argument's invocation is the predicate, the actual argument's invocation
/// is the action and its receiver the scenario.
pub fn match_all_assertion_single(test: &TestCase) -> Option<Extraction> {
    let [stmt] = test.statements.as_slice() else {
        return None;
    };
    if stmt.kind != StatementKind::Assertion {
        return None;
    }
    assertion_triple(stmt)
}

/// All Assertion (Multiple): only assertions (two or more) that agree on at
/// least one shared component. Disagreements are reported alongside the
/// match.
pub fn match_all_assertion_multiple(test: &TestCase) -> Option<(Extraction, Vec<String>)> {
    if test.statements.len() < 2
        || !test
            .statements
            .iter()
            .all(|s| s.kind == StatementKind::Assertion)
    {
        return None;
    }
    let triples: Vec<Extraction> = test
        .statements
        .iter()
        .map(assertion_triple)
        .collect::<Option<Vec<_>>>()?;
    let agree = |get: fn(&Extraction) -> Option<&str>| -> bool {
        let first = get(&triples[0]);
        first.is_some()
            && triples[1..]
                .iter()
                .all(|t| get(t).is_some_and(|v| v.eq_ignore_ascii_case(first.unwrap())))
    };
    let action_agrees = agree(|t| t.action.as_deref());
    let predicate_agrees = agree(|t| t.predicate.as_deref());
    let scenario_agrees = agree(|t| t.scenario.as_deref());
    if !(action_agrees || predicate_agrees || scenario_agrees) {
        return None;
    }
    let mut diagnostics = Vec::new();
    for (i, t) in triples.iter().enumerate().skip(1) {
        for (label, agrees, a, b) in [
            ("action", action_agrees, &triples[0].action, &t.action),
            ("predicate", predicate_agrees, &triples[0].predicate, &t.predicate),
            ("scenario", scenario_agrees, &triples[0].scenario, &t.scenario),
        ] {
            if !agrees && a.is_some() && b.is_some() && a != b {
                diagnostics.push(format!(
                    "assertion {} {label} {:?} differs from {:?}",
                    i + 1,
                    b.as_deref().unwrap(),
                    a.as_deref().unwrap()
                ));
            }
        }
    }
    Some((triples.into_iter().next()?, diagnostics))
}

/// Triple of a single assertion, shared by both All Assertion variants.
///
/// Two-argument form: predicate from the expected invocation, action and
/// scenario from the actual invocation; a nested invocation in the actual
/// argument supplies the predicate when the expected part has none.
/// One-argument form: action/scenario from the sole argument and the
/// assertion's own name as predicate.
fn assertion_triple(stmt: &Statement) -> Option<Extraction> {
    let parts = assertion_parts(stmt)?;
    match (parts.expected, parts.actual) {
        (Some(expected), Some(actual)) => {
            let act_inv = actual.invocation();
            let action = act_inv.and_then(callee);
            let scenario = act_inv
                .and_then(receiver)
                .or_else(|| actual.object_name().map(|s| s.to_string()));
            let predicate = expected
                .invocation()
                .and_then(callee)
                .or_else(|| act_inv.and_then(|inv| inv.first_argument_call()).and_then(callee));
            extraction(action, predicate, scenario)
        }
        (None, Some(actual)) => {
            if let Some(inv) = actual.invocation().filter(|inv| inv.is_call()) {
                let predicate = inv
                    .first_argument_call()
                    .and_then(callee)
                    .or(Some(parts.own_name));
                extraction(callee(inv), predicate, receiver(inv))
            } else {
                let scenario = actual.object_name().map(|s| s.to_string());
                extraction(None, Some(parts.own_name), scenario)
            }
        }
        _ => extraction(None, Some(parts.own_name), None),
    }
}

/// Guard for the whole No Assertion family: no assertion at any nesting
/// depth, and no `fail` either — a body with `fail` is assertion-shaped and
/// belongs to the try/catch patterns.
pub fn assertion_free(test: &TestCase) -> bool {
    !test.statements.is_empty()
        && !contains_kind(&test.statements, StatementKind::Assertion)
        && !contains_kind(&test.statements, StatementKind::Fail)
}

/// No Assertion (Specialized for sole method): exactly one method
/// invocation across all statements, independent or in argument position.
pub fn match_no_assertion_sole_method(test: &TestCase) -> Option<Extraction> {
    let calls = call_exprs(&test.statements);
    let [only] = calls.as_slice() else {
        return None;
    };
    let action = callee(only)?;
    let scenario = receiver(only).or_else(|| {
        test.statements.iter().find_map(|s| {
            if s.kind == StatementKind::Declaration
                && s.expression
                    .as_ref()
                    .is_some_and(|e| e.invocation().is_some())
            {
                s.declared_name.clone()
            } else {
                None
            }
        })
    });
    extraction(Some(action), None, scenario)
}

/// No Assertion (Single declaration): the body is one declaration; testing
/// that the declared object initializes. Action is the initializing method
/// (or constructor), scenario the declared object.
pub fn match_no_assertion_single_declaration(test: &TestCase) -> Option<Extraction> {
    let [stmt] = test.statements.as_slice() else {
        return None;
    };
    if stmt.kind != StatementKind::Declaration {
        return None;
    }
    let init = stmt.expression.as_ref()?;
    let action = init
        .invocation()
        .and_then(callee)
        .or_else(|| (init.form == crate::model::ExprForm::NewInstance).then(|| init.callee_name.clone()).flatten())?;
    extraction(Some(action), None, stmt.declared_name.clone())
}

/// No Assertion (Single method invocation): the body is one invocation
/// statement; the inner argument invocation is the predicate.
pub fn match_no_assertion_single_method_invocation(test: &TestCase) -> Option<Extraction> {
    let [stmt] = test.statements.as_slice() else {
        return None;
    };
    if stmt.kind != StatementKind::MethodInvocation {
        return None;
    }
    let expr = stmt.expression.as_ref()?;
    let action = callee(expr)?;
    let predicate = expr.first_argument_call().and_then(callee);
    extraction(Some(action), predicate, None)
}

/// No Assertion (Single new object): one statement initializing a new
/// object chained to two required methods. Last callee is the action, first
/// is the predicate, the constructed type is the scenario.
pub fn match_no_assertion_single_new_object(test: &TestCase) -> Option<Extraction> {
    let [stmt] = test.statements.as_slice() else {
        return None;
    };
    if stmt.kind != StatementKind::NewObject {
        return None;
    }
    let expr = stmt.expression.as_ref()?;
    let chain = expr.call_chain();
    if chain.len() < 2 {
        return None;
    }
    let base = expr.chain_base();
    if base.form != crate::model::ExprForm::NewInstance {
        return None;
    }
    extraction(
        Some(chain[chain.len() - 1].to_string()),
        Some(chain[0].to_string()),
        base.callee_name.clone(),
    )
}

/// No Assertion: at least three statements led by a declaration. The action
/// sits in the declaration's initializer or is the first method invoked
/// after it; the declared object is the scenario when it receives that
/// invocation; the secondary invocation is the predicate.
pub fn match_no_assertion_base(test: &TestCase) -> Option<Extraction> {
    if test.statements.len() < 3 {
        return None;
    }
    let lead = &test.statements[0];
    if lead.kind != StatementKind::Declaration {
        return None;
    }
    let init_call = lead.expression.as_ref().and_then(|e| e.invocation());
    let after: Vec<&Expression> = call_exprs(&test.statements[1..]);
    let mut sequence: Vec<&Expression> = Vec::new();
    sequence.extend(init_call);
    sequence.extend(after.iter().copied());
    let action = sequence.first().and_then(|e| callee(e))?;
    let predicate = sequence.get(1).and_then(|e| callee(e));
    let scenario = lead.declared_name.clone().filter(|declared| {
        after
            .first()
            .and_then(|e| e.receiver_object())
            .is_some_and(|r| r == declared)
    });
    extraction(Some(action), predicate, scenario)
}

/// No Assertion (Generalized): two statements suffice; the action is the
/// first method invoked after the leading declaration, whose object is the
/// scenario.
pub fn match_no_assertion_generalized(test: &TestCase) -> Option<Extraction> {
    if test.statements.len() < 2 {
        return None;
    }
    let lead = &test.statements[0];
    if lead.kind != StatementKind::Declaration {
        return None;
    }
    let action = call_exprs(&test.statements[1..])
        .first()
        .and_then(|e| callee(e))?;
    extraction(Some(action), None, lead.declared_name.clone())
}

/// No Assertion (Multiple declarations): the most frequently referenced
/// declared object is the scenario; the action is the method invoked in
/// argument position on that object (falling back to the method invoked on
/// it). Frequency ties break by earliest declaration.
pub fn match_no_assertion_multiple_declarations(test: &TestCase) -> Option<Extraction> {
    let declared: Vec<&str> = test
        .statements
        .iter()
        .filter(|s| s.kind == StatementKind::Declaration)
        .filter_map(|s| s.declared_name.as_deref())
        .collect();
    if declared.len() < 2 {
        return None;
    }
    let refs = object_refs(&test.statements);
    // strictly-greater keeps the earliest declaration on ties
    let mut best: (&str, usize) = ("", 0);
    for name in &declared {
        let count = refs.iter().filter(|r| *r == name).count();
        if count > best.1 {
            best = (name, count);
        }
    }
    if best.1 == 0 {
        return None;
    }
    let scenario = best.0.to_string();
    let calls = call_exprs(&test.statements);
    let on_scenario: Vec<&&Expression> = calls
        .iter()
        .filter(|e| e.receiver_object() == Some(scenario.as_str()))
        .collect();
    let action = on_scenario
        .iter()
        .find_map(|e| e.first_argument_call())
        .and_then(callee)
        .or_else(|| on_scenario.first().and_then(|e| callee(e)))?;
    extraction(Some(action), None, Some(scenario))
}

/// No Assertion (Multiple method invocations): the most frequently invoked
/// method is the action; its inner argument invocation is the predicate.
/// Frequency ties break by earliest occurrence.
pub fn match_no_assertion_multiple_invocations(test: &TestCase) -> Option<Extraction> {
    if test.statements.len() < 2 {
        return None;
    }
    let calls = call_exprs(&test.statements);
    if calls.is_empty() {
        return None;
    }
    let mut best: Option<(&str, usize)> = None;
    for e in &calls {
        let Some(name) = e.callee_name.as_deref() else {
            continue;
        };
        let count = calls
            .iter()
            .filter(|c| c.callee_name.as_deref() == Some(name))
            .count();
        match best {
            Some((_, best_count)) if best_count >= count => {}
            _ => best = Some((name, count)),
        }
    }
    let (action, _) = best?;
    let predicate = calls
        .iter()
        .find(|e| e.callee_name.as_deref() == Some(action))
        .and_then(|e| e.first_argument_call())
        .and_then(callee);
    extraction(Some(action.to_string()), predicate, None)
}

/// Try Catch (Restricted): the body is one try/catch whose try part is
/// exactly one invocation followed by `fail`. The invocation is the action,
/// its object the (optional) scenario.
pub fn match_try_catch_restricted(test: &TestCase) -> Option<Extraction> {
    let [stmt] = test.statements.as_slice() else {
        return None;
    };
    if stmt.kind != StatementKind::TryCatch {
        return None;
    }
    let try_part = stmt.section(SectionRole::Try)?;
    let [inv, fail] = try_part.statements.as_slice() else {
        return None;
    };
    if inv.kind != StatementKind::MethodInvocation || fail.kind != StatementKind::Fail {
        return None;
    }
    let expr = inv.expression.as_ref()?;
    let action = callee(expr)?;
    let predicate = catch_assertion(stmt).and_then(assertion_predicate);
    extraction(Some(action), predicate, receiver(expr))
}

/// Try Catch: an optional leading declaration, then a try/catch whose try
/// part opens with the action invocation performed on the required object.
pub fn match_try_catch_plain(test: &TestCase) -> Option<Extraction> {
    let (lead, stmt) = match test.statements.as_slice() {
        [stmt] => (None, stmt),
        [lead, stmt] if lead.kind == StatementKind::Declaration => (Some(lead), stmt),
        _ => return None,
    };
    if stmt.kind != StatementKind::TryCatch {
        return None;
    }
    let try_part = stmt.section(SectionRole::Try)?;
    let first = try_part.statements.first()?;
    if first.kind != StatementKind::MethodInvocation {
        return None;
    }
    let expr = first.expression.as_ref()?;
    let action = callee(expr)?;
    let scenario = receiver(expr).or_else(|| lead.and_then(|s| s.declared_name.clone()))?;
    let predicate = catch_assertion(stmt).and_then(assertion_predicate);
    extraction(Some(action), predicate, Some(scenario))
}

/// Try Catch (Generalized): arbitrary setup before the `scenario.action()`
/// invocation in the try part; the assertion may sit in the catch part or
/// after the try/catch.
pub fn match_try_catch_generalized(test: &TestCase) -> Option<Extraction> {
    let (index, stmt) = test
        .statements
        .iter()
        .enumerate()
        .find(|(_, s)| s.kind == StatementKind::TryCatch)?;
    let try_part = stmt.section(SectionRole::Try)?;
    let fail_at = try_part
        .statements
        .iter()
        .position(|s| s.kind == StatementKind::Fail);
    let candidates = match fail_at {
        Some(pos) => &try_part.statements[..pos],
        None => &try_part.statements[..],
    };
    let action_stmt = candidates
        .iter()
        .rev()
        .find(|s| s.kind == StatementKind::MethodInvocation)?;
    let expr = action_stmt.expression.as_ref()?;
    let action = callee(expr)?;
    let scenario = receiver(expr).or_else(|| last_declared_before(&test.statements, index))?;
    let predicate = catch_assertion(stmt)
        .or_else(|| {
            test.statements[index + 1..]
                .iter()
                .find(|s| s.kind == StatementKind::Assertion)
        })
        .and_then(assertion_predicate);
    extraction(Some(action), predicate, Some(scenario))
}

fn single_trailing_assertion(stmts: &[Statement]) -> Option<&Statement> {
    let last = stmts.last()?;
    if last.kind != StatementKind::Assertion {
        return None;
    }
    let count = stmts
        .iter()
        .filter(|s| s.kind == StatementKind::Assertion)
        .count();
    (count == 1).then_some(last)
}

/// Normal (Restricted): at most three statements ending in the only
/// assertion. Action from the leading declaration's initializer (or the
/// assertion's actual part); scenario from the first invocation's object or
/// the leading declared object; predicate is the assertion method's name.
pub fn match_normal_restricted(test: &TestCase) -> Option<Extraction> {
    if test.statements.is_empty() || test.statements.len() > 3 {
        return None;
    }
    let assertion = single_trailing_assertion(&test.statements)?;
    let lead_decl = test
        .statements
        .first()
        .filter(|s| s.kind == StatementKind::Declaration);
    let action = lead_decl
        .and_then(|s| s.expression.as_ref())
        .and_then(|e| e.invocation())
        .and_then(callee)
        .or_else(|| {
            assertion_parts(assertion)
                .and_then(|p| p.actual.and_then(|a| a.invocation()))
                .and_then(callee)
        });
    let predicate = assertion.expression.as_ref().and_then(callee);
    let scenario = test.statements[..test.statements.len() - 1]
        .iter()
        .find(|s| s.kind == StatementKind::MethodInvocation)
        .and_then(|s| s.expression.as_ref())
        .and_then(receiver)
        .or_else(|| lead_decl.and_then(|s| s.declared_name.clone()));
    extraction(action, predicate, scenario)
}

/// Normal (Generalized): any number of statements with a trailing
/// assertion. Same action and predicate extraction as the restricted form,
/// but the scenario comes from method invocation receivers only.
pub fn match_normal_generalized(test: &TestCase) -> Option<Extraction> {
    let last = test.statements.last()?;
    if last.kind != StatementKind::Assertion {
        return None;
    }
    let lead_decl = test
        .statements
        .first()
        .filter(|s| s.kind == StatementKind::Declaration);
    let action = lead_decl
        .and_then(|s| s.expression.as_ref())
        .and_then(|e| e.invocation())
        .and_then(callee)
        .or_else(|| {
            assertion_parts(last)
                .and_then(|p| p.actual.and_then(|a| a.invocation()))
                .and_then(callee)
        });
    let predicate = last.expression.as_ref().and_then(callee);
    let scenario = test
        .statements
        .iter()
        .take_while(|s| s.kind != StatementKind::Assertion)
        .find(|s| s.kind == StatementKind::MethodInvocation)
        .and_then(|s| s.expression.as_ref())
        .and_then(receiver);
    extraction(action, predicate, scenario)
}
