//! Shared assertion and invocation analysis for the body patterns.

use crate::model::{Expression, SectionRole, Statement, StatementKind};

/// An assertion statement split into its JUnit argument roles. The
/// (expected, actual) two-argument order is assumed; an optional leading
/// string-literal message (3-argument assertEquals) is skipped; one-argument
/// assertions have only an actual part.
pub struct AssertionParts<'a> {
    pub own_name: String,
    pub expected: Option<&'a Expression>,
    pub actual: Option<&'a Expression>,
}

pub fn assertion_parts(stmt: &Statement) -> Option<AssertionParts<'_>> {
    if !matches!(stmt.kind, StatementKind::Assertion | StatementKind::Fail) {
        return None;
    }
    let expr = stmt.expression.as_ref()?;
    let own_name = expr.callee_name.clone()?;
    let mut args: &[Expression] = &expr.arguments;
    if args.len() >= 3 && args[0].is_string_literal() {
        args = &args[1..];
    }
    let (expected, actual) = match args.len() {
        0 => (None, None),
        1 => (None, Some(&args[0])),
        _ => (Some(&args[0]), Some(&args[1])),
    };
    Some(AssertionParts {
        own_name,
        expected,
        actual,
    })
}

/// Predicate of an assertion for the if/else, loop and try/catch patterns:
/// the invocation in the actual position, falling back to the expected
/// position when the actual part carries none.
pub fn assertion_predicate(stmt: &Statement) -> Option<String> {
    let parts = assertion_parts(stmt)?;
    let from = |e: Option<&Expression>| {
        e.and_then(|x| x.invocation())
            .and_then(|inv| inv.callee_name.clone())
    };
    from(parts.actual).or_else(|| from(parts.expected))
}

/// First statement of the given kind, searching nested sections in source
/// order.
pub fn find_first<'a>(stmts: &'a [Statement], kind: StatementKind) -> Option<&'a Statement> {
    for s in stmts {
        if s.kind == kind {
            return Some(s);
        }
        for section in &s.sections {
            if let Some(found) = find_first(&section.statements, kind) {
                return Some(found);
            }
        }
    }
    None
}

pub fn contains_kind(stmts: &[Statement], kind: StatementKind) -> bool {
    stmts.iter().any(|s| s.contains_kind(kind))
}

/// All method-call expression nodes of a statement list in evaluation order,
/// recursing into compound sections.
pub fn call_exprs<'a>(stmts: &'a [Statement]) -> Vec<&'a Expression> {
    let mut out = Vec::new();
    fn visit_expr<'a>(e: &'a Expression, out: &mut Vec<&'a Expression>) {
        if let Some(recv) = e.receiver.as_deref() {
            visit_expr(recv, out);
        }
        for arg in &e.arguments {
            visit_expr(arg, out);
        }
        if e.is_call() {
            out.push(e);
        }
    }
    fn visit_stmt<'a>(s: &'a Statement, out: &mut Vec<&'a Expression>) {
        if let Some(e) = &s.expression {
            visit_expr(e, out);
        }
        for child in s.children() {
            visit_stmt(child, out);
        }
    }
    for s in stmts {
        visit_stmt(s, &mut out);
    }
    out
}

/// All object references (bare identifiers and field accesses) in a
/// statement list.
pub fn object_refs(stmts: &[Statement]) -> Vec<&str> {
    let mut out = Vec::new();
    fn visit_expr<'a>(e: &'a Expression, out: &mut Vec<&'a str>) {
        if e.form == crate::model::ExprForm::ObjectRef {
            if let Some(name) = e.object_name() {
                out.push(name);
            }
        }
        if let Some(recv) = e.receiver.as_deref() {
            visit_expr(recv, out);
        }
        for arg in &e.arguments {
            visit_expr(arg, out);
        }
    }
    fn visit_stmt<'a>(s: &'a Statement, out: &mut Vec<&'a str>) {
        if let Some(e) = &s.expression {
            visit_expr(e, out);
        }
        for child in s.children() {
            visit_stmt(child, out);
        }
    }
    for s in stmts {
        visit_stmt(s, &mut out);
    }
    out
}

/// First assertion inside the catch (or finally) parts of a try/catch.
pub fn catch_assertion(try_stmt: &Statement) -> Option<&Statement> {
    for section in &try_stmt.sections {
        if matches!(section.role, SectionRole::Catch | SectionRole::Finally) {
            if let Some(found) = find_first(&section.statements, StatementKind::Assertion) {
                return Some(found);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_source;
    use std::path::Path;

    fn body(src: &str) -> Vec<Statement> {
        let source = format!("class T {{ @Test public void testIt() {{ {src} }} }}");
        parse_source(&source, Path::new("T.java"))
            .unwrap()
            .tests
            .remove(0)
            .statements
    }

    #[test]
    fn two_argument_assertion_splits_expected_and_actual() {
        let stmts = body("assertEquals(getSampleElements(), multimap.entries());");
        let parts = assertion_parts(&stmts[0]).unwrap();
        assert_eq!(parts.own_name, "assertEquals");
        assert_eq!(
            parts.expected.unwrap().invocation().unwrap().callee_name.as_deref(),
            Some("getSampleElements")
        );
        assert_eq!(
            parts.actual.unwrap().invocation().unwrap().callee_name.as_deref(),
            Some("entries")
        );
    }

    #[test]
    fn leading_message_argument_is_skipped() {
        let stmts = body("assertEquals(\"mismatch\", expected(), obj.actual());");
        let parts = assertion_parts(&stmts[0]).unwrap();
        assert_eq!(
            parts.expected.unwrap().invocation().unwrap().callee_name.as_deref(),
            Some("expected")
        );
    }

    #[test]
    fn predicate_falls_back_to_the_expected_position() {
        let stmts = body("assertEquals(e.msg(), \"boom\");");
        assert_eq!(assertion_predicate(&stmts[0]).as_deref(), Some("msg"));
    }

    #[test]
    fn call_exprs_follow_evaluation_order() {
        let stmts = body("Foo f = make(); f.open().close();");
        let callees: Vec<_> = call_exprs(&stmts)
            .iter()
            .map(|e| e.callee_name.as_deref().unwrap())
            .collect();
        assert_eq!(callees, vec!["make", "open", "close"]);
    }
}
