//! Java source parsing.
//!
//! Lowers `.java` files into the statement-level model. Only the shapes the
//! pattern catalogs need are distinguished; everything else becomes an
//! opaque `Other` statement or expression. Parsing is per-file and
//! stateless; a scan never aborts because one file is malformed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tree_sitter::Node;
use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::model::{
    ExprForm, Expression, Location, Section, SectionRole, Statement, StatementKind, TestCase,
};

/// Result of scanning a source root: every recognized JUnit test plus
/// per-file problems that did not stop the scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub tests: Vec<TestCase>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub file: PathBuf,
    pub message: String,
}

/// A parsed class, kept only as far as test recognition needs it.
#[derive(Debug, Clone)]
pub struct ClassModel {
    pub name: String,
    pub superclass: Option<String>,
    pub public_methods: Vec<String>,
    pub test_methods: Vec<RawTest>,
}

/// A recognized test method before methods-under-test resolution.
#[derive(Debug, Clone)]
pub struct RawTest {
    pub name: String,
    pub statements: Vec<Statement>,
    pub start_line: usize,
    pub end_line: usize,
}

/// Public methods of every parsed class, keyed by simple class name. Used to
/// resolve `FooTest` to the production class `Foo` within the scanned root.
pub type ClassIndex = BTreeMap<String, Vec<String>>;

/// Parses every `.java` file under `root` and returns all JUnit tests.
///
/// Recognizes JUnit 4 `@Test` methods and JUnit 3 style tests (public void
/// `test*` methods in classes extending a test base). Unparseable files are
/// reported as diagnostics, never as a fatal error.
pub fn parse_test_classes(root: &Path) -> Result<ScanOutcome> {
    parse_test_classes_filtered(root, |_| true)
}

/// Same as [`parse_test_classes`] but lets the caller skip files.
pub fn parse_test_classes_filtered(
    root: &Path,
    mut keep: impl FnMut(&Path) -> bool,
) -> Result<ScanOutcome> {
    if !root.exists() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::NotFound, "source root not found"),
        ));
    }

    let mut files = Vec::new();
    let mut diagnostics = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        match entry {
            Ok(e) => {
                let path = e.path();
                if e.file_type().is_file()
                    && path.extension().is_some_and(|x| x == "java")
                    && keep(path)
                {
                    files.push(path.to_path_buf());
                }
            }
            Err(err) => diagnostics.push(Diagnostic {
                file: err.path().unwrap_or(root).to_path_buf(),
                message: format!("walk error: {err}"),
            }),
        }
    }

    let mut parsed: Vec<(PathBuf, Vec<ClassModel>)> = Vec::new();
    for path in files {
        let source = match std::fs::read_to_string(&path) {
            Ok(s) => s,
            Err(err) => {
                diagnostics.push(Diagnostic {
                    file: path.clone(),
                    message: format!("unreadable: {err}"),
                });
                continue;
            }
        };
        match parse_classes(&source) {
            Ok((classes, had_errors)) => {
                if had_errors {
                    diagnostics.push(Diagnostic {
                        file: path.clone(),
                        message: "syntax errors; extracted what was recognizable".into(),
                    });
                }
                parsed.push((path, classes));
            }
            Err(message) => diagnostics.push(Diagnostic {
                file: path.clone(),
                message,
            }),
        }
    }

    let mut index = ClassIndex::new();
    for (_, classes) in &parsed {
        for class in classes {
            index
                .entry(class.name.clone())
                .or_default()
                .extend(class.public_methods.iter().cloned());
        }
    }

    let mut tests = Vec::new();
    for (path, classes) in &parsed {
        for class in classes {
            let under_test = extract_methods_under_test(class, &index);
            for method in &class.test_methods {
                tests.push(TestCase {
                    name: method.name.clone(),
                    statements: method.statements.clone(),
                    class_name: class.name.clone(),
                    methods_under_test: under_test.clone(),
                    location: Location {
                        file: path.clone(),
                        start_line: method.start_line,
                        end_line: method.end_line,
                    },
                });
            }
        }
    }

    Ok(ScanOutcome { tests, diagnostics })
}

/// Parses a single compilation unit and resolves methods under test against
/// the classes of that unit only. Useful for tests and tools.
pub fn parse_source(source: &str, path: &Path) -> Result<ScanOutcome> {
    let (classes, had_errors) = parse_classes(source).map_err(|message| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, message),
    })?;
    let mut diagnostics = Vec::new();
    if had_errors {
        diagnostics.push(Diagnostic {
            file: path.to_path_buf(),
            message: "syntax errors; extracted what was recognizable".into(),
        });
    }
    let mut index = ClassIndex::new();
    for class in &classes {
        index
            .entry(class.name.clone())
            .or_default()
            .extend(class.public_methods.iter().cloned());
    }
    let mut tests = Vec::new();
    for class in &classes {
        let under_test = extract_methods_under_test(class, &index);
        for method in &class.test_methods {
            tests.push(TestCase {
                name: method.name.clone(),
                statements: method.statements.clone(),
                class_name: class.name.clone(),
                methods_under_test: under_test.clone(),
                location: Location {
                    file: path.to_path_buf(),
                    start_line: method.start_line,
                    end_line: method.end_line,
                },
            });
        }
    }
    Ok(ScanOutcome { tests, diagnostics })
}

/// Candidate tested-method names for a test class: methods invoked in test
/// bodies whose names appear (case-insensitively) inside the test's own
/// name, plus the public methods of the production class obtained by
/// stripping a `Test`/`Tests` suffix, when that class was parsed too.
///
/// This is a heuristic stand-in; reports flag Single Entity matches that
/// rely on it.
pub fn extract_methods_under_test(class: &ClassModel, project: &ClassIndex) -> Vec<String> {
    let mut set = std::collections::BTreeSet::new();
    for test in &class.test_methods {
        let lname = test.name.to_lowercase();
        for callee in invoked_callees(&test.statements) {
            if is_assertion_name(&callee) || callee == "fail" {
                continue;
            }
            if lname.contains(&callee.to_lowercase()) {
                set.insert(callee);
            }
        }
    }
    let base = class
        .name
        .strip_suffix("Tests")
        .or_else(|| class.name.strip_suffix("Test"));
    if let Some(base) = base {
        if let Some(methods) = project.get(base) {
            set.extend(methods.iter().cloned());
        }
    }
    set.into_iter().collect()
}

fn invoked_callees(statements: &[Statement]) -> Vec<String> {
    let mut out = Vec::new();
    fn walk_stmt(s: &Statement, out: &mut Vec<String>) {
        if let Some(expr) = &s.expression {
            out.extend(expr.calls_in_eval_order().iter().map(|c| c.to_string()));
        }
        for child in s.children() {
            walk_stmt(child, out);
        }
    }
    for s in statements {
        walk_stmt(s, &mut out);
    }
    out
}

/// `assertEquals`, `assertThat`, ... — simple name starts with `assert`
/// followed by an uppercase letter.
pub fn is_assertion_name(name: &str) -> bool {
    name.len() > 6
        && name.starts_with("assert")
        && name.as_bytes()[6].is_ascii_uppercase()
}

fn parse_classes(source: &str) -> std::result::Result<(Vec<ClassModel>, bool), String> {
    let mut parser = tree_sitter::Parser::new();
    parser
        .set_language(&tree_sitter_java::LANGUAGE.into())
        .map_err(|e| format!("grammar version mismatch: {e}"))?;
    let tree = parser
        .parse(source, None)
        .ok_or_else(|| "parser returned no tree".to_string())?;
    let root = tree.root_node();
    let mut classes = Vec::new();
    collect_classes(root, source, &mut classes);
    Ok((classes, root.has_error()))
}

fn collect_classes(node: Node, src: &str, out: &mut Vec<ClassModel>) {
    let mut cursor = node.walk();
    for child in node.children(&mut cursor) {
        if child.kind() == "class_declaration" {
            if let Some(class) = parse_class(child, src) {
                out.push(class);
            }
            if let Some(body) = child.child_by_field_name("body") {
                collect_classes(body, src, out);
            }
        } else {
            collect_classes(child, src, out);
        }
    }
}

fn parse_class(node: Node, src: &str) -> Option<ClassModel> {
    let name = text(node.child_by_field_name("name")?, src);
    let superclass = node
        .child_by_field_name("superclass")
        .map(|sc| simple_type_name(sc, src));
    let junit3_base = superclass
        .as_deref()
        .is_some_and(|s| s == "TestCase" || s.ends_with("Test") || s.ends_with("TestBase"));

    let mut public_methods = Vec::new();
    let mut test_methods = Vec::new();
    let body = node.child_by_field_name("body")?;
    let mut cursor = body.walk();
    for member in body.children(&mut cursor) {
        if member.kind() != "method_declaration" {
            continue;
        }
        let Some(method_name) = member.child_by_field_name("name").map(|n| text(n, src)) else {
            continue;
        };
        let is_public = has_modifier(member, src, "public");
        if is_public {
            public_methods.push(method_name.clone());
        }
        let is_void = member
            .child_by_field_name("type")
            .is_some_and(|t| t.kind() == "void_type");
        let annotated = has_test_annotation(member, src);
        let junit3 = junit3_base
            && is_public
            && is_void
            && method_name.starts_with("test")
            && parameter_count(member) == 0;
        if !(annotated || junit3) {
            continue;
        }
        let Some(block) = member.child_by_field_name("body") else {
            continue;
        };
        test_methods.push(RawTest {
            name: method_name,
            statements: block_statements(block, src, false),
            start_line: member.start_position().row + 1,
            end_line: member.end_position().row + 1,
        });
    }

    Some(ClassModel {
        name,
        superclass,
        public_methods,
        test_methods,
    })
}

fn has_test_annotation(method: Node, src: &str) -> bool {
    let mut cursor = method.walk();
    for child in method.children(&mut cursor) {
        if child.kind() != "modifiers" {
            continue;
        }
        let mut mc = child.walk();
        for m in child.children(&mut mc) {
            if m.kind() == "marker_annotation" || m.kind() == "annotation" {
                if let Some(name) = m.child_by_field_name("name") {
                    let full = text(name, src);
                    let simple = full.rsplit('.').next().unwrap_or(&full);
                    if simple == "Test" {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn has_modifier(node: Node, src: &str, modifier: &str) -> bool {
    let mut cursor = node.walk();
    for child in node.children(&mut cursor) {
        if child.kind() == "modifiers" {
            let mut mc = child.walk();
            for m in child.children(&mut mc) {
                if text(m, src) == modifier {
                    return true;
                }
            }
        }
    }
    false
}

fn parameter_count(method: Node) -> usize {
    method
        .child_by_field_name("parameters")
        .map(|p| p.named_child_count())
        .unwrap_or(0)
}

fn simple_type_name(node: Node, src: &str) -> String {
    // superclass node wraps `extends X<Y>`; take the rightmost identifier
    // of the raw type.
    let t = text(node, src);
    let t = t.trim_start_matches("extends").trim();
    let raw = t.split('<').next().unwrap_or(t);
    raw.rsplit('.').next().unwrap_or(raw).trim().to_string()
}

fn text(node: Node, src: &str) -> String {
    src[node.byte_range()].to_string()
}

/// Converts the named statements of a block, skipping comments and empty
/// statements. `in_try` is true while inside a try block (not its catches),
/// which turns `fail(...)` into a Fail statement.
fn block_statements(block: Node, src: &str, in_try: bool) -> Vec<Statement> {
    let mut out = Vec::new();
    let mut cursor = block.walk();
    for child in block.named_children(&mut cursor) {
        if let Some(stmt) = convert_statement(child, src, in_try) {
            out.push(stmt);
        }
    }
    out
}

/// A statement node that may be a `{...}` block or a single statement.
fn section_statements(node: Node, src: &str, in_try: bool) -> Vec<Statement> {
    if node.kind() == "block" {
        block_statements(node, src, in_try)
    } else {
        convert_statement(node, src, in_try).into_iter().collect()
    }
}

fn convert_statement(node: Node, src: &str, in_try: bool) -> Option<Statement> {
    let raw = text(node, src);
    match node.kind() {
        "line_comment" | "block_comment" | ";" => None,
        "local_variable_declaration" => {
            let declarator = node
                .child_by_field_name("declarator")
                .or_else(|| named_child_of_kind(node, "variable_declarator"));
            let declared_name = declarator
                .and_then(|d| d.child_by_field_name("name"))
                .map(|n| text(n, src));
            let value = declarator.and_then(|d| d.child_by_field_name("value"));
            if let Some(v) = value {
                if unparenthesize(v).kind() == "ternary_expression" {
                    let mut stmt = conditional_expr_statement(unparenthesize(v), src, raw, in_try);
                    stmt.declared_name = declared_name;
                    return Some(stmt);
                }
            }
            let expression = value
                .map(|v| convert_expression(v, src))
                .unwrap_or_else(|| Expression::other(String::new()));
            Some(Statement {
                kind: StatementKind::Declaration,
                expression: Some(expression),
                declared_name,
                sections: Vec::new(),
                from_conditional_expr: false,
                raw_text: raw,
            })
        }
        "expression_statement" => {
            let inner = node.named_child(0)?;
            Some(classify_expression_statement(inner, src, raw, in_try))
        }
        "return_statement" => {
            let expression = node
                .named_child(0)
                .map(|v| convert_expression(v, src))
                .unwrap_or_else(|| Expression::other(String::new()));
            Some(Statement::simple(
                StatementKind::Return,
                Some(expression),
                raw,
            ))
        }
        "if_statement" => {
            let condition = node
                .child_by_field_name("condition")
                .map(|c| convert_expression(c, src));
            let mut sections = Vec::new();
            if let Some(cons) = node.child_by_field_name("consequence") {
                sections.push(Section {
                    role: SectionRole::Then,
                    statements: section_statements(cons, src, in_try),
                });
            }
            if let Some(alt) = node.child_by_field_name("alternative") {
                sections.push(Section {
                    role: SectionRole::Else,
                    statements: section_statements(alt, src, in_try),
                });
            }
            Some(Statement {
                kind: StatementKind::IfElse,
                expression: condition,
                declared_name: None,
                sections,
                from_conditional_expr: false,
                raw_text: raw,
            })
        }
        "while_statement" | "do_statement" => {
            let condition = node
                .child_by_field_name("condition")
                .map(|c| convert_expression(c, src));
            let body = node.child_by_field_name("body");
            Some(loop_statement(condition, body, src, raw, in_try))
        }
        "for_statement" => {
            let condition = node
                .child_by_field_name("condition")
                .map(|c| convert_expression(c, src));
            let body = node.child_by_field_name("body");
            Some(loop_statement(condition, body, src, raw, in_try))
        }
        "enhanced_for_statement" => {
            let iterated = node
                .child_by_field_name("value")
                .map(|c| convert_expression(c, src));
            let body = node.child_by_field_name("body");
            Some(loop_statement(iterated, body, src, raw, in_try))
        }
        "try_statement" | "try_with_resources_statement" => {
            let mut try_stmts = Vec::new();
            if let Some(resources) = node.child_by_field_name("resources") {
                let mut rc = resources.walk();
                for r in resources.named_children(&mut rc) {
                    if r.kind() == "resource" {
                        let declared_name = r
                            .child_by_field_name("name")
                            .map(|n| text(n, src));
                        let value = r
                            .child_by_field_name("value")
                            .map(|v| convert_expression(v, src))
                            .unwrap_or_else(|| Expression::other(String::new()));
                        try_stmts.push(Statement {
                            kind: StatementKind::Declaration,
                            expression: Some(value),
                            declared_name,
                            sections: Vec::new(),
                            from_conditional_expr: false,
                            raw_text: text(r, src),
                        });
                    }
                }
            }
            if let Some(body) = node.child_by_field_name("body") {
                try_stmts.extend(block_statements(body, src, true));
            }
            let mut sections = vec![Section {
                role: SectionRole::Try,
                statements: try_stmts,
            }];
            let mut cursor = node.walk();
            for child in node.named_children(&mut cursor) {
                match child.kind() {
                    "catch_clause" => {
                        let stmts = child
                            .child_by_field_name("body")
                            .map(|b| block_statements(b, src, false))
                            .unwrap_or_default();
                        sections.push(Section {
                            role: SectionRole::Catch,
                            statements: stmts,
                        });
                    }
                    "finally_clause" => {
                        let stmts = named_child_of_kind(child, "block")
                            .map(|b| block_statements(b, src, false))
                            .unwrap_or_default();
                        sections.push(Section {
                            role: SectionRole::Finally,
                            statements: stmts,
                        });
                    }
                    _ => {}
                }
            }
            Some(Statement {
                kind: StatementKind::TryCatch,
                expression: None,
                declared_name: None,
                sections,
                from_conditional_expr: false,
                raw_text: raw,
            })
        }
        _ => Some(Statement::simple(StatementKind::Other, None, raw)),
    }
}

fn loop_statement(
    condition: Option<Expression>,
    body: Option<Node>,
    src: &str,
    raw: String,
    in_try: bool,
) -> Statement {
    let statements = body
        .map(|b| section_statements(b, src, in_try))
        .unwrap_or_default();
    Statement {
        kind: StatementKind::Loop,
        expression: condition,
        declared_name: None,
        sections: vec![Section {
            role: SectionRole::Body,
            statements,
        }],
        from_conditional_expr: false,
        raw_text: raw,
    }
}

/// `cond ? a : b` at statement (or initializer) level becomes an IfElse
/// whose arms are classified like ordinary statements.
fn conditional_expr_statement(node: Node, src: &str, raw: String, in_try: bool) -> Statement {
    let condition = node
        .child_by_field_name("condition")
        .map(|c| convert_expression(c, src));
    let arm = |field: &str| -> Vec<Statement> {
        node.child_by_field_name(field)
            .map(|n| {
                let arm_raw = text(n, src);
                vec![classify_expression_statement(n, src, arm_raw, in_try)]
            })
            .unwrap_or_default()
    };
    Statement {
        kind: StatementKind::IfElse,
        expression: condition,
        declared_name: None,
        sections: vec![
            Section {
                role: SectionRole::Then,
                statements: arm("consequence"),
            },
            Section {
                role: SectionRole::Else,
                statements: arm("alternative"),
            },
        ],
        from_conditional_expr: true,
        raw_text: raw,
    }
}

fn classify_expression_statement(node: Node, src: &str, raw: String, in_try: bool) -> Statement {
    let node = unparenthesize(node);
    match node.kind() {
        "method_invocation" => {
            let expr = convert_expression(node, src);
            let kind = invocation_kind(&expr, in_try);
            Statement::simple(kind, Some(expr), raw)
        }
        "object_creation_expression" => {
            let expr = convert_expression(node, src);
            Statement::simple(StatementKind::NewObject, Some(expr), raw)
        }
        "ternary_expression" => conditional_expr_statement(node, src, raw, in_try),
        "assignment_expression" => {
            let rhs = node
                .child_by_field_name("right")
                .map(|r| convert_expression(r, src));
            Statement {
                kind: StatementKind::Other,
                expression: rhs,
                declared_name: None,
                sections: Vec::new(),
                from_conditional_expr: false,
                raw_text: raw,
            }
        }
        _ => Statement::simple(StatementKind::Other, None, raw),
    }
}

/// Assertion recognition: any call whose simple name matches `assert[A-Z].*`
/// (anywhere in the call chain, so `assertThat(x).isTrue()` counts), or
/// `fail`. A `fail(...)` directly inside a try block is Fail, not Assertion
/// — the try/catch patterns key on it. A chain rooted in `new X()` is a
/// NewObject statement.
fn invocation_kind(expr: &Expression, in_try: bool) -> StatementKind {
    let chain = expr.call_chain();
    if chain.iter().any(|c| is_assertion_name(c)) {
        return StatementKind::Assertion;
    }
    if chain.last() == Some(&"fail") && chain.len() == 1 && expr.receiver_object().is_none() {
        return if in_try {
            StatementKind::Fail
        } else {
            StatementKind::Assertion
        };
    }
    if chain.contains(&"fail") {
        // Assert.fail() and friends, receiver notwithstanding.
        return if in_try {
            StatementKind::Fail
        } else {
            StatementKind::Assertion
        };
    }
    if expr.chain_base().form == ExprForm::NewInstance {
        return StatementKind::NewObject;
    }
    StatementKind::MethodInvocation
}

fn unparenthesize(node: Node) -> Node {
    let mut n = node;
    while n.kind() == "parenthesized_expression" {
        match n.named_child(0) {
            Some(inner) => n = inner,
            None => break,
        }
    }
    n
}

fn named_child_of_kind<'a>(node: Node<'a>, kind: &str) -> Option<Node<'a>> {
    let mut cursor = node.walk();
    let found = node.named_children(&mut cursor).find(|c| c.kind() == kind);
    found
}

fn convert_expression(node: Node, src: &str) -> Expression {
    let node = unparenthesize(node);
    let raw = text(node, src);
    match node.kind() {
        "method_invocation" => {
            let receiver = node
                .child_by_field_name("object")
                .map(|o| Box::new(convert_expression(o, src)));
            let callee_name = node.child_by_field_name("name").map(|n| text(n, src));
            let arguments = node
                .child_by_field_name("arguments")
                .map(|a| argument_expressions(a, src))
                .unwrap_or_default();
            Expression {
                form: ExprForm::MethodCall,
                receiver,
                callee_name,
                arguments,
                text: raw,
            }
        }
        "object_creation_expression" => {
            let type_name = node
                .child_by_field_name("type")
                .map(|t| {
                    let t = text(t, src);
                    let base = t.split('<').next().unwrap_or(&t);
                    base.rsplit('.').next().unwrap_or(base).trim().to_string()
                })
                .filter(|s| !s.is_empty());
            let arguments = node
                .child_by_field_name("arguments")
                .map(|a| argument_expressions(a, src))
                .unwrap_or_default();
            Expression {
                form: ExprForm::NewInstance,
                receiver: None,
                callee_name: type_name,
                arguments,
                text: raw,
            }
        }
        "identifier" => Expression {
            form: ExprForm::ObjectRef,
            receiver: None,
            callee_name: Some(raw.clone()),
            arguments: Vec::new(),
            text: raw,
        },
        "field_access" => {
            let receiver = node
                .child_by_field_name("object")
                .map(|o| Box::new(convert_expression(o, src)));
            let field = node.child_by_field_name("field").map(|f| text(f, src));
            Expression {
                form: ExprForm::ObjectRef,
                receiver,
                callee_name: field,
                arguments: Vec::new(),
                text: raw,
            }
        }
        "this" => Expression {
            form: ExprForm::ObjectRef,
            receiver: None,
            callee_name: Some("this".into()),
            arguments: Vec::new(),
            text: raw,
        },
        "string_literal"
        | "character_literal"
        | "decimal_integer_literal"
        | "hex_integer_literal"
        | "octal_integer_literal"
        | "binary_integer_literal"
        | "decimal_floating_point_literal"
        | "hex_floating_point_literal"
        | "true"
        | "false"
        | "null_literal" => Expression {
            form: ExprForm::Literal,
            receiver: None,
            callee_name: None,
            arguments: Vec::new(),
            text: raw,
        },
        "cast_expression" => node
            .child_by_field_name("value")
            .map(|v| convert_expression(v, src))
            .unwrap_or_else(|| Expression::other(raw)),
        "binary_expression" => {
            let mut arguments = Vec::new();
            for field in ["left", "right"] {
                if let Some(n) = node.child_by_field_name(field) {
                    arguments.push(convert_expression(n, src));
                }
            }
            Expression {
                form: ExprForm::Other,
                receiver: None,
                callee_name: None,
                arguments,
                text: raw,
            }
        }
        "ternary_expression" => {
            let mut arguments = Vec::new();
            for field in ["condition", "consequence", "alternative"] {
                if let Some(n) = node.child_by_field_name(field) {
                    arguments.push(convert_expression(n, src));
                }
            }
            Expression {
                form: ExprForm::Other,
                receiver: None,
                callee_name: None,
                arguments,
                text: raw,
            }
        }
        "unary_expression" | "update_expression" => {
            let arguments = node
                .named_child(0)
                .map(|n| vec![convert_expression(n, src)])
                .unwrap_or_default();
            Expression {
                form: ExprForm::Other,
                receiver: None,
                callee_name: None,
                arguments,
                text: raw,
            }
        }
        "array_access" => {
            let mut arguments = Vec::new();
            for field in ["array", "index"] {
                if let Some(n) = node.child_by_field_name(field) {
                    arguments.push(convert_expression(n, src));
                }
            }
            Expression {
                form: ExprForm::Other,
                receiver: None,
                callee_name: None,
                arguments,
                text: raw,
            }
        }
        // Lambdas, method references, anonymous classes and the rest stay
        // opaque; patterns only need receiver/callee/argument shape.
        _ => Expression::other(raw),
    }
}

fn argument_expressions(args: Node, src: &str) -> Vec<Expression> {
    let mut out = Vec::new();
    let mut cursor = args.walk();
    for child in args.named_children(&mut cursor) {
        if child.kind() == "line_comment" || child.kind() == "block_comment" {
            continue;
        }
        out.push(convert_expression(child, src));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_one(source: &str) -> ScanOutcome {
        parse_source(source, Path::new("Test.java")).unwrap()
    }

    #[test]
    fn recognizes_junit4_annotated_test() {
        let out = parse_one(
            r#"
            public class SampleTest {
                @Test
                public void testExecute_Action() {
                    action.execute();
                }
            }
            "#,
        );
        assert_eq!(out.tests.len(), 1);
        assert_eq!(out.tests[0].name, "testExecute_Action");
        assert_eq!(out.tests[0].class_name, "SampleTest");
    }

    #[test]
    fn ignores_private_helper_methods() {
        let out = parse_one(
            r#"
            public class FixtureTest {
                private Fixture buildFixture() { return new Fixture(); }
                @Test public void testThing() { thing.run(); }
            }
            "#,
        );
        assert_eq!(out.tests.len(), 1);
        assert_eq!(out.tests[0].name, "testThing");
    }

    #[test]
    fn recognizes_junit3_style_tests() {
        let out = parse_one(
            r#"
            public class LegacyTest extends TestCase {
                public void testAddsNumbers() { calc.add(1, 2); }
                public void helper() { }
                void testNotPublic() { }
                public void notATest() { }
            }
            "#,
        );
        let names: Vec<_> = out.tests.iter().map(|t| t.name.as_str()).collect();
        assert_eq!(names, vec!["testAddsNumbers"]);
    }

    #[test]
    fn statement_kinds_cover_the_catalog_shapes() {
        let out = parse_one(
            r#"
            public class KindsTest {
                @Test
                public void testKinds() {
                    Widget w = new Widget();
                    w.configure();
                    assertEquals(1, w.size());
                    new Widget().configure().render();
                    if (w.ok()) { w.run(); } else { assertTrue(w.done()); }
                    while (it.hasNext()) { it.next(); }
                    try { w.spin(); fail("boom"); } catch (Exception e) { }
                    return;
                }
            }
            "#,
        );
        let kinds: Vec<_> = out.tests[0].statements.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            vec![
                StatementKind::Declaration,
                StatementKind::MethodInvocation,
                StatementKind::Assertion,
                StatementKind::NewObject,
                StatementKind::IfElse,
                StatementKind::Loop,
                StatementKind::TryCatch,
                StatementKind::Return,
            ]
        );
        let tc = &out.tests[0].statements[6];
        let try_kinds: Vec<_> = tc.section(SectionRole::Try).unwrap().statements.iter().map(|s| s.kind).collect();
        assert_eq!(try_kinds, vec![StatementKind::MethodInvocation, StatementKind::Fail]);
    }

    #[test]
    fn fail_outside_try_is_an_assertion() {
        let out = parse_one(
            r#"
            public class FailTest {
                @Test public void testFails() { fail("nope"); }
            }
            "#,
        );
        assert_eq!(out.tests[0].statements[0].kind, StatementKind::Assertion);
    }

    #[test]
    fn ternary_initializer_becomes_if_else() {
        let out = parse_one(
            r#"
            public class CondTest {
                @Test public void testCond() { int r = flag ? compute() : fallback(); }
            }
            "#,
        );
        let stmt = &out.tests[0].statements[0];
        assert_eq!(stmt.kind, StatementKind::IfElse);
        assert!(stmt.from_conditional_expr);
        assert_eq!(stmt.declared_name.as_deref(), Some("r"));
        let then = stmt.section(SectionRole::Then).unwrap();
        assert_eq!(then.statements[0].kind, StatementKind::MethodInvocation);
    }

    #[test]
    fn compound_statements_count_once_at_top_level() {
        let out = parse_one(
            r#"
            public class CountTest {
                @Test
                public void testGetSSLProtocol() {
                    SSLProtocol protocol = connection.getSSLProtocol();
                    assertNotNull(protocol);
                }
            }
            "#,
        );
        assert_eq!(out.tests[0].statements.len(), 2);
        assert_eq!(out.tests[0].statements[0].kind, StatementKind::Declaration);
        assert_eq!(out.tests[0].statements[1].kind, StatementKind::Assertion);
    }

    #[test]
    fn empty_body_parses_to_zero_statements() {
        let out = parse_one(
            r#"
            public class EmptyTest {
                @Test public void testNothing() { }
            }
            "#,
        );
        assert_eq!(out.tests[0].statements.len(), 0);
    }

    #[test]
    fn methods_under_test_from_invocations_in_name() {
        let out = parse_one(
            r#"
            public class FooTest {
                @Test public void testGetSSLProtocol() {
                    assertNotNull(foo.getSSLProtocol());
                }
            }
            "#,
        );
        assert_eq!(out.tests[0].methods_under_test, vec!["getSSLProtocol"]);
    }

    #[test]
    fn assertion_only_bodies_yield_no_candidates() {
        let out = parse_one(
            r#"
            public class BarTest {
                @Test public void testSomething() { assertTrue(true); fail("x"); }
            }
            "#,
        );
        assert!(out.tests[0].methods_under_test.is_empty());
    }

    #[test]
    fn production_class_methods_resolved_by_suffix() {
        let out = parse_one(
            r#"
            public class Calculator {
                public int add(int a, int b) { return a + b; }
                private void internal() { }
            }
            public class CalculatorTest {
                @Test public void testSum() { check(new Calculator()); }
            }
            "#,
        );
        assert!(out.tests[0]
            .methods_under_test
            .contains(&"add".to_string()));
        assert!(!out.tests[0]
            .methods_under_test
            .contains(&"internal".to_string()));
    }

    #[test]
    fn raw_text_is_a_contiguous_source_slice() {
        let source = r#"
            public class SliceTest {
                @Test
                public void testSlices() {
                    Widget w = new Widget();
                    try { w.spin(); fail("x"); } catch (Exception e) { assertTrue(w.ok()); }
                }
            }
            "#;
        let out = parse_source(source, Path::new("SliceTest.java")).unwrap();
        for stmt in out.tests[0].statements.iter() {
            assert!(source.contains(&stmt.raw_text), "missing: {}", stmt.raw_text);
        }
        for stmt in out.tests[0].all_statements() {
            assert!(source.contains(&stmt.raw_text), "missing: {}", stmt.raw_text);
        }
    }

    #[test]
    fn parsing_is_deterministic() {
        let source = r#"
            public class DetTest {
                @Test public void testA() { a.run(); assertTrue(a.ok()); }
                @Test public void testB() { for (Item i : items) { assertNotNull(i.value()); } }
            }
            "#;
        let a = parse_one(source);
        let b = parse_one(source);
        assert_eq!(a, b);
    }
}
