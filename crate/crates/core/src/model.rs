//! Language-neutral model of JUnit tests.
//!
//! The parser lowers Java source into these types; every other module
//! (abstraction, pattern engines, comparison) consumes this model and never
//! raw source text.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// A parsed unit test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestCase {
    /// Method name, a valid Java identifier.
    pub name: String,
    /// Top-level statements of the method body, in source order.
    /// Compound statements count once; their internals live in sections.
    pub statements: Vec<Statement>,
    /// Simple name of the enclosing class.
    pub class_name: String,
    /// Candidate tested-method names visible from the test class.
    pub methods_under_test: Vec<String>,
    pub location: Location,
}

impl TestCase {
    pub fn id(&self) -> String {
        format!("{}.{}", self.class_name, self.name)
    }

    /// Statements of the body plus everything nested inside compounds,
    /// in source order.
    pub fn all_statements(&self) -> Vec<&Statement> {
        let mut out = Vec::new();
        for s in &self.statements {
            s.collect(&mut out);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Location {
    pub file: PathBuf,
    pub start_line: usize,
    pub end_line: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.file.display(), self.start_line)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StatementKind {
    Declaration,
    MethodInvocation,
    Assertion,
    Fail,
    Return,
    IfElse,
    Loop,
    TryCatch,
    NewObject,
    Other,
}

impl StatementKind {
    /// Compound kinds carry nested sections; everything else is simple.
    pub fn is_compound(self) -> bool {
        matches!(
            self,
            StatementKind::IfElse | StatementKind::Loop | StatementKind::TryCatch
        )
    }
}

/// Role of a nested block inside a compound statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectionRole {
    Then,
    Else,
    Body,
    Try,
    Catch,
    Finally,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub role: SectionRole,
    pub statements: Vec<Statement>,
}

/// One statement of a test body.
///
/// `sections` is non-empty only for compound kinds (if/else, loop,
/// try/catch); `expression` is present for Declaration, MethodInvocation,
/// Assertion, Return and Fail kinds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub kind: StatementKind,
    pub expression: Option<Expression>,
    /// Variable name introduced by a Declaration.
    pub declared_name: Option<String>,
    /// Nested blocks for compound kinds, in source order.
    pub sections: Vec<Section>,
    /// True for an IfElse synthesized from a conditional expression
    /// (`cond ? a : b`) rather than an `if` statement.
    pub from_conditional_expr: bool,
    /// Contiguous slice of the original source.
    pub raw_text: String,
}

impl Statement {
    pub fn simple(kind: StatementKind, expression: Option<Expression>, raw_text: String) -> Self {
        Statement {
            kind,
            expression,
            declared_name: None,
            sections: Vec::new(),
            from_conditional_expr: false,
            raw_text,
        }
    }

    /// All nested statements across sections, flattened in source order.
    pub fn children(&self) -> impl Iterator<Item = &Statement> {
        self.sections.iter().flat_map(|s| s.statements.iter())
    }

    pub fn section(&self, role: SectionRole) -> Option<&Section> {
        self.sections.iter().find(|s| s.role == role)
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a Statement>) {
        out.push(self);
        for child in self.children() {
            child.collect(out);
        }
    }

    /// Does this statement or anything nested in it have the given kind?
    pub fn contains_kind(&self, kind: StatementKind) -> bool {
        self.kind == kind || self.children().any(|c| c.contains_kind(kind))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExprForm {
    MethodCall,
    ObjectRef,
    NewInstance,
    Literal,
    Other,
}

/// A (possibly nested) expression, reduced to the shape the patterns need:
/// receiver, callee and arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expression {
    pub form: ExprForm,
    pub receiver: Option<Box<Expression>>,
    /// Method name for MethodCall, identifier for ObjectRef, constructed
    /// type name for NewInstance.
    pub callee_name: Option<String>,
    pub arguments: Vec<Expression>,
    /// Source text of the expression.
    pub text: String,
}

impl Expression {
    pub fn other(text: String) -> Self {
        Expression {
            form: ExprForm::Other,
            receiver: None,
            callee_name: None,
            arguments: Vec::new(),
            text,
        }
    }

    pub fn is_call(&self) -> bool {
        self.form == ExprForm::MethodCall
    }

    pub fn is_string_literal(&self) -> bool {
        self.form == ExprForm::Literal && self.text.starts_with('"')
    }

    /// The object an invocation is performed on: the simple name of the
    /// immediate receiver. Walks through receiver chains of calls
    /// (`a.b().c()` yields `a`) and takes the rightmost component of field
    /// accesses (`this.action` yields `action`). `new Foo().bar()` yields
    /// the constructed type name.
    pub fn receiver_object(&self) -> Option<&str> {
        let recv = self.receiver.as_deref()?;
        recv.object_name()
    }

    /// Simple object name of this expression, if it denotes an object.
    pub fn object_name(&self) -> Option<&str> {
        match self.form {
            ExprForm::ObjectRef => match self.callee_name.as_deref() {
                Some("this") => None,
                other => other,
            },
            ExprForm::MethodCall => self.receiver_object(),
            ExprForm::NewInstance => self.callee_name.as_deref(),
            _ => None,
        }
    }

    /// First object referenced anywhere in this expression tree, preferring
    /// receivers of calls over bare identifiers. Used for loop conditions
    /// (`i < items.size()` yields `items`, `it.hasNext()` yields `it`).
    pub fn first_referenced_object(&self) -> Option<&str> {
        fn call_receiver<'a>(e: &'a Expression) -> Option<&'a str> {
            if e.form == ExprForm::MethodCall {
                if let Some(name) = e.receiver_object() {
                    return Some(name);
                }
            }
            e.receiver
                .as_deref()
                .and_then(call_receiver)
                .or_else(|| e.arguments.iter().find_map(call_receiver))
        }
        fn any_object<'a>(e: &'a Expression) -> Option<&'a str> {
            if e.form == ExprForm::ObjectRef {
                if let Some(name) = e.object_name() {
                    return Some(name);
                }
            }
            e.receiver
                .as_deref()
                .and_then(any_object)
                .or_else(|| e.arguments.iter().find_map(any_object))
        }
        call_receiver(self).or_else(|| any_object(self))
    }

    /// Method-call callee names in evaluation order: receiver chain first,
    /// then arguments, then the call itself. `f.open().close()` yields
    /// `[open, close]`; `process(parse(x))` yields `[parse, process]`.
    pub fn calls_in_eval_order(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_calls(&mut out);
        out
    }

    fn collect_calls<'a>(&'a self, out: &mut Vec<&'a str>) {
        if let Some(recv) = self.receiver.as_deref() {
            recv.collect_calls(out);
        }
        for arg in &self.arguments {
            arg.collect_calls(out);
        }
        if self.form == ExprForm::MethodCall {
            if let Some(name) = self.callee_name.as_deref() {
                out.push(name);
            }
        }
    }

    /// First argument of this call that contains a method invocation,
    /// yielding that invocation's callee (`process(parse(x))` yields `parse`).
    pub fn first_argument_call(&self) -> Option<&Expression> {
        fn find_call(e: &Expression) -> Option<&Expression> {
            if e.form == ExprForm::MethodCall {
                return Some(e);
            }
            if let Some(recv) = e.receiver.as_deref() {
                if let Some(c) = find_call(recv) {
                    return Some(c);
                }
            }
            e.arguments.iter().find_map(find_call)
        }
        self.arguments.iter().find_map(find_call)
    }

    /// The innermost invocation of this expression if the expression is a
    /// call, otherwise the first invocation nested anywhere inside it.
    pub fn invocation(&self) -> Option<&Expression> {
        if self.form == ExprForm::MethodCall {
            return Some(self);
        }
        if let Some(recv) = self.receiver.as_deref() {
            if let Some(c) = recv.invocation() {
                return Some(c);
            }
        }
        self.arguments.iter().find_map(|a| a.invocation())
    }

    /// Chain of callee names from innermost receiver outwards, ignoring
    /// argument subtrees: `new Widget().configure().render()` yields
    /// `[configure, render]`.
    pub fn call_chain(&self) -> Vec<&str> {
        let mut chain = Vec::new();
        let mut cur = Some(self);
        while let Some(e) = cur {
            if e.form == ExprForm::MethodCall {
                if let Some(name) = e.callee_name.as_deref() {
                    chain.push(name);
                }
            }
            cur = e.receiver.as_deref();
        }
        chain.reverse();
        chain
    }

    /// Base of the receiver chain (`new Widget().a().b()` yields the
    /// NewInstance node).
    pub fn chain_base(&self) -> &Expression {
        match self.receiver.as_deref() {
            Some(recv) => recv.chain_base(),
            None => self,
        }
    }
}

/// Which side of a test an extraction came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtractionSource {
    Name,
    Body,
}

/// The (action, predicate, scenario) triple extracted from a name or body.
/// Every component is optional but at least one is present; an extraction
/// with all three absent is never constructed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub action: Option<String>,
    pub predicate: Option<String>,
    pub scenario: Option<String>,
    pub source: ExtractionSource,
}

impl Extraction {
    /// Builds the triple, trimming empties; returns None when nothing was
    /// extracted.
    pub fn new(
        source: ExtractionSource,
        action: Option<String>,
        predicate: Option<String>,
        scenario: Option<String>,
    ) -> Option<Self> {
        fn keep(v: Option<String>) -> Option<String> {
            v.filter(|s| !s.trim().is_empty())
        }
        let (action, predicate, scenario) = (keep(action), keep(predicate), keep(scenario));
        if action.is_none() && predicate.is_none() && scenario.is_none() {
            return None;
        }
        Some(Extraction {
            action,
            predicate,
            scenario,
            source,
        })
    }

    pub fn component(&self, c: Component) -> Option<&str> {
        match c {
            Component::Action => self.action.as_deref(),
            Component::Predicate => self.predicate.as_deref(),
            Component::Scenario => self.scenario.as_deref(),
        }
    }

    pub fn set_component(&mut self, c: Component, value: Option<String>) {
        match c {
            Component::Action => self.action = value,
            Component::Predicate => self.predicate = value,
            Component::Scenario => self.scenario = value,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.action.is_none() && self.predicate.is_none() && self.scenario.is_none()
    }
}

impl fmt::Display for Extraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn part(v: &Option<String>) -> &str {
            v.as_deref().unwrap_or("-")
        }
        write!(
            f,
            "action={} predicate={} scenario={}",
            part(&self.action),
            part(&self.predicate),
            part(&self.scenario)
        )
    }
}

/// The three information slots of an extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    Action,
    Predicate,
    Scenario,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::Action, Component::Predicate, Component::Scenario];
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Action => write!(f, "action"),
            Component::Predicate => write!(f, "predicate"),
            Component::Scenario => write!(f, "scenario"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(name: &str, receiver: Option<Expression>, args: Vec<Expression>) -> Expression {
        Expression {
            form: ExprForm::MethodCall,
            receiver: receiver.map(Box::new),
            callee_name: Some(name.to_string()),
            arguments: args,
            text: String::new(),
        }
    }

    fn obj(name: &str) -> Expression {
        Expression {
            form: ExprForm::ObjectRef,
            receiver: None,
            callee_name: Some(name.to_string()),
            arguments: vec![],
            text: name.to_string(),
        }
    }

    #[test]
    fn receiver_object_walks_chains() {
        // a.b().c() -> a
        let e = call("c", Some(call("b", Some(obj("a")), vec![])), vec![]);
        assert_eq!(e.receiver_object(), Some("a"));
    }

    #[test]
    fn eval_order_visits_receiver_then_args_then_self() {
        // f.open(parse(x)).close()
        let inner = call("parse", None, vec![obj("x")]);
        let open = call("open", Some(obj("f")), vec![inner]);
        let e = call("close", Some(open), vec![]);
        assert_eq!(e.calls_in_eval_order(), vec!["parse", "open", "close"]);
    }

    #[test]
    fn empty_extraction_is_never_constructed() {
        assert!(Extraction::new(ExtractionSource::Name, None, Some("  ".into()), None).is_none());
    }

    #[test]
    fn test_case_is_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<TestCase>();
    }
}
