//! Statement abstraction: test bodies to numeric code sequences and back.
//!
//! Each statement kind maps to a small integer; compound statements emit an
//! open code, their inner statements, then a close code; the whole test is
//! wrapped in Start/End markers. Mined code sequences reconstruct to
//! human-readable skeletons like `start{ * try{ * catch{ * }catch * }try *
//! }end`, with `*` marking subsequence gaps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{SectionRole, Statement, StatementKind, TestCase};

/// Everything the alphabet assigns a code to: statement kinds plus block and
/// test boundary markers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CodeSymbol {
    Start,
    End,
    Statement(StatementKind),
    TryOpen,
    CatchOpen,
    CatchClose,
    TryClose,
    IfOpen,
    ElseOpen,
    ElseClose,
    IfClose,
    LoopOpen,
    LoopClose,
}

impl CodeSymbol {
    /// Name used in sequence-database headers (`code=KindName` pairs).
    pub fn kind_name(self) -> &'static str {
        use CodeSymbol::*;
        match self {
            Start => "Start",
            End => "End",
            Statement(StatementKind::Declaration) => "Declaration",
            Statement(StatementKind::MethodInvocation) => "MethodInvocation",
            Statement(StatementKind::Assertion) => "Assertion",
            Statement(StatementKind::Fail) => "Fail",
            Statement(StatementKind::Return) => "Return",
            Statement(StatementKind::NewObject) => "NewObject",
            Statement(StatementKind::Other) => "Other",
            Statement(StatementKind::IfElse) => "IfElse",
            Statement(StatementKind::Loop) => "Loop",
            Statement(StatementKind::TryCatch) => "TryCatch",
            TryOpen => "TryOpen",
            CatchOpen => "CatchOpen",
            CatchClose => "CatchClose",
            TryClose => "TryClose",
            IfOpen => "IfOpen",
            ElseOpen => "ElseOpen",
            ElseClose => "ElseClose",
            IfClose => "IfClose",
            LoopOpen => "LoopOpen",
            LoopClose => "LoopClose",
        }
    }

    /// Token used in reconstructed pattern skeletons.
    pub fn skeleton_token(self) -> &'static str {
        use CodeSymbol::*;
        match self {
            Start => "start{",
            End => "}end",
            Statement(StatementKind::Declaration) => "decl",
            Statement(StatementKind::MethodInvocation) => "call",
            Statement(StatementKind::Assertion) => "assert",
            Statement(StatementKind::Fail) => "fail",
            Statement(StatementKind::Return) => "return",
            Statement(StatementKind::NewObject) => "new",
            Statement(StatementKind::Other) => "stmt",
            Statement(StatementKind::IfElse) => "ifelse",
            Statement(StatementKind::Loop) => "loop",
            Statement(StatementKind::TryCatch) => "trycatch",
            TryOpen => "try{",
            CatchOpen => "catch{",
            CatchClose => "}catch",
            TryClose => "}try",
            IfOpen => "if{",
            ElseOpen => "else{",
            ElseClose => "}else",
            IfClose => "}if",
            LoopOpen => "loop{",
            LoopClose => "}loop",
        }
    }

    fn from_kind_name(name: &str) -> Option<CodeSymbol> {
        use CodeSymbol::*;
        Some(match name {
            "Start" => Start,
            "End" => End,
            "Declaration" => Statement(StatementKind::Declaration),
            "MethodInvocation" => Statement(StatementKind::MethodInvocation),
            "Assertion" => Statement(StatementKind::Assertion),
            "Fail" => Statement(StatementKind::Fail),
            "Return" => Statement(StatementKind::Return),
            "NewObject" => Statement(StatementKind::NewObject),
            "Other" => Statement(StatementKind::Other),
            "TryOpen" => TryOpen,
            "CatchOpen" => CatchOpen,
            "CatchClose" => CatchClose,
            "TryClose" => TryClose,
            "IfOpen" => IfOpen,
            "ElseOpen" => ElseOpen,
            "ElseClose" => ElseClose,
            "IfClose" => IfClose,
            "LoopOpen" => LoopOpen,
            "LoopClose" => LoopClose,
            _ => return None,
        })
    }
}

/// Bijective, versioned mapping between symbols and codes.
///
/// The canonical numbering is fixed so mined patterns stay comparable across
/// runs: 0=Start, 1=Declaration, 2=MethodInvocation, 3=End, 4=Assertion,
/// 5=Fail, 6=Return, 7=TryOpen, 8=CatchOpen, 9=NewObject, 10=CatchClose,
/// 11=TryClose, 12..=17 if/else/loop brackets, 18=Other. Mining output
/// carries the alphabet in its header, so pattern files are self-describing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeAlphabet {
    pub version: String,
    encode: BTreeMap<CodeSymbol, u32>,
    decode: BTreeMap<u32, CodeSymbol>,
}

pub const ALPHABET_VERSION: &str = "1";

const CANONICAL: &[(u32, CodeSymbol)] = &[
    (0, CodeSymbol::Start),
    (1, CodeSymbol::Statement(StatementKind::Declaration)),
    (2, CodeSymbol::Statement(StatementKind::MethodInvocation)),
    (3, CodeSymbol::End),
    (4, CodeSymbol::Statement(StatementKind::Assertion)),
    (5, CodeSymbol::Statement(StatementKind::Fail)),
    (6, CodeSymbol::Statement(StatementKind::Return)),
    (7, CodeSymbol::TryOpen),
    (8, CodeSymbol::CatchOpen),
    (9, CodeSymbol::Statement(StatementKind::NewObject)),
    (10, CodeSymbol::CatchClose),
    (11, CodeSymbol::TryClose),
    (12, CodeSymbol::IfOpen),
    (13, CodeSymbol::ElseOpen),
    (14, CodeSymbol::ElseClose),
    (15, CodeSymbol::IfClose),
    (16, CodeSymbol::LoopOpen),
    (17, CodeSymbol::LoopClose),
    (18, CodeSymbol::Statement(StatementKind::Other)),
];

impl CodeAlphabet {
    pub fn canonical() -> Self {
        Self::from_pairs(ALPHABET_VERSION, CANONICAL.iter().copied())
    }

    pub fn from_pairs(version: &str, pairs: impl IntoIterator<Item = (u32, CodeSymbol)>) -> Self {
        let mut encode = BTreeMap::new();
        let mut decode = BTreeMap::new();
        for (code, symbol) in pairs {
            encode.insert(symbol, code);
            decode.insert(code, symbol);
        }
        debug_assert_eq!(encode.len(), decode.len(), "alphabet must be bijective");
        CodeAlphabet {
            version: version.to_string(),
            encode,
            decode,
        }
    }

    pub fn encode(&self, symbol: CodeSymbol) -> Result<u32> {
        self.encode.get(&symbol).copied().ok_or(match symbol {
            CodeSymbol::Statement(kind) => Error::UnknownKind(kind),
            other => Error::UnknownToken(other.kind_name().to_string()),
        })
    }

    pub fn decode(&self, code: u32) -> Result<CodeSymbol> {
        self.decode.get(&code).copied().ok_or(Error::UnknownCode(code))
    }

    pub fn start_code(&self) -> Option<u32> {
        self.encode.get(&CodeSymbol::Start).copied()
    }

    pub fn end_code(&self) -> Option<u32> {
        self.encode.get(&CodeSymbol::End).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (u32, CodeSymbol)> + '_ {
        self.decode.iter().map(|(c, s)| (*c, *s))
    }

    /// Header line for sequence-database files:
    /// `# alphabet v1: 0=Start 1=Declaration ...`
    pub fn header_line(&self) -> String {
        let pairs: Vec<String> = self
            .decode
            .iter()
            .map(|(code, sym)| format!("{}={}", code, sym.kind_name()))
            .collect();
        format!("# alphabet v{}: {}", self.version, pairs.join(" "))
    }

    pub fn parse_header_line(line: &str) -> Option<Self> {
        let rest = line.trim().strip_prefix("# alphabet v")?;
        let (version, pairs) = rest.split_once(':')?;
        let mut entries = Vec::new();
        for token in pairs.split_whitespace() {
            let (code, name) = token.split_once('=')?;
            let code: u32 = code.parse().ok()?;
            let symbol = CodeSymbol::from_kind_name(name)?;
            entries.push((code, symbol));
        }
        Some(Self::from_pairs(version.trim(), entries))
    }
}

impl Default for CodeAlphabet {
    fn default() -> Self {
        Self::canonical()
    }
}

/// A test body as a code sequence, wrapped in Start/End markers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractedSequence {
    pub codes: Vec<u32>,
    /// Identity of the originating test, when known.
    pub origin: Option<String>,
}

/// Abstracts a test body: one code per top-level statement in order;
/// compound statements emit their open code, children, then close code.
pub fn abstract_test(test: &TestCase, alphabet: &CodeAlphabet) -> Result<AbstractedSequence> {
    let mut codes = vec![alphabet.encode(CodeSymbol::Start)?];
    for stmt in &test.statements {
        emit(stmt, alphabet, &mut codes)?;
    }
    codes.push(alphabet.encode(CodeSymbol::End)?);
    Ok(AbstractedSequence {
        codes,
        origin: Some(test.id()),
    })
}

fn emit(stmt: &Statement, alphabet: &CodeAlphabet, out: &mut Vec<u32>) -> Result<()> {
    match stmt.kind {
        StatementKind::IfElse => {
            out.push(alphabet.encode(CodeSymbol::IfOpen)?);
            if let Some(then) = stmt.section(SectionRole::Then) {
                for s in &then.statements {
                    emit(s, alphabet, out)?;
                }
            }
            if let Some(els) = stmt.section(SectionRole::Else) {
                out.push(alphabet.encode(CodeSymbol::ElseOpen)?);
                for s in &els.statements {
                    emit(s, alphabet, out)?;
                }
                out.push(alphabet.encode(CodeSymbol::ElseClose)?);
            }
            out.push(alphabet.encode(CodeSymbol::IfClose)?);
        }
        StatementKind::Loop => {
            out.push(alphabet.encode(CodeSymbol::LoopOpen)?);
            for s in stmt.children() {
                emit(s, alphabet, out)?;
            }
            out.push(alphabet.encode(CodeSymbol::LoopClose)?);
        }
        StatementKind::TryCatch => {
            out.push(alphabet.encode(CodeSymbol::TryOpen)?);
            if let Some(sec) = stmt.section(SectionRole::Try) {
                for s in &sec.statements {
                    emit(s, alphabet, out)?;
                }
            }
            for sec in stmt.sections.iter().filter(|s| s.role == SectionRole::Catch) {
                out.push(alphabet.encode(CodeSymbol::CatchOpen)?);
                for s in &sec.statements {
                    emit(s, alphabet, out)?;
                }
                out.push(alphabet.encode(CodeSymbol::CatchClose)?);
            }
            // Finally blocks are cleanup; their statements land between the
            // last catch and the try close without extra brackets.
            if let Some(sec) = stmt.section(SectionRole::Finally) {
                for s in &sec.statements {
                    emit(s, alphabet, out)?;
                }
            }
            out.push(alphabet.encode(CodeSymbol::TryClose)?);
        }
        kind => out.push(alphabet.encode(CodeSymbol::Statement(kind))?),
    }
    Ok(())
}

/// Reconstructs the human-readable skeleton of a code sequence, with `*`
/// wildcards between codes.
pub fn reconstruct(codes: &[u32], alphabet: &CodeAlphabet) -> Result<String> {
    let tokens: Result<Vec<&str>> = codes
        .iter()
        .map(|c| alphabet.decode(*c).map(|s| s.skeleton_token()))
        .collect();
    Ok(tokens?.join(" * "))
}

/// Inverse of [`reconstruct`]: parses a skeleton back into codes.
pub fn encode_skeleton(skeleton: &str, alphabet: &CodeAlphabet) -> Result<Vec<u32>> {
    let mut token_map = BTreeMap::new();
    for (code, sym) in alphabet.symbols() {
        token_map.insert(sym.skeleton_token(), code);
    }
    skeleton
        .split(" * ")
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            token_map
                .get(t.trim())
                .copied()
                .ok_or_else(|| Error::UnknownToken(t.trim().to_string()))
        })
        .collect()
}

/// Writes a sequence database: a header line declaring the alphabet, then
/// one sequence per line as space-separated integers.
pub fn write_seqdb(sequences: &[AbstractedSequence], alphabet: &CodeAlphabet) -> String {
    let mut out = String::new();
    out.push_str(&alphabet.header_line());
    out.push('\n');
    for seq in sequences {
        let line: Vec<String> = seq.codes.iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a sequence database file. A missing header yields the canonical
/// alphabet; other `#` lines are comments.
pub fn read_seqdb(text: &str) -> Result<(Vec<Vec<u32>>, CodeAlphabet)> {
    let mut alphabet = None;
    let mut sequences = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if alphabet.is_none() {
                alphabet = CodeAlphabet::parse_header_line(line);
            }
            continue;
        }
        let mut codes = Vec::new();
        for token in line.split_whitespace() {
            let code: u32 = token.parse().map_err(|_| Error::InvalidSeqDb {
                line: idx + 1,
                message: format!("not a non-negative integer: {token:?}"),
            })?;
            codes.push(code);
        }
        sequences.push(codes);
    }
    Ok((sequences, alphabet.unwrap_or_default()))
}
