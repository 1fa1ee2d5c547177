//! Closed sequential pattern mining over abstracted statement sequences.
//!
//! Mines the complete set of frequent closed patterns under gapped
//! subsequence containment (each statement code is a single-item itemset,
//! support counted once per sequence), then filters to proto-patterns that
//! span whole tests. Correctness is defined extensionally: output equals a
//! brute-force enumeration oracle on small databases.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abstraction::{reconstruct, CodeAlphabet, CodeSymbol};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceDatabase {
    pub sequences: Vec<Vec<u32>>,
    pub alphabet: CodeAlphabet,
}

impl SequenceDatabase {
    pub fn new(sequences: Vec<Vec<u32>>, alphabet: CodeAlphabet) -> Self {
        SequenceDatabase {
            sequences,
            alphabet,
        }
    }
}

/// Minimum support: an absolute sequence count or a fraction of the
/// database, resolved to an absolute count before mining.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MinSupport {
    Absolute(usize),
    Relative(f64),
}

impl std::str::FromStr for MinSupport {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Ok(n) = s.parse::<usize>() {
            return Ok(MinSupport::Absolute(n));
        }
        if let Ok(f) = s.parse::<f64>() {
            return Ok(MinSupport::Relative(f));
        }
        Err(format!("not a count or fraction: {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinerConfig {
    pub min_support: MinSupport,
}

impl MinerConfig {
    pub fn absolute(n: usize) -> Self {
        MinerConfig {
            min_support: MinSupport::Absolute(n),
        }
    }

    /// Resolves to an absolute count against a database of `db_len`
    /// sequences. Fractions resolve as ceil(f * db_len), floored at 1.
    pub fn resolve(&self, db_len: usize) -> Result<usize> {
        let resolved = match self.min_support {
            MinSupport::Absolute(n) => {
                if n < 1 {
                    return Err(Error::SupportOutOfRange {
                        got: n.to_string(),
                        reason: "must be at least 1".into(),
                    });
                }
                n
            }
            MinSupport::Relative(f) => {
                if !(f > 0.0 && f <= 1.0) {
                    return Err(Error::SupportOutOfRange {
                        got: f.to_string(),
                        reason: "fraction must be in (0, 1]".into(),
                    });
                }
                ((f * db_len as f64).ceil() as usize).max(1)
            }
        };
        if resolved > db_len {
            return Err(Error::SupportOutOfRange {
                got: resolved.to_string(),
                reason: format!("exceeds database size {db_len}"),
            });
        }
        Ok(resolved)
    }
}

/// A frequent closed sequential pattern: no super-sequence has equal
/// support.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClosedPattern {
    pub codes: Vec<u32>,
    pub support: usize,
}

impl fmt::Display for ClosedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<String> = self.codes.iter().map(|c| c.to_string()).collect();
        write!(f, "{} #{}", codes.join(" "), self.support)
    }
}

/// Is `needle` a (gapped) subsequence of `haystack`?
pub fn is_subsequence(needle: &[u32], haystack: &[u32]) -> bool {
    let mut it = haystack.iter();
    needle.iter().all(|n| it.any(|h| h == n))
}

/// Mines exactly the frequent closed sequential patterns of `db`.
///
/// Output is sorted lexicographically by codes for reproducibility.
pub fn mine_closed(db: &SequenceDatabase, cfg: &MinerConfig) -> Result<Vec<ClosedPattern>> {
    if db.sequences.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let min_support = cfg.resolve(db.sequences.len())?;

    // PrefixSpan-style depth-first growth with pseudo-projections. Each
    // frequent pattern is visited exactly once.
    let mut frequent: Vec<ClosedPattern> = Vec::new();
    let initial: Vec<(usize, usize)> = (0..db.sequences.len()).map(|i| (i, 0)).collect();
    let mut prefix = Vec::new();
    grow(&db.sequences, &initial, min_support, &mut prefix, &mut frequent);

    // Closure: drop any pattern that has an equal-support super-pattern.
    // Anti-monotonicity makes it enough to look within the same support
    // class, and every such super-pattern is itself frequent.
    let mut by_support: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (idx, p) in frequent.iter().enumerate() {
        by_support.entry(p.support).or_default().push(idx);
    }
    let mut closed: Vec<ClosedPattern> = frequent
        .iter()
        .filter(|p| {
            by_support[&p.support].iter().all(|&j| {
                let q = &frequent[j];
                q.codes.len() <= p.codes.len() || !is_subsequence(&p.codes, &q.codes)
            })
        })
        .cloned()
        .collect();
    closed.sort_by(|a, b| a.codes.cmp(&b.codes));
    Ok(closed)
}

fn grow(
    sequences: &[Vec<u32>],
    projection: &[(usize, usize)],
    min_support: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<ClosedPattern>,
) {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &(si, pos) in projection {
        let mut seen = std::collections::BTreeSet::new();
        for &item in &sequences[si][pos..] {
            seen.insert(item);
        }
        for item in seen {
            *counts.entry(item).or_default() += 1;
        }
    }
    for (&item, &count) in &counts {
        if count < min_support {
            continue;
        }
        prefix.push(item);
        out.push(ClosedPattern {
            codes: prefix.clone(),
            support: count,
        });
        let next: Vec<(usize, usize)> = projection
            .iter()
            .filter_map(|&(si, pos)| {
                sequences[si][pos..]
                    .iter()
                    .position(|&x| x == item)
                    .map(|off| (si, pos + off + 1))
            })
            .collect();
        grow(sequences, &next, min_support, prefix, out);
        prefix.pop();
    }
}

/// Keeps only patterns that span a whole test: first code Start, last code
/// End under the given alphabet.
pub fn filter_spanning(patterns: &[ClosedPattern], alphabet: &CodeAlphabet) -> Vec<ClosedPattern> {
    let (Some(start), Some(end)) = (alphabet.start_code(), alphabet.end_code()) else {
        return Vec::new();
    };
    patterns
        .iter()
        .filter(|p| p.codes.first() == Some(&start) && p.codes.last() == Some(&end))
        .cloned()
        .collect()
}

/// Grouping aid for the manual curation step: buckets by the control-flow
/// brackets a pattern contains, and by shared prefixes (first three codes).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupedReport {
    /// Bucket name -> patterns containing that control-flow family's
    /// brackets. A pattern may land in several buckets; patterns with no
    /// control-flow codes land in "Plain".
    pub control_flow: Vec<(String, Vec<ClosedPattern>)>,
    /// Leading-codes prefix -> patterns. Every pattern lands in exactly one
    /// bucket, so bucket supports re-sum to the input.
    pub prefixes: Vec<(Vec<u32>, Vec<ClosedPattern>)>,
}

const PREFIX_LEN: usize = 3;

pub fn group_protopatterns(
    patterns: &[ClosedPattern],
    alphabet: &CodeAlphabet,
) -> GroupedReport {
    let codes_of = |symbols: &[CodeSymbol]| -> Vec<u32> {
        symbols
            .iter()
            .filter_map(|s| alphabet.symbols().find(|(_, sym)| sym == s).map(|(c, _)| c))
            .collect()
    };
    let families = [
        (
            "TryCatch",
            codes_of(&[
                CodeSymbol::TryOpen,
                CodeSymbol::CatchOpen,
                CodeSymbol::CatchClose,
                CodeSymbol::TryClose,
            ]),
        ),
        (
            "IfElse",
            codes_of(&[
                CodeSymbol::IfOpen,
                CodeSymbol::ElseOpen,
                CodeSymbol::ElseClose,
                CodeSymbol::IfClose,
            ]),
        ),
        (
            "Loop",
            codes_of(&[CodeSymbol::LoopOpen, CodeSymbol::LoopClose]),
        ),
    ];

    let mut control_flow: Vec<(String, Vec<ClosedPattern>)> = Vec::new();
    let mut plain: Vec<ClosedPattern> = Vec::new();
    for (name, family_codes) in &families {
        let bucket: Vec<ClosedPattern> = patterns
            .iter()
            .filter(|p| p.codes.iter().any(|c| family_codes.contains(c)))
            .cloned()
            .collect();
        if !bucket.is_empty() {
            control_flow.push((name.to_string(), bucket));
        }
    }
    let all_cf: Vec<u32> = families.iter().flat_map(|(_, c)| c.clone()).collect();
    for p in patterns {
        if !p.codes.iter().any(|c| all_cf.contains(c)) {
            plain.push(p.clone());
        }
    }
    if !plain.is_empty() {
        control_flow.push(("Plain".to_string(), plain));
    }

    let mut prefix_map: BTreeMap<Vec<u32>, Vec<ClosedPattern>> = BTreeMap::new();
    for p in patterns {
        let key: Vec<u32> = p.codes.iter().take(PREFIX_LEN).copied().collect();
        prefix_map.entry(key).or_default().push(p.clone());
    }
    GroupedReport {
        control_flow,
        prefixes: prefix_map.into_iter().collect(),
    }
}

/// Text table: support, codes and reconstructed skeleton per pattern.
pub fn render_patterns_text(patterns: &[ClosedPattern], alphabet: &CodeAlphabet) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} pattern(s)\n", patterns.len()));
    out.push_str("support  codes                          skeleton\n");
    for p in patterns {
        let codes: Vec<String> = p.codes.iter().map(|c| c.to_string()).collect();
        let skeleton =
            reconstruct(&p.codes, alphabet).unwrap_or_else(|_| "<unknown codes>".to_string());
        out.push_str(&format!("{:>7}  {:<30} {}\n", p.support, codes.join(" "), skeleton));
    }
    out
}

/// Machine-readable records: one pattern per line, `codes<TAB>support`.
pub fn render_patterns_records(patterns: &[ClosedPattern]) -> String {
    let mut out = String::new();
    for p in patterns {
        let codes: Vec<String> = p.codes.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{}\t{}\n", codes.join(" "), p.support));
    }
    out
}

pub fn render_grouped_text(report: &GroupedReport, alphabet: &CodeAlphabet) -> String {
    let mut out = String::new();
    out.push_str("== control-flow buckets ==\n");
    for (name, patterns) in &report.control_flow {
        let total: usize = patterns.iter().map(|p| p.support).sum();
        out.push_str(&format!("[{name}] {} pattern(s), support sum {total}\n", patterns.len()));
        for p in patterns {
            let skeleton =
                reconstruct(&p.codes, alphabet).unwrap_or_else(|_| "<unknown codes>".to_string());
            out.push_str(&format!("  {:>6}  {}\n", p.support, skeleton));
        }
    }
    out.push_str("== prefix buckets ==\n");
    for (prefix, patterns) in &report.prefixes {
        let total: usize = patterns.iter().map(|p| p.support).sum();
        let key: Vec<String> = prefix.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "[{}] {} pattern(s), support sum {total}\n",
            key.join(" "),
            patterns.len()
        ));
    }
    out
}
