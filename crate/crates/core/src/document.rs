//! Line-oriented form documents.
//!
//! ```text
//! # comment
//! dim 3
//! labels a b c
//! gens a b
//! edge a b        # Ω(a, b) = Ω(b, a) = 1
//! arc b c         # Ω(b, c) = 1 only
//! blocks (a)(b)
//! vector x a+c
//! ```
//!
//! Coordinates follow label order, little-endian: label i is bit i.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::blocks::{validate_blocks, BlockDecomposition};
use crate::error::{Error, Result};
use crate::f2::{BilinearForm, F2Vector, MAX_DIM};
use crate::graph::GeneratingSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntryKind {
    Edge,
    Arc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub kind: EntryKind,
    pub from: String,
    pub to: String,
}

/// (kind, source label, line) keyed by unordered label pair.
type PairEntry = (EntryKind, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormDocument {
    pub dim: usize,
    pub labels: Vec<String>,
    pub gens: Vec<String>,
    pub entries: Vec<Entry>,
    pub blocks: Option<Vec<Vec<String>>>,
    /// Named vectors as (name, expression) in declaration order.
    pub vectors: Vec<(String, String)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl FormDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = FormDocument::default();
        let mut seen_dim = false;
        let mut seen_labels = false;
        let mut seen_gens = false;
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut pairs: HashMap<(usize, usize), Vec<PairEntry>> = HashMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let args: Vec<&str> = rest.split_whitespace().collect();
            match keyword {
                "dim" => {
                    if seen_dim {
                        return Err(parse_err(line_no, "`dim` declared twice"));
                    }
                    let [value] = args[..] else {
                        return Err(parse_err(line_no, "expected `dim N`"));
                    };
                    doc.dim = value.parse().map_err(|_| parse_err(line_no, format!("invalid dimension `{value}`")))?;
                    if doc.dim == 0 || doc.dim > MAX_DIM {
                        return Err(parse_err(line_no, format!("dimension must be between 1 and {MAX_DIM}")));
                    }
                    seen_dim = true;
                }
                "labels" => {
                    if !seen_dim {
                        return Err(parse_err(line_no, "`labels` before `dim`"));
                    }
                    if seen_labels {
                        return Err(parse_err(line_no, "`labels` declared twice"));
                    }
                    if args.len() != doc.dim {
                        return Err(parse_err(line_no, format!("expected {} labels, found {}", doc.dim, args.len())));
                    }
                    for (i, &label) in args.iter().enumerate() {
                        if !is_identifier(label) {
                            return Err(parse_err(line_no, format!("invalid label `{label}`")));
                        }
                        if index.insert(label.to_string(), i).is_some() {
                            return Err(parse_err(line_no, format!("duplicate label `{label}`")));
                        }
                    }
                    doc.labels = args.iter().map(|s| s.to_string()).collect();
                    seen_labels = true;
                }
                "gens" => {
                    if !seen_labels {
                        return Err(parse_err(line_no, "`gens` before `labels`"));
                    }
                    if seen_gens {
                        return Err(parse_err(line_no, "`gens` declared twice"));
                    }
                    let mut used = vec![false; doc.dim];
                    for &g in &args {
                        let i = lookup(&index, line_no, g)?;
                        if std::mem::replace(&mut used[i], true) {
                            return Err(parse_err(line_no, format!("generator `{g}` listed twice")));
                        }
                    }
                    doc.gens = args.iter().map(|s| s.to_string()).collect();
                    seen_gens = true;
                }
                "edge" | "arc" => {
                    let kind = if keyword == "edge" { EntryKind::Edge } else { EntryKind::Arc };
                    let [a, b] = args[..] else {
                        return Err(parse_err(line_no, format!("expected `{keyword} A B`")));
                    };
                    let (i, j) = (lookup(&index, line_no, a)?, lookup(&index, line_no, b)?);
                    if i == j {
                        return Err(parse_err(line_no, format!("`{keyword} {a} {a}` would set Omega({a}, {a}) = 1")));
                    }
                    let pair = (i.min(j), i.max(j));
                    let declared = pairs.entry(pair).or_default();
                    let clash = declared.iter().find(|&&(k, from, _)| kind == EntryKind::Edge || k == EntryKind::Edge || from == i);
                    if let Some(&(_, _, earlier)) = clash {
                        return Err(parse_err(line_no, format!("pair {a} {b} already declared on line {earlier}")));
                    }
                    declared.push((kind, i, line_no));
                    doc.entries.push(Entry { kind, from: a.to_string(), to: b.to_string() });
                }
                "blocks" => {
                    if doc.blocks.is_some() {
                        return Err(parse_err(line_no, "`blocks` declared twice"));
                    }
                    doc.blocks = Some(parse_blocks(rest).map_err(|m| parse_err(line_no, m))?);
                    for label in doc.blocks.iter().flatten().flatten() {
                        lookup(&index, line_no, label)?;
                    }
                }
                "vector" => {
                    let [name, expr] = args[..] else {
                        return Err(parse_err(line_no, "expected `vector NAME L1+L2+...`"));
                    };
                    if !is_identifier(name) {
                        return Err(parse_err(line_no, format!("invalid vector name `{name}`")));
                    }
                    if doc.vectors.iter().any(|(n, _)| n == name) {
                        return Err(parse_err(line_no, format!("vector `{name}` declared twice")));
                    }
                    for term in expr.split('+') {
                        if term != "0" {
                            lookup(&index, line_no, term)?;
                        }
                    }
                    doc.vectors.push((name.to_string(), expr.to_string()));
                }
                other => return Err(parse_err(line_no, format!("unknown keyword `{other}`"))),
            }
        }
        if !seen_dim {
            return Err(parse_err(0, "missing `dim`"));
        }
        if !seen_labels {
            return Err(parse_err(0, "missing `labels`"));
        }
        if !seen_gens {
            return Err(parse_err(0, "missing `gens`"));
        }
        Ok(doc)
    }

    /// Canonical text; parsing it yields an equal document.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "labels {}", self.labels.join(" "));
        let _ = writeln!(out, "gens {}", self.gens.join(" "));
        for e in &self.entries {
            let kw = match e.kind {
                EntryKind::Edge => "edge",
                EntryKind::Arc => "arc",
            };
            let _ = writeln!(out, "{kw} {} {}", e.from, e.to);
        }
        if let Some(blocks) = &self.blocks {
            let body: String = blocks.iter().map(|b| format!("({})", b.join(" "))).collect();
            let _ = writeln!(out, "blocks {body}");
        }
        for (name, expr) in &self.vectors {
            let _ = writeln!(out, "vector {name} {expr}");
        }
        out
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn form(&self) -> Result<BilinearForm> {
        let mut form = BilinearForm::zero(self.dim)?;
        for e in &self.entries {
            let i = self.require_label(&e.from)?;
            let j = self.require_label(&e.to)?;
            form.set(i, j, true);
            if e.kind == EntryKind::Edge {
                form.set(j, i, true);
            }
        }
        Ok(form)
    }

    fn require_label(&self, label: &str) -> Result<usize> {
        self.label_index(label).ok_or_else(|| Error::Semantic(format!("unknown label `{label}`")))
    }

    /// The generators as unit vectors of their labels.
    pub fn generating_set(&self) -> Result<GeneratingSet> {
        let vectors = self
            .gens
            .iter()
            .map(|g| self.require_label(g).map(|i| F2Vector::unit(self.dim, i)))
            .collect::<Result<Vec<_>>>()?;
        GeneratingSet::new(self.form()?, vectors, self.gens.clone())
    }

    /// `L1+L2+...` over labels or named vectors, `0`, or a bitstring in label
    /// order.
    pub fn parse_vector(&self, text: &str) -> Result<F2Vector> {
        let text = text.trim();
        if text.len() == self.dim && text.chars().all(|c| c == '0' || c == '1') && self.label_index(text).is_none() {
            return F2Vector::parse_bitstring(text);
        }
        let mut v = F2Vector::zero(self.dim);
        for term in text.split('+').map(str::trim) {
            if term == "0" {
                continue;
            }
            if let Some(i) = self.label_index(term) {
                v += F2Vector::unit(self.dim, i);
            } else if let Some((_, expr)) = self.vectors.iter().find(|(n, _)| n == term) {
                v += self.parse_vector(expr)?;
            } else {
                return Err(Error::Semantic(format!("unknown label or vector `{term}` in `{text}`")));
            }
        }
        Ok(v)
    }

    /// Renders a vector as `L1+L2+...` in label order, or `0`.
    pub fn describe(&self, v: &F2Vector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.support().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join("+")
    }

    pub fn named_vector(&self, name: &str) -> Option<Result<F2Vector>> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, e)| self.parse_vector(e))
    }

    /// The declared blocks as generator indices, validated.
    pub fn block_decomposition(&self) -> Result<Option<BlockDecomposition>> {
        let Some(blocks) = &self.blocks else {
            return Ok(None);
        };
        let b = self.generating_set()?;
        let indices = blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|l| b.index_of_label(l).ok_or_else(|| Error::InvalidBlocks(format!("`{l}` is not a generator"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        validate_blocks(&b, indices).map(Some)
    }
}

fn lookup(index: &HashMap<String, usize>, line: usize, label: &str) -> Result<usize> {
    index.get(label).copied().ok_or_else(|| parse_err(line, format!("unknown label `{label}`")))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_blocks(text: &str) -> std::result::Result<Vec<Vec<String>>, String> {
    let mut blocks = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err("expected `blocks (L ...)(L ...)`".into());
    }
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = inner.find(')').ok_or("unclosed `(`")?;
        let labels: Vec<String> = inner[..close].split_whitespace().map(str::to_string).collect();
        if labels.is_empty() {
            return Err("empty block".into());
        }
        blocks.push(labels);
        rest = inner[close + 1..].trim_start();
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EDGE: &str = "dim 2\nlabels a b\ngens a b\nedge a b\n";

    #[test]
    fn minimal_document() {
        let doc = FormDocument::parse(EDGE).unwrap();
        let b = doc.generating_set().unwrap();
        assert_eq!(b.graph().edge_count(), 1);
        assert_eq!(doc.parse_vector("a+b").unwrap(), F2Vector::parse_bitstring("11").unwrap());
        assert_eq!(doc.parse_vector("10").unwrap(), F2Vector::unit(2, 0));
        assert_eq!(doc.describe(&F2Vector::unit(2, 1)), "b");
    }

    #[test]
    fn round_trip() {
        let text = "# sample\ndim 3\nlabels a b c\ngens a b\nedge a b   # trailing\narc b c\nblocks (a b)\nvector x a+c\n";
        let doc = FormDocument::parse(text).unwrap();
        assert_eq!(FormDocument::parse(&doc.render()).unwrap(), doc);
        assert_eq!(doc.parse_vector("x+b").unwrap(), F2Vector::parse_bitstring("111").unwrap());
        let form = doc.form().unwrap();
        assert!(form.entry(1, 2));
        assert!(!form.entry(2, 1));
    }

    #[test]
    fn errors_carry_lines() {
        let err = FormDocument::parse("dim 2\nlabels a b\ngens a\narc a a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(matches!(FormDocument::parse("dim 2\nlabels a a\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(FormDocument::parse("dim 2\nlabels a b\ngens a c\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(FormDocument::parse("dim 2\nlabels a b\ngens a b\nedge a b\nedge b a\n"), Err(Error::Parse { line: 5, .. })));
        assert!(matches!(FormDocument::parse("dim 2\nlabels a b\ngens a b\nfoo\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(FormDocument::parse("labels a b\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn opposite_arcs_allowed() {
        let doc = FormDocument::parse("dim 2\nlabels a b\ngens a b\narc a b\narc b a\n").unwrap();
        assert!(doc.form().unwrap().is_alternating());
    }

    #[test]
    fn unknown_vector_term() {
        let doc = FormDocument::parse("dim 2\nlabels a b\ngens a\n").unwrap();
        assert!(doc.generating_set().is_ok());
        assert!(doc.parse_vector("z").is_err());
    }
}
