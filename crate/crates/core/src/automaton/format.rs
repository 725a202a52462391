//! Line-oriented `.tap` text format.
//!
//! ```text
//! automaton v1
//! block <k> signature orientable=<true|false> genus=<g>|crosscaps=<c> boundaries=<b>
//! block <k> triangulation <a,b,c> <a,b,c> ...
//! incoming <k> <boundary-index>
//! arrow <k> <boundary-index> -> <l>
//! ```
//!
//! `#` starts a comment. Blank lines are ignored. Arrow order in the file is
//! the arrow order of the automaton.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{Arrow, Block, BlockSpec, TopologicalAutomaton, ValidationReport};
use crate::surface::{
    SignatureError, SurfaceClass, SurfaceError, SurfaceSignature, Triangulation,
    TriangulationError, VertexId,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown block {block}")]
    UnknownBlock {
        line: usize,
        column: usize,
        block: usize,
    },
    #[error("{line}: block {block} is declared twice")]
    DuplicateBlock { line: usize, block: usize },
    #[error("{line}: incoming boundary of block {block} is declared twice")]
    DuplicateIncoming { line: usize, block: usize },
    #[error("block {0} is missing (blocks must be numbered 0..p)")]
    MissingBlock(usize),
    #[error("{line}: {source}")]
    Triangulation {
        line: usize,
        source: TriangulationError,
    },
    #[error("{line}: {source}")]
    Surface { line: usize, source: SurfaceError },
    #[error("{line}: {source}")]
    Signature {
        line: usize,
        source: SignatureError,
    },
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, i));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, content.len()));
    }
    out.into_iter()
        .map(|(s, e)| Token {
            text: &content[s..e],
            column: content[..s].chars().count() + 1,
        })
        .collect()
}

struct LineCursor<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> LineCursor<'a> {
    fn syntax(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&Token<'a>, ParseError> {
        match self.tokens.get(self.pos) {
            Some(_) => {
                self.pos += 1;
                Ok(&self.tokens[self.pos - 1])
            }
            None => Err(self.syntax(self.end_column, format!("expected {what}"))),
        }
    }

    fn number<T: FromStr>(&mut self, what: &str) -> Result<(T, usize), ParseError> {
        let tok = self.next(what)?;
        let (text, column) = (tok.text, tok.column);
        text.parse()
            .map(|n| (n, column))
            .map_err(|_| self.syntax(column, format!("expected {what}, found `{text}`")))
    }

    fn keyword(&mut self, expected: &str) -> Result<(), ParseError> {
        let tok = self.next(&format!("`{expected}`"))?;
        if tok.text == expected {
            Ok(())
        } else {
            let (column, text) = (tok.column, tok.text);
            Err(self.syntax(column, format!("expected `{expected}`, found `{text}`")))
        }
    }

    fn key_value<T: FromStr>(&mut self, key: &str) -> Result<T, ParseError> {
        let tok = self.next(&format!("`{key}=`"))?;
        let (column, text) = (tok.column, tok.text);
        let value = text
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| self.syntax(column, format!("expected `{key}=`, found `{text}`")))?;
        value
            .parse()
            .map_err(|_| self.syntax(column, format!("invalid value for `{key}`: `{value}`")))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(tok) => Err(self.syntax(tok.column, format!("unexpected `{}`", tok.text))),
        }
    }
}

struct BlockRef {
    line: usize,
    column: usize,
    block: usize,
}

/// Parses and validates a `.tap` document.
pub fn parse(text: &str) -> Result<TopologicalAutomaton, ParseError> {
    let mut saw_header = false;
    let mut blocks: BTreeMap<usize, Block> = BTreeMap::new();
    let mut incoming: BTreeMap<usize, u32> = BTreeMap::new();
    let mut arrows = Vec::new();
    let mut refs: Vec<BlockRef> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let mut cur = LineCursor {
            line,
            end_column: raw.split('#').next().unwrap_or("").chars().count() + 1,
            tokens,
            pos: 0,
        };
        let head = cur.next("a declaration")?;
        let (head_text, head_col) = (head.text, head.column);
        if !saw_header {
            if head_text != "automaton" {
                return Err(cur.syntax(head_col, "document must start with `automaton v1`"));
            }
            cur.keyword("v1")?;
            cur.finish()?;
            saw_header = true;
            continue;
        }
        match head_text {
            "block" => {
                let (k, _): (usize, _) = cur.number("block index")?;
                let kind = cur.next("`signature` or `triangulation`")?;
                let block = match (kind.text, kind.column) {
                    ("signature", _) => Block::from_signature(parse_signature(&mut cur)?),
                    ("triangulation", _) => {
                        let tri = parse_triangles(&mut cur)?;
                        Block::from_triangulation(tri)
                            .map_err(|source| ParseError::Surface { line, source })?
                    }
                    (other, column) => {
                        return Err(cur.syntax(
                            column,
                            format!("expected `signature` or `triangulation`, found `{other}`"),
                        ))
                    }
                };
                if blocks.insert(k, block).is_some() {
                    return Err(ParseError::DuplicateBlock { line, block: k });
                }
            }
            "incoming" => {
                let (k, column) = cur.number("block index")?;
                let (b, _) = cur.number("boundary index")?;
                cur.finish()?;
                refs.push(BlockRef {
                    line,
                    column,
                    block: k,
                });
                if incoming.insert(k, b).is_some() {
                    return Err(ParseError::DuplicateIncoming { line, block: k });
                }
            }
            "arrow" => {
                let (k, kc) = cur.number("source block")?;
                let (b, _) = cur.number("boundary index")?;
                cur.keyword("->")?;
                let (l, lc) = cur.number("target block")?;
                cur.finish()?;
                refs.push(BlockRef {
                    line,
                    column: kc,
                    block: k,
                });
                refs.push(BlockRef {
                    line,
                    column: lc,
                    block: l,
                });
                arrows.push(Arrow::new(k, b, l));
            }
            other => {
                return Err(cur.syntax(head_col, format!("unknown declaration `{other}`")));
            }
        }
    }

    if !saw_header {
        return Err(ParseError::Syntax {
            line: 1,
            column: 1,
            message: "document must start with `automaton v1`".into(),
        });
    }
    for (expected, &k) in blocks.keys().enumerate() {
        if expected != k {
            return Err(ParseError::MissingBlock(expected));
        }
    }
    if let Some(r) = refs.iter().find(|r| !blocks.contains_key(&r.block)) {
        return Err(ParseError::UnknownBlock {
            line: r.line,
            column: r.column,
            block: r.block,
        });
    }

    let aut = TopologicalAutomaton {
        blocks: blocks.into_values().collect(),
        incoming,
        arrows,
    };
    aut.validate()?;
    Ok(aut)
}

fn parse_signature(cur: &mut LineCursor<'_>) -> Result<SurfaceSignature, ParseError> {
    let orientable: bool = cur.key_value("orientable")?;
    let sig = if orientable {
        let genus = cur.key_value("genus")?;
        let b = cur.key_value("boundaries")?;
        SurfaceSignature::orientable(genus, b)
    } else {
        let crosscaps = cur.key_value("crosscaps")?;
        let b = cur.key_value("boundaries")?;
        SurfaceSignature::nonorientable(crosscaps, b).map_err(|source| ParseError::Signature {
            line: cur.line,
            source,
        })?
    };
    cur.finish()?;
    Ok(sig)
}

fn parse_triangles(cur: &mut LineCursor<'_>) -> Result<Triangulation, ParseError> {
    let mut tris = Vec::new();
    while let Some(tok) = cur.tokens.get(cur.pos) {
        cur.pos += 1;
        let parts: Vec<_> = tok.text.split(',').map(str::parse::<VertexId>).collect();
        match parts.as_slice() {
            [Ok(a), Ok(b), Ok(c)] => tris.push([*a, *b, *c]),
            _ => {
                return Err(cur.syntax(
                    tok.column,
                    format!("expected a triangle `a,b,c`, found `{}`", tok.text),
                ))
            }
        }
    }
    if tris.is_empty() {
        return Err(cur.syntax(cur.end_column, "expected at least one triangle"));
    }
    Triangulation::new(tris).map_err(|source| ParseError::Triangulation {
        line: cur.line,
        source,
    })
}

/// Canonical text form: header, blocks by index, incoming designations by
/// block, arrows in order.
pub fn serialize(aut: &TopologicalAutomaton) -> String {
    let mut out = String::from("automaton v1\n");
    for (k, block) in aut.blocks.iter().enumerate() {
        match block.spec() {
            BlockSpec::Signature(sig) => {
                let b = sig.boundary_count();
                match sig.class() {
                    SurfaceClass::Orientable { genus } => writeln!(
                        out,
                        "block {k} signature orientable=true genus={genus} boundaries={b}"
                    ),
                    SurfaceClass::Nonorientable { crosscaps } => writeln!(
                        out,
                        "block {k} signature orientable=false crosscaps={crosscaps} boundaries={b}"
                    ),
                }
                .expect("writing to a String");
            }
            BlockSpec::Triangulation(tri) => {
                out.push_str(&format!("block {k} triangulation"));
                for [a, b, c] in tri.triangles() {
                    out.push_str(&format!(" {a},{b},{c}"));
                }
                out.push('\n');
            }
        }
    }
    for (k, b) in &aut.incoming {
        writeln!(out, "incoming {k} {b}").expect("writing to a String");
    }
    for a in &aut.arrows {
        writeln!(
            out,
            "arrow {} {} -> {}",
            a.source_block, a.source_boundary, a.target_block
        )
        .expect("writing to a String");
    }
    out
}
