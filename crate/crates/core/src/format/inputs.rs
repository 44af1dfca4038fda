//! Plain-text instance formats read by the generators.
//!
//! * SAT: DIMACS CNF (`c` comments, `p cnf VARS CLAUSES`, `0`-terminated clauses).
//! * Exact cover: one set per line as whitespace-separated element names, with
//!   an optional leading `universe e1 e2 ...` line; `#` starts a comment.
//! * Bipartite graphs: a `n SIZE` header then one `i j` edge per line, both
//!   0-based (`i` on the left part, `j` on the right); `#` starts a comment.

use crate::algorithms::BipartiteGraph;
use crate::format::sexp::syntax;
use crate::format::SourceSpan;
use crate::gen::{CnfFormula, ExactCoverInstance};
use crate::Result;

/// Whitespace-separated tokens with their spans.
fn tokens(text: &str) -> impl Iterator<Item = (&str, SourceSpan)> {
    let mut line_start = 0;
    text.split_inclusive('\n').enumerate().flat_map(move |(line_no, line)| {
        let base = line_start;
        line_start += line.len();
        let mut out = Vec::new();
        let mut i = 0;
        let bytes = line.as_bytes();
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let from = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let span = SourceSpan {
                start: base + from,
                end: base + i,
                line: line_no + 1,
                column: line[..from].chars().count() + 1,
            };
            out.push((&line[from..i], span));
        }
        out
    })
}

fn line_span(text: &str, line_no: usize, line: &str) -> SourceSpan {
    let start = text.split_inclusive('\n').take(line_no).map(str::len).sum();
    SourceSpan { start, end: start + line.len(), line: line_no + 1, column: 1 }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut skip_line = None;
    for (tok, span) in tokens(text) {
        if skip_line == Some(span.line) {
            continue;
        }
        if tok == "%" {
            break;
        }
        if tok == "c" && span.column == 1 {
            skip_line = Some(span.line);
            continue;
        }
        if tok == "p" {
            let line = text[span.start..].lines().next().unwrap_or("");
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["p", "cnf", v, c] => match (v.parse(), c.parse()) {
                    (Ok(v), Ok(c)) if header.is_none() => header = Some((v, c)),
                    _ => return Err(syntax("malformed or repeated `p cnf` header", span)),
                },
                _ => return Err(syntax("expected `p cnf VARS CLAUSES`", span)),
            }
            skip_line = Some(span.line);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(syntax("clause before `p cnf` header", span));
        };
        let lit: i64 = tok.parse().map_err(|_| syntax(format!("invalid literal `{tok}`"), span))?;
        if lit == 0 {
            if current.is_empty() {
                return Err(syntax("empty clause", span));
            }
            clauses.push(std::mem::take(&mut current));
        } else if lit.unsigned_abs() as usize > vars {
            return Err(syntax(format!("literal {lit} exceeds {vars} variables"), span));
        } else {
            current.push(lit as i32);
        }
    }
    let Some((vars, count)) = header else {
        return Err(syntax("missing `p cnf` header", SourceSpan { end: text.len(), ..Default::default() }));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        let end = SourceSpan { start: text.len(), end: text.len(), line: text.lines().count().max(1), column: 1 };
        return Err(syntax(format!("header announces {count} clauses, found {}", clauses.len()), end));
    }
    Ok(CnfFormula::new(vars, clauses))
}

pub fn parse_sets(text: &str) -> Result<ExactCoverInstance> {
    let mut universe: Option<Vec<String>> = None;
    let mut sets: Vec<Vec<String>> = Vec::new();
    for (line_no, raw) in text.split_inclusive('\n').enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<String> = line.split_whitespace().map(str::to_owned).collect();
        if words.is_empty() {
            continue;
        }
        if words[0] == "universe" {
            if universe.is_some() || !sets.is_empty() {
                return Err(syntax("`universe` must be the first line and appear once", line_span(text, line_no, raw)));
            }
            universe = Some(words[1..].to_vec());
        } else {
            sets.push(words);
        }
    }
    let universe = universe.unwrap_or_else(|| {
        let mut u: Vec<String> = Vec::new();
        for s in &sets {
            for x in s {
                if !u.contains(x) {
                    u.push(x.clone());
                }
            }
        }
        u
    });
    ExactCoverInstance::new(universe, sets)
        .map_err(|e| syntax(e, SourceSpan { end: text.len(), ..Default::default() }))
}

pub fn parse_edge_list(text: &str) -> Result<BipartiteGraph> {
    let mut size: Option<usize> = None;
    let mut edges = Vec::new();
    for (line_no, raw) in text.split_inclusive('\n').enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        let span = line_span(text, line_no, raw);
        match (words.as_slice(), size) {
            ([], _) => {}
            (["n", n], None) => size = Some(n.parse().map_err(|_| syntax("invalid size", span))?),
            ([i, j], Some(n)) => {
                let (i, j): (usize, usize) = match (i.parse(), j.parse()) {
                    (Ok(i), Ok(j)) if i < n && j < n => (i, j),
                    _ => return Err(syntax(format!("expected an edge `i j` with both below {n}"), span)),
                };
                edges.push((i, j));
            }
            (_, None) => return Err(syntax("expected `n SIZE` header", span)),
            _ => return Err(syntax("expected an edge `i j`", span)),
        }
    }
    let n = size.ok_or_else(|| syntax("missing `n SIZE` header", SourceSpan::default()))?;
    Ok(BipartiteGraph::new(n, n, edges))
}
