//! DOT output for rendering, plus a reader for the subset this module writes.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut s = String::new();
    writeln!(s, "graph {} {{", quote_id(name)).unwrap();
    for v in 0..g.n() {
        match g.label(v) {
            Some(l) => writeln!(s, "  {v} [label={}];", quote(l)).unwrap(),
            None => writeln!(s, "  {v};").unwrap(),
        }
    }
    for &(u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn quote_id(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        s.to_string()
    } else {
        quote(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Str(String),
    Sym(char),
    Edge,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        format: "dot",
        offset,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'{' | b'}' | b'[' | b']' | b';' | b'=' | b',' => {
                out.push((i, Tok::Sym(c as char)));
                i += 1;
            }
            b'-' if b.get(i + 1) == Some(&b'-') => {
                out.push((i, Tok::Edge));
                i += 2;
            }
            b'"' => {
                let start = i;
                let mut s = String::new();
                i += 1;
                loop {
                    match b.get(i) {
                        None => return Err(err(start, "unterminated string")),
                        Some(b'"') => break,
                        Some(b'\\') if i + 1 < b.len() => {
                            s.push(b[i + 1] as char);
                            i += 2;
                        }
                        Some(_) => {
                            let ch = text[i..].chars().next().expect("in bounds");
                            s.push(ch);
                            i += ch.len_utf8();
                        }
                    }
                }
                i += 1;
                out.push((start, Tok::Str(s)));
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Word(text[start..i].to_string())));
            }
            _ => return Err(err(i, format!("unexpected character {:?}", c as char))),
        }
    }
    Ok(out)
}

/// Reads an undirected DOT graph whose nodes are named `0..n-1`.
///
/// Only node statements with an optional `label` attribute and `u -- v`
/// edge statements are understood.
pub fn from_dot(text: &str) -> Result<Graph> {
    let toks = tokenize(text)?;
    let mut it = toks.into_iter().peekable();
    let end = text.len();
    let mut next = |what: &str| {
        it.next()
            .ok_or_else(|| err(end, format!("expected {what}")))
    };
    match next("'graph'")? {
        (_, Tok::Word(w)) if w == "graph" => {}
        (o, _) => return Err(err(o, "expected 'graph'")),
    }
    let mut tok = next("'{'")?;
    if matches!(tok.1, Tok::Word(_) | Tok::Str(_)) {
        tok = next("'{'")?;
    }
    if tok.1 != Tok::Sym('{') {
        return Err(err(tok.0, "expected '{'"));
    }
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut edges = Vec::new();
    let node_id = |(o, t): (usize, Tok)| -> Result<usize> {
        match t {
            Tok::Word(w) | Tok::Str(w) => w
                .parse()
                .map_err(|_| err(o, format!("node id {w:?} is not an integer"))),
            _ => Err(err(o, "expected node id")),
        }
    };
    loop {
        let tok = next("statement or '}'")?;
        if tok.1 == Tok::Sym('}') {
            break;
        }
        let u = node_id(tok)?;
        if labels.len() <= u {
            labels.resize(u + 1, None);
        }
        let tok = next("';'")?;
        match tok.1 {
            Tok::Edge => {
                let v = node_id(next("node id")?)?;
                if labels.len() <= v {
                    labels.resize(v + 1, None);
                }
                edges.push((u, v));
                let t = next("';'")?;
                if t.1 != Tok::Sym(';') {
                    return Err(err(t.0, "expected ';'"));
                }
            }
            Tok::Sym('[') => {
                loop {
                    let (o, key) = next("attribute")?;
                    if key == Tok::Sym(']') {
                        break;
                    }
                    let t = next("'='")?;
                    if t.1 != Tok::Sym('=') {
                        return Err(err(t.0, "expected '='"));
                    }
                    let (vo, val) = next("attribute value")?;
                    let val = match val {
                        Tok::Word(s) | Tok::Str(s) => s,
                        _ => return Err(err(vo, "expected attribute value")),
                    };
                    match key {
                        Tok::Word(k) if k == "label" => labels[u] = Some(val),
                        Tok::Word(_) => {}
                        _ => return Err(err(o, "expected attribute name")),
                    }
                    let (so, sep) = next("',' or ']'")?;
                    match sep {
                        Tok::Sym(',') => {}
                        Tok::Sym(']') => break,
                        _ => return Err(err(so, "expected ',' or ']'")),
                    }
                }
                let t = next("';'")?;
                if t.1 != Tok::Sym(';') {
                    return Err(err(t.0, "expected ';'"));
                }
            }
            Tok::Sym(';') => {}
            _ => return Err(err(tok.0, "expected '--', '[' or ';'")),
        }
    }
    if let Some((o, _)) = it.next() {
        return Err(err(o, "trailing input after '}'"));
    }
    let n = labels.len();
    let g = Graph::new(n, edges)?;
    if labels.iter().all(Option::is_some) && n > 0 {
        g.with_labels(labels.into_iter().map(Option::unwrap).collect())
    } else {
        Ok(g)
    }
}
