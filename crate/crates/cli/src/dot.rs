//! DOT emission and a parser for the subset that is emitted.
//!
//! ```text
//! graph := "digraph" id "{" stmt* "}"
//! stmt  := id attrs? ";" | id "->" id attrs? ";"
//! attrs := "[" id "=" id ("," id "=" id)* "]"
//! id    := [A-Za-z0-9_.]+ | "-"digits | '"' chars '"'   (escapes \" \\ \n)
//! ```

use crate::error::{CliError, Result};

pub type Attrs = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotNode {
    pub id: String,
    pub attrs: Attrs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotEdge {
    pub from: String,
    pub to: String,
    pub attrs: Attrs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    pub name: String,
    pub nodes: Vec<DotNode>,
    pub edges: Vec<DotEdge>,
}

impl DotGraph {
    pub fn new(name: impl Into<String>) -> Self {
        DotGraph {
            name: name.into(),
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn node(&mut self, id: impl Into<String>, attrs: &[(&str, String)]) {
        self.nodes.push(DotNode {
            id: id.into(),
            attrs: owned(attrs),
        });
    }

    pub fn edge(&mut self, from: impl Into<String>, to: impl Into<String>, attrs: &[(&str, String)]) {
        self.edges.push(DotEdge {
            from: from.into(),
            to: to.into(),
            attrs: owned(attrs),
        });
    }

    pub fn attr<'a>(node: &'a DotNode, key: &str) -> Option<&'a str> {
        node.attrs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = format!("digraph {} {{\n", quote(&self.name));
        for n in &self.nodes {
            out.push_str(&format!("  {}{};\n", quote(&n.id), render_attrs(&n.attrs)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  {} -> {}{};\n",
                quote(&e.from),
                quote(&e.to),
                render_attrs(&e.attrs)
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn owned(attrs: &[(&str, String)]) -> Attrs {
    attrs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn render_attrs(attrs: &Attrs) -> String {
    if attrs.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = attrs.iter().map(|(k, v)| format!("{k}={}", quote(v))).collect();
    format!(" [{}]", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Arrow,
    Open,
    Close,
    OpenAttr,
    CloseAttr,
    Semi,
    Comma,
    Eq,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_bare(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut out = Vec::new();
    let mut k = 0;
    let advance = |c: char, line: &mut usize, column: &mut usize| {
        if c == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
    };
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        let single = match c {
            '{' => Some(Tok::Open),
            '}' => Some(Tok::Close),
            '[' => Some(Tok::OpenAttr),
            ']' => Some(Tok::CloseAttr),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l0, column: c0 });
            advance(c, &mut line, &mut column);
            k += 1;
        } else if c.is_whitespace() {
            advance(c, &mut line, &mut column);
            k += 1;
        } else if c == '-' && chars.get(k + 1) == Some(&'>') {
            out.push(Spanned { tok: Tok::Arrow, line: l0, column: c0 });
            column += 2;
            k += 2;
        } else if c == '"' {
            let mut s = String::new();
            advance(c, &mut line, &mut column);
            k += 1;
            loop {
                let Some(&d) = chars.get(k) else {
                    return Err(CliError::parse("dot", l0, c0, "unterminated string"));
                };
                advance(d, &mut line, &mut column);
                k += 1;
                match d {
                    '"' => break,
                    '\\' => {
                        let Some(&e) = chars.get(k) else {
                            return Err(CliError::parse("dot", l0, c0, "unterminated string"));
                        };
                        let (el, ec) = (line, column);
                        advance(e, &mut line, &mut column);
                        k += 1;
                        s.push(match e {
                            '"' => '"',
                            '\\' => '\\',
                            'n' => '\n',
                            other => {
                                return Err(CliError::parse("dot", el, ec, format!("unknown escape \\{other}")))
                            }
                        });
                    }
                    d => s.push(d),
                }
            }
            out.push(Spanned { tok: Tok::Id(s), line: l0, column: c0 });
        } else if is_bare(c) || (c == '-' && chars.get(k + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = k;
            k += 1;
            while k < chars.len() && is_bare(chars[k]) {
                k += 1;
            }
            column += k - start;
            out.push(Spanned {
                tok: Tok::Id(chars[start..k].iter().collect()),
                line: l0,
                column: c0,
            });
        } else {
            return Err(CliError::parse("dot", l0, c0, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn error(&self, message: impl Into<String>) -> CliError {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column));
        CliError::parse("dot", line, column, message)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn id(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Id(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn attrs(&mut self) -> Result<Attrs> {
        let mut out = Vec::new();
        if self.peek() != Some(&Tok::OpenAttr) {
            return Ok(out);
        }
        self.pos += 1;
        loop {
            let key = self.id("attribute name")?;
            self.expect(Tok::Eq, "'='")?;
            let value = self.id("attribute value")?;
            out.push((key, value));
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::CloseAttr) => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
    }
}

/// Parses the emitted DOT subset; errors carry line and column.
pub fn parse(text: &str) -> Result<DotGraph> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let end = (lines, text.lines().last().map_or(1, |l| l.chars().count() + 1));
    let mut p = Parser { toks, pos: 0, end };
    match p.peek() {
        Some(Tok::Id(s)) if s == "digraph" => p.pos += 1,
        _ => return Err(p.error("expected 'digraph'")),
    }
    let mut graph = DotGraph::new(p.id("graph name")?);
    p.expect(Tok::Open, "'{'")?;
    loop {
        if p.peek() == Some(&Tok::Close) {
            p.pos += 1;
            break;
        }
        let id = p.id("statement or '}'")?;
        if p.peek() == Some(&Tok::Arrow) {
            p.pos += 1;
            let to = p.id("edge target")?;
            let attrs = p.attrs()?;
            graph.edges.push(DotEdge { from: id, to, attrs });
        } else {
            let attrs = p.attrs()?;
            graph.nodes.push(DotNode { id, attrs });
        }
        p.expect(Tok::Semi, "';'")?;
    }
    if p.peek().is_some() {
        return Err(p.error("trailing input after '}'"));
    }
    Ok(graph)
}
