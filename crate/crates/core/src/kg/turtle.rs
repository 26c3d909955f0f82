//! Turtle subset: prefix declarations, IRIs, prefixed names, plain, typed and
//! integer literals, `a`, and `;`/`,` lists. No blank nodes or collections.

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use super::graph::Graph;
use super::term::{escape_literal, Iri, Term, Triple, OWL_NS, PLAN_NS, RDFS_NS, RDF_NS, XSD_NS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("turtle syntax error at {line}:{col}: {message}")]
pub struct TurtleError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

const PREFIXES: [(&str, &str); 5] = [("plan", PLAN_NS), ("rdf", RDF_NS), ("rdfs", RDFS_NS), ("owl", OWL_NS), ("xsd", XSD_NS)];

fn is_local_safe(local: &str) -> bool {
    !local.is_empty() && !local.starts_with('-') && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn render_iri(i: &Iri) -> String {
    for (p, ns) in PREFIXES {
        if let Some(local) = i.as_str().strip_prefix(ns) {
            if is_local_safe(local) {
                return format!("{p}:{local}");
            }
        }
    }
    format!("<{}>", i.as_str())
}

fn render_term(t: &Term) -> String {
    match t {
        Term::Iri(i) => render_iri(i),
        Term::Literal { lexical, datatype } if datatype.as_str() == format!("{XSD_NS}string") => {
            format!("\"{}\"", escape_literal(lexical))
        }
        Term::Literal { lexical, datatype } => format!("\"{}\"^^{}", escape_literal(lexical), render_iri(datatype)),
        Term::Var(v) => format!("?{v}"),
    }
}

/// Sorted, one triple per line, prefixed names where possible.
pub fn export_turtle(g: &Graph) -> String {
    let mut out = String::new();
    for (p, ns) in PREFIXES {
        let _ = writeln!(out, "@prefix {p}: <{ns}> .");
    }
    let mut first = true;
    let mut last_subject: Option<&Iri> = None;
    for t in g.iter() {
        if first || last_subject != Some(&t.subject) {
            out.push('\n');
            first = false;
        }
        last_subject = Some(&t.subject);
        let _ = writeln!(out, "{} {} {} .", render_iri(&t.subject), render_iri(&t.predicate), render_term(&t.object));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Iri(String),
    Pname(String, String),
    Str(String),
    Caret,
    Int(String),
    Dot,
    Semi,
    Comma,
    A,
    PrefixKw,
    SparqlPrefix,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, message: impl Into<String>) -> TurtleError {
        TurtleError { line: self.line, col: self.col, message: message.into() }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<Option<(Tok, usize, usize)>, TurtleError> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        let tok = match c {
            '<' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('>') => break,
                        Some(c) if c.is_whitespace() => return Err(self.err("whitespace inside IRI")),
                        Some(c) => s.push(c),
                        None => return Err(self.err("unterminated IRI")),
                    }
                }
                Tok::Iri(s)
            }
            '"' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some('n') => s.push('\n'),
                            Some('r') => s.push('\r'),
                            Some('t') => s.push('\t'),
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            _ => return Err(self.err("bad escape in string")),
                        },
                        Some('\n') | None => return Err(self.err("unterminated string")),
                        Some(c) => s.push(c),
                    }
                }
                if self.chars.peek() == Some(&'@') {
                    return Err(self.err("language tags are not supported"));
                }
                Tok::Str(s)
            }
            '^' => {
                self.bump();
                if self.bump() != Some('^') {
                    return Err(self.err("expected '^^'"));
                }
                Tok::Caret
            }
            '.' => {
                self.bump();
                Tok::Dot
            }
            ';' => {
                self.bump();
                Tok::Semi
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '@' => {
                self.bump();
                let kw = self.word();
                if kw != "prefix" {
                    return Err(TurtleError { line, col, message: format!("unsupported directive @{kw}") });
                }
                Tok::PrefixKw
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' => {
                let mut s = String::new();
                s.push(c);
                self.bump();
                while let Some(&d) = self.chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if !s.chars().any(|c| c.is_ascii_digit()) {
                    return Err(TurtleError { line, col, message: format!("unexpected '{s}'") });
                }
                Tok::Int(s)
            }
            c if c.is_alphabetic() || c == ':' || c == '_' => {
                let prefix = self.word();
                if self.chars.peek() == Some(&':') {
                    self.bump();
                    let local = self.local();
                    Tok::Pname(prefix, local)
                } else if prefix == "a" {
                    Tok::A
                } else if prefix.eq_ignore_ascii_case("prefix") {
                    Tok::SparqlPrefix
                } else {
                    return Err(TurtleError { line, col, message: format!("unexpected word '{prefix}'") });
                }
            }
            other => return Err(self.err(format!("unexpected character '{other}'"))),
        };
        Ok(Some((tok, line, col)))
    }

    fn word(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    /// Local part of a prefixed name. Dots are allowed inside but not at the
    /// end, so `plan:x.` lexes as `plan:x` followed by the statement dot.
    fn local(&mut self) -> String {
        let mut s = String::new();
        loop {
            match self.chars.peek() {
                Some(&c) if c.is_alphanumeric() || c == '_' || c == '-' => {
                    s.push(c);
                    self.bump();
                }
                Some(&'.') => {
                    let mut look = self.chars.clone();
                    look.next();
                    match look.peek() {
                        Some(&c) if c.is_alphanumeric() || c == '_' || c == '-' => {
                            s.push('.');
                            self.bump();
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        s
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, usize, usize)>,
    prefixes: BTreeMap<String, String>,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<Option<&(Tok, usize, usize)>, TurtleError> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next()?;
        }
        Ok(self.peeked.as_ref())
    }

    fn take(&mut self) -> Result<Option<(Tok, usize, usize)>, TurtleError> {
        self.peek()?;
        Ok(self.peeked.take())
    }

    fn expect_some(&mut self, what: &str) -> Result<(Tok, usize, usize), TurtleError> {
        match self.take()? {
            Some(t) => Ok(t),
            None => Err(TurtleError {
                line: self.lexer.line,
                col: self.lexer.col,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn iri_from(&self, tok: Tok, line: usize, col: usize, what: &str) -> Result<Iri, TurtleError> {
        let err = |message: String| TurtleError { line, col, message };
        match tok {
            Tok::Iri(s) => Iri::new(s.clone()).ok_or_else(|| err(format!("invalid IRI <{s}>"))),
            Tok::Pname(p, l) => {
                let ns = self.prefixes.get(&p).ok_or_else(|| err(format!("undeclared prefix '{p}:'")))?;
                Iri::new(format!("{ns}{l}")).ok_or_else(|| err(format!("invalid IRI {p}:{l}")))
            }
            Tok::A if what == "predicate" => Ok(Iri::rdf("type")),
            other => Err(err(format!("expected {what}, found {other:?}"))),
        }
    }

    fn object(&mut self) -> Result<Term, TurtleError> {
        let (tok, line, col) = self.expect_some("object")?;
        match tok {
            Tok::Str(s) => {
                if matches!(self.peek()?, Some((Tok::Caret, _, _))) {
                    self.take()?;
                    let (t, l, c) = self.expect_some("datatype")?;
                    let dt = self.iri_from(t, l, c, "datatype IRI")?;
                    Ok(Term::typed(s, dt))
                } else {
                    Ok(Term::string(s))
                }
            }
            Tok::Int(s) => Ok(Term::typed(s.trim_start_matches('+'), Iri::xsd("integer"))),
            other => Ok(Term::Iri(self.iri_from(other, line, col, "object")?)),
        }
    }

    fn expect_dot(&mut self) -> Result<(), TurtleError> {
        match self.expect_some("'.'")? {
            (Tok::Dot, _, _) => Ok(()),
            (other, line, col) => Err(TurtleError { line, col, message: format!("expected '.', found {other:?}") }),
        }
    }

    fn prefix_decl(&mut self, needs_dot: bool) -> Result<(), TurtleError> {
        let (tok, line, col) = self.expect_some("prefix name")?;
        let Tok::Pname(p, l) = tok else {
            return Err(TurtleError { line, col, message: "expected 'name:' after prefix".into() });
        };
        if !l.is_empty() {
            return Err(TurtleError { line, col, message: "prefix name must end with ':'".into() });
        }
        let (tok, line, col) = self.expect_some("namespace IRI")?;
        let Tok::Iri(ns) = tok else {
            return Err(TurtleError { line, col, message: "expected namespace IRI".into() });
        };
        self.prefixes.insert(p, ns);
        if needs_dot {
            self.expect_dot()?;
        }
        Ok(())
    }

    fn parse(mut self) -> Result<Graph, TurtleError> {
        let mut g = Graph::new();
        while let Some((tok, line, col)) = self.take()? {
            match tok {
                Tok::PrefixKw => self.prefix_decl(true)?,
                Tok::SparqlPrefix => self.prefix_decl(false)?,
                tok => {
                    let subject = self.iri_from(tok, line, col, "subject")?;
                    loop {
                        let (pt, pl, pc) = self.expect_some("predicate")?;
                        let predicate = self.iri_from(pt, pl, pc, "predicate")?;
                        loop {
                            let object = self.object()?;
                            g.insert(Triple::new(subject.clone(), predicate.clone(), object))
                                .expect("parser never yields variables");
                            if matches!(self.peek()?, Some((Tok::Comma, _, _))) {
                                self.take()?;
                            } else {
                                break;
                            }
                        }
                        if matches!(self.peek()?, Some((Tok::Semi, _, _))) {
                            self.take()?;
                            if matches!(self.peek()?, Some((Tok::Dot, _, _))) {
                                break;
                            }
                        } else {
                            break;
                        }
                    }
                    self.expect_dot()?;
                }
            }
        }
        Ok(g)
    }
}

pub fn import_turtle(text: &str) -> Result<Graph, TurtleError> {
    let lexer = Lexer { chars: text.chars().peekable(), line: 1, col: 1 };
    Parser { lexer, peeked: None, prefixes: BTreeMap::new() }.parse()
}
