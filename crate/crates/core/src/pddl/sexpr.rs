//! Lisp-style reader for PDDL text.
//!
//! Produces a tree of [`Sexp`] nodes that remember where they started so the
//! grammar layer can report line/column diagnostics.

use std::fmt;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom { text: String, pos: Pos },
    List { items: Vec<Sexp>, pos: Pos },
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom { pos, .. } | Sexp::List { pos, .. } => *pos,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom { text, .. } => Some(text),
            Sexp::List { .. } => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List { items, .. } => Some(items),
            Sexp::Atom { .. } => None,
        }
    }

    /// Lowercased head symbol of a list, if it has one.
    pub fn head(&self) -> Option<String> {
        self.as_list().and_then(|items| items.first()).and_then(Sexp::as_atom).map(str::to_ascii_lowercase)
    }

    pub fn describe(&self) -> String {
        match self {
            Sexp::Atom { text, .. } => format!("`{text}`"),
            Sexp::List { items, .. } => match items.first().and_then(Sexp::as_atom) {
                Some(h) => format!("list `({h} ...)`"),
                None if items.is_empty() => "`()`".to_string(),
                None => "list".to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadError {
    pub pos: Pos,
    pub expected: String,
    pub found: String,
}

/// Reads exactly one top-level expression; trailing non-comment input is an error.
pub fn read_one(text: &str) -> Result<Sexp, ReadError> {
    let mut reader = Reader::new(text);
    reader.skip_trivia();
    let expr = reader.expr()?;
    reader.skip_trivia();
    if let Some(c) = reader.peek() {
        return Err(ReadError { pos: reader.pos(), expected: "end of input".into(), found: format!("`{c}`") });
    }
    Ok(expr)
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader { chars: text.chars().peekable(), line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
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

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expr(&mut self) -> Result<Sexp, ReadError> {
        let pos = self.pos();
        match self.peek() {
            None => Err(ReadError { pos, expected: "`(` or symbol".into(), found: "end of input".into() }),
            Some(')') => Err(ReadError { pos, expected: "`(` or symbol".into(), found: "`)`".into() }),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => {
                            return Err(ReadError {
                                pos: self.pos(),
                                expected: format!("`)` closing list opened at {pos}"),
                                found: "end of input".into(),
                            })
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List { items, pos });
                        }
                        Some(_) => items.push(self.expr()?),
                    }
                }
            }
            Some(_) => {
                let mut text = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom { text, pos })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_positions() {
        let e = read_one("; header\n(a (b c)\n  d)").unwrap();
        let items = e.as_list().unwrap();
        assert_eq!(e.pos(), Pos { line: 2, col: 1 });
        assert_eq!(items[0].as_atom(), Some("a"));
        assert_eq!(items[1].as_list().unwrap().len(), 2);
        assert_eq!(items[2].pos(), Pos { line: 3, col: 3 });
    }

    #[test]
    fn unclosed_list_reports_eof() {
        let err = read_one("(a (b c)").unwrap_err();
        assert_eq!(err.found, "end of input");
        assert!(err.expected.contains("1:1"));
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        let err = read_one("(a) b").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 5 });
    }

    #[test]
    fn stray_close_paren() {
        assert!(read_one(")").is_err());
    }
}
