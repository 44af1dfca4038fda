use std::fmt;

use crate::{Error, Result};

/// Location of a piece of input text. Offsets are bytes; line and column are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SexpKind {
    List(Vec<Sexp>),
    /// Bare token: identifiers, keywords, numbers.
    Atom(String),
    /// Double-quoted string with escapes resolved.
    Str(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sexp {
    pub kind: SexpKind,
    pub span: SourceSpan,
}

impl Sexp {
    pub fn as_list(&self) -> Option<&[Sexp]> {
        match &self.kind {
            SexpKind::List(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match &self.kind {
            SexpKind::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Head keyword of a list form, e.g. `node` in `(node "a")`.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }
}

pub(crate) fn syntax(message: impl Into<String>, span: SourceSpan) -> Error {
    Error::Syntax { message: message.into(), span }
}

struct Reader<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn here(&self) -> SourceSpan {
        SourceSpan { start: self.pos, end: self.pos, line: self.line, column: self.column }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
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

    fn close(&self, mut span: SourceSpan) -> SourceSpan {
        span.end = self.pos;
        span
    }

    fn read(&mut self) -> Result<Sexp> {
        self.skip_trivia();
        let start = self.here();
        match self.peek() {
            None => Err(syntax("unexpected end of input", start)),
            Some(')') => {
                self.bump();
                Err(syntax("unexpected `)`", self.close(start)))
            }
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => return Err(syntax("unclosed `(`", self.close(start))),
                        Some(')') => {
                            self.bump();
                            break;
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
                Ok(Sexp { kind: SexpKind::List(items), span: self.close(start) })
            }
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(syntax("unterminated string", self.close(start))),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            _ => return Err(syntax("invalid escape in string", self.close(start))),
                        },
                        Some(c) => s.push(c),
                    }
                }
                Ok(Sexp { kind: SexpKind::Str(s), span: self.close(start) })
            }
            Some(_) => {
                let from = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';') {
                        break;
                    }
                    self.bump();
                }
                Ok(Sexp { kind: SexpKind::Atom(self.text[from..self.pos].to_owned()), span: self.close(start) })
            }
        }
    }
}

/// Reads exactly one s-expression; anything but whitespace and comments after it is an error.
pub fn read_one(text: &str) -> Result<Sexp> {
    let mut r = Reader { text, pos: 0, line: 1, column: 1 };
    let form = r.read()?;
    r.skip_trivia();
    if r.pos < text.len() {
        let start = r.here();
        return Err(syntax("trailing input after the document", SourceSpan { end: text.len(), ..start }));
    }
    Ok(form)
}

/// Quotes a label for output.
pub fn quote(s: &str) -> String {
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
