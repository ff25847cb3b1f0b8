//! Tokens shared by the three text formats, and a cursor over them.
//!
//! Newlines are tokens because `.onto` files are line oriented; the other
//! formats skip them.

use std::sync::Arc;

use crate::span::{Diagnostic, Pos, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Sym(&'static str),
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

// longest first, so that `->` wins over `-`
const SYMBOLS: &[&str] = &[
    "==>", "<=", "->", ":=", "!=", "=", "!", "&", "|", "(", ")", "{", "}", ",", ".", "-", ":", ";",
];

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

pub fn tokenize(file: &str, text: &str) -> Result<Vec<Token>, Diagnostic> {
    let file: Arc<str> = Arc::from(file);
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let span = |l0, c0, l1, c1| SourceSpan { file: file.clone(), start: Pos { line: l0, col: c0 }, end: Pos { line: l1, col: c1 } };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            out.push(Token { tok: Tok::Newline, span: span(line, col, line, col + 1) });
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if is_ident_char(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let n = i - start;
            out.push(Token { tok: Tok::Ident(word), span: span(line, col, line, col + n) });
            col += n;
            continue;
        }
        let rest = &chars[i..];
        let sym = SYMBOLS.iter().find(|s| {
            let s: Vec<char> = s.chars().collect();
            rest.starts_with(&s)
        });
        match sym {
            Some(s) => {
                let n = s.chars().count();
                out.push(Token { tok: Tok::Sym(s), span: span(line, col, line, col + n) });
                i += n;
                col += n;
            }
            None => {
                return Err(Diagnostic::at(&span(line, col, line, col + 1), format!("unexpected character `{c}`")));
            }
        }
    }
    out.push(Token { tok: Tok::Eof, span: span(line, col, line, col) });
    Ok(out)
}

pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    /// Skip newline tokens transparently.
    pub free_form: bool,
}

impl Cursor {
    pub fn new(toks: Vec<Token>, free_form: bool) -> Self {
        let mut c = Cursor { toks, pos: 0, free_form };
        c.skip_ignored();
        c
    }

    fn skip_ignored(&mut self) {
        if self.free_form {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    /// The token after the next one, skipping newlines in free-form mode.
    pub fn peek2(&self) -> &Tok {
        let mut j = self.pos;
        if j + 1 < self.toks.len() {
            j += 1;
        }
        while self.free_form && self.toks[j].tok == Tok::Newline && j + 1 < self.toks.len() {
            j += 1;
        }
        &self.toks[j].tok
    }

    pub fn span(&self) -> &SourceSpan {
        &self.toks[self.pos].span
    }

    /// Span of the token just consumed.
    pub fn prev_span(&self) -> &SourceSpan {
        let mut j = self.pos.saturating_sub(1);
        while self.free_form && j > 0 && self.toks[j].tok == Tok::Newline {
            j -= 1;
        }
        &self.toks[j].span
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        self.skip_ignored();
        t
    }

    pub fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    pub fn at_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == k)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.at_sym(s);
        if hit {
            self.bump();
        }
        hit
    }

    pub fn eat_keyword(&mut self, k: &str) -> bool {
        let hit = self.at_keyword(k);
        if hit {
            self.bump();
        }
        hit
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<SourceSpan, Diagnostic> {
        if self.at_sym(s) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<(String, SourceSpan), Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(w) => Ok((w, self.bump().span)),
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn unexpected(&self, wanted: &str) -> Diagnostic {
        let found = match self.peek() {
            Tok::Ident(w) => format!("`{w}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Newline => String::from("end of line"),
            Tok::Eof => String::from("end of input"),
        };
        Diagnostic::at(self.span(), format!("expected {wanted}, found {found}"))
    }
}
