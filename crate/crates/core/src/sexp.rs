//! A minimal s-expression reader with line/column tracking, shared by the
//! proof-file parser. Atoms are unquoted runs of non-delimiter characters;
//! `;` starts a comment running to the end of the line.

use std::fmt;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// First failure while reading or validating input text. `expected` describes
/// what would have been acceptable at the position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at line {line}, column {col}: expected {expected}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub expected: String,
}

impl ParseError {
    pub fn at(pos: Pos, expected: impl Into<String>) -> ParseError {
        ParseError { line: pos.line, col: pos.col, expected: expected.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::Atom(..) => None,
            Sexp::List(items, _) => Some(items),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s, _) => f.write_str(s),
            Sexp::List(items, _) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Reader {
    chars: Vec<char>,
    at: usize,
    line: u32,
    col: u32,
}

impl Reader {
    fn new(text: &str) -> Reader {
        Reader { chars: text.chars().collect(), at: 0, line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += 1;
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
}

fn is_atom_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | ';')
}

fn read_form(r: &mut Reader) -> Result<Sexp, ParseError> {
    let pos = r.pos();
    match r.peek() {
        None => Err(ParseError::at(pos, "an atom or '('")),
        Some(')') => Err(ParseError::at(pos, "an atom or '(', found an extra ')'")),
        Some('(') => {
            r.bump();
            let mut items = Vec::new();
            loop {
                r.skip_trivia();
                match r.peek() {
                    None => {
                        return Err(ParseError::at(
                            r.pos(),
                            format!("')' closing the list opened at {pos}"),
                        ))
                    }
                    Some(')') => {
                        r.bump();
                        return Ok(Sexp::List(items, pos));
                    }
                    Some(_) => items.push(read_form(r)?),
                }
            }
        }
        Some(_) => {
            let mut s = String::new();
            while let Some(c) = r.peek() {
                if !is_atom_char(c) {
                    break;
                }
                s.push(c);
                r.bump();
            }
            Ok(Sexp::Atom(s, pos))
        }
    }
}

/// Reads every top-level form in `text`.
pub fn parse_many(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut r = Reader::new(text);
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.peek().is_none() {
            return Ok(out);
        }
        out.push(read_form(&mut r)?);
    }
}

/// End-of-input position, for "something is missing" diagnostics.
pub fn end_pos(text: &str) -> Pos {
    let mut r = Reader::new(text);
    while r.bump().is_some() {}
    r.pos()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_lists_carry_their_positions() {
        let forms = parse_many("(ab (cd) ef)\n gh").unwrap();
        assert_eq!(forms.len(), 2);
        let list = forms[0].list().unwrap();
        assert_eq!(list[0].atom(), Some("ab"));
        assert_eq!(list[0].pos(), Pos { line: 1, col: 2 });
        assert_eq!(list[1].pos(), Pos { line: 1, col: 5 });
        assert_eq!(forms[1].atom(), Some("gh"));
        assert_eq!(forms[1].pos(), Pos { line: 2, col: 2 });
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let forms = parse_many("; heading\n(a ; trailing\n b)\n").unwrap();
        assert_eq!(forms.len(), 1);
        let list = forms[0].list().unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[1].atom(), Some("b"));
    }

    #[test]
    fn a_missing_closing_paren_is_reported_at_the_end() {
        let err = parse_many("(a (b c)").unwrap_err();
        assert_eq!((err.line, err.col), (1, 9));
        assert!(err.expected.contains("')'"), "{}", err.expected);
        assert!(err.expected.contains("line 1, column 1"), "{}", err.expected);
    }

    #[test]
    fn an_extra_closing_paren_is_reported_where_it_sits() {
        let err = parse_many("(a)\n)").unwrap_err();
        assert_eq!((err.line, err.col), (2, 1));
        assert!(err.expected.contains("extra ')'"), "{}", err.expected);
    }

    #[test]
    fn display_prints_a_single_line_form() {
        let forms = parse_many("(a\n  (b   c)\n)").unwrap();
        assert_eq!(forms[0].to_string(), "(a (b c))");
    }

    #[test]
    fn atom_characters_include_digits_underscores_and_primes() {
        let forms = parse_many("x_1' 42").unwrap();
        assert_eq!(forms[0].atom(), Some("x_1'"));
        assert_eq!(forms[1].atom(), Some("42"));
    }
}
