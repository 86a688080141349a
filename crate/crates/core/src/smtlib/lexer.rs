use std::fmt;

use super::error::{ParseError, ParseErrorKind};

/// Line and column, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    LParen,
    RParen,
    /// Simple or `|quoted|` symbol (quotes stripped).
    Symbol(String),
    Keyword(String),
    Numeral(String),
    Decimal(String),
    /// Digits of a `#b` literal.
    Binary(String),
    /// Digits of a `#x` literal.
    Hex(String),
    Str(String),
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::Symbol(s) => {
                if is_simple_symbol(s) {
                    f.write_str(s)
                } else {
                    write!(f, "|{s}|")
                }
            }
            TokenKind::Keyword(s) => write!(f, ":{s}"),
            TokenKind::Numeral(s) | TokenKind::Decimal(s) => f.write_str(s),
            TokenKind::Binary(s) => write!(f, "#b{s}"),
            TokenKind::Hex(s) => write!(f, "#x{s}"),
            TokenKind::Str(s) => write!(f, "\"{}\"", s.replace('"', "\"\"")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c)
}

pub(crate) fn is_simple_symbol(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(is_symbol_char)
        && !s.starts_with(|c: char| c.is_ascii_digit())
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }
}

/// Splits SMT-LIB text into tokens; `;` comments are dropped.
pub fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut cur = Cursor {
        chars: input.chars().peekable(),
        pos: Pos { line: 1, col: 1 },
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let pos = cur.pos;
        let kind = match c {
            c if c.is_whitespace() => {
                cur.bump();
                continue;
            }
            ';' => {
                cur.take_while(|c| c != '\n');
                continue;
            }
            '(' => {
                cur.bump();
                TokenKind::LParen
            }
            ')' => {
                cur.bump();
                TokenKind::RParen
            }
            '|' => {
                cur.bump();
                let s = cur.take_while(|c| c != '|' && c != '\\');
                match cur.bump() {
                    Some('|') => TokenKind::Symbol(s),
                    Some(_) => return Err(ParseError::new(ParseErrorKind::IllegalCharacter('\\'), pos)),
                    None => return Err(ParseError::new(ParseErrorKind::UnterminatedSymbol, pos)),
                }
            }
            '"' => {
                cur.bump();
                let mut s = String::new();
                loop {
                    match cur.bump() {
                        None => return Err(ParseError::new(ParseErrorKind::UnterminatedString, pos)),
                        Some('"') => {
                            if cur.peek() == Some('"') {
                                cur.bump();
                                s.push('"');
                            } else {
                                break;
                            }
                        }
                        Some(c) => s.push(c),
                    }
                }
                TokenKind::Str(s)
            }
            '#' => {
                cur.bump();
                match cur.bump() {
                    Some('b') => {
                        let digits = cur.take_while(|c| c == '0' || c == '1');
                        if digits.is_empty() {
                            return Err(ParseError::new(ParseErrorKind::MalformedLiteral("#b".into()), pos));
                        }
                        TokenKind::Binary(digits)
                    }
                    Some('x') => {
                        let digits = cur.take_while(|c| c.is_ascii_hexdigit());
                        if digits.is_empty() {
                            return Err(ParseError::new(ParseErrorKind::MalformedLiteral("#x".into()), pos));
                        }
                        TokenKind::Hex(digits)
                    }
                    other => {
                        return Err(ParseError::new(
                            ParseErrorKind::IllegalCharacter(other.unwrap_or('#')),
                            pos,
                        ))
                    }
                }
            }
            ':' => {
                cur.bump();
                let s = cur.take_while(is_symbol_char);
                if s.is_empty() {
                    return Err(ParseError::new(ParseErrorKind::IllegalCharacter(':'), pos));
                }
                TokenKind::Keyword(s)
            }
            c if c.is_ascii_digit() => {
                let int = cur.take_while(|c| c.is_ascii_digit());
                if cur.peek() == Some('.') {
                    cur.bump();
                    let frac = cur.take_while(|c| c.is_ascii_digit());
                    if frac.is_empty() {
                        return Err(ParseError::new(ParseErrorKind::MalformedLiteral(format!("{int}.")), pos));
                    }
                    TokenKind::Decimal(format!("{int}.{frac}"))
                } else {
                    TokenKind::Numeral(int)
                }
            }
            c if is_symbol_char(c) => TokenKind::Symbol(cur.take_while(is_symbol_char)),
            other => return Err(ParseError::new(ParseErrorKind::IllegalCharacter(other), pos)),
        };
        out.push(Token { kind, pos });
    }
    Ok(out)
}
