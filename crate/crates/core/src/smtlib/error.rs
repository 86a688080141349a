use std::fmt;

use thiserror::Error;

use super::lexer::Pos;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("unterminated quoted symbol")]
    UnterminatedSymbol,
    #[error("illegal character {0:?}")]
    IllegalCharacter(char),
    #[error("malformed literal {0}")]
    MalformedLiteral(String),
    #[error("unexpected end of input")]
    UnexpectedEof,
    #[error("unexpected ')'")]
    UnexpectedCloseParen,
    #[error("malformed {0}")]
    Malformed(String),
    #[error("unsupported command {0}")]
    UnsupportedCommand(String),
    #[error("unsupported logic {0} (only QF_FP)")]
    UnsupportedLogic(String),
    #[error("unsupported operator {0}")]
    UnsupportedOperator(String),
    #[error("unsupported literal {0}")]
    UnsupportedLiteral(String),
    #[error("sort error: {0}")]
    SortError(String),
    #[error("arity error: {0}")]
    ArityError(String),
    #[error("unbound symbol {0}")]
    UnboundSymbol(String),
    #[error("symbol {0} already declared")]
    DuplicateSymbol(String),
    #[error("bit-string width mismatch: {0}")]
    WidthMismatch(String),
}

/// A frontend error with the position of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: Pos,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, pos: Pos) -> Self {
        ParseError { kind, pos }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.kind)
    }
}
