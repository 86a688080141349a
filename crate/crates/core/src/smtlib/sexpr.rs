use std::fmt;

use super::error::{ParseError, ParseErrorKind};
use super::lexer::{Pos, Token, TokenKind};

#[derive(Debug, Clone)]
pub enum SExpr {
    Atom(TokenKind, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            SExpr::Atom(TokenKind::Symbol(s), _) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            _ => None,
        }
    }

    /// Structural equality that ignores positions.
    pub fn same_shape(&self, other: &SExpr) -> bool {
        match (self, other) {
            (SExpr::Atom(a, _), SExpr::Atom(b, _)) => a == b,
            (SExpr::List(a, _), SExpr::List(b, _)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }

    /// Positions in left-to-right pre-order.
    pub fn positions(&self) -> Vec<Pos> {
        let mut out = Vec::new();
        fn walk(e: &SExpr, out: &mut Vec<Pos>) {
            out.push(e.pos());
            if let SExpr::List(items, _) = e {
                for i in items {
                    walk(i, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom(t, _) => write!(f, "{t}"),
            SExpr::List(items, _) => {
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

/// Groups tokens into top-level s-expressions.
pub fn parse_sexprs(tokens: &[Token]) -> Result<Vec<SExpr>, ParseError> {
    let mut stack: Vec<(Vec<SExpr>, Pos)> = Vec::new();
    let mut top = Vec::new();
    for tok in tokens {
        match &tok.kind {
            TokenKind::LParen => stack.push((Vec::new(), tok.pos)),
            TokenKind::RParen => {
                let (items, pos) = stack
                    .pop()
                    .ok_or_else(|| ParseError::new(ParseErrorKind::UnexpectedCloseParen, tok.pos))?;
                let e = SExpr::List(items, pos);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
            kind => {
                let e = SExpr::Atom(kind.clone(), tok.pos);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
        }
    }
    if let Some((_, pos)) = stack.pop() {
        return Err(ParseError::new(ParseErrorKind::UnexpectedEof, pos));
    }
    Ok(top)
}
