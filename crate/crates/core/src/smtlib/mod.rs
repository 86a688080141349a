//! SMT-LIB 2 frontend for the QF_FP subset.

mod error;
mod lexer;
mod parser;
mod printer;
mod sexpr;
mod term;

pub use error::{ParseError, ParseErrorKind};
pub use lexer::{tokenize, Pos, Token, TokenKind};
pub use parser::{parse_fp_literal, parse_script, parse_str, MacroDef, ModelM0, VarDecl};
pub use printer::{print_m0, quote_symbol, term_to_string};
pub use sexpr::{parse_sexprs, SExpr};
pub use term::{MacroId, Node, Op, Sort, TermId, TermKind, TermStore, VarId};
