use std::collections::HashMap;

use super::error::{ParseError, ParseErrorKind as K};
use super::lexer::{tokenize, Pos, Token, TokenKind};
use super::sexpr::{parse_sexprs, SExpr};
use super::term::{MacroId, Op, Sort, TermId, TermKind, TermStore, VarId};
use crate::float::{FpFormat, FpValue, RoundingMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub sort: Sort,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacroDef {
    pub name: String,
    pub sort: Sort,
    pub body: TermId,
}

/// A parsed script: declarations, zero-arity macros and assertions over one
/// shared term DAG.
#[derive(Debug, Clone, Default)]
pub struct ModelM0 {
    pub logic: Option<String>,
    pub terms: TermStore,
    pub vars: Vec<VarDecl>,
    pub macros: Vec<MacroDef>,
    pub assertions: Vec<TermId>,
}

impl ModelM0 {
    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .map(|i| VarId(i as u32))
    }

    pub fn macro_def(&self, id: MacroId) -> &MacroDef {
        &self.macros[id.0 as usize]
    }
}

/// Tokenizes and parses a whole script.
pub fn parse_str(input: &str) -> Result<ModelM0, ParseError> {
    parse_script(&tokenize(input)?)
}

pub fn parse_script(tokens: &[Token]) -> Result<ModelM0, ParseError> {
    let exprs = parse_sexprs(tokens)?;
    let mut p = Parser::default();
    for e in &exprs {
        if !p.command(e)? {
            break;
        }
    }
    Ok(p.model)
}

/// Builds the value of `(fp s e m)` in `fmt`.
pub fn parse_fp_literal(sign: &str, exp: &str, mant: &str, fmt: FpFormat) -> Result<FpValue, K> {
    if sign.len() != 1 || exp.len() != fmt.ebits() as usize || mant.len() != fmt.frac_bits() as usize {
        return Err(K::WidthMismatch(format!(
            "widths {}/{}/{} for {fmt}",
            sign.len(),
            exp.len(),
            mant.len()
        )));
    }
    let bits = |s: &str| u64::from_str_radix(s, 2).map_err(|_| K::MalformedLiteral(s.to_string()));
    let frac = if mant.is_empty() { 0 } else { bits(mant)? };
    Ok(FpValue::from_fields(fmt, bits(sign)? == 1, bits(exp)?, frac))
}

#[derive(Debug, Clone, Copy)]
enum Binding {
    Var(VarId),
    Macro(MacroId),
}

#[derive(Default)]
struct Parser {
    model: ModelM0,
    globals: HashMap<String, Binding>,
    lets: Vec<HashMap<String, TermId>>,
}

fn err<T>(kind: K, pos: Pos) -> Result<T, ParseError> {
    Err(ParseError::new(kind, pos))
}

fn symbol_at(items: &[SExpr], i: usize, what: &str, pos: Pos) -> Result<String, ParseError> {
    match items.get(i).and_then(|e| e.as_symbol()) {
        Some(s) => Ok(s.to_string()),
        None => err(K::Malformed(what.to_string()), items.get(i).map_or(pos, |e| e.pos())),
    }
}

fn numeral(e: &SExpr) -> Option<u32> {
    match e {
        SExpr::Atom(TokenKind::Numeral(n), _) => n.parse().ok(),
        _ => None,
    }
}

/// Binary digits of a `#b` or `#x` literal.
fn bit_string(e: &SExpr) -> Option<String> {
    match e {
        SExpr::Atom(TokenKind::Binary(b), _) => Some(b.clone()),
        SExpr::Atom(TokenKind::Hex(h), _) => Some(
            h.chars()
                .map(|c| format!("{:04b}", c.to_digit(16).unwrap()))
                .collect(),
        ),
        _ => None,
    }
}

impl Parser {
    /// Handles one command; returns false after `(exit)`.
    fn command(&mut self, e: &SExpr) -> Result<bool, ParseError> {
        let pos = e.pos();
        let Some(items) = e.as_list() else {
            return err(K::Malformed("command".into()), pos);
        };
        let name = symbol_at(items, 0, "command", pos)?;
        match name.as_str() {
            "set-logic" => {
                let logic = symbol_at(items, 1, "set-logic", pos)?;
                if logic != "QF_FP" {
                    return err(K::UnsupportedLogic(logic), items[1].pos());
                }
                self.model.logic = Some(logic);
            }
            "set-info" | "set-option" => {}
            "declare-fun" => {
                if items.len() != 4 {
                    return err(K::Malformed("declare-fun".into()), pos);
                }
                match items[2].as_list() {
                    Some([]) => {}
                    Some(_) => return err(K::ArityError("functions with parameters are unsupported".into()), items[2].pos()),
                    None => return err(K::Malformed("declare-fun".into()), items[2].pos()),
                }
                let name = symbol_at(items, 1, "declare-fun", pos)?;
                self.declare(name, &items[3], items[1].pos())?;
            }
            "declare-const" => {
                if items.len() != 3 {
                    return err(K::Malformed("declare-const".into()), pos);
                }
                let name = symbol_at(items, 1, "declare-const", pos)?;
                self.declare(name, &items[2], items[1].pos())?;
            }
            "define-fun" => {
                if items.len() != 5 {
                    return err(K::Malformed("define-fun".into()), pos);
                }
                match items[2].as_list() {
                    Some([]) => {}
                    Some(_) => return err(K::ArityError("macros with parameters are unsupported".into()), items[2].pos()),
                    None => return err(K::Malformed("define-fun".into()), items[2].pos()),
                }
                let name = symbol_at(items, 1, "define-fun", pos)?;
                let sort = self.sort(&items[3])?;
                let body = self.term(&items[4])?;
                let body_sort = self.model.terms.sort(body);
                if body_sort != sort {
                    return err(K::SortError(format!("{name} declared {sort} but body is {body_sort}")), items[4].pos());
                }
                if self.globals.contains_key(&name) {
                    return err(K::DuplicateSymbol(name), items[1].pos());
                }
                let id = MacroId(self.model.macros.len() as u32);
                self.model.macros.push(MacroDef { name: name.clone(), sort, body });
                self.globals.insert(name, Binding::Macro(id));
            }
            "assert" => {
                if items.len() != 2 {
                    return err(K::Malformed("assert".into()), pos);
                }
                let t = self.term(&items[1])?;
                if self.model.terms.sort(t) != Sort::Bool {
                    return err(K::SortError("assertion is not Bool".into()), items[1].pos());
                }
                self.model.assertions.push(t);
            }
            "check-sat" => {}
            "exit" => return Ok(false),
            other => return err(K::UnsupportedCommand(other.to_string()), pos),
        }
        Ok(true)
    }

    fn declare(&mut self, name: String, sort: &SExpr, pos: Pos) -> Result<(), ParseError> {
        let sort_v = self.sort(sort)?;
        if sort_v == Sort::RoundingMode {
            return err(K::SortError("rounding-mode variables are unsupported".into()), sort.pos());
        }
        if self.globals.contains_key(&name) {
            return err(K::DuplicateSymbol(name), pos);
        }
        let id = VarId(self.model.vars.len() as u32);
        self.model.vars.push(VarDecl { name: name.clone(), sort: sort_v });
        self.globals.insert(name, Binding::Var(id));
        Ok(())
    }

    fn sort(&self, e: &SExpr) -> Result<Sort, ParseError> {
        let pos = e.pos();
        let fmt = |eb: u32, sb: u32| {
            FpFormat::new(eb, sb)
                .map(Sort::Fp)
                .map_err(|x| ParseError::new(K::SortError(x.to_string()), pos))
        };
        match e {
            SExpr::Atom(TokenKind::Symbol(s), _) => match s.as_str() {
                "Bool" => Ok(Sort::Bool),
                "RoundingMode" => Ok(Sort::RoundingMode),
                "Float16" => Ok(Sort::Fp(FpFormat::BINARY16)),
                "Float32" => Ok(Sort::Fp(FpFormat::BINARY32)),
                "Float64" => Ok(Sort::Fp(FpFormat::BINARY64)),
                other => err(K::SortError(format!("unsupported sort {other}")), pos),
            },
            SExpr::List(items, _) => {
                if items.len() == 4 && items[0].as_symbol() == Some("_") && items[1].as_symbol() == Some("FloatingPoint") {
                    if let (Some(eb), Some(sb)) = (numeral(&items[2]), numeral(&items[3])) {
                        return fmt(eb, sb);
                    }
                }
                err(K::SortError(format!("unsupported sort {e}")), pos)
            }
            _ => err(K::SortError(format!("unsupported sort {e}")), pos),
        }
    }

    fn lookup(&mut self, name: &str, pos: Pos) -> Result<TermId, ParseError> {
        for scope in self.lets.iter().rev() {
            if let Some(&t) = scope.get(name) {
                return Ok(t);
            }
        }
        match name {
            "true" => return Ok(self.model.terms.bool_lit(true)),
            "false" => return Ok(self.model.terms.bool_lit(false)),
            _ => {}
        }
        if let Some(m) = RoundingMode::from_smt_name(name) {
            return Ok(self.model.terms.rm_lit(m));
        }
        match self.globals.get(name) {
            Some(&Binding::Var(v)) => {
                let sort = self.model.vars[v.0 as usize].sort;
                Ok(self.model.terms.var(v, sort))
            }
            Some(&Binding::Macro(m)) => {
                let sort = self.model.macros[m.0 as usize].sort;
                Ok(self.model.terms.mk(TermKind::Macro(m), Vec::new(), sort))
            }
            None => err(K::UnboundSymbol(name.to_string()), pos),
        }
    }

    fn term(&mut self, e: &SExpr) -> Result<TermId, ParseError> {
        let pos = e.pos();
        let items = match e {
            SExpr::Atom(TokenKind::Symbol(s), _) => return self.lookup(s, pos),
            SExpr::Atom(tok, _) => return err(K::UnsupportedLiteral(tok.to_string()), pos),
            SExpr::List(items, _) => items,
        };
        let Some(head) = items.first() else {
            return err(K::Malformed("empty application".into()), pos);
        };
        if let Some(head_items) = head.as_list() {
            return self.indexed_application(head_items, &items[1..], pos);
        }
        let name = symbol_at(items, 0, "application", pos)?;
        let args = &items[1..];
        match name.as_str() {
            "_" => self.indexed_constant(items, pos),
            "fp" => self.fp_literal(args, pos),
            "let" => self.let_term(args, pos),
            "!" => match args.first() {
                Some(t) => self.term(t),
                None => err(K::Malformed("annotation".into()), pos),
            },
            _ => {
                let Some(op) = Op::from_smt_name(&name) else {
                    if self.globals.contains_key(&name) {
                        return err(K::ArityError(format!("{name} takes no arguments")), pos);
                    }
                    return err(K::UnsupportedOperator(name), head.pos());
                };
                let mut ts = Vec::with_capacity(args.len());
                for a in args {
                    ts.push(self.term(a)?);
                }
                self.apply(op, ts, pos)
            }
        }
    }

    fn let_term(&mut self, args: &[SExpr], pos: Pos) -> Result<TermId, ParseError> {
        let (Some(bindings), Some(body), 2) = (args.first().and_then(|b| b.as_list()), args.get(1), args.len()) else {
            return err(K::Malformed("let".into()), pos);
        };
        let mut scope = HashMap::new();
        for b in bindings {
            match b.as_list() {
                Some([SExpr::Atom(TokenKind::Symbol(name), _), value]) => {
                    let t = self.term(value)?;
                    scope.insert(name.clone(), t);
                }
                _ => return err(K::Malformed("let binding".into()), b.pos()),
            }
        }
        self.lets.push(scope);
        let r = self.term(body);
        self.lets.pop();
        r
    }

    fn indexed_constant(&mut self, items: &[SExpr], pos: Pos) -> Result<TermId, ParseError> {
        let name = symbol_at(items, 1, "indexed identifier", pos)?;
        let (Some(eb), Some(sb), 4) = (items.get(2).and_then(numeral), items.get(3).and_then(numeral), items.len()) else {
            return err(K::UnsupportedLiteral(format!("(_ {name} ...)")), pos);
        };
        let fmt = FpFormat::new(eb, sb).map_err(|x| ParseError::new(K::SortError(x.to_string()), pos))?;
        let v = match name.as_str() {
            "+oo" => FpValue::infinity(fmt, false),
            "-oo" => FpValue::infinity(fmt, true),
            "+zero" => FpValue::zero(fmt, false),
            "-zero" => FpValue::zero(fmt, true),
            "NaN" => FpValue::nan(fmt),
            _ => return err(K::UnsupportedLiteral(format!("(_ {name} {eb} {sb})")), pos),
        };
        Ok(self.model.terms.fp_lit(v))
    }

    fn fp_literal(&mut self, args: &[SExpr], pos: Pos) -> Result<TermId, ParseError> {
        let [s, e, m] = args else {
            return err(K::ArityError("fp takes three bit-strings".into()), pos);
        };
        let (Some(s), Some(e), Some(m)) = (bit_string(s), bit_string(e), bit_string(m)) else {
            return err(K::MalformedLiteral("fp arguments must be bit-strings".into()), pos);
        };
        let fmt = FpFormat::new(e.len() as u32, m.len() as u32 + 1)
            .map_err(|x| ParseError::new(K::WidthMismatch(x.to_string()), pos))?;
        let v = parse_fp_literal(&s, &e, &m, fmt).map_err(|k| ParseError::new(k, pos))?;
        Ok(self.model.terms.fp_lit(v))
    }

    /// `((_ to_fp e s) RM decimal)`
    fn indexed_application(&mut self, head: &[SExpr], args: &[SExpr], pos: Pos) -> Result<TermId, ParseError> {
        let is_to_fp = head.len() == 4 && head[0].as_symbol() == Some("_") && head[1].as_symbol() == Some("to_fp");
        if !is_to_fp {
            return err(K::UnsupportedOperator(SExpr::List(head.to_vec(), pos).to_string()), pos);
        }
        let (Some(eb), Some(sb)) = (numeral(&head[2]), numeral(&head[3])) else {
            return err(K::Malformed("to_fp indices".into()), pos);
        };
        let fmt = FpFormat::new(eb, sb).map_err(|x| ParseError::new(K::SortError(x.to_string()), pos))?;
        let [rm, lit] = args else {
            return err(K::UnsupportedLiteral("to_fp accepts only a rounding mode and a decimal".into()), pos);
        };
        let rm_t = self.term(rm)?;
        if self.model.terms.sort(rm_t) != Sort::RoundingMode {
            return err(K::SortError("to_fp expects a rounding mode".into()), rm.pos());
        }
        let (neg, text) = match lit {
            SExpr::Atom(TokenKind::Decimal(d) | TokenKind::Numeral(d), _) => (false, d.clone()),
            SExpr::List(l, _) => match l.as_slice() {
                [SExpr::Atom(TokenKind::Symbol(m), _), SExpr::Atom(TokenKind::Decimal(d) | TokenKind::Numeral(d), _)]
                    if m == "-" =>
                {
                    (true, d.clone())
                }
                _ => return err(K::UnsupportedLiteral(lit.to_string()), lit.pos()),
            },
            _ => return err(K::UnsupportedLiteral(lit.to_string()), lit.pos()),
        };
        match decimal_value(&text, neg, fmt) {
            Some(v) => Ok(self.model.terms.fp_lit(v)),
            None => err(K::UnsupportedLiteral(format!("{text} is not exactly representable in {fmt}")), lit.pos()),
        }
    }

    /// Sort-checks and builds an application, expanding chainable and
    /// n-ary forms into binary ones.
    fn apply(&mut self, op: Op, args: Vec<TermId>, pos: Pos) -> Result<TermId, ParseError> {
        let sorts: Vec<Sort> = args.iter().map(|&a| self.model.terms.sort(a)).collect();
        let arity = |n: usize| -> Result<(), ParseError> {
            if args.len() == n {
                Ok(())
            } else {
                err(K::ArityError(format!("{} expects {n} arguments, got {}", op.smt_name(), args.len())), pos)
            }
        };
        let same_fp = |ss: &[Sort]| -> Result<Sort, ParseError> {
            match ss.first() {
                Some(s @ Sort::Fp(_)) if ss.iter().all(|x| x == s) => Ok(*s),
                _ => err(K::SortError(format!("{} expects floating-point arguments of one format", op.smt_name())), pos),
            }
        };
        let t = &mut self.model.terms;
        match op {
            Op::FpAdd | Op::FpSub | Op::FpMul | Op::FpDiv => {
                arity(3)?;
                if sorts[0] != Sort::RoundingMode {
                    return err(K::SortError(format!("{} expects a rounding mode first", op.smt_name())), pos);
                }
                let s = same_fp(&sorts[1..])?;
                Ok(t.app(op, args, s))
            }
            Op::FpNeg | Op::FpAbs => {
                arity(1)?;
                let s = same_fp(&sorts)?;
                Ok(t.app(op, args, s))
            }
            Op::FpMin | Op::FpMax => {
                arity(2)?;
                let s = same_fp(&sorts)?;
                Ok(t.app(op, args, s))
            }
            Op::FpIsNaN | Op::FpIsInfinite | Op::FpIsZero => {
                arity(1)?;
                same_fp(&sorts)?;
                Ok(t.app(op, args, Sort::Bool))
            }
            Op::FpEq | Op::FpLt | Op::FpLeq | Op::FpGt | Op::FpGeq => {
                if args.len() < 2 {
                    return arity(2).map(|_| unreachable!());
                }
                same_fp(&sorts)?;
                let pairs: Vec<TermId> = args.windows(2).map(|w| t.app(op, w.to_vec(), Sort::Bool)).collect();
                Ok(conj(t, pairs))
            }
            Op::Eq | Op::Distinct => {
                if args.len() < 2 {
                    return arity(2).map(|_| unreachable!());
                }
                if sorts.iter().any(|s| *s != sorts[0]) {
                    return err(K::SortError(format!("{} arguments differ in sort", op.smt_name())), pos);
                }
                if sorts[0] == Sort::RoundingMode {
                    return err(K::SortError("comparisons of rounding modes are unsupported".into()), pos);
                }
                let pairs: Vec<TermId> = if op == Op::Eq {
                    args.windows(2).map(|w| t.app(op, w.to_vec(), Sort::Bool)).collect()
                } else {
                    let mut v = Vec::new();
                    for i in 0..args.len() {
                        for j in i + 1..args.len() {
                            v.push(t.app(op, vec![args[i], args[j]], Sort::Bool));
                        }
                    }
                    v
                };
                Ok(conj(t, pairs))
            }
            Op::And | Op::Or => {
                if sorts.iter().any(|s| *s != Sort::Bool) {
                    return err(K::SortError(format!("{} expects Bool arguments", op.smt_name())), pos);
                }
                match args.len() {
                    0 => Ok(t.bool_lit(op == Op::And)),
                    1 => Ok(args[0]),
                    _ => Ok(t.app(op, args, Sort::Bool)),
                }
            }
            Op::Not => {
                arity(1)?;
                if sorts[0] != Sort::Bool {
                    return err(K::SortError("not expects Bool".into()), pos);
                }
                Ok(t.app(op, args, Sort::Bool))
            }
            Op::Implies => {
                if args.len() < 2 {
                    return arity(2).map(|_| unreachable!());
                }
                if sorts.iter().any(|s| *s != Sort::Bool) {
                    return err(K::SortError("=> expects Bool arguments".into()), pos);
                }
                let mut acc = *args.last().unwrap();
                for &a in args[..args.len() - 1].iter().rev() {
                    acc = t.app(Op::Implies, vec![a, acc], Sort::Bool);
                }
                Ok(acc)
            }
            Op::Ite => {
                arity(3)?;
                if sorts[0] != Sort::Bool || sorts[1] != sorts[2] || sorts[1] == Sort::RoundingMode {
                    return err(K::SortError("ite expects Bool condition and matching branches".into()), pos);
                }
                Ok(t.app(op, args, sorts[1]))
            }
        }
    }
}

fn conj(t: &mut TermStore, mut parts: Vec<TermId>) -> TermId {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        t.app(Op::And, parts, Sort::Bool)
    }
}

/// Exact value of a decimal literal, if `fmt` represents it exactly.
fn decimal_value(text: &str, neg: bool, fmt: FpFormat) -> Option<FpValue> {
    use crate::float::exact::Exact;
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let frac = frac.trim_end_matches('0');
    let digits = format!("{int}{frac}");
    let mut n: u128 = digits.trim_start_matches('0').parse().unwrap_or(0);
    if n == 0 {
        return Some(FpValue::zero(fmt, neg));
    }
    // n / 10^k = (n / 5^k) * 2^-k, exact only when 5^k divides n
    let mut exp = -(frac.len() as i32);
    for _ in 0..frac.len() {
        if !n.is_multiple_of(5) {
            return None;
        }
        n /= 5;
    }
    while n.is_multiple_of(2) {
        n /= 2;
        exp += 1;
    }
    let mant = u64::try_from(n).ok()?;
    Exact::new(neg, mant, exp).round_exactly(fmt)
}
