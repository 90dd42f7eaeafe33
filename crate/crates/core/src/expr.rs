//! A small prefix-notation arithmetic language over the naturals.
//!
//! ```text
//! EXPR := NAT | VAR | fn(EXPR, ...)
//! fn   := add | mul | monus | min | max | mod | eq | le | lt | ite
//! VAR  := x1 .. x9
//! ```
//!
//! Subtraction is truncated (`monus(3,5) = 0`), comparisons yield 0 or 1 and
//! `ite(c,a,b)` picks `a` when `c` is non-zero. `add`/`mul` saturate at
//! `u64::MAX` and `mod(x,0) = x`.
//!
//! Predicates over forcing conditions use the same grammar with the variables
//! replaced by `len`, `last` and `at(EXPR)`; see [`parse_predicate`].

use std::fmt;

use thiserror::Error;

/// Highest variable index accepted by the grammar (`x9`).
pub const MAX_VARS: usize = 9;

const MAX_DEPTH: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Mul,
    Monus,
    Min,
    Max,
    Mod,
    Eq,
    Le,
    Lt,
}

impl BinOp {
    fn name(self) -> &'static str {
        match self {
            BinOp::Add => "add",
            BinOp::Mul => "mul",
            BinOp::Monus => "monus",
            BinOp::Min => "min",
            BinOp::Max => "max",
            BinOp::Mod => "mod",
            BinOp::Eq => "eq",
            BinOp::Le => "le",
            BinOp::Lt => "lt",
        }
    }

    fn from_name(name: &str) -> Option<BinOp> {
        Some(match name {
            "add" => BinOp::Add,
            "mul" => BinOp::Mul,
            "monus" => BinOp::Monus,
            "min" => BinOp::Min,
            "max" => BinOp::Max,
            "mod" => BinOp::Mod,
            "eq" => BinOp::Eq,
            "le" => BinOp::Le,
            "lt" => BinOp::Lt,
            _ => return None,
        })
    }

    pub fn apply(self, a: u64, b: u64) -> u64 {
        match self {
            BinOp::Add => a.saturating_add(b),
            BinOp::Mul => a.saturating_mul(b),
            BinOp::Monus => a.saturating_sub(b),
            BinOp::Min => a.min(b),
            BinOp::Max => a.max(b),
            BinOp::Mod => {
                if b == 0 {
                    a
                } else {
                    a % b
                }
            }
            BinOp::Eq => (a == b) as u64,
            BinOp::Le => (a <= b) as u64,
            BinOp::Lt => (a < b) as u64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Nat(u64),
    /// Zero-based variable index: `x1` is `Var(0)`.
    Var(usize),
    /// Length of the condition (predicate mode only).
    Len,
    /// Last value of the condition, 0 when empty (predicate mode only).
    Last,
    /// Indexed value of the condition, 0 when out of range (predicate mode only).
    At(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Ite(Box<Expr>, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Vars,
    Predicate,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected}, found {found}")]
    UnexpectedToken { expected: &'static str, found: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{name}` takes {expected} arguments, got {got}")]
    WrongArgCount {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("number literal does not fit in 64 bits")]
    NumberOverflow,
    #[error("variable x{index} exceeds arity {arity}")]
    ArityOverflow { index: usize, arity: usize },
    #[error("expression nested too deeply")]
    TooDeep,
    #[error("trailing input")]
    TrailingInput,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable x{index} is unbound ({bound} values supplied)")]
    UnboundVariable { index: usize, bound: usize },
    #[error("condition atom used outside a predicate")]
    NotAPredicate,
    #[error("variable used inside a condition predicate")]
    VariableInPredicate,
}

#[derive(Clone, Copy)]
enum Env<'a> {
    Vars(&'a [u64]),
    Condition(&'a [u64]),
}

impl Expr {
    pub fn nat(v: u64) -> Expr {
        Expr::Nat(v)
    }

    /// `x{i}` with one-based `i`.
    pub fn var(i: usize) -> Expr {
        assert!(i >= 1, "variables are one-based");
        Expr::Var(i - 1)
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn ite(c: Expr, a: Expr, b: Expr) -> Expr {
        Expr::Ite(Box::new(c), Box::new(a), Box::new(b))
    }

    /// Evaluate with `vars[0]` bound to `x1`, `vars[1]` to `x2`, ...
    pub fn eval(&self, vars: &[u64]) -> Result<u64, EvalError> {
        self.eval_in(Env::Vars(vars))
    }

    /// Evaluate a predicate against the values of a condition.
    pub fn eval_condition(&self, values: &[u64]) -> Result<u64, EvalError> {
        self.eval_in(Env::Condition(values))
    }

    fn eval_in(&self, env: Env<'_>) -> Result<u64, EvalError> {
        match self {
            Expr::Nat(v) => Ok(*v),
            Expr::Var(i) => match env {
                Env::Vars(vars) => vars.get(*i).copied().ok_or(EvalError::UnboundVariable {
                    index: i + 1,
                    bound: vars.len(),
                }),
                Env::Condition(_) => Err(EvalError::VariableInPredicate),
            },
            Expr::Len => match env {
                Env::Condition(p) => Ok(p.len() as u64),
                Env::Vars(_) => Err(EvalError::NotAPredicate),
            },
            Expr::Last => match env {
                Env::Condition(p) => Ok(p.last().copied().unwrap_or(0)),
                Env::Vars(_) => Err(EvalError::NotAPredicate),
            },
            Expr::At(i) => match env {
                Env::Condition(p) => {
                    let i = i.eval_in(env)?;
                    Ok(usize::try_from(i)
                        .ok()
                        .and_then(|i| p.get(i).copied())
                        .unwrap_or(0))
                }
                Env::Vars(_) => Err(EvalError::NotAPredicate),
            },
            Expr::Bin(op, a, b) => Ok(op.apply(a.eval_in(env)?, b.eval_in(env)?)),
            Expr::Ite(c, a, b) => {
                if c.eval_in(env)? != 0 {
                    a.eval_in(env)
                } else {
                    b.eval_in(env)
                }
            }
        }
    }

    /// Number of variables the expression needs (largest one-based index used).
    pub fn var_count(&self) -> usize {
        match self {
            Expr::Nat(_) | Expr::Len | Expr::Last => 0,
            Expr::Var(i) => i + 1,
            Expr::At(e) => e.var_count(),
            Expr::Bin(_, a, b) => a.var_count().max(b.var_count()),
            Expr::Ite(c, a, b) => c.var_count().max(a.var_count()).max(b.var_count()),
        }
    }

    /// Replace `x{i+1}` by `args[i]` everywhere.
    ///
    /// Panics if the expression mentions a variable without a replacement.
    pub fn substitute(&self, args: &[Expr]) -> Expr {
        match self {
            Expr::Var(i) => args[*i].clone(),
            Expr::Nat(_) | Expr::Len | Expr::Last => self.clone(),
            Expr::At(e) => Expr::At(Box::new(e.substitute(args))),
            Expr::Bin(op, a, b) => Expr::bin(*op, a.substitute(args), b.substitute(args)),
            Expr::Ite(c, a, b) => {
                Expr::ite(c.substitute(args), a.substitute(args), b.substitute(args))
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Nat(v) => write!(f, "{v}"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Len => f.write_str("len"),
            Expr::Last => f.write_str("last"),
            Expr::At(e) => write!(f, "at({e})"),
            Expr::Bin(op, a, b) => write!(f, "{}({a},{b})", op.name()),
            Expr::Ite(c, a, b) => write!(f, "ite({c},{a},{b})"),
        }
    }
}

/// Parse a coloring expression; `x{i}` must satisfy `i <= arity`.
pub fn parse_expr(text: &str, arity: usize) -> Result<Expr, ParseError> {
    Parser::new(text, Mode::Vars, arity).parse_all()
}

/// Parse a condition predicate (atoms `len`, `last`, `at(EXPR)`, no variables).
pub fn parse_predicate(text: &str) -> Result<Expr, ParseError> {
    Parser::new(text, Mode::Predicate, 0).parse_all()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token<'a> {
    Ident(&'a str),
    Number(&'a str),
    Open,
    Close,
    Comma,
}

impl Token<'_> {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) | Token::Number(s) => format!("`{s}`"),
            Token::Open => "`(`".into(),
            Token::Close => "`)`".into(),
            Token::Comma => "`,`".into(),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    mode: Mode,
    arity: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, mode: Mode, arity: usize) -> Self {
        Parser {
            text,
            pos: 0,
            mode,
            arity,
        }
    }

    fn err<T>(&self, pos: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { pos, kind })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next token and its start offset without consuming it.
    fn peek(&mut self) -> Result<Option<(usize, Token<'a>, usize)>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(ch) = rest.chars().next() else {
            return Ok(None);
        };
        let (tok, len) = match ch {
            '(' => (Token::Open, 1),
            ')' => (Token::Close, 1),
            ',' => (Token::Comma, 1),
            c if c.is_ascii_digit() => {
                let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                (Token::Number(&rest[..len]), len)
            }
            c if c.is_ascii_alphabetic() => {
                let len = rest
                    .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
                    .unwrap_or(rest.len());
                (Token::Ident(&rest[..len]), len)
            }
            c => return self.err(start, ParseErrorKind::UnexpectedChar(c)),
        };
        Ok(Some((start, tok, start + len)))
    }

    fn next(&mut self) -> Result<(usize, Token<'a>), ParseError> {
        match self.peek()? {
            Some((start, tok, end)) => {
                self.pos = end;
                Ok((start, tok))
            }
            None => self.err(self.pos, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expect(&mut self, want: Token<'static>, expected: &'static str) -> Result<(), ParseError> {
        let (pos, tok) = self.next()?;
        if tok == want {
            Ok(())
        } else {
            self.err(
                pos,
                ParseErrorKind::UnexpectedToken {
                    expected,
                    found: tok.describe(),
                },
            )
        }
    }

    fn parse_all(mut self) -> Result<Expr, ParseError> {
        let e = self.parse(0)?;
        if let Some((pos, _, _)) = self.peek()? {
            return self.err(pos, ParseErrorKind::TrailingInput);
        }
        Ok(e)
    }

    fn parse_args(&mut self, depth: usize) -> Result<Vec<Expr>, ParseError> {
        self.expect(Token::Open, "`(`")?;
        let mut args = vec![self.parse(depth + 1)?];
        loop {
            let (pos, tok) = self.next()?;
            match tok {
                Token::Comma => args.push(self.parse(depth + 1)?),
                Token::Close => return Ok(args),
                other => {
                    return self.err(
                        pos,
                        ParseErrorKind::UnexpectedToken {
                            expected: "`,` or `)`",
                            found: other.describe(),
                        },
                    )
                }
            }
        }
    }

    fn parse(&mut self, depth: usize) -> Result<Expr, ParseError> {
        if depth > MAX_DEPTH {
            return self.err(self.pos, ParseErrorKind::TooDeep);
        }
        let (pos, tok) = self.next()?;
        match tok {
            Token::Number(digits) => digits
                .parse::<u64>()
                .map(Expr::Nat)
                .or_else(|_| self.err(pos, ParseErrorKind::NumberOverflow)),
            Token::Ident(name) => self.parse_ident(pos, name, depth),
            other => self.err(
                pos,
                ParseErrorKind::UnexpectedToken {
                    expected: "an expression",
                    found: other.describe(),
                },
            ),
        }
    }

    fn parse_ident(&mut self, pos: usize, name: &str, depth: usize) -> Result<Expr, ParseError> {
        let arg_count = |me: &Self, args: &[Expr], expected: usize| {
            if args.len() == expected {
                Ok(())
            } else {
                me.err(
                    pos,
                    ParseErrorKind::WrongArgCount {
                        name: name.to_string(),
                        expected,
                        got: args.len(),
                    },
                )
            }
        };
        if let Some(op) = BinOp::from_name(name) {
            let mut args = self.parse_args(depth)?;
            arg_count(self, &args, 2)?;
            let b = args.pop().unwrap();
            let a = args.pop().unwrap();
            return Ok(Expr::bin(op, a, b));
        }
        match (name, self.mode) {
            ("ite", _) => {
                let mut args = self.parse_args(depth)?;
                arg_count(self, &args, 3)?;
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                let c = args.pop().unwrap();
                Ok(Expr::ite(c, a, b))
            }
            ("len", Mode::Predicate) => Ok(Expr::Len),
            ("last", Mode::Predicate) => Ok(Expr::Last),
            ("at", Mode::Predicate) => {
                let mut args = self.parse_args(depth)?;
                arg_count(self, &args, 1)?;
                Ok(Expr::At(Box::new(args.pop().unwrap())))
            }
            (_, Mode::Vars) if is_var_name(name) => {
                let index: usize = name[1..].parse().unwrap();
                if index > self.arity {
                    return self.err(
                        pos,
                        ParseErrorKind::ArityOverflow {
                            index,
                            arity: self.arity,
                        },
                    );
                }
                Ok(Expr::Var(index - 1))
            }
            _ => {
                // Distinguish `foo(` (unknown function) from a bare unknown name.
                let is_call = matches!(self.peek()?, Some((_, Token::Open, _)));
                if is_call {
                    self.err(pos, ParseErrorKind::UnknownFunction(name.to_string()))
                } else {
                    self.err(pos, ParseErrorKind::UnknownVariable(name.to_string()))
                }
            }
        }
    }
}

fn is_var_name(name: &str) -> bool {
    let b = name.as_bytes();
    b.len() == 2 && b[0] == b'x' && (b'1'..=b'9').contains(&b[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_node() {
        let e = parse_expr("le(x1,x2)", 2).unwrap();
        assert_eq!(e, Expr::bin(BinOp::Le, Expr::var(1), Expr::var(2)));
        assert_eq!(e.eval(&[4, 3]).unwrap(), 0);
        assert_eq!(e.eval(&[3, 4]).unwrap(), 1);
    }

    #[test]
    fn monus_truncates() {
        let e = parse_expr("monus(x1, x2)", 2).unwrap();
        assert_eq!(e.eval(&[3, 5]).unwrap(), 0);
        assert_eq!(e.eval(&[5, 3]).unwrap(), 2);
    }

    #[test]
    fn ite_parity() {
        let e = parse_expr("ite(eq(mod(x1,2),0), 1, 0)", 1).unwrap();
        assert_eq!(e.eval(&[4]).unwrap(), 1);
        assert_eq!(e.eval(&[7]).unwrap(), 0);
    }

    #[test]
    fn mod_by_zero_and_saturation() {
        assert_eq!(parse_expr("mod(7,0)", 0).unwrap().eval(&[]).unwrap(), 7);
        let big = format!("mul({},3)", u64::MAX);
        assert_eq!(parse_expr(&big, 0).unwrap().eval(&[]).unwrap(), u64::MAX);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("add(x1,", 1).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse_expr("add(x1, x3)", 2).unwrap_err();
        assert_eq!(e.pos, 8);
        assert_eq!(e.kind, ParseErrorKind::ArityOverflow { index: 3, arity: 2 });
        let e = parse_expr("foo(1)", 1).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownFunction("foo".into()));
        let e = parse_expr("y", 1).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("y".into()));
        let e = parse_expr("add(1)", 1).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::WrongArgCount { .. }));
        let e = parse_expr("1 2", 0).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::TrailingInput);
        let e = parse_expr("99999999999999999999", 0).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NumberOverflow);
        let e = parse_expr("x0", 3).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("x0".into()));
    }

    #[test]
    fn display_round_trips() {
        for text in ["add(x1,2)", "ite(lt(x2,x1),monus(x1,x2),0)", "max(min(x1,3),mod(x2,4))"] {
            let e = parse_expr(text, 2).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(parse_expr(&e.to_string(), 2).unwrap(), e);
        }
    }

    #[test]
    fn predicates() {
        let p = parse_predicate("eq(mod(last,2),0)").unwrap();
        assert_eq!(p.eval_condition(&[1, 4]).unwrap(), 1);
        assert_eq!(p.eval_condition(&[1, 5]).unwrap(), 0);
        let p = parse_predicate("le(3,len)").unwrap();
        assert_eq!(p.eval_condition(&[0, 1, 2]).unwrap(), 1);
        let p = parse_predicate("at(5)").unwrap();
        assert_eq!(p.eval_condition(&[0, 1]).unwrap(), 0);
        assert!(parse_predicate("x1").is_err());
        assert!(parse_expr("len", 2).is_err());
    }

    #[test]
    fn deep_nesting_is_rejected_not_overflowed() {
        let text = "add(".repeat(2000) + "1" + &",1)".repeat(2000);
        assert_eq!(parse_expr(&text, 0).unwrap_err().kind, ParseErrorKind::TooDeep);
    }

    #[test]
    fn substitution() {
        let e = parse_expr("add(x1,x2)", 2).unwrap();
        let s = e.substitute(&[Expr::var(2), Expr::nat(5)]);
        assert_eq!(s.to_string(), "add(x2,5)");
    }
}
