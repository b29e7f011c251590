//! Text front end: ring declarations, polynomial expressions and job files.
//!
//! Ring declarations follow a small Singular-like syntax,
//! `ring 0 (x,y,z) ds`, where the ordering is one token (`dp`, `Dp`, `lp`,
//! `ds`, `ls`, `wp(w..)`, `ws(w..)`) or a block list such as
//! `(dp(2),ds(1))`, optionally followed by `:top` or `:pot` to pick the
//! module rule. Expressions require explicit `*`; `-x^2` is `-(x^2)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::{Field, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::ring::{BlockKind, ModuleRule, Monomial, OrderingSpec, Polynomial, Ring, RingContext};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number `{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str, first_line: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut column = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            let n = s.parse::<BigInt>().expect("digits parse");
            out.push(Spanned {
                tok: Tok::Num(n),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "+-*/^(),:=;".contains(c) {
            out.push(Spanned {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
            column += 1;
            i += 1;
            continue;
        }
        return Err(Error::Syntax {
            line: l0,
            column: c0,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str, first_line: usize) -> Result<Self> {
        Ok(Cursor {
            toks: tokenize(text, first_line)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.error(&t, format!("expected `{c}`, found {}", t.tok))
        }
    }

    fn expect_nat(&mut self) -> Result<(BigInt, Spanned)> {
        let t = self.next();
        match &t.tok {
            Tok::Num(n) => Ok((n.clone(), t.clone())),
            other => self.error(&t, format!("expected a number, found {other}")),
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Spanned)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => self.error(&t, format!("expected a name, found {other}")),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.is_sym(';') {
            self.next();
        }
        let t = self.peek().clone();
        if t.tok == Tok::Eof {
            Ok(())
        } else {
            self.error(&t, format!("unexpected {}", t.tok))
        }
    }
}

/// A parsed ring declaration, not yet bound to a coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDeclaration {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub ordering: OrderingSpec,
}

impl RingDeclaration {
    pub fn build<F: Field>(&self, field: F) -> Result<Ring<F>> {
        if field.characteristic() != self.characteristic as u64 {
            return Err(crate::coeff::CoeffError::MixedCharacteristic(
                field.characteristic(),
                self.characteristic as u64,
            )
            .into());
        }
        RingContext::new(field, self.variables.clone(), self.ordering.clone())
    }

    pub fn build_any(&self) -> Result<AnyRing> {
        if self.characteristic == 0 {
            Ok(AnyRing::Rational(self.build(Rationals)?))
        } else {
            Ok(AnyRing::Prime(self.build(PrimeField::new(self.characteristic)?)?))
        }
    }
}

/// A ring whose coefficient field is only known at runtime.
#[derive(Debug, Clone)]
pub enum AnyRing {
    Rational(Ring<Rationals>),
    Prime(Ring<PrimeField>),
}

impl AnyRing {
    pub fn characteristic(&self) -> u64 {
        match self {
            AnyRing::Rational(_) => 0,
            AnyRing::Prime(r) => r.characteristic(),
        }
    }
}

fn ordering_kind(name: &str, weights: Option<Vec<u32>>, at: &Spanned) -> Result<BlockKind> {
    let kind = match (name, weights) {
        ("dp", None) => BlockKind::DegRevLex,
        ("Dp", None) => BlockKind::DegLex,
        ("lp", None) => BlockKind::Lex,
        ("ds", None) => BlockKind::NegDegRevLex,
        ("ls", None) => BlockKind::NegDegLex,
        ("wp", Some(w)) => BlockKind::Weighted(w),
        ("ws", Some(w)) => BlockKind::NegWeighted(w),
        ("wp" | "ws", None) => {
            return Err(Error::Syntax {
                line: at.line,
                column: at.column,
                message: format!("`{name}` needs a weight vector"),
            })
        }
        _ => return Err(Error::UnknownOrderingToken(name.to_string())),
    };
    Ok(kind)
}

fn parse_u32_list(cur: &mut Cursor) -> Result<Vec<u32>> {
    cur.expect_sym('(')?;
    let mut out = Vec::new();
    loop {
        let (n, t) = cur.expect_nat()?;
        match n.to_u32() {
            Some(v) => out.push(v),
            None => return cur.error(&t, "number too large"),
        }
        if cur.is_sym(',') {
            cur.next();
        } else {
            break;
        }
    }
    cur.expect_sym(')')?;
    Ok(out)
}

fn parse_block(cur: &mut Cursor) -> Result<(BlockKind, Option<usize>)> {
    let (name, at) = cur.expect_ident()?;
    match name.as_str() {
        "wp" | "ws" => {
            let w = if cur.is_sym('(') {
                Some(parse_u32_list(cur)?)
            } else {
                None
            };
            let len = w.as_ref().map(Vec::len);
            Ok((ordering_kind(&name, w, &at)?, len))
        }
        _ => {
            let kind = ordering_kind(&name, None, &at)?;
            if cur.is_sym('(') {
                let n = parse_u32_list(cur)?;
                if n.len() != 1 {
                    return cur.error(&at, "block size must be a single number");
                }
                Ok((kind, Some(n[0] as usize)))
            } else {
                Ok((kind, None))
            }
        }
    }
}

fn parse_ordering(cur: &mut Cursor, nvars: usize) -> Result<OrderingSpec> {
    let start = cur.peek().clone();
    let mut raw = Vec::new();
    if cur.is_sym('(') {
        cur.next();
        loop {
            raw.push(parse_block(cur)?);
            if cur.is_sym(',') {
                cur.next();
            } else {
                break;
            }
        }
        cur.expect_sym(')')?;
    } else {
        raw.push(parse_block(cur)?);
    }
    let mut rule = ModuleRule::default();
    if cur.is_sym(':') {
        cur.next();
        let (r, at) = cur.expect_ident()?;
        rule = match r.as_str() {
            "top" => ModuleRule::TermOverPosition,
            "pot" => ModuleRule::PositionOverTerm,
            _ => return cur.error(&at, format!("unknown module rule `{r}`")),
        };
    }
    let mut blocks = Vec::new();
    let mut used = 0;
    let count = raw.len();
    for (i, (kind, len)) in raw.into_iter().enumerate() {
        let len = match len {
            Some(l) => l,
            None if i + 1 == count => nvars.saturating_sub(used),
            None => return cur.error(&start, "only the last block may omit its size"),
        };
        used += len;
        blocks.push((kind, len));
    }
    if used != nvars {
        return cur.error(&start, format!("ordering covers {used} variables, ring has {nvars}"));
    }
    OrderingSpec::new(blocks, rule)
}

fn parse_ring_at(text: &str, first_line: usize) -> Result<RingDeclaration> {
    let mut cur = Cursor::new(text, first_line)?;
    if cur.peek().tok == Tok::Ident("ring".into()) {
        cur.next();
    }
    let (ch, at) = cur.expect_nat()?;
    let characteristic = match ch.to_u32() {
        Some(c) if c == 0 || crate::coeff::is_prime(c as u64) => c,
        _ => return cur.error(&at, format!("characteristic {ch} is neither 0 nor a word-sized prime")),
    };
    cur.expect_sym('(')?;
    let mut variables: Vec<String> = Vec::new();
    loop {
        let (v, _) = cur.expect_ident()?;
        if variables.contains(&v) {
            return Err(Error::DuplicateVariable(v));
        }
        variables.push(v);
        if cur.is_sym(',') {
            cur.next();
        } else {
            break;
        }
    }
    cur.expect_sym(')')?;
    let ordering = parse_ordering(&mut cur, variables.len())?;
    cur.expect_end()?;
    Ok(RingDeclaration {
        characteristic,
        variables,
        ordering,
    })
}

/// Parses `[ring] <char> (<vars>) <ordering>`.
pub fn parse_ring_declaration(text: &str) -> Result<RingDeclaration> {
    parse_ring_at(text, 1)
}

pub fn parse_ring(text: &str) -> Result<AnyRing> {
    parse_ring_declaration(text)?.build_any()
}

/// Unevaluated polynomial expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Frac(BigInt, BigInt),
    Var { name: String, line: usize, column: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

fn parse_expr(cur: &mut Cursor) -> Result<Expr> {
    let mut lhs = parse_term(cur)?;
    loop {
        if cur.is_sym('+') {
            cur.next();
            lhs = Expr::Add(Box::new(lhs), Box::new(parse_term(cur)?));
        } else if cur.is_sym('-') {
            cur.next();
            lhs = Expr::Sub(Box::new(lhs), Box::new(parse_term(cur)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_term(cur: &mut Cursor) -> Result<Expr> {
    let mut lhs = parse_factor(cur)?;
    while cur.is_sym('*') {
        cur.next();
        lhs = Expr::Mul(Box::new(lhs), Box::new(parse_factor(cur)?));
    }
    Ok(lhs)
}

fn parse_factor(cur: &mut Cursor) -> Result<Expr> {
    if cur.is_sym('-') {
        cur.next();
        return Ok(Expr::Neg(Box::new(parse_factor(cur)?)));
    }
    let base = parse_base(cur)?;
    if cur.is_sym('^') {
        cur.next();
        let (n, _) = cur.expect_nat()?;
        let e = n
            .to_u32()
            .filter(|&e| e <= crate::ring::MAX_EXPONENT)
            .ok_or(Error::ExponentOverflow)?;
        return Ok(Expr::Pow(Box::new(base), e));
    }
    Ok(base)
}

fn parse_base(cur: &mut Cursor) -> Result<Expr> {
    let t = cur.next();
    match t.tok.clone() {
        Tok::Num(n) => {
            if cur.is_sym('/') {
                cur.next();
                let (d, _) = cur.expect_nat()?;
                Ok(Expr::Frac(n, d))
            } else {
                Ok(Expr::Int(n))
            }
        }
        Tok::Ident(name) => Ok(Expr::Var {
            name,
            line: t.line,
            column: t.column,
        }),
        Tok::Sym('(') => {
            let e = parse_expr(cur)?;
            cur.expect_sym(')')?;
            Ok(e)
        }
        other => cur.error(&t, format!("unexpected {other}")),
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    parse_expression_at(text, 1)
}

fn parse_expression_at(text: &str, first_line: usize) -> Result<Expr> {
    let mut cur = Cursor::new(text, first_line)?;
    let e = parse_expr(&mut cur)?;
    cur.expect_end()?;
    Ok(e)
}

impl Expr {
    /// Expands the expression in `ring`. Names that are not ring variables
    /// are looked up in `bindings`.
    pub fn eval<F: Field>(&self, ring: &Ring<F>, bindings: &HashMap<String, Polynomial<F>>) -> Result<Polynomial<F>> {
        Ok(match self {
            Expr::Int(n) => Polynomial::constant(ring, ring.field().from_ratio(n, &BigInt::one())?),
            Expr::Frac(n, d) => {
                if d.is_zero() {
                    return Err(crate::coeff::CoeffError::DivisionByZero.into());
                }
                Polynomial::constant(ring, ring.field().from_ratio(n, d)?)
            }
            Expr::Var { name, line, column } => match ring.variable_index(name) {
                Some(i) => Polynomial::monomial(ring, ring.field().one(), Monomial::variable(ring.nvars(), i, 1)?),
                None => match bindings.get(name) {
                    Some(p) => p.clone(),
                    None => {
                        return Err(Error::UnknownVariable {
                            name: name.clone(),
                            line: *line,
                            column: *column,
                        })
                    }
                },
            },
            Expr::Add(a, b) => a.eval(ring, bindings)?.add(&b.eval(ring, bindings)?)?,
            Expr::Sub(a, b) => a.eval(ring, bindings)?.sub(&b.eval(ring, bindings)?)?,
            Expr::Neg(a) => a.eval(ring, bindings)?.neg(),
            Expr::Mul(a, b) => a.eval(ring, bindings)?.mul(&b.eval(ring, bindings)?)?,
            Expr::Pow(a, e) => a.eval(ring, bindings)?.pow(*e)?,
        })
    }
}

/// Parses and expands a polynomial in `ring`.
pub fn parse_poly<F: Field>(text: &str, ring: &Ring<F>) -> Result<Polynomial<F>> {
    parse_expression(text)?.eval(ring, &HashMap::new())
}

/// Canonical text form; inverse of [`parse_poly`].
pub fn serialize<F: Field>(f: &Polynomial<F>) -> String {
    f.to_string()
}

/// One statement of a job file with its 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobStatement {
    pub line: usize,
    pub kind: StatementKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatementKind {
    Ring(RingDeclaration),
    Bind { name: String, expr: Expr },
    Command { name: String, args: Vec<String> },
}

/// Parses a job file: one statement per line, `#` starts a comment, a
/// trailing `;` is optional. Statements are `ring ...`, `name = expr`, or a
/// command `name` / `name(arg, ...)`.
pub fn parse_job(text: &str) -> Result<Vec<JobStatement>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(body, line)?;
        let first = cur.peek().clone();
        let kind = match &first.tok {
            Tok::Ident(w) if w == "ring" => StatementKind::Ring(parse_ring_at(body, line)?),
            Tok::Ident(name) => {
                let name = name.clone();
                cur.next();
                if cur.is_sym('=') {
                    let eq = cur.next();
                    let offset = body.char_indices().nth(eq.column).map(|(b, _)| b).unwrap_or(body.len());
                    let expr = parse_expression_at_column(&body[offset..], line, eq.column)?;
                    StatementKind::Bind { name, expr }
                } else {
                    let mut args = Vec::new();
                    if cur.is_sym('(') {
                        cur.next();
                        if !cur.is_sym(')') {
                            loop {
                                args.push(cur.expect_ident()?.0);
                                if cur.is_sym(',') {
                                    cur.next();
                                } else {
                                    break;
                                }
                            }
                        }
                        cur.expect_sym(')')?;
                    }
                    cur.expect_end()?;
                    StatementKind::Command { name, args }
                }
            }
            other => return cur.error(&first, format!("unexpected {other}")),
        };
        out.push(JobStatement { line, kind });
    }
    Ok(out)
}

fn parse_expression_at_column(text: &str, line: usize, column_offset: usize) -> Result<Expr> {
    fn shift(e: Error, by: usize) -> Error {
        match e {
            Error::Syntax { line, column, message } => Error::Syntax {
                line,
                column: column + by,
                message,
            },
            other => other,
        }
    }
    fn shift_expr(e: Expr, by: usize) -> Expr {
        match e {
            Expr::Var { name, line, column } => Expr::Var {
                name,
                line,
                column: column + by,
            },
            Expr::Add(a, b) => Expr::Add(Box::new(shift_expr(*a, by)), Box::new(shift_expr(*b, by))),
            Expr::Sub(a, b) => Expr::Sub(Box::new(shift_expr(*a, by)), Box::new(shift_expr(*b, by))),
            Expr::Mul(a, b) => Expr::Mul(Box::new(shift_expr(*a, by)), Box::new(shift_expr(*b, by))),
            Expr::Neg(a) => Expr::Neg(Box::new(shift_expr(*a, by))),
            Expr::Pow(a, k) => Expr::Pow(Box::new(shift_expr(*a, by)), k),
            other => other,
        }
    }
    parse_expression_at(text, line)
        .map(|e| shift_expr(e, column_offset))
        .map_err(|e| shift(e, column_offset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rationals;

    fn ring(decl: &str) -> Ring<Rationals> {
        match parse_ring(decl).unwrap() {
            AnyRing::Rational(r) => r,
            AnyRing::Prime(_) => panic!("expected char 0"),
        }
    }

    #[test]
    fn ring_declarations() {
        let d = parse_ring_declaration("ring 0 (x,y,z) ds").unwrap();
        assert_eq!(d.characteristic, 0);
        assert_eq!(d.variables, vec!["x", "y", "z"]);
        assert_eq!(d.ordering.blocks()[0].kind, BlockKind::NegDegRevLex);
        let p = parse_ring("ring 32003 (x,y,z) ds").unwrap();
        assert_eq!(p.characteristic(), 32003);
        assert_eq!(
            parse_ring("ring 0 (x,x) dp").unwrap_err(),
            Error::DuplicateVariable("x".into())
        );
        assert_eq!(
            parse_ring("0 (x) qq").unwrap_err(),
            Error::UnknownOrderingToken("qq".into())
        );
        assert!(matches!(parse_ring("ring 4 (x) dp"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn ordering_tokens_round_trip() {
        for tok in [
            "dp",
            "Dp",
            "lp",
            "ds",
            "ls",
            "wp(1,2,3)",
            "ws(3,2,1)",
            "(dp(1),ds(2))",
            "ds:top",
            "(lp(2),ws(1))",
        ] {
            let d = parse_ring_declaration(&format!("0 (x,y,z) {tok}")).unwrap();
            assert_eq!(d.ordering.token(), tok);
        }
        assert!(parse_ring("0 (x,y) (dp(1),ds(2))").is_err());
    }

    #[test]
    fn zariski_generator_parses() {
        let r = ring("0 (x,y,z) ds");
        let f = parse_poly("x*y+z^3", &r).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.order_of().unwrap(), 2);
        assert_eq!(serialize(&f), "x*y+z^3");
    }

    #[test]
    fn expansion_and_errors() {
        let r = ring("0 (x,y,z) dp");
        let f = parse_poly("(y^2+2*x)^2", &r).unwrap();
        assert_eq!(f, parse_poly("y^4+4*x*y^2+4*x^2", &r).unwrap());
        assert_eq!(
            parse_poly("x*w", &r).unwrap_err(),
            Error::UnknownVariable {
                name: "w".into(),
                line: 1,
                column: 3
            }
        );
        assert!(matches!(parse_poly("x y", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^70000", &r), Err(Error::ExponentOverflow)));
        assert_eq!(parse_poly("-x^2", &r).unwrap(), parse_poly("-(x^2)", &r).unwrap());
        assert_eq!(parse_poly("x^0", &r).unwrap(), Polynomial::one(&r));
        assert!(parse_poly("1/0", &r).is_err());
    }

    #[test]
    fn serialization_forms() {
        let r = ring("0 (x,y) dp");
        assert_eq!(serialize(&Polynomial::zero(&r)), "0");
        assert_eq!(serialize(&parse_poly("x^2-y", &r).unwrap()), "x^2-y");
        assert_eq!(serialize(&parse_poly("3/2*x", &r).unwrap()), "3/2*x");
        assert_eq!(serialize(&parse_poly("-1-x", &r).unwrap()), "-x-1");
    }

    #[test]
    fn job_statements() {
        let job = "# FT germ\nring 0 (x,y,z) ds;\nf = x*y + z^3;\ng = x*z+y*z^2+y^4\n\ntjurina;\nstd(f, g)\n";
        let st = parse_job(job).unwrap();
        assert_eq!(st.len(), 5);
        assert_eq!(st[0].line, 2);
        assert!(matches!(&st[3].kind, StatementKind::Command { name, args } if name == "tjurina" && args.is_empty()));
        assert!(matches!(&st[4].kind, StatementKind::Command { args, .. } if args.len() == 2));
        let bad = parse_job("ring 0 (x) ds\nf = x*w\n").unwrap();
        let StatementKind::Bind { expr, .. } = &bad[1].kind else {
            panic!()
        };
        let r = ring("0 (x) ds");
        assert_eq!(
            expr.eval(&r, &HashMap::new()).unwrap_err(),
            Error::UnknownVariable {
                name: "w".into(),
                line: 2,
                column: 7
            }
        );
        assert!(parse_job("").unwrap().is_empty());
    }
}
