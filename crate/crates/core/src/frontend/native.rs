//! The native format: a `vars` line declaring the variables in order, then
//! one constraint per line in infix notation.
//!
//! ```text
//! # comment
//! vars x y
//! x^2 + y^2 < 1
//! (x - 3/2)^2 + (y - 3/2)^2 < 1
//! ```
//!
//! Relations are `<`, `<=`, `=`, `!=`, `>=`, `>`. Operators are `+ - * / ^`
//! with the usual precedence; divisors must be nonzero constants and
//! exponents nonnegative integers. Numbers may be integers, decimals or
//! written as fractions.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Location, ParseError, ParsedProblem};
use crate::arith::rational::parse_decimal;
use crate::arith::{MultiPoly, VarOrder};
use crate::formula::{Constraint, Formula, Relation};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
    Rel(Relation),
    LParen,
    RParen,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { at: Location { line, column }, message: message.into() }
}

fn tokenize(line_no: usize, text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            ('<', Some('=')) => (Tok::Rel(Relation::Le), 2),
            ('>', Some('=')) => (Tok::Rel(Relation::Ge), 2),
            ('!', Some('=')) => (Tok::Rel(Relation::Ne), 2),
            ('=', Some('=')) => (Tok::Rel(Relation::Eq), 2),
            ('<', _) => (Tok::Rel(Relation::Lt), 1),
            ('>', _) => (Tok::Rel(Relation::Gt), 1),
            ('=', _) => (Tok::Rel(Relation::Eq), 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('+' | '-' | '*' | '/' | '^', _) => (Tok::Op(c), 1),
            _ => return Err(syntax(line_no, col, format!("unexpected character `{c}`"))),
        };
        out.push((tok, col));
        i += len;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
    order: &'a VarOrder,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        syntax(self.line, self.col(), message)
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let col = self.col();
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                match rhs.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => return Err(syntax(self.line, col, "divisor must be a nonzero constant")),
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.parse().map_err(|_| self.err("exponent must be a nonnegative integer"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("exponent must be a nonnegative integer")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let q = parse_decimal(&n).ok_or_else(|| syntax(self.line, col, format!("bad number `{n}`")))?;
                Ok(MultiPoly::constant(self.order, q))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.order.position(&name) {
                    Some(v) => Ok(MultiPoly::var(self.order, v)),
                    None => Err(ParseError::UnknownSymbol { at: Location { line: self.line, column: col }, name }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

pub fn parse_native(text: &str) -> Result<ParsedProblem, ParseError> {
    let mut order: Option<VarOrder> = None;
    let mut constraints = Vec::new();
    let mut spans = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokenize(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let Some(o) = &order else {
            match &toks[0].0 {
                Tok::Ident(kw) if kw == "vars" => {}
                _ => return Err(syntax(line, toks[0].1, "expected `vars` declaration first")),
            }
            let mut names: Vec<String> = Vec::new();
            for (t, col) in &toks[1..] {
                match t {
                    Tok::Ident(n) if n != "vars" && !names.contains(n) => names.push(n.clone()),
                    Tok::Ident(n) if names.contains(n) => {
                        return Err(syntax(line, *col, format!("duplicate variable `{n}`")))
                    }
                    _ => return Err(syntax(line, *col, "expected a variable name")),
                }
            }
            order = Some(VarOrder::new(names));
            continue;
        };
        let end_col = raw.chars().count() + 1;
        let mut p = Parser { toks: &toks, pos: 0, line, end_col, order: o };
        let lhs = p.expr()?;
        let rel = match p.peek() {
            Some(Tok::Rel(r)) => *r,
            _ => return Err(p.err("expected a relation")),
        };
        p.pos += 1;
        let rhs = p.expr()?;
        if p.pos != toks.len() {
            return Err(p.err("unexpected input after constraint"));
        }
        let id = constraints.len() + 1;
        constraints.push(Constraint::new(id, &lhs - &rhs, rel).or_else(|_| trivial(o, id, rel))?);
        spans.insert(id, Location { line, column: toks[0].1 });
    }
    let order = order.ok_or_else(|| syntax(text.lines().count().max(1), 1, "missing `vars` declaration"))?;
    let formula = Formula::new(order.clone(), constraints)?;
    Ok(ParsedProblem { variables: order.names().to_vec(), formula, source_spans: spans })
}

/// A constraint equivalent to `0 rel 0`, using a nonzero constant.
pub(crate) fn trivial(order: &VarOrder, id: usize, rel: Relation) -> Result<Constraint, crate::formula::FormulaError> {
    let truth = rel.holds(crate::arith::Sign::Zero);
    let one = MultiPoly::one(order);
    Constraint::new(id, one, if truth { Relation::Gt } else { Relation::Lt })
}

/// Native text of a problem; parsing it gives back the same formula.
pub fn to_native(problem: &ParsedProblem) -> String {
    let mut s = format!("vars {}\n", problem.variables.join(" "));
    for c in problem.formula.constraints() {
        s.push_str(&format!("{} {} 0\n", c.poly, c.relation));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_second_example() {
        let p = parse_native("vars x y\nx^2 + y^2 < 1\n(x - 3/2)^2 + (y - 3/2)^2 < 1\n").unwrap();
        assert_eq!(p.variables, ["x", "y"]);
        let cs = p.formula.constraints();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].poly.to_string(), "y^2 - 3*y + x^2 - 3*x + 7/2");
        assert_eq!(p.source_spans[&2], Location { line: 3, column: 1 });
    }

    #[test]
    fn reports_positions() {
        let e = parse_native("vars x\nx^2 < z\n").unwrap_err();
        assert_eq!(e, ParseError::UnknownSymbol { at: Location { line: 2, column: 7 }, name: "z".into() });
        let e = parse_native("vars x\nx / (x - x) < 1").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { at: Location { line: 2, column: 5 }, .. }));
        assert!(parse_native("x < 1").is_err());
        assert!(parse_native("vars x\nx < 1 2").is_err());
    }

    #[test]
    fn decimals_are_exact() {
        let p = parse_native("vars x\n1.5*x - 0.25 >= 0").unwrap();
        assert_eq!(p.formula.constraints()[0].poly.to_string(), "3/2*x - 1/4");
    }

    #[test]
    fn round_trips() {
        let p = parse_native("vars x y\n-x^2*y + 2/3 != y\n x = x").unwrap();
        let q = parse_native(&to_native(&p)).unwrap();
        assert_eq!(p.formula, q.formula);
    }
}
