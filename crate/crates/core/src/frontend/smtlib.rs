//! The supported SMT-LIB2 subset: `set-logic QF_NRA`, real declarations,
//! `assert` of conjunctions of (possibly negated) polynomial atoms, and
//! `check-sat`. Informational commands are accepted and ignored.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::native::trivial;
use super::{Location, ParseError, ParsedProblem};
use crate::arith::rational::parse_decimal;
use crate::arith::{MultiPoly, VarOrder};
use crate::formula::{Constraint, Formula, Relation};

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Symbol(String, Location),
    Number(String, Location),
    Keyword(String, Location),
    Str(Location),
    List(Vec<Sexp>, Location),
}

impl Sexp {
    fn at(&self) -> Location {
        match self {
            Sexp::Symbol(_, l) | Sexp::Number(_, l) | Sexp::Keyword(_, l) | Sexp::Str(l) | Sexp::List(_, l) => *l,
        }
    }

    fn symbol(&self) -> Option<&str> {
        match self {
            Sexp::Symbol(s, _) => Some(s),
            _ => None,
        }
    }
}

fn syntax(at: Location, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { at, message: message.into() }
}

fn unsupported(at: Location, feature: impl Into<String>) -> ParseError {
    ParseError::UnsupportedFeature { at, feature: feature.into() }
}

struct Reader {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Reader {
    fn here(&self) -> Location {
        Location { line: self.line, column: self.column }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == ';' {
                while self.chars.get(self.pos).is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Option<Sexp>, ParseError> {
        self.skip_blank();
        let at = self.here();
        let Some(&c) = self.chars.get(self.pos) else {
            return Ok(None);
        };
        match c {
            '(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.get(self.pos) {
                        None => return Err(syntax(at, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Sexp::List(items, at)));
                        }
                        Some(_) => items.push(self.read()?.expect("input remains")),
                    }
                }
            }
            ')' => Err(syntax(at, "unexpected `)`")),
            '"' => {
                self.bump();
                loop {
                    match self.bump() {
                        None => return Err(syntax(at, "unterminated string")),
                        Some('"') if self.chars.get(self.pos) == Some(&'"') => {
                            self.bump();
                        }
                        Some('"') => return Ok(Some(Sexp::Str(at))),
                        Some(_) => {}
                    }
                }
            }
            '|' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(syntax(at, "unterminated quoted symbol")),
                        Some('|') => return Ok(Some(Sexp::Symbol(s, at))),
                        Some(c) => s.push(c),
                    }
                }
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = self.chars.get(self.pos) {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' || c == '"' || c == '|' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Some(if s.starts_with(':') {
                    Sexp::Keyword(s, at)
                } else if s.starts_with(|c: char| c.is_ascii_digit()) {
                    Sexp::Number(s, at)
                } else {
                    Sexp::Symbol(s, at)
                }))
            }
        }
    }
}

fn read_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut r = Reader { chars: text.chars().collect(), pos: 0, line: 1, column: 1 };
    let mut out = Vec::new();
    while let Some(s) = r.read()? {
        out.push(s);
    }
    Ok(out)
}

const UNSUPPORTED_BOOL: &[&str] = &["or", "=>", "xor", "ite", "let", "forall", "exists", "match"];

struct Translator<'a> {
    order: &'a VarOrder,
    /// Variables visible at the current command.
    declared: usize,
    constraints: Vec<Constraint>,
    spans: BTreeMap<usize, Location>,
}

impl Translator<'_> {
    fn var(&self, name: &str, at: Location) -> Result<MultiPoly, ParseError> {
        match self.order.position(name) {
            Some(v) if v.index < self.declared => Ok(MultiPoly::var(self.order, v)),
            _ => Err(ParseError::UnknownSymbol { at, name: name.to_string() }),
        }
    }

    fn term(&self, s: &Sexp) -> Result<MultiPoly, ParseError> {
        match s {
            Sexp::Number(n, at) => parse_decimal(n)
                .map(|q| MultiPoly::constant(self.order, q))
                .ok_or_else(|| syntax(*at, format!("bad numeral `{n}`"))),
            Sexp::Symbol(name, at) => self.var(name, *at),
            Sexp::List(items, at) => {
                let Some((head, args)) = items.split_first() else {
                    return Err(syntax(*at, "empty term"));
                };
                let op = head.symbol().ok_or_else(|| syntax(head.at(), "expected an operator"))?;
                match op {
                    "+" | "*" | "-" | "/" => {}
                    "ite" | "let" => return Err(unsupported(head.at(), format!("`{op}` in terms"))),
                    _ => return Err(ParseError::UnknownSymbol { at: head.at(), name: op.to_string() }),
                }
                let vals = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                if vals.is_empty() {
                    return Err(syntax(*at, format!("`{op}` needs arguments")));
                }
                match op {
                    "+" => Ok(vals.iter().skip(1).fold(vals[0].clone(), |a, b| &a + b)),
                    "*" => Ok(vals.iter().skip(1).fold(vals[0].clone(), |a, b| &a * b)),
                    "-" if vals.len() == 1 => Ok(-&vals[0]),
                    "-" => Ok(vals.iter().skip(1).fold(vals[0].clone(), |a, b| &a - b)),
                    "/" if vals.len() >= 2 => {
                        let mut acc = vals[0].clone();
                        for (v, a) in vals.iter().zip(args).skip(1) {
                            match v.constant_value() {
                                Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                                _ => return Err(unsupported(a.at(), "division by a non-constant or zero")),
                            }
                        }
                        Ok(acc)
                    }
                    _ => Err(syntax(*at, format!("`{op}` needs at least two arguments"))),
                }
            }
            Sexp::Keyword(k, at) => Err(syntax(*at, format!("unexpected `{k}`"))),
            Sexp::Str(at) => Err(syntax(*at, "unexpected string")),
        }
    }

    fn push(&mut self, poly: MultiPoly, rel: Relation, at: Location) -> Result<(), ParseError> {
        let id = self.constraints.len() + 1;
        let c = Constraint::new(id, poly, rel).or_else(|_| trivial(self.order, id, rel))?;
        self.constraints.push(c);
        self.spans.insert(id, at);
        Ok(())
    }

    fn atom_relation(op: &str) -> Option<Relation> {
        match op {
            "<" => Some(Relation::Lt),
            "<=" => Some(Relation::Le),
            "=" => Some(Relation::Eq),
            ">=" => Some(Relation::Ge),
            ">" => Some(Relation::Gt),
            "distinct" => Some(Relation::Ne),
            _ => None,
        }
    }

    fn formula(&mut self, s: &Sexp, negated: bool) -> Result<(), ParseError> {
        match s {
            Sexp::Symbol(b, at) if b == "true" || b == "false" => {
                if (b == "true") == negated {
                    self.push(MultiPoly::zero(self.order), Relation::Ne, *at)?;
                }
                Ok(())
            }
            Sexp::List(items, at) => {
                let Some((head, args)) = items.split_first() else {
                    return Err(syntax(*at, "empty formula"));
                };
                let op = head.symbol().ok_or_else(|| syntax(head.at(), "expected an operator"))?;
                match op {
                    "and" if !negated => args.iter().try_for_each(|a| self.formula(a, false)),
                    "and" => Err(unsupported(head.at(), "negated conjunction")),
                    "not" if args.len() == 1 => self.formula(&args[0], !negated),
                    "!" if !args.is_empty() => self.formula(&args[0], negated),
                    _ if UNSUPPORTED_BOOL.contains(&op) => Err(unsupported(head.at(), format!("`{op}`"))),
                    _ => {
                        let Some(rel) = Self::atom_relation(op) else {
                            return Err(ParseError::UnknownSymbol { at: head.at(), name: op.to_string() });
                        };
                        if args.len() < 2 {
                            return Err(syntax(*at, format!("`{op}` needs two arguments")));
                        }
                        let vals = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                        let pairs: Vec<(usize, usize)> = if op == "distinct" {
                            (0..vals.len()).flat_map(|i| (i + 1..vals.len()).map(move |j| (i, j))).collect()
                        } else {
                            (1..vals.len()).map(|i| (i - 1, i)).collect()
                        };
                        if negated && pairs.len() > 1 {
                            return Err(unsupported(head.at(), "negated chain of comparisons"));
                        }
                        let rel = if negated { rel.negate() } else { rel };
                        for (i, j) in pairs {
                            self.push(&vals[i] - &vals[j], rel, *at)?;
                        }
                        Ok(())
                    }
                }
            }
            other => Err(unsupported(other.at(), "non-arithmetic atom")),
        }
    }
}

pub fn parse_smtlib(text: &str) -> Result<ParsedProblem, ParseError> {
    let commands = read_all(text)?;
    let mut names: Vec<String> = Vec::new();
    // Number of variables declared before each command.
    let mut visible = Vec::with_capacity(commands.len());
    for cmd in &commands {
        visible.push(names.len());
        let Sexp::List(items, at) = cmd else {
            return Err(syntax(cmd.at(), "expected a command"));
        };
        let head = items.first().and_then(Sexp::symbol).ok_or_else(|| syntax(*at, "expected a command"))?;
        let (name, sort) = match (head, items.len()) {
            ("declare-fun", 4) => match &items[2] {
                Sexp::List(params, _) if params.is_empty() => (&items[1], &items[3]),
                other => return Err(unsupported(other.at(), "function symbols with arguments")),
            },
            ("declare-const", 3) => (&items[1], &items[2]),
            ("declare-fun" | "declare-const", _) => return Err(syntax(*at, "malformed declaration")),
            _ => continue,
        };
        let n = name.symbol().ok_or_else(|| syntax(name.at(), "expected a symbol"))?;
        if sort.symbol() != Some("Real") {
            return Err(unsupported(sort.at(), "sorts other than Real"));
        }
        if names.iter().any(|m| m == n) {
            return Err(syntax(name.at(), format!("`{n}` declared twice")));
        }
        names.push(n.to_string());
    }
    let order = VarOrder::new(names.clone());
    let mut tr = Translator { order: &order, declared: 0, constraints: Vec::new(), spans: BTreeMap::new() };
    for (cmd, seen) in commands.iter().zip(visible) {
        let Sexp::List(items, at) = cmd else { unreachable!("checked above") };
        let head = items[0].symbol().expect("checked above");
        tr.declared = seen;
        match head {
            "set-logic" => match items.get(1).and_then(Sexp::symbol) {
                Some("QF_NRA") | Some("QF_LRA") => {}
                Some(l) => return Err(unsupported(items[1].at(), format!("logic {l}"))),
                None => return Err(syntax(*at, "expected a logic name")),
            },
            "assert" if items.len() == 2 => tr.formula(&items[1], false)?,
            "assert" => return Err(syntax(*at, "`assert` takes one formula")),
            "declare-fun" | "declare-const" | "check-sat" | "set-info" | "set-option" | "get-model" | "get-info"
            | "get-value" | "exit" => {}
            other => return Err(unsupported(items[0].at(), format!("command `{other}`"))),
        }
    }
    let (constraints, spans) = (tr.constraints, tr.spans);
    let formula = Formula::new(order.clone(), constraints)?;
    Ok(ParsedProblem { variables: names, formula, source_spans: spans })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = "(set-logic QF_NRA)
(declare-fun x () Real)
(declare-fun y () Real)
(assert (< (+ (* x x) (* y y)) 1))
(assert (< (+ (* (- x 4) (- x 4)) (* y y)) 1))
(check-sat)
";

    #[test]
    fn parses_the_first_example() {
        let p = parse_smtlib(EX1).unwrap();
        assert_eq!(p.variables, ["x", "y"]);
        let cs = p.formula.constraints();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].poly.to_string(), "y^2 + x^2 - 8*x + 15");
        assert_eq!(p.source_spans[&1], Location { line: 4, column: 9 });
    }

    #[test]
    fn negation_flips_relations() {
        let p = parse_smtlib("(declare-const x Real)(assert (and (not (= x 1)) (not (< x 0.5))))").unwrap();
        let rels: Vec<Relation> = p.formula.constraints().iter().map(|c| c.relation).collect();
        assert_eq!(rels, [Relation::Ne, Relation::Ge]);
        assert_eq!(p.formula.constraints()[1].poly.to_string(), "x - 1/2");
    }

    #[test]
    fn rejects_disjunctions_with_a_location() {
        let e = parse_smtlib("(declare-fun a () Real)\n(assert (or (< a 0) (> a 1)))").unwrap_err();
        assert_eq!(e, ParseError::UnsupportedFeature { at: Location { line: 2, column: 10 }, feature: "`or`".into() });
    }

    #[test]
    fn unknown_and_late_symbols() {
        assert!(matches!(parse_smtlib("(assert (< z 0))"), Err(ParseError::UnknownSymbol { .. })));
        let late = "(assert (< x 0))(declare-fun x () Real)";
        assert!(matches!(parse_smtlib(late), Err(ParseError::UnknownSymbol { .. })));
        assert!(matches!(
            parse_smtlib("(declare-fun x () Real)(assert (< (/ 1 x) 0))"),
            Err(ParseError::UnsupportedFeature { .. })
        ));
    }

    #[test]
    fn single_atom() {
        let p =
            parse_smtlib("(declare-fun x () Real)(declare-fun y () Real)(assert (< (+ (* x x) (* y y)) 1))").unwrap();
        assert_eq!(p.formula.constraints().len(), 1);
    }
}
