//! Independent certificate checking. Uses only exact arithmetic and real
//! root isolation, never the procedures that produce certificates.

use std::cmp::Ordering;
use std::fmt;

use super::{union_reasons, Certificate, CoveringInterval};
use crate::arith::{MultiPoly, Sign, Variable};
use crate::formula::{Constraint, Formula};
use crate::realroots::line::{dyadic_between, gaps, End, Span};
use crate::realroots::tower::{FiberOps, FiberValue, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Failure),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Invalid(e) => write!(f, "invalid: {e}"),
        }
    }
}

/// What failed, and where: `location` is the path of child indices from
/// the top-level covering. For gaps it names the covering's parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub location: Vec<usize>,
    pub kind: FailureKind,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, location_text(&self.location))
    }
}

pub fn location_text(path: &[usize]) -> String {
    if path.is_empty() {
        return "top level".to_string();
    }
    let mut s = String::from("covering");
    for (i, p) in path.iter().enumerate() {
        if i > 0 {
            s.push_str(".children");
        }
        s.push_str(&format!("[{p}]"));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FailureKind {
    #[error("certificate does not match the formula: {0}")]
    FormulaMismatch(String),
    #[error("covering leaves {lower} .. {upper} uncovered")]
    Gap { lower: String, upper: String },
    #[error("interval has no reasons")]
    NoReasons,
    #[error("unknown constraint id {0}")]
    UnknownReason(usize),
    #[error("malformed interval: {0}")]
    Malformed(String),
    #[error("sample lies outside its interval")]
    SampleOutside,
    #[error("{0} bound is not a root of any characterization polynomial")]
    BoundNotRoot(&'static str),
    #[error("characterization polynomial {0} vanishes identically above the sample")]
    Nullified(String),
    #[error("characterization polynomial {0} has a root inside the interval")]
    RootInside(String),
    #[error("reasons {found:?} differ from the children's union {expected:?}")]
    ReasonMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("no reason is false throughout the interval")]
    NoConflict,
    #[error("covering nested deeper than the number of variables")]
    TooDeep,
}

/// Checks that `cert` refutes `formula`.
pub fn check(cert: &Certificate, formula: &Formula) -> Verdict {
    match check_inner(cert, formula) {
        Ok(()) => Verdict::Valid,
        Err(e) => Verdict::Invalid(e),
    }
}

fn fail(path: &[usize], kind: FailureKind) -> Failure {
    Failure { location: path.to_vec(), kind }
}

fn check_inner(cert: &Certificate, formula: &Formula) -> Result<(), Failure> {
    let f = formula.reorder(&cert.order).map_err(|e| fail(&[], FailureKind::FormulaMismatch(e.to_string())))?;
    let mut mine: Vec<&Constraint> = f.constraints().iter().collect();
    let mut theirs: Vec<&Constraint> = cert.constraints.iter().collect();
    mine.sort_by_key(|c| c.id);
    theirs.sort_by_key(|c| c.id);
    if mine != theirs {
        return Err(fail(&[], FailureKind::FormulaMismatch("constraints differ".into())));
    }
    let mut checker = Checker { formula: &f, tower: Tower::new(&cert.order) };
    if cert.order.is_empty() {
        // Nothing to cover: some constant constraint must simply be false.
        if !cert.covering.is_empty() {
            return Err(fail(&[], FailureKind::TooDeep));
        }
        let refuted = f.constraints().iter().any(|c| !c.holds(checker.tower.sign(&c.poly)));
        return if refuted { Ok(()) } else { Err(fail(&[], FailureKind::NoConflict)) };
    }
    checker.covering(&cert.covering, &mut Vec::new())
}

struct Checker<'a> {
    formula: &'a Formula,
    tower: Tower,
}

struct Converted {
    lower: End<FiberValue>,
    upper: End<FiberValue>,
    sample: FiberValue,
}

impl Checker<'_> {
    fn convert(&self, iv: &CoveringInterval) -> Converted {
        let end = |b: &super::Bound| match b {
            End::Infinite => End::Infinite,
            End::Finite { value, closed } => {
                End::Finite { value: self.tower.fiber_from_number(value), closed: *closed }
            }
        };
        Converted { lower: end(&iv.lower), upper: end(&iv.upper), sample: self.tower.fiber_from_number(&iv.sample) }
    }

    fn text(&mut self, v: &FiberValue) -> String {
        let var = self.tower.order().name(Variable::new(self.tower.len())).to_string();
        self.tower.fiber_to_number(v).format_in(&var)
    }

    fn covering(&mut self, ivs: &[CoveringInterval], path: &mut Vec<usize>) -> Result<(), Failure> {
        if self.tower.len() >= self.tower.order().len() {
            return Err(fail(path, FailureKind::TooDeep));
        }
        let conv: Vec<Converted> = ivs.iter().map(|iv| self.convert(iv)).collect();
        for (i, c) in conv.iter().enumerate() {
            path.push(i);
            self.well_formed(c, path)?;
            path.pop();
        }
        let spans: Vec<Span<FiberValue>> =
            conv.iter().map(|c| Span { lower: c.lower.clone(), upper: c.upper.clone() }).collect();
        let tower = &mut self.tower;
        let holes = gaps(&spans, &mut |a, b| tower.fiber_cmp(a, b));
        if let Some(g) = holes.first() {
            let lower = match &g.lower {
                End::Infinite => "-inf".to_string(),
                End::Finite { value, closed } => format!("{}{}", if *closed { "[" } else { "(" }, self.text(value)),
            };
            let upper = match &g.upper {
                End::Infinite => "+inf".to_string(),
                End::Finite { value, closed } => format!("{}{}", self.text(value), if *closed { "]" } else { ")" }),
            };
            return Err(fail(path, FailureKind::Gap { lower, upper }));
        }
        for (i, (iv, c)) in ivs.iter().zip(&conv).enumerate() {
            path.push(i);
            self.interval(iv, c, path)?;
            path.pop();
        }
        Ok(())
    }

    fn well_formed(&mut self, c: &Converted, path: &[usize]) -> Result<(), Failure> {
        if let (End::Finite { value: l, closed: lc }, End::Finite { value: u, closed: uc }) = (&c.lower, &c.upper) {
            match self.tower.fiber_cmp(l, u) {
                Ordering::Greater => return Err(fail(path, FailureKind::Malformed("lower bound above upper".into()))),
                Ordering::Equal if !(*lc && *uc) => {
                    return Err(fail(path, FailureKind::Malformed("empty interval".into())));
                }
                _ => {}
            }
        }
        let above = match &c.lower {
            End::Infinite => true,
            End::Finite { value, closed } => match self.tower.fiber_cmp(&c.sample, value) {
                Ordering::Greater => true,
                Ordering::Equal => *closed,
                Ordering::Less => false,
            },
        };
        let below = match &c.upper {
            End::Infinite => true,
            End::Finite { value, closed } => match self.tower.fiber_cmp(&c.sample, value) {
                Ordering::Less => true,
                Ordering::Equal => *closed,
                Ordering::Greater => false,
            },
        };
        if above && below {
            Ok(())
        } else {
            Err(fail(path, FailureKind::SampleOutside))
        }
    }

    fn interval(&mut self, iv: &CoveringInterval, c: &Converted, path: &mut Vec<usize>) -> Result<(), Failure> {
        let level = self.tower.len();
        if iv.reasons.is_empty() {
            return Err(fail(path, FailureKind::NoReasons));
        }
        for &r in &iv.reasons {
            if self.formula.constraint(r).is_none() {
                return Err(fail(path, FailureKind::UnknownReason(r)));
            }
        }
        for p in &iv.characterization {
            if p.main_var().is_some_and(|v| v.index > level) {
                return Err(fail(path, FailureKind::Malformed(format!("{p} involves a later variable"))));
            }
            if self.tower.fiber_vanishes(p) {
                return Err(fail(path, FailureKind::Nullified(p.to_string())));
            }
        }
        for (end, which) in [(&c.lower, "lower"), (&c.upper, "upper")] {
            if let End::Finite { value, .. } = end {
                if !iv.characterization.iter().any(|p| self.tower.fiber_sign(p, value) == Sign::Zero) {
                    return Err(fail(path, FailureKind::BoundNotRoot(which)));
                }
            }
        }
        match &iv.children {
            Some(children) => {
                for p in &iv.characterization {
                    let roots = self.tower.fiber_roots(p).expect("checked not to vanish");
                    if roots.iter().any(|r| self.strictly_inside(r, c)) {
                        return Err(fail(path, FailureKind::RootInside(p.to_string())));
                    }
                }
                let expected = union_reasons(children);
                if expected != iv.reasons {
                    return Err(fail(path, FailureKind::ReasonMismatch { expected, found: iv.reasons.clone() }));
                }
                self.tower.push(c.sample.clone());
                let r = self.covering(children, path);
                self.tower.pop();
                r
            }
            None => {
                for &r in &iv.reasons {
                    let con = self.formula.constraint(r).expect("checked above").clone();
                    if self.false_throughout(&con, c) {
                        return Ok(());
                    }
                }
                Err(fail(path, FailureKind::NoConflict))
            }
        }
    }

    fn strictly_inside(&mut self, v: &FiberValue, c: &Converted) -> bool {
        let above = match &c.lower {
            End::Infinite => true,
            End::Finite { value, .. } => self.tower.fiber_cmp(v, value) == Ordering::Greater,
        };
        let below = match &c.upper {
            End::Infinite => true,
            End::Finite { value, .. } => self.tower.fiber_cmp(v, value) == Ordering::Less,
        };
        above && below
    }

    /// Whether `con` is false at every point of the interval above the
    /// current sample. The sign of its polynomial is constant between
    /// consecutive roots, so the roots inside, the closed ends and one point
    /// per open stretch between them decide.
    fn false_throughout(&mut self, con: &Constraint, c: &Converted) -> bool {
        if con.poly.main_var().is_some_and(|v| v.index > self.tower.len()) {
            return false;
        }
        let Some(roots) = self.tower.fiber_roots(&con.poly) else {
            return !con.holds(Sign::Zero);
        };
        let inside: Vec<FiberValue> = roots.into_iter().filter(|r| self.strictly_inside(r, c)).collect();
        let mut points = vec![c.sample.clone()];
        points.extend(inside.iter().cloned());
        for end in [&c.lower, &c.upper] {
            if let End::Finite { value, closed: true } = end {
                points.push(value.clone());
            }
        }
        let mut marks: Vec<Option<&FiberValue>> = vec![c.lower.value()];
        marks.extend(inside.iter().map(Some));
        marks.push(c.upper.value());
        for w in marks.windows(2) {
            if let Some(q) = dyadic_between(w[0], w[1], &mut FiberOps(&mut self.tower)) {
                points.push(FiberValue::Rational(q));
            }
        }
        points.iter().all(|p| !con.holds(self.fiber_sign(&con.poly, p)))
    }

    fn fiber_sign(&mut self, p: &MultiPoly, v: &FiberValue) -> Sign {
        self.tower.fiber_sign(p, v)
    }
}
