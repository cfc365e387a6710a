//! Satisfiability by cylindrical algebraic coverings: conflicts found at a
//! sample are generalized to intervals until the line is covered, level by
//! level, and the coverings form an unsatisfiability certificate.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;

use crate::arith::{discriminant, resultant, square_free_basis, BigRational, MultiPoly, Sign, VarOrder, Variable};
use crate::cad::NullificationError;
use crate::certificate::{union_reasons, Bound, Certificate, CoveringInterval};
use crate::formula::{Constraint, Formula};
use crate::realroots::line::{dyadic_between, gaps, greedy_cover, End, Span};
use crate::realroots::tower::{FiberOps, FiberValue, Tower};
use crate::realroots::{compare, RealAlgebraicNumber};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Sat(Vec<RealAlgebraicNumber>),
    Unsat(Certificate),
    /// The projection degenerated; the formula is undecided.
    Incomplete(NullificationError),
}

/// An interval of the current variable with the data needed to generalize
/// a covering that contains it.
#[derive(Clone, Debug)]
struct Interval {
    lower: End<FiberValue>,
    upper: End<FiberValue>,
    /// Square-free factors in the current variable whose roots may bound it.
    main: Vec<MultiPoly>,
    /// Polynomials in earlier variables that must keep their signs.
    down: Vec<MultiPoly>,
    cert: CoveringInterval,
}

enum Cover {
    Sat(Vec<RealAlgebraicNumber>),
    Unsat(Vec<Interval>),
}

struct Solver<'a> {
    formula: &'a Formula,
    tower: Tower,
}

/// Decides a formula. Unsatisfiable formulas come with a certificate whose
/// top-level covering lists intervals in discovery order.
pub fn decide(formula: &Formula) -> Outcome {
    let order = formula.order();
    if order.is_empty() {
        let mut tower = Tower::new(order);
        return if formula.constraints().iter().all(|c| c.holds(tower.sign(&c.poly))) {
            Outcome::Sat(Vec::new())
        } else {
            Outcome::Unsat(Certificate::new(formula, Vec::new()))
        };
    }
    let mut solver = Solver { formula, tower: Tower::new(order) };
    match solver.cover() {
        Ok(Cover::Sat(s)) => Outcome::Sat(s),
        Ok(Cover::Unsat(ivs)) => Outcome::Unsat(Certificate::new(formula, ivs.into_iter().map(|i| i.cert).collect())),
        Err(e) => Outcome::Incomplete(e),
    }
}

/// The conflict intervals of the constraints whose last variable follows
/// `sample`, in certificate form.
pub fn unsat_intervals(formula: &Formula, sample: &[RealAlgebraicNumber]) -> Vec<CoveringInterval> {
    let mut solver = Solver { formula, tower: Tower::from_sample(formula.order(), sample) };
    solver.unsat_intervals().into_iter().map(|i| i.cert).collect()
}

/// Keeps, at every level, a greedy subcovering with few intervals.
pub fn prune_certificate(cert: &Certificate) -> Certificate {
    fn prune(ivs: &[CoveringInterval]) -> Vec<CoveringInterval> {
        let spans: Vec<Span<RealAlgebraicNumber>> =
            ivs.iter().map(|i| Span { lower: i.lower.clone(), upper: i.upper.clone() }).collect();
        let keep = greedy_cover(&spans, &mut compare).unwrap_or_else(|| (0..ivs.len()).collect());
        keep.into_iter()
            .map(|k| {
                let mut iv = ivs[k].clone();
                iv.children = iv.children.as_deref().map(prune);
                iv
            })
            .collect()
    }
    Certificate { covering: prune(&cert.covering), ..cert.clone() }
}

impl<'a> Solver<'a> {
    fn var(&self) -> Variable {
        Variable::new(self.tower.len())
    }

    fn constraints_here(&self) -> Vec<&'a Constraint> {
        let k = self.tower.len();
        let formula: &'a Formula = self.formula;
        formula.constraints().iter().filter(|c| c.level() == k).collect()
    }

    fn number(&mut self, v: &FiberValue) -> RealAlgebraicNumber {
        self.tower.fiber_to_number(v)
    }

    fn bound(&mut self, e: &End<FiberValue>) -> Bound {
        match e {
            End::Infinite => End::Infinite,
            End::Finite { value, closed } => End::Finite { value: self.number(value), closed: *closed },
        }
    }

    fn split_factors(&self, p: &MultiPoly) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
        let v = self.var();
        square_free_basis(std::slice::from_ref(p)).into_iter().partition(|f| f.main_var() == Some(v))
    }

    fn leaf(
        &mut self,
        c: &Constraint,
        lower: End<FiberValue>,
        upper: End<FiberValue>,
        sample: FiberValue,
        vanishes: bool,
    ) -> Interval {
        let (main, down) = self.split_factors(&c.poly);
        let characterization = if vanishes || c.poly.is_constant() { Vec::new() } else { vec![c.poly.clone()] };
        let cert = CoveringInterval {
            lower: self.bound(&lower),
            upper: self.bound(&upper),
            sample: self.number(&sample),
            reasons: vec![c.id],
            characterization,
            children: None,
        };
        Interval { lower, upper, main, down, cert }
    }

    /// For each constraint of the current level, the maximal intervals of
    /// the line above the sample where it is false.
    fn unsat_intervals(&mut self) -> Vec<Interval> {
        let mut out = Vec::new();
        for c in self.constraints_here() {
            let Some(roots) = self.tower.fiber_roots(&c.poly) else {
                if !c.holds(Sign::Zero) {
                    out.push(self.leaf(
                        c,
                        End::Infinite,
                        End::Infinite,
                        FiberValue::Rational(BigRational::zero()),
                        true,
                    ));
                }
                continue;
            };
            // Regions alternate sector, section, ..., sector. Each carries
            // its sample and whether the constraint fails there.
            let mut regions: Vec<(FiberValue, bool)> = Vec::with_capacity(2 * roots.len() + 1);
            for i in 0..=roots.len() {
                let lo = if i == 0 { None } else { Some(&roots[i - 1]) };
                let hi = roots.get(i);
                let q = dyadic_between(lo, hi, &mut FiberOps(&mut self.tower)).expect("distinct roots");
                let s = FiberValue::Rational(q);
                let fails = !c.holds(self.tower.fiber_sign(&c.poly, &s));
                regions.push((s, fails));
                if let Some(r) = hi {
                    let fails = !c.holds(self.tower.fiber_sign(&c.poly, r));
                    regions.push((r.clone(), fails));
                }
            }
            let mut i = 0;
            while i < regions.len() {
                if !regions[i].1 {
                    i += 1;
                    continue;
                }
                let mut j = i;
                while j + 1 < regions.len() && regions[j + 1].1 {
                    j += 1;
                }
                // Region 2m is the sector below root m, region 2m+1 is root m.
                let lower = if i == 0 {
                    End::Infinite
                } else if i % 2 == 1 {
                    End::Finite { value: roots[i / 2].clone(), closed: true }
                } else {
                    End::Finite { value: roots[i / 2 - 1].clone(), closed: false }
                };
                let upper = if j == regions.len() - 1 {
                    End::Infinite
                } else if j % 2 == 1 {
                    End::Finite { value: roots[j / 2].clone(), closed: true }
                } else {
                    End::Finite { value: roots[j / 2].clone(), closed: false }
                };
                let first_sector = if i % 2 == 0 { i } else { i + 1 };
                let sample = if first_sector <= j { &regions[first_sector].0 } else { &regions[i].0 };
                let sample = sample.clone();
                out.push(self.leaf(c, lower, upper, sample, false));
                i = j + 1;
            }
        }
        out
    }

    /// The smallest uncovered boundary point if there is one, otherwise the
    /// simplest rational in the leftmost gap.
    fn sample_outside(&mut self, ivs: &[Interval]) -> Option<FiberValue> {
        let spans: Vec<Span<FiberValue>> =
            ivs.iter().map(|i| Span { lower: i.lower.clone(), upper: i.upper.clone() }).collect();
        outside(&mut self.tower, &spans)
    }

    fn cover(&mut self) -> Result<Cover, NullificationError> {
        let last = self.tower.len() + 1 == self.tower.order().len();
        let mut ivs = self.unsat_intervals();
        while let Some(s) = self.sample_outside(&ivs) {
            if last {
                let mut witness = self.tower.sample();
                witness.push(self.number(&s));
                return Ok(Cover::Sat(witness));
            }
            self.tower.push(s.clone());
            let child = self.cover().and_then(|r| match r {
                Cover::Sat(w) => Ok(Err(w)),
                Cover::Unsat(child) => {
                    let chosen = self.prune(child);
                    self.characterize(&chosen).map(|polys| Ok((chosen, polys)))
                }
            });
            self.tower.pop();
            match child? {
                Err(witness) => return Ok(Cover::Sat(witness)),
                Ok((chosen, polys)) => {
                    let iv = self.generalize(s, polys, chosen)?;
                    ivs.push(iv);
                }
            }
        }
        Ok(Cover::Unsat(ivs))
    }

    fn prune(&mut self, ivs: Vec<Interval>) -> Vec<Interval> {
        let spans: Vec<Span<FiberValue>> =
            ivs.iter().map(|i| Span { lower: i.lower.clone(), upper: i.upper.clone() }).collect();
        let tower = &mut self.tower;
        let keep = greedy_cover(&spans, &mut |a, b| tower.fiber_cmp(a, b)).expect("a covering has no gaps");
        let mut slots: Vec<Option<Interval>> = ivs.into_iter().map(Some).collect();
        keep.into_iter().map(|k| slots[k].take().expect("distinct indices")).collect()
    }

    fn nullified(&mut self, p: &MultiPoly) -> NullificationError {
        NullificationError { poly: p.clone(), sample: self.tower.sample() }
    }

    /// Polynomials in the earlier variables whose sign-invariance keeps the
    /// covering `ivs` of the current line valid.
    fn characterize(&mut self, ivs: &[Interval]) -> Result<Vec<MultiPoly>, NullificationError> {
        let v = self.var();
        let all_main: Vec<MultiPoly> = ivs.iter().flat_map(|i| i.main.iter().cloned()).collect();
        let (basis, mut out): (Vec<MultiPoly>, Vec<MultiPoly>) =
            square_free_basis(&all_main).into_iter().partition(|b| b.main_var() == Some(v));
        for iv in ivs {
            out.extend(iv.down.iter().cloned());
        }
        for b in &basis {
            if self.tower.fiber_vanishes(b) {
                return Err(self.nullified(b));
            }
            if b.degree(v) >= 2 {
                out.push(discriminant(b, v).expect("positive degree"));
            }
            for coef in b.coeffs(v) {
                let nonzero = self.tower.sign(&coef) != Sign::Zero;
                out.push(coef);
                if nonzero {
                    break;
                }
            }
        }
        let mut parts: Vec<(Vec<&MultiPoly>, Vec<&MultiPoly>, Vec<&MultiPoly>)> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            let p: Vec<&MultiPoly> =
                basis.iter().filter(|b| iv.main.iter().any(|m| m.div_exact(b).is_some())).collect();
            let mut at = |end: &End<FiberValue>| -> Vec<&MultiPoly> {
                match end.value() {
                    None => Vec::new(),
                    Some(x) => p.iter().copied().filter(|b| self.tower.fiber_sign(b, x) == Sign::Zero).collect(),
                }
            };
            let l = at(&iv.lower);
            let u = at(&iv.upper);
            parts.push((p, l, u));
        }
        let mut pairs: BTreeSet<(&MultiPoly, &MultiPoly)> = BTreeSet::new();
        for (p, l, u) in &parts {
            for &b in l.iter().chain(u) {
                for &c in p {
                    pairs.insert(ordered(b, c));
                }
            }
        }
        for w in parts.windows(2) {
            for &b in &w[0].2 {
                for &c in &w[1].1 {
                    pairs.insert(ordered(b, c));
                }
            }
        }
        for (b, c) in pairs {
            if b != c {
                out.push(resultant(b, c, v).expect("positive degree"));
            }
        }
        Ok(square_free_basis(&out))
    }

    /// The interval around `s` on which `polys` keep their signs, with the
    /// pruned covering above `s` as its children.
    fn generalize(
        &mut self,
        s: FiberValue,
        polys: Vec<MultiPoly>,
        children: Vec<Interval>,
    ) -> Result<Interval, NullificationError> {
        let v = self.var();
        let (main, down): (Vec<MultiPoly>, Vec<MultiPoly>) = polys.into_iter().partition(|p| p.main_var() == Some(v));
        let mut below: Option<FiberValue> = None;
        let mut above: Option<FiberValue> = None;
        let mut on_sample = false;
        for p in &main {
            let Some(roots) = self.tower.fiber_roots(p) else {
                return Err(self.nullified(p));
            };
            for r in roots {
                match self.tower.fiber_cmp(&r, &s) {
                    Ordering::Less => {
                        if below.as_ref().map_or(true, |b| self.tower.fiber_cmp(&r, b) == Ordering::Greater) {
                            below = Some(r);
                        }
                    }
                    Ordering::Equal => on_sample = true,
                    Ordering::Greater => {
                        if above.as_ref().map_or(true, |a| self.tower.fiber_cmp(&r, a) == Ordering::Less) {
                            above = Some(r);
                        }
                    }
                }
            }
        }
        let (lower, upper) = if on_sample {
            (End::Finite { value: s.clone(), closed: true }, End::Finite { value: s.clone(), closed: true })
        } else {
            let open = |x: Option<FiberValue>| x.map_or(End::Infinite, |value| End::Finite { value, closed: false });
            (open(below), open(above))
        };
        let child_certs: Vec<CoveringInterval> = children.into_iter().map(|c| c.cert).collect();
        let cert = CoveringInterval {
            lower: self.bound(&lower),
            upper: self.bound(&upper),
            sample: self.number(&s),
            reasons: union_reasons(&child_certs),
            characterization: main.clone(),
            children: Some(child_certs),
        };
        Ok(Interval { lower, upper, main, down, cert })
    }
}

/// A point of the line not covered by `spans`: the smallest uncovered
/// interval end if there is one, else a dyadic rational in the leftmost gap.
fn outside(tower: &mut Tower, spans: &[Span<FiberValue>]) -> Option<FiberValue> {
    let holes = gaps(spans, &mut |a, b| tower.fiber_cmp(a, b));
    for g in &holes {
        for end in [&g.lower, &g.upper] {
            if let End::Finite { value, closed: true } = end {
                return Some(value.clone());
            }
        }
    }
    let g = holes.first()?;
    let q = dyadic_between(g.lower.value(), g.upper.value(), &mut FiberOps(tower)).expect("an open gap is nonempty");
    Some(FiberValue::Rational(q))
}

/// A point outside every interval of one level, `None` when they cover the
/// whole line.
pub fn sample_outside(intervals: &[CoveringInterval]) -> Option<RealAlgebraicNumber> {
    let mut tower = Tower::new(&VarOrder::new(["t"]));
    let end = |tower: &Tower, b: &Bound| match b {
        End::Infinite => End::Infinite,
        End::Finite { value, closed } => End::Finite { value: tower.fiber_from_number(value), closed: *closed },
    };
    let spans: Vec<Span<FiberValue>> =
        intervals.iter().map(|i| Span { lower: end(&tower, &i.lower), upper: end(&tower, &i.upper) }).collect();
    let v = outside(&mut tower, &spans)?;
    Some(tower.fiber_to_number(&v))
}

fn ordered<'a>(a: &'a MultiPoly, b: &'a MultiPoly) -> (&'a MultiPoly, &'a MultiPoly) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::testing::*;
    use crate::arith::rational::{int, rat};
    use crate::certificate::check;
    use crate::formula::Relation;

    fn formula(polys: Vec<MultiPoly>) -> Formula {
        let o = polys[0].order().clone();
        let cs = polys.into_iter().enumerate().map(|(i, p)| Constraint::new(i + 1, p, Relation::Lt).unwrap());
        Formula::new(o, cs.collect()).unwrap()
    }

    fn top_level(cert: &Certificate) -> Vec<(String, String, Vec<usize>)> {
        let end = |b: &Bound, inf: &str| match b {
            End::Infinite => inf.to_string(),
            End::Finite { value, closed } => format!("{}{}", value, if *closed { "c" } else { "o" }),
        };
        cert.covering.iter().map(|i| (end(&i.lower, "-inf"), end(&i.upper, "+inf"), i.reasons.clone())).collect()
    }

    #[test]
    fn example1_is_refuted_by_two_intervals() {
        let o = xy();
        let f = formula(vec![circle(&o, int(0), int(0)), circle(&o, int(4), int(0))]);
        let Outcome::Unsat(cert) = decide(&f) else { panic!("expected unsat") };
        assert!(check(&cert, &f).is_valid(), "{}", check(&cert, &f));
        let pruned = prune_certificate(&cert);
        assert_eq!(
            top_level(&pruned),
            vec![("-inf".into(), "3/1o".into(), vec![2]), ("1/1o".into(), "+inf".into(), vec![1])]
        );
        assert!(check(&pruned, &f).is_valid());
    }

    #[test]
    fn example2_is_refuted_by_five_intervals() {
        let o = xy();
        let f = formula(vec![circle(&o, int(0), int(0)), circle(&o, rat(3, 2), rat(3, 2))]);
        let Outcome::Unsat(cert) = decide(&f) else { panic!("expected unsat") };
        assert!(check(&cert, &f).is_valid(), "{}", check(&cert, &f));
        let pruned = prune_certificate(&cert);
        assert_eq!(
            top_level(&pruned),
            vec![
                ("-inf".into(), "1/2o".into(), vec![2]),
                ("1/2c".into(), "1/2c".into(), vec![2]),
                ("1/2o".into(), "1/1o".into(), vec![1, 2]),
                ("1/1c".into(), "1/1c".into(), vec![1]),
                ("1/1o".into(), "+inf".into(), vec![1]),
            ]
        );
        assert!(check(&pruned, &f).is_valid());
    }

    #[test]
    fn example2_conflicts_above_three_quarters() {
        let o = xy();
        let f = formula(vec![circle(&o, int(0), int(0)), circle(&o, rat(3, 2), rat(3, 2))]);
        let ivs = unsat_intervals(&f, &[RealAlgebraicNumber::Rational(rat(3, 4))]);
        let c1: Vec<String> = ivs
            .iter()
            .filter(|i| i.reasons == [1])
            .map(|i| {
                format!(
                    "{:?} {:?}",
                    i.lower.value().map(|v| v.format_in("y")),
                    i.upper.value().map(|v| v.format_in("y"))
                )
            })
            .collect();
        assert_eq!(
            c1,
            [
                "None Some(\"1_RootOf(16*y^2 - 7, y)\")".to_string(),
                "Some(\"2_RootOf(16*y^2 - 7, y)\") None".to_string()
            ]
        );
        assert!(ivs.iter().filter(|i| i.reasons == [1]).all(|i| i.lower.is_closed() || i.upper.is_closed()));
    }

    #[test]
    fn finds_a_witness() {
        let o = xy();
        let f = Formula::new(
            o.clone(),
            vec![
                Constraint::new(1, circle(&o, int(0), int(0)), Relation::Eq).unwrap(),
                Constraint::new(2, &x(&o) - &y(&o), Relation::Eq).unwrap(),
            ],
        )
        .unwrap();
        let Outcome::Sat(w) = decide(&f) else { panic!("expected sat") };
        let mut t = Tower::from_sample(&o, &w);
        for c in f.constraints() {
            assert!(c.holds(t.sign(&c.poly)));
        }
    }
}
