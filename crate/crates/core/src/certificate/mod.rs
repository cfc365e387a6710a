//! Unsatisfiability certificates: nested coverings of the line by
//! conflict intervals, their JSON form and an independent checker.

mod check;
mod json;

use std::collections::BTreeSet;

use crate::arith::{MultiPoly, VarOrder};
use crate::formula::{Constraint, Formula};
use crate::realroots::line::End;
use crate::realroots::RealAlgebraicNumber;

pub use check::{check, location_text, Failure, FailureKind, Verdict};
pub use json::CertificateError;

pub const FORMAT_VERSION: u64 = 1;

pub type Bound = End<RealAlgebraicNumber>;

/// An interval of one variable, above the samples of its ancestors, on which
/// the formula is false. A leaf is justified by one of its reasons being
/// false throughout. An interior interval is justified by its children
/// covering the next variable's line above `sample`, together with the
/// characterization polynomials that delimit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringInterval {
    pub lower: Bound,
    pub upper: Bound,
    pub sample: RealAlgebraicNumber,
    /// Constraint ids, sorted and distinct.
    pub reasons: Vec<usize>,
    pub characterization: Vec<MultiPoly>,
    pub children: Option<Vec<CoveringInterval>>,
}

impl CoveringInterval {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    /// Number of intervals in this subtree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().flatten().map(CoveringInterval::size).sum::<usize>()
    }
}

/// Sorted, distinct union of reason sets.
pub fn union_reasons<'a>(intervals: impl IntoIterator<Item = &'a CoveringInterval>) -> Vec<usize> {
    let set: BTreeSet<usize> = intervals.into_iter().flat_map(|i| i.reasons.iter().copied()).collect();
    set.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub order: VarOrder,
    pub constraints: Vec<Constraint>,
    pub covering: Vec<CoveringInterval>,
    pub producer: String,
}

impl Certificate {
    pub fn new(formula: &Formula, covering: Vec<CoveringInterval>) -> Certificate {
        Certificate {
            order: formula.order().clone(),
            constraints: formula.constraints().to_vec(),
            covering,
            producer: format!("cacsat {}", env!("CARGO_PKG_VERSION")),
        }
    }

    /// The formula the certificate claims to refute.
    pub fn formula(&self) -> Result<Formula, crate::formula::FormulaError> {
        Formula::new(self.order.clone(), self.constraints.clone())
    }

    /// Total number of intervals at all levels.
    pub fn size(&self) -> usize {
        self.covering.iter().map(CoveringInterval::size).sum()
    }

    /// Visits every interval with its path of indices from the top level.
    pub fn walk(&self, f: &mut dyn FnMut(&[usize], &CoveringInterval)) {
        fn go(path: &mut Vec<usize>, ivs: &[CoveringInterval], f: &mut dyn FnMut(&[usize], &CoveringInterval)) {
            for (i, iv) in ivs.iter().enumerate() {
                path.push(i);
                f(path, iv);
                if let Some(ch) = &iv.children {
                    go(path, ch, f);
                }
                path.pop();
            }
        }
        go(&mut Vec::new(), &self.covering, f);
    }

    /// The interval at `path`, for edits.
    pub fn interval_mut(&mut self, path: &[usize]) -> Option<&mut CoveringInterval> {
        let (first, rest) = path.split_first()?;
        let mut iv = self.covering.get_mut(*first)?;
        for &i in rest {
            iv = iv.children.as_mut()?.get_mut(i)?;
        }
        Some(iv)
    }

    /// The covering containing the interval at `path`.
    pub fn covering_mut(&mut self, path: &[usize]) -> Option<&mut Vec<CoveringInterval>> {
        match path.split_last() {
            None => None,
            Some((_, [])) => Some(&mut self.covering),
            Some((_, parent)) => self.interval_mut(parent)?.children.as_mut(),
        }
    }
}
