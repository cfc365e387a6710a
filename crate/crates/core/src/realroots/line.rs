//! Unions of intervals on the real line and simple rationals inside gaps.
//!
//! Endpoint values are opaque: callers supply exact comparisons, so the same
//! sweep serves rational, algebraic and fiber-relative endpoints.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::arith::rational::pow2;
use crate::arith::BigRational;

/// One end of an interval. `Finite` carries whether the value itself
/// belongs to the interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum End<T> {
    Infinite,
    Finite { value: T, closed: bool },
}

impl<T> End<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            End::Infinite => None,
            End::Finite { value, .. } => Some(value),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, End::Finite { closed: true, .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span<T> {
    pub lower: End<T>,
    pub upper: End<T>,
}

/// An uncovered region. Finite ends that are `closed` belong to the gap.
pub type Gap<T> = Span<T>;

/// Compares lower ends: -inf first, and at equal values closed before open.
pub fn cmp_lower<T>(a: &End<T>, b: &End<T>, cmp: &mut dyn FnMut(&T, &T) -> Ordering) -> Ordering {
    match (a, b) {
        (End::Infinite, End::Infinite) => Ordering::Equal,
        (End::Infinite, _) => Ordering::Less,
        (_, End::Infinite) => Ordering::Greater,
        (End::Finite { value: x, closed: cx }, End::Finite { value: y, closed: cy }) => {
            cmp(x, y).then_with(|| cy.cmp(cx))
        }
    }
}

/// Compares upper ends: +inf last, and at equal values open before closed.
pub fn cmp_upper<T>(a: &End<T>, b: &End<T>, cmp: &mut dyn FnMut(&T, &T) -> Ordering) -> Ordering {
    match (a, b) {
        (End::Infinite, End::Infinite) => Ordering::Equal,
        (End::Infinite, _) => Ordering::Greater,
        (_, End::Infinite) => Ordering::Less,
        (End::Finite { value: x, closed: cx }, End::Finite { value: y, closed: cy }) => {
            cmp(x, y).then_with(|| cx.cmp(cy))
        }
    }
}

/// Indices of `spans` sorted by lower end, then by upper end (widest first).
pub fn sorted_indices<T>(spans: &[Span<T>], cmp: &mut dyn FnMut(&T, &T) -> Ordering) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..spans.len()).collect();
    idx.sort_by(|&i, &j| {
        cmp_lower(&spans[i].lower, &spans[j].lower, cmp)
            .then_with(|| cmp_upper(&spans[j].upper, &spans[i].upper, cmp))
            .then(i.cmp(&j))
    });
    idx
}

/// The uncovered parts of the line, left to right.
pub fn gaps<T: Clone>(spans: &[Span<T>], cmp: &mut dyn FnMut(&T, &T) -> Ordering) -> Vec<Gap<T>> {
    let order = sorted_indices(spans, cmp);
    let mut out = Vec::new();
    // `reach` is the upper end of the covered prefix; `None` means nothing
    // is covered yet, not even -inf.
    let mut reach: Option<End<T>> = None;
    for &i in &order {
        let s = &spans[i];
        match (&reach, &s.lower) {
            (None, End::Infinite) => {}
            (None, End::Finite { value, closed }) => {
                out.push(Span { lower: End::Infinite, upper: End::Finite { value: value.clone(), closed: !closed } })
            }
            (Some(End::Infinite), _) => break,
            (Some(End::Finite { .. }), End::Infinite) => {}
            (Some(End::Finite { value: r, closed: rc }), End::Finite { value: l, closed: lc }) => match cmp(r, l) {
                Ordering::Less => out.push(Span {
                    lower: End::Finite { value: r.clone(), closed: !rc },
                    upper: End::Finite { value: l.clone(), closed: !lc },
                }),
                Ordering::Equal if !rc && !lc => out.push(Span {
                    lower: End::Finite { value: r.clone(), closed: true },
                    upper: End::Finite { value: l.clone(), closed: true },
                }),
                _ => {}
            },
        }
        reach = Some(match reach.take() {
            None => s.upper.clone(),
            Some(r) => {
                if cmp_upper(&s.upper, &r, cmp) == Ordering::Greater {
                    s.upper.clone()
                } else {
                    r
                }
            }
        });
    }
    match reach {
        None => out.push(Span { lower: End::Infinite, upper: End::Infinite }),
        Some(End::Infinite) => {}
        Some(End::Finite { value, closed }) => {
            out.push(Span { lower: End::Finite { value, closed: !closed }, upper: End::Infinite })
        }
    }
    out
}

/// Whether a span starting at `lower` continues a covered prefix ending at
/// `reach` (`None`: nothing covered yet).
fn connects<T>(lower: &End<T>, reach: Option<&End<T>>, cmp: &mut dyn FnMut(&T, &T) -> Ordering) -> bool {
    match (reach, lower) {
        (None, l) => matches!(l, End::Infinite),
        (Some(_), End::Infinite) => true,
        (Some(End::Infinite), _) => true,
        (Some(End::Finite { value: r, closed: rc }), End::Finite { value: l, closed: lc }) => match cmp(l, r) {
            Ordering::Less => true,
            Ordering::Equal => *rc || *lc,
            Ordering::Greater => false,
        },
    }
}

/// A covering of the line by few spans: starting from -inf, repeatedly the
/// connecting span reaching furthest (the earliest in sorted order on
/// ties). Returns indices in left-to-right order, or `None` if the spans
/// leave a gap.
pub fn greedy_cover<T>(spans: &[Span<T>], cmp: &mut dyn FnMut(&T, &T) -> Ordering) -> Option<Vec<usize>> {
    let order = sorted_indices(spans, cmp);
    let mut chosen = Vec::new();
    let mut reach: Option<&End<T>> = None;
    let mut pos = 0;
    while !matches!(reach, Some(End::Infinite)) {
        let mut best: Option<usize> = None;
        while pos < order.len() && connects(&spans[order[pos]].lower, reach, cmp) {
            let i = order[pos];
            if best.map_or(true, |b| cmp_upper(&spans[i].upper, &spans[b].upper, cmp) == Ordering::Greater) {
                best = Some(i);
            }
            pos += 1;
        }
        let b = best?;
        if let Some(r) = reach {
            if cmp_upper(&spans[b].upper, r, cmp) != Ordering::Greater {
                return None;
            }
        }
        chosen.push(b);
        reach = Some(&spans[b].upper);
    }
    Some(chosen)
}

/// Whether a gap is a single point.
pub fn is_point<T>(gap: &Gap<T>, cmp: &mut dyn FnMut(&T, &T) -> Ordering) -> bool {
    match (&gap.lower, &gap.upper) {
        (End::Finite { value: a, .. }, End::Finite { value: b, .. }) => cmp(a, b) == Ordering::Equal,
        _ => false,
    }
}

/// Exact comparisons of an opaque value against rationals.
pub trait RationalBounds<T> {
    fn cmp(&mut self, a: &T, b: &T) -> Ordering;
    /// Ordering of `value` relative to `q`.
    fn cmp_rational(&mut self, value: &T, q: &BigRational) -> Ordering;
    /// Rationals `lo <= value <= hi` with `hi - lo <= max_width`.
    fn enclosure(&mut self, value: &T, max_width: &BigRational) -> (BigRational, BigRational);
}

/// The simplest dyadic rational strictly between two bounds: an integer of
/// least magnitude if there is one, otherwise the least power-of-two
/// denominator and, for it, the numerator closest to zero.
/// Returns `None` if the open interval is empty.
pub fn dyadic_between<T>(lower: Option<&T>, upper: Option<&T>, ops: &mut dyn RationalBounds<T>) -> Option<BigRational> {
    let zero = BigRational::zero();
    let above_zero = lower.map(|l| ops.cmp_rational(l, &zero) != Ordering::Less);
    let below_zero = upper.map(|u| ops.cmp_rational(u, &zero) != Ordering::Greater);
    if let (Some(l), Some(u)) = (lower, upper) {
        if ops.cmp(l, u) != Ordering::Less {
            return None;
        }
    }
    if above_zero == Some(true) {
        let l = lower.unwrap();
        let mut k = 0u32;
        loop {
            let scale = pow2(k);
            let (llo, _) = ops.enclosure(l, &scale.recip());
            let mut m = (&llo * &scale).floor();
            let mut q = &m / &scale;
            while ops.cmp_rational(l, &q) != Ordering::Less {
                m += BigRational::one();
                q = &m / &scale;
            }
            if upper.map_or(true, |u| ops.cmp_rational(u, &q) == Ordering::Greater) {
                return Some(q);
            }
            k += 1;
        }
    }
    if below_zero == Some(true) {
        let u = upper.unwrap();
        let mut k = 0u32;
        loop {
            let scale = pow2(k);
            let (_, uhi) = ops.enclosure(u, &scale.recip());
            let mut m = (&uhi * &scale).ceil();
            let mut q = &m / &scale;
            while ops.cmp_rational(u, &q) != Ordering::Greater {
                m -= BigRational::one();
                q = &m / &scale;
            }
            if lower.map_or(true, |l| ops.cmp_rational(l, &q) == Ordering::Less) {
                return Some(q);
            }
            k += 1;
        }
    }
    Some(zero)
}

/// Rational bounds, for tests and rational-only callers.
pub struct Exact;

impl RationalBounds<BigRational> for Exact {
    fn cmp(&mut self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }

    fn cmp_rational(&mut self, value: &BigRational, q: &BigRational) -> Ordering {
        value.cmp(q)
    }

    fn enclosure(&mut self, value: &BigRational, _max_width: &BigRational) -> (BigRational, BigRational) {
        (value.clone(), value.clone())
    }
}

pub fn dyadic_between_rationals(lower: Option<&BigRational>, upper: Option<&BigRational>) -> Option<BigRational> {
    dyadic_between(lower, upper, &mut Exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn between(a: Option<BigRational>, b: Option<BigRational>) -> Option<BigRational> {
        dyadic_between_rationals(a.as_ref(), b.as_ref())
    }

    #[test]
    fn picks_the_samples_used_in_the_worked_examples() {
        assert_eq!(between(None, Some(int(-1))), Some(int(-2)));
        assert_eq!(between(Some(rat(1, 2)), Some(int(1))), Some(rat(3, 4)));
        assert_eq!(between(Some(int(-1)), None), Some(int(0)));
        assert_eq!(between(None, None), Some(int(0)));
        assert_eq!(between(Some(rat(1, 2)), None), Some(int(1)));
        assert_eq!(between(Some(int(1)), None), Some(int(2)));
    }

    #[test]
    fn dyadic_choices() {
        assert_eq!(between(Some(int(0)), Some(int(1))), Some(rat(1, 2)));
        assert_eq!(between(Some(int(-1)), Some(int(0))), Some(rat(-1, 2)));
        assert_eq!(between(None, Some(int(0))), Some(int(-1)));
        assert_eq!(between(Some(rat(1, 3)), Some(rat(2, 5))), Some(rat(3, 8)));
        assert_eq!(between(Some(int(1)), Some(int(1))), None);
        assert_eq!(between(Some(int(2)), Some(int(1))), None);
    }

    fn closed(v: i64) -> End<BigRational> {
        End::Finite { value: int(v), closed: true }
    }

    fn open(v: i64) -> End<BigRational> {
        End::Finite { value: int(v), closed: false }
    }

    fn gaps_of(spans: &[Span<BigRational>]) -> Vec<Gap<BigRational>> {
        gaps(spans, &mut |a: &BigRational, b: &BigRational| a.cmp(b))
    }

    #[test]
    fn closed_half_lines_cover() {
        let spans = [Span { lower: End::Infinite, upper: closed(0) }, Span { lower: closed(0), upper: End::Infinite }];
        assert!(gaps_of(&spans).is_empty());
    }

    #[test]
    fn open_meeting_leaves_a_point() {
        let spans = [Span { lower: End::Infinite, upper: open(0) }, Span { lower: open(0), upper: End::Infinite }];
        let g = gaps_of(&spans);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0], Span { lower: closed(0), upper: closed(0) });
    }

    #[test]
    fn greedy_cover_of_the_second_example() {
        let spans = [
            Span { lower: End::Infinite, upper: open(1) },
            Span { lower: closed(1), upper: closed(1) },
            Span { lower: closed(2), upper: closed(2) },
            Span { lower: open(1), upper: open(2) },
            Span { lower: open(2), upper: End::Infinite },
            Span { lower: open(0), upper: open(2) },
        ];
        let mut cmp = |a: &BigRational, b: &BigRational| a.cmp(b);
        assert_eq!(greedy_cover(&spans, &mut cmp), Some(vec![0, 5, 2, 4]));
        assert_eq!(greedy_cover(&spans[..4], &mut cmp), None);
        assert_eq!(greedy_cover(&spans[1..], &mut cmp), None);
    }

    #[test]
    fn reports_gaps_in_order() {
        let spans = [Span { lower: open(1), upper: closed(2) }, Span { lower: End::Infinite, upper: open(-1) }];
        let g = gaps_of(&spans);
        assert_eq!(
            g,
            vec![Span { lower: closed(-1), upper: closed(1) }, Span { lower: open(2), upper: End::Infinite },]
        );
        assert_eq!(gaps_of(&[]), vec![Span { lower: End::Infinite, upper: End::Infinite }]);
    }
}
