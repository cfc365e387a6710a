//! Full cylindrical algebraic decomposition: projection, base phase and
//! lifting. Serves as the reference decision procedure.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::{discriminant, resultant, square_free_basis, ArithError, MultiPoly, VarOrder, Variable};
use crate::formula::Formula;
use crate::realroots::line::dyadic_between;
use crate::realroots::tower::{FiberOps, FiberValue, Tower};
use crate::realroots::{isolate_roots, IndexedRoot, RealAlgebraicNumber};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    Section,
    Sector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CellBound {
    NegInf,
    PosInf,
    At(IndexedRoot),
}

/// A cell of the decomposition of the first `level` variables. Sections
/// have equal lower and upper bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub level: usize,
    pub kind: CellKind,
    pub lower: CellBound,
    pub upper: CellBound,
    pub sample: Vec<RealAlgebraicNumber>,
    /// Number of sector coordinates along the path from the root.
    pub dimension: usize,
    pub children: Vec<Cell>,
}

/// A polynomial of the projection vanished identically over a cell of
/// positive dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullificationError {
    pub poly: MultiPoly,
    pub sample: Vec<RealAlgebraicNumber>,
}

impl fmt::Display for NullificationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vanishes identically over the cell with sample ", self.poly)?;
        write_sample(f, self.poly.order(), &self.sample)
    }
}

impl std::error::Error for NullificationError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CadError {
    #[error("nullification: {0}")]
    Nullification(#[from] NullificationError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// One projection step: eliminates `v` from `polys`, whose variables must
/// all be at most `v`. Polynomials free of `v` pass through. The result is
/// normalized, sorted and free of constants and duplicates.
pub fn project(polys: &[MultiPoly], v: Variable) -> Vec<MultiPoly> {
    let basis = square_free_basis(polys);
    let (main, mut out): (Vec<MultiPoly>, Vec<MultiPoly>) = basis.into_iter().partition(|p| p.main_var() == Some(v));
    for (i, p) in main.iter().enumerate() {
        if p.degree(v) >= 2 {
            out.push(discriminant(p, v).expect("positive degree"));
        }
        out.extend(p.coeffs_in(v));
        for q in &main[i + 1..] {
            out.push(resultant(p, q, v).expect("positive degree"));
        }
    }
    tidy(out)
}

fn tidy(polys: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = polys.into_iter().filter(|p| !p.is_constant()).map(|p| p.normalized()).collect();
    out.sort();
    out.dedup();
    out
}

/// Projection factor sets by level: entry `k` holds the square-free basis
/// elements whose main variable is the `k`-th.
pub fn projection_sets(polys: &[MultiPoly], order: &VarOrder) -> Vec<Vec<MultiPoly>> {
    let n = order.len();
    let mut sets = vec![Vec::new(); n];
    let mut current: Vec<MultiPoly> = polys.iter().filter(|p| !p.is_constant()).cloned().collect();
    for k in (0..n).rev() {
        let v = Variable::new(k);
        let basis = square_free_basis(&current);
        let (here, rest): (Vec<MultiPoly>, Vec<MultiPoly>) = basis.into_iter().partition(|p| p.main_var() == Some(v));
        sets[k] = here.clone();
        let mut next = project(&here, v);
        next.extend(rest);
        current = next;
    }
    sets
}

struct Slot {
    kind: CellKind,
    lower: CellBound,
    upper: CellBound,
    value: FiberValue,
}

/// Splits the line above the tower's sample at the real roots of `polys`.
/// Polynomials vanishing identically are skipped when `dimension` is 0.
fn decompose(tower: &mut Tower, polys: &[MultiPoly], dimension: usize) -> Result<Vec<Slot>, CadError> {
    let var = Variable::new(tower.len());
    let mut roots: Vec<(FiberValue, IndexedRoot)> = Vec::new();
    for p in polys {
        match tower.fiber_roots(p) {
            None if dimension == 0 => {}
            None => return Err(NullificationError { poly: p.clone(), sample: tower.sample() }.into()),
            Some(rs) => {
                for (i, r) in rs.into_iter().enumerate() {
                    roots.push((r, IndexedRoot::new(p.clone(), var, i + 1)));
                }
            }
        }
    }
    roots.sort_by(|a, b| tower.fiber_cmp(&a.0, &b.0));
    roots.dedup_by(|b, a| tower.fiber_cmp(&a.0, &b.0) == Ordering::Equal);

    let mut slots = Vec::with_capacity(2 * roots.len() + 1);
    let mut lower: Option<&(FiberValue, IndexedRoot)> = None;
    for r in roots.iter().map(Some).chain(std::iter::once(None)) {
        let q = dyadic_between(lower.map(|l| &l.0), r.map(|u| &u.0), &mut FiberOps(tower)).expect("distinct roots");
        slots.push(Slot {
            kind: CellKind::Sector,
            lower: lower.map_or(CellBound::NegInf, |l| CellBound::At(l.1.clone())),
            upper: r.map_or(CellBound::PosInf, |u| CellBound::At(u.1.clone())),
            value: FiberValue::Rational(q),
        });
        if let Some(r) = r {
            slots.push(Slot {
                kind: CellKind::Section,
                lower: CellBound::At(r.1.clone()),
                upper: CellBound::At(r.1.clone()),
                value: r.0.clone(),
            });
        }
        lower = r;
    }
    Ok(slots)
}

fn cells_from(
    tower: &mut Tower,
    slots: Vec<Slot>,
    parent_sample: &[RealAlgebraicNumber],
    parent_dim: usize,
) -> Vec<Cell> {
    slots
        .into_iter()
        .map(|s| {
            let mut sample = parent_sample.to_vec();
            sample.push(tower.fiber_to_number(&s.value));
            Cell {
                level: parent_sample.len() + 1,
                kind: s.kind,
                lower: s.lower,
                upper: s.upper,
                sample,
                dimension: parent_dim + usize::from(s.kind == CellKind::Sector),
                children: Vec::new(),
            }
        })
        .collect()
}

/// Decomposition of the first variable's line by the roots of `polys`,
/// which must be univariate in it.
pub fn base_phase(order: &VarOrder, polys: &[MultiPoly]) -> Result<Vec<Cell>, CadError> {
    let mut tower = Tower::new(order);
    let slots = decompose(&mut tower, polys, 0)?;
    Ok(cells_from(&mut tower, slots, &[], 0))
}

/// Stack over `parent`: the cylinder split at the roots of `polys`, whose
/// main variable is the one after the parent's.
pub fn lift(order: &VarOrder, parent: &Cell, polys: &[MultiPoly]) -> Result<Vec<Cell>, CadError> {
    let mut tower = Tower::from_sample(order, &parent.sample);
    let slots = decompose(&mut tower, polys, parent.dimension)?;
    Ok(cells_from(&mut tower, slots, &parent.sample, parent.dimension))
}

#[derive(Clone, Debug)]
pub struct Cad {
    order: VarOrder,
    levels: Vec<Vec<MultiPoly>>,
    cells: Vec<Cell>,
}

impl Cad {
    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    /// Projection factors by level.
    pub fn levels(&self) -> &[Vec<MultiPoly>] {
        &self.levels
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Cells of full level, ordered lexicographically by sample.
    pub fn leaves(&self) -> Vec<&Cell> {
        fn walk<'a>(c: &'a Cell, out: &mut Vec<&'a Cell>) {
            if c.children.is_empty() {
                out.push(c);
            }
            for d in &c.children {
                walk(d, out);
            }
        }
        let mut out = Vec::new();
        for c in &self.cells {
            walk(c, &mut out);
        }
        out
    }

    /// One line per leaf cell: the bounds at each level and the sample.
    pub fn cell_lines(&self) -> Vec<String> {
        fn walk(cad: &Cad, c: &Cell, path: &mut Vec<String>, out: &mut Vec<String>) {
            path.push(describe(&cad.order, c));
            if c.children.is_empty() {
                let mut line = format!("level-{}: {} | sample=", c.level, path.join(" ; "));
                line.push_str(&sample_string(&cad.order, &c.sample));
                out.push(line);
            }
            for d in &c.children {
                walk(cad, d, path, out);
            }
            path.pop();
        }
        let mut out = Vec::new();
        for c in &self.cells {
            walk(self, c, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// Decomposes the space of `order` sign-invariantly for `polys`, which may
/// use another variable order with the same names.
pub fn build_cad(polys: &[MultiPoly], order: &VarOrder) -> Result<Cad, CadError> {
    let polys = polys.iter().map(|p| p.reorder(order)).collect::<Result<Vec<_>, _>>()?;
    let levels = projection_sets(&polys, order);
    let mut cells = Vec::new();
    if !order.is_empty() {
        cells = base_phase(order, &levels[0])?;
        for k in 1..order.len() {
            lift_all(order, &mut cells, &levels[k], k)?;
        }
    }
    Ok(Cad { order: order.clone(), levels, cells })
}

fn lift_all(order: &VarOrder, cells: &mut [Cell], polys: &[MultiPoly], level: usize) -> Result<(), CadError> {
    for c in cells {
        if c.level == level {
            c.children = lift(order, c, polys)?;
        } else {
            lift_all(order, &mut c.children, polys, level)?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CadDecision {
    Sat(Vec<RealAlgebraicNumber>),
    Unsat,
}

/// Decides a formula by testing the sample of every leaf cell, in order.
pub fn decide_by_cad(formula: &Formula) -> Result<CadDecision, CadError> {
    let order = formula.order();
    let polys: Vec<MultiPoly> = formula.constraints().iter().map(|c| c.poly.clone()).collect();
    let cad = build_cad(&polys, order)?;
    let samples: Vec<Vec<RealAlgebraicNumber>> =
        if order.is_empty() { vec![Vec::new()] } else { cad.leaves().into_iter().map(|c| c.sample.clone()).collect() };
    for s in samples {
        let mut tower = Tower::from_sample(order, &s);
        if formula.constraints().iter().all(|c| c.holds(tower.sign(&c.poly))) {
            return Ok(CadDecision::Sat(s));
        }
    }
    Ok(CadDecision::Unsat)
}

fn bound_text(order: &VarOrder, b: &CellBound) -> String {
    match b {
        CellBound::NegInf => "-inf".to_string(),
        CellBound::PosInf => "+inf".to_string(),
        CellBound::At(r) => {
            let univariate = (0..order.len()).all(|j| j == r.var.index || !r.poly.involves(Variable::new(j)));
            if univariate {
                let roots = isolate_roots(&r.poly).expect("nonzero univariate polynomial");
                roots[r.index - 1].format_in(order.name(r.var))
            } else {
                r.to_string()
            }
        }
    }
}

fn describe(order: &VarOrder, c: &Cell) -> String {
    let var = order.name(Variable::new(c.level - 1));
    match c.kind {
        CellKind::Section => format!("{} = {}", var, bound_text(order, &c.lower)),
        CellKind::Sector => format!("{} < {} < {}", bound_text(order, &c.lower), var, bound_text(order, &c.upper)),
    }
}

/// `(v1, v2, ...)` with algebraic coordinates written in their variables.
pub fn sample_string(order: &VarOrder, sample: &[RealAlgebraicNumber]) -> String {
    let parts: Vec<String> =
        sample.iter().enumerate().map(|(j, v)| v.format_in(order.name(Variable::new(j)))).collect();
    format!("({})", parts.join(", "))
}

fn write_sample(f: &mut fmt::Formatter<'_>, order: &VarOrder, sample: &[RealAlgebraicNumber]) -> fmt::Result {
    f.write_str(&sample_string(order, sample))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::testing::*;
    use crate::arith::rational::{int, rat};
    use crate::arith::UPoly;

    fn example1(o: &VarOrder) -> Vec<MultiPoly> {
        vec![circle(o, int(0), int(0)), circle(o, int(4), int(0))]
    }

    fn example2(o: &VarOrder) -> Vec<MultiPoly> {
        vec![circle(o, int(0), int(0)), circle(o, rat(3, 2), rat(3, 2))]
    }

    fn base_roots(cad: &Cad) -> Vec<String> {
        cad.cells().iter().filter(|c| c.kind == CellKind::Section).map(|c| c.sample[0].to_string()).collect()
    }

    #[test]
    fn example1_counts() {
        let o = xy();
        let cad = build_cad(&example1(&o), &o).unwrap();
        assert_eq!(base_roots(&cad), ["-1/1", "1/1", "2/1", "3/1", "5/1"]);
        assert_eq!(cad.leaves().len(), 27);
    }

    #[test]
    fn example2_counts() {
        let o = xy();
        let cad = build_cad(&example2(&o), &o).unwrap();
        assert_eq!(cad.cells().len(), 9);
        assert_eq!(cad.leaves().len(), 41);
    }

    #[test]
    fn circle_alone() {
        let o = xy();
        let cad = build_cad(&[circle(&o, int(0), int(0))], &o).unwrap();
        assert_eq!(cad.leaves().len(), 13);
        let lines = cad.cell_lines();
        assert_eq!(lines.len(), 13);
        assert_eq!(lines[0], "level-2: -inf < x < -1/1 ; -inf < y < +inf | sample=(-2/1, 0/1)");
        assert!(
            lines.contains(&"level-2: -1/1 < x < 1/1 ; y = 2_RootOf(y^2 + x^2 - 1, y) | sample=(0/1, 1/1)".to_string())
        );
    }

    #[test]
    fn projection_of_example1() {
        let o = xy();
        let proj = project(&example1(&o), Variable::new(1));
        let univ: Vec<UPoly> = proj.iter().map(|p| UPoly::from_multi(p, Variable::new(0)).unwrap()).collect();
        assert!(univ.contains(&UPoly::from_ints(&[-1, 0, 1])));
        assert!(univ.contains(&UPoly::from_ints(&[15, -8, 1])));
        assert!(univ.contains(&UPoly::from_ints(&[4, -4, 1])));
    }

    #[test]
    fn decides_the_examples() {
        use crate::formula::{Constraint, Relation};
        let o = xy();
        for polys in [example1(&o), example2(&o)] {
            let cs = polys.into_iter().enumerate().map(|(i, p)| Constraint::new(i + 1, p, Relation::Lt).unwrap());
            let f = Formula::new(o.clone(), cs.collect()).unwrap();
            assert_eq!(decide_by_cad(&f).unwrap(), CadDecision::Unsat);
        }
        let f = Formula::new(o.clone(), vec![Constraint::new(1, circle(&o, int(0), int(0)), Relation::Eq).unwrap()])
            .unwrap();
        assert!(matches!(decide_by_cad(&f).unwrap(), CadDecision::Sat(_)));
    }
}
