//! Polynomial sign constraints and their conjunctions.

use std::fmt;
use std::str::FromStr;

use crate::arith::{ArithError, MultiPoly, Sign, VarOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Relation {
    pub const ALL: [Relation; 6] = [Relation::Lt, Relation::Le, Relation::Eq, Relation::Ne, Relation::Ge, Relation::Gt];

    /// Whether `p sigma 0` holds for a value of `p` with this sign.
    pub fn holds(self, s: Sign) -> bool {
        match self {
            Relation::Lt => s == Sign::Neg,
            Relation::Le => s != Sign::Pos,
            Relation::Eq => s == Sign::Zero,
            Relation::Ne => s != Sign::Zero,
            Relation::Ge => s != Sign::Neg,
            Relation::Gt => s == Sign::Pos,
        }
    }

    /// The relation of the negated atom.
    pub fn negate(self) -> Relation {
        match self {
            Relation::Lt => Relation::Ge,
            Relation::Le => Relation::Gt,
            Relation::Eq => Relation::Ne,
            Relation::Ne => Relation::Eq,
            Relation::Ge => Relation::Lt,
            Relation::Gt => Relation::Le,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Relation {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Relation::ALL.into_iter().find(|r| r.symbol() == s).ok_or_else(|| FormulaError::UnknownRelation(s.to_string()))
    }
}

/// `poly relation 0`, identified by `id` in certificates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub id: usize,
    pub poly: MultiPoly,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(id: usize, poly: MultiPoly, relation: Relation) -> Result<Constraint, FormulaError> {
        if poly.is_zero() {
            return Err(FormulaError::ZeroPolynomial(id));
        }
        Ok(Constraint { id, poly, relation })
    }

    /// Level of the constraint: index of its highest variable, 0 if constant.
    pub fn level(&self) -> usize {
        self.poly.main_var().map_or(0, |v| v.index)
    }

    pub fn holds(&self, s: Sign) -> bool {
        self.relation.holds(s)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}: {} {} 0", self.id, self.poly, self.relation)
    }
}

/// A nonempty conjunction of constraints over one variable order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    order: VarOrder,
    constraints: Vec<Constraint>,
}

impl Formula {
    pub fn new(order: VarOrder, constraints: Vec<Constraint>) -> Result<Formula, FormulaError> {
        if constraints.is_empty() {
            return Err(FormulaError::Empty);
        }
        for c in &constraints {
            if c.poly.order() != &order {
                return Err(FormulaError::Arith(ArithError::OrderMismatch));
            }
        }
        Ok(Formula { order, constraints })
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constraint(&self, id: usize) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.id == id)
    }

    /// The same constraints over a permutation of the variables.
    pub fn reorder(&self, order: &VarOrder) -> Result<Formula, FormulaError> {
        let mut names: Vec<&String> = order.names().iter().collect();
        let mut mine: Vec<&String> = self.order.names().iter().collect();
        names.sort();
        mine.sort();
        if names != mine {
            return Err(FormulaError::NotAPermutation);
        }
        let constraints = self
            .constraints
            .iter()
            .map(|c| Ok(Constraint { id: c.id, poly: c.poly.reorder(order)?, relation: c.relation }))
            .collect::<Result<Vec<_>, ArithError>>()?;
        Formula::new(order.clone(), constraints)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str(" /\\ ")?;
            }
            write!(f, "({} {} 0)", c.poly, c.relation)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("a formula needs at least one constraint")]
    Empty,
    #[error("constraint c{0} has the zero polynomial")]
    ZeroPolynomial(usize),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("variable order is not a permutation of the declared variables")]
    NotAPermutation,
    #[error(transparent)]
    Arith(#[from] ArithError),
}
