//! Problem input (SMT-LIB2 subset and a line-oriented native format) and
//! the command-line interface.

pub mod cli;
pub mod native;
pub mod smtlib;

use std::collections::BTreeMap;
use std::fmt;

use crate::formula::{Formula, FormulaError};

pub use native::{parse_native, to_native};
pub use smtlib::parse_smtlib;

/// 1-based position in the input text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedProblem {
    /// Declaration order, which is also the default variable order.
    pub variables: Vec<String>,
    pub formula: Formula,
    /// Where each constraint (by id) came from.
    pub source_spans: BTreeMap<usize, Location>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("{at}: unsupported feature: {feature}")]
    UnsupportedFeature { at: Location, feature: String },
    #[error("{at}: unknown symbol `{name}`")]
    UnknownSymbol { at: Location, name: String },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Chooses the parser from the file extension, or from the first
/// significant character when the extension is not recognized.
pub fn parse_problem(path: &std::path::Path, text: &str) -> Result<ParsedProblem, ParseError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("smt2") | Some("smt") => parse_smtlib(text),
        Some("nra") => parse_native(text),
        _ => {
            let first =
                text.lines().map(str::trim_start).find(|l| !l.is_empty() && !l.starts_with(';') && !l.starts_with('#'));
            if first.is_some_and(|l| l.starts_with('(')) {
                parse_smtlib(text)
            } else {
                parse_native(text)
            }
        }
    }
}
