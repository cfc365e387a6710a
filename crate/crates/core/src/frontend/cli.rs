//! `cacsat` command line. Exit codes: 0 for `sat`, `unsat` and `valid`,
//! 1 for an invalid certificate, 2 for `incomplete`, 3 for usage, I/O and
//! parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::{parse_problem, ParsedProblem};
use crate::arith::VarOrder;
use crate::cad::{build_cad, sample_string};
use crate::certificate::{check, Certificate, CoveringInterval};
use crate::covering::{decide, prune_certificate, Outcome};
use crate::realroots::line::End;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cacsat", version, about = "Exact QF_NRA solving with cylindrical algebraic coverings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a problem; prints `sat` with a witness, `unsat` or `incomplete`.
    Solve {
        file: PathBuf,
        /// Write the unsatisfiability certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Prune the certificate to a small subcovering at every level.
        #[arg(long)]
        pruned: bool,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Check a certificate against a problem; prints `valid` or `invalid: <reason>`.
    Check { cert: PathBuf, file: PathBuf },
    /// Build the full cylindrical algebraic decomposition.
    Cad {
        file: PathBuf,
        /// One line per leaf cell.
        #[arg(long, conflicts_with = "count")]
        list_cells: bool,
        /// Number of leaf cells (the default).
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Write one CSV row per certificate interval.
    DumpCovering {
        cert: PathBuf,
        #[arg(long)]
        csv: PathBuf,
    },
}

#[derive(Args, Debug)]
struct OrderArg {
    /// Variable order, first to last, e.g. `x,y`.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<String>>,
}

struct Failed(String);

type Exit = Result<i32, Failed>;

fn read(path: &Path) -> Result<String, Failed> {
    std::fs::read_to_string(path).map_err(|e| Failed(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failed> {
    std::fs::write(path, text).map_err(|e| Failed(format!("{}: {e}", path.display())))
}

fn load(path: &Path, order: &OrderArg) -> Result<ParsedProblem, Failed> {
    let text = read(path)?;
    let mut p = parse_problem(path, &text).map_err(|e| Failed(format!("{}: {e}", path.display())))?;
    if let Some(names) = &order.order {
        let o = VarOrder::new(names.iter().map(|s| s.trim().to_string()));
        p.formula = p.formula.reorder(&o).map_err(|e| Failed(format!("--order: {e}")))?;
        p.variables = names.clone();
    }
    Ok(p)
}

/// Runs the CLI on `args` (program name first).
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn io(e: std::io::Error) -> Failed {
    Failed(e.to_string())
}

fn run(cmd: Command, out: &mut dyn Write) -> Exit {
    match cmd {
        Command::Solve { file, cert, pruned, order } => {
            let p = load(&file, &order)?;
            match decide(&p.formula) {
                Outcome::Sat(w) => {
                    writeln!(out, "{}", witness_text(p.formula.order(), &w)).map_err(io)?;
                    Ok(EXIT_OK)
                }
                Outcome::Unsat(c) => {
                    writeln!(out, "unsat").map_err(io)?;
                    if let Some(path) = cert {
                        let c = if pruned { prune_certificate(&c) } else { c };
                        write_file(&path, &c.to_json())?;
                    }
                    Ok(EXIT_OK)
                }
                Outcome::Incomplete(e) => {
                    writeln!(out, "incomplete").map_err(io)?;
                    writeln!(out, "reason: {e}").map_err(io)?;
                    Ok(EXIT_INCOMPLETE)
                }
            }
        }
        Command::Check { cert, file } => {
            let c = Certificate::from_json(&read(&cert)?).map_err(|e| Failed(format!("{}: {e}", cert.display())))?;
            let p = load(&file, &OrderArg { order: None })?;
            let v = check(&c, &p.formula);
            writeln!(out, "{v}").map_err(io)?;
            Ok(if v.is_valid() { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Cad { file, list_cells, count: _, order } => {
            let p = load(&file, &order)?;
            let polys: Vec<_> = p.formula.constraints().iter().map(|c| c.poly.clone()).collect();
            match build_cad(&polys, p.formula.order()) {
                Ok(cad) => {
                    if list_cells {
                        for line in cad.cell_lines() {
                            writeln!(out, "{line}").map_err(io)?;
                        }
                    } else {
                        writeln!(out, "{}", cad.leaves().len()).map_err(io)?;
                    }
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(out, "incomplete").map_err(io)?;
                    writeln!(out, "reason: {e}").map_err(io)?;
                    Ok(EXIT_INCOMPLETE)
                }
            }
        }
        Command::DumpCovering { cert, csv } => {
            let c = Certificate::from_json(&read(&cert)?).map_err(|e| Failed(format!("{}: {e}", cert.display())))?;
            write_file(&csv, &covering_csv(&c))?;
            Ok(EXIT_OK)
        }
    }
}

/// Digits after the point in CSV bounds.
const CSV_DIGITS: u32 = 9;

/// One row per interval, depth first: level (from 1), bounds as decimals
/// (`-inf`/`+inf` when unbounded), closedness flags and reasons joined by
/// `;`.
pub fn covering_csv(cert: &Certificate) -> String {
    let mut s = String::from("level,lower,upper,closed_lower,closed_upper,reasons\n");
    fn end(b: &End<crate::realroots::RealAlgebraicNumber>, inf: &str) -> (String, bool) {
        match b {
            End::Infinite => (inf.to_string(), false),
            End::Finite { value, closed } => (value.to_decimal(CSV_DIGITS), *closed),
        }
    }
    cert.walk(&mut |path: &[usize], iv: &CoveringInterval| {
        let (lo, lc) = end(&iv.lower, "-inf");
        let (hi, hc) = end(&iv.upper, "+inf");
        let reasons: Vec<String> = iv.reasons.iter().map(usize::to_string).collect();
        s.push_str(&format!("{},{lo},{hi},{lc},{hc},{}\n", path.len(), reasons.join(";")));
    });
    s
}

/// Witness text as printed by `solve`.
pub fn witness_text(order: &VarOrder, w: &[crate::realroots::RealAlgebraicNumber]) -> String {
    format!("sat ({})={}", order.names().join(","), sample_string(order, w))
}
