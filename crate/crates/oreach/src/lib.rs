//! Text formats (`.onto`, `.sas`, formulas), their printers, JSON reports
//! and the `oreach` command-line driver on top of `oreach-core`.

pub mod cli;
pub mod formula;
pub mod lexer;
pub mod onto;
pub mod parallel;
pub mod print;
pub mod report;
pub mod sas;
pub mod span;

pub use cli::{run, run_with};
pub use formula::{parse_formula, parse_formula_in};
pub use onto::{parse_onto, parse_onto_in, OntoDoc};
pub use print::{print_formula, print_onto, print_sas};
pub use report::TraceReport;
pub use sas::{parse_sas, parse_sas_in, SasDoc};
pub use span::{Diagnostic, SourceSpan};
