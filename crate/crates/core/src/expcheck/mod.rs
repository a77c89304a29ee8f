//! Regression corpus of worked examples and randomized property search.

mod cases;
mod properties;
mod search;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

pub use cases::{paper_cases, CaseReport, Check, CheckOutcome, PaperCase, Side};
pub use properties::{
    check_instance, first_strategy, refutes, table, table_entry, Cell, Direction, Instance, Position, PropertyId,
    TableEntry, Theorem,
};
pub use search::{
    random_network, random_phenotype, random_rule, sample_instance, search_counterexample, verify_counterexample,
    CounterExample, DEFAULT_DEPTH, MAX_SEARCH_ARITY,
};

/// Table cell that never holds, with the passing cases that refute it.
#[derive(Clone, Debug, Serialize)]
pub struct CellCoverage {
    pub cell: PropertyId,
    pub cited: &'static str,
    pub refuted_by: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub cases: Vec<CaseReport>,
    pub cells: Vec<CellCoverage>,
}

impl SuiteReport {
    pub fn failed_cases(&self) -> Vec<&'static str> {
        self.cases.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }

    pub fn uncovered_cells(&self) -> Vec<String> {
        self.cells
            .iter()
            .filter(|c| c.refuted_by.is_empty())
            .map(|c| c.cell.to_string())
            .collect()
    }
}

/// Runs every embedded case and checks that each refutable cell has a case.
pub fn run_paper_suite() -> Result<SuiteReport> {
    let cases: Vec<CaseReport> = paper_cases().par_iter().map(|c| c.run()).collect::<Result<_>>()?;
    let cells: Vec<CellCoverage> = table()
        .into_iter()
        .filter(|e| !e.holds)
        .map(|e| {
            let cell = PropertyId::Cell(e.cell);
            let label = format!("refutes {cell}");
            let refuted_by = cases
                .iter()
                .filter(|c| c.checks.iter().any(|o| o.passed && o.check == label))
                .map(|c| c.id)
                .collect();
            CellCoverage {
                cell,
                cited: e.source,
                refuted_by,
            }
        })
        .collect();
    let passed = cases.iter().all(|c| c.passed) && cells.iter().all(|c| !c.refuted_by.is_empty());
    Ok(SuiteReport { passed, cases, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = run_paper_suite().unwrap();
        for case in &report.cases {
            for check in case.checks.iter().filter(|c| !c.passed) {
                eprintln!(
                    "{}: {}\n  expected {}\n  computed {}",
                    case.id, check.check, check.expected, check.computed
                );
            }
        }
        assert!(report.failed_cases().is_empty());
        assert!(report.uncovered_cells().is_empty(), "{:?}", report.uncovered_cells());
        assert!(report.passed);
    }

    #[test]
    fn refuted_cells_cite_a_refuting_case() {
        let report = run_paper_suite().unwrap();
        for c in &report.cells {
            assert!(c.refuted_by.contains(&c.cited), "{} cites {}", c.cell, c.cited);
        }
    }
}
