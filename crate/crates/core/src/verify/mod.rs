//! Sampled verification of inequality chains and identities at a chosen
//! working precision, with JSON/CSV reports.

pub mod checks;
pub mod grid;
pub mod report;
pub mod suites;

pub use checks::{
    catalog_chain_curves, check_best_constants, check_catalog_chain, check_chain,
    check_chain_with_ties, check_identity12, check_steckin_example, check_wilker, guard_for,
    mirrored, steckin_lines, Curve, SteckinLines,
};
pub use grid::{SampleGrid, Spacing, DEFAULT_COUNT};
pub use report::{export_report, CheckKind, ReportFormat, Sample, Verdict, VerifyReport};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteOutcome};
