//! Transversal finders.

pub mod constructive;
pub mod cover;
pub mod decompose;
pub mod exact;
pub mod multiplicity;
pub mod report;

pub use constructive::{
    find_transversal_constructive, find_transversal_constructive_traced, ConstructiveTrace, StepTrace,
};
pub use cover::{cover_full_lines, greedy_partial_transversal, CaseTag, CoverPlan};
pub use decompose::{decompose_into_transversals, Decomposition};
pub use exact::{find_transversal_exact, for_each_transversal, has_transversal, SearchMode};
pub use multiplicity::{rainbow_pm_multiplicity_split, solve_multiplicity_split};
pub use report::{Method, Outcome, SolveReport, SolveReportJson};
