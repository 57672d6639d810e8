//! Generalized Latin squares: transversal search, sufficiency
//! certificates, decompositions and small extremal computations.
//!
//! A generalized Latin square of order `n` is an `n x n` array in which no
//! symbol repeats within a row or column. A transversal is a choice of one
//! cell per row and column with pairwise distinct symbols.

pub mod bitset;
pub mod bounds;
pub mod error;
pub mod extremal;
pub mod matching;
pub mod solvers;
pub mod square;
pub mod stats;
pub mod transversal;

pub use error::{Error, Result};
pub use square::{validate_square, CellRef, Square, Symbol};
pub use stats::{compute_stats, SymbolStats};
pub use transversal::{is_transversal, verify_partial_transversal, PartialTransversal, Transversal, Violation};
