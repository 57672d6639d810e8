//! Enumeration up to symmetry, exact `l(n)` and `l*(n)`, generators, the
//! anti-Ramsey reduction and rainbow factor searches.

pub mod antiramsey;
pub mod canonical;
pub mod construct;
pub mod enumerate;
pub mod graph;
pub mod lnumber;
pub mod rainbow;

pub use antiramsey::{antiramsey_reduce, extract_two_factor, TwoFactorExtraction};
pub use canonical::{canonical_form, is_canonical, symmetry_class, SymmetryClass};
pub use construct::{
    all_proper_colorings, circle_factorization, lstar_gap, lstar_gap_cells, proper_coloring, random_gls, shuffle_lines,
    random_latin_square, rng_from_seed, transversal_free_search,
};
pub use enumerate::{enumerate, enumerate_squares, EnumerationConfig, EnumerationResult, PrefixFilter};
pub use graph::EdgeColoredGraph;
pub use lnumber::{compute_l, compute_l_star, LNumberResult, SearchLimits};
pub use rainbow::{rainbow_factor_search, verify_factor, FactorOutcome, FactorSearch};
