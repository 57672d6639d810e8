//! Exact values of `l(n)` and `l*(n)` by exhaustive enumeration.

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::solvers::{decompose_into_transversals, has_transversal};
use crate::square::Square;

use super::enumerate::{enumerate, EnumerationConfig};

#[derive(Debug, Clone, Default)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LNumberResult {
    pub n: usize,
    /// Reported value, never below `n`.
    pub value: usize,
    /// One more than the largest symbol count of a bad square, or 1 when
    /// there is none.
    pub raw_value: usize,
    /// A bad square with `raw_value - 1` symbols.
    pub witness: Option<Square>,
    pub exhaustive: bool,
    pub classes: usize,
    pub nodes: u64,
}

/// Least symbol count forcing a transversal; bad squares are the
/// transversal-free ones.
pub fn compute_l(n: usize, limits: &SearchLimits) -> Result<LNumberResult> {
    extremal_count(n, limits, |sq| !has_transversal(sq))
}

/// Least symbol count forcing a decomposition into `n` disjoint
/// transversals.
pub fn compute_l_star(n: usize, limits: &SearchLimits) -> Result<LNumberResult> {
    extremal_count(n, limits, |sq| !decompose_into_transversals(sq).is_found())
}

fn extremal_count(n: usize, limits: &SearchLimits, bad: impl Fn(&Square) -> bool) -> Result<LNumberResult> {
    let cfg = EnumerationConfig {
        max_nodes: limits.max_nodes,
        deadline: limits.deadline,
        jobs: limits.jobs,
        ..EnumerationConfig::new(n)
    };
    let res = enumerate(&cfg, None)?;
    let mut by_count: Vec<&Square> = res.squares.iter().collect();
    // Most symbols first; ties keep the enumeration order.
    by_count.sort_by_key(|s| std::cmp::Reverse(s.symbol_count()));
    let witness = by_count.into_iter().find(|s| bad(s)).cloned();
    let raw_value = witness.as_ref().map_or(1, |w| w.symbol_count() + 1);
    Ok(LNumberResult {
        n,
        value: raw_value.max(n),
        raw_value,
        witness,
        exhaustive: res.complete,
        classes: res.squares.len(),
        nodes: res.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_l_values() {
        let l = |n| compute_l(n, &SearchLimits::default()).unwrap();
        let l1 = l(1);
        assert_eq!((l1.value, l1.witness.is_none(), l1.exhaustive), (1, true, true));
        let l2 = l(2);
        assert_eq!(l2.value, 3);
        assert_eq!(l2.witness.unwrap().symbol_count(), 2);
        let l3 = l(3);
        assert_eq!((l3.value, l3.raw_value), (3, 1));
        assert!(l3.witness.is_none());
    }

    #[test]
    fn small_l_star_values() {
        let l = |n| compute_l_star(n, &SearchLimits::default()).unwrap();
        assert_eq!(l(1).value, 1);
        let l2 = l(2);
        assert_eq!(l2.value, 4);
        assert_eq!(l2.witness.unwrap().symbol_count(), 3);
    }
}
