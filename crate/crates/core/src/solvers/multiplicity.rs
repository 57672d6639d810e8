use std::time::Instant;

use crate::error::{Error, Result};
use crate::matching::regular_bipartite_pm;
use crate::square::{CellRef, Square};
use crate::stats::compute_stats;
use crate::transversal::{is_transversal, Transversal};

use super::report::{Method, Outcome, SolveReport};

/// Transversal of a square whose symbols all have multiplicity 1 or `n`,
/// with both values present.
///
/// A symbol of multiplicity `n` occupies a permutation matrix. Removing the
/// `r` such symbols leaves an `(n - r)`-regular bipartite graph of singleton
/// cells, and any perfect matching of it is a transversal.
pub fn rainbow_pm_multiplicity_split(square: &Square) -> Result<Transversal> {
    let n = square.n();
    let stats = compute_stats(square);
    if let Some((id, &m)) = stats.occ.iter().enumerate().find(|(_, &m)| m != 1 && m != n) {
        return Err(Error::PreconditionViolated(format!(
            "symbol {} has multiplicity {m}, expected 1 or {n}",
            square.label(id as u32)
        )));
    }
    let full = stats.occ.iter().filter(|&&m| m == n).count();
    let single = stats.occ.iter().filter(|&&m| m == 1).count();
    if n == 1 || full == 0 || single == 0 {
        return Err(Error::PreconditionViolated(
            "both multiplicities 1 and n must occur".into(),
        ));
    }

    let adj: Vec<Vec<usize>> = (0..n)
        .map(|r| (0..n).filter(|&c| stats.is_singleton_at(square, r, c)).collect())
        .collect();
    let pm = regular_bipartite_pm(&adj).map_err(|e| match e {
        Error::NotRegular(msg) => {
            Error::AssertionFailure(format!("singleton cells are not regular: {msg}"))
        }
        other => other,
    })?;
    let t = Transversal::new(pm.iter().enumerate().map(|(r, &c)| CellRef::new(r, c)).collect());
    if !is_transversal(square, &t) {
        return Err(Error::AssertionFailure("matching of singletons is not rainbow".into()));
    }
    Ok(t)
}

/// [`rainbow_pm_multiplicity_split`] wrapped in a [`SolveReport`].
pub fn solve_multiplicity_split(square: &Square) -> Result<SolveReport> {
    let start = Instant::now();
    let t = rainbow_pm_multiplicity_split(square)?;
    Ok(SolveReport {
        outcome: Outcome::Found(t),
        method: Method::MultSplit,
        node_count: 1,
        elapsed: start.elapsed(),
        count: None,
        all: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_full_symbol_and_six_singletons() {
        let sq = Square::new(&[vec![9, 1, 2], vec![3, 9, 4], vec![5, 6, 9]]).unwrap();
        let t = rainbow_pm_multiplicity_split(&sq).unwrap();
        assert!(is_transversal(&sq, &t));
        assert!(!t.symbols(&sq).contains(&9));
    }

    #[test]
    fn latin_square_rejected() {
        assert!(matches!(
            rainbow_pm_multiplicity_split(&Square::cyclic(3)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn all_distinct_rejected() {
        let sq = Square::from_flat(3, (0..9).collect()).unwrap();
        assert!(matches!(
            rainbow_pm_multiplicity_split(&sq),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn intermediate_multiplicity_rejected() {
        let sq = Square::new(&[vec![0, 1, 2], vec![3, 0, 4], vec![5, 6, 7]]).unwrap();
        assert!(matches!(
            rainbow_pm_multiplicity_split(&sq),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
