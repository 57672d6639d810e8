//! Sufficient conditions for a transversal, evaluated in exact integer
//! arithmetic.
//!
//! * Local lemma certificate: a transversal exists unless some pair of
//!   equal-symbol cells `(i, j)`, `(k, l)` has
//!   `(4/3)^3 (c_i* + c_*j + c_k* + c_*l) > n (n - 1)`, checked here as
//!   `64 w > 27 n (n - 1)`.
//! * Symbol-count corollary: `256 k ≥ 229 n² + 27 n` symbols suffice.
//! * Erdős–Spencer: no symbol appearing more than `n / (4e)` times.
//! * Three quarters: `4 k ≥ 3 n²` symbols suffice.

use serde::Serialize;

use crate::square::{CellRef, Square, Symbol};
use crate::stats::{compute_stats, SymbolStats};

/// Upper bound on `4e` scaled by `10^7`: `4e = 10.873127313...`.
const FOUR_E_UPPER_1E7: u64 = 108_731_274;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonochromaticPair {
    pub first: CellRef,
    pub second: CellRef,
    pub symbol: Symbol,
    pub weight_sum: u64,
    pub mean_weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Lll,
    Corollary,
    ErdosSpencer,
    ThreeQuarters,
    None,
}

/// A witness pair with the two sides of the local lemma comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairWitness {
    /// The two cells, 1-based `[row, col]`.
    pub cells: [[usize; 2]; 2],
    pub symbol: Symbol,
    pub weight_sum: u64,
    /// `64 * weight_sum`.
    pub lhs: u64,
    /// `27 * n * (n - 1)`.
    pub rhs: u64,
}

/// One integer comparison `lhs ≤ rhs` (or `≥`, see `relation`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdCheck {
    pub kind: CertificateKind,
    pub holds: bool,
    pub relation: &'static str,
    pub lhs: u64,
    pub rhs: u64,
    pub observed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub kind: CertificateKind,
    pub certified: bool,
    pub witness: Option<PairWitness>,
    pub thresholds: Vec<ThresholdCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairScan {
    /// Per symbol, only the two occurrences of largest cell weight.
    #[default]
    TopTwo,
    /// Every monochromatic pair.
    Full,
}

fn cell_weight(stats: &SymbolStats, c: CellRef) -> u64 {
    stats.row_weight[c.row] + stats.col_weight[c.col]
}

fn make_pair(square: &Square, stats: &SymbolStats, a: CellRef, b: CellRef) -> MonochromaticPair {
    let (first, second) = if a <= b { (a, b) } else { (b, a) };
    let weight_sum = cell_weight(stats, first) + cell_weight(stats, second);
    MonochromaticPair {
        first,
        second,
        symbol: square.at(first),
        weight_sum,
        mean_weight: weight_sum as f64 / 4.0,
    }
}

/// Keeps the pair with the larger weight sum, ties to the smaller cells.
fn better(candidate: MonochromaticPair, current: Option<MonochromaticPair>) -> Option<MonochromaticPair> {
    match current {
        Some(cur)
            if cur.weight_sum > candidate.weight_sum
                || (cur.weight_sum == candidate.weight_sum
                    && (cur.first, cur.second) <= (candidate.first, candidate.second)) =>
        {
            Some(cur)
        }
        _ => Some(candidate),
    }
}

/// The monochromatic pair maximizing `c_i* + c_*j + c_k* + c_*l`.
pub fn heaviest_pair(square: &Square, stats: &SymbolStats, scan: PairScan) -> Option<MonochromaticPair> {
    let n = square.n();
    let mut by_symbol: Vec<Vec<CellRef>> = vec![Vec::new(); square.symbol_count()];
    for r in 0..n {
        for c in 0..n {
            by_symbol[square.id(r, c) as usize].push(CellRef::new(r, c));
        }
    }
    let mut best = None;
    for cells in by_symbol.iter().filter(|c| c.len() >= 2) {
        match scan {
            PairScan::Full => {
                for (i, &a) in cells.iter().enumerate() {
                    for &b in &cells[i + 1..] {
                        best = better(make_pair(square, stats, a, b), best);
                    }
                }
            }
            PairScan::TopTwo => {
                // Cells are in row-major order, so a stable sort by weight
                // breaks ties by position.
                let mut ranked = cells.clone();
                ranked.sort_by_key(|&c| std::cmp::Reverse(cell_weight(stats, c)));
                best = better(make_pair(square, stats, ranked[0], ranked[1]), best);
            }
        }
    }
    best
}

/// Local lemma certificate: certified iff `64 w ≤ 27 n (n - 1)` for every
/// monochromatic pair. The witness is the heaviest pair.
pub fn lll_certificate(square: &Square) -> BoundCertificate {
    lll_certificate_with(square, PairScan::TopTwo)
}

pub fn lll_certificate_with(square: &Square, scan: PairScan) -> BoundCertificate {
    let n = square.n() as u64;
    let stats = compute_stats(square);
    let rhs = 27 * n * n.saturating_sub(1);
    let witness = heaviest_pair(square, &stats, scan).map(|p| PairWitness {
        cells: [
            [p.first.row + 1, p.first.col + 1],
            [p.second.row + 1, p.second.col + 1],
        ],
        symbol: p.symbol,
        weight_sum: p.weight_sum,
        lhs: 64 * p.weight_sum,
        rhs,
    });
    let certified = witness.as_ref().is_none_or(|w| w.lhs <= w.rhs);
    BoundCertificate {
        kind: if certified { CertificateKind::Lll } else { CertificateKind::None },
        certified,
        witness,
        thresholds: Vec::new(),
    }
}

/// The three counting conditions. Certified if any holds; `kind` names the
/// first that does, in the order corollary, Erdős–Spencer, three quarters.
pub fn threshold_checks(square: &Square) -> BoundCertificate {
    let n = square.n() as u64;
    let k = square.symbol_count() as u64;
    let stats = compute_stats(square);
    let max_mult = stats.max_multiplicity() as u64;

    let corollary = ThresholdCheck {
        kind: CertificateKind::Corollary,
        relation: "256*symbols >= 229*n^2 + 27*n",
        lhs: 256 * k,
        rhs: 229 * n * n + 27 * n,
        holds: 256 * k >= 229 * n * n + 27 * n,
        observed: k,
    };
    let erdos_spencer = ThresholdCheck {
        kind: CertificateKind::ErdosSpencer,
        relation: "max_multiplicity*108731274 <= n*10^7",
        lhs: max_mult * FOUR_E_UPPER_1E7,
        rhs: n * 10_000_000,
        holds: max_mult * FOUR_E_UPPER_1E7 <= n * 10_000_000,
        observed: max_mult,
    };
    let three_quarters = ThresholdCheck {
        kind: CertificateKind::ThreeQuarters,
        relation: "4*symbols >= 3*n^2",
        lhs: 4 * k,
        rhs: 3 * n * n,
        holds: 4 * k >= 3 * n * n,
        observed: k,
    };
    let thresholds = vec![corollary, erdos_spencer, three_quarters];
    let kind = thresholds
        .iter()
        .find(|t| t.holds)
        .map_or(CertificateKind::None, |t| t.kind);
    BoundCertificate {
        kind,
        certified: kind != CertificateKind::None,
        witness: None,
        thresholds,
    }
}

/// Whether some completion of a partial square could still carry a local
/// lemma certificate.
///
/// `cells` is a row-major prefix of dense symbol ids. Multiplicities, and
/// with them line weights, only grow as cells are added, so a pair already
/// over the bound stays over it. Usable as an enumeration prefix filter.
pub fn lll_prefix_feasible(cells: &[u32], n: usize) -> bool {
    let k = cells.iter().map(|&x| x as usize + 1).max().unwrap_or(0);
    let mut occ = vec![0u64; k];
    for &s in cells {
        occ[s as usize] += 1;
    }
    let mut row_weight = vec![0u64; n];
    let mut col_weight = vec![0u64; n];
    for (i, &s) in cells.iter().enumerate() {
        row_weight[i / n] += occ[s as usize] - 1;
        col_weight[i % n] += occ[s as usize] - 1;
    }
    let rhs = 27 * (n * n.saturating_sub(1)) as u64;
    let mut top = vec![(0u64, 0u64); k];
    for (i, &s) in cells.iter().enumerate() {
        if occ[s as usize] < 2 {
            continue;
        }
        let w = row_weight[i / n] + col_weight[i % n];
        let t = &mut top[s as usize];
        if w > t.0 {
            *t = (w, t.0);
        } else if w > t.1 {
            t.1 = w;
        }
    }
    top.iter()
        .zip(&occ)
        .all(|(t, &o)| o < 2 || 64 * (t.0 + t.1) <= rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Line {
    Row(usize),
    Col(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineReport {
    /// 0-based line index.
    pub line: Line,
    pub weight: u64,
    /// `256 weight ≤ 27 (n² - n)`.
    pub lll_side: bool,
    /// Number of symbols absent from the line, `Σ n_k`.
    pub symbols_avoiding: u64,
    /// Cells holding those symbols, `Σ k n_k`.
    pub cells_avoiding: u64,
    /// `2 Σ n_k - Σ k n_k`, reported for heavy lines only.
    pub bound: Option<i64>,
    /// Singletons actually absent from the line.
    pub singletons_avoiding: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingletonReport {
    pub lines: Vec<LineReport>,
    /// Every line is light, which certifies a transversal through the local
    /// lemma condition.
    pub all_lll_side: bool,
    pub max_bound: Option<i64>,
    pub singleton_count: usize,
}

/// Per-line dichotomy: either the line weight is at most
/// `(27/256) (n² - n)`, or the symbols absent from the line force at least
/// `2 Σ n_k - Σ k n_k` singletons.
pub fn singleton_lower_bound(square: &Square) -> SingletonReport {
    let n = square.n();
    let stats = compute_stats(square);
    let limit = 27 * (n * n - n) as u64;
    let mut lines = Vec::with_capacity(2 * n);
    let mut present = vec![false; square.symbol_count()];
    for line in (0..n).map(Line::Row).chain((0..n).map(Line::Col)) {
        present.fill(false);
        let weight = match line {
            Line::Row(i) => {
                (0..n).for_each(|c| present[square.id(i, c) as usize] = true);
                stats.row_weight[i]
            }
            Line::Col(j) => {
                (0..n).for_each(|r| present[square.id(r, j) as usize] = true);
                stats.col_weight[j]
            }
        };
        let absent = stats.occ.iter().enumerate().filter(|&(id, _)| !present[id]);
        let (mut syms, mut cells, mut singles) = (0u64, 0u64, 0u64);
        for (_, &m) in absent {
            syms += 1;
            cells += m as u64;
            singles += (m == 1) as u64;
        }
        let lll_side = 256 * weight <= limit;
        lines.push(LineReport {
            line,
            weight,
            lll_side,
            symbols_avoiding: syms,
            cells_avoiding: cells,
            bound: (!lll_side).then_some(2 * syms as i64 - cells as i64),
            singletons_avoiding: singles,
        });
    }
    let all_lll_side = lines.iter().all(|l| l.lll_side);
    let max_bound = lines.iter().filter_map(|l| l.bound).max();
    SingletonReport {
        lines,
        all_lll_side,
        max_bound,
        singleton_count: stats.singleton_count(),
    }
}
