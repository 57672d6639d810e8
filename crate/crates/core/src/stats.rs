//! Occurrence counts and the row/column weights derived from them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::square::{Square, Symbol};

/// Occurrence statistics of a square.
///
/// `row_weight[i]` is the sum of the multiplicities of the symbols in row
/// `i`, minus `n`; it vanishes exactly when every entry of the row is a
/// singleton. Column weights are defined the same way.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolStats {
    pub n: usize,
    pub symbol_count: usize,
    /// Multiplicity per dense symbol id.
    pub occ: Vec<usize>,
    pub row_weight: Vec<u64>,
    pub col_weight: Vec<u64>,
    /// Original symbols occurring exactly once, in first-occurrence order.
    pub singletons: Vec<Symbol>,
    /// Original symbols occurring at least twice, in first-occurrence order.
    pub repetitions: Vec<Symbol>,
    /// Multiplicity `k` to the number of symbols occurring exactly `k` times.
    pub histogram: BTreeMap<usize, usize>,
    pub color_density: f64,
}

pub fn compute_stats(square: &Square) -> SymbolStats {
    let n = square.n();
    let k = square.symbol_count();
    let mut occ = vec![0usize; k];
    for &id in square.ids() {
        occ[id as usize] += 1;
    }
    let mut row_weight = vec![0u64; n];
    let mut col_weight = vec![0u64; n];
    for r in 0..n {
        for c in 0..n {
            let extra = (occ[square.id(r, c) as usize] - 1) as u64;
            row_weight[r] += extra;
            col_weight[c] += extra;
        }
    }
    let mut histogram = BTreeMap::new();
    for &m in &occ {
        *histogram.entry(m).or_insert(0) += 1;
    }
    let (singletons, repetitions) = (0..k as u32)
        .partition::<Vec<u32>, _>(|&id| occ[id as usize] == 1);
    SymbolStats {
        n,
        symbol_count: k,
        occ,
        row_weight,
        col_weight,
        singletons: singletons.into_iter().map(|id| square.label(id)).collect(),
        repetitions: repetitions.into_iter().map(|id| square.label(id)).collect(),
        histogram,
        color_density: k as f64 / (n * n) as f64,
    }
}

impl SymbolStats {
    /// Multiplicity of the symbol in a cell, `c(a_ij)`.
    pub fn multiplicity_at(&self, square: &Square, r: usize, c: usize) -> usize {
        self.occ[square.id(r, c) as usize]
    }

    pub fn is_singleton_at(&self, square: &Square, r: usize, c: usize) -> bool {
        self.multiplicity_at(square, r, c) == 1
    }

    pub fn max_multiplicity(&self) -> usize {
        self.occ.iter().copied().max().unwrap_or(0)
    }

    pub fn singleton_count(&self) -> usize {
        self.singletons.len()
    }
}
