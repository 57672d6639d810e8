//! Square and coloring generators.
//!
//! Randomized generators take an explicit 64-bit seed and draw from
//! ChaCha8, so their output is reproducible across platforms.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::solvers::has_transversal;
use crate::square::{CellRef, Square, Symbol};
use crate::stats::compute_stats;

use super::graph::EdgeColoredGraph;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random Latin square of order `n` (symbols `0..n`), produced by the
/// Jacobson–Matthews walk started from the cyclic table.
pub fn random_latin_square(n: usize, rng: &mut impl Rng) -> Square {
    if n <= 2 {
        let sq = Square::cyclic(n);
        return if n == 2 && rng.gen_bool(0.5) {
            Square::from_flat(2, vec![1, 0, 0, 1]).expect("valid")
        } else {
            sq
        };
    }
    let idx = |r: usize, c: usize, s: usize| (r * n + c) * n + s;
    let mut cube = vec![0i8; n * n * n];
    for r in 0..n {
        for c in 0..n {
            cube[idx(r, c, (r + c) % n)] = 1;
        }
    }
    let pick_two = |rng: &mut dyn rand::RngCore, found: &[usize]| found[rng.gen_range(0..found.len())];
    let mut improper: Option<(usize, usize, usize)> = None;
    let steps = (n * n * n).max(1000);
    let mut step = 0usize;
    while step < steps || improper.is_some() {
        step += 1;
        let (x, y, z, x1, y1, z1);
        match improper {
            None => {
                let (a, b, c) = loop {
                    let t = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                    if cube[idx(t.0, t.1, t.2)] == 0 {
                        break t;
                    }
                };
                (x, y, z) = (a, b, c);
                x1 = (0..n).find(|&r| cube[idx(r, y, z)] == 1).expect("proper square");
                y1 = (0..n).find(|&c| cube[idx(x, c, z)] == 1).expect("proper square");
                z1 = (0..n).find(|&s| cube[idx(x, y, s)] == 1).expect("proper square");
            }
            Some((a, b, c)) => {
                (x, y, z) = (a, b, c);
                let xs: Vec<usize> = (0..n).filter(|&r| cube[idx(r, y, z)] == 1).collect();
                let ys: Vec<usize> = (0..n).filter(|&c| cube[idx(x, c, z)] == 1).collect();
                let zs: Vec<usize> = (0..n).filter(|&s| cube[idx(x, y, s)] == 1).collect();
                x1 = pick_two(rng, &xs);
                y1 = pick_two(rng, &ys);
                z1 = pick_two(rng, &zs);
            }
        }
        cube[idx(x, y, z)] += 1;
        cube[idx(x, y1, z1)] += 1;
        cube[idx(x1, y, z1)] += 1;
        cube[idx(x1, y1, z)] += 1;
        cube[idx(x1, y, z)] -= 1;
        cube[idx(x, y1, z)] -= 1;
        cube[idx(x, y, z1)] -= 1;
        cube[idx(x1, y1, z1)] -= 1;
        improper = (cube[idx(x1, y1, z1)] < 0).then_some((x1, y1, z1));
    }
    let cells = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .map(|(r, c)| (0..n).find(|&s| cube[idx(r, c, s)] == 1).expect("proper square") as Symbol)
        .collect();
    Square::from_flat(n, cells).expect("Jacobson-Matthews keeps the Latin property")
}

/// A random generalized Latin square of order `n` with exactly `k` symbols:
/// a random Latin square whose repetition cells are recolored, one at a
/// time and uniformly at random, with fresh symbols until `k` is reached.
pub fn random_gls(n: usize, k: usize, seed: u64) -> Result<Square> {
    if n == 0 || k < n || k > n * n {
        return Err(Error::InfeasibleParams(format!(
            "need 1 <= n and n <= k <= n^2, got n = {n}, k = {k}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let base = random_latin_square(n, &mut rng);
    let mut cells = base.cells().to_vec();
    let mut occ: HashMap<Symbol, usize> = HashMap::new();
    for &s in &cells {
        *occ.entry(s).or_insert(0) += 1;
    }
    let mut next = n as Symbol;
    let mut count = n;
    while count < k {
        let reps: Vec<usize> = (0..n * n).filter(|&i| occ[&cells[i]] >= 2).collect();
        let i = reps[rng.gen_range(0..reps.len())];
        *occ.get_mut(&cells[i]).expect("present") -= 1;
        cells[i] = next;
        occ.insert(next, 1);
        next += 1;
        count += 1;
    }
    Square::from_flat(n, cells)
}

/// The square with rows and columns permuted at random. Returns it with
/// the permutations: row `i` of the result is row `rows[i]` of the input,
/// and likewise for columns.
pub fn shuffle_lines(square: &Square, seed: u64) -> (Square, Vec<usize>, Vec<usize>) {
    let mut rng = rng_from_seed(seed);
    let n = square.n();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    rows.shuffle(&mut rng);
    cols.shuffle(&mut rng);
    (square.submatrix(&rows, &cols), rows, cols)
}

/// Relabels `n - 1` cells carrying pairwise distinct repetition symbols
/// with fresh symbols.
///
/// Applied to a transversal-free square this yields a square that cannot be
/// split into `n` disjoint transversals: every transversal must use one of
/// the `n - 1` relabeled cells. Symbols are taken most frequent first (ties
/// by first occurrence), each at its first occurrence in row-major order.
pub fn lstar_gap(square: &Square) -> Result<Square> {
    let n = square.n();
    if n < 3 {
        return Err(Error::InfeasibleParams(format!("order {n} < 3")));
    }
    if has_transversal(square) {
        return Err(Error::InfeasibleParams("input square has a transversal".into()));
    }
    let stats = compute_stats(square);
    let mut reps: Vec<u32> = (0..square.symbol_count() as u32)
        .filter(|&id| stats.occ[id as usize] >= 2)
        .collect();
    if reps.len() < n - 1 {
        return Err(Error::InfeasibleParams(format!(
            "only {} distinct repetition symbols, need {}",
            reps.len(),
            n - 1
        )));
    }
    reps.sort_by_key(|&id| std::cmp::Reverse(stats.occ[id as usize]));
    let chosen = &reps[..n - 1];
    let mut cells = square.cells().to_vec();
    let mut fresh = square.cells().iter().copied().max().unwrap_or(0) + 1;
    for &id in chosen {
        let pos = square.ids().iter().position(|&x| x == id).expect("symbol occurs");
        cells[pos] = fresh;
        fresh += 1;
    }
    Square::from_flat(n, cells)
}

/// Cells relabeled by [`lstar_gap`], for reporting.
pub fn lstar_gap_cells(square: &Square, gapped: &Square) -> Vec<CellRef> {
    let n = square.n();
    (0..n * n)
        .filter(|&i| square.cells()[i] != gapped.cells()[i])
        .map(|i| CellRef::new(i / n, i % n))
        .collect()
}

/// Circle-method 1-factorization of `K_m` for even `m` (`m - 1` colors),
/// or near-1-factorization for odd `m` (`m` colors, from `K_{m+1}`).
pub fn circle_factorization(m: usize) -> EdgeColoredGraph {
    let even = if m.is_multiple_of(2) { m } else { m + 1 };
    let rounds = even.saturating_sub(1);
    let mut color = vec![vec![0 as Symbol; even]; even];
    for r in 0..rounds {
        let fixed = even - 1;
        color[fixed][r] = r as Symbol;
        color[r][fixed] = r as Symbol;
        for k in 1..even / 2 {
            let a = (r + k) % rounds;
            let b = (r + rounds - k) % rounds;
            color[a][b] = r as Symbol;
            color[b][a] = r as Symbol;
        }
    }
    EdgeColoredGraph::from_fn(m, |i, j| color[i][j]).expect("circle method is proper")
}

/// A random proper coloring of `K_m` with exactly `colors` colors: the
/// circle-method factorization under a random vertex relabeling, after
/// which random edges whose color class has at least two edges receive
/// fresh colors.
pub fn proper_coloring(m: usize, colors: usize, seed: u64) -> Result<EdgeColoredGraph> {
    let min = if m.is_multiple_of(2) { m.saturating_sub(1) } else { m };
    let max = m * m.saturating_sub(1) / 2;
    if m < 2 || colors < min || colors > max {
        return Err(Error::InfeasibleParams(format!(
            "K_{m} admits proper colorings with {min}..={max} colors, asked for {colors}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let base = circle_factorization(m);
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(&mut rng);
    let mut color = vec![vec![0 as Symbol; m]; m];
    for (i, j, c) in base.edges() {
        color[perm[i]][perm[j]] = c;
        color[perm[j]][perm[i]] = c;
    }
    let mut class_size: HashMap<Symbol, usize> = HashMap::new();
    for (i, j, _) in base.edges() {
        *class_size.entry(color[i][j]).or_insert(0) += 1;
    }
    let mut next = class_size.len() as Symbol;
    let mut count = class_size.len();
    while count < colors {
        let candidates: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| class_size[&color[i][j]] >= 2)
            .collect();
        let (i, j) = candidates[rng.gen_range(0..candidates.len())];
        *class_size.get_mut(&color[i][j]).expect("present") -= 1;
        color[i][j] = next;
        color[j][i] = next;
        class_size.insert(next, 1);
        next += 1;
        count += 1;
    }
    EdgeColoredGraph::from_fn(m, |i, j| color[i][j])
}

/// Every proper coloring of `K_m`, one per color relabeling class, with
/// colors numbered by first occurrence in edge order. Grows very fast; `m`
/// is limited to 6.
pub fn all_proper_colorings(m: usize) -> Result<Vec<EdgeColoredGraph>> {
    if m > 6 {
        return Err(Error::InfeasibleParams(format!("exhaustive colorings need m <= 6, got {m}")));
    }
    let edges: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut colors = vec![0 as Symbol; edges.len()];
    let mut at_vertex = vec![0u64; m];
    let mut out = Vec::new();
    fn go(
        pos: usize,
        used: u32,
        edges: &[(usize, usize)],
        colors: &mut Vec<Symbol>,
        at_vertex: &mut [u64],
        out: &mut Vec<Vec<Symbol>>,
    ) {
        if pos == edges.len() {
            out.push(colors.clone());
            return;
        }
        let (i, j) = edges[pos];
        for c in 0..=used.min(63) {
            if (at_vertex[i] | at_vertex[j]) >> c & 1 == 1 {
                continue;
            }
            colors[pos] = c;
            at_vertex[i] |= 1 << c;
            at_vertex[j] |= 1 << c;
            go(pos + 1, used.max(c + 1), edges, colors, at_vertex, out);
            at_vertex[i] &= !(1 << c);
            at_vertex[j] &= !(1 << c);
        }
    }
    go(0, 0, &edges, &mut colors, &mut at_vertex, &mut out);
    let mut graphs = Vec::new();
    for cs in out {
        let g = EdgeColoredGraph::from_edges(
            m,
            &edges.iter().zip(&cs).map(|(&(i, j), &c)| (i, j, c)).collect::<Vec<_>>(),
        )?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// Budgeted local search for transversal-free squares with many symbols,
/// started from the cyclic table of even order `n`.
///
/// A move recolors one repetition cell, either with a fresh symbol or with
/// an existing symbol that keeps the square proper; it is accepted when the
/// square stays transversal-free and does not lose symbols. Returns the
/// best square seen. Experimental: only found witnesses mean anything.
pub fn transversal_free_search(n: usize, iterations: usize, seed: u64) -> Result<Square> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InfeasibleParams(format!(
            "the search starts from Z_n, which is transversal-free only for even n; got {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut current = Square::cyclic(n);
    let mut best = current.clone();
    for _ in 0..iterations {
        let stats = compute_stats(&current);
        let reps: Vec<usize> = (0..n * n)
            .filter(|&i| stats.occ[current.ids()[i] as usize] >= 2)
            .collect();
        if reps.is_empty() {
            break;
        }
        let i = reps[rng.gen_range(0..reps.len())];
        let (r, c) = (i / n, i % n);
        let mut cells = current.cells().to_vec();
        if rng.gen_bool(0.5) {
            cells[i] = cells.iter().copied().max().unwrap_or(0) + 1;
        } else {
            let options: Vec<Symbol> = (0..current.symbol_count() as u32)
                .map(|id| current.label(id))
                .filter(|&s| (0..n).all(|t| current.get(r, t) != s && current.get(t, c) != s))
                .collect();
            if options.is_empty() {
                continue;
            }
            cells[i] = options[rng.gen_range(0..options.len())];
        }
        let candidate = Square::from_flat(n, cells)?;
        if candidate.symbol_count() >= current.symbol_count() && !has_transversal(&candidate) {
            current = candidate;
            if current.symbol_count() > best.symbol_count() {
                best = current.clone();
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_latin_squares_are_latin() {
        let mut rng = rng_from_seed(7);
        for n in 1..=9 {
            let sq = random_latin_square(n, &mut rng);
            assert_eq!(sq.symbol_count(), n);
        }
    }

    #[test]
    fn random_gls_hits_the_symbol_count() {
        for n in 1..=8 {
            for k in n..=n * n {
                let sq = random_gls(n, k, (n * 100 + k) as u64).unwrap();
                assert_eq!(sq.symbol_count(), k);
            }
        }
    }

    #[test]
    fn random_gls_is_reproducible() {
        assert_eq!(random_gls(7, 30, 42).unwrap(), random_gls(7, 30, 42).unwrap());
        assert_ne!(random_gls(7, 30, 42).unwrap(), random_gls(7, 30, 43).unwrap());
    }

    #[test]
    fn random_gls_rejects_bad_params() {
        assert!(matches!(random_gls(4, 3, 0), Err(Error::InfeasibleParams(_))));
        assert!(matches!(random_gls(4, 17, 0), Err(Error::InfeasibleParams(_))));
    }

    #[test]
    fn circle_method_k4_is_the_one_factorization() {
        let g = circle_factorization(4);
        assert_eq!(g.color_count(), 3);
        // Every color class is a perfect matching.
        for c in 0..3 {
            assert_eq!(g.edges().filter(|e| e.2 == c).count(), 2);
        }
    }

    #[test]
    fn circle_method_sizes() {
        for m in 2..=12 {
            let g = circle_factorization(m);
            assert_eq!(g.color_count(), if m % 2 == 0 { m - 1 } else { m });
        }
    }

    #[test]
    fn proper_coloring_counts() {
        for m in [4usize, 5, 6, 7, 8] {
            let min = if m % 2 == 0 { m - 1 } else { m };
            for colors in min..=m * (m - 1) / 2 {
                let g = proper_coloring(m, colors, colors as u64).unwrap();
                assert_eq!(g.color_count(), colors);
            }
        }
        assert!(matches!(proper_coloring(6, 4, 0), Err(Error::InfeasibleParams(_))));
    }

    #[test]
    fn lstar_gap_on_z4() {
        // Z_4 has only 4 repetition symbols; three are relabeled.
        let sq = Square::cyclic(4);
        let gapped = lstar_gap(&sq).unwrap();
        assert_eq!(gapped.symbol_count(), 7);
        assert_eq!(lstar_gap_cells(&sq, &gapped).len(), 3);
    }

    #[test]
    fn lstar_gap_rejects_squares_with_transversals() {
        assert!(matches!(lstar_gap(&Square::cyclic(3)), Err(Error::InfeasibleParams(_))));
    }

    #[test]
    fn local_search_stays_transversal_free() {
        let sq = transversal_free_search(4, 200, 1).unwrap();
        assert!(!has_transversal(&sq));
        assert!(sq.symbol_count() >= 4);
    }
}
