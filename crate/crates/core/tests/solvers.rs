use gls_core::extremal::{enumerate, enumerate_squares, random_gls, random_latin_square, rng_from_seed, EnumerationConfig};
use gls_core::solvers::{
    cover_full_lines, find_transversal_constructive_traced, find_transversal_exact, CaseTag, CoverPlan, SearchMode,
};
use gls_core::{compute_stats, is_transversal, verify_partial_transversal, CellRef, Square};
use rand::seq::SliceRandom;
use rand::Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_count(sq: &Square) -> u64 {
    permutations(sq.n())
        .iter()
        .filter(|p| {
            let mut s: Vec<_> = p.iter().enumerate().map(|(r, &c)| sq.get(r, c)).collect();
            s.sort();
            s.dedup();
            s.len() == sq.n()
        })
        .count() as u64
}

/// Keeps a random Latin square's symbols on `p` rows and `q` columns (plus
/// one partner cell for any symbol seen only once there) and gives every
/// other cell a fresh symbol, so the chosen lines are full.
fn planted(n: usize, p: usize, q: usize, seed: u64) -> Square {
    let mut rng = rng_from_seed(seed);
    let latin = random_latin_square(n, &mut rng);
    let mut lines: Vec<usize> = (0..n).collect();
    lines.shuffle(&mut rng);
    let rows = lines[..p].to_vec();
    lines.shuffle(&mut rng);
    let cols = lines[..q].to_vec();
    let mut keep = vec![false; n * n];
    for r in 0..n {
        for c in 0..n {
            keep[r * n + c] = rows.contains(&r) || cols.contains(&c);
        }
    }
    for s in 0..n as u32 {
        let kept: Vec<usize> = (0..n * n).filter(|&i| keep[i] && latin.cells()[i] == s).collect();
        if kept.len() == 1 {
            let others: Vec<usize> = (0..n * n).filter(|&i| !keep[i] && latin.cells()[i] == s).collect();
            keep[others[rng.gen_range(0..others.len())]] = true;
        }
    }
    let mut fresh = n as u32;
    let cells = (0..n * n)
        .map(|i| {
            if keep[i] {
                latin.cells()[i]
            } else {
                fresh += 1;
                fresh
            }
        })
        .collect();
    Square::from_flat(n, cells).unwrap()
}

#[test]
fn exact_matches_brute_force_on_small_corpus() {
    for n in 1..=4 {
        for sq in enumerate_squares(n, 1, n * n).unwrap() {
            let r = find_transversal_exact(&sq, SearchMode::Count);
            assert_eq!(r.count, Some(brute_count(&sq)), "{sq:?}");
            assert_eq!(r.outcome.is_found(), r.count != Some(0));
        }
    }
}

#[test]
fn exact_matches_brute_force_at_order_five() {
    let cfg = EnumerationConfig {
        max_nodes: Some(200_000),
        ..EnumerationConfig::new(5)
    };
    let partial = enumerate(&cfg, None).unwrap();
    assert!(!partial.squares.is_empty());
    for sq in partial.squares.iter().take(3000) {
        assert_eq!(find_transversal_exact(sq, SearchMode::Count).count, Some(brute_count(sq)));
    }
    for seed in 0..300 {
        let sq = random_gls(5, 5 + seed as usize % 21, seed).unwrap();
        assert_eq!(find_transversal_exact(&sq, SearchMode::Count).count, Some(brute_count(&sq)));
    }
}

#[test]
fn cover_example_two_rows_one_column() {
    let mut seen = 0;
    for seed in 0..200 {
        let sq = planted(6, 2, 1, seed);
        let plan = CoverPlan::new(&sq, &compute_stats(&sq));
        if (plan.p(), plan.q()) != (2, 1) {
            continue;
        }
        seen += 1;
        assert_eq!(plan.case_tag, CaseTag::A);
        let cover = cover_full_lines(&sq, &plan).unwrap();
        assert!(cover.size() <= 2);
        let cells: Vec<CellRef> = cover
            .cells()
            .iter()
            .map(|&c| if plan.transposed { c.transposed() } else { c })
            .collect();
        assert_eq!(verify_partial_transversal(&sq, &cells), Ok(None));
        let (rows, cols) = if plan.transposed {
            (&plan.full_cols, &plan.full_rows)
        } else {
            (&plan.full_rows, &plan.full_cols)
        };
        assert!(rows.iter().all(|&r| cells.iter().any(|c| c.row == r)));
        assert!(cols.iter().all(|&c| cells.iter().any(|x| x.col == c)));
    }
    assert!(seen > 100);
}

#[test]
fn constructive_on_planted_full_lines() {
    for n in 4..=10usize {
        let need = (3 * n * n).div_ceil(4);
        for seed in 0..60u64 {
            let p = 1 + seed as usize % 3;
            let q = seed as usize / 3 % 3;
            let sq = planted(n, p.min(n), q.min(n), seed * 31 + n as u64);
            if sq.symbol_count() < need {
                continue;
            }
            let (report, trace) = find_transversal_constructive_traced(&sq).unwrap();
            let t = report.outcome.transversal().expect("found");
            assert!(is_transversal(&sq, t));
            let first = &trace.steps[0];
            assert!(first.full_rows + first.full_cols >= 1);
            assert!(first.cover_size <= n);
        }
    }
}

/// Order-`(n+1)/2` cyclic block on shuffled lines, fresh symbols elsewhere.
/// The block is an all-repetition submatrix with `x + y = n + 1`, so the
/// singleton cells admit no diagonal and the solver has to pivot.
fn blocked(n: usize, seed: u64) -> Square {
    let s = n.div_ceil(2);
    let mut rng = rng_from_seed(seed);
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    rows.shuffle(&mut rng);
    cols.shuffle(&mut rng);
    let mut fresh = s as u32;
    let mut cells = vec![0u32; n * n];
    for r in 0..n {
        for c in 0..n {
            let (i, j) = (rows[r], cols[c]);
            cells[r * n + c] = if i < s && j < s {
                ((i + j) % s) as u32
            } else {
                fresh += 1;
                fresh
            };
        }
    }
    Square::from_flat(n, cells).unwrap()
}

#[test]
fn constructive_pivots_when_singletons_are_blocked() {
    for n in [5usize, 7, 9, 11] {
        for seed in 0..20 {
            let sq = blocked(n, seed);
            assert!(4 * sq.symbol_count() >= 3 * n * n);
            let (report, trace) = find_transversal_constructive_traced(&sq).unwrap();
            assert!(is_transversal(&sq, report.outcome.transversal().unwrap()));
            assert!(trace.pivots() >= 1, "n={n} seed={seed}");
        }
    }
}

#[test]
fn constructive_rejects_sparse_squares() {
    let sq = Square::cyclic(5);
    assert!(find_transversal_constructive_traced(&sq).is_err());
}
