//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the summary is printed by
//! `cargo test` without `--nocapture`. Exits non-zero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use gls_core::bounds::{heaviest_pair, lll_certificate, lll_certificate_with, lll_prefix_feasible, PairScan};
use gls_core::extremal::{
    all_proper_colorings, antiramsey_reduce, circle_factorization, compute_l, compute_l_star, enumerate,
    enumerate_squares, extract_two_factor, lstar_gap, proper_coloring, rainbow_factor_search, random_gls,
    random_latin_square, rng_from_seed, verify_factor, EnumerationConfig, FactorOutcome, PrefixFilter,
    SearchLimits,
};
use gls_core::matching::{diagonal_or_blocker, BitMatrix, DiagonalOrBlocker};
use gls_core::solvers::{
    decompose_into_transversals, find_transversal_constructive, find_transversal_exact, has_transversal,
    rainbow_pm_multiplicity_split, SearchMode,
};
use gls_core::{compute_stats, is_transversal, verify_partial_transversal, Square};
use rand::seq::SliceRandom;
use rand::Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

/// All permutations of `0..n`, for brute-force oracles.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Number of rainbow diagonals, by trying every diagonal.
fn brute_transversals(sq: &Square) -> usize {
    permutations(sq.n())
        .iter()
        .filter(|p| {
            let mut syms: Vec<_> = p.iter().enumerate().map(|(r, &c)| sq.get(r, c)).collect();
            syms.sort();
            syms.dedup();
            syms.len() == sq.n()
        })
        .count()
}

fn l_number_reproduction() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_gls");
    let expected = [1usize, 3, 3, 6];
    let mut got = Vec::new();
    for (i, &want) in expected.iter().enumerate() {
        let n = i + 1;
        let out = Command::new(exe)
            .args(["l-number", "--order", &n.to_string(), "--json"])
            .output()
            .expect("run gls");
        if out.status.code() != Some(0) {
            return fail(format!("l-number --order {n} exited {:?}", out.status.code()));
        }
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json");
        let value = doc["value"].as_u64().unwrap() as usize;
        if value != want || doc["exhaustive"] != serde_json::Value::Bool(true) {
            return fail(format!("n={n}: value {value}, exhaustive {}", doc["exhaustive"]));
        }
        if let Some(rows) = doc["witness"].as_array() {
            let grid: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| r.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect())
                .collect();
            let w = Square::new(&grid).expect("witness is a valid square");
            if w.symbol_count() != value - 1 || brute_transversals(&w) != 0 {
                return fail(format!("n={n}: witness invalid"));
            }
        }
        got.push(value);
    }
    pass(format!("l(1..4) = {got:?}, exhaustive, witnesses transversal-free by brute force"))
}

fn constructive_three_quarters() -> Outcome {
    let mut runs = 0;
    let mut max_steps = 0;
    for n in 4..=10usize {
        let k = (3 * n * n).div_ceil(4);
        for seed in 0..1000u64 {
            let sq = random_gls(n, k, seed).expect("generator");
            let report = match find_transversal_constructive(&sq) {
                Ok(r) => r,
                Err(e) => return fail(format!("n={n} seed={seed}: {e}")),
            };
            let Some(t) = report.outcome.transversal() else {
                return fail(format!("n={n} seed={seed}: not found"));
            };
            if verify_partial_transversal(&sq, t.cells()) != Ok(None) || t.size() != n {
                return fail(format!("n={n} seed={seed}: output does not verify"));
            }
            max_steps = max_steps.max(report.node_count);
            runs += 1;
        }
    }
    pass(format!("{runs} squares (n=4..10, k=ceil(0.75n^2)), all found and verified; max {max_steps} steps"))
}

fn lll_soundness() -> Outcome {
    let mut checked = 0usize;
    let mut certified = 0usize;
    let check = |sq: &Square, certified: &mut usize| -> Result<(), String> {
        let cert = lll_certificate(sq);
        if cert.certified {
            *certified += 1;
            if !find_transversal_exact(sq, SearchMode::First).outcome.is_found() {
                return Err(format!("certified but transversal-free: {sq:?}"));
            }
        }
        if lll_certificate_with(sq, PairScan::Full) != cert {
            return Err(format!("top-two and full scans disagree: {sq:?}"));
        }
        Ok(())
    };
    // Full corpus up to order 4.
    let mut certified4 = Vec::new();
    for n in 1..=4 {
        for sq in enumerate_squares(n, 1, n * n).expect("enumeration") {
            if let Err(e) = check(&sq, &mut certified) {
                return fail(e);
            }
            if n == 4 && lll_certificate(&sq).certified {
                certified4.push(sq.clone());
            }
            checked += 1;
        }
    }
    // Order 5: squares that can carry a certificate, pruned on partial
    // weights. The pruning is cross-checked on the full order-4 corpus.
    let filter: PrefixFilter<'_> = &lll_prefix_feasible;
    let filtered4 = enumerate(&EnumerationConfig::new(4), Some(filter)).expect("enumeration");
    let kept4: Vec<Square> = filtered4
        .squares
        .into_iter()
        .filter(|s| lll_certificate(s).certified)
        .collect();
    if kept4 != certified4 {
        return fail("certificate pruning loses order-4 squares");
    }
    let corpus5 = enumerate(&EnumerationConfig::new(5), Some(filter)).expect("enumeration");
    if !corpus5.complete {
        return fail("order-5 enumeration incomplete");
    }
    let mut n5 = 0;
    for sq in corpus5.squares.iter().filter(|s| lll_certificate(s).certified) {
        if let Err(e) = check(sq, &mut certified) {
            return fail(e);
        }
        n5 += 1;
        checked += 1;
    }
    // Random squares up to order 10.
    let mut rng = rng_from_seed(3);
    for i in 0..10_000u64 {
        let n = rng.gen_range(1..=10usize);
        let k = rng.gen_range(n..=n * n);
        let sq = random_gls(n, k, 1_000_000 + i).expect("generator");
        if n <= 8 {
            if let Err(e) = check(&sq, &mut certified) {
                return fail(e);
            }
        } else {
            let cert = lll_certificate(&sq);
            if cert.certified {
                certified += 1;
                if !has_transversal(&sq) {
                    return fail(format!("certified but transversal-free: {sq:?}"));
                }
            }
        }
        checked += 1;
    }
    // The shortcut maximum must equal the full maximum for n <= 8.
    for seed in 0..2000u64 {
        let n = 2 + (seed as usize % 7);
        let k = n + (seed as usize * 7) % (n * n - n + 1);
        let sq = random_gls(n, k, seed).expect("generator");
        let stats = compute_stats(&sq);
        let top = heaviest_pair(&sq, &stats, PairScan::TopTwo).map(|p| p.weight_sum);
        let full = heaviest_pair(&sq, &stats, PairScan::Full).map(|p| p.weight_sum);
        if top != full {
            return fail(format!("heaviest pair mismatch on {sq:?}"));
        }
    }
    pass(format!(
        "{checked} squares (orders 1-4 complete, {n5} certified order-5 classes, 10^4 random), \
         {certified} certified, 0 violations; top-two scan matches full scan"
    ))
}

fn brute_deficiency(m: &BitMatrix) -> usize {
    let n = m.n();
    (0u32..1 << n)
        .map(|rows| {
            let mut nbr = 0u32;
            for r in (0..n).filter(|r| rows >> r & 1 == 1) {
                for c in 0..n {
                    if m.get(r, c) {
                        nbr |= 1 << c;
                    }
                }
            }
            (rows.count_ones() as usize).saturating_sub(nbr.count_ones() as usize)
        })
        .max()
        .unwrap_or(0)
}

fn konig_duality() -> Outcome {
    let mut rng = rng_from_seed(4);
    let mut blockers = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=8usize);
        let density: f64 = rng.gen_range(0.05..0.95);
        let m = BitMatrix::from_fn(n, |_, _| rng.gen_bool(density));
        let deficiency = brute_deficiency(&m);
        match diagonal_or_blocker(&m) {
            DiagonalOrBlocker::Diagonal(cells) => {
                let mut cols: Vec<usize> = cells.iter().map(|c| c.col).collect();
                cols.sort();
                cols.dedup();
                let ok = cells.len() == n && cols.len() == n && cells.iter().all(|c| m.get(c.row, c.col));
                if !ok || deficiency != 0 {
                    return fail(format!("bad diagonal for {m:?}"));
                }
            }
            DiagonalOrBlocker::Blocker(cert) => {
                if !cert.verify(&m) || cert.x() + cert.y() != n + deficiency {
                    return fail(format!("bad blocker for {m:?}"));
                }
                blockers += 1;
            }
        }
    }
    pass(format!("10^4 matrices (n<=8), {blockers} blockers, all verified, x+y-n = brute-force deficiency"))
}

fn multiplicity_split() -> Outcome {
    let mut runs = 0;
    for n in 2..=8usize {
        for r in 1..n {
            for seed in 0..100u64 {
                let mut rng = rng_from_seed(seed * 1000 + (n * 10 + r) as u64);
                let latin = random_latin_square(n, &mut rng);
                let mut keep: Vec<u32> = (0..n as u32).collect();
                keep.shuffle(&mut rng);
                keep.truncate(r);
                let mut fresh = n as u32;
                let cells = latin
                    .cells()
                    .iter()
                    .map(|&s| {
                        if keep.contains(&s) {
                            s
                        } else {
                            fresh += 1;
                            fresh
                        }
                    })
                    .collect();
                let sq = Square::from_flat(n, cells).expect("valid");
                match rainbow_pm_multiplicity_split(&sq) {
                    Ok(t) if is_transversal(&sq, &t) => runs += 1,
                    Ok(_) => return fail(format!("n={n} r={r} seed={seed}: not a transversal")),
                    Err(e) => return fail(format!("n={n} r={r} seed={seed}: {e}")),
                }
            }
        }
    }
    pass(format!("{runs} squares (n=2..8, r=1..n-1, 100 seeds each), all transversals"))
}

fn lstar_gap_construction() -> Outcome {
    let l4 = compute_l(4, &SearchLimits::default()).expect("l(4)");
    let Some(witness) = l4.witness else {
        return fail("no order-4 witness");
    };
    let gapped = match lstar_gap(&witness) {
        Ok(g) => g,
        Err(e) => return fail(e.to_string()),
    };
    let want = l4.value + 4 - 2;
    if gapped.symbol_count() != want {
        return fail(format!("{} symbols, expected {want}", gapped.symbol_count()));
    }
    if decompose_into_transversals(&gapped).is_found() {
        return fail("gapped square decomposes");
    }
    let ls2 = compute_l_star(2, &SearchLimits::default()).expect("l*(2)");
    if ls2.value != 4 || !ls2.exhaustive {
        return fail(format!("l*(2) = {}", ls2.value));
    }
    pass(format!("{want} symbols, not decomposable; l*(2) = 4 exhaustive"))
}

fn woolbright_fu() -> Outcome {
    let mut runs = 0;
    for m in [6usize, 8, 10] {
        let lo = m - 1;
        let hi = m * (m - 1) / 2;
        for seed in 0..100u64 {
            let colors = lo + (seed as usize * 7919) % (hi - lo + 1);
            let g = proper_coloring(m, colors, seed).expect("generator");
            match rainbow_factor_search(&g, 1, m).expect("search").outcome {
                FactorOutcome::Found(edges) if verify_factor(&g, &edges, 1, m) => runs += 1,
                other => return fail(format!("K_{m} seed {seed} ({colors} colors): {other:?}")),
            }
        }
    }
    let k4 = circle_factorization(4);
    if rainbow_factor_search(&k4, 1, 4).expect("search").outcome != FactorOutcome::NotFound {
        return fail("K_4 one-factorization has a rainbow perfect matching");
    }
    // Evidence only: rainbow 2-factors on at least m - 1 vertices.
    let mut evidence = Vec::new();
    for m in 4..=8usize {
        let lo = if m % 2 == 0 { m - 1 } else { m };
        let mut found = 0;
        for seed in 0..20u64 {
            let g = proper_coloring(m, lo + seed as usize % 3, seed).expect("generator");
            let res = rainbow_factor_search(&g, 2, m - 1).expect("search");
            if let FactorOutcome::Found(edges) = &res.outcome {
                assert!(verify_factor(&g, edges, 2, m - 1));
                found += 1;
            }
        }
        evidence.push(format!("K_{m}:{found}/20"));
    }
    println!("INFO  2-factor evidence (>= m-1 vertices, near-minimal colors): {}", evidence.join(" "));
    pass(format!("{runs} colorings of K_6/K_8/K_10 all have rainbow 1-factors; K_4 factorization NotFound"))
}

fn reduction_round_trip() -> Outcome {
    let mut graphs = Vec::new();
    for m in [4usize, 5] {
        graphs.extend(all_proper_colorings(m).expect("colorings"));
    }
    let exhaustive = graphs.len();
    for m in [6usize, 7] {
        let lo = if m % 2 == 0 { m - 1 } else { m };
        let hi = m * (m - 1) / 2;
        for seed in 0..100u64 {
            let colors = lo + (seed as usize * 31) % (hi - lo + 1);
            graphs.push(proper_coloring(m, colors, seed).expect("generator"));
        }
    }
    let mut extracted = 0;
    for g in &graphs {
        let m = g.m();
        let sq = match antiramsey_reduce(g) {
            Ok(sq) => sq,
            Err(e) => return fail(e.to_string()),
        };
        if sq.n() != m || sq.symbol_count() != g.color_count() + 1 {
            return fail(format!("bad reduction of {g:?}"));
        }
        for t in find_transversal_exact(&sq, SearchMode::All).all.expect("all") {
            match extract_two_factor(&t, g) {
                Ok(x) if x.holds(m) => extracted += 1,
                Ok(x) => return fail(format!("extraction fails checks: {x:?}")),
                Err(e) => return fail(e.to_string()),
            }
        }
    }
    pass(format!(
        "{} colorings ({exhaustive} exhaustive K_4/K_5, 200 seeded K_6/K_7), {extracted} transversals extracted",
        graphs.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 l-number reproduction", l_number_reproduction),
        ("2 constructive 0.75n^2", constructive_three_quarters),
        ("3 LLL certificate soundness", lll_soundness),
        ("4 Konig duality", konig_duality),
        ("5 multiplicity 1-or-n", multiplicity_split),
        ("6 l*-gap construction", lstar_gap_construction),
        ("7 Woolbright-Fu", woolbright_fu),
        ("8 reduction round-trip", reduction_round_trip),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{tag}  {name} ({secs:.1}s): {}", outcome.detail);
        if !outcome.ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
