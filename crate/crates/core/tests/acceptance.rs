//! Acceptance criteria, one pass/fail line each.
//!
//! Run with `cargo test -p frcode --test acceptance -- --nocapture`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use frcode::analysis::{
    analyze, bounds, construction2_slack, delta, dmin_exact, file_size, find_cap_and_arc, is_arc, is_cap,
    AnalyzeOptions, BoundsQuery, FileSizeOptions, LocalStructure,
};
use frcode::compose::{
    disjoint_union, find_resolution, is_trivially_expandable, kronecker, select_classes, Expansion, ResolutionSearch,
};
use frcode::designs::{
    affine_resolvable, catalog_load, girth_code, grid, hadamard, identity, j_minus_i, mols_net, mols_squares,
    projective_plane, GraphSpec,
};
use frcode::field::FiniteField;
use frcode::repair::{find_repair_table, infer_repair, SearchLimits};
use frcode::resilience::{resilience, ResilienceMode, ResilienceOptions};
use frcode::sim::{collect, encode_store, fail_and_repair, gf256, OuterCode, StoreConfig};
use frcode::FrCode;
use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Check = Result<(), String>;

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn ensure(what: &str, cond: bool) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn exact() -> FileSizeOptions {
    FileSizeOptions::default()
}

fn enumerated() -> FileSizeOptions {
    FileSizeOptions { closed_form: false, ..Default::default() }
}

fn m_of(code: &FrCode, k: usize) -> Result<usize, String> {
    let e = file_size(code, k, exact()).map_err(|e| e.to_string())?;
    ensure(&format!("M({k}) is exact"), e.exact)?;
    Ok(e.m)
}

fn dmin(code: &FrCode, m: usize) -> Result<usize, String> {
    dmin_exact(code, m, exact()).map_err(|e| e.to_string())
}

fn singleton(n: usize, alpha: usize, m: usize) -> usize {
    n + 1 - m.div_ceil(alpha)
}

fn fano() -> FrCode {
    projective_plane(2).unwrap()
}

fn static_tau(code: &FrCode, d: usize, beta: usize, mode: ResilienceMode) -> Result<usize, String> {
    let r = resilience(code, d, beta, mode, ResilienceOptions::default()).map_err(|e| e.to_string())?;
    ensure("resilience level is exhaustive", r.exhaustive)?;
    Ok(r.tau)
}

fn ac1() -> Check {
    let f = fano();
    let p = f.validate().map_err(|e| e.to_string())?;
    eq("params", (p.n, p.theta, p.alpha, p.rho), (7, 7, 3, 3))?;
    eq("M(3)", m_of(&f, 3)?, 6)?;
    eq("M(3) oracle", brute_file_size(&f, 3), 6)?;
    eq("static resilience", static_tau(&f, 3, 1, ResilienceMode::Static)?, 2)?;
    eq("static resilience oracle", oracle_resilience(&f, 3, 1, false), 2)
}

fn ac2() -> Check {
    let g = grid(3).unwrap();
    eq("M(3)", m_of(&g, 3)?, 7)?;
    let report = analyze(&g, &AnalyzeOptions { ks: vec![3], m: None, file_size: exact(), resilience: None })
        .map_err(|e| e.to_string())?;
    let v = report.verdicts.ok_or("no verdicts")?;
    eq("singleton met at k=3", (v.singleton_by_k, v.singleton_met), (Some(true), Some(true)))?;
    eq("dmin oracle equals Singleton", brute_dmin(&g, 7), singleton(6, 3, 7))?;
    for a in 2..=6 {
        let code = grid(a).unwrap();
        for k in 1..=a {
            let fast = file_size(&code, k, exact()).map_err(|e| e.to_string())?;
            ensure(&format!("grid({a}) k={k} uses the closed form"), fast.method.starts_with("closed-form"))?;
            eq(&format!("grid({a}) M({k})"), fast.m, brute_file_size(&code, k))?;
        }
    }
    Ok(())
}

fn ac3() -> Check {
    let cat = catalog_load("MOLS-16").map_err(|e| e.to_string())?;
    let net = mols_net(&FiniteField::new(2, 2).unwrap(), 4).map_err(|e| e.to_string())?;
    for (name, c) in [("catalog", &cat), ("mols_net", &net)] {
        let p = c.params();
        eq(&format!("{name} params"), (p.n, p.theta, p.alpha, p.rho), (16, 16, 4, 4))?;
        eq(&format!("{name} M(4)"), m_of(c, 4)?, 10)?;
        eq(&format!("{name} M(4) oracle"), brute_file_size(c, 4), 10)?;
        let overlaps = |c: &FrCode| (0..c.n()).tuple_combinations().map(|(i, j)| c.intersection(i, j).len()).counts();
        eq(&format!("{name} overlap distribution"), overlaps(c), overlaps(&cat))?;
    }
    let sub = select_classes(&cat, &[0, 1, 2]).map_err(|e| e.to_string())?;
    eq("reduced M(3)", m_of(&sub, 3)?, 9)?;
    eq("reduced M(3) oracle", brute_file_size(&sub, 3), 9)?;
    let want = singleton(sub.n(), sub.alpha(), 9);
    eq("reduced dmin", dmin(&sub, 9)?, want)?;
    eq("reduced dmin oracle", brute_dmin(&sub, 9), want)
}

fn ac4() -> Check {
    let h = hadamard(2).map_err(|e| e.to_string())?;
    let p = h.validate().map_err(|e| e.to_string())?;
    eq("params", (p.n, p.theta, p.alpha, p.rho, p.beta), (14, 8, 4, 7, 2))?;
    let table = find_repair_table(&h, 2, 2, SearchLimits::default()).map_err(|e| e.to_string())?;
    check_table(&h, &table)?;
    eq("M(2)", m_of(&h, 2)?, 6)?;
    eq("M(2) oracle", brute_file_size(&h, 2), 6)?;
    eq("singleton by k", 6usize.div_ceil(4), 2)?;
    eq("dmin at M=6", dmin(&h, 6)?, singleton(14, 4, 6))?;
    eq("dmin oracle", brute_dmin(&h, 6), singleton(14, 4, 6))?;
    match is_trivially_expandable(&h, 2).map_err(|e| e.to_string())? {
        Expansion::Expandable(_) => Err("hadamard(2) reported as a trivial expansion".into()),
        _ => Ok(()),
    }
}

fn ac5() -> Check {
    let c = affine_resolvable(3, 3, 3).map_err(|e| e.to_string())?;
    let (q, m) = (3usize, 3u32);
    for (k, want) in [(1usize, 9usize), (2, 15), (3, 19)] {
        let formula = q.pow(m) - q.pow(m - k as u32) * (q - 1).pow(k as u32);
        eq(&format!("formula M({k})"), formula, want)?;
        eq(&format!("M({k})"), m_of(&c, k)?, want)?;
        eq(&format!("M({k}) oracle"), brute_file_size(&c, k), want)?;
        let with_oracle = file_size(&c, k, FileSizeOptions { oracle: true, ..Default::default() });
        eq(&format!("M({k}) with enumeration cross-check"), with_oracle.map(|e| e.m).map_err(|e| e.to_string())?, want)?;
    }
    let beta = c.max_pairwise_intersection();
    let floor = 3 * c.alpha() - beta * 3;
    eq("inclusion-exclusion floor at k=3", floor, 18)?;
    ensure("M(3) strictly exceeds the floor", 19 > floor)
}

fn max_cap_oracle(code: &FrCode) -> usize {
    let theta = code.theta();
    let m = masks(code);
    (0u32..1 << theta)
        .filter(|s| m.iter().all(|&v| (v & *s as u128).count_ones() <= 2))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

fn ac6() -> Check {
    let d1 = catalog_load("D1").map_err(|e| e.to_string())?;
    let d2 = catalog_load("D2").map_err(|e| e.to_string())?;
    let (t1, t2) = (d1.transpose(), d2.transpose());
    eq("D1^T M(7)", m_of(&t1, 7)?, 29)?;
    eq("D2^T M(7)", m_of(&t2, 7)?, 28)?;
    eq("D1^T M(7) oracle", brute_file_size(&t1, 7), 29)?;
    eq("D2^T M(7) oracle", brute_file_size(&t2, 7), 28)?;
    let c1 = find_cap_and_arc(&d1).map_err(|e| e.to_string())?;
    let c2 = find_cap_and_arc(&d2).map_err(|e| e.to_string())?;
    eq("D1 max cap", c1.max_cap.len(), 6)?;
    eq("D2 max cap", c2.max_cap.len(), 8)?;
    eq("D1 max cap oracle", max_cap_oracle(&d1), 6)?;
    eq("D2 max cap oracle", max_cap_oracle(&d2), 8)?;
    ensure("D1 witness is a cap", is_cap(&d1, &[0, 1, 3, 6, 7, 9]))?;
    ensure("D2 witness is an arc", is_arc(&d2, &[1, 2, 4, 6, 7, 8, 9, 13]))?;
    ensure("D1 has no arc", c1.arc.is_none())
}

fn ac7() -> Check {
    let s = catalog_load("S2-4-16").map_err(|e| e.to_string())?;
    let arc = [0, 1, 2, 3, 4, 15];
    ensure("given set is an arc", is_arc(&s, &arc))?;
    eq("arc size rho+1", arc.len(), s.rho() + 1)?;
    eq("no cap exceeds the arc", max_cap_oracle(&s), 6)?;
    let found = find_cap_and_arc(&s).map_err(|e| e.to_string())?;
    ensure("search finds an arc", found.arc.is_some())?;
    let t = s.transpose();
    for k in 1..=6 {
        let want = 5 * k - k * (k - 1) / 2;
        eq(&format!("M({k})"), m_of(&t, k)?, want)?;
        eq(&format!("M({k}) oracle"), brute_file_size(&t, k), want)?;
        if k <= 3 {
            let bound = singleton(t.n(), t.alpha(), want);
            eq(&format!("k={k} singleton by k"), want.div_ceil(t.alpha()), k)?;
            eq(&format!("k={k} dmin"), dmin(&t, want)?, bound)?;
            eq(&format!("k={k} dmin oracle"), brute_dmin(&t, want), bound)?;
        }
    }
    Ok(())
}

fn small_factors() -> Vec<FrCode> {
    let mut v = vec![
        grid(2).unwrap(),
        grid(3).unwrap(),
        j_minus_i(3).unwrap(),
        j_minus_i(4).unwrap(),
        identity(2).unwrap(),
        identity(3).unwrap(),
        fano(),
        girth_code(&GraphSpec::complete(4)).unwrap(),
        girth_code(&GraphSpec::cycle(5)).unwrap(),
    ];
    v.push(hadamard(1).unwrap());
    v
}

fn ac8() -> Check {
    let t = j_minus_i(3).unwrap();
    let (k, meta) = kronecker(&t, &t).map_err(|e| e.to_string())?;
    let p = k.params();
    eq("params", (p.n, p.theta, p.alpha, p.rho), (9, 9, 4, 4))?;
    eq("repair pair", (p.beta, p.d, meta.certified), (2, 2, true))?;
    eq("M(2)", m_of(&k, 2)?, 6)?;
    eq("M(2) oracle", brute_file_size(&k, 2), 6)?;
    eq("sequential resilience", static_tau(&k, 2, 2, ResilienceMode::Sequential)?, 3)?;
    eq("sequential resilience oracle", oracle_resilience(&k, 2, 2, true), 3)?;

    let pool = small_factors();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..20 {
        let (a, b) = (&pool[rng.gen_range(0..pool.len())], &pool[rng.gen_range(0..pool.len())]);
        let (prod, _) = kronecker(a, b).map_err(|e| e.to_string())?;
        let (pa, pb, pp) = (a.params(), b.params(), prod.params());
        eq(
            &format!("trial {trial} parameter law"),
            (pp.n, pp.theta, pp.alpha, pp.rho),
            (pa.n * pb.n, pa.theta * pb.theta, pa.alpha * pb.alpha, pa.rho * pb.rho),
        )?;
        let n1 = a.n();
        for x in 0..prod.n() {
            for y in 0..prod.n() {
                let want = a.intersection(x % n1, y % n1).len() * b.intersection(x / n1, y / n1).len();
                if prod.intersection(x, y).len() != want {
                    return Err(format!("trial {trial}: overlap of nodes {x},{y} does not factor"));
                }
            }
        }
    }

    let g = grid(2).unwrap();
    let (mut gg, _) = kronecker(&g, &g).map_err(|e| e.to_string())?;
    gg.clear_resolution();
    match find_resolution(&gg, 64, 1_000_000) {
        ResolutionSearch::Found(classes) => {
            eq("class count", classes.len(), 4)?;
            gg.with_resolution(classes).map(|_| ()).map_err(|e| e.to_string())
        }
        other => Err(format!("no resolution found: {other:?}")),
    }
}

fn ac9() -> Check {
    let p = girth_code(&GraphSpec::petersen()).map_err(|e| e.to_string())?;
    let params = p.params();
    eq("params", (params.n, params.theta, params.alpha, params.rho, params.d), (10, 15, 3, 2, 3))?;
    eq("M(5)", m_of(&p, 5)?, 10)?;
    eq("M(5) oracle", brute_file_size(&p, 5), 10)?;
    let local = params.n + 2 - 10usize.div_ceil(params.alpha) - 10usize.div_ceil(params.d * params.alpha);
    eq("local bound formula", local, 6)?;
    let report = bounds(params.n, params.alpha, BoundsQuery { m: 10, k: Some(5), d: params.d, local: None, dmin: None });
    eq("reported local bound", report.local, 6)?;
    eq("dmin(M=10)", dmin(&p, 10)?, 6)?;
    eq("dmin oracle", brute_dmin(&p, 10), 6)?;
    let s = 3;
    let m = masks(&p);
    for k in 1..=5 {
        for c in (0..p.n()).combinations(k) {
            let u = c.iter().fold(0u128, |u, &i| u | m[i]).count_ones() as usize;
            if u < k * (s - 1) {
                return Err(format!("nodes {c:?} cover {u} < {}", k * (s - 1)));
            }
        }
    }
    Ok(())
}

/// Copies of one local code: U(total k) by min-plus over per-copy brute force.
fn stack_file_size_oracle(local: &FrCode, copies: usize, k: usize) -> usize {
    let u: Vec<usize> = (0..=local.n()).map(|j| brute_file_size(local, j)).collect();
    let mut best = vec![usize::MAX; k + 1];
    best[0] = 0;
    for _ in 0..copies {
        let mut next = vec![usize::MAX; k + 1];
        for (have, &cost) in best.iter().enumerate().filter(|(_, c)| **c != usize::MAX) {
            for j in 0..=local.n().min(k - have) {
                next[have + j] = next[have + j].min(cost + u[j]);
            }
        }
        best = next;
    }
    best[k]
}

/// Copies of one local code: most nodes covering fewer than `m` symbols, by
/// knapsack over per-copy brute force.
fn stack_dmin_oracle(local: &FrCode, copies: usize, m: usize) -> usize {
    let u: Vec<usize> = (0..=local.n()).map(|j| brute_file_size(local, j)).collect();
    let most = |c: usize| (0..=local.n()).filter(|&j| u[j] <= c).max().unwrap();
    let mut best = vec![0usize; m];
    for _ in 0..copies {
        let mut next = vec![0usize; m];
        for (budget, slot) in next.iter_mut().enumerate() {
            *slot = (0..=budget).map(|c| most(c) + best[budget - c]).max().unwrap();
        }
        best = next;
    }
    copies * local.n() - best[m - 1]
}

fn ac10() -> Check {
    let f = fano();
    let stack = disjoint_union(&f, 4).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let e = file_size(&stack, 15, enumerated()).map_err(|e| e.to_string())?;
    ensure("k=15 search is exact", e.exact)?;
    eq("stack M(15)", e.m, 17)?;
    eq("stack M(15) oracle", stack_file_size_oracle(&f, 4, 15), 17)?;
    eq("stack dmin(M=17)", dmin(&stack, 17)?, 14)?;
    eq("stack dmin oracle", stack_dmin_oracle(&f, 4, 17), 14)?;
    let local = LocalStructure::detect(&stack).map_err(|e| e.to_string())?;
    let b = bounds(28, 3, BoundsQuery { m: 17, k: Some(15), d: 3, local: Some(&local), dmin: Some(14) });
    eq("stack mincor bound", b.mincor, Some(14))?;
    let branch = 28 - (17 * 3usize).div_ceil(3) + 3;
    eq("branch formula", branch, 14)?;
    ensure("stack under 120 s", start.elapsed() < Duration::from_secs(120))?;

    let (small, _) = kronecker(&identity(3).unwrap(), &j_minus_i(3).unwrap()).map_err(|e| e.to_string())?;
    eq("I x cycle M(4)", m_of(&small, 4)?, 5)?;
    eq("I x cycle M(4) oracle", brute_file_size(&small, 4), 5)?;
    eq("I x cycle dmin(M=5)", dmin(&small, 5)?, 6)?;
    eq("I x cycle dmin oracle", brute_dmin(&small, 5), 6)?;
    let local = LocalStructure::detect(&small).map_err(|e| e.to_string())?;
    let b = bounds(9, 2, BoundsQuery { m: 5, k: Some(4), d: 2, local: Some(&local), dmin: Some(6) });
    eq("I x cycle bound", b.local_fr, Some(6))
}

fn ac11() -> Check {
    let aff = affine_resolvable(3, 3, 9).map_err(|e| e.to_string())?;
    let pg = fano();
    for (name, code, beta, want) in [("affine", &aff, 3usize, 108i64), ("projective", &pg, 1, 12)] {
        let p = code.params();
        let delta_oracle = (0..code.theta())
            .map(|s| code.nodes().iter().filter(|v| !v.contains(&s)).count())
            .max()
            .unwrap();
        eq(&format!("{name} delta"), delta(code), delta_oracle)?;
        let formula = (p.rho as i64 - 1) * (p.alpha * p.theta) as i64
            - ((p.theta + p.alpha) * (delta_oracle - 1) * beta) as i64;
        eq(&format!("{name} slack formula"), formula, want)?;
        eq(&format!("{name} slack"), construction2_slack(code, beta), want)?;
    }
    eq("fano delta by enumeration", pg.n() - brute_dmin(&pg, 7), delta(&pg))?;
    let two = disjoint_union(&pg, 2).map_err(|e| e.to_string())?;
    eq("two copies dmin(M=10)", dmin(&two, 10)?, 7)?;
    eq("two copies dmin oracle", brute_dmin(&two, 10), 7)?;
    let local = LocalStructure::detect(&two).map_err(|e| e.to_string())?;
    let b = bounds(14, 3, BoundsQuery { m: 10, k: None, d: 3, local: Some(&local), dmin: Some(7) });
    eq("mincor bound", b.mincor, Some(7))?;
    eq("mincor formula", 14 - (10 * 3usize).div_ceil(3) + 3, 7)
}

struct Harness {
    code: FrCode,
    m_file: usize,
    k: usize,
    failure_size: usize,
}

fn run_harness(h: &Harness, rng: &mut ChaCha8Rng) -> Check {
    let (table, _) = infer_repair(&h.code, SearchLimits::default()).map_err(|e| e.to_string())?;
    check_table(&h.code, &table)?;
    let gamma = table.d * table.beta;
    let cfg = StoreConfig { m_file: h.m_file, payload_size: 64 };
    let mut file = vec![0u8; h.m_file * 64 - 8];
    rng.fill_bytes(&mut file);
    let patterns: Vec<Vec<usize>> = (0..h.code.n()).combinations(h.failure_size).collect();
    for failed in patterns {
        let mut st = encode_store(&file, &h.code, cfg).map_err(|e| e.to_string())?;
        fail_and_repair(&mut st, &failed, &table, ResilienceMode::Sequential)
            .map_err(|e| format!("failures {failed:?}: {e}"))?;
        eq(&format!("download for {failed:?}"), st.symbols_downloaded, gamma * failed.len())?;
        for _ in 0..20 {
            let mut subset = sample(rng, h.code.n(), h.k).into_vec();
            subset.sort_unstable();
            let got = collect(&mut st, &subset).map_err(|e| format!("collect {subset:?}: {e}"))?;
            ensure(&format!("collect {subset:?} after {failed:?} is byte exact"), got == file)?;
        }
    }
    Ok(())
}

fn ac12() -> Check {
    let outer = OuterCode::new(10, 9).map_err(|e| e.to_string())?;
    let msg: Vec<Vec<u8>> = (0..9u8).map(|i| vec![i.wrapping_mul(37).wrapping_add(5), i]).collect();
    let coded = outer.encode(&msg);
    let parity: Vec<u8> = (0..2).map(|b| msg.iter().fold(0u8, |acc, m| gf256::add(acc, m[b]))).collect();
    eq("single parity is the sum", coded[9].clone(), parity)?;

    let k5 = girth_code(&GraphSpec::complete(5)).map_err(|e| e.to_string())?;
    let (t, _) = kronecker(&j_minus_i(3).unwrap(), &j_minus_i(3).unwrap()).map_err(|e| e.to_string())?;
    let cases = [
        ("example 1", Harness { code: k5, m_file: 9, k: 3, failure_size: 1 }),
        ("fano", Harness { code: fano(), m_file: 6, k: 3, failure_size: 1 }),
        ("hadamard(2)", Harness { code: hadamard(2).unwrap(), m_file: 6, k: 2, failure_size: 1 }),
        ("product", Harness { code: t, m_file: 6, k: 2, failure_size: 3 }),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (name, h) in &cases {
        run_harness(h, &mut rng).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn field_axioms(f: &FiniteField, rng: &mut ChaCha8Rng) -> Check {
    let q = f.order();
    for _ in 0..1000 {
        let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
        let tag = format!("GF({q}) at ({a},{b},{c})");
        ensure(&format!("{tag}: add commutes"), f.add(a, b) == f.add(b, a))?;
        ensure(&format!("{tag}: mul commutes"), f.mul(a, b) == f.mul(b, a))?;
        ensure(&format!("{tag}: add associates"), f.add(f.add(a, b), c) == f.add(a, f.add(b, c)))?;
        ensure(&format!("{tag}: mul associates"), f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)))?;
        ensure(&format!("{tag}: distributes"), f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)))?;
        ensure(&format!("{tag}: identities"), f.add(a, 0) == a && f.mul(a, 1) == a)?;
        ensure(&format!("{tag}: negation"), f.add(a, f.neg(a)) == 0 && f.sub(f.add(a, b), b) == a)?;
        match f.inv(a) {
            Some(i) => ensure(&format!("{tag}: inverse"), a != 0 && f.mul(a, i) == 1)?,
            None => ensure(&format!("{tag}: only zero lacks an inverse"), a == 0)?,
        }
    }
    Ok(())
}

fn mols_orthogonal(a: u64) -> Check {
    let f = FiniteField::of_order(a).map_err(|e| e.to_string())?;
    let a = a as usize;
    let squares = mols_squares(&f, a - 1);
    eq(&format!("order {a} square count"), squares.len(), a - 1)?;
    for (i, sq) in squares.iter().enumerate() {
        for r in 0..a {
            let row: std::collections::BTreeSet<_> = sq[r].iter().collect();
            let col: std::collections::BTreeSet<_> = (0..a).map(|c| sq[c][r]).collect();
            ensure(&format!("order {a} square {i} is Latin"), row.len() == a && col.len() == a)?;
        }
    }
    for (x, y) in (0..squares.len()).tuple_combinations() {
        let pairs: std::collections::BTreeSet<_> =
            (0..a).cartesian_product(0..a).map(|(r, c)| (squares[x][r][c], squares[y][r][c])).collect();
        eq(&format!("order {a} squares {x},{y} orthogonal"), pairs.len(), a * a)?;
    }
    Ok(())
}

/// Every k-subset meeting `k*alpha - C(k,2)` on a code with overlaps at most 1
/// has all pairwise overlaps 1 and no symbol in three of its nodes.
fn structural_lemma_corpus() -> Check {
    let d1 = catalog_load("D1").unwrap();
    let corpus = vec![
        fano(),
        grid(3).unwrap(),
        grid(4).unwrap(),
        mols_net(&FiniteField::new(5, 1).unwrap(), 4).unwrap(),
        catalog_load("MOLS-16").unwrap(),
        catalog_load("S2-4-16").unwrap().transpose(),
        girth_code(&GraphSpec::petersen()).unwrap(),
        girth_code(&GraphSpec::complete(5)).unwrap(),
        d1.transpose(),
    ];
    let mut witnesses = 0;
    for code in &corpus {
        if code.max_pairwise_intersection() > 1 {
            continue;
        }
        let m = masks(code);
        let alpha = code.alpha();
        for k in 2..=code.n().min(5) {
            let target = k * alpha - k * (k - 1) / 2;
            for c in (0..code.n()).combinations(k) {
                if c.iter().fold(0u128, |u, &i| u | m[i]).count_ones() as usize != target {
                    continue;
                }
                witnesses += 1;
                frcode::analysis::check_structural_lemma(code, &c).map_err(|e| e.to_string())?;
                for (x, y) in c.iter().tuple_combinations() {
                    ensure("pairwise overlap 1", (m[*x] & m[*y]).count_ones() == 1)?;
                }
                for (x, y, z) in c.iter().tuple_combinations() {
                    ensure("no triple overlap", m[*x] & m[*y] & m[*z] == 0)?;
                }
            }
            let e = file_size(code, k, enumerated()).map_err(|e| e.to_string())?;
            eq("enumeration agrees with oracle", e.m, brute_file_size(code, k))?;
        }
    }
    ensure("corpus has bound-meeting witnesses", witnesses > 0)
}

fn repair_table_corpus() -> Check {
    let mut corpus = small_factors();
    corpus.extend([
        hadamard(2).unwrap(),
        catalog_load("MOLS-16").unwrap(),
        catalog_load("D1").unwrap(),
        catalog_load("S2-4-16").unwrap(),
        affine_resolvable(3, 3, 4).unwrap(),
        girth_code(&GraphSpec::petersen()).unwrap(),
        kronecker(&j_minus_i(3).unwrap(), &j_minus_i(3).unwrap()).unwrap().0,
        kronecker(&grid(2).unwrap(), &grid(2).unwrap()).unwrap().0,
    ]);
    for code in corpus.iter().filter(|c| c.rho() > 1) {
        let (table, _) = infer_repair(code, SearchLimits::default()).map_err(|e| e.to_string())?;
        check_table(code, &table)?;
        for row in &table.options {
            for o in row {
                ensure("option validates", o.is_valid(code, table.d, table.beta))?;
            }
        }
    }
    Ok(())
}

fn ac13() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let fields = [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (7, 1)];
    for (p, m) in fields {
        field_axioms(&FiniteField::new(p, m).map_err(|e| e.to_string())?, &mut rng)?;
    }
    for a in [3, 4, 5, 7, 8] {
        mols_orthogonal(a)?;
    }
    structural_lemma_corpus()?;
    repair_table_corpus()
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("AC-1 Fano parameters, file size and static resilience", ac1),
        ("AC-2 grid file size, Singleton and closed form", ac2),
        ("AC-3 MOLS nets and class selection", ac3),
        ("AC-4 Hadamard code parameters and non-expandability", ac4),
        ("AC-5 affine resolvable file sizes", ac5),
        ("AC-6 transposed triple systems and caps", ac6),
        ("AC-7 transposed affine plane and arc", ac7),
        ("AC-8 Kronecker products", ac8),
        ("AC-9 girth code locality", ac9),
        ("AC-10 stacked local codes", ac10),
        ("AC-11 local construction condition", ac11),
        ("AC-12 simulator round trip", ac12),
        ("AC-13 property suites", ac13),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] {name} ({secs:.2}s)"),
            Err(e) => {
                println!("[FAIL] {name} ({secs:.2}s): {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
