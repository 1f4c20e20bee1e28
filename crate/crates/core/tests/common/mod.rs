//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use frcode::repair::RepairTable;
use frcode::FrCode;
use itertools::Itertools;

pub fn masks(code: &FrCode) -> Vec<u128> {
    assert!(code.theta() <= 128, "oracle masks hold at most 128 symbols");
    code.nodes().iter().map(|v| v.iter().fold(0u128, |m, &s| m | 1 << s)).collect()
}

/// Minimum union size over all `k`-subsets of nodes.
pub fn brute_file_size(code: &FrCode, k: usize) -> usize {
    let m = masks(code);
    (0..code.n())
        .combinations(k)
        .map(|c| c.iter().fold(0u128, |u, &i| u | m[i]).count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Union size of every node subset, indexed by bitmask. Needs `n <= 22`.
pub fn subset_unions(code: &FrCode) -> Vec<u128> {
    let n = code.n();
    assert!(n <= 22, "subset table too large");
    let m = masks(code);
    let mut u = vec![0u128; 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        u[mask] = u[mask & (mask - 1)] | m[low];
    }
    u
}

/// Minimum distance for file size `m`: fewest failures leaving fewer than `m`
/// symbols, by scanning every survivor set.
pub fn brute_dmin(code: &FrCode, m: usize) -> usize {
    let u = subset_unions(code);
    let largest = u
        .iter()
        .enumerate()
        .filter(|(_, s)| (s.count_ones() as usize) < m)
        .map(|(mask, _)| mask.count_ones() as usize)
        .max()
        .unwrap_or(0);
    code.n() - largest
}

/// Whether `failed` can be rebuilt by taking `beta` symbols from each of `d`
/// distinct live helpers, by exhaustive assignment of symbols to holders.
pub fn oracle_recoverable(code: &FrCode, failed: usize, alive: &[bool], d: usize, beta: usize) -> bool {
    let symbols = code.node(failed).to_vec();
    let holders: Vec<Vec<usize>> = symbols
        .iter()
        .map(|&s| (0..code.n()).filter(|&h| h != failed && alive[h] && code.node(h).contains(&s)).collect())
        .collect();
    let mut load = vec![0usize; code.n()];
    fn go(i: usize, holders: &[Vec<usize>], load: &mut [usize], d: usize, beta: usize) -> bool {
        if i == holders.len() {
            return load.iter().filter(|&&x| x > 0).count() == d && load.iter().all(|&x| x == 0 || x == beta);
        }
        let used = load.iter().filter(|&&x| x > 0).count();
        for &h in &holders[i] {
            if load[h] == beta || (load[h] == 0 && used == d) {
                continue;
            }
            load[h] += 1;
            if go(i + 1, holders, load, d, beta) {
                return true;
            }
            load[h] -= 1;
        }
        false
    }
    go(0, &holders, &mut load, d, beta)
}

/// Whether the failure set can be fully repaired; sequential mode lets repaired
/// nodes help.
pub fn oracle_pattern_ok(code: &FrCode, failed: &[usize], d: usize, beta: usize, sequential: bool) -> bool {
    let mut alive: Vec<bool> = (0..code.n()).map(|i| !failed.contains(&i)).collect();
    if !sequential {
        return failed.iter().all(|&f| oracle_recoverable(code, f, &alive, d, beta));
    }
    let mut pending = failed.to_vec();
    while !pending.is_empty() {
        let Some(k) = pending.iter().position(|&f| oracle_recoverable(code, f, &alive, d, beta)) else {
            return false;
        };
        alive[pending.remove(k)] = true;
    }
    true
}

/// Largest `t` such that every `t`-set of failures is repairable.
pub fn oracle_resilience(code: &FrCode, d: usize, beta: usize, sequential: bool) -> usize {
    for t in 1..=code.n() {
        if !(0..code.n()).combinations(t).all(|f| oracle_pattern_ok(code, &f, d, beta, sequential)) {
            return t - 1;
        }
    }
    code.n()
}

/// Every option of a repair table rebuilds its node exactly from `d` distinct
/// other nodes, `beta` symbols each.
pub fn check_table(code: &FrCode, table: &RepairTable) -> Result<(), String> {
    if table.options.len() != code.n() {
        return Err(format!("table has {} rows for {} nodes", table.options.len(), code.n()));
    }
    for (f, opts) in table.options.iter().enumerate() {
        if opts.is_empty() {
            return Err(format!("node {f} has no repair option"));
        }
        for o in opts {
            let mut helpers = o.helpers.clone();
            helpers.sort_unstable();
            helpers.dedup();
            if o.failed != f || helpers.len() != table.d || helpers.contains(&f) || o.downloads.len() != table.d {
                return Err(format!("bad helper set {:?} for node {f}", o.helpers));
            }
            let mut got: Vec<usize> = Vec::new();
            for (h, set) in o.helpers.iter().zip(&o.downloads) {
                if set.len() != table.beta || !set.iter().all(|s| code.node(*h).contains(s)) {
                    return Err(format!("helper {h} cannot supply {set:?} to node {f}"));
                }
                got.extend(set);
            }
            got.sort_unstable();
            if got != code.node(f) {
                return Err(format!("downloads {got:?} do not rebuild node {f}"));
            }
            if o.bandwidth() != table.d * table.beta {
                return Err(format!("bandwidth {} differs from d*beta", o.bandwidth()));
            }
        }
    }
    Ok(())
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
