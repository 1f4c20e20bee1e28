//! Exact file size `M(k)`: the fewest distinct symbols covered by any `k` nodes.
//!
//! Connected codes are searched by a parallel branch-and-bound over node subsets
//! in lexicographic order; codes with several symbol-disjoint components are
//! split, profiled per component and recombined by a min-plus knapsack.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::FrCode;
use crate::error::{FrError, Result};

use super::closed_form::{closed_form, ClosedForm};

#[derive(Debug, Clone, Copy)]
pub struct FileSizeOptions {
    /// Search-tree nodes visited before the search stops with an upper bound.
    pub budget: u64,
    /// Use a closed form when one applies.
    pub closed_form: bool,
    /// Run enumeration as well as the closed form and fail on disagreement.
    pub oracle: bool,
}

impl Default for FileSizeOptions {
    fn default() -> Self {
        FileSizeOptions { budget: 200_000_000, closed_form: true, oracle: false }
    }
}

/// One entry of a file-size profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileSizeEntry {
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    /// False when the search budget ran out; `m` is then an upper bound.
    pub exact: bool,
    /// Lexicographically smallest minimizing node set (per component for split codes).
    pub witness: Option<Vec<usize>>,
    pub method: String,
}

/// `M(k)` for one `k`.
pub fn file_size(code: &FrCode, k: usize, opts: FileSizeOptions) -> Result<FileSizeEntry> {
    if k > code.n() {
        return Err(FrError::PreconditionFailed(format!("k = {k} exceeds n = {}", code.n())));
    }
    let closed = if opts.closed_form || opts.oracle { closed_form(code, k) } else { None };
    if let (Some(ClosedForm { value, rule }), false) = (closed, opts.oracle) {
        return Ok(FileSizeEntry { k, m: value, exact: true, witness: None, method: format!("closed-form:{rule}") });
    }
    let entry = enumerate(code, &[k], opts.budget)?.pop().expect("one entry");
    if let Some(cf) = closed {
        if entry.exact && entry.m != cf.value {
            return Err(FrError::PropertyViolation(format!(
                "closed form {} gives M({k}) = {} but enumeration gives {}",
                cf.rule, cf.value, entry.m
            )));
        }
    }
    check_entry(code, &entry)?;
    Ok(entry)
}

/// `M(k)` for several `k`, sharing work across them.
pub fn file_size_profile(code: &FrCode, ks: &[usize], opts: FileSizeOptions) -> Result<Vec<FileSizeEntry>> {
    if let Some(&k) = ks.iter().find(|&&k| k > code.n()) {
        return Err(FrError::PreconditionFailed(format!("k = {k} exceeds n = {}", code.n())));
    }
    if code.components().len() > 1 && !opts.oracle {
        let entries = enumerate(code, ks, opts.budget)?;
        for e in &entries {
            check_entry(code, e)?;
        }
        return Ok(entries);
    }
    ks.iter().map(|&k| file_size(code, k, opts)).collect()
}

/// Inclusion-exclusion floor `k*alpha - C(k,2)*b` with `b` the largest pairwise overlap.
pub fn inclusion_exclusion_floor(code: &FrCode, k: usize) -> i64 {
    let b = code.max_pairwise_intersection() as i64;
    let k = k as i64;
    k * code.alpha() as i64 - k * (k - 1) / 2 * b
}

/// If pairwise overlaps are at most 1 and `witness` meets `k*alpha - C(k,2)`,
/// every pair of its nodes meets in one symbol and no three share a symbol.
pub fn check_structural_lemma(code: &FrCode, witness: &[usize]) -> Result<()> {
    let k = witness.len();
    if code.max_pairwise_intersection() > 1 || code.union_size(witness) + k * (k.max(1) - 1) / 2 != k * code.alpha() {
        return Ok(());
    }
    for (a, &i) in witness.iter().enumerate() {
        for &j in &witness[a + 1..] {
            if code.intersection(i, j).len() != 1 {
                return Err(FrError::PropertyViolation(format!("nodes {i} and {j} of a bound-meeting witness are disjoint")));
            }
        }
    }
    let mut seen = vec![0u8; code.theta()];
    for &i in witness {
        for &s in code.node(i) {
            seen[s] += 1;
            if seen[s] > 2 {
                return Err(FrError::PropertyViolation(format!("symbol {s} lies in three witness nodes")));
            }
        }
    }
    Ok(())
}

fn check_entry(code: &FrCode, e: &FileSizeEntry) -> Result<()> {
    if let Some(w) = &e.witness {
        if code.union_size(w) != e.m || w.len() != e.k {
            return Err(FrError::PropertyViolation(format!("witness for k = {} does not cover M = {}", e.k, e.m)));
        }
        if e.exact {
            check_structural_lemma(code, w)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Found {
    value: usize,
    witness: Vec<usize>,
    exact: bool,
}

fn enumerate(code: &FrCode, ks: &[usize], budget: u64) -> Result<Vec<FileSizeEntry>> {
    let components = code.components();
    if components.len() == 1 {
        let sets = words(code, &(0..code.n()).collect::<Vec<_>>());
        let beta_max = code.max_pairwise_intersection();
        return Ok(ks
            .iter()
            .map(|&k| {
                let f = min_union(&sets, k, beta_max, budget);
                FileSizeEntry { k, m: f.value, exact: f.exact, witness: Some(f.witness), method: "branch-and-bound".into() }
            })
            .collect());
    }
    let kmax = ks.iter().copied().max().unwrap_or(0);
    let mut cache: HashMap<Vec<Vec<usize>>, Vec<Found>> = HashMap::new();
    let mut profiles: Vec<Vec<Found>> = Vec::with_capacity(components.len());
    for comp in &components {
        let sub = code.restrict(comp)?;
        let key = sub.nodes().to_vec();
        let local = cache
            .entry(key)
            .or_insert_with(|| {
                let sets = words(&sub, &(0..sub.n()).collect::<Vec<_>>());
                let beta_max = sub.max_pairwise_intersection();
                (0..=kmax.min(sub.n())).map(|j| min_union(&sets, j, beta_max, budget)).collect()
            })
            .clone();
        profiles.push(
            local
                .into_iter()
                .map(|f| Found { witness: f.witness.iter().map(|&i| comp[i]).collect(), ..f })
                .collect(),
        );
    }
    // dp[t]: best way to pick t nodes from the components seen so far.
    let mut dp: Vec<Option<Found>> = vec![None; kmax + 1];
    dp[0] = Some(Found { value: 0, witness: Vec::new(), exact: true });
    for prof in &profiles {
        let mut next: Vec<Option<Found>> = vec![None; kmax + 1];
        for (t, cur) in dp.iter().enumerate() {
            let Some(cur) = cur else { continue };
            for (j, f) in prof.iter().enumerate().take(kmax - t + 1) {
                let mut witness = cur.witness.clone();
                witness.extend(&f.witness);
                witness.sort_unstable();
                let cand = Found { value: cur.value + f.value, witness, exact: cur.exact && f.exact };
                let slot = &mut next[t + j];
                let better = match slot {
                    None => true,
                    Some(old) => (cand.value, &cand.witness) < (old.value, &old.witness),
                };
                if better {
                    *slot = Some(cand);
                }
            }
        }
        dp = next;
    }
    Ok(ks
        .iter()
        .map(|&k| {
            let f = dp[k].clone().expect("k <= n");
            FileSizeEntry { k, m: f.value, exact: f.exact, witness: Some(f.witness), method: "components".into() }
        })
        .collect())
}

fn words(code: &FrCode, nodes: &[usize]) -> Vec<Vec<u64>> {
    nodes.iter().map(|&i| crate::bitset::SymbolSet::from_symbols(code.theta(), code.node(i)).words().to_vec()).collect()
}

fn popcount(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

fn new_count(node: &[u64], union: &[u64]) -> usize {
    node.iter().zip(union).map(|(a, b)| (a & !b).count_ones() as usize).sum()
}

/// Greedy upper bound: from every start node, repeatedly add the node adding fewest symbols.
fn greedy(sets: &[Vec<u64>], k: usize) -> Found {
    let n = sets.len();
    let mut best: Option<Found> = None;
    for start in 0..n {
        let mut chosen = vec![start];
        let mut union = sets[start].clone();
        while chosen.len() < k {
            let j = (0..n)
                .filter(|j| !chosen.contains(j))
                .min_by_key(|&j| (new_count(&sets[j], &union), j))
                .expect("k <= n");
            chosen.push(j);
            for (u, w) in union.iter_mut().zip(&sets[j]) {
                *u |= w;
            }
        }
        chosen.sort_unstable();
        let value = popcount(&union);
        if best.as_ref().is_none_or(|b| (value, &chosen) < (b.value, &b.witness)) {
            best = Some(Found { value, witness: chosen, exact: false });
        }
    }
    best.expect("n >= 1")
}

struct Shared<'a> {
    sets: &'a [Vec<u64>],
    k: usize,
    beta_max: usize,
    best: AtomicUsize,
    visited: AtomicU64,
    limit: u64,
    /// Visits a worker accumulates before updating the shared counter.
    batch: u64,
    aborted: AtomicBool,
}

struct Worker<'a, 'b> {
    shared: &'b Shared<'a>,
    local_visits: u64,
    found: Option<(usize, Vec<usize>)>,
    scratch: Vec<usize>,
}

impl Worker<'_, '_> {
    fn tick(&mut self) -> bool {
        self.local_visits += 1;
        if self.local_visits == self.shared.batch {
            let total = self.shared.visited.fetch_add(self.shared.batch, Ordering::Relaxed) + self.shared.batch;
            self.local_visits = 0;
            if total > self.shared.limit {
                self.shared.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.shared.aborted.load(Ordering::Relaxed)
    }

    fn record(&mut self, value: usize, witness: Vec<usize>) {
        if self.found.as_ref().is_none_or(|(v, _)| value < *v) {
            self.found = Some((value, witness));
            self.shared.best.fetch_min(value, Ordering::Relaxed);
        }
    }

    fn pruned(&self, lb: usize) -> bool {
        lb > self.shared.best.load(Ordering::Relaxed) || self.found.as_ref().is_some_and(|(v, _)| lb >= *v)
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, union: &[u64], start: usize) {
        if !self.tick() {
            return;
        }
        let sets = self.shared.sets;
        let n = sets.len();
        let r = self.shared.k - chosen.len();
        let base = popcount(union);
        if r == 0 {
            self.record(base, chosen.clone());
            return;
        }
        if n - start < r {
            return;
        }
        self.scratch.clear();
        self.scratch.extend(sets[start..].iter().map(|s| new_count(s, union)));
        if r == 1 {
            let (off, add) = self.scratch.iter().enumerate().min_by_key(|&(i, &a)| (a, i)).map(|(i, &a)| (i, a)).expect("nonempty");
            if !self.pruned(base + add) {
                let mut w = chosen.clone();
                w.push(start + off);
                self.record(base + add, w);
            }
            return;
        }
        let mut sorted = self.scratch.clone();
        sorted.sort_unstable();
        let rth = sorted[r - 1];
        let sum: usize = sorted[..r].iter().sum();
        let overlap = r * (r - 1) / 2 * self.shared.beta_max;
        let lb = base + rth.max(sum.saturating_sub(overlap));
        if self.pruned(lb) {
            return;
        }
        let mut next = vec![0u64; union.len()];
        for j in start..=n - r {
            for (x, (u, s)) in next.iter_mut().zip(union.iter().zip(&sets[j])) {
                *x = u | s;
            }
            chosen.push(j);
            self.dfs(chosen, &next, j + 1);
            chosen.pop();
            if self.shared.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

fn min_union(sets: &[Vec<u64>], k: usize, beta_max: usize, budget: u64) -> Found {
    let n = sets.len();
    if k == 0 {
        return Found { value: 0, witness: Vec::new(), exact: true };
    }
    if k == n {
        let mut u = vec![0u64; sets[0].len()];
        for s in sets {
            for (a, b) in u.iter_mut().zip(s) {
                *a |= b;
            }
        }
        return Found { value: popcount(&u), witness: (0..n).collect(), exact: true };
    }
    let seed = greedy(sets, k);
    let shared = Shared {
        sets,
        k,
        beta_max,
        best: AtomicUsize::new(seed.value),
        visited: AtomicU64::new(0),
        limit: budget,
        batch: (budget / 64).clamp(1, 1024),
        aborted: AtomicBool::new(false),
    };
    let results: Vec<Option<(usize, Vec<usize>)>> = (0..=n - k)
        .into_par_iter()
        .map(|first| {
            let mut w = Worker { shared: &shared, local_visits: 0, found: None, scratch: Vec::new() };
            let mut chosen = vec![first];
            w.dfs(&mut chosen, &sets[first], first + 1);
            w.found
        })
        .collect();
    let exact = !shared.aborted.load(Ordering::Relaxed);
    let best = results.into_iter().flatten().min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    match best {
        Some((value, witness)) if exact || value <= seed.value => Found { value, witness, exact },
        _ => Found { exact, ..seed },
    }
}
