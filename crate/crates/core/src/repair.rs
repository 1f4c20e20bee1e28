//! Beta-recoverability: finding `d` helpers that each send `beta` distinct symbols
//! of a failed node.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::code::{sorted_intersection, FrCode, RepairSource};
use crate::error::{FrError, Result};

/// One way to rebuild a node: `downloads[i]` is fetched from `helpers[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairOption {
    pub failed: usize,
    pub helpers: Vec<usize>,
    pub downloads: Vec<Vec<usize>>,
}

impl RepairOption {
    /// Check the download sets are disjoint, of size `beta`, held by their helper,
    /// and together rebuild the failed node.
    pub fn is_valid(&self, code: &FrCode, d: usize, beta: usize) -> bool {
        if self.helpers.len() != d || self.downloads.len() != d || self.helpers.contains(&self.failed) {
            return false;
        }
        let mut all: Vec<usize> = Vec::new();
        for (h, set) in self.helpers.iter().zip(&self.downloads) {
            if set.len() != beta || set.iter().any(|s| code.node(*h).binary_search(s).is_err()) {
                return false;
            }
            all.extend(set);
        }
        all.sort_unstable();
        all == code.node(self.failed)
    }

    /// Symbols moved by this repair.
    pub fn bandwidth(&self) -> usize {
        self.downloads.iter().map(Vec::len).sum()
    }
}

/// Repair options for every node, assuming all other nodes survive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepairTable {
    pub beta: usize,
    pub d: usize,
    pub options: Vec<Vec<RepairOption>>,
}

/// Limits for the helper-set search.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Candidate helper sets examined per node before giving up.
    pub max_candidates: usize,
    /// Options stored per node in a repair table.
    pub max_options: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_candidates: 1_000_000, max_options: 16 }
    }
}

/// Find a repair of `failed` using only nodes in `survivors`.
///
/// Options built from resolution classes are tried first, then helper sets
/// ordered by decreasing overlap with the failed node.
pub fn check_beta_recoverable(
    code: &FrCode,
    failed: usize,
    survivors: &[bool],
    d: usize,
    beta: usize,
    limits: SearchLimits,
) -> Result<Option<RepairOption>> {
    let mut found = None;
    search(code, failed, survivors, d, beta, limits, &mut |opt| {
        found = Some(opt);
        false
    })?;
    Ok(found)
}

/// Build a repair table with `(d, beta)`. Fails if some node has no repair.
pub fn find_repair_table(code: &FrCode, d: usize, beta: usize, limits: SearchLimits) -> Result<RepairTable> {
    check_repair_pair(code, d, beta)?;
    let mut options = Vec::with_capacity(code.n());
    for j in 0..code.n() {
        let survivors: Vec<bool> = (0..code.n()).map(|i| i != j).collect();
        let mut opts: Vec<RepairOption> = Vec::new();
        search(code, j, &survivors, d, beta, limits, &mut |opt| {
            if !opts.contains(&opt) {
                opts.push(opt);
            }
            opts.len() < limits.max_options
        })?;
        if opts.is_empty() {
            return Err(FrError::NotRecoverable { node: j, d, beta });
        }
        options.push(opts);
    }
    Ok(RepairTable { beta, d, options })
}

/// The repair pair to use for a code: the advertised one when present, otherwise
/// the smallest `beta` dividing `alpha` that admits a full repair table.
pub fn infer_repair(code: &FrCode, limits: SearchLimits) -> Result<(RepairTable, RepairSource)> {
    if let Some(r) = code.meta.repair {
        return Ok((find_repair_table(code, r.d, r.beta, limits)?, r.source));
    }
    let alpha = code.alpha();
    for beta in (1..=alpha).filter(|b| alpha.is_multiple_of(*b)) {
        match find_repair_table(code, alpha / beta, beta, limits) {
            Ok(t) => return Ok((t, RepairSource::Computed)),
            Err(FrError::NotRecoverable { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(FrError::NotRecoverable { node: 0, d: 1, beta: alpha })
}

fn check_repair_pair(code: &FrCode, d: usize, beta: usize) -> Result<()> {
    if beta == 0 || d * beta != code.alpha() {
        return Err(FrError::PreconditionFailed(format!(
            "d*beta = {d}*{beta} must equal alpha = {}",
            code.alpha()
        )));
    }
    Ok(())
}

/// Enumerate repair options, calling `emit` until it returns false.
fn search(
    code: &FrCode,
    failed: usize,
    survivors: &[bool],
    d: usize,
    beta: usize,
    limits: SearchLimits,
    emit: &mut dyn FnMut(RepairOption) -> bool,
) -> Result<()> {
    check_repair_pair(code, d, beta)?;
    let target = code.node(failed);
    let alive = |h: usize| h != failed && survivors[h];

    if let Some(classes) = code.resolution() {
        for class in classes.iter().filter(|c| !c.contains(&failed)) {
            let helpers: Vec<usize> =
                class.iter().copied().filter(|&h| !code.intersection(h, failed).is_empty()).collect();
            if helpers.len() == d && helpers.iter().all(|&h| alive(h)) {
                let downloads: Vec<Vec<usize>> = helpers.iter().map(|&h| code.intersection(h, failed)).collect();
                if downloads.iter().all(|s| s.len() == beta) && !emit(RepairOption { failed, helpers, downloads }) {
                    return Ok(());
                }
            }
        }
    }

    let mut candidates: Vec<(usize, Vec<usize>)> = (0..code.n())
        .filter(|&h| alive(h))
        .map(|h| (h, positions(target, &code.intersection(h, failed))))
        .filter(|(_, pos)| pos.len() >= beta)
        .collect();
    candidates.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
    let mut coverable = vec![false; target.len()];
    for (_, pos) in &candidates {
        for &p in pos {
            coverable[p] = true;
        }
    }
    if candidates.len() < d || coverable.iter().any(|&c| !c) {
        return Ok(());
    }

    if beta == 1 {
        // With one symbol per helper a matching over all survivors is exact.
        let adj: Vec<Vec<usize>> = transpose_positions(&candidates, target.len());
        if let Some(assign) = b_matching(&adj, candidates.len(), 1) {
            let mut pairs: Vec<(usize, usize)> =
                assign.iter().enumerate().map(|(pos, &c)| (candidates[c].0, target[pos])).collect();
            pairs.sort_unstable();
            let opt = RepairOption {
                failed,
                helpers: pairs.iter().map(|p| p.0).collect(),
                downloads: pairs.iter().map(|p| vec![p.1]).collect(),
            };
            if !emit(opt) {
                return Ok(());
            }
        } else {
            return Ok(());
        }
    }

    let mut examined = 0usize;
    for combo in (0..candidates.len()).combinations(d) {
        examined += 1;
        if examined > limits.max_candidates {
            return Err(FrError::BudgetExceeded(format!(
                "helper search for node {failed} exceeded {} candidate sets",
                limits.max_candidates
            )));
        }
        let chosen: Vec<(usize, Vec<usize>)> = combo.iter().map(|&c| candidates[c].clone()).collect();
        let adj = transpose_positions(&chosen, target.len());
        if adj.iter().any(Vec::is_empty) {
            continue;
        }
        if let Some(assign) = b_matching(&adj, d, beta) {
            let mut downloads = vec![Vec::new(); d];
            for (pos, &c) in assign.iter().enumerate() {
                downloads[c].push(target[pos]);
            }
            let mut order: Vec<usize> = (0..d).collect();
            order.sort_by_key(|&c| chosen[c].0);
            let opt = RepairOption {
                failed,
                helpers: order.iter().map(|&c| chosen[c].0).collect(),
                downloads: order.iter().map(|&c| downloads[c].clone()).collect(),
            };
            if !emit(opt) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn positions(target: &[usize], symbols: &[usize]) -> Vec<usize> {
    sorted_intersection(target, symbols).iter().map(|s| target.binary_search(s).expect("subset")).collect()
}

/// For each position of the failed node, the candidate indices holding it.
fn transpose_positions(candidates: &[(usize, Vec<usize>)], len: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); len];
    for (c, (_, pos)) in candidates.iter().enumerate() {
        for &p in pos {
            adj[p].push(c);
        }
    }
    adj
}

/// Assign every left vertex to a right vertex with at most `cap` left vertices each.
fn b_matching(adj: &[Vec<usize>], right: usize, cap: usize) -> Option<Vec<usize>> {
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); right];
    let mut owner = vec![usize::MAX; adj.len()];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        cap: usize,
        seen: &mut [bool],
        assigned: &mut [Vec<usize>],
        owner: &mut [usize],
    ) -> bool {
        for &r in &adj[u] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if assigned[r].len() < cap {
                assigned[r].push(u);
                owner[u] = r;
                return true;
            }
            for k in 0..assigned[r].len() {
                let other = assigned[r][k];
                if augment(other, adj, cap, seen, assigned, owner) {
                    assigned[r][k] = u;
                    owner[u] = r;
                    return true;
                }
            }
        }
        false
    }
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        if !augment(u, adj, cap, &mut seen, &mut assigned, &mut owner) {
            return None;
        }
    }
    Some(owner)
}
