//! Codes built from symbol-disjoint copies of a local code.

use serde::{Deserialize, Serialize};

use crate::code::FrCode;
use crate::error::{FrError, Result};

/// Parameters of the copies making up a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalStructure {
    pub copies: usize,
    pub n_loc: usize,
    pub theta_loc: usize,
    pub alpha: usize,
    pub rho_loc: usize,
    /// Largest `j` such that some `j` local nodes miss a local symbol.
    pub delta_loc: usize,
    /// Largest overlap of two nodes of one copy.
    pub beta_loc: usize,
    /// Node lists of the copies, each ascending.
    pub members: Vec<Vec<usize>>,
}

impl LocalStructure {
    /// Split a code into its connected components; all must share `(n, theta, rho)`.
    pub fn detect(code: &FrCode) -> Result<LocalStructure> {
        let members = code.components();
        let first = code.restrict(&members[0])?;
        let p = first.params();
        for comp in &members[1..] {
            let q = code.restrict(comp)?.params();
            if (q.n, q.theta, q.rho) != (p.n, p.theta, p.rho) {
                return Err(FrError::PreconditionFailed("components have different parameters".into()));
            }
        }
        Ok(LocalStructure {
            copies: members.len(),
            n_loc: p.n,
            theta_loc: p.theta,
            alpha: p.alpha,
            rho_loc: p.rho,
            delta_loc: delta(&first),
            beta_loc: first.max_pairwise_intersection(),
            members,
        })
    }

    pub fn copy_of(&self, node: usize) -> usize {
        self.members.iter().position(|m| m.binary_search(&node).is_ok()).expect("node belongs to a copy")
    }
}

/// Largest `j` with `U(j) < theta`, i.e. `n` minus the smallest symbol repetition.
pub fn delta(code: &FrCode) -> usize {
    let min_rep = code.symbol_nodes().iter().map(Vec::len).min().unwrap_or(0);
    code.n() - min_rep
}

/// Slack of the construction condition `(rho-1)*alpha*theta - (theta+alpha)*(delta-1)*beta`.
/// The condition holds when the slack is nonnegative.
pub fn construction2_slack(code: &FrCode, beta: usize) -> i64 {
    let p = code.params();
    let (rho, alpha, theta) = (p.rho as i64, p.alpha as i64, p.theta as i64);
    let d = delta(code) as i64;
    (rho - 1) * alpha * theta - (theta + alpha) * (d - 1) * beta as i64
}

/// Output of the greedy node accumulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Accumulation {
    pub selected: Vec<usize>,
    pub covered: usize,
    /// `n - |selected|`, an upper bound on the minimum distance.
    pub distance_bound: usize,
}

/// Greedily collect nodes covering fewer than `m` symbols, absorbing whole copies
/// while that keeps the coverage below `m`, then the largest partial copy.
pub fn greedy_distance_accumulate(code: &FrCode, local: &LocalStructure, m: usize) -> Result<Accumulation> {
    let n = code.n();
    let mut in_s = vec![false; n];
    let mut covered = vec![false; code.theta()];
    let count = |c: &[bool]| c.iter().filter(|&&x| x).count();
    loop {
        let h = count(&covered);
        if h >= m {
            break;
        }
        let touched: Vec<usize> = (0..local.copies)
            .filter(|&c| {
                let mem = &local.members[c];
                mem.iter().any(|&v| in_s[v]) && !mem.iter().all(|&v| in_s[v])
            })
            .collect();
        let candidates: Vec<usize> = if touched.is_empty() {
            (0..local.copies).filter(|&c| local.members[c].iter().all(|&v| !in_s[v])).take(1).collect()
        } else {
            touched
        };
        let Some(&best) = candidates.iter().max_by_key(|&&c| {
            let b = local.members[c].iter().flat_map(|&v| code.node(v)).filter(|&&s| covered[s]).count();
            (b, std::cmp::Reverse(c))
        }) else {
            break;
        };
        let members = &local.members[best];
        let mut copy_symbols: Vec<usize> = members.iter().flat_map(|&v| code.node(v).iter().copied()).collect();
        copy_symbols.sort_unstable();
        copy_symbols.dedup();
        let already = copy_symbols.iter().filter(|&&s| covered[s]).count();
        if local.theta_loc - already + h < m {
            for &v in members {
                in_s[v] = true;
                for &s in code.node(v) {
                    covered[s] = true;
                }
            }
            continue;
        }
        let outside: Vec<usize> = members.iter().copied().filter(|&v| !in_s[v]).collect();
        if outside.len() > 20 {
            return Err(FrError::BudgetExceeded(format!("{} free nodes in one copy", outside.len())));
        }
        let mut best_subset: Option<(usize, usize, u32)> = None;
        for mask in 1u32..(1 << outside.len()) {
            let mut cov = covered.clone();
            for (b, &v) in outside.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for &s in code.node(v) {
                        cov[s] = true;
                    }
                }
            }
            let hc = count(&cov);
            if hc >= m {
                continue;
            }
            let size = mask.count_ones() as usize;
            let better = match best_subset {
                None => true,
                Some((bs, bh, bm)) => size > bs || (size == bs && (hc < bh || (hc == bh && mask < bm))),
            };
            if better {
                best_subset = Some((size, hc, mask));
            }
        }
        let Some((_, _, mask)) = best_subset else { break };
        for (b, &v) in outside.iter().enumerate() {
            if mask >> b & 1 == 1 {
                in_s[v] = true;
                for &s in code.node(v) {
                    covered[s] = true;
                }
            }
        }
        break;
    }
    let selected: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
    Ok(Accumulation { covered: count(&covered), distance_bound: n - selected.len(), selected })
}
