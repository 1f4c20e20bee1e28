//! Greedy construction of bound-meeting node sets in unit nets.

use serde::{Deserialize, Serialize};

use crate::code::FrCode;
use crate::error::{FrError, Result};

use super::closed_form::is_unit_net;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetSelection {
    pub nodes: Vec<usize>,
    pub covered: usize,
}

/// Pick one node from each of the first `k` classes so that no three share a symbol.
///
/// Requires a resolvable code whose nodes in distinct classes meet in exactly one
/// symbol, `k <= rho` and `C(k-1, 2) < a` with `a` nodes per class. The selection
/// covers `k*alpha - C(k,2)` symbols.
pub fn net_file_size_greedy(code: &FrCode, k: usize) -> Result<NetSelection> {
    let classes = code.resolution().ok_or(FrError::NoResolution)?;
    if !is_unit_net(code) {
        return Err(FrError::PreconditionFailed("nodes of distinct classes must meet in one symbol".into()));
    }
    let a = classes[0].len();
    if k == 0 || k > classes.len() {
        return Err(FrError::PreconditionFailed(format!("k = {k} must be in 1..={}", classes.len())));
    }
    if (k - 1) * (k.saturating_sub(2)) / 2 >= a {
        return Err(FrError::PreconditionFailed(format!("C(k-1, 2) must be below the class size {a}")));
    }
    let mut chosen = vec![classes[0][0]];
    let mut used = vec![false; code.theta()];
    for class in &classes[1..k] {
        let pick = class
            .iter()
            .copied()
            .find(|&v| chosen.iter().all(|&u| code.intersection(u, v).iter().all(|&s| !used[s])))
            .ok_or_else(|| FrError::PropertyViolation("no admissible node in class".into()))?;
        for &u in &chosen {
            for s in code.intersection(u, pick) {
                used[s] = true;
            }
        }
        chosen.push(pick);
    }
    let covered = code.union_size(&chosen);
    let expected = k * code.alpha() - k * (k - 1) / 2;
    if covered != expected {
        return Err(FrError::PropertyViolation(format!("greedy selection covers {covered}, expected {expected}")));
    }
    Ok(NetSelection { nodes: chosen, covered })
}
