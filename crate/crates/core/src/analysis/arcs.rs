//! Caps and arcs of Steiner 2-designs.
//!
//! A cap is a symbol set meeting every node in at most two symbols. An arc is a
//! cap of size `rho + 1`; it then meets every node in zero or two symbols.

use serde::{Deserialize, Serialize};

use crate::code::FrCode;
use crate::designs::is_steiner_pair_design;
use crate::error::{FrError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapArc {
    /// Lexicographically first cap of maximum size.
    pub max_cap: Vec<usize>,
    pub arc: Option<Vec<usize>>,
}

pub fn is_cap(code: &FrCode, set: &[usize]) -> bool {
    code.nodes().iter().all(|v| v.iter().filter(|s| set.contains(s)).count() <= 2)
}

pub fn is_arc(code: &FrCode, set: &[usize]) -> bool {
    set.len() == code.rho() + 1
        && code.nodes().iter().all(|v| matches!(v.iter().filter(|s| set.contains(s)).count(), 0 | 2))
}

/// Largest cap of a Steiner 2-design, and an arc when one exists.
pub fn find_cap_and_arc(code: &FrCode) -> Result<CapArc> {
    is_steiner_pair_design(code).map_err(FrError::NotSteiner)?;
    let holders = code.symbol_nodes();
    let mut search = CapSearch {
        holders: &holders,
        theta: code.theta(),
        limit: code.rho() + 1,
        load: vec![0; code.n()],
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run(0);
    let max_cap = search.best;
    let arc = is_arc(code, &max_cap).then(|| max_cap.clone());
    Ok(CapArc { max_cap, arc })
}

struct CapSearch<'a> {
    holders: &'a [Vec<usize>],
    theta: usize,
    limit: usize,
    load: Vec<u8>,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl CapSearch<'_> {
    fn allowed(&self, s: usize) -> bool {
        self.holders[s].iter().all(|&v| self.load[v] < 2)
    }

    /// Returns true once a cap of the maximum possible size is found.
    fn run(&mut self, start: usize) -> bool {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
            if self.best.len() == self.limit {
                return true;
            }
        }
        let remaining = (start..self.theta).filter(|&s| self.allowed(s)).count();
        if self.current.len() + remaining <= self.best.len() {
            return false;
        }
        for s in start..self.theta {
            if !self.allowed(s) {
                continue;
            }
            for &v in &self.holders[s] {
                self.load[v] += 1;
            }
            self.current.push(s);
            let done = self.run(s + 1);
            self.current.pop();
            for &v in &self.holders[s] {
                self.load[v] -= 1;
            }
            if done {
                return true;
            }
        }
        false
    }
}
