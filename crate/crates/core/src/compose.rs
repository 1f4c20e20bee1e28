//! Operations building new codes from old ones.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bitset::SymbolSet;
use crate::code::{CodeParams, FrCode, LocalMeta, Meta, RepairMeta, RepairSource};
use crate::error::{FrError, Result};
use crate::repair::{find_repair_table, SearchLimits};
use crate::resilience::binomial;

/// Provenance of a Kronecker product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KroneckerMeta {
    pub left: CodeParams,
    pub right: CodeParams,
    pub product: CodeParams,
    /// Repair pair predicted from the factors, if any.
    pub predicted_beta: Option<usize>,
    /// True when a full repair table was found at the predicted pair.
    pub certified: bool,
}

fn descriptor(code: &FrCode) -> serde_json::Value {
    json!({"family": code.meta.family, "params": code.meta.params})
}

fn lineage_with(code: &FrCode, step: serde_json::Value) -> Vec<serde_json::Value> {
    let mut l = code.meta.lineage.clone();
    l.push(step);
    l
}

/// Kronecker product of incidence matrices.
///
/// Symbol `(x, y)` becomes `x * theta2 + y`; node `(i, j) = V_i x W_j` sits at
/// index `j * n1 + i`. A product of resolvable codes is resolvable with classes
/// `P x Q`. When both factors have pairwise overlaps at most 1 and equal node
/// size `a`, the product is certified repairable with `beta = a`.
pub fn kronecker(c1: &FrCode, c2: &FrCode) -> Result<(FrCode, KroneckerMeta)> {
    let (n1, n2, t2) = (c1.n(), c2.n(), c2.theta());
    let mut nodes = Vec::with_capacity(n1 * n2);
    for j in 0..n2 {
        for i in 0..n1 {
            let mut node: Vec<usize> =
                c1.node(i).iter().flat_map(|&x| c2.node(j).iter().map(move |&y| x * t2 + y)).collect();
            node.sort_unstable();
            nodes.push(node);
        }
    }
    let mut code = FrCode::new(c1.theta() * t2, nodes)?;
    if let (Some(r1), Some(r2)) = (c1.resolution(), c2.resolution()) {
        let mut classes = Vec::with_capacity(r1.len() * r2.len());
        for p in r1 {
            for q in r2 {
                let mut class: Vec<usize> = q.iter().flat_map(|&j| p.iter().map(move |&i| j * n1 + i)).collect();
                class.sort_unstable();
                classes.push(class);
            }
        }
        code = code.with_resolution(classes)?;
    }
    let predicted = (c1.alpha() == c2.alpha()
        && c1.max_pairwise_intersection() <= 1
        && c2.max_pairwise_intersection() <= 1)
        .then_some(c1.alpha());
    let mut meta = Meta::family("kronecker");
    meta.params.insert("left".into(), descriptor(c1));
    meta.params.insert("right".into(), descriptor(c2));
    meta.lineage = lineage_with(c1, json!({"op": "kronecker", "right": descriptor(c2)}));
    let mut certified = false;
    if let Some(beta) = predicted {
        let d = code.alpha() / beta;
        if find_repair_table(&code, d, beta, SearchLimits::default()).is_ok() {
            meta = meta.with_repair(beta, d, RepairSource::Certified);
            certified = true;
        }
    }
    code.meta = meta;
    let km = KroneckerMeta {
        left: c1.params(),
        right: c2.params(),
        product: code.params(),
        predicted_beta: predicted,
        certified,
    };
    Ok((code, km))
}

/// Replace every symbol `s` by the `m` symbols `s*m .. s*m + m`.
pub fn beta_expand(code: &FrCode, m: usize) -> Result<FrCode> {
    if m == 0 {
        return Err(FrError::PreconditionFailed("expansion factor must be positive".into()));
    }
    let nodes = code.nodes().iter().map(|v| v.iter().flat_map(|&s| s * m..s * m + m).collect()).collect();
    let mut out = FrCode::new(code.theta() * m, nodes)?;
    if let Some(classes) = code.resolution() {
        out = out.with_resolution(classes.to_vec())?;
    }
    let mut meta = Meta::family("expand");
    meta.params.insert("base".into(), descriptor(code));
    meta.params.insert("m".into(), m.into());
    meta.lineage = lineage_with(code, json!({"op": "expand", "m": m}));
    meta.repair = code.meta.repair.map(|r| RepairMeta { beta: r.beta * m, ..r });
    meta.local = code.meta.local.map(|l| LocalMeta { theta_loc: l.theta_loc * m, ..l });
    out.meta = meta;
    Ok(out)
}

/// Outcome of the trivial-expansion test.
#[derive(Debug, Clone, PartialEq)]
pub enum Expansion {
    /// The code is `beta_expand(base, beta)` up to symbol grouping.
    Expandable(FrCode),
    /// More nodes than distinct `alpha/beta`-subsets of `theta/beta` groups.
    CountingObstruction { n: usize, bound: u128 },
    /// Symbols `s` and `t` cannot share a group: `node` holds exactly one of them.
    SymbolPair { s: usize, t: usize, node: usize },
}

/// Parameter-level counting test: a trivially expandable code has at most
/// `C(theta/beta, alpha/beta)` distinct nodes.
pub fn expansion_count_bound(theta: usize, alpha: usize, beta: usize) -> u128 {
    binomial((theta / beta) as u64, (alpha / beta) as u64)
}

/// Decide whether a code is a `beta`-expansion of a smaller code.
pub fn is_trivially_expandable(code: &FrCode, beta: usize) -> Result<Expansion> {
    let (theta, alpha, n) = (code.theta(), code.alpha(), code.n());
    if beta == 0 || alpha % beta != 0 {
        return Err(FrError::NonDivisible(beta, alpha));
    }
    if theta % beta != 0 {
        return Err(FrError::NonDivisible(beta, theta));
    }
    let bound = expansion_count_bound(theta, alpha, beta);
    if n as u128 > bound {
        return Ok(Expansion::CountingObstruction { n, bound });
    }
    let holders = code.symbol_nodes();
    let mut groups: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (s, h) in holders.iter().enumerate() {
        groups.entry(h).or_default().push(s);
    }
    for members in groups.values() {
        if members.len() % beta != 0 {
            let s = members[0];
            let t = (0..theta)
                .filter(|&t| t != s)
                .max_by_key(|&t| (common(&holders[s], &holders[t]), std::cmp::Reverse(t)))
                .expect("theta > 1");
            let node = symmetric_difference_first(&holders[s], &holders[t]);
            return Ok(Expansion::SymbolPair { s, t, node });
        }
    }
    let mut group_of = vec![0usize; theta];
    let mut chunks: Vec<Vec<usize>> = groups.values().flat_map(|m| m.chunks(beta).map(<[usize]>::to_vec)).collect();
    chunks.sort();
    for (g, chunk) in chunks.iter().enumerate() {
        for &s in chunk {
            group_of[s] = g;
        }
    }
    let nodes = code
        .nodes()
        .iter()
        .map(|v| {
            let mut b: Vec<usize> = v.iter().map(|&s| group_of[s]).collect();
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    let mut base = FrCode::new(theta / beta, nodes)?;
    if let Some(classes) = code.resolution() {
        base = base.with_resolution(classes.to_vec())?;
    }
    let mut meta = Meta::family("contract");
    meta.params.insert("beta".into(), beta.into());
    meta.lineage = lineage_with(code, json!({"op": "contract", "beta": beta}));
    meta.repair = code.meta.repair.filter(|r| r.beta % beta == 0).map(|r| RepairMeta { beta: r.beta / beta, ..r });
    base.meta = meta;
    Ok(Expansion::Expandable(base))
}

fn common(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

fn symmetric_difference_first(a: &[usize], b: &[usize]) -> usize {
    let only_a = a.iter().find(|x| b.binary_search(x).is_err());
    let only_b = b.iter().find(|x| a.binary_search(x).is_err());
    match (only_a, only_b) {
        (Some(&x), Some(&y)) => x.min(y),
        (Some(&x), None) | (None, Some(&x)) => x,
        (None, None) => unreachable!("distinct holder sets"),
    }
}

/// `l` symbol-disjoint copies of a code; copy `c` uses symbols `c*theta ..`.
pub fn disjoint_union(code: &FrCode, l: usize) -> Result<FrCode> {
    if l == 0 {
        return Err(FrError::PreconditionFailed("at least one copy is required".into()));
    }
    let t = code.theta();
    let nodes = (0..l).flat_map(|c| code.nodes().iter().map(move |v| v.iter().map(|s| s + c * t).collect())).collect();
    let mut out = FrCode::new(t * l, nodes)?;
    let mut meta = Meta::family("union");
    meta.params.insert("base".into(), descriptor(code));
    meta.params.insert("copies".into(), l.into());
    meta.lineage = lineage_with(code, json!({"op": "union", "l": l}));
    meta.repair = code.meta.repair;
    meta.local = Some(LocalMeta { copies: l, n_loc: code.n(), theta_loc: t });
    out.meta = meta;
    Ok(out)
}

/// Keep the parallel classes with the given indices, in that order.
pub fn select_classes(code: &FrCode, indices: &[usize]) -> Result<FrCode> {
    let classes = code.resolution().ok_or(FrError::NoResolution)?;
    let mut seen = vec![false; classes.len()];
    for &i in indices {
        if i >= classes.len() || seen[i] {
            return Err(FrError::BadIndex(i));
        }
        seen[i] = true;
    }
    if indices.is_empty() {
        return Err(FrError::PreconditionFailed("no classes selected".into()));
    }
    let mut nodes = Vec::new();
    let mut new_classes = Vec::new();
    for &i in indices {
        let start = nodes.len();
        nodes.extend(classes[i].iter().map(|&v| code.node(v).to_vec()));
        new_classes.push((start..nodes.len()).collect());
    }
    let mut out = FrCode::new(code.theta(), nodes)?.with_resolution(new_classes)?;
    let mut meta = Meta::family("select");
    meta.params.insert("base".into(), descriptor(code));
    meta.params.insert("classes".into(), json!(indices));
    meta.params.insert("r".into(), indices.len().into());
    meta.lineage = lineage_with(code, json!({"op": "select-classes", "classes": indices}));
    if indices.len() >= 2 {
        meta.repair = code.meta.repair;
    }
    out.meta = meta;
    Ok(out)
}

/// Result of a resolution search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "classes")]
pub enum ResolutionSearch {
    Found(Vec<Vec<usize>>),
    None,
    Unknown,
}

/// Search for a partition of the nodes into parallel classes.
///
/// The search is exhaustive for codes with at most `max_exact_n` nodes; larger
/// codes get `max_steps` backtracking steps before reporting `Unknown`.
pub fn find_resolution(code: &FrCode, max_exact_n: usize, max_steps: u64) -> ResolutionSearch {
    let (theta, alpha, n) = (code.theta(), code.alpha(), code.n());
    if theta % alpha != 0 || n % (theta / alpha) != 0 {
        return ResolutionSearch::None;
    }
    let sets = code.node_sets();
    let holders = code.symbol_nodes();
    let mut state = ResState {
        sets: &sets,
        holders: &holders,
        theta,
        assigned: vec![false; n],
        classes: Vec::new(),
        steps: 0,
        limit: if n <= max_exact_n { u64::MAX } else { max_steps },
    };
    match state.next_class() {
        Some(true) => ResolutionSearch::Found(state.classes),
        Some(false) => ResolutionSearch::None,
        None => ResolutionSearch::Unknown,
    }
}

struct ResState<'a> {
    sets: &'a [SymbolSet],
    holders: &'a [Vec<usize>],
    theta: usize,
    assigned: Vec<bool>,
    classes: Vec<Vec<usize>>,
    steps: u64,
    limit: u64,
}

impl ResState<'_> {
    /// `Some(found)` when the subtree was fully explored or a solution found, `None` on budget.
    fn next_class(&mut self) -> Option<bool> {
        let Some(first) = self.assigned.iter().position(|&a| !a) else { return Some(true) };
        self.assigned[first] = true;
        let covered = self.sets[first].clone();
        self.classes.push(vec![first]);
        let r = self.extend(covered);
        if r != Some(true) {
            self.classes.pop();
            self.assigned[first] = false;
        }
        r
    }

    fn extend(&mut self, covered: SymbolSet) -> Option<bool> {
        self.steps += 1;
        if self.steps > self.limit {
            return None;
        }
        let Some(s) = (0..self.theta).find(|&s| !covered.contains(s)) else { return self.next_class() };
        for &v in &self.holders[s] {
            if self.assigned[v] || self.sets[v].intersection_len(&covered) > 0 {
                continue;
            }
            self.assigned[v] = true;
            self.classes.last_mut().expect("open class").push(v);
            let mut next = covered.clone();
            next.union_with(&self.sets[v]);
            match self.extend(next) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            self.classes.last_mut().expect("open class").pop();
            self.assigned[v] = false;
        }
        Some(false)
    }
}
