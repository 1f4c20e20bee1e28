//! The FR code data model: node placements, parameters, resolution and JSON form.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bitset::SymbolSet;
use crate::error::{FrError, Result};

/// Repair parameters advertised for a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairMeta {
    pub beta: usize,
    pub d: usize,
    /// `construction`, `certified` or `computed`.
    pub source: RepairSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepairSource {
    Construction,
    Certified,
    Computed,
}

/// Symbol-disjoint copies of a local code, recorded by `disjoint_union`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalMeta {
    pub copies: usize,
    pub n_loc: usize,
    pub theta_loc: usize,
}

/// Free-form provenance attached to a code.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, serde_json::Value>,
    /// Original label of every symbol id, when loaded from a labelled file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repair: Option<RepairMeta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local: Option<LocalMeta>,
    /// Composition steps that produced the code, oldest first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineage: Vec<serde_json::Value>,
}

impl Meta {
    pub fn family(name: &str) -> Self {
        Meta { family: Some(name.to_string()), ..Default::default() }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_repair(mut self, beta: usize, d: usize, source: RepairSource) -> Self {
        self.repair = Some(RepairMeta { beta, d, source });
        self
    }

    pub fn param_usize(&self, key: &str) -> Option<usize> {
        self.params.get(key).and_then(|v| v.as_u64()).map(|v| v as usize)
    }

    pub fn is_family(&self, name: &str) -> bool {
        self.family.as_deref() == Some(name)
    }
}

/// Parameters `(n, theta, alpha, rho)` plus the repair pair `(beta, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub theta: usize,
    pub alpha: usize,
    pub rho: usize,
    pub beta: usize,
    pub d: usize,
}

impl CodeParams {
    /// Replace the repair pair, checking `d * beta = alpha`.
    pub fn with_repair(self, beta: usize, d: usize) -> Result<Self> {
        if beta == 0 || d * beta != self.alpha {
            return Err(FrError::PreconditionFailed(format!(
                "d*beta = {d}*{beta} must equal alpha = {}",
                self.alpha
            )));
        }
        Ok(CodeParams { beta, d, ..self })
    }
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(n, theta, alpha, rho) = ({}, {}, {}, {}), beta = {}, d = {}",
            self.n, self.theta, self.alpha, self.rho, self.beta, self.d
        )
    }
}

/// A fractional repetition code: `n` nodes each storing `alpha` of `theta` symbols,
/// every symbol stored on exactly `rho` nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct FrCode {
    theta: usize,
    nodes: Vec<Vec<usize>>,
    resolution: Option<Vec<Vec<usize>>>,
    pub meta: Meta,
}

impl FrCode {
    /// Build and validate a code. Node symbol lists are sorted; node order is kept.
    pub fn new(theta: usize, nodes: Vec<Vec<usize>>) -> Result<Self> {
        let nodes = nodes
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        let code = FrCode { theta, nodes, resolution: None, meta: Meta::default() };
        code.validate()?;
        Ok(code)
    }

    /// Attach a resolution, verifying every class partitions the symbols.
    pub fn with_resolution(mut self, classes: Vec<Vec<usize>>) -> Result<Self> {
        check_resolution(&self, &classes)?;
        self.resolution = Some(classes);
        Ok(self)
    }

    pub fn with_meta(mut self, meta: Meta) -> Self {
        self.meta = meta;
        self
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn alpha(&self) -> usize {
        self.nodes[0].len()
    }

    pub fn rho(&self) -> usize {
        self.n() * self.alpha() / self.theta
    }

    pub fn nodes(&self) -> &[Vec<usize>] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &[usize] {
        &self.nodes[i]
    }

    pub fn resolution(&self) -> Option<&[Vec<usize>]> {
        self.resolution.as_deref()
    }

    pub fn clear_resolution(&mut self) {
        self.resolution = None;
    }

    /// Check the FR invariants and return the code parameters.
    ///
    /// The repair pair is a placeholder `(beta, d) = (1, alpha)` unless the
    /// metadata advertises one.
    pub fn validate(&self) -> Result<CodeParams> {
        if self.nodes.is_empty() || self.theta == 0 {
            return Err(FrError::Empty);
        }
        let alpha = self.nodes[0].len();
        let mut counts = vec![0usize; self.theta];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.len() != alpha {
                return Err(FrError::NonUniformNodeSize { node: i, size: node.len(), expected: alpha });
            }
            for (k, &s) in node.iter().enumerate() {
                if s >= self.theta {
                    return Err(FrError::SymbolOutOfRange { node: i, symbol: s, theta: self.theta });
                }
                if k > 0 && node[k - 1] == s {
                    return Err(FrError::RepeatedSymbol { node: i, symbol: s });
                }
                counts[s] += 1;
            }
        }
        let rho = counts[0];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                return Err(FrError::UnusedSymbol(s));
            }
            if c != rho {
                return Err(FrError::NonUniformRepetition { symbol: s, count: c, expected: rho });
            }
        }
        let distinct: BTreeSet<&Vec<usize>> = self.nodes.iter().collect();
        if distinct.len() != self.nodes.len() {
            log::warn!("code has {} duplicate nodes", self.nodes.len() - distinct.len());
        }
        let (beta, d) = match self.meta.repair {
            Some(r) if r.beta * r.d == alpha => (r.beta, r.d),
            _ => (1, alpha),
        };
        Ok(CodeParams { n: self.nodes.len(), theta: self.theta, alpha, rho, beta, d })
    }

    pub fn params(&self) -> CodeParams {
        self.validate().expect("code invariants hold after construction")
    }

    pub fn node_sets(&self) -> Vec<SymbolSet> {
        self.nodes.iter().map(|v| SymbolSet::from_symbols(self.theta, v)).collect()
    }

    /// Nodes storing each symbol, in increasing node order.
    pub fn symbol_nodes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.theta];
        for (i, node) in self.nodes.iter().enumerate() {
            for &s in node {
                out[s].push(i);
            }
        }
        out
    }

    pub fn intersection(&self, i: usize, j: usize) -> Vec<usize> {
        sorted_intersection(&self.nodes[i], &self.nodes[j])
    }

    /// Largest intersection between two distinct nodes.
    pub fn max_pairwise_intersection(&self) -> usize {
        let sets = self.node_sets();
        let mut best = 0;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                best = best.max(sets[i].intersection_len(&sets[j]));
            }
        }
        best
    }

    /// Size of the union of the given nodes.
    pub fn union_size(&self, nodes: &[usize]) -> usize {
        let mut u = SymbolSet::new(self.theta);
        for &i in nodes {
            for &s in &self.nodes[i] {
                u.insert(s);
            }
        }
        u.len()
    }

    /// The code whose nodes are the symbols of `self`: node `s` lists the nodes storing `s`.
    pub fn transpose(&self) -> FrCode {
        let nodes = self.symbol_nodes();
        let mut meta = Meta::family("transpose").with_param("source_theta", self.theta);
        meta.lineage = self.meta.lineage.clone();
        meta.lineage.push(serde_json::json!({"op": "transpose", "source": self.meta.family}));
        FrCode { theta: self.n(), nodes, resolution: None, meta }
    }

    /// Connected components of the node/symbol incidence graph, as node lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for holders in self.symbol_nodes() {
            for w in holders.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// The sub-code on a set of nodes, with symbols relabelled densely in increasing order.
    pub fn restrict(&self, nodes: &[usize]) -> Result<FrCode> {
        let symbols: BTreeSet<usize> = nodes.iter().flat_map(|&i| self.nodes[i].iter().copied()).collect();
        let relabel: BTreeMap<usize, usize> = symbols.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let sub = nodes.iter().map(|&i| self.nodes[i].iter().map(|s| relabel[s]).collect()).collect();
        FrCode::new(symbols.len(), sub)
    }

    /// The canonical form: symbols ascending within nodes, nodes sorted unless a
    /// resolution fixes their order.
    pub fn canonical(&self) -> FrCode {
        let mut c = self.clone();
        if c.resolution.is_none() {
            c.nodes.sort();
        }
        c
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.canonical().raw()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<FrCode> {
        let raw: RawCode = serde_json::from_str(text)?;
        let mut code = FrCode::new(raw.theta, raw.nodes)?;
        code.meta = raw.meta;
        if let Some(classes) = raw.resolution {
            code = code.with_resolution(classes)?;
        }
        Ok(code)
    }

    fn raw(&self) -> RawCode {
        RawCode {
            theta: self.theta,
            nodes: self.nodes.clone(),
            resolution: self.resolution.clone(),
            meta: self.meta.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawCode {
    theta: usize,
    nodes: Vec<Vec<usize>>,
    #[serde(default)]
    resolution: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    meta: Meta,
}

impl Serialize for FrCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.canonical().raw().serialize(s)
    }
}

fn check_resolution(code: &FrCode, classes: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; code.n()];
    for (c, class) in classes.iter().enumerate() {
        let mut covered = vec![false; code.theta];
        for &i in class {
            if i >= code.n() || seen[i] {
                return Err(FrError::InvalidResolution(format!("node {i} in class {c} is out of range or repeated")));
            }
            seen[i] = true;
            for &s in &code.nodes[i] {
                if covered[s] {
                    return Err(FrError::InvalidResolution(format!("class {c} covers symbol {s} twice")));
                }
                covered[s] = true;
            }
        }
        if let Some(s) = covered.iter().position(|&x| !x) {
            return Err(FrError::InvalidResolution(format!("class {c} misses symbol {s}")));
        }
    }
    if let Some(i) = seen.iter().position(|&x| !x) {
        return Err(FrError::InvalidResolution(format!("node {i} is in no class")));
    }
    Ok(())
}

pub(crate) fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
