use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::code::{FrCode, Meta, RepairSource};
use crate::error::{FrError, Result};
use crate::field::FiniteField;

use super::projective::projective_points;

/// A simple undirected graph on vertices `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    pub fn new(name: &str, vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        edges.dedup();
        GraphSpec { name: name.to_string(), vertices, edges }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::new(&format!("K{n}"), n, edges)
    }

    /// The complete bipartite graph `K_{s,t}`.
    pub fn complete_bipartite(s: usize, t: usize) -> Self {
        let edges = (0..s).flat_map(|a| (0..t).map(move |b| (a, s + b))).collect();
        Self::new(&format!("K{s},{t}"), s + t, edges)
    }

    /// The cycle `C_n`.
    pub fn cycle(n: usize) -> Self {
        Self::new(&format!("C{n}"), n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    /// The Petersen graph: outer 5-cycle, spokes, inner pentagram.
    pub fn petersen() -> Self {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        Self::new("petersen", 10, edges)
    }

    /// Point/line incidence graph of PG(2, q): points first, then lines.
    pub fn projective_incidence(q: u64) -> Result<Self> {
        let field = FiniteField::of_order(q)?;
        let pts = projective_points(&field);
        let n = pts.len();
        let mut edges = Vec::new();
        for (l, line) in pts.iter().enumerate() {
            for (p, pt) in pts.iter().enumerate() {
                if (0..3).fold(0, |acc, k| field.add(acc, field.mul(line[k], pt[k]))) == 0 {
                    edges.push((p, n + l));
                }
            }
        }
        Ok(Self::new(&format!("PG(2,{q})-incidence"), 2 * n, edges))
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let adj = self.neighbors();
        let s = adj.first()?.len();
        adj.iter().all(|v| v.len() == s).then_some(s)
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.neighbors();
        let mut best: Option<usize> = None;
        for src in 0..self.vertices {
            let mut dist = vec![usize::MAX; self.vertices];
            let mut parent = vec![usize::MAX; self.vertices];
            dist[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// The code of an `s`-regular graph: symbols are edges (sorted endpoint pairs),
/// node `v` stores the edges incident to vertex `v`.
pub fn girth_code(graph: &GraphSpec) -> Result<FrCode> {
    let s = graph.regular_degree().ok_or(FrError::NotRegular)?;
    if s < 2 {
        return Err(FrError::DegreeTooSmall(s));
    }
    let mut nodes = vec![Vec::new(); graph.vertices];
    for (e, &(a, b)) in graph.edges.iter().enumerate() {
        nodes[a].push(e);
        nodes[b].push(e);
    }
    let mut meta = Meta::family("girth")
        .with_param("graph", graph.name.clone())
        .with_param("s", s)
        .with_repair(1, s, RepairSource::Construction);
    if let Some(g) = graph.girth() {
        meta = meta.with_param("g", g);
    }
    Ok(FrCode::new(graph.edges.len(), nodes)?.with_meta(meta))
}
