use std::collections::BTreeSet;

use crate::code::{FrCode, Meta, RepairSource};
use crate::error::{FrError, Result};

use super::steiner::is_steiner_pair_design;

/// A named code shipped with the library.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    text: &'static str,
    beta: usize,
    d: usize,
    steiner: bool,
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "D1",
        description: "S(2,3,15) design D1, 35 nodes of 3 symbols",
        text: include_str!("../../data/D1.txt"),
        beta: 1,
        d: 3,
        steiner: true,
    },
    CatalogEntry {
        name: "D2",
        description: "S(2,3,15) design D2, 35 nodes of 3 symbols",
        text: include_str!("../../data/D2.txt"),
        beta: 1,
        d: 3,
        steiner: true,
    },
    CatalogEntry {
        name: "S2-4-16",
        description: "S(2,4,16) affine plane of order 4, 20 nodes of 4 symbols",
        text: include_str!("../../data/S2-4-16.txt"),
        beta: 1,
        d: 4,
        steiner: true,
    },
    CatalogEntry {
        name: "MOLS-16",
        description: "net from two MOLS of order 4, 16 nodes in 4 classes",
        text: include_str!("../../data/MOLS-16.txt"),
        beta: 1,
        d: 4,
        steiner: false,
    },
    CatalogEntry {
        name: "HADAMARD-7",
        description: "Paley difference-set code over GF(7), 14 nodes in 7 classes",
        text: include_str!("../../data/HADAMARD-7.txt"),
        beta: 2,
        d: 2,
        steiner: false,
    },
    CatalogEntry {
        name: "FANO",
        description: "Fano plane, 7 nodes of 3 symbols",
        text: include_str!("../../data/FANO.txt"),
        beta: 1,
        d: 3,
        steiner: true,
    },
];

pub fn catalog_list() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Load a catalog code; symbol labels are kept in `meta.labels`.
pub fn catalog_load(name: &str) -> Result<FrCode> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| FrError::UnknownCatalog(name.to_string()))?;
    let mut code = parse_block_file(entry.text)?;
    if entry.steiner {
        is_steiner_pair_design(&code).map_err(FrError::NotSteiner)?;
    }
    let labels = code.meta.labels.take();
    code.meta = Meta::family("catalog").with_param("name", entry.name).with_repair(
        entry.beta,
        entry.d,
        RepairSource::Construction,
    );
    code.meta.labels = labels;
    Ok(code)
}

/// Parse one block per line, comma-separated labels, `#` comments.
///
/// A line `@class` starts a new parallel class. Numeric labels are mapped to
/// dense ids in numeric order, other labels (such as `∞`) follow in order of
/// first appearance.
pub fn parse_block_file(text: &str) -> Result<FrCode> {
    let mut raw: Vec<Vec<String>> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "@class" {
            classes.push(Vec::new());
            continue;
        }
        let labels: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
        if labels.iter().any(String::is_empty) {
            return Err(FrError::Parse(format!("line {}: empty label", lineno + 1)));
        }
        if let Some(class) = classes.last_mut() {
            class.push(raw.len());
        }
        raw.push(labels);
    }
    let mut numeric: BTreeSet<u64> = BTreeSet::new();
    let mut other: Vec<String> = Vec::new();
    for l in raw.iter().flatten() {
        match l.parse::<u64>() {
            Ok(v) => {
                numeric.insert(v);
            }
            Err(_) if !other.contains(l) => other.push(l.clone()),
            Err(_) => {}
        }
    }
    let labels: Vec<String> = numeric.iter().map(u64::to_string).chain(other).collect();
    let id = |l: &str| -> usize {
        match l.parse::<u64>() {
            Ok(v) => labels.iter().position(|x| x == &v.to_string()).expect("label present"),
            Err(_) => labels.iter().position(|x| x == l).expect("label present"),
        }
    };
    let nodes: Vec<Vec<usize>> = raw.iter().map(|b| b.iter().map(|l| id(l)).collect()).collect();
    let mut code = FrCode::new(labels.len(), nodes)?;
    if !classes.is_empty() {
        code = code.with_resolution(classes)?;
    }
    code.meta.labels = Some(labels);
    Ok(code)
}
