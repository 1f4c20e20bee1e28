//! In-memory storage cluster placing outer-coded symbols by an FR code.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::outer::OuterCode;
use crate::code::FrCode;
use crate::error::{FrError, Result};
use crate::repair::{check_beta_recoverable, RepairTable, SearchLimits};
use crate::resilience::ResilienceMode;

const HEADER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreConfig {
    pub m_file: usize,
    pub payload_size: usize,
}

/// One entry of the cluster's event log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum Event {
    Stored { bytes: usize },
    Failed { nodes: Vec<usize> },
    Repaired { node: usize, helpers: Vec<usize>, symbols: usize, from_table: bool },
    Stuck { nodes: Vec<usize> },
    Collected { nodes: Vec<usize>, ok: bool },
}

#[derive(Debug, Clone)]
pub struct ClusterState {
    code: FrCode,
    outer: OuterCode,
    payload_size: usize,
    /// Contents per node; `None` while failed.
    contents: Vec<Option<BTreeMap<usize, Vec<u8>>>>,
    reference: Vec<Vec<u8>>,
    pub log: Vec<Event>,
    pub symbols_downloaded: usize,
    pub repairs: usize,
}

impl ClusterState {
    pub fn code(&self) -> &FrCode {
        &self.code
    }

    pub fn is_alive(&self, node: usize) -> bool {
        self.contents[node].is_some()
    }

    pub fn bytes_moved(&self) -> usize {
        self.symbols_downloaded * self.payload_size
    }

    /// Every live node holds exactly its placement, byte for byte.
    pub fn check_placement(&self) -> Result<()> {
        for (i, c) in self.contents.iter().enumerate() {
            if let Some(map) = c {
                let keys: Vec<usize> = map.keys().copied().collect();
                if keys != self.code.node(i) || map.iter().any(|(s, b)| b != &self.reference[*s]) {
                    return Err(FrError::PropertyViolation(format!("node {i} does not match its placement")));
                }
            }
        }
        Ok(())
    }
}

/// Outer-encode a file and place the coded symbols on the nodes.
///
/// The file is prefixed with an 8-byte length header and zero padded to
/// `m_file * payload_size` bytes.
pub fn encode_store(file: &[u8], code: &FrCode, cfg: StoreConfig) -> Result<ClusterState> {
    let outer = OuterCode::new(code.theta(), cfg.m_file)?;
    let capacity = cfg.m_file * cfg.payload_size;
    if cfg.payload_size == 0 || file.len() + HEADER > capacity {
        return Err(FrError::FileSizeMismatch(format!(
            "{} bytes plus header exceed {} x {} bytes",
            file.len(),
            cfg.m_file,
            cfg.payload_size
        )));
    }
    let mut framed = (file.len() as u64).to_le_bytes().to_vec();
    framed.extend_from_slice(file);
    framed.resize(capacity, 0);
    let message: Vec<Vec<u8>> = framed.chunks(cfg.payload_size).map(<[u8]>::to_vec).collect();
    let reference = outer.encode(&message);
    let contents = code
        .nodes()
        .iter()
        .map(|v| Some(v.iter().map(|&s| (s, reference[s].clone())).collect()))
        .collect();
    Ok(ClusterState {
        code: code.clone(),
        outer,
        payload_size: cfg.payload_size,
        contents,
        reference,
        log: vec![Event::Stored { bytes: file.len() }],
        symbols_downloaded: 0,
        repairs: 0,
    })
}

/// Fail the given nodes, then repair them greedily until none is left or no
/// progress is possible.
///
/// Table options are preferred; when every option uses a dead helper a fresh
/// search over live nodes is made. In static mode only the original survivors
/// may help. On failure the state keeps the repairs that succeeded.
pub fn fail_and_repair(
    state: &mut ClusterState,
    failures: &[usize],
    table: &RepairTable,
    mode: ResilienceMode,
) -> Result<()> {
    let n = state.code.n();
    if let Some(&bad) = failures.iter().find(|&&f| f >= n) {
        return Err(FrError::PreconditionFailed(format!("node {bad} does not exist")));
    }
    for &f in failures {
        state.contents[f] = None;
    }
    state.log.push(Event::Failed { nodes: failures.to_vec() });
    let original: Vec<bool> = (0..n).map(|i| state.contents[i].is_some()).collect();
    let mut pending: Vec<usize> = (0..n).filter(|&i| state.contents[i].is_none()).collect();
    while !pending.is_empty() {
        let helpers_ok: Vec<bool> = (0..n)
            .map(|i| state.contents[i].is_some() && (mode == ResilienceMode::Sequential || original[i]))
            .collect();
        let mut progress = None;
        for (k, &f) in pending.iter().enumerate() {
            let from_table = table.options[f].iter().find(|o| o.helpers.iter().all(|&h| helpers_ok[h])).cloned();
            let option = match from_table {
                Some(o) => Some((o, true)),
                None => check_beta_recoverable(&state.code, f, &helpers_ok, table.d, table.beta, SearchLimits::default())?
                    .map(|o| (o, false)),
            };
            if let Some(o) = option {
                progress = Some((k, o));
                break;
            }
        }
        let Some((k, (option, from_table))) = progress else {
            state.log.push(Event::Stuck { nodes: pending.clone() });
            return Err(FrError::UnrepairableFailure { stuck: pending });
        };
        let f = pending.remove(k);
        let mut rebuilt = BTreeMap::new();
        for (h, set) in option.helpers.iter().zip(&option.downloads) {
            let src = state.contents[*h].as_ref().expect("live helper");
            for s in set {
                rebuilt.insert(*s, src[s].clone());
            }
        }
        state.contents[f] = Some(rebuilt);
        state.symbols_downloaded += option.bandwidth();
        state.repairs += 1;
        state.log.push(Event::Repaired {
            node: f,
            helpers: option.helpers.clone(),
            symbols: option.bandwidth(),
            from_table,
        });
    }
    state.check_placement()
}

/// Read the file back from the live nodes in `subset`.
pub fn collect(state: &mut ClusterState, subset: &[usize]) -> Result<Vec<u8>> {
    let mut symbols: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
    for &i in subset {
        if let Some(Some(map)) = state.contents.get(i) {
            for (s, b) in map {
                symbols.entry(*s).or_insert_with(|| b.clone());
            }
        }
    }
    let result = (|| {
        let have: Vec<(usize, Vec<u8>)> = symbols.into_iter().collect();
        let message = state.outer.decode(&have)?;
        let framed: Vec<u8> = message.concat();
        let len = u64::from_le_bytes(framed[..HEADER].try_into().expect("header")) as usize;
        if HEADER + len > framed.len() {
            return Err(FrError::FileSizeMismatch("corrupt length header".into()));
        }
        Ok(framed[HEADER..HEADER + len].to_vec())
    })();
    state.log.push(Event::Collected { nodes: subset.to_vec(), ok: result.is_ok() });
    result
}
