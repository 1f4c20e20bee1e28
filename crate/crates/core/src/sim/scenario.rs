//! Declarative simulation runs.

use std::path::Path;

use rand::seq::index::sample;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cluster::{collect, encode_store, fail_and_repair, Event, StoreConfig};
use crate::code::{CodeParams, FrCode};
use crate::designs::catalog_load;
use crate::error::{FrError, Result};
use crate::repair::{infer_repair, SearchLimits};
use crate::resilience::ResilienceMode;

fn default_payload() -> usize {
    64
}

fn default_mode() -> ResilienceMode {
    ResilienceMode::Sequential
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomCollects {
    pub k: usize,
    pub count: usize,
}

/// A simulation scenario. `code-ref` is `catalog:NAME` or a path to a code JSON file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(rename = "code-ref")]
    pub code_ref: String,
    #[serde(rename = "M_file")]
    pub m_file: usize,
    #[serde(default = "default_payload")]
    pub payload_size: usize,
    /// Failure events applied in order, each followed by repair.
    #[serde(default)]
    pub failures: Vec<Vec<usize>>,
    /// Node subsets to read the file from after all failures.
    #[serde(default)]
    pub collects: Vec<Vec<usize>>,
    #[serde(default)]
    pub random_collects: Option<RandomCollects>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_mode")]
    pub mode: ResilienceMode,
    /// File length in bytes; defaults to the largest that fits.
    #[serde(default)]
    pub file_len: Option<usize>,
}

impl Scenario {
    pub fn load_code(&self, base: &Path) -> Result<FrCode> {
        match self.code_ref.strip_prefix("catalog:") {
            Some(name) => catalog_load(name),
            None => FrCode::from_json(&std::fs::read_to_string(base.join(&self.code_ref))?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectOutcome {
    pub nodes: Vec<usize>,
    pub ok: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub params: CodeParams,
    #[serde(rename = "M_file")]
    pub m_file: usize,
    pub payload_size: usize,
    pub file_len: usize,
    pub repairs: usize,
    pub symbols_downloaded: usize,
    pub bytes_moved: usize,
    pub unrepaired: Vec<Vec<usize>>,
    pub collects: Vec<CollectOutcome>,
    pub all_ok: bool,
    pub events: Vec<Event>,
}

pub fn run_scenario(scenario: &Scenario, code: &FrCode) -> Result<Metrics> {
    let (table, _) = infer_repair(code, SearchLimits::default())?;
    let params = code.params().with_repair(table.beta, table.d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let capacity = scenario.m_file * scenario.payload_size;
    let file_len = scenario.file_len.unwrap_or(capacity.saturating_sub(8));
    let mut file = vec![0u8; file_len];
    rng.fill_bytes(&mut file);
    let cfg = StoreConfig { m_file: scenario.m_file, payload_size: scenario.payload_size };
    let mut state = encode_store(&file, code, cfg)?;
    let mut unrepaired = Vec::new();
    for event in &scenario.failures {
        match fail_and_repair(&mut state, event, &table, scenario.mode) {
            Ok(()) => {}
            Err(FrError::UnrepairableFailure { stuck }) => unrepaired.push(stuck),
            Err(e) => return Err(e),
        }
    }
    let mut subsets = scenario.collects.clone();
    if let Some(rc) = scenario.random_collects {
        if rc.k > code.n() {
            return Err(FrError::PreconditionFailed(format!("collect size {} exceeds n", rc.k)));
        }
        for _ in 0..rc.count {
            let mut s = sample(&mut rng, code.n(), rc.k).into_vec();
            s.sort_unstable();
            subsets.push(s);
        }
    }
    let mut collects = Vec::new();
    for s in subsets {
        let outcome = match collect(&mut state, &s) {
            Ok(data) if data == file => CollectOutcome { nodes: s, ok: true, error: None },
            Ok(_) => return Err(FrError::PropertyViolation("collected file differs from the stored file".into())),
            Err(e) => CollectOutcome { nodes: s, ok: false, error: Some(e.to_string()) },
        };
        collects.push(outcome);
    }
    let all_ok = unrepaired.is_empty() && collects.iter().all(|c| c.ok);
    Ok(Metrics {
        params,
        m_file: scenario.m_file,
        payload_size: scenario.payload_size,
        file_len,
        repairs: state.repairs,
        symbols_downloaded: state.symbols_downloaded,
        bytes_moved: state.bytes_moved(),
        unrepaired,
        collects,
        all_ok,
        events: state.log,
    })
}
