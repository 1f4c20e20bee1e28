//! File size, minimum distance, bounds and related structure.

mod arcs;
mod bounds;
mod closed_form;
mod file_size;
mod local;
mod net;

pub use arcs::{find_cap_and_arc, is_arc, is_cap, CapArc};
pub use bounds::{bounds, dmin_exact, BoundsQuery, BoundsReport, Verdicts};
pub use closed_form::{
    arc_transpose_file_size, closed_form, girth_lower_bound, is_unit_net, kronecker_steiner_file_size, ClosedForm,
};
pub use file_size::{
    check_structural_lemma, file_size, file_size_profile, inclusion_exclusion_floor, FileSizeEntry, FileSizeOptions,
};
pub use local::{construction2_slack, delta, greedy_distance_accumulate, Accumulation, LocalStructure};
pub use net::{net_file_size_greedy, NetSelection};

use serde::{Deserialize, Serialize};

use crate::code::{CodeParams, FrCode};
use crate::error::{FrError, Result};
use crate::repair::{infer_repair, SearchLimits};
use crate::resilience::{resilience, ResilienceMode, ResilienceOptions, ResilienceReport};

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub ks: Vec<usize>,
    /// File size for the bounds; defaults to `M(k)` of the largest requested `k`.
    pub m: Option<usize>,
    pub file_size: FileSizeOptions,
    pub resilience: Option<ResilienceOptions>,
}

/// Everything `analyze` reports about a code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub params: CodeParams,
    pub profile: Vec<FileSizeEntry>,
    pub bounds: Option<BoundsReport>,
    pub verdicts: Option<Verdicts>,
    pub arcs: Option<CapArc>,
    pub delta: usize,
    pub construction2_slack: i64,
    pub local: Option<LocalStructure>,
    pub resilience: Vec<ResilienceReport>,
}

pub fn analyze(code: &FrCode, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let (table, _) = infer_repair(code, SearchLimits::default())?;
    let params = code.params().with_repair(table.beta, table.d)?;
    let profile = file_size_profile(code, &opts.ks, opts.file_size)?;
    let local = LocalStructure::detect(code).ok().filter(|l| l.copies > 1);
    let target = opts.m.or_else(|| profile.iter().max_by_key(|e| e.k).map(|e| e.m));
    let bounds = match target {
        Some(m) if m >= 1 => {
            let k = profile.iter().filter(|e| e.m == m && e.exact).map(|e| e.k).max();
            let dm = match dmin_exact(code, m, opts.file_size) {
                Ok(v) => Some(v),
                Err(FrError::BudgetExceeded(_)) => None,
                Err(e) => return Err(e),
            };
            Some(bounds::bounds(params.n, params.alpha, BoundsQuery { m, k, d: params.d, local: local.as_ref(), dmin: dm }))
        }
        _ => None,
    };
    let arcs = match find_cap_and_arc(code) {
        Ok(a) => Some(a),
        Err(FrError::NotSteiner(_)) => None,
        Err(e) => return Err(e),
    };
    let mut res = Vec::new();
    if let Some(ro) = opts.resilience {
        for mode in [ResilienceMode::Static, ResilienceMode::Sequential] {
            res.push(resilience(code, params.d, params.beta, mode, ro)?);
        }
    }
    Ok(AnalysisReport {
        params,
        verdicts: bounds.as_ref().map(|b| b.verdicts.clone()),
        bounds,
        profile,
        arcs,
        delta: delta(code),
        construction2_slack: construction2_slack(code, params.beta),
        local,
        resilience: res,
    })
}
