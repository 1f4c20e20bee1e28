//! Minimum distance and the bounds it is compared against.

use serde::{Deserialize, Serialize};

use crate::code::FrCode;
use crate::error::{FrError, Result};

use super::file_size::{file_size_profile, FileSizeOptions};
use super::local::LocalStructure;

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Exact minimum distance for file size `m`: `n` minus the largest `j` with `U(j) < m`.
///
/// Returns `n + 1` when even all nodes together hold fewer than `m` symbols.
pub fn dmin_exact(code: &FrCode, m: usize, opts: FileSizeOptions) -> Result<usize> {
    let n = code.n();
    if m == 0 {
        return Err(FrError::PreconditionFailed("file size must be positive".into()));
    }
    if code.theta() < m {
        return Ok(n + 1);
    }
    let ks: Vec<usize> = (1..=n).collect();
    let profile = if code.components().len() > 1 {
        file_size_profile(code, &ks, opts)?
    } else {
        let mut out = Vec::new();
        for k in ks {
            let e = file_size_profile(code, &[k], opts)?.pop().expect("one entry");
            let stop = e.m >= m;
            out.push(e);
            if stop {
                break;
            }
        }
        out
    };
    for e in &profile {
        if e.m >= m {
            // Only a value reaching m needs to be exact; smaller upper bounds are conclusive.
            if !e.exact {
                return Err(FrError::BudgetExceeded(format!("M({}) could not be certified", e.k)));
            }
            return Ok(n - (e.k - 1));
        }
    }
    unreachable!("U(n) = theta >= m")
}

/// Which bounds a code meets; `None` when not evaluated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    /// `k = ceil(M/alpha)`: the Singleton bound is met.
    pub singleton_by_k: Option<bool>,
    /// `k = ceil(M/alpha) + ceil(M/(d alpha)) - 1`: the locality bound is met.
    pub local_by_k: Option<bool>,
    pub singleton_met: Option<bool>,
    pub local_met: Option<bool>,
    #[serde(rename = "localFR_met")]
    pub local_fr_met: Option<bool>,
    pub mincor_met: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    #[serde(rename = "M")]
    pub m: usize,
    pub singleton: i64,
    pub local: i64,
    /// Maximum of the two local-code branches, when local structure applies.
    #[serde(rename = "localFR")]
    pub local_fr: Option<i64>,
    #[serde(rename = "localFR_branches")]
    pub local_fr_branches: Option<(i64, i64)>,
    /// Bound for `M = t*theta_loc + b`, `1 <= b <= alpha`, `t < copies`.
    pub mincor: Option<i64>,
    pub dmin_exact: Option<usize>,
    pub verdicts: Verdicts,
}

/// Inputs that do not come from the code's parameters.
#[derive(Debug, Clone, Copy)]
pub struct BoundsQuery<'a> {
    pub m: usize,
    /// The `k` with `M(k) = m`, if known.
    pub k: Option<usize>,
    pub d: usize,
    pub local: Option<&'a LocalStructure>,
    pub dmin: Option<usize>,
}

pub fn bounds(n: usize, alpha: usize, q: BoundsQuery<'_>) -> BoundsReport {
    let (m, d) = (q.m, q.d);
    let ca = ceil_div(m, alpha) as i64;
    let cda = ceil_div(m, d * alpha) as i64;
    let n_i = n as i64;
    let singleton = n_i - ca + 1;
    let local = n_i - ca - cda + 2;
    let mut local_fr = None;
    let mut branches = None;
    let mut mincor = None;
    if let Some(l) = q.local.filter(|l| m > l.theta_loc) {
        let rho = l.rho_loc;
        let b1 = n_i - ceil_div(m * rho, alpha) as i64 + rho as i64;
        let b2 = n_i + l.n_loc as i64 + 1 - ceil_div(m * rho + l.theta_loc, alpha) as i64;
        branches = Some((b1, b2));
        local_fr = Some(b1.max(b2));
        let t = m / l.theta_loc;
        let b = m % l.theta_loc;
        let (t, b) = if b == 0 { (t - 1, l.theta_loc) } else { (t, b) };
        if t >= 1 && t < l.copies && (1..=alpha).contains(&b) {
            mincor = Some(b1);
        }
    }
    let mut verdicts = Verdicts::default();
    if let Some(k) = q.k {
        verdicts.singleton_by_k = Some(k as i64 == ca);
        verdicts.local_by_k = Some(k as i64 == ca + cda - 1);
    }
    if let Some(dm) = q.dmin {
        let dm = dm as i64;
        verdicts.singleton_met = Some(dm == singleton);
        verdicts.local_met = Some(dm == local);
        verdicts.local_fr_met = local_fr.map(|v| dm == v);
        verdicts.mincor_met = mincor.map(|v| dm == v);
    }
    BoundsReport { m, singleton, local, local_fr, local_fr_branches: branches, mincor, dmin_exact: q.dmin, verdicts }
}
