use crate::code::{FrCode, Meta, RepairSource};
use crate::error::{FrError, Result};

/// The identity code: node `i` stores symbol `i` alone.
pub fn identity(t: usize) -> Result<FrCode> {
    let meta = Meta::family("identity").with_param("t", t);
    Ok(FrCode::new(t, (0..t).map(|i| vec![i]).collect())?.with_meta(meta))
}

/// The complement of the identity: node `i` stores every symbol except `i`.
pub fn j_minus_i(t: usize) -> Result<FrCode> {
    if t < 3 {
        return Err(FrError::PreconditionFailed(format!("size {t} must be at least 3")));
    }
    let nodes = (0..t).map(|i| (0..t).filter(|&s| s != i).collect()).collect();
    let meta = Meta::family("j-minus-i").with_param("t", t).with_repair(1, t - 1, RepairSource::Construction);
    Ok(FrCode::new(t, nodes)?.with_meta(meta))
}
