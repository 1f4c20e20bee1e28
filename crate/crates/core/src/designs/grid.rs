use crate::code::{FrCode, Meta, RepairSource};
use crate::error::{FrError, Result};

/// The `a x a` grid code: symbol `(i, j)` is `a*i + j`, nodes are the rows then the columns.
pub fn grid(a: usize) -> Result<FrCode> {
    if a < 2 {
        return Err(FrError::PreconditionFailed(format!("grid size {a} must be at least 2")));
    }
    let mut nodes: Vec<Vec<usize>> = (0..a).map(|i| (0..a).map(|j| a * i + j).collect()).collect();
    nodes.extend((0..a).map(|j| (0..a).map(|i| a * i + j).collect::<Vec<_>>()));
    let meta = Meta::family("grid").with_param("a", a).with_repair(1, a, RepairSource::Construction);
    FrCode::new(a * a, nodes)?.with_resolution(vec![(0..a).collect(), (a..2 * a).collect()]).map(|c| c.with_meta(meta))
}
