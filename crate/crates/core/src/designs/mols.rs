use crate::code::{FrCode, Meta, RepairSource};
use crate::error::{FrError, Result};
use crate::field::FiniteField;

/// Multipliers of the Latin-square classes: `eta^0, eta^1, ...`.
fn multipliers(field: &FiniteField, count: usize) -> Vec<u32> {
    (0..count).map(|e| field.pow(field.primitive(), e as u64)).collect()
}

/// The Latin squares `L(i, j) = m*i + j` used by `mols_net`, as `a x a` tables.
pub fn mols_squares(field: &FiniteField, count: usize) -> Vec<Vec<Vec<u32>>> {
    let a = field.order();
    multipliers(field, count)
        .into_iter()
        .map(|m| (0..a).map(|i| (0..a).map(|j| field.add(field.mul(m, i), j)).collect()).collect())
        .collect()
}

/// The net code with `r` parallel classes over an `a x a` array, `a = |field|`:
/// rows, columns, then the level sets of `r - 2` mutually orthogonal Latin squares.
pub fn mols_net(field: &FiniteField, r: usize) -> Result<FrCode> {
    let a = field.order() as usize;
    if r > a + 1 {
        return Err(FrError::TooManyClasses { requested: r, max: a + 1 });
    }
    if r == 0 {
        return Err(FrError::PreconditionFailed("at least one class is required".into()));
    }
    let mut nodes: Vec<Vec<usize>> = (0..a).map(|i| (0..a).map(|j| a * i + j).collect()).collect();
    if r >= 2 {
        nodes.extend((0..a).map(|j| (0..a).map(|i| a * i + j).collect::<Vec<_>>()));
    }
    for square in mols_squares(field, r.saturating_sub(2)) {
        for z in 0..a as u32 {
            let mut node = Vec::with_capacity(a);
            for (i, row) in square.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v == z {
                        node.push(a * i + j);
                    }
                }
            }
            nodes.push(node);
        }
    }
    let classes = (0..r).map(|c| (c * a..(c + 1) * a).collect()).collect();
    let mut meta = Meta::family("mols").with_param("a", a).with_param("r", r);
    if r >= 2 {
        meta = meta.with_repair(1, a, RepairSource::Construction);
    }
    Ok(FrCode::new(a * a, nodes)?.with_resolution(classes)?.with_meta(meta))
}
