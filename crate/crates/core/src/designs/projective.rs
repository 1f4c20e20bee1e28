use crate::code::{FrCode, Meta, RepairSource};
use crate::error::Result;
use crate::field::FiniteField;

/// Canonical representatives of the points of PG(2, q): nonzero vectors whose first
/// nonzero coordinate is 1, in increasing encoding.
pub fn projective_points(field: &FiniteField) -> Vec<[u32; 3]> {
    let q = field.order();
    let mut pts = Vec::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let v = [x, y, z];
                if v.iter().find(|&&c| c != 0) == Some(&1) {
                    pts.push(v);
                }
            }
        }
    }
    pts
}

/// The projective plane of order `q`: nodes are lines, symbols are points.
pub fn projective_plane(q: u64) -> Result<FrCode> {
    let field = FiniteField::of_order(q)?;
    let pts = projective_points(&field);
    let dot = |a: &[u32; 3], b: &[u32; 3]| {
        (0..3).fold(0, |acc, k| field.add(acc, field.mul(a[k], b[k])))
    };
    let nodes = pts
        .iter()
        .map(|line| (0..pts.len()).filter(|&p| dot(line, &pts[p]) == 0).collect())
        .collect();
    let meta = Meta::family("projective").with_param("q", q).with_repair(1, q as usize + 1, RepairSource::Construction);
    Ok(FrCode::new(pts.len(), nodes)?.with_meta(meta))
}
