use crate::code::{FrCode, Meta, RepairSource};
use crate::error::{FrError, Result};
use crate::field::FiniteField;

/// The resolvable code from the Paley difference set in GF(4a - 1).
///
/// For every translate `B = g + D` of the nonzero squares `D`, the nodes
/// `B + {inf}` and `GF(4a-1) \ B` form a parallel class. The point at infinity
/// is symbol `4a - 1`.
pub fn hadamard(a: usize) -> Result<FrCode> {
    if a == 0 {
        return Err(FrError::PreconditionFailed("a must be positive".into()));
    }
    let q = 4 * a as u64 - 1;
    let field = FiniteField::of_order(q)?;
    let squares = field.nonzero_squares();
    let inf = q as usize;
    let mut nodes = Vec::with_capacity(2 * q as usize);
    for g in 0..q as u32 {
        let mut block: Vec<usize> = squares.iter().map(|&x| field.add(g, x) as usize).collect();
        block.sort_unstable();
        let rest: Vec<usize> = (0..inf).filter(|x| block.binary_search(x).is_err()).collect();
        block.push(inf);
        nodes.push(block);
        nodes.push(rest);
    }
    let classes = (0..q as usize).map(|g| vec![2 * g, 2 * g + 1]).collect();
    let meta = Meta::family("hadamard").with_param("a", a).with_repair(a, 2, RepairSource::Construction);
    Ok(FrCode::new(inf + 1, nodes)?.with_resolution(classes)?.with_meta(meta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_params_and_layout() {
        let c = hadamard(2).unwrap();
        let p = c.params();
        assert_eq!((p.n, p.theta, p.alpha, p.rho, p.beta, p.d), (14, 8, 4, 7, 2, 2));
        assert_eq!(c.node(0), &[1, 2, 4, 7]);
        assert_eq!(c.node(1), &[0, 3, 5, 6]);
    }

    #[test]
    fn non_parallel_overlap_is_a() {
        for a in 1..=3 {
            let c = hadamard(a).unwrap();
            for i in 0..c.n() {
                for j in i + 1..c.n() {
                    let expected = if i / 2 == j / 2 { 0 } else { a };
                    assert_eq!(c.intersection(i, j).len(), expected);
                }
            }
        }
    }

    #[test]
    fn bad_order() {
        assert_eq!(hadamard(4).unwrap_err(), FrError::NotPrimePower(15));
    }
}
