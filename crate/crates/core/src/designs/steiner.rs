use crate::code::{FrCode, Meta, RepairSource};
use crate::error::{FrError, Result};

/// Whether every pair of symbols lies in exactly one node.
pub fn is_steiner_pair_design(code: &FrCode) -> std::result::Result<(), String> {
    let t = code.theta();
    let mut count = vec![0u32; t * t];
    for node in code.nodes() {
        for (k, &x) in node.iter().enumerate() {
            for &y in &node[k + 1..] {
                count[x * t + y] += 1;
            }
        }
    }
    for x in 0..t {
        for y in x + 1..t {
            if count[x * t + y] != 1 {
                return Err(format!("pair ({x}, {y}) is covered {} times", count[x * t + y]));
            }
        }
    }
    Ok(())
}

/// A Steiner triple system on `theta` points (`theta = 1, 3 mod 6`), by the Bose
/// construction for `3 mod 6` and the Skolem construction for `1 mod 6`.
pub fn steiner_triple(theta: usize) -> Result<FrCode> {
    if theta < 3 || !matches!(theta % 6, 1 | 3) {
        return Err(FrError::BadOrder { what: "theta", value: theta });
    }
    let blocks = if theta % 6 == 3 { bose(theta / 3) } else { skolem((theta - 1) / 3) };
    let code = FrCode::new(theta, blocks)?;
    is_steiner_pair_design(&code).map_err(FrError::NotSteiner)?;
    let mut meta = Meta::family("steiner").with_param("theta", theta);
    if code.n() > 1 {
        meta = meta.with_repair(1, 3, RepairSource::Construction);
    }
    Ok(code.with_meta(meta))
}

/// Blocks over `Z_t x Z_3` with the quasigroup `x o y = (x + y) / 2`, `t` odd.
fn bose(t: usize) -> Vec<Vec<usize>> {
    let half = t.div_ceil(2);
    let op = |x: usize, y: usize| (x + y) * half % t;
    let pt = |x: usize, i: usize| x + (i % 3) * t;
    let mut blocks: Vec<Vec<usize>> = (0..t).map(|x| vec![pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for x in 0..t {
        for y in x + 1..t {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Blocks over `{inf} + Z_t x Z_3` with a half-idempotent quasigroup, `t` even.
fn skolem(t: usize) -> Vec<Vec<usize>> {
    let n = t / 2;
    let op = |x: usize, y: usize| {
        let s = (x + y) % t;
        if s.is_multiple_of(2) { s / 2 } else { n + s / 2 }
    };
    let pt = |x: usize, i: usize| x + (i % 3) * t;
    let inf = 3 * t;
    let mut blocks: Vec<Vec<usize>> = (0..n).map(|x| vec![pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for x in 0..n {
        for i in 0..3 {
            blocks.push(vec![inf, pt(x + n, i), pt(x, i + 1)]);
        }
    }
    for x in 0..t {
        for y in x + 1..t {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}
