use crate::code::{FrCode, Meta, RepairSource};
use crate::error::{FrError, Result};
use crate::field::FiniteField;

/// Encode a vector of `F_q^m` with the first coordinate most significant.
fn encode(v: &[u32], q: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

fn decode(mut x: usize, q: u32, m: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    for k in (0..m).rev() {
        v[k] = (x % q as usize) as u32;
        x /= q as usize;
    }
    v
}

fn rank(field: &FiniteField, rows: &[Vec<u32>]) -> usize {
    let mut rows: Vec<Vec<u32>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pivot);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = field.mul(rows[i][c], inv);
                for k in 0..cols {
                    rows[i][k] = field.sub(rows[i][k], field.mul(f, rows[r][k]));
                }
            }
        }
        r += 1;
    }
    r
}

/// The `r` functionals defining the parallel classes, together with the length of
/// the prefix in which every `min(m, .)` functionals are linearly independent.
///
/// Moment-curve functionals `(1, x, x^2, ...)` for the nonzero `x` come first; when
/// `q <= m` they are extended by canonical functionals keeping the prefix independent;
/// the remaining projective functionals follow in canonical order.
pub fn affine_functionals(field: &FiniteField, m: usize, r: usize) -> Result<(Vec<Vec<u32>>, usize)> {
    let q = field.order();
    let total = ((q as usize).pow(m as u32) - 1) / (q as usize - 1);
    if r > total {
        return Err(FrError::TooManyClasses { requested: r, max: total });
    }
    let canonical: Vec<Vec<u32>> = (1..(q as usize).pow(m as u32))
        .map(|x| decode(x, q, m))
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect();
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    for x in 1..q {
        if chosen.len() == r {
            break;
        }
        let v: Vec<u32> = (0..m).map(|e| field.pow(x, e as u64)).collect();
        if !chosen.contains(&v) {
            chosen.push(v);
        }
    }
    let prefix_target = if q as usize > m { r.min(q as usize - 1) } else { r.min(m) };
    for v in &canonical {
        if chosen.len() >= prefix_target {
            break;
        }
        if !chosen.contains(v) {
            let mut trial = chosen.clone();
            trial.push(v.clone());
            if rank(field, &trial) == trial.len() {
                chosen = trial;
            }
        }
    }
    let prefix = chosen.len().min(prefix_target);
    for v in &canonical {
        if chosen.len() >= r {
            break;
        }
        if !chosen.contains(v) {
            chosen.push(v.clone());
        }
    }
    Ok((chosen, prefix))
}

/// The affine resolvable design of `F_q^m` with `r` parallel classes.
///
/// Each class is the set of level sets `f(x) = c` of a linear functional `f`;
/// blocks of distinct classes meet in `q^(m-2)` points.
pub fn affine_resolvable(q: u64, m: usize, r: usize) -> Result<FrCode> {
    if m < 2 {
        return Err(FrError::PreconditionFailed(format!("dimension {m} must be at least 2")));
    }
    let field = FiniteField::of_order(q)?;
    let (functionals, prefix) = affine_functionals(&field, m, r)?;
    let qq = field.order();
    let points = (qq as usize).pow(m as u32);
    let mut nodes = Vec::with_capacity(r * qq as usize);
    for f in &functionals {
        let mut blocks = vec![Vec::new(); qq as usize];
        for x in 0..points {
            let v = decode(x, qq, m);
            let value = f.iter().zip(&v).fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)));
            blocks[value as usize].push(x);
        }
        nodes.extend(blocks);
    }
    let classes = (0..r).map(|c| (c * qq as usize..(c + 1) * qq as usize).collect()).collect();
    let beta = (qq as usize).pow(m as u32 - 2);
    let mut meta = Meta::family("affine")
        .with_param("q", q)
        .with_param("m", m)
        .with_param("r", r)
        .with_param("independent_prefix", prefix)
        .with_param("functionals", functionals.iter().map(|f| encode(f, qq)).collect::<Vec<_>>());
    if r >= 2 {
        meta = meta.with_repair(beta, qq as usize, RepairSource::Construction);
    }
    Ok(FrCode::new(points, nodes)?.with_resolution(classes)?.with_meta(meta))
}
