//! Closed-form file sizes for structured families.

use crate::code::FrCode;
use crate::error::Result;

use super::arcs::find_cap_and_arc;
use super::file_size::{file_size, FileSizeOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedForm {
    pub value: usize,
    pub rule: &'static str,
}

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Whether the code is resolvable and nodes of distinct classes meet in exactly one symbol.
pub fn is_unit_net(code: &FrCode) -> bool {
    let Some(classes) = code.resolution() else { return false };
    let mut class_of = vec![0; code.n()];
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            class_of[v] = c;
        }
    }
    let sets = code.node_sets();
    (0..code.n()).all(|i| {
        (i + 1..code.n()).all(|j| class_of[i] == class_of[j] || sets[i].intersection_len(&sets[j]) == 1)
    })
}

/// A closed form for `M(k)` when the code's family or structure admits one.
pub fn closed_form(code: &FrCode, k: usize) -> Option<ClosedForm> {
    let meta = &code.meta;
    if meta.is_family("grid") {
        let a = meta.param_usize("a")?;
        if k <= a && code.n() == 2 * a {
            return Some(ClosedForm { value: k * a - k * k / 4, rule: "grid" });
        }
    }
    if meta.is_family("affine") {
        let (q, m, r, prefix) =
            (meta.param_usize("q")?, meta.param_usize("m")?, meta.param_usize("r")?, meta.param_usize("independent_prefix")?);
        if r <= prefix && k <= m.min(r) && code.n() == r * q {
            let value = q.pow(m as u32) - q.pow((m - k) as u32) * (q - 1).pow(k as u32);
            return Some(ClosedForm { value, rule: "affine" });
        }
    }
    if meta.is_family("mols") {
        let (a, r) = (meta.param_usize("a")?, meta.param_usize("r")?);
        if k < r && code.n() == r * a {
            return Some(ClosedForm { value: k * a - choose2(k), rule: "mols" });
        }
    }
    if k >= 1 {
        if let Some(classes) = code.resolution() {
            let a = classes[0].len();
            if k <= classes.len() && choose2(k - 1) < a && is_unit_net(code) {
                return Some(ClosedForm { value: k * code.alpha() - choose2(k), rule: "unit-net" });
            }
        }
    }
    None
}

/// `M(k) = k*a^2 - a*C(k,2)` for a product of codes with node size `a` and pairwise
/// overlaps at most 1, when one factor meets `k*a - C(k,2)`. `None` if inapplicable.
pub fn kronecker_steiner_file_size(c1: &FrCode, c2: &FrCode, k: usize, opts: FileSizeOptions) -> Result<Option<usize>> {
    let a = c1.alpha();
    if c2.alpha() != a || c1.max_pairwise_intersection() > 1 || c2.max_pairwise_intersection() > 1 {
        return Ok(None);
    }
    if k == 0 || k > c1.n().min(c2.n()) {
        return Ok(None);
    }
    let target = k * a - choose2(k);
    for c in [c1, c2] {
        let e = file_size(c, k, opts)?;
        if e.exact && e.m == target {
            return Ok(Some(k * a * a - a * choose2(k)));
        }
    }
    Ok(None)
}

/// `M(k) = k*rho - C(k,2)` for the transpose of a Steiner 2-design with an arc,
/// for `k <= rho + 1`. `None` when the design has no arc.
pub fn arc_transpose_file_size(design: &FrCode, k: usize) -> Result<Option<usize>> {
    let rho = design.rho();
    if k > rho + 1 {
        return Ok(None);
    }
    let caps = find_cap_and_arc(design)?;
    Ok(caps.arc.map(|_| k * rho - choose2(k)))
}

/// Lower bound `k(s-1)` on `M(k)` for the code of an `s`-regular graph of girth `g`, `k <= g`.
pub fn girth_lower_bound(code: &FrCode, k: usize) -> Option<usize> {
    let meta = &code.meta;
    if !meta.is_family("girth") {
        return None;
    }
    let (s, g) = (meta.param_usize("s")?, meta.param_usize("g")?);
    (k <= g).then(|| k * (s - 1))
}
