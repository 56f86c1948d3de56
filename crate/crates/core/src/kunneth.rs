//! Kunneth products of graded abelian groups and the resulting Ext groups
//! into tensor products of symmetric and exterior powers.

use std::collections::BTreeMap;

use crate::arith::binomial_u128;
use crate::homology::{homology_all, AbelianGroup, GradedGroup};
use crate::{Error, Result};

/// Degree `k` of the product is
/// `sum_{a+b=k} G_a (x) H_b  +  sum_{a+b=k+1} Tor(G_a, H_b)`.
pub fn kunneth_product(g: &GradedGroup, h: &GradedGroup) -> GradedGroup {
    let mut out = GradedGroup::new();
    for (&a, ga) in &g.0 {
        for (&b, hb) in &h.0 {
            out.add_at(a + b, &ga.tensor(hb));
            if a + b >= 1 {
                out.add_at(a + b - 1, &ga.tor(hb));
            }
        }
    }
    out
}

/// Compositions of `d` into `c` positive parts, in lexicographic order.
pub fn compositions(d: usize, c: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=rest.saturating_sub(parts - 1) {
            prefix.push(first);
            go(rest - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, c, &mut Vec::new(), &mut out);
    out
}

fn product_over_compositions(c: usize, d: usize, factor: impl Fn(usize) -> GradedGroup) -> Result<GradedGroup> {
    if c == 0 {
        return Err(Error::InvalidArgument("need at least one tensor factor".into()));
    }
    let factors: BTreeMap<usize, GradedGroup> = (1..=d).map(|i| (i, factor(i))).collect();
    let mut total = GradedGroup::new();
    for comp in compositions(d, c) {
        let mut acc = factors[&comp[0]].clone();
        for part in &comp[1..] {
            acc = kunneth_product(&acc, &factors[part]);
        }
        total = total.direct_sum(&acc);
    }
    Ok(total)
}

/// `Ext^*(a, S^d o a)`, i.e. the cohomology of `AC(d)`.
pub fn graded_ext_a_sd(d: usize) -> Result<GradedGroup> {
    homology_all(d)
}

/// `Ext^*(a, S^{i_1} a (x) ... (x) S^{i_c} a)` summed over all `i_1 + ... + i_c = d`.
pub fn ext_tensorpower_sd(c: usize, d: usize) -> Result<GradedGroup> {
    let ext: Vec<GradedGroup> = (1..=d).map(graded_ext_a_sd).collect::<Result<_>>()?;
    product_over_compositions(c, d, |i| ext[i - 1].clone())
}

/// Ranks of the cross effects `cr_{k+1} Lambda^d (Z, ..., Z)` for `k = 0 .. d-1`;
/// these are the terms of the Arone-type complex computing `Ext^*(a, Lambda^d a)`.
pub fn exterior_cross_effect_dims(d: usize) -> Vec<usize> {
    (0..d)
        .map(|k| {
            compositions(d, k + 1)
                .iter()
                .map(|comp| comp.iter().map(|&a| binomial_u128(1, a as u64).unwrap_or(0) as usize).product::<usize>())
                .sum()
        })
        .collect()
}

/// `Ext^*(a, Lambda^d a)`: the exterior complex has a single nonzero term, so
/// its cohomology is that term.
pub fn ext_lambda(d: usize) -> GradedGroup {
    let mut out = GradedGroup::new();
    for (k, r) in exterior_cross_effect_dims(d).into_iter().enumerate() {
        out.insert(k, AbelianGroup::free(r));
    }
    out
}

/// `Ext^*(a, Lambda^{i_1} a (x) ... (x) Lambda^{i_c} a)` summed over `i_1 + ... + i_c = d`.
pub fn ext_tensorpower_lambda(c: usize, d: usize) -> Result<GradedGroup> {
    product_over_compositions(c, d, ext_lambda)
}

/// The closed form `Z^{C(d-1, c-1)}` in degree `d - c`.
pub fn lambda_closed_form(c: usize, d: usize) -> GradedGroup {
    if c == 0 || c > d {
        return GradedGroup::new();
    }
    let r = binomial_u128((d - 1) as u64, (c - 1) as u64).expect("small") as usize;
    GradedGroup::single(d - c, AbelianGroup::free(r))
}
