//! The localized complex `AC_{p,N}(d)`: the differential with every binomial
//! replaced by its `p`-part, reduced mod `p^N`. The diagonal map `phi`
//! built from `F~_{p,N}` intertwines it with `AC(d) (x) Z/p^N`.

use super::{Basis, BasisElement};
use crate::arith::{binom_valuation, checked_pow, tilde_f};
use crate::homology::matrix::ModMatrix;
use crate::Result;

/// Matrix of the localized differential `AC^k_{p,N} -> AC^{k+1}_{p,N}`.
pub fn localized_differential_matrix(p: u64, big_n: u32, d: usize, k: usize) -> Result<ModMatrix> {
    let modulus = checked_pow(p, big_n)?;
    let src = Basis::new(d, k);
    let dst = Basis::new(d, k + 1);
    let mut m = ModMatrix::zeros(dst.len(), src.len(), modulus);
    for (j, e) in src.elements().iter().enumerate() {
        let marks = e.marks();
        let kk = marks.len();
        for gap in 1..=kk + 1 {
            let lo = if gap == 1 { 0 } else { marks[gap - 2] };
            let hi = if gap == kk + 1 { d } else { marks[gap - 1] };
            for ins in lo + 1..hi {
                let mut new_marks = marks.to_vec();
                new_marks.insert(gap - 1, ins);
                let t = BasisElement::new(d, new_marks)?;
                let i = dst.index_of(&t).expect("target in basis");
                let v = binom_valuation(p, (hi - lo) as u64, (ins - lo) as u64);
                // p-parts at or beyond p^N vanish
                let part = if v >= u64::from(big_n) { 0 } else { p.pow(v as u32) };
                let val = if gap % 2 == 1 { (modulus - part) % modulus } else { part };
                m.set(i, j, val);
            }
        }
    }
    Ok(m)
}

/// `phi^k`: the diagonal matrix with entry `prod_i F~(n_i - n_{i-1})` on `<n_1 ... n_k>`,
/// where `n_0 = 0` and `n_{k+1} = d`.
pub fn phi_matrix(p: u64, big_n: u32, d: usize, k: usize) -> Result<ModMatrix> {
    let modulus = checked_pow(p, big_n)?;
    let basis = Basis::new(d, k);
    let mut m = ModMatrix::zeros(basis.len(), basis.len(), modulus);
    for (i, e) in basis.elements().iter().enumerate() {
        let mut prev = 0;
        let mut acc = tilde_f(p, big_n, 0)?;
        for &n in e.marks().iter().chain(std::iter::once(&d)) {
            acc = acc.mul(tilde_f(p, big_n, (n - prev) as u64)?);
            prev = n;
        }
        m.set(i, i, acc.value);
    }
    Ok(m)
}
