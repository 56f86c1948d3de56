//! Linear algebra over the local ring `Z/p^N`.
//!
//! Every element is a unit times a power of `p`, so a pivot of minimal
//! valuation divides the whole remaining block and elimination never needs a
//! Euclidean loop.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::matrix::{ModMatrix, SparseIntMatrix};
use super::snf::smith_normal_form;
use crate::arith::{checked_pow, inv_mod, mul_mod};
use crate::{Error, Result};

/// The ring `Z/p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalRing {
    pub p: u64,
    pub n: u32,
    pub modulus: u64,
}

impl LocalRing {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !crate::arith::is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("N must be positive".into()));
        }
        let modulus = checked_pow(p, n)?;
        if modulus > (1 << 62) {
            return Err(Error::Overflow("modulus p^N"));
        }
        Ok(LocalRing { p, n, modulus })
    }

    /// `v_p` of a residue, with `v_p(0) = N`.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.modulus;
        if x == 0 {
            return self.n;
        }
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn pow(&self, e: u32) -> u64 {
        self.p.pow(e)
    }
}

/// Diagonalization `A ~ diag(u_i p^{e_i})` with the inverse column transform.
#[derive(Debug, Clone)]
pub struct LocalSmith {
    /// Valuations `e_i < N` of the nonzero diagonal entries.
    pub valuations: Vec<u32>,
    /// `V^{-1}`: coordinates in which the kernel is diagonal, `y = V^{-1} x`.
    pub vinv: Option<ModMatrix>,
}

impl LocalSmith {
    /// `|im A| = prod p^{N - e_i}` as a `p`-exponent.
    pub fn image_exponent(&self, ring: &LocalRing) -> u64 {
        self.valuations.iter().map(|&e| u64::from(ring.n - e)).sum()
    }
}

pub fn local_smith(a: &ModMatrix, ring: &LocalRing, track_columns: bool) -> LocalSmith {
    assert_eq!(a.modulus, ring.modulus);
    let m = ring.modulus;
    let mut w = a.clone();
    let mut vinv = track_columns.then(|| ModMatrix::identity(a.cols, m));
    let mut valuations = Vec::new();
    let steps = a.rows.min(a.cols);
    for t in 0..steps {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in t..w.rows {
            for j in t..w.cols {
                let v = ring.valuation(w.get(i, j));
                if v < ring.n && best.map_or(true, |b| v < b.2) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, e)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        if let Some(vi) = &mut vinv {
            vi.swap_rows(t, pj);
        }
        let pe = ring.pow(e);
        let unit = w.get(t, t) / pe;
        let unit_inv = inv_mod(unit, m).expect("pivot unit part is invertible");
        for i in t + 1..w.rows {
            let x = w.get(i, t);
            if x != 0 {
                let f = mul_mod(x / pe, unit_inv, m);
                w.add_row_multiple(i, t, m - f);
            }
        }
        for j in t + 1..w.cols {
            let x = w.get(t, j);
            if x != 0 {
                let f = mul_mod(x / pe, unit_inv, m);
                w.add_col_multiple(j, t, m - f);
                // col_j += c col_t is undone in coordinates by row_t -= c row_j.
                if let Some(vi) = &mut vinv {
                    vi.add_row_multiple(t, j, f);
                }
            }
        }
        valuations.push(e);
    }
    LocalSmith { valuations, vinv }
}

/// A finite `Z/p^N`-module `H = ker B / im A`, presented by generators of
/// order `p^{b_i}` and relation columns.
#[derive(Debug, Clone)]
pub struct LocalHomology {
    pub ring: LocalRing,
    /// Orders (as `p`-exponents) of the generators of `ker B`.
    pub generator_exponents: Vec<u32>,
    vinv: ModMatrix,
    /// Indices into `0..n` of the kernel coordinates that carry a generator.
    coords: Vec<usize>,
    relations: Vec<Vec<BigInt>>,
}

impl LocalHomology {
    /// Homology of `Z^m --a--> Z^n --b--> Z^q` reduced mod `p^N`.
    pub fn new(a: &ModMatrix, b: &ModMatrix, ring: LocalRing) -> Result<Self> {
        if a.rows != b.cols {
            return Err(Error::InvalidArgument("composable maps required".into()));
        }
        let n = b.cols;
        let sb = local_smith(b, &ring, true);
        let vinv = sb.vinv.expect("tracked");
        // coordinate t < r is killed up to p^{N - e_t}; the rest are free
        let mut generator_exponents = Vec::new();
        let mut coords = Vec::new();
        for t in 0..n {
            let order = if t < sb.valuations.len() { sb.valuations[t] } else { ring.n };
            if order > 0 {
                generator_exponents.push(order);
                coords.push(t);
            }
        }
        let mut h = LocalHomology { ring, generator_exponents, vinv, coords, relations: Vec::new() };
        for j in 0..a.cols {
            let rel = h.coordinates(&a.column(j))?;
            h.relations.push(rel);
        }
        Ok(h)
    }

    /// Coordinates of a cycle in terms of the kernel generators.
    pub fn coordinates(&self, x: &[u64]) -> Result<Vec<BigInt>> {
        let y = self.vinv.mul_vec(x);
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.coords.len());
        let mut killed = vec![true; y.len()];
        for (g, &t) in self.coords.iter().enumerate() {
            killed[t] = false;
            let scale = ring.pow(ring.n - self.generator_exponents[g]);
            if y[t] % scale != 0 {
                return Err(Error::Internal("vector is not a cycle".into()));
            }
            out.push(BigInt::from(y[t] / scale));
        }
        for (t, k) in killed.into_iter().enumerate() {
            // coordinates with a unit diagonal entry must vanish on cycles
            if k && y[t] != 0 {
                return Err(Error::Internal("vector is not a cycle".into()));
            }
        }
        Ok(out)
    }

    fn presentation(&self, extra: &[Vec<BigInt>]) -> SparseIntMatrix {
        let g = self.coords.len();
        let mut m = SparseIntMatrix::zeros(g, g + self.relations.len() + extra.len());
        for (i, &e) in self.generator_exponents.iter().enumerate() {
            m.set(i, i, BigInt::from(self.ring.pow(e)));
        }
        for (c, rel) in self.relations.iter().chain(extra).enumerate() {
            for (i, v) in rel.iter().enumerate() {
                m.set(i, g + c, v.clone());
            }
        }
        m
    }

    /// Cyclic decomposition as ascending prime-power orders.
    pub fn orders(&self) -> Vec<u64> {
        let s = smith_normal_form(&self.presentation(&[]), false);
        s.torsion().iter().map(|v| v.to_u64().expect("divides p^N")).collect()
    }

    pub fn cardinality(&self) -> BigUint {
        self.orders().iter().fold(BigUint::from(1u32), |a, &o| a * o)
    }

    /// Order of the class of a cycle.
    pub fn class_order(&self, x: &[u64]) -> Result<u64> {
        let c = self.coordinates(x)?;
        let full = smith_normal_form(&self.presentation(&[]), false);
        let quot = smith_normal_form(&self.presentation(&[c]), false);
        let prod = |s: &super::snf::SmithForm| s.invariant_factors.iter().fold(BigInt::from(1), |a, v| a * v);
        let ratio = prod(&full) / prod(&quot);
        ratio.to_u64().ok_or(Error::Overflow("class order"))
    }
}

/// `p`-exponent of `|span of the columns|` inside `(Z/p^N)^rows`.
pub fn span_exponent(columns: &[Vec<u64>], rows: usize, ring: &LocalRing) -> u64 {
    if columns.is_empty() {
        return 0;
    }
    let m = ModMatrix::from_columns(rows, columns, ring.modulus);
    local_smith(&m, ring, false).image_exponent(ring)
}

/// `p`-exponent of `|ker B|`.
pub fn kernel_exponent(b: &ModMatrix, ring: &LocalRing) -> u64 {
    let s = local_smith(b, ring, false);
    u64::from(ring.n) * b.cols as u64 - s.image_exponent(ring)
}

pub fn is_zero_vec(v: &[u64]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_coordinates_diagonalize() {
        let ring = LocalRing::new(2, 3).unwrap();
        let b = ModMatrix::from_columns(2, &[vec![2, 4], vec![6, 0], vec![4, 4]], 8);
        let s = local_smith(&b, &ring, true);
        assert_eq!(s.valuations, vec![1, 2]);
        // |ker| = 8^3 / (4 * 2)
        assert_eq!(kernel_exponent(&b, &ring), 9 - 3);
    }

    #[test]
    fn homology_of_multiplication_by_p() {
        // Z --2--> Z --0--> 0 reduced mod 4 gives Z/2.
        let ring = LocalRing::new(2, 2).unwrap();
        let a = ModMatrix::from_columns(1, &[vec![2]], 4);
        let b = ModMatrix::zeros(0, 1, 4);
        let h = LocalHomology::new(&a, &b, ring).unwrap();
        assert_eq!(h.orders(), vec![2]);
        assert_eq!(h.class_order(&[1]).unwrap(), 2);
        assert_eq!(h.class_order(&[2]).unwrap(), 1);
    }

    #[test]
    fn kernel_of_multiplication_by_p() {
        // 0 --> Z --2--> Z mod 4: H^0 = ker = {0, 2} = Z/2.
        let ring = LocalRing::new(2, 2).unwrap();
        let a = ModMatrix::zeros(1, 0, 4);
        let b = ModMatrix::from_columns(1, &[vec![2]], 4);
        let h = LocalHomology::new(&a, &b, ring).unwrap();
        assert_eq!(h.orders(), vec![2]);
        assert_eq!(h.class_order(&[2]).unwrap(), 2);
        assert!(h.coordinates(&[1]).is_err());
    }
}
