//! Cohomology of `AC(d)` over `Z` and `Z/p^N`.
//!
//! Torsion in degree `k` comes from the invariant factors of `delta^{k-1}`.
//! The rank of `delta^k` is certified by a rank modulo a large prime (a lower
//! bound) meeting `dim AC^k - rank delta^{k-1}` (an upper bound); only when
//! they differ is `delta^k` reduced exactly.

pub mod group;
pub mod matrix;
pub mod modpn;
pub mod rank;
pub mod snf;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::complex::{Cochain, ComplexHandle};
use crate::{Error, Result};

pub use group::{AbelianGroup, GradedGroup};
pub use matrix::{ModMatrix, SparseIntMatrix};
pub use modpn::{LocalHomology, LocalRing};
pub use snf::{order_in_cokernel, smith_normal_form, solve_integer_system, SmithForm};

/// Rank of `delta^k`.
pub fn differential_rank(h: &ComplexHandle, k: usize) -> usize {
    if k >= h.top() {
        return 0;
    }
    let upper = h.dim(k) - if k == 0 { 0 } else { h.smith(k - 1).rank };
    let m = h.matrix(k);
    let lower = rank::rank_mod_prime(m, rank::CERT_PRIMES[0], Some(upper));
    if lower == upper {
        upper
    } else {
        h.smith(k).rank
    }
}

/// `H^k(AC(d); Z)`.
pub fn homology_at(h: &ComplexHandle, k: usize) -> Result<AbelianGroup> {
    if k > h.top() {
        return Ok(AbelianGroup::zero());
    }
    let (prev_rank, torsion) = if k == 0 {
        (0, Vec::new())
    } else {
        let s = h.smith(k - 1);
        (s.rank, s.torsion())
    };
    let rank = h.dim(k) - differential_rank(h, k) - prev_rank;
    let orders = torsion.into_iter().map(|t| t.to_biguint().expect("positive"));
    Ok(AbelianGroup::new(rank, orders))
}

/// `H^*(AC(d); Z)` in all degrees.
pub fn homology_all(d: usize) -> Result<GradedGroup> {
    let h = ComplexHandle::new(d)?;
    let groups: Vec<(usize, AbelianGroup)> = (0..d)
        .into_par_iter()
        .map(|k| homology_at(&h, k).map(|g| (k, g)))
        .collect::<Result<_>>()?;
    let mut out = GradedGroup::new();
    for (k, g) in groups {
        out.insert(k, g);
    }
    Ok(out)
}

/// Checks `delta^{k+1} o delta^k = 0`.
pub fn check_delta_squared(h: &ComplexHandle, k: usize) -> bool {
    if k + 1 > h.top() {
        return true;
    }
    h.matrix(k + 1).mul(h.matrix(k)).is_zero()
}

fn image_matrix(h: &ComplexHandle, k: usize) -> SparseIntMatrix {
    if k == 0 {
        SparseIntMatrix::zeros(h.dim(0), 0)
    } else {
        h.matrix(k - 1).clone()
    }
}

/// Order of the class of the cocycle `z` in `H^k`; `None` for infinite order.
pub fn class_order(h: &ComplexHandle, z: &Cochain) -> Result<Option<BigInt>> {
    if z.modulus.is_some() {
        return Err(Error::InvalidArgument("integral cochain expected".into()));
    }
    if !h.apply(z)?.is_zero() {
        return Err(Error::InvalidArgument(format!("not a cocycle: {z}")));
    }
    let v = h.to_vector(z)?;
    Ok(order_in_cokernel(&image_matrix(h, z.k), &v))
}

/// Is the cochain a coboundary, i.e. of the form `delta x`?
pub fn solve_coboundary(h: &ComplexHandle, z: &Cochain) -> Result<Option<Cochain>> {
    if z.k == 0 {
        return Ok(z.is_zero().then(|| Cochain::zero(h.d, 0)));
    }
    let v = h.to_vector(z)?;
    Ok(solve_integer_system(h.matrix(z.k - 1), &v).map(|x| Cochain::from_vector(h.basis(z.k - 1), &x)))
}

/// `H^k(AC(d) (x) Z/p^N)` computed directly over `Z/p^N`.
pub fn local_homology(h: &ComplexHandle, ring: LocalRing, k: usize) -> Result<LocalHomology> {
    let m = ring.modulus;
    let a = if k == 0 { ModMatrix::zeros(h.dim(0), 0, m) } else { h.reduced_matrix(k - 1, m) };
    let b = if k >= h.top() { ModMatrix::zeros(0, h.dim(k), m) } else { h.reduced_matrix(k, m) };
    LocalHomology::new(&a, &b, ring)
}

/// Orders of the cyclic summands of `H^k(AC(d) (x) Z/p^N)` via the universal
/// coefficient sequence `H^k (x) Z/p^N + Tor(H^{k+1}, Z/p^N)`.
pub fn homology_mod_pn_uct(h: &ComplexHandle, ring: LocalRing, k: usize) -> Result<Vec<u64>> {
    let cyclic = AbelianGroup::cyclic(ring.modulus);
    let hk = homology_at(h, k)?;
    let hk1 = homology_at(h, k + 1)?;
    let g = hk.tensor(&cyclic).direct_sum(&hk1.tor(&cyclic));
    Ok(g.prime_power_torsion().iter().map(|v| v.to_u64().expect("divides p^N")).collect())
}

/// `H^k(AC(d) (x) Z/p^N)` as ascending prime-power orders, computed by both
/// routes; disagreement is reported as an internal error.
pub fn homology_mod_pn(p: u64, big_n: u32, d: usize, k: usize) -> Result<Vec<u64>> {
    let ring = LocalRing::new(p, big_n)?;
    let h = ComplexHandle::new(d)?;
    let direct = local_homology(&h, ring, k)?.orders();
    let uct = homology_mod_pn_uct(&h, ring, k)?;
    if direct != uct {
        return Err(Error::Internal(format!(
            "mod {}: direct route gives {direct:?}, universal coefficients give {uct:?}",
            ring.modulus
        )));
    }
    Ok(direct)
}

/// Class order of a mod-`p^N` cocycle in `H^k(AC(d) (x) Z/p^N)`.
pub fn class_order_mod_pn(h: &ComplexHandle, ring: LocalRing, z: &Cochain) -> Result<u64> {
    let local = local_homology(h, ring, z.k)?;
    let v = z.residues(h.basis(z.k), ring.modulus)?;
    local.class_order(&v)
}

pub fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_complexes() {
        let g = homology_all(1).unwrap();
        assert_eq!(g.get(0), AbelianGroup::free(1));
        let g = homology_all(3).unwrap();
        assert_eq!(g.get(1), AbelianGroup::cyclic(3));
        assert_eq!(g.get(2), AbelianGroup::cyclic(2));
        let g = homology_all(6).unwrap();
        assert_eq!(g.get(2).chain_string(), "Z/10");
        assert_eq!(g.get(3).chain_string(), "Z/6");
    }

    #[test]
    fn mod_pn_routes_agree() {
        assert_eq!(homology_mod_pn(2, 2, 6, 1).unwrap(), vec![2]);
        assert_eq!(homology_mod_pn(3, 1, 9, 1).unwrap(), vec![3]);
        assert_eq!(homology_mod_pn(5, 1, 7, 1).unwrap(), Vec::<u64>::new());
    }
}
