//! Rank over a prime field by sparse row reduction.
//!
//! The rank of an integer matrix modulo a prime is a lower bound for its
//! rational rank. Combined with an upper bound from `delta o delta = 0` this
//! certifies the rational rank without a full integral reduction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::matrix::SparseIntMatrix;
use crate::arith::{inv_mod, mul_mod};

/// Primes below `2^61` used for rank certificates.
pub const CERT_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

/// Rank of `m` over `F_prime`; stops early once `stop_at` is reached.
pub fn rank_mod_prime(m: &SparseIntMatrix, prime: u64, stop_at: Option<usize>) -> usize {
    let big = BigInt::from(prime);
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); m.rows];
    for (i, j, v) in m.triplets() {
        let r = ((v % &big) + &big) % &big;
        let r = r.to_u64().expect("residue fits");
        if r != 0 {
            rows[i].push((j, r));
        }
    }
    rows.sort_by_key(Vec::len);
    let limit = stop_at.unwrap_or(usize::MAX).min(m.rows).min(m.cols);
    // pivot column -> normalized row with leading 1 at that column
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    let mut dense = vec![0u64; m.cols];
    for row in rows {
        if pivots.len() >= limit {
            break;
        }
        if row.is_empty() {
            continue;
        }
        let mut touched: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
        for &(j, v) in &row {
            dense[j] = v;
            touched.insert(j);
        }
        // Eliminate every pivot column; later pivots never reintroduce
        // earlier pivot columns, so this terminates.
        let mut residual = std::collections::BTreeSet::new();
        while let Some(j) = touched.pop_first() {
            let v = dense[j];
            if v == 0 {
                continue;
            }
            match pivots.get(&j) {
                Some(prow) => {
                    let f = prime - v;
                    for &(k, w) in prow {
                        dense[k] = (dense[k] + mul_mod(f, w, prime)) % prime;
                        if k != j {
                            touched.insert(k);
                        }
                    }
                    dense[j] = 0;
                }
                None => {
                    residual.insert(j);
                }
            }
        }
        let support: Vec<usize> = residual.into_iter().filter(|&k| dense[k] != 0).collect();
        if let Some(&j) = support.first() {
            let inv = inv_mod(dense[j], prime).expect("nonzero mod prime");
            let normalized = support.iter().map(|&k| (k, mul_mod(dense[k], inv, prime))).collect();
            pivots.insert(j, normalized);
        }
        for k in support {
            dense[k] = 0;
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank_mod_prime(&m, CERT_PRIMES[1], None), 2);
        let m = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_mod_prime(&m, 2, None), 1);
        assert_eq!(rank_mod_prime(&m, 5, None), 2);
    }
}
