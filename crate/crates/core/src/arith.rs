//! Exact integer arithmetic: p-adic valuations of binomial coefficients,
//! Granville's unit-part congruence, and the small combinatorial sets that
//! index the closed forms (prime powers, `A(p)`, `B(p)`, `J_d`).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A residue class modulo `modulus`, stored as its least nonnegative representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

impl Residue {
    pub fn new(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        Residue { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue { value: mul_mod(self.value, other.value, self.modulus), modulus: self.modulus }
    }

    pub fn neg(self) -> Residue {
        Residue::new(-(self.value as i128), self.modulus)
    }

    pub fn inverse(self) -> Option<Residue> {
        inv_mod(self.value, self.modulus).map(|v| Residue { value: v, modulus: self.modulus })
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::Overflow("prime power"))
}

/// Exponent of `p` in the nonzero integer `n`.
pub fn valuation(p: u64, n: i128) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    check_prime(p)?;
    let p = p as i128;
    let (mut n, mut v) = (n, 0);
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Ok(v)
}

pub fn valuation_big(p: u64, n: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    check_prime(p)?;
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(n!) = sum_k floor(n / p^k)`.
pub fn legendre(p: u64, n: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc.into()
}

/// Binomial coefficient as `u128`, for the small arguments the complex uses.
pub fn binomial_u128(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// `S_p(n)`, the base-`p` digit sum.
pub fn digit_sum(p: u64, mut n: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// Kummer: `v_p C(n, r) = (S_p(r) + S_p(n - r) - S_p(n)) / (p - 1)`.
pub fn kummer_valuation(p: u64, n: u64, r: u64) -> Result<u64> {
    check_prime(p)?;
    if r > n {
        return Err(Error::InvalidArgument(format!("r = {r} exceeds n = {n}")));
    }
    Ok((digit_sum(p, r) + digit_sum(p, n - r) - digit_sum(p, n)) / (p - 1))
}

/// `v_p C(n, r)` by Legendre's formula.
pub fn binom_valuation(p: u64, n: u64, r: u64) -> u64 {
    assert!(r <= n, "binom_valuation requires r <= n");
    legendre(p, n) - legendre(p, r) - legendre(p, n - r)
}

/// Number of carries when adding `a` and `b` in base `p` (Kummer).
pub fn kummer_carries(p: u64, a: u64, b: u64) -> u64 {
    let (mut a, mut b, mut carry, mut count) = (a, b, 0, 0);
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        count += carry;
        a /= p;
        b /= p;
    }
    count
}

/// `C(n, r)_p`, the largest power of `p` dividing `C(n, r)`.
pub fn p_factor(p: u64, n: u64, r: u64) -> BigInt {
    let v = binom_valuation(p, n, r);
    num_traits::pow(BigInt::from(p), v as usize)
}

/// `F_p(m)`: product of the integers in `[1, m]` prime to `p`, modulo `modulus`.
pub fn fp_factorial(p: u64, m: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    for i in 1..=m {
        if i % p != 0 {
            acc = mul_mod(acc, i % modulus, modulus);
        }
    }
    acc
}

/// `F_p(m)` exactly.
pub fn odd_part_product(p: u64, m: u64) -> BigInt {
    (1..=m).filter(|i| i % p != 0).fold(BigInt::one(), |acc, i| acc * i)
}

/// The sign in Granville's congruence: `+1` only for `p = 2, N >= 3`.
pub fn granville_sign(p: u64, big_n: u32) -> i64 {
    if p == 2 && big_n >= 3 {
        1
    } else {
        -1
    }
}

/// `F~_{p,N}(n) = (+-1)^alpha * prod_j F_p(tau_j(n))  (mod p^N)`, where
/// `tau_j(n)` is `floor(n / p^j)` reduced mod `p^N` and
/// `alpha = sum_{j >= N} floor(n / p^j)`.
pub fn tilde_f(p: u64, big_n: u32, n: u64) -> Result<Residue> {
    check_prime(p)?;
    if big_n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let modulus = checked_pow(p, big_n)?;
    let mut value = 1 % modulus;
    let mut q = n;
    let mut j = 0;
    let mut alpha = 0u64;
    while q > 0 {
        value = mul_mod(value, fp_factorial(p, q % modulus, modulus), modulus);
        if j >= big_n {
            alpha += q;
        }
        q /= p;
        j += 1;
    }
    if granville_sign(p, big_n) < 0 && alpha % 2 == 1 {
        value = (modulus - value) % modulus;
    }
    Ok(Residue { value, modulus })
}

/// `C(n, r) / C(n, r)_p  ==  F~(n) / (F~(r) F~(n - r))  (mod p^N)`.
pub fn granville_check(p: u64, big_n: u32, n: u64, r: u64) -> Result<bool> {
    if r > n {
        return Err(Error::InvalidArgument(format!("r = {r} exceeds n = {n}")));
    }
    let modulus = checked_pow(p, big_n)?;
    let unit = binomial(n, r) / p_factor(p, n, r);
    let lhs = (unit % BigInt::from(modulus)).to_string().parse::<u64>().expect("residue fits");
    let num = tilde_f(p, big_n, n)?;
    let den = tilde_f(p, big_n, r)?.mul(tilde_f(p, big_n, n - r)?);
    let den_inv = den
        .inverse()
        .ok_or_else(|| Error::Internal("F~ is not a unit".into()))?;
    Ok(num.mul(den_inv).value == lhs)
}

/// `mu_p(d) = min_{0<k<d} v_p C(d, k)`, and `0` for `d = 1`.
pub fn mu(p: u64, d: u64) -> u64 {
    (1..d).map(|k| binom_valuation(p, d, k)).min().unwrap_or(0)
}

/// `theta_p(d)`: the minimum of `v_p C(d, k) + v_p C(k, r)` over `0 < r < k < d`
/// with exactly one of `k`, `r` divisible by `p`; `0` when no such pair exists.
pub fn theta(p: u64, d: u64) -> u64 {
    let mut best: Option<u64> = None;
    for k in 2..d {
        let vk = binom_valuation(p, d, k);
        if best.is_some_and(|b| vk >= b) {
            continue;
        }
        for r in 1..k {
            if (k % p == 0) == (r % p == 0) {
                continue;
            }
            let v = vk + binom_valuation(p, k, r);
            if best.map_or(true, |b| v < b) {
                best = Some(v);
            }
        }
    }
    best.unwrap_or(0)
}

/// `gcd_{0<k<d} C(d, k)`; `0` when the range is empty (`d = 1`).
pub fn binomial_row_gcd(d: u64) -> BigInt {
    (1..d).fold(BigInt::zero(), |g, k| g.gcd(&binomial(d, k)))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, l))` when `d = p^l` with `l >= 1`.
pub fn prime_power(d: u64) -> Option<(u64, u32)> {
    match factorize(d).as_slice() {
        [(p, l)] => Some((*p, *l)),
        _ => None,
    }
}

/// All `(n, m)` with `d = p^n (p^m + 1)`, `n >= 0`, `m >= 1`.
pub fn a_decompositions(p: u64, d: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    if d == 0 || !is_prime(p) {
        return out;
    }
    let mut rest = d;
    let mut n = 0;
    loop {
        if rest > 1 {
            let mut q = rest - 1;
            let mut m = 0;
            while q % p == 0 && q > 1 {
                q /= p;
                m += 1;
            }
            if q == 1 && m >= 1 {
                out.push((n, m));
            }
        }
        if rest % p != 0 {
            break;
        }
        rest /= p;
        n += 1;
    }
    out
}

/// `d` lies in `A(p) = { p^n (p^m + 1) : n >= 0, m >= 1 }`.
/// `(d in A(p), d in B(p))`.
pub fn membership_ab(p: u64, d: u64) -> (bool, bool) {
    (in_a(p, d), in_b(p, d))
}

/// `Some((p, l))` when `d = p^l` with `l >= 1`.
pub fn prime_power_decomposition(d: u64) -> Option<(u64, u32)> {
    prime_power(d)
}

pub fn in_a(p: u64, d: u64) -> bool {
    !a_decompositions(p, d).is_empty()
}

/// `d` lies in `B(p) = { p^n : n >= 1 }`.
pub fn in_b(p: u64, d: u64) -> bool {
    prime_power(d).is_some_and(|(q, _)| q == p)
}

/// `J_d`: the primes `p` for which `d = p^n (p^m + 1)` for some `n >= 0`, `m >= 1`.
pub fn j_set(d: u64) -> Vec<u64> {
    if d < 3 {
        return Vec::new();
    }
    primes_up_to(d - 1).into_iter().filter(|&p| in_a(p, d)).collect()
}

/// `binomial(n, k) / p` for binomials known to be divisible by `p`.
pub fn binomial_over_p(p: u64, n: u64, k: u64) -> Result<BigInt> {
    let b = binomial(n, k);
    let (q, r) = b.div_rem(&BigInt::from(p));
    if !r.is_zero() {
        return Err(Error::Internal(format!("{p} does not divide C({n},{k})")));
    }
    Ok(q)
}
