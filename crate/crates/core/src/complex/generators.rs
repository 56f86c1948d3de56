//! Explicit cocycles representing the closed-form cohomology classes.

use num_bigint::BigInt;
use num_traits::One;

use super::{BasisElement, Cochain};
use crate::arith::{self, binomial, binomial_over_p, checked_pow};
use crate::{Error, Result};

/// `<marks>^c`: the element on `{1, ..., d-1}` minus `marks`.
pub fn complement_element(d: usize, marks: &[usize]) -> Result<BasisElement> {
    let mut sorted = marks.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let inner = BasisElement::new(d, sorted)?;
    if inner.degree() != marks.len() {
        return Err(Error::MalformedBasis(marks.to_vec(), d));
    }
    Ok(inner.complement())
}

/// `<>^c = <1 2 ... d-1>`, the generator of the top degree.
pub fn top_generator(d: usize) -> Result<Cochain> {
    if d < 2 {
        return Err(Error::InvalidArgument("top generator needs d >= 2".into()));
    }
    Ok(Cochain::basis(&BasisElement::empty(d).complement()))
}

/// `u_m = (-1)^m <m>^c + <1>^c` in degree `d - 2`, for `2 <= m <= d - 1`.
pub fn u_cochain(d: usize, m: usize) -> Result<Cochain> {
    if m < 2 || m >= d {
        return Err(Error::InvalidArgument(format!("u_m needs 2 <= m <= d - 1, got m = {m}, d = {d}")));
    }
    let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut c = Cochain::zero(d, d - 2);
    c.add_term(complement_element(d, &[m])?, sign);
    c.add_term(complement_element(d, &[1])?, BigInt::one());
    Ok(c)
}

/// For `d = p^l`: the cocycle `sum_k C(d, k)/p <k>` generating `H^1 = Z/p`.
pub fn h1_generator(d: usize) -> Result<Cochain> {
    let (p, _) = arith::prime_power(d as u64).ok_or(Error::NotPrimePower(d as u64))?;
    binomial_row_over_p(d, p)
}

fn binomial_row_over_p(d: usize, p: u64) -> Result<Cochain> {
    let mut c = Cochain::zero(d, 1);
    for k in 1..d {
        c.add_term(BasisElement::new(d, vec![k])?, binomial_over_p(p, d as u64, k as u64)?);
    }
    Ok(c)
}

fn binomial_row(d: usize) -> Result<Cochain> {
    let mut c = Cochain::zero(d, 1);
    for k in 1..d {
        c.add_term(BasisElement::new(d, vec![k])?, binomial(d as u64, k as u64));
    }
    Ok(c)
}

/// For `d = p^n (p^m + 1)`: the degree-2 cocycle `y` with `delta <p^n> = p y`,
/// generating the `Z/p` summand of `H^2`.
pub fn h2_generator(p: u64, n: u32, m: u32) -> Result<Cochain> {
    if !arith::is_prime(p) || m == 0 {
        return Err(Error::InvalidArgument(format!("need p prime and m >= 1, got p = {p}, m = {m}")));
    }
    let pn = checked_pow(p, n)?;
    let pnm = checked_pow(p, n + m)?;
    let d = pn.checked_add(pnm).ok_or(Error::Overflow("h2 degree"))? as usize;
    let pn = pn as usize;
    let mut y = Cochain::zero(d, 2);
    for k in 1..pn {
        let e = BasisElement::new(d, vec![k, pn])?;
        y.add_term(e, -binomial_over_p(p, pn as u64, k as u64)?);
    }
    for l in 1..pnm as usize {
        let e = BasisElement::new(d, vec![pn, pn + l])?;
        y.add_term(e, binomial_over_p(p, pnm, l as u64)?);
    }
    Ok(y)
}

/// The nonzero class of `H^1(AC(d) (x) Z/p^N)` when `d` lies in `A(p)` or `B(p)`.
pub fn h1_modpn_generator(p: u64, big_n: u32, d: usize) -> Result<Cochain> {
    let modulus = checked_pow(p, big_n)?;
    let du = d as u64;
    if arith::in_a(p, du) {
        let v = arith::valuation(p, du as i128)?;
        let spike = BasisElement::new(d, vec![checked_pow(p, v)? as usize])?;
        let c = Cochain::basis(&spike).scale(&BigInt::from(checked_pow(p, big_n - 1)?));
        Ok(c.reduce(modulus))
    } else if arith::in_b(p, du) {
        Ok(binomial_row_over_p(d, p)?.reduce(modulus))
    } else {
        Err(Error::InvalidArgument(format!("d = {d} lies in neither A({p}) nor B({p})")))
    }
}

/// Cocycles spanning `Z^1(AC(d) (x) Z/p^N)`.
pub fn z1_modpn_generators(p: u64, big_n: u32, d: usize) -> Result<Vec<Cochain>> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be at least 2".into()));
    }
    let modulus = checked_pow(p, big_n)?;
    let du = d as u64;
    let gens = if arith::in_a(p, du) {
        vec![h1_modpn_generator(p, big_n, d)?, binomial_row(d)?.reduce(modulus)]
    } else if arith::in_b(p, du) {
        vec![binomial_row_over_p(d, p)?.reduce(modulus)]
    } else {
        vec![binomial_row(d)?.reduce(modulus)]
    };
    Ok(gens)
}
