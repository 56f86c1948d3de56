//! Checks of the closed forms against exact computation. Each check returns a
//! [`TheoremReport`] carrying the expected and computed values and the
//! explicit cocycles used as witnesses.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{self, binomial, binomial_row_gcd, granville_check, j_set, mu, theta};
use crate::complex::{self, BasisElement, Cochain, ComplexHandle};
use crate::homology::{
    class_order, class_order_mod_pn, homology_at, homology_mod_pn, local_homology, modpn, AbelianGroup,
    GradedGroup, LocalRing,
};
use crate::hopf;
use crate::kunneth;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub name: String,
    pub value: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub params: Value,
    pub expected: String,
    pub computed: String,
    pub witnesses: Vec<Witness>,
    pub verdict: Verdict,
}

impl TheoremReport {
    fn new(theorem: &str, params: Value, expected: String, computed: String, witnesses: Vec<Witness>) -> Self {
        let ok = expected == computed && witnesses.iter().all(|w| w.ok);
        TheoremReport {
            theorem: theorem.to_string(),
            params,
            expected,
            computed,
            witnesses,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn summary(&self) -> String {
        let v = if self.passed() { "PASS" } else { "FAIL" };
        format!("[{v}] {} {} expected {} computed {}", self.theorem, self.params, self.expected, self.computed)
    }
}

fn witness(name: impl Into<String>, value: impl ToString, ok: bool) -> Witness {
    Witness { name: name.into(), value: value.to_string(), ok }
}

fn order_witness(h: &ComplexHandle, name: &str, z: &Cochain, expected: u64) -> Witness {
    match class_order(h, z) {
        Ok(Some(o)) => witness(format!("{name} has order {expected}"), format!("{z}  [order {o}]"), o == BigInt::from(expected)),
        Ok(None) => witness(format!("{name} has order {expected}"), format!("{z}  [infinite order]"), false),
        Err(e) => witness(format!("{name} has order {expected}"), e, false),
    }
}

/// `H^1(AC(d)) = Z/p` for `d = p^l` and `0` otherwise, with the binomial
/// row as generator.
pub fn verify_h1(d: usize) -> Result<TheoremReport> {
    let h = ComplexHandle::new(d)?;
    let computed = homology_at(&h, 1)?;
    let pp = arith::prime_power(d as u64);
    let expected = match pp {
        Some((p, _)) => AbelianGroup::cyclic(p),
        None => AbelianGroup::zero(),
    };
    let mut witnesses = Vec::new();
    if d >= 2 {
        let g = binomial_row_gcd(d as u64);
        let gcd_group = AbelianGroup::new(0, [g.to_biguint().expect("positive")]);
        witnesses.push(witness("H^1 = Z/gcd_k C(d,k)", &g, gcd_group == computed));
    }
    if let Some((p, _)) = pp {
        let z = complex::h1_generator(d)?;
        witnesses.push(order_witness(&h, "binomial row / p", &z, p));
    }
    Ok(TheoremReport::new("h1", json!({ "d": d }), expected.to_string(), computed.to_string(), witnesses))
}

/// `H^2(AC(d)) = sum_{p in J_d} Z/p`, each summand generated by the explicit cocycle `y`.
pub fn verify_h2(d: usize) -> Result<TheoremReport> {
    let h = ComplexHandle::new(d)?;
    let computed = homology_at(&h, 2)?;
    let primes = j_set(d as u64);
    let expected = AbelianGroup::from_orders(0, &primes);
    let mut witnesses = Vec::new();
    for &p in &primes {
        for (n, m) in arith::a_decompositions(p, d as u64) {
            let y = complex::h2_generator(p, n, m)?;
            let spike = Cochain::basis(&BasisElement::new(d, vec![p.pow(n) as usize])?);
            let boundary_ok = spike.differential() == y.scale(&BigInt::from(p));
            witnesses.push(witness(format!("delta<{}> = {p} y  (n={n}, m={m})", p.pow(n)), &y, boundary_ok));
            witnesses.push(order_witness(&h, &format!("y for p={p}"), &y, p));
        }
    }
    let params = json!({ "d": d, "J_d": primes });
    Ok(TheoremReport::new("h2", params, expected.to_string(), computed.to_string(), witnesses))
}

fn complement_cochain(d: usize, marks: &[usize]) -> Result<Cochain> {
    Ok(Cochain::basis(&complex::complement_element(d, marks)?))
}

/// The two top degrees: `H^{d-1} = Z/2` on `<>^c`, and `H^{d-2} = Z/3` for
/// `d = 3, 4` (on `u_2`) and `0` otherwise, with the coboundary identities
/// relating the `u_m`.
pub fn verify_top_degrees(d: usize) -> Result<TheoremReport> {
    if d < 2 {
        return Err(Error::InvalidArgument("top degrees need d >= 2".into()));
    }
    let h = ComplexHandle::new(d)?;
    let top = homology_at(&h, d - 1)?;
    let below = homology_at(&h, d - 2)?;
    let expected_below = if d == 3 || d == 4 { AbelianGroup::cyclic(3) } else { AbelianGroup::zero() };
    let expected = format!("H^{} = Z/2, H^{} = {}", d - 1, d - 2, expected_below);
    let computed = format!("H^{} = {}, H^{} = {}", d - 1, top, d - 2, below);

    let mut witnesses = vec![order_witness(&h, "<>^c", &complex::top_generator(d)?, 2)];
    let top_gen = complex::top_generator(d)?;
    for m in 1..d {
        let c = complement_cochain(d, &[m])?;
        let sign = if m % 2 == 0 { 2 } else { -2 };
        let ok = c.differential() == top_gen.scale(&BigInt::from(sign));
        witnesses.push(witness(format!("delta <{m}>^c = {sign} <>^c"), c.differential(), ok));
    }
    if d >= 3 {
        for m in 2..d {
            let u = complex::u_cochain(d, m)?;
            witnesses.push(witness(format!("u_{m} is a cocycle"), &u, u.differential().is_zero()));
        }
        let u2 = complex::u_cochain(d, 2)?;
        let rhs = complement_cochain(d, &[1, 2])?.differential().scale(&BigInt::from(-1));
        witnesses.push(witness("3 u_2 = -delta <1 2>^c", &rhs, u2.scale(&BigInt::from(3)) == rhs));
        if d == 3 || d == 4 {
            witnesses.push(order_witness(&h, "u_2", &u2, 3));
        }
    }
    if d >= 4 {
        let u3 = complex::u_cochain(d, 3)?;
        let x = complement_cochain(d, &[1, 2])?
            .add(&complement_cochain(d, &[2, 3])?)
            .add(&complement_cochain(d, &[1, 3])?);
        let rhs = x.differential().scale(&BigInt::from(-1));
        witnesses.push(witness("u_3 = -delta(<12>^c + <23>^c + <13>^c)", &rhs, u3 == rhs));
        for m in 3..d - 1 {
            let diff = complex::u_cochain(d, m + 1)?.sub(&complex::u_cochain(d, m)?);
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let x = complement_cochain(d, &[1, m])?
                .add(&complement_cochain(d, &[1, m + 1])?)
                .add(&complement_cochain(d, &[m, m + 1])?.scale(&BigInt::from(sign)));
            let rhs = x.differential().scale(&BigInt::from(-sign));
            witnesses.push(witness(format!("u_{} - u_{m} is a coboundary", m + 1), &rhs, diff == rhs));
        }
    }
    Ok(TheoremReport::new("top", json!({ "d": d }), expected, computed, witnesses))
}

/// Does `(a_1, ..., a_{d-1})` satisfy `C(k, r) a_k = C(d-r, d-k) a_r` for `0 < r < k < d`?
pub fn verify_cocycle_system(d: usize, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), d.saturating_sub(1), "need one coefficient per k in 1..d");
    let d64 = d as u64;
    for k in 2..d {
        for r in 1..k {
            let lhs = binomial(k as u64, r as u64) * &v[k - 1];
            let rhs = binomial(d64 - r as u64, d64 - k as u64) * &v[r - 1];
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `H^1(AC(d) (x) Z/p^N) = Z/p` exactly when `d` lies in `A(p)` or `B(p)`.
pub fn verify_h1_modpn(p: u64, big_n: u32, d: usize) -> Result<TheoremReport> {
    let ring = LocalRing::new(p, big_n)?;
    let params = json!({ "p": p, "N": big_n, "d": d });
    let member = arith::in_a(p, d as u64) || arith::in_b(p, d as u64);
    let expected = if member { AbelianGroup::cyclic(p) } else { AbelianGroup::zero() }.to_string();
    let computed = match homology_mod_pn(p, big_n, d, 1) {
        Ok(orders) => AbelianGroup::from_orders(0, &orders).to_string(),
        Err(e) => format!("error: {e}"),
    };
    let mut witnesses = Vec::new();
    if member {
        let h = ComplexHandle::new(d)?;
        let g = complex::h1_modpn_generator(p, big_n, d)?;
        let w = match class_order_mod_pn(&h, ring, &g) {
            Ok(o) => witness(format!("generator has order {p}"), format!("{g}  [order {o}]"), o == p),
            Err(e) => witness(format!("generator has order {p}"), e, false),
        };
        witnesses.push(w);
    }
    Ok(TheoremReport::new("h1_modpn", params, expected, computed, witnesses))
}

/// The listed cocycles span `Z^1(AC(d) (x) Z/p^N)`: each lies in the kernel and
/// their span has the cardinality of the kernel.
pub fn verify_z1_modpn(p: u64, big_n: u32, d: usize) -> Result<TheoremReport> {
    let ring = LocalRing::new(p, big_n)?;
    let h = ComplexHandle::new(d)?;
    let b = h.reduced_matrix(1, ring.modulus);
    let gens = complex::z1_modpn_generators(p, big_n, d)?;
    let mut witnesses = Vec::new();
    let mut cols = Vec::new();
    for g in &gens {
        let v = g.residues(h.basis(1), ring.modulus)?;
        witnesses.push(witness("cocycle", g, modpn::is_zero_vec(&b.mul_vec(&v))));
        cols.push(v);
    }
    let kernel = modpn::kernel_exponent(&b, &ring);
    let span = modpn::span_exponent(&cols, h.dim(1), &ring);
    let params = json!({ "p": p, "N": big_n, "d": d });
    Ok(TheoremReport::new(
        "z1_modpn",
        params,
        format!("|Z^1| = {p}^{kernel}"),
        format!("|Z^1| = {p}^{span}"),
        witnesses,
    ))
}

/// The comparison values of `Ext^i(a, S^d o a)` for `d = 1` and `d = p^l`.
pub fn franjou_pirashvili_reference(d: usize, i: usize) -> AbelianGroup {
    if d == 1 {
        return match i {
            0 => AbelianGroup::free(1),
            i if i % 2 == 0 => AbelianGroup::cyclic((i / 2) as u64),
            _ => AbelianGroup::zero(),
        };
    }
    match arith::prime_power(d as u64) {
        Some((p, _)) if i % (2 * d) == 1 => AbelianGroup::cyclic(p),
        _ => AbelianGroup::zero(),
    }
}

/// `Ext^1` from the complex agrees with the reference values.
pub fn verify_ext1_comparison(d: usize) -> Result<TheoremReport> {
    let h = ComplexHandle::new(d)?;
    let computed = homology_at(&h, 1)?;
    let expected = franjou_pirashvili_reference(d, 1);
    Ok(TheoremReport::new("ext1_comparison", json!({ "d": d }), expected.to_string(), computed.to_string(), vec![]))
}

/// Granville's congruence on every `0 <= r <= n <= n_max`.
pub fn verify_granville(p: u64, big_n: u32, n_max: u64) -> Result<TheoremReport> {
    let mut failures = Vec::new();
    let mut count = 0u64;
    for n in 0..=n_max {
        for r in 0..=n {
            count += 1;
            if !granville_check(p, big_n, n, r)? {
                failures.push(format!("C({n},{r})"));
            }
        }
    }
    let ws = failures.iter().take(10).map(|f| witness("congruence fails", f, false)).collect();
    let params = json!({ "p": p, "N": big_n, "n_max": n_max });
    Ok(TheoremReport::new("granville", params, format!("{count} congruences"), format!("{} congruences", count - failures.len() as u64), ws))
}

/// Legendre's formula, Kummer's carry count and direct division agree on `v_p C(n, r)`.
pub fn verify_kummer(p: u64, n_max: u64) -> Result<TheoremReport> {
    let mut bad = Vec::new();
    let mut count = 0u64;
    for n in 0..=n_max {
        for r in 0..=n {
            count += 1;
            let legendre = arith::binom_valuation(p, n, r);
            let carries = arith::kummer_carries(p, r, n - r);
            let direct = u64::from(arith::valuation_big(p, &binomial(n, r))?);
            if legendre != carries || legendre != direct {
                bad.push(format!("C({n},{r}): legendre {legendre}, carries {carries}, direct {direct}"));
            }
        }
    }
    let ws = bad.iter().take(10).map(|b| witness("mismatch", b, false)).collect();
    let params = json!({ "p": p, "n_max": n_max });
    Ok(TheoremReport::new("kummer", params, format!("{count} agree"), format!("{} agree", count - bad.len() as u64), ws))
}

/// `mu_p(d) = 1` iff `d = p^l` (else `0`); for `p` not dividing `d`,
/// `theta_p(d) = 1` iff `d = p^l + 1` (else `0`).
pub fn verify_mu_theta(p: u64, d_max: u64) -> Result<TheoremReport> {
    let mut bad = Vec::new();
    for d in 1..=d_max {
        let is_power = arith::in_b(p, d);
        let m = mu(p, d);
        if m != u64::from(is_power) {
            bad.push(format!("mu_{p}({d}) = {m}"));
        }
        let gcd = binomial_row_gcd(d);
        // the row gcd only sees the prime underlying d, which need not be p
        let expected_gcd = match arith::prime_power(d) {
            Some((q, _)) => BigInt::from(q),
            None if d == 1 => BigInt::zero(),
            None => BigInt::one(),
        };
        if gcd != expected_gcd {
            bad.push(format!("gcd row {d} = {gcd}"));
        }
        if d % p != 0 {
            let t = theta(p, d);
            let shifted = d > 1 && arith::in_b(p, d - 1);
            if t != u64::from(shifted) {
                bad.push(format!("theta_{p}({d}) = {t}"));
            }
        }
    }
    let ws = bad.iter().take(10).map(|b| witness("mismatch", b, false)).collect();
    let params = json!({ "p": p, "d_max": d_max });
    Ok(TheoremReport::new("mu_theta", params, "0 mismatches".into(), format!("{} mismatches", bad.len()), ws))
}

/// The degree-wise products for `Ext(a, (S^* a)^{(x)2})` in total degree 2..5.
pub fn expected_sd_tensor_square(d: usize) -> Option<GradedGroup> {
    let parse = |entries: &[(usize, &str)]| {
        let mut g = GradedGroup::new();
        for (k, s) in entries {
            g.insert(*k, s.parse().expect("valid group literal"));
        }
        g
    };
    Some(match d {
        2 => parse(&[(0, "Z")]),
        3 => parse(&[(1, "Z/2 + Z/2")]),
        4 => parse(&[(1, "Z/3 + Z/3 + Z/2"), (2, "Z/2 + Z/2 + Z/2")]),
        5 => parse(&[(1, "Z/2 + Z/2"), (2, "Z/3 + Z/3 + Z/2 + Z/2"), (3, "Z/2 + Z/2 + Z/2 + Z/2")]),
        _ => return None,
    })
}

pub fn verify_kunneth(c: usize, d: usize) -> Result<TheoremReport> {
    let computed = kunneth::ext_tensorpower_sd(c, d)?;
    let expected = if c == 2 { expected_sd_tensor_square(d) } else { None }
        .ok_or_else(|| Error::InvalidArgument(format!("no reference list for c = {c}, d = {d}")))?;
    Ok(TheoremReport::new("kunneth", json!({ "c": c, "d": d }), expected.to_string(), computed.to_string(), vec![]))
}

/// The Kunneth product of exterior complexes matches `Z^{C(d-1, c-1)}` in degree `d - c`.
pub fn verify_lambda(c: usize, d: usize) -> Result<TheoremReport> {
    let computed = kunneth::ext_tensorpower_lambda(c, d)?;
    let expected = kunneth::lambda_closed_form(c, d);
    let dims = kunneth::exterior_cross_effect_dims(d);
    let single = dims.iter().enumerate().all(|(k, &r)| r == usize::from(k + 1 == d));
    let ws = vec![witness("exterior complex is Z in degree d-1", format!("{dims:?}"), single)];
    Ok(TheoremReport::new("lambda", json!({ "c": c, "d": d }), expected.to_string(), computed.to_string(), ws))
}

/// All PROP relations hold for `E_d` and the section obstruction forces `lambda = -1/p`.
pub fn verify_hopf(d: usize, bound: usize) -> Result<TheoremReport> {
    let rel = hopf::check_all_relations(d, bound)?;
    let obs = hopf::section_obstruction(d)?;
    let mut ws = vec![witness(
        format!("{} relation instances", rel.checked),
        format!("{} failures", rel.failures.len()),
        rel.passed(),
    )];
    ws.extend(rel.failures.iter().take(10).map(|f| witness("relation fails", f, false)));
    let lambda = obs.lambda.map_or("no solution".to_string(), |l| l.to_string());
    ws.push(witness("section obstruction", format!("lambda = {lambda}"), obs.obstructs()));
    let expected = format!("lambda = {}", hopf::Ratio::new(-1, obs.p as i64));
    let computed = format!("lambda = {lambda}");
    let params = json!({ "d": d, "p": obs.p, "padding": bound });
    Ok(TheoremReport::new("hopf", params, expected, computed, ws))
}

/// `delta^{k+1} o delta^k = 0` in every degree.
pub fn verify_delta_squared(d: usize) -> Result<TheoremReport> {
    let h = ComplexHandle::new(d)?;
    let ws = (0..d).map(|k| witness(format!("delta^{} o delta^{k}", k + 1), "0", crate::homology::check_delta_squared(&h, k))).collect();
    Ok(TheoremReport::new("delta_squared", json!({ "d": d }), "0".into(), "0".into(), ws))
}

/// Number of elements of `H^k(AC(d) (x) Z/p^N)` computed over `Z/p^N`.
pub fn local_cardinality(p: u64, big_n: u32, d: usize, k: usize) -> Result<u64> {
    let ring = LocalRing::new(p, big_n)?;
    let h = ComplexHandle::new(d)?;
    local_homology(&h, ring, k)?
        .cardinality()
        .to_u64()
        .ok_or(Error::Overflow("cardinality"))
}
