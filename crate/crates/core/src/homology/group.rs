use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// A finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_s` with
/// `1 < t_1 | t_2 | ... | t_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, [BigUint::from(order)])
    }

    /// Builds the group from a free rank and any list of cyclic orders; orders
    /// equal to one are dropped and `0` means a free summand.
    pub fn new(rank: usize, orders: impl IntoIterator<Item = BigUint>) -> Self {
        let mut rank = rank;
        let mut list: Vec<BigInt> = Vec::new();
        for o in orders {
            if o.is_zero() {
                rank += 1;
            } else if !o.is_one() {
                list.push(o.into());
            }
        }
        let chain = super::snf::divisor_chain(list);
        let torsion = chain
            .into_iter()
            .filter(|v| !v.is_one())
            .map(|v| v.to_biguint().expect("positive"))
            .collect();
        AbelianGroup { rank, torsion }
    }

    pub fn from_orders(rank: usize, orders: &[u64]) -> Self {
        Self::new(rank, orders.iter().map(|&o| BigUint::from(o)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Torsion as a divisor chain.
    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<BigUint> {
        self.is_finite().then(|| self.torsion.iter().fold(BigUint::one(), |a, t| a * t))
    }

    /// Torsion split into prime powers, ascending.
    pub fn prime_power_torsion(&self) -> Vec<BigUint> {
        let mut out: Vec<BigUint> = self.torsion.iter().flat_map(prime_powers_of).collect();
        out.sort();
        out
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::new(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).cloned())
    }

    pub fn tensor(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = Vec::new();
        for a in &self.torsion {
            orders.extend(std::iter::repeat(a.clone()).take(other.rank));
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        for b in &other.torsion {
            orders.extend(std::iter::repeat(b.clone()).take(self.rank));
        }
        AbelianGroup::new(self.rank * other.rank, orders)
    }

    pub fn tor(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders = self.torsion.iter().flat_map(|a| other.torsion.iter().map(move |b| a.gcd(b)));
        AbelianGroup::new(0, orders.collect::<Vec<_>>())
    }

    /// Rendering with torsion as a divisor chain, e.g. `Z/10`.
    pub fn chain_string(&self) -> String {
        render(self.rank, &self.torsion)
    }

    /// Rendering with torsion in prime-power form, e.g. `Z/2 + Z/5`.
    pub fn canonical_string(&self) -> String {
        render(self.rank, &self.prime_power_torsion())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let torsion: Vec<serde_json::Value> = self
            .prime_power_torsion()
            .iter()
            .map(|t| match t.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(t.to_string()),
            })
            .collect();
        serde_json::json!({ "rank": self.rank, "torsion": torsion })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<AbelianGroup> {
        let bad = || Error::InvalidArgument(format!("not a group: {v}"));
        let rank = v.get("rank").and_then(|r| r.as_u64()).ok_or_else(bad)? as usize;
        let mut orders = Vec::new();
        for t in v.get("torsion").and_then(|t| t.as_array()).ok_or_else(bad)? {
            let o = match t {
                serde_json::Value::Number(n) => BigUint::from(n.as_u64().ok_or_else(bad)?),
                serde_json::Value::String(s) => s.parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            };
            orders.push(o);
        }
        Ok(AbelianGroup::new(rank, orders))
    }
}

fn render(rank: usize, torsion: &[BigUint]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn prime_powers_of(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut q = 2u64;
    while rest > BigUint::one() {
        if BigUint::from(q) * BigUint::from(q) > rest {
            out.push(rest);
            break;
        }
        let bq = BigUint::from(q);
        let mut pp = BigUint::one();
        while (&rest % &bq).is_zero() {
            rest /= &bq;
            pp *= &bq;
        }
        if !pp.is_one() {
            out.push(pp);
        }
        q += 1;
    }
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Parses `0`, `Z`, `Z^r`, `Z/n` and `+`-separated sums of these.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse group {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(AbelianGroup::zero());
        }
        let mut rank = 0;
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(n) = part.strip_prefix("Z/") {
                orders.push(n.parse::<BigUint>().map_err(|_| bad())?);
            } else if part != "0" {
                return Err(bad());
            }
        }
        Ok(AbelianGroup::new(rank, orders))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Degree-indexed abelian groups; absent degrees are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedGroup(pub BTreeMap<usize, AbelianGroup>);

impl GradedGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(degree: usize, g: AbelianGroup) -> Self {
        let mut out = Self::new();
        out.insert(degree, g);
        out
    }

    pub fn get(&self, degree: usize) -> AbelianGroup {
        self.0.get(&degree).cloned().unwrap_or_default()
    }

    /// Inserts a group, dropping zero groups so equality is structural.
    pub fn insert(&mut self, degree: usize, g: AbelianGroup) {
        if g.is_zero() {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, g);
        }
    }

    pub fn add_at(&mut self, degree: usize, g: &AbelianGroup) {
        let cur = self.get(degree);
        self.insert(degree, cur.direct_sum(g));
    }

    pub fn direct_sum(&self, other: &GradedGroup) -> GradedGroup {
        let mut out = self.clone();
        for (k, g) in &other.0 {
            out.add_at(*k, g);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.0.iter().map(|(k, g)| (k.to_string(), g.to_json())).collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GradedGroup> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidArgument(format!("not a graded group: {v}")))?;
        let mut out = GradedGroup::new();
        for (k, g) in obj {
            let deg = k
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad degree {k:?}")))?;
            out.insert(deg, AbelianGroup::from_json(g)?);
        }
        Ok(out)
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, g)| format!("{k}: {g}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
