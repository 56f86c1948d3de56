use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Basis, BasisElement};
use crate::{Error, Result};

/// A finite combination of basis elements of `AC^k(d)`, with integer
/// coefficients or, when `modulus` is set, coefficients in `Z/modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub d: usize,
    pub k: usize,
    pub modulus: Option<u64>,
    terms: BTreeMap<BasisElement, BigInt>,
}

impl Cochain {
    pub fn zero(d: usize, k: usize) -> Self {
        Cochain { d, k, modulus: None, terms: BTreeMap::new() }
    }

    pub fn basis(e: &BasisElement) -> Self {
        let mut c = Cochain::zero(e.d(), e.degree());
        c.add_term(e.clone(), BigInt::from(1));
        c
    }

    pub fn from_terms(d: usize, k: usize, terms: impl IntoIterator<Item = (BasisElement, BigInt)>) -> Self {
        let mut c = Cochain::zero(d, k);
        for (e, v) in terms {
            c.add_term(e, v);
        }
        c
    }

    fn normalize(&self, v: BigInt) -> BigInt {
        match self.modulus {
            Some(m) => {
                let m = BigInt::from(m);
                ((v % &m) + &m) % &m
            }
            None => v,
        }
    }

    pub fn add_term(&mut self, e: BasisElement, v: BigInt) {
        assert_eq!((e.d(), e.degree()), (self.d, self.k), "term {e} has the wrong degree");
        let cur = self.terms.remove(&e).unwrap_or_default();
        let new = self.normalize(cur + v);
        if !new.is_zero() {
            self.terms.insert(e, new);
        }
    }

    pub fn coefficient(&self, e: &BasisElement) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &BigInt) -> Cochain {
        let mut out = Cochain { terms: BTreeMap::new(), ..self.clone() };
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * s);
        }
        out
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.d, self.k), (other.d, other.k), "adding cochains of different degrees");
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    /// Reduction modulo `m`.
    pub fn reduce(&self, m: u64) -> Cochain {
        let mut out = Cochain { d: self.d, k: self.k, modulus: Some(m), terms: BTreeMap::new() };
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }

    pub fn differential(&self) -> Cochain {
        let mut out = Cochain { d: self.d, k: self.k + 1, modulus: self.modulus, terms: BTreeMap::new() };
        for (e, v) in &self.terms {
            for (t, c) in e.differential() {
                out.add_term(t, c * v);
            }
        }
        out
    }

    pub fn to_vector(&self, basis: &Basis) -> Result<Vec<BigInt>> {
        if (basis.d, basis.k) != (self.d, self.k) {
            return Err(Error::InvalidArgument("basis of the wrong degree".into()));
        }
        let mut v = vec![BigInt::zero(); basis.len()];
        for (e, c) in &self.terms {
            let i = basis.index_of(e).ok_or_else(|| Error::MalformedBasis(e.marks().to_vec(), self.d))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(basis: &Basis, v: &[BigInt]) -> Cochain {
        let mut c = Cochain::zero(basis.d, basis.k);
        for (e, x) in basis.elements().iter().zip(v) {
            c.add_term(e.clone(), x.clone());
        }
        c
    }

    /// Coefficient vector in `[0, m)`.
    pub fn residues(&self, basis: &Basis, m: u64) -> Result<Vec<u64>> {
        let big = BigInt::from(m);
        Ok(self
            .to_vector(basis)?
            .into_iter()
            .map(|x| (((x % &big) + &big) % &big).to_u64().expect("residue fits"))
            .collect())
    }
}

impl fmt::Display for Cochain {
    /// `2*<1> + 3*<2> - 1*<3>`; the zero cochain prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, v)) in self.terms.iter().enumerate() {
            match (i, v.is_negative()) {
                (0, _) => write!(f, "{v}*{e}")?,
                (_, true) => write!(f, " - {}*{e}", v.abs())?,
                (_, false) => write!(f, " + {v}*{e}")?,
            }
        }
        if let Some(m) = self.modulus {
            write!(f, " (mod {m})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let d = 4;
        let mut c = Cochain::zero(d, 1);
        for (n, v) in [(1, 2), (2, 3), (3, 2)] {
            c.add_term(BasisElement::new(d, vec![n]).unwrap(), BigInt::from(v));
        }
        assert_eq!(c.to_string(), "2*<1> + 3*<2> + 2*<3>");
        assert_eq!(c.reduce(2).to_string(), "1*<2> (mod 2)");
        assert_eq!(c.sub(&c).to_string(), "0");
    }

    #[test]
    fn vector_roundtrip() {
        let basis = Basis::new(5, 2);
        let v: Vec<BigInt> = (0..basis.len() as i64).map(|i| BigInt::from(i - 2)).collect();
        let c = Cochain::from_vector(&basis, &v);
        assert_eq!(c.to_vector(&basis).unwrap(), v);
    }
}
