//! Smith normal form over `Z` by sparse Euclidean elimination.
//!
//! Elimination first runs on checked `i128` arithmetic and restarts on
//! `BigInt` if any intermediate value overflows, so results are always exact.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::SparseIntMatrix;

type SparseVec<T> = Vec<(usize, T)>;

trait Scalar: Clone + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn s_zero() -> Self;
    fn s_one() -> Self;
    fn s_is_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn is_unit(&self) -> bool;
    /// Quotient rounded to the nearest integer, so the remainder is at most half the divisor.
    fn round_div(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
}

impl Scalar for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn s_zero() -> Self {
        0
    }
    fn s_one() -> Self {
        1
    }
    fn s_is_zero(&self) -> bool {
        *self == 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn round_div(&self, d: &Self) -> Option<Self> {
        let q = self.checked_div(*d)?;
        let r = self - q * d;
        if r.unsigned_abs().checked_mul(2)? > d.unsigned_abs() {
            if (r < 0) == (*d < 0) {
                q.checked_add(1)
            } else {
                q.checked_sub(1)
            }
        } else {
            Some(q)
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
}

impl Scalar for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn s_zero() -> Self {
        Zero::zero()
    }
    fn s_one() -> Self {
        One::one()
    }
    fn s_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn round_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        if (r.magnitude() * 2u32) > *d.magnitude() {
            if r.is_negative() == d.is_negative() {
                Some(q + 1)
            } else {
                Some(q - 1)
            }
        } else {
            Some(q)
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
}

/// `target - q * src`, both sorted by index.
fn sub_scaled<T: Scalar>(target: &[(usize, T)], q: &T, src: &[(usize, T)]) -> Option<SparseVec<T>> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let ti = target.get(i).map(|e| e.0);
        let sj = src.get(j).map(|e| e.0);
        match (ti, sj) {
            (Some(a), Some(b)) if a == b => {
                let v = target[i].1.sub_mul(q, &src[j].1)?;
                if !v.s_is_zero() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(target[i].clone());
                i += 1;
            }
            (Some(a), None) => {
                out.push((a, target[i].1.clone()));
                i += 1;
            }
            (_, Some(b)) => {
                let v = T::s_zero().sub_mul(q, &src[j].1)?;
                out.push((b, v));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some(out)
}

fn lookup<T>(v: &[(usize, T)], idx: usize) -> Option<&T> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

fn unit_vectors<T: Scalar>(n: usize) -> Vec<SparseVec<T>> {
    (0..n).map(|i| vec![(i, T::s_one())]).collect()
}

struct Eliminator<T> {
    rows: Vec<SparseVec<T>>,
    col_rows: Vec<BTreeSet<usize>>,
    active: Vec<bool>,
    left: Option<Vec<SparseVec<T>>>,
    right: Option<Vec<SparseVec<T>>>,
    pivots: Vec<(usize, usize, T)>,
}

impl<T: Scalar> Eliminator<T> {
    fn new(m: &SparseIntMatrix, keep: bool) -> Option<Self> {
        let mut rows: Vec<SparseVec<T>> = vec![Vec::new(); m.rows];
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        for (i, j, v) in m.triplets() {
            rows[i].push((j, T::from_big(v)?));
            col_rows[j].insert(i);
        }
        Some(Eliminator {
            rows,
            col_rows,
            active: vec![true; m.rows],
            left: keep.then(|| unit_vectors(m.rows)),
            right: keep.then(|| unit_vectors(m.cols)),
            pivots: Vec::new(),
        })
    }

    fn select_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &T, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !self.active[i] || row.is_empty() {
                continue;
            }
            for (j, v) in row {
                let cost = (row.len() - 1) * (self.col_rows[*j].len() - 1);
                let better = match &best {
                    None => true,
                    Some((_, _, bv, bc)) => match v.cmp_abs(bv) {
                        Ordering::Less => true,
                        Ordering::Equal => cost < *bc,
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((i, *j, v, cost));
                    if v.is_unit() && cost == 0 {
                        return Some((i, *j));
                    }
                }
            }
        }
        best.map(|(i, j, _, _)| (i, j))
    }

    /// `row[i] -= q * row[r]`, mirrored on the left transform.
    fn row_sub(&mut self, i: usize, q: &T, r: usize) -> Option<()> {
        let new = sub_scaled(&self.rows[i], q, &self.rows[r])?;
        for (j, _) in &self.rows[r] {
            let before = lookup(&self.rows[i], *j).is_some();
            let after = lookup(&new, *j).is_some();
            if before && !after {
                self.col_rows[*j].remove(&i);
            } else if after && !before {
                self.col_rows[*j].insert(i);
            }
        }
        self.rows[i] = new;
        if let Some(left) = &mut self.left {
            left[i] = sub_scaled(&left[i], q, &left[r])?;
        }
        Some(())
    }

    fn run(&mut self) -> Option<()> {
        while let Some((mut r, mut c)) = self.select_pivot() {
            loop {
                let a = lookup(&self.rows[r], c).expect("pivot present").clone();
                let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&i| i != r).collect();
                let mut best: Option<(usize, T)> = None;
                for i in others {
                    let b = lookup(&self.rows[i], c).expect("column index consistent").clone();
                    let q = b.round_div(&a)?;
                    if !q.s_is_zero() {
                        self.row_sub(i, &q, r)?;
                    }
                    if let Some(rem) = lookup(&self.rows[i], c) {
                        if best.as_ref().map_or(true, |(_, bv)| rem.cmp_abs(bv) == Ordering::Less) {
                            best = Some((i, rem.clone()));
                        }
                    }
                }
                if let Some((i, _)) = best {
                    r = i;
                    continue;
                }

                // Column c now holds only the pivot, so a column operation
                // against it only touches row r.
                let mut new_row = Vec::with_capacity(self.rows[r].len());
                let mut best_col: Option<(usize, T)> = None;
                let entries = std::mem::take(&mut self.rows[r]);
                for (j, b) in entries {
                    if j == c {
                        new_row.push((j, b));
                        continue;
                    }
                    let q = b.round_div(&a)?;
                    let rem = b.sub_mul(&q, &a)?;
                    if !q.s_is_zero() {
                        if let Some(right) = &mut self.right {
                            right[j] = sub_scaled(&right[j], &q, &right[c])?;
                        }
                    }
                    if rem.s_is_zero() {
                        self.col_rows[j].remove(&r);
                    } else {
                        if best_col.as_ref().map_or(true, |(_, bv)| rem.cmp_abs(bv) == Ordering::Less) {
                            best_col = Some((j, rem.clone()));
                        }
                        new_row.push((j, rem));
                    }
                }
                self.rows[r] = new_row;
                if let Some((j, _)) = best_col {
                    c = j;
                    continue;
                }
                break;
            }
            let a = lookup(&self.rows[r], c).expect("pivot present").clone();
            self.active[r] = false;
            self.col_rows[c].clear();
            self.pivots.push((r, c, a));
        }
        Some(())
    }
}

/// `U * A * V = D` with `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithTransforms {
    pub left: SparseIntMatrix,
    pub right: SparseIntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub transforms: Option<SmithTransforms>,
}

impl SmithForm {
    pub fn diagonal_matrix(&self) -> SparseIntMatrix {
        let mut d = SparseIntMatrix::zeros(self.rows, self.cols);
        for (i, v) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|v| !v.is_one()).cloned().collect()
    }
}

fn lincomb(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> SparseVec<BigInt> {
    let mut acc = std::collections::BTreeMap::<usize, BigInt>::new();
    for (k, v) in x {
        *acc.entry(*k).or_default() += a * v;
    }
    for (k, v) in y {
        *acc.entry(*k).or_default() += b * v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Turns a list of nonzero diagonal entries into a positive divisor chain.
pub fn divisor_chain(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    for v in diag.iter_mut() {
        *v = v.abs();
    }
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = &diag[i] / &g * &diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag
}

fn finalize<T: Scalar>(m: &SparseIntMatrix, e: Eliminator<T>) -> SmithForm {
    let rank = e.pivots.len();
    let mut diag: Vec<BigInt> = e.pivots.iter().map(|p| p.2.to_big()).collect();
    let transforms = match (e.left, e.right) {
        (Some(left), Some(right)) => {
            let conv = |v: &SparseVec<T>| -> SparseVec<BigInt> { v.iter().map(|(k, x)| (*k, x.to_big())).collect() };
            let pivot_rows: BTreeSet<usize> = e.pivots.iter().map(|p| p.0).collect();
            let pivot_cols: BTreeSet<usize> = e.pivots.iter().map(|p| p.1).collect();
            let row_order: Vec<usize> = e
                .pivots
                .iter()
                .map(|p| p.0)
                .chain((0..m.rows).filter(|i| !pivot_rows.contains(i)))
                .collect();
            let col_order: Vec<usize> = e
                .pivots
                .iter()
                .map(|p| p.1)
                .chain((0..m.cols).filter(|j| !pivot_cols.contains(j)))
                .collect();
            let mut u: Vec<SparseVec<BigInt>> = row_order.iter().map(|&i| conv(&left[i])).collect();
            let mut v: Vec<SparseVec<BigInt>> = col_order.iter().map(|&j| conv(&right[j])).collect();
            for i in 0..rank {
                if diag[i].is_negative() {
                    diag[i] = -&diag[i];
                    for entry in u[i].iter_mut() {
                        entry.1 = -&entry.1;
                    }
                }
            }
            for i in 0..rank {
                for j in i + 1..rank {
                    if (&diag[j] % &diag[i]).is_zero() {
                        continue;
                    }
                    let (a, b) = (diag[i].clone(), diag[j].clone());
                    let eg = a.extended_gcd(&b);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let (bg, ag) = (&b / &g, &a / &g);
                    let ui = lincomb(&s, &u[i], &t, &u[j]);
                    let uj = lincomb(&-&bg, &u[i], &ag, &u[j]);
                    u[i] = ui;
                    u[j] = uj;
                    let one = BigInt::one();
                    let vi = lincomb(&one, &v[i], &one, &v[j]);
                    let vj = lincomb(&-(&t * &bg), &v[i], &(&s * &ag), &v[j]);
                    v[i] = vi;
                    v[j] = vj;
                    diag[i] = g;
                    diag[j] = &a * &bg;
                }
            }
            let mut left_m = SparseIntMatrix::zeros(m.rows, m.rows);
            for (i, row) in u.into_iter().enumerate() {
                for (k, x) in row {
                    left_m.set(i, k, x);
                }
            }
            let mut right_m = SparseIntMatrix::zeros(m.cols, m.cols);
            for (j, col) in v.into_iter().enumerate() {
                for (k, x) in col {
                    right_m.set(k, j, x);
                }
            }
            Some(SmithTransforms { left: left_m, right: right_m })
        }
        _ => {
            diag = divisor_chain(diag);
            None
        }
    };
    SmithForm { rows: m.rows, cols: m.cols, invariant_factors: diag, rank, transforms }
}

pub fn smith_normal_form(m: &SparseIntMatrix, keep_transforms: bool) -> SmithForm {
    if let Some(mut e) = Eliminator::<i128>::new(m, keep_transforms) {
        if e.run().is_some() {
            return finalize(m, e);
        }
    }
    let mut e = Eliminator::<BigInt>::new(m, keep_transforms).expect("BigInt conversion is total");
    e.run().expect("BigInt elimination cannot overflow");
    finalize(m, e)
}

/// Solves `A x = b` over `Z` through the Smith transforms; `None` if no integer solution exists.
pub fn solve_integer_system(a: &SparseIntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows, "right-hand side has wrong length");
    let snf = smith_normal_form(a, true);
    let t = snf.transforms.as_ref().expect("transforms requested");
    let ub = t.left.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, c) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = c.div_rem(&snf.invariant_factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(t.right.mul_vec(&y))
}

/// Order of the class of `z` in `Z^n / im(A)`: `None` if infinite.
///
/// Uses `|T(coker A)| / |T(coker [A | z])|`, which needs only invariant factors.
pub fn order_in_cokernel(a: &SparseIntMatrix, z: &[BigInt]) -> Option<BigInt> {
    let base = smith_normal_form(a, false);
    let aug = smith_normal_form(&a.with_columns(&[z.to_vec()]), false);
    if aug.rank > base.rank {
        return None;
    }
    let prod = |s: &SmithForm| s.invariant_factors.iter().fold(BigInt::one(), |acc, v| acc * v);
    Some(prod(&base) / prod(&aug))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &SparseIntMatrix) -> SmithForm {
        let s = smith_normal_form(m, true);
        let t = s.transforms.as_ref().unwrap();
        assert_eq!(t.left.mul(m).mul(&t.right), s.diagonal_matrix());
        for w in s.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn small_example() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = check(&m);
        let f: Vec<i64> = s.invariant_factors.iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(f, vec![2, 6, 12]);
    }

    #[test]
    fn coprime_diagonal_is_merged() {
        let m = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        let s = check(&m);
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(smith_normal_form(&SparseIntMatrix::zeros(3, 2), true).rank, 0);
        assert_eq!(smith_normal_form(&SparseIntMatrix::zeros(0, 4), false).rank, 0);
    }

    #[test]
    fn huge_entries_fall_back_to_bigint() {
        let big = 1i64 << 62;
        let m = SparseIntMatrix::from_dense(&[vec![big, big - 1], vec![big - 3, big]]);
        check(&m);
    }

    #[test]
    fn solve_and_order() {
        let a = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 4], vec![0, 0]]);
        let b = vec![BigInt::from(4), BigInt::from(8), BigInt::zero()];
        let x = solve_integer_system(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve_integer_system(&a, &[BigInt::from(1), BigInt::zero(), BigInt::zero()]).is_none());
        let z = vec![BigInt::from(1), BigInt::from(2), BigInt::zero()];
        assert_eq!(order_in_cokernel(&a, &z), Some(BigInt::from(2)));
        let w = vec![BigInt::zero(), BigInt::zero(), BigInt::from(1)];
        assert_eq!(order_in_cokernel(&a, &w), None);
    }
}
