use std::collections::BTreeMap;

use crate::{Error, Result};

/// Sparse `i64` matrix stored by columns; arithmetic is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        IntMat { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, 1)]).collect() }
    }

    /// Columns must be sorted by row and free of zeros.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().flatten().all(|&(i, v)| i < rows && v != 0));
        IntMat { rows, cols: columns.len(), columns }
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.columns[j]
            .binary_search_by_key(&i, |e| e.0)
            .map_or(0, |k| self.columns[j][k].1)
    }

    /// `(row, col, value)` for the nonzero entries, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |&(i, v)| (i, j, v)))
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument("dimension mismatch in product".into()));
        }
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    let t = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                    let slot = acc.entry(i).or_insert(0);
                    *slot = slot.checked_add(t).ok_or(Error::Overflow("matrix product"))?;
                }
            }
            columns.push(acc.into_iter().filter(|e| e.1 != 0).collect());
        }
        Ok(IntMat { rows: self.rows, cols: other.cols, columns })
    }

    fn combine(&self, other: &IntMat, sign: i64) -> Result<IntMat> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidArgument("dimension mismatch in sum".into()));
        }
        let mut columns = Vec::with_capacity(self.cols);
        for (a, b) in self.columns.iter().zip(&other.columns) {
            let mut acc: BTreeMap<usize, i64> = a.iter().copied().collect();
            for &(i, v) in b {
                let slot = acc.entry(i).or_insert(0);
                *slot = slot.checked_add(sign * v).ok_or(Error::Overflow("matrix sum"))?;
            }
            columns.push(acc.into_iter().filter(|e| e.1 != 0).collect());
        }
        Ok(IntMat { rows: self.rows, cols: self.cols, columns })
    }

    pub fn add(&self, other: &IntMat) -> Result<IntMat> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &IntMat) -> Result<IntMat> {
        self.combine(other, -1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v;
        }
        out
    }
}
