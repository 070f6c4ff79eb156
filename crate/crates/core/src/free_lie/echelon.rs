//! Fraction-free row echelon form over the integers.
//!
//! Rows are sparse, sorted by column, and kept primitive (content 1, leading
//! coefficient positive). Eliminating a pivot multiplies the incoming row by
//! the pivot and subtracts a multiple of the pivot row, then divides out the
//! content, so every intermediate stays integral and exact.

use std::collections::HashMap;

use super::scalar::{Overflow, Scalar};

pub type SparseRow<T> = Vec<(u32, T)>;

#[derive(Debug, Clone)]
pub struct Echelon<T> {
    rows: Vec<SparseRow<T>>,
    pivots: HashMap<u32, usize>,
}

impl<T: Scalar> Default for Echelon<T> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivots: HashMap::new() }
    }
}

impl<T: Scalar> Echelon<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<T>] {
        &self.rows
    }

    /// Reduces `row` against the stored pivots. The result is zero iff `row`
    /// lies in the span of the stored rows.
    pub fn reduce(&self, mut row: SparseRow<T>) -> Result<SparseRow<T>, Overflow> {
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            let Some(&p) = self.pivots.get(&col) else {
                k += 1;
                continue;
            };
            let pivot_row = &self.rows[p];
            let lead = &pivot_row[0].1;
            let factor = row[k].1.clone();
            // row <- lead * row - factor * pivot_row; entries before k are untouched
            // because pivot_row starts at col.
            let mut merged: SparseRow<T> = Vec::with_capacity(row.len() + pivot_row.len());
            merged.extend(row[..k].iter().map(|(c, v)| Ok((*c, v.mul(lead)?))).collect::<Result<Vec<_>, Overflow>>()?);
            let (mut a, mut b) = (k, 0);
            while a < row.len() || b < pivot_row.len() {
                let ca = row.get(a).map(|e| e.0);
                let cb = pivot_row.get(b).map(|e| e.0);
                let (col, value) = match (ca, cb) {
                    (Some(x), Some(y)) if x == y => {
                        let v = row[a].1.mul(lead)?.sub(&pivot_row[b].1.mul(&factor)?)?;
                        a += 1;
                        b += 1;
                        (x, v)
                    }
                    (Some(x), Some(y)) if x < y => {
                        a += 1;
                        (x, row[a - 1].1.mul(lead)?)
                    }
                    (Some(x), None) => {
                        a += 1;
                        (x, row[a - 1].1.mul(lead)?)
                    }
                    (_, Some(y)) => {
                        b += 1;
                        (y, pivot_row[b - 1].1.mul(&factor)?.neg()?)
                    }
                    (None, None) => unreachable!(),
                };
                if !value.is_zero() {
                    merged.push((col, value));
                }
            }
            row = merged;
            make_primitive(&mut row)?;
            // everything before position k keeps its column; the pivot column vanished
        }
        Ok(row)
    }

    /// Adds `row` to the span. Returns `true` when it was independent.
    pub fn insert(&mut self, row: SparseRow<T>) -> Result<bool, Overflow> {
        let mut reduced = self.reduce(row)?;
        if reduced.is_empty() {
            return Ok(false);
        }
        make_primitive(&mut reduced)?;
        if reduced[0].1.is_negative() {
            for entry in &mut reduced {
                entry.1 = entry.1.neg()?;
            }
        }
        self.pivots.insert(reduced[0].0, self.rows.len());
        self.rows.push(reduced);
        Ok(true)
    }

    pub fn contains(&self, row: SparseRow<T>) -> Result<bool, Overflow> {
        Ok(self.reduce(row)?.is_empty())
    }
}

fn make_primitive<T: Scalar>(row: &mut SparseRow<T>) -> Result<(), Overflow> {
    let mut g = T::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v)?;
        if g == T::from_i64(1) {
            return Ok(());
        }
    }
    if g.is_zero() {
        return Ok(());
    }
    for entry in row.iter_mut() {
        entry.1 = entry.1.div_exact(&g);
    }
    Ok(())
}
