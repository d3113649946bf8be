//! Exact sparse linear solving over the rationals.
//!
//! Rows are reduced incrementally into echelon form keyed by their leading
//! column. More equations than unknowns are fine; every equation is checked.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type SparseRow = BTreeMap<usize, BigRational>;

#[derive(Debug, Default)]
pub struct SparseSystem {
    ncols: usize,
    pivots: BTreeMap<usize, (SparseRow, BigRational)>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    /// Adds `row . x = rhs`. Fails as soon as the equations become inconsistent.
    pub fn push(&mut self, mut row: SparseRow, mut rhs: BigRational) -> Result<()> {
        row.retain(|_, v| !v.is_zero());
        loop {
            let hit = row
                .keys()
                .copied()
                .find(|c| self.pivots.contains_key(c));
            let Some(c) = hit else { break };
            let factor = row[&c].clone();
            let (prow, prhs) = &self.pivots[&c];
            for (k, v) in prow {
                let e = row.entry(*k).or_insert_with(BigRational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
            rhs -= &factor * prhs;
        }
        let Some((&lead, lv)) = row.iter().next() else {
            return if rhs.is_zero() {
                Ok(())
            } else {
                Err(Error::Inconsistent)
            };
        };
        let inv = BigRational::one() / lv.clone();
        for v in row.values_mut() {
            *v *= &inv;
        }
        rhs *= &inv;
        self.pivots.insert(lead, (row, rhs));
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The unique solution; an underdetermined system is an error.
    pub fn solve(&self) -> Result<Vec<BigRational>> {
        if self.pivots.len() != self.ncols {
            return Err(Error::Dimension(format!(
                "rank {} is less than the {} unknowns",
                self.pivots.len(),
                self.ncols
            )));
        }
        let mut x = vec![BigRational::zero(); self.ncols];
        for (&c, (row, rhs)) in self.pivots.iter().rev() {
            let mut acc = rhs.clone();
            for (&k, v) in row.range(c + 1..) {
                acc -= v * &x[k];
            }
            x[c] = acc;
        }
        Ok(x)
    }
}

pub fn int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Integer value of `r`, if it is one.
pub fn to_int(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}
