//! Flagged Jacobi-Trudi matrices and their minors.
//!
//! `A^b_{lambda,mu}` has entry `h_{lambda_i - mu_j}` in the first `b_i` variables.
//! Its full determinant is the flagged skew Schur polynomial of the shape
//! obtained by removing the staircase, `(lambda_i - n + i) / (mu_j - n + j)`;
//! [`flagged_skew_schur_det`] adds the staircase back so that it takes the
//! shape itself.

use std::collections::HashMap;

use serde_json::Value;

use crate::combinat::{Flag, Partition};
use crate::error::{Error, Result};
use crate::poly::{complete_homogeneous, Polynomial};
use crate::scalar::Coefficient;

pub type Matrix<C> = Vec<Vec<Polynomial<C>>>;

#[derive(Clone, Debug, PartialEq)]
pub struct JTMatrix<C> {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub flag: Flag,
    pub entries: Matrix<C>,
}

impl<C: Coefficient> JTMatrix<C> {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.entries[i - 1][j - 1]
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "lambda": self.lambda,
            "mu": self.mu,
            "flag": self.flag.bounds(),
            "entries": self.entries.iter()
                .map(|row| row.iter().map(|p| p.to_canonical()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn padded_to(v: &[u32], n: usize, what: &str) -> Result<Vec<u32>> {
    if v.len() > n {
        return Err(Error::Dimension(format!("{what} has {} parts, more than {n}", v.len())));
    }
    let mut out = v.to_vec();
    out.resize(n, 0);
    Ok(out)
}

/// `A^b_{lambda,mu}`: entry `(i, j)` is `h_{lambda_i - mu_j}(x_1..x_{b_i})`, in
/// `total_vars` variables. The size is the flag length; `lambda` and `mu` are
/// padded with zeros. Any nonnegative integer vectors are accepted.
pub fn flagged_jt_matrix<C: Coefficient>(lambda: &[u32], mu: &[u32], flag: &Flag, total_vars: usize) -> Result<JTMatrix<C>> {
    let n = flag.len();
    let lam = padded_to(lambda, n, "lambda")?;
    let mu = padded_to(mu, n, "mu")?;
    if flag.max_bound() as usize > total_vars {
        return Err(Error::VariableMismatch(flag.max_bound() as usize, total_vars));
    }
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| complete_homogeneous(lam[i] as i64 - mu[j] as i64, flag.bound(i) as usize, total_vars))
                .collect()
        })
        .collect();
    Ok(JTMatrix {
        lambda: lam,
        mu,
        flag: flag.clone(),
        entries,
    })
}

/// `Delta_{I,J}(M)`, with 1-based sorted row and column sets.
pub fn minor<C: Coefficient>(m: &[Vec<Polynomial<C>>], rows: &[usize], cols: &[usize]) -> Result<Polynomial<C>> {
    if rows.len() != cols.len() {
        return Err(Error::Dimension(format!("{} rows but {} columns", rows.len(), cols.len())));
    }
    let size = m.len();
    if rows.iter().chain(cols).any(|&x| x == 0 || x > size) || m.iter().any(|r| r.len() != size) {
        return Err(Error::Dimension(format!("minor indices must lie in 1..={size} of a square matrix")));
    }
    let nvars = m.first().and_then(|r| r.first()).map_or(0, Polynomial::nvars);
    let sub: Vec<Vec<&Polynomial<C>>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| &m[i - 1][j - 1]).collect())
        .collect();
    Ok(determinant(&sub, nvars))
}

/// Laplace expansion down the rows, memoised on the set of unused columns.
fn determinant<C: Coefficient>(m: &[Vec<&Polynomial<C>>], nvars: usize) -> Polynomial<C> {
    let k = m.len();
    assert!(k < 32, "determinant too large");
    // memo[mask]: determinant of the last popcount(mask) rows on columns `mask`
    let mut memo: HashMap<u32, Polynomial<C>> = HashMap::new();
    memo.insert(0, Polynomial::one(nvars));
    for r in (0..k).rev() {
        let used = k - r;
        let mut next = HashMap::new();
        for mask in (0u32..1 << k).filter(|m| m.count_ones() as usize == used) {
            let mut acc = Polynomial::zero(nvars);
            let mut sign_pos = 0;
            for c in 0..k {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let rest = &memo[&(mask & !(1 << c))];
                if !m[r][c].is_zero() && !rest.is_zero() {
                    let term = m[r][c].checked_mul(rest).expect("same ring");
                    acc = if sign_pos % 2 == 0 {
                        acc.checked_add(&term)
                    } else {
                        acc.checked_sub(&term)
                    }
                    .expect("same ring");
                }
                sign_pos += 1;
            }
            next.insert(mask, acc);
        }
        memo = next;
    }
    memo.remove(&((1u32 << k) - 1)).unwrap_or_else(|| Polynomial::one(nvars))
}

pub fn det<C: Coefficient>(m: &[Vec<Polynomial<C>>]) -> Result<Polynomial<C>> {
    let all: Vec<usize> = (1..=m.len()).collect();
    minor(m, &all, &all)
}

/// `s^b_{lambda/mu}` as the determinant of `A^b` at the staircase-shifted
/// partitions `lambda_i + n - i`, `mu_j + n - j`, with `n` the flag length.
pub fn flagged_skew_schur_det<C: Coefficient>(
    lambda: &Partition,
    mu: &Partition,
    flag: &Flag,
    total_vars: usize,
) -> Result<Polynomial<C>> {
    let n = flag.len();
    if lambda.len() > n || !lambda.contains(mu) {
        return Err(Error::BadSkew {
            outer: lambda.parts().to_vec(),
            inner: mu.parts().to_vec(),
        });
    }
    let shift = |p: &Partition| -> Vec<u32> { (0..n).map(|i| p.part(i) + (n - 1 - i) as u32).collect() };
    det(&flagged_jt_matrix(&shift(lambda), &shift(mu), flag, total_vars)?.entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Polynomial<BigInt>;

    #[test]
    fn symbolic_two_by_two() {
        let v = |i| P::var(i, 4);
        let m = vec![vec![v(1), v(2)], vec![v(3), v(4)]];
        assert_eq!(det(&m).unwrap(), P::parse("x1*x4 - x2*x3", 4).unwrap());
        assert_eq!(minor(&m, &[2], &[1]).unwrap(), v(3));
        assert!(minor(&m, &[1, 2], &[1]).is_err());
        let empty: Vec<usize> = Vec::new();
        assert_eq!(minor(&m, &empty, &empty).unwrap(), P::one(4));
    }

    #[test]
    fn staircase_shift_gives_schur() {
        let lam = Partition::new(vec![2, 1]).unwrap();
        let s: P = flagged_skew_schur_det(&lam, &Partition::empty(), &Flag::constant(3, 2), 3).unwrap();
        let expected = P::parse(
            "x1^2*x2 + x1^2*x3 + x1*x2^2 + 2*x1*x2*x3 + x1*x3^2 + x2^2*x3 + x2*x3^2",
            3,
        )
        .unwrap();
        assert_eq!(s, expected);
        let one: P = flagged_skew_schur_det(&lam, &lam, &Flag::constant(3, 2), 3).unwrap();
        assert_eq!(one, P::one(3));
    }
}
