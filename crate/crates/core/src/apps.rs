//! Key expansions of Temperley-Lieb immanants of flagged Jacobi-Trudi matrices,
//! of products of flagged skew Schur polynomials, and of log-concavity differences.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::combinat::{Flag, Partition};
use crate::crystal::TableauCrystal;
use crate::demazure::{decompose, ComponentKey};
use crate::error::{Error, Result};
use crate::jt::{flagged_jt_matrix, minor, JTMatrix};
use crate::keys::{key_expand, KeyExpansion};
use crate::tableau::{flagged_schur, FlaggedSet, Shape, SkewShape, Tableau};
use crate::tl::{theta_set, tl_immanant, TLDiagram};
use crate::{Int, IntPoly};

/// `key_expand(Imm_tau(A^b_{lambda,mu}))`. The matrix size is `tau`'s strand count.
pub fn immanant_key_expansion(
    lambda: &Partition,
    mu: &Partition,
    flag: &Flag,
    tau: &TLDiagram,
    total_vars: usize,
) -> Result<KeyExpansion> {
    let n = tau.n();
    if flag.len() != n || lambda.len() > n || mu.len() > n {
        return Err(Error::Dimension(format!(
            "a {n}-strand diagram needs lambda, mu and a flag with {n} entries"
        )));
    }
    let a: JTMatrix<Int> = flagged_jt_matrix(lambda.parts(), mu.parts(), flag, total_vars)?;
    key_expand(&tl_immanant(tau, &a.entries)?)
}

/// Two skew shapes padded to a common number of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPair {
    pub first: SkewShape,
    pub second: SkewShape,
}

/// The product theorem's conditions on the outer shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    /// `lambda_i != nu_i` for every row.
    pub distinct_rows: bool,
    /// `lambda_i >= nu_{i+1}` and `nu_i >= lambda_{i+1}`.
    pub interlacing: bool,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.distinct_rows && self.interlacing
    }

    pub fn to_json(&self) -> Value {
        json!({ "distinct_rows": self.distinct_rows, "interlacing": self.interlacing })
    }
}

impl SkewPair {
    pub fn new(first: SkewShape, second: SkewShape) -> Self {
        SkewPair { first, second }
    }

    pub fn straight(lambda: Partition, nu: Partition) -> Self {
        SkewPair::new(SkewShape::straight(lambda), SkewShape::straight(nu))
    }

    pub fn rows(&self) -> usize {
        self.first.rows().max(self.second.rows())
    }

    pub fn hypotheses(&self) -> Hypotheses {
        let n = self.rows();
        let (l, v) = (self.first.outer(), self.second.outer());
        Hypotheses {
            distinct_rows: (0..n).all(|i| l.part(i) != v.part(i)),
            interlacing: (0..n).all(|i| l.part(i) >= v.part(i + 1) && v.part(i) >= l.part(i + 1)),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "first": { "outer": self.first.outer().parts(), "inner": self.first.inner().parts() },
            "second": { "outer": self.second.outer().parts(), "inner": self.second.inner().parts() },
        })
    }
}

fn entrywise(a: &Partition, b: &Partition, f: fn(u32, u32) -> u32) -> Partition {
    let n = a.len().max(b.len());
    Partition::new((0..n).map(|i| f(a.part(i), b.part(i))).collect()).expect("entrywise max/min of partitions")
}

/// `(lambda v nu) / (mu v rho)`.
pub fn shape_join(a: &SkewShape, b: &SkewShape) -> SkewShape {
    SkewShape::new(entrywise(a.outer(), b.outer(), u32::max), entrywise(a.inner(), b.inner(), u32::max))
        .expect("join of skew shapes is a skew shape")
}

/// `(lambda ^ nu) / (mu ^ rho)`.
pub fn shape_meet(a: &SkewShape, b: &SkewShape) -> SkewShape {
    SkewShape::new(entrywise(a.outer(), b.outer(), u32::min), entrywise(a.inner(), b.inner(), u32::min))
        .expect("meet of skew shapes is a skew shape")
}

fn flagged_skew(s: SkewShape, flag: &Flag, total_vars: usize) -> Result<IntPoly> {
    flagged_schur(&Shape::skew(s), flag, total_vars)
}

/// `s^b_{lambda/mu} s^b_{nu/rho}` by tableau enumeration.
pub fn product_polynomial(pair: &SkewPair, flag: &Flag, total_vars: usize) -> Result<IntPoly> {
    flagged_skew(pair.first.clone(), flag, total_vars)?.checked_mul(&flagged_skew(pair.second.clone(), flag, total_vars)?)
}

/// The flagged shuffle tableaux of `(lambda/mu) (*) (nu/rho)`, rows of both
/// constituents bounded by `b`.
pub fn flagged_shuffle_set(pair: &SkewPair, flag: &Flag) -> Result<BTreeSet<Tableau>> {
    let shape = Shape::shuffle(pair.first.clone(), pair.second.clone());
    Ok(FlaggedSet::new(shape, flag, flag.max_bound())?
        .elements()
        .into_iter()
        .collect())
}

#[derive(Clone, Debug)]
pub struct ProductExpansion {
    /// Key expansion of the polynomial product.
    pub direct: KeyExpansion,
    /// Sum of `kappa_alpha` over components of the flagged shuffle crystal.
    pub crystal: KeyExpansion,
    pub components: Vec<ComponentKey<Tableau>>,
    pub hypotheses: Hypotheses,
}

impl ProductExpansion {
    pub fn paths_agree(&self) -> bool {
        self.direct == self.crystal
    }

    pub fn to_json(&self) -> Value {
        json!({
            "expansion": self.direct.to_json(),
            "crystal_expansion": self.crystal.to_json(),
            "paths_agree": self.paths_agree(),
            "key_positive": self.direct.is_key_positive(),
            "hypotheses": self.hypotheses.to_json(),
            "components": self.components.iter().map(|c| json!({
                "highest_weight": c.lambda.parts(),
                "alpha": c.alpha.parts(),
                "chain": c.greedy.chain.to_json(),
                "size": c.size,
                "valid": c.valid(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Key expansion of `s^b_{lambda/mu} s^b_{nu/rho}`, computed directly and
/// through the flagged shuffle crystal. When the product theorem's hypotheses
/// hold, disagreement is reported as [`Error::PathMismatch`].
pub fn product_key_expansion(pair: &SkewPair, flag: &Flag, total_vars: usize) -> Result<ProductExpansion> {
    if (flag.max_bound() as usize) > total_vars {
        return Err(Error::VariableMismatch(flag.max_bound() as usize, total_vars));
    }
    let direct = key_expand(&product_polynomial(pair, flag, total_vars)?)?;
    let set = flagged_shuffle_set(pair, flag)?;
    let crystal = TableauCrystal::new(total_vars as u32);
    let components = decompose(&crystal, &set);
    let mut summed = KeyExpansion::new();
    for c in &components {
        summed.add(&c.alpha, Int::from(1));
    }
    let out = ProductExpansion {
        direct,
        crystal: summed,
        components,
        hypotheses: pair.hypotheses(),
    };
    if out.hypotheses.hold() && !out.paths_agree() {
        return Err(Error::PathMismatch);
    }
    Ok(out)
}

/// Key expansion of `s^b_{join} s^b_{meet} - s^b_{lambda/mu} s^b_{nu/rho}`.
pub fn logconcavity_difference(pair: &SkewPair, flag: &Flag, total_vars: usize) -> Result<KeyExpansion> {
    let join = flagged_skew(shape_join(&pair.first, &pair.second), flag, total_vars)?;
    let meet = flagged_skew(shape_meet(&pair.first, &pair.second), flag, total_vars)?;
    let diff = join.checked_mul(&meet)?.checked_sub(&product_polynomial(pair, flag, total_vars)?)?;
    key_expand(&diff)
}

/// The `2n`-row data of the product theorem's proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Doubled {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub flag: Flag,
    /// Rows of `A'` coming from `lambda` (1-based).
    pub rows: Vec<usize>,
    /// Columns of `A'` coming from `mu` (1-based).
    pub cols: Vec<usize>,
}

impl Doubled {
    pub fn lambda_strict(&self) -> bool {
        self.lambda.windows(2).all(|w| w[0] > w[1])
    }

    pub fn complement_rows(&self) -> Vec<usize> {
        (1..=self.lambda.len()).filter(|r| !self.rows.contains(r)).collect()
    }

    pub fn complement_cols(&self) -> Vec<usize> {
        (1..=self.mu.len()).filter(|c| !self.cols.contains(c)).collect()
    }
}

/// `lambda' = (max(l_1,v_1)+n, min(l_1,v_1)+n, ..., max(l_n,v_n)+1, min(l_n,v_n)+1)`,
/// `mu'` likewise from `mu, rho`, and `b' = (b_1, b_1, b_2, b_2, ...)`. On ties
/// the first shape takes the upper row.
pub fn doubled_construction(pair: &SkewPair, flag: &Flag) -> Doubled {
    let n = pair.rows();
    let interleave = |a: &Partition, b: &Partition| -> (Vec<u32>, Vec<usize>) {
        let mut out = Vec::with_capacity(2 * n);
        let mut from_a = Vec::with_capacity(n);
        for i in 0..n {
            let (x, y) = (a.part(i), b.part(i));
            let shift = (n - i) as u32;
            out.push(x.max(y) + shift);
            out.push(x.min(y) + shift);
            from_a.push(if x >= y { 2 * i + 1 } else { 2 * i + 2 });
        }
        (out, from_a)
    };
    let (lambda, rows) = interleave(pair.first.outer(), pair.second.outer());
    let (mu, cols) = interleave(pair.first.inner(), pair.second.inner());
    let bounds: Vec<u32> = (0..n).flat_map(|i| [flag.bound(i); 2]).collect();
    Doubled {
        lambda,
        mu,
        flag: Flag::new(bounds).expect("doubling keeps a flag nondecreasing"),
        rows,
        cols,
    }
}

/// The product as `Delta_{I,J}(A') Delta_{I',J'}(A')` and as the sum of
/// `Imm_tau(A')` over `Theta(I,J)`.
pub fn product_via_immanants(pair: &SkewPair, flag: &Flag, total_vars: usize) -> Result<(IntPoly, IntPoly, Vec<TLDiagram>)> {
    let d = doubled_construction(pair, flag);
    let a: JTMatrix<Int> = flagged_jt_matrix(&d.lambda, &d.mu, &d.flag, total_vars)?;
    let minors = minor(&a.entries, &d.rows, &d.cols)?.checked_mul(&minor(&a.entries, &d.complement_rows(), &d.complement_cols())?)?;
    let theta = theta_set(&d.rows, &d.cols, a.n())?;
    let mut sum = IntPoly::zero(total_vars);
    for tau in &theta {
        sum = sum.checked_add(&tl_immanant(tau, &a.entries)?)?;
    }
    Ok((minors, sum, theta))
}
