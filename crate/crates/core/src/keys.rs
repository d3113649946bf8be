//! Key polynomials and expansion in the key basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{minimal_permutation_for, Composition, Partition, Permutation};
use crate::error::{Error, Result};
use crate::linsolve::{int, to_int, SparseRow, SparseSystem};
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

/// Which ascent `alpha_i < alpha_{i+1}` the recursion peels off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AscentChoice {
    #[default]
    First,
    Last,
}

/// Memoised key polynomials in a fixed number of variables.
#[derive(Debug)]
pub struct KeyCache<C> {
    nvars: usize,
    choice: AscentChoice,
    memo: HashMap<Vec<u32>, Polynomial<C>>,
}

impl<C: Coefficient> KeyCache<C> {
    pub fn new(nvars: usize) -> Self {
        Self::with_choice(nvars, AscentChoice::First)
    }

    pub fn with_choice(nvars: usize, choice: AscentChoice) -> Self {
        KeyCache {
            nvars,
            choice,
            memo: HashMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&mut self, alpha: &Composition) -> Result<Polynomial<C>> {
        let a = alpha.trimmed();
        if a.len() > self.nvars {
            return Err(Error::VariableMismatch(a.len(), self.nvars));
        }
        Ok(self.compute(a.padded(self.nvars).0))
    }

    fn compute(&mut self, alpha: Vec<u32>) -> Polynomial<C> {
        if let Some(p) = self.memo.get(&alpha) {
            return p.clone();
        }
        let mut ascents = (0..alpha.len().saturating_sub(1)).filter(|&i| alpha[i] < alpha[i + 1]);
        let pick = match self.choice {
            AscentChoice::First => ascents.next(),
            AscentChoice::Last => ascents.last(),
        };
        let p = match pick {
            None => Polynomial::monomial(alpha.clone(), C::one()),
            Some(i) => {
                let mut beta = alpha.clone();
                beta.swap(i, i + 1);
                self.compute(beta).demazure_op(i + 1)
            }
        };
        self.memo.insert(alpha, p.clone());
        p
    }
}

/// `kappa_alpha` in `total_vars` variables.
pub fn key_polynomial<C: Coefficient>(alpha: &Composition, total_vars: usize) -> Result<Polynomial<C>> {
    KeyCache::new(total_vars).get(alpha)
}

/// Coefficients in the key basis, indexed by compositions with trailing zeros removed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KeyExpansion {
    terms: BTreeMap<Composition, BigInt>,
}

impl KeyExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, alpha: &Composition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = alpha.trimmed();
        let e = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn from_pairs<I, A>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, i64)>,
        A: Into<Composition>,
    {
        let mut e = KeyExpansion::new();
        for (a, c) in pairs {
            e.add(&a.into(), BigInt::from(c));
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &Composition) -> BigInt {
        self.terms.get(&alpha.trimmed()).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_key_positive(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn negative_terms(&self) -> Vec<(Composition, BigInt)> {
        self.terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect()
    }

    pub fn checked_sub(&self, other: &KeyExpansion) -> KeyExpansion {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add(a, -c.clone());
        }
        out
    }

    /// `sum c_alpha kappa_alpha` in `total_vars` variables.
    pub fn reconstruct(&self, total_vars: usize) -> Result<Polynomial<BigInt>> {
        let mut cache = KeyCache::new(total_vars);
        let mut out = Polynomial::zero(total_vars);
        for (a, c) in &self.terms {
            out = out.checked_add(&cache.get(a)?.scale(c))?;
        }
        Ok(out)
    }

    /// For each term, the sorted partition and a minimal-length permutation carrying it to alpha.
    pub fn witnesses(&self) -> Vec<(Composition, Partition, Permutation)> {
        self.terms
            .keys()
            .map(|a| {
                let w = minimal_permutation_for(a);
                (a.clone(), a.sorted_partition(), w)
            })
            .collect()
    }

    /// Text form `{(5,1,2):1,(5,0,3):1}`, lexicographically largest index first.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(a, c)| format!("({a}):{c}"))
            .collect();
        format!("{{{}}}", body.join(","))
    }

    /// JSON object mapping `"5,1,2"` to the coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (a, c) in self.terms.iter().rev() {
            let v = match i64::try_from(c) {
                Ok(small) => serde_json::Value::from(small),
                Err(_) => serde_json::Value::String(c.to_string()),
            };
            m.insert(a.to_string(), v);
        }
        serde_json::Value::Object(m)
    }
}

impl fmt::Display for KeyExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for KeyExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for KeyExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let m: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut e = KeyExpansion::new();
        for (k, v) in m {
            let alpha: Composition = k.parse().map_err(D::Error::custom)?;
            let c: BigInt = match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("non-integer coefficient"))?,
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                _ => return Err(D::Error::custom("coefficient must be an integer")),
            };
            e.add(&alpha, c);
        }
        Ok(e)
    }
}

/// Expands `p` in the key basis by solving, degree by degree, the exact linear
/// system against every composition of that degree with `p.nvars()` parts bounded
/// by the largest exponent of `p`. The result is checked by reconstruction.
pub fn key_expand(p: &Polynomial<BigInt>) -> Result<KeyExpansion> {
    let n = p.nvars();
    let bound = p.max_exponent();
    let mut cache: KeyCache<BigInt> = KeyCache::new(n);
    let mut out = KeyExpansion::new();
    for d in p.degrees() {
        let basis = Composition::all_of_size(d, n, bound);
        let index: HashMap<&[u32], usize> = basis
            .iter()
            .enumerate()
            .map(|(i, a)| (a.parts(), i))
            .collect();
        // rows[beta] collects coefficient of x^beta in each kappa_alpha
        let mut rows: Vec<SparseRow> = vec![SparseRow::new(); basis.len()];
        for (col, alpha) in basis.iter().enumerate() {
            for (e, c) in cache.get(alpha)?.terms() {
                let r = *index.get(e.as_slice()).ok_or(Error::Inconsistent)?;
                rows[r].insert(col, int(c));
            }
        }
        let mut system = SparseSystem::new(basis.len());
        for (r, row) in rows.into_iter().enumerate() {
            system.push(row, int(&p.coefficient(basis[r].parts())))?;
        }
        for (col, x) in system.solve()?.iter().enumerate() {
            let c = to_int(x).ok_or(Error::Inconsistent)?;
            out.add(&basis[col], c);
        }
    }
    if out.reconstruct(n)? != *p {
        return Err(Error::Inconsistent);
    }
    Ok(out)
}

pub fn is_key_positive(e: &KeyExpansion) -> bool {
    e.is_key_positive()
}
