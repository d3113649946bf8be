//! Sparse multivariate polynomials over a [`Coefficient`] ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::combinat::Permutation;
use crate::error::{Error, Result};

use crate::scalar::Coefficient;

/// Exponent vector; its length is the polynomial's variable count.
pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(C::one(), nvars)
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exponent: Exponent, c: C) -> Self {
        let nvars = exponent.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Polynomial { nvars, terms }
    }

    /// The variable `x_i` (1-based).
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "x{i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(e, C::one())
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, C)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableMismatch(nvars, e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Total degrees that occur, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Re-embeds into `nvars` variables. Fails if a dropped variable occurs.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            if e.iter().skip(nvars).any(|&x| x > 0) {
                return Err(Error::VariableMismatch(self.nvars, nvars));
            }
            let mut f = e.clone();
            f.resize(nvars, 0);
            out.terms.insert(f, c.clone());
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn neg_ref(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.nvars, other.nvars))
        }
    }

    /// Permutes variables: the exponent of `x_i` moves to `x_{w(i)}`.
    pub fn act(&self, w: &Permutation) -> Self {
        assert!(w.n() <= self.nvars, "permutation larger than variable count");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            for i in 0..w.n() {
                f[w.images()[i] - 1] = e[i];
            }
            out.terms.insert(f, c.clone());
        }
        out
    }

    /// The isobaric divided difference `pi_i p = (x_i p - x_{i+1} s_i p) / (x_i - x_{i+1})`,
    /// computed monomial by monomial.
    pub fn demazure_op(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.nvars, "pi_{i} needs at least {} variables", i + 1);
        let (a, b) = (i - 1, i);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (p, q) = (e[a], e[b]);
            let mut push = |x: u32, y: u32, c: C| {
                let mut f = e.clone();
                f[a] = x;
                f[b] = y;
                out.add_term(f, c);
            };
            if p >= q {
                for k in 0..=(p - q) {
                    push(p - k, q + k, c.clone());
                }
            } else if q - p >= 2 {
                for k in 0..=(q - p - 2) {
                    push(p + 1 + k, q - 1 - k, -c.clone());
                }
            }
        }
        out
    }

    /// Terms from the lexicographically largest exponent down.
    fn ordered(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter().rev()
    }

    /// Canonical text form, e.g. `+1*x1^2*x2 -3*x2^3`; the zero polynomial is `0`.
    pub fn to_canonical(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.ordered()
            .map(|(e, c)| {
                let sign = if c.is_negative() { "-" } else { "+" };
                let abs = if c.is_negative() { -c.clone() } else { c.clone() };
                let m = monomial_text(e);
                if m.is_empty() {
                    format!("{sign}{abs}")
                } else {
                    format!("{sign}{abs}*{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Human form: unit coefficients dropped, e.g. `x1^2*x2 - 3*x2^3`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.ordered().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (idx, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let m = monomial_text(e);
            if m.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&m);
            } else {
                s.push_str(&format!("{abs}*{m}"));
            }
        }
        s
    }
}

fn monomial_text(e: &[u32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl<C: Coefficient + std::str::FromStr> Polynomial<C> {
    /// Parses canonical or human text (`+1*x1^2*x2 -3*x2^3`, `x1 - 2*x2 + 5`).
    /// The variable count is the larger of `min_vars` and the highest index seen.
    pub fn parse(s: &str, min_vars: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Self::zero(min_vars));
        }
        let mut raw: Vec<(bool, &str)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut neg = false;
        for (k, &ch) in bytes.iter().enumerate() {
            if (ch == b'+' || ch == b'-') && (k == 0 || bytes[k - 1] != b'^') {
                if k > start {
                    raw.push((neg, &compact[start..k]));
                } else if k > 0 {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                neg = ch == b'-';
                start = k + 1;
            }
        }
        if start >= compact.len() {
            return Err(Error::Parse(format!("trailing sign in {s:?}")));
        }
        raw.push((neg, &compact[start..]));

        let mut parsed: Vec<(BTreeMap<usize, u32>, C)> = Vec::new();
        let mut nvars = min_vars;
        for (neg, body) in raw {
            let mut coeff = C::one();
            let mut powers: BTreeMap<usize, u32> = BTreeMap::new();
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, k)) => (i, k),
                        None => (rest, "1"),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                    let exp: u32 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {factor:?}")))?;
                    if idx == 0 {
                        return Err(Error::Parse("variables are numbered from x1".into()));
                    }
                    nvars = nvars.max(idx);
                    *powers.entry(idx).or_insert(0) += exp;
                } else {
                    let c: C = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                    coeff = coeff * c;
                }
            }
            if neg {
                coeff = -coeff;
            }
            parsed.push((powers, coeff));
        }
        let mut p = Self::zero(nvars);
        for (powers, c) in parsed {
            let mut e = vec![0; nvars];
            for (i, k) in powers {
                e[i - 1] += k;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

// Operator forms panic on a variable-count mismatch; use the `checked_*` methods
// when the counts are not known to agree.
impl<'a, C: Coefficient> Add for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<'a, C: Coefficient> Sub for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a, C: Coefficient> Mul for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.neg_ref()
    }
}

impl<C: Coefficient> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        &self * &rhs
    }
}

/// `h_d(x_1..x_k)` embedded in `total_vars` variables; zero for `d < 0`.
pub fn complete_homogeneous<C: Coefficient>(d: i64, k: usize, total_vars: usize) -> Polynomial<C> {
    assert!(k <= total_vars, "h_d in {k} variables does not fit in {total_vars}");
    let mut out = Polynomial::zero(total_vars);
    if d < 0 {
        return out;
    }
    if k == 0 {
        if d == 0 {
            out = Polynomial::one(total_vars);
        }
        return out;
    }
    fn rec<C: Coefficient>(rem: u32, i: usize, k: usize, e: &mut Vec<u32>, out: &mut Polynomial<C>) {
        if i + 1 == k {
            e[i] = rem;
            out.add_term(e.clone(), C::one());
            e[i] = 0;
            return;
        }
        for p in 0..=rem {
            e[i] = p;
            rec(rem - p, i + 1, k, e, out);
        }
        e[i] = 0;
    }
    let mut e = vec![0; total_vars];
    rec(d as u32, 0, k, &mut e, &mut out);
    out
}
