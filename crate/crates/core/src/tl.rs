//! The Temperley-Lieb algebra at loop value 2, the projection of the symmetric
//! group algebra onto it, and Temperley-Lieb immanants.
//!
//! Boundary points are numbered around the rectangle: `L1..Ln` are `1..n`
//! top to bottom, `R1..Rn` are `2n..n+1`, so `R_i = 2n + 1 - i`. A diagram is
//! noncrossing when no two arcs interleave in that circular order.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinat::{reduced_word, Permutation};
use crate::error::{Error, Result};
use crate::linsolve::{to_int, SparseRow, SparseSystem};
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

/// A noncrossing perfect matching on `2n` boundary points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    n: usize,
    /// `mate[p - 1]` is the point joined to `p`.
    mate: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

impl TLDiagram {
    /// Builds a diagram from arcs given as `(side, index)` pairs.
    pub fn from_pairs(n: usize, pairs: &[((Side, usize), (Side, usize))]) -> Result<Self> {
        let mut mate = vec![0; 2 * n];
        for &(a, b) in pairs {
            let (p, q) = (point(n, a)?, point(n, b)?);
            if p == q || mate[p - 1] != 0 || mate[q - 1] != 0 {
                return Err(Error::Parse(format!("point used twice in {pairs:?}")));
            }
            mate[p - 1] = q;
            mate[q - 1] = p;
        }
        Self::from_mate(n, mate)
    }

    fn from_mate(n: usize, mate: Vec<usize>) -> Result<Self> {
        if mate.len() != 2 * n || mate.iter().any(|&m| m == 0) {
            return Err(Error::Parse("matching is not perfect".into()));
        }
        let d = TLDiagram { n, mate };
        if !d.is_noncrossing() {
            return Err(Error::Parse(format!("matching {d} is crossing")));
        }
        Ok(d)
    }

    pub fn identity(n: usize) -> Self {
        let mate = (1..=2 * n).map(|p| 2 * n + 1 - p).collect();
        TLDiagram { n, mate }
    }

    /// `t_i`: cups joining `L_i, L_{i+1}` and `R_i, R_{i+1}`, straight strands elsewhere.
    pub fn generator(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n, "t_{i} is not in TL_{n}");
        let mut d = TLDiagram::identity(n);
        let (l1, l2) = (i, i + 1);
        let (r1, r2) = (2 * n + 1 - i, 2 * n - i);
        d.mate[l1 - 1] = l2;
        d.mate[l2 - 1] = l1;
        d.mate[r1 - 1] = r2;
        d.mate[r2 - 1] = r1;
        d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mate(&self, p: usize) -> usize {
        self.mate[p - 1]
    }

    fn is_noncrossing(&self) -> bool {
        let arcs: Vec<(usize, usize)> = (1..=2 * self.n)
            .filter(|&p| p < self.mate(p))
            .map(|p| (p, self.mate(p)))
            .collect();
        arcs.iter()
            .all(|&(a, b)| arcs.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }

    /// Arcs as sorted `(side, index)` pairs, `L` before `R`.
    pub fn pairs(&self) -> Vec<((Side, usize), (Side, usize))> {
        let mut out: Vec<_> = (1..=2 * self.n)
            .map(|p| {
                let (a, b) = (label(self.n, p), label(self.n, self.mate(p)));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.pairs()
                .into_iter()
                .map(|(a, b)| serde_json::json!([fmt_label(a), fmt_label(b)]))
                .collect(),
        )
    }
}

fn point(n: usize, (side, i): (Side, usize)) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::Parse(format!("boundary index {i} out of range 1..={n}")));
    }
    Ok(match side {
        Side::L => i,
        Side::R => 2 * n + 1 - i,
    })
}

fn label(n: usize, p: usize) -> (Side, usize) {
    if p <= n {
        (Side::L, p)
    } else {
        (Side::R, 2 * n + 1 - p)
    }
}

fn fmt_label((s, i): (Side, usize)) -> String {
    match s {
        Side::L => format!("L{i}"),
        Side::R => format!("R{i}"),
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| format!("[{},{}]", fmt_label(a), fmt_label(b)))
            .collect();
        write!(f, "[{}]", arcs.join(","))
    }
}

/// Parses `[[L1,L2],[L3,L4],[R1,R2],[R3,R4]]`; whitespace and quotes are ignored
/// and `n` is inferred from the largest index.
impl FromStr for TLDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '"').collect();
        let inner = cleaned
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracketed pair list, got {s:?}")))?;
        let mut pairs = Vec::new();
        for chunk in inner.split("],").map(|c| c.trim_start_matches('[').trim_end_matches(']')) {
            if chunk.is_empty() {
                continue;
            }
            let ends: Vec<&str> = chunk.split(',').collect();
            if ends.len() != 2 {
                return Err(Error::Parse(format!("arc {chunk:?} does not have two ends")));
            }
            pairs.push((parse_label(ends[0])?, parse_label(ends[1])?));
        }
        let n = pairs.iter().flat_map(|&(a, b)| [a.1, b.1]).max().unwrap_or(0);
        if pairs.len() != n {
            return Err(Error::Parse(format!("{} arcs cannot match {} points", pairs.len(), 2 * n)));
        }
        TLDiagram::from_pairs(n, &pairs)
    }
}

fn parse_label(s: &str) -> Result<(Side, usize)> {
    let bad = || Error::Parse(format!("bad boundary label {s:?}"));
    let side = match s.chars().next() {
        Some('L') | Some('l') => Side::L,
        Some('R') | Some('r') => Side::R,
        _ => return Err(bad()),
    };
    let i = s[1..].parse().map_err(|_| bad())?;
    Ok((side, i))
}

/// All `Catalan(n)` diagrams, sorted.
pub fn tl_basis(n: usize) -> Vec<TLDiagram> {
    fn rec(points: &[usize], mate: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&first, rest)) = points.split_first() else {
            out.push(mate.clone());
            return;
        };
        // `first` pairs with a point leaving an even number on each side
        for k in (0..rest.len()).step_by(2) {
            let q = rest[k];
            mate[first - 1] = q;
            mate[q - 1] = first;
            let inside = &rest[..k];
            let outside = &rest[k + 1..];
            let mut partial = Vec::new();
            rec(inside, mate, &mut partial);
            for m in partial {
                let mut m = m;
                rec(outside, &mut m, out);
            }
        }
    }
    let points: Vec<usize> = (1..=2 * n).collect();
    let mut raw = Vec::new();
    rec(&points, &mut vec![0; 2 * n], &mut raw);
    let mut out: Vec<TLDiagram> = raw.into_iter().map(|mate| TLDiagram { n, mate }).collect();
    out.sort();
    out
}

/// `d1 * d2`: the right side of `d1` is glued to the left side of `d2`.
/// Returns the resulting diagram and the number of closed loops.
pub fn compose(d1: &TLDiagram, d2: &TLDiagram) -> (TLDiagram, usize) {
    assert_eq!(d1.n, d2.n, "diagrams of different sizes");
    let n = d1.n;
    let r = |i: usize| 2 * n + 1 - i;
    let mut mate = vec![0; 2 * n];
    // middle point `i` is R_i of d1 and L_i of d2
    let mut middle_seen = vec![false; n + 1];
    // follow a strand starting at an outer point; (in_first, point)
    let walk = |start_first: bool, start: usize, seen: &mut Vec<bool>| -> usize {
        let (mut first, mut p) = (start_first, start);
        loop {
            let q = if first { d1.mate(p) } else { d2.mate(p) };
            if first {
                if q <= n {
                    return q;
                }
                let i = 2 * n + 1 - q;
                seen[i] = true;
                first = false;
                p = i;
            } else {
                if q > n {
                    return q;
                }
                seen[q] = true;
                first = true;
                p = r(q);
            }
        }
    };
    for p in 1..=n {
        let q = walk(true, p, &mut middle_seen);
        mate[p - 1] = q;
        mate[q - 1] = p;
    }
    for p in n + 1..=2 * n {
        if mate[p - 1] != 0 {
            continue;
        }
        let q = walk(false, p, &mut middle_seen);
        mate[p - 1] = q;
        mate[q - 1] = p;
    }
    // what remains of the middle closes up into loops
    let mut loops = 0;
    for start in 1..=n {
        if middle_seen[start] {
            continue;
        }
        loops += 1;
        let mut i = start;
        loop {
            middle_seen[i] = true;
            // cross d2 from L_i, then d1 from R_j
            let j = d2.mate(i);
            let k = 2 * n + 1 - d1.mate(r(j));
            middle_seen[j] = true;
            i = k;
            if i == start {
                break;
            }
        }
    }
    (TLDiagram { n, mate }, loops)
}

/// A linear combination of diagrams with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<TLDiagram, BigInt>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        TLElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn diagram(d: TLDiagram) -> Self {
        let mut e = TLElement::zero(d.n);
        e.add(d, BigInt::one());
        e
    }

    pub fn one(n: usize) -> Self {
        Self::diagram(TLDiagram::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, d: TLDiagram, c: BigInt) {
        let e = self.terms.entry(d.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &TLDiagram) -> BigInt {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &TLElement) -> TLElement {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add(d.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &TLElement) -> TLElement {
        let mut out = TLElement::zero(self.n);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let (d, loops) = compose(d1, d2);
                out.add(d, c1 * c2 * (BigInt::one() << loops));
            }
        }
        out
    }
}

/// `d1 * d2` as an algebra element: the glued diagram times `2^loops`.
pub fn tl_mul(d1: &TLDiagram, d2: &TLDiagram) -> TLElement {
    TLElement::diagram(d1.clone()).mul(&TLElement::diagram(d2.clone()))
}

/// The image `t_i - 1` of `s_i`.
fn simple_image(i: usize, n: usize) -> TLElement {
    TLElement::diagram(TLDiagram::generator(i, n)).sub(&TLElement::one(n))
}

/// Image of `w` under `s_i -> t_i - 1`, multiplied along a reduced word.
pub fn project_perm_along(w: &Permutation, word: &[usize]) -> TLElement {
    let n = w.n();
    word.iter()
        .fold(TLElement::one(n), |acc, &i| acc.mul(&simple_image(i, n)))
}

pub fn project_perm(w: &Permutation) -> TLElement {
    project_perm_along(w, &reduced_word(w))
}

/// Images of all of `S_n`, by breadth-first search on length.
pub fn project_all(n: usize) -> HashMap<Permutation, TLElement> {
    let mut out = HashMap::new();
    let id = Permutation::identity(n);
    out.insert(id.clone(), TLElement::one(n));
    let mut queue = VecDeque::from([id]);
    let gens: Vec<TLElement> = (1..n).map(|i| simple_image(i, n)).collect();
    while let Some(w) = queue.pop_front() {
        for i in 1..n {
            let next = w.mul_simple_right(i);
            if next.length() <= w.length() || out.contains_key(&next) {
                continue;
            }
            let img = out[&w].mul(&gens[i - 1]);
            out.insert(next.clone(), img);
            queue.push_back(next);
        }
    }
    out
}

/// The table `w -> f_tau(w)` over `S_n`, omitting zeros.
pub fn tl_coefficients(tau: &TLDiagram) -> Vec<(Permutation, BigInt)> {
    let mut table: Vec<(Permutation, BigInt)> = project_all(tau.n)
        .into_iter()
        .map(|(w, e)| (w, e.coefficient(tau)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    table.sort();
    table
}

/// `Imm_tau(M) = sum_w f_tau(w) prod_i m_{i, w(i)}`.
pub fn tl_immanant<C: Coefficient>(tau: &TLDiagram, m: &[Vec<Polynomial<C>>]) -> Result<Polynomial<C>> {
    let n = tau.n;
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension(format!("immanant of a {n}-strand diagram needs an {n}x{n} matrix")));
    }
    let nvars = m.first().and_then(|r| r.first()).map_or(0, Polynomial::nvars);
    let mut out = Polynomial::zero(nvars);
    for (w, c) in tl_coefficients(tau) {
        let c = C::from_i64(c.to_i64().ok_or_else(|| Error::Dimension("coefficient overflow".into()))?);
        let mut term = Polynomial::constant(c, nvars);
        for i in 1..=n {
            let entry = &m[i - 1][w.apply(i) - 1];
            if entry.is_zero() {
                term = Polynomial::zero(nvars);
                break;
            }
            term = term.checked_mul(entry)?;
        }
        out = out.checked_add(&term)?;
    }
    Ok(out)
}

/// Sign of the order-preserving relabelling of `rows -> cols` given by `w`.
fn restricted_sign(w: &Permutation, rows: &[usize], cols: &[usize]) -> i64 {
    let ranks: Vec<usize> = rows
        .iter()
        .map(|&i| cols.iter().position(|&c| c == w.apply(i)).expect("w maps rows onto cols"))
        .collect();
    let inversions = (0..ranks.len())
        .map(|a| (a + 1..ranks.len()).filter(|&b| ranks[a] > ranks[b]).count())
        .sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn complement(set: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|x| !set.contains(x)).collect()
}

/// `Theta(I, J)`: the diagrams whose immanants sum to
/// `Delta_{I,J}(M) Delta_{I', J'}(M)` for a generic `n x n` matrix, found by
/// solving the linear system in the immanant basis monomial by monomial.
pub fn theta_set(rows: &[usize], cols: &[usize], n: usize) -> Result<Vec<TLDiagram>> {
    if rows.len() != cols.len() {
        return Err(Error::Dimension(format!("|I| = {} but |J| = {}", rows.len(), cols.len())));
    }
    let (mut rows, mut cols) = (rows.to_vec(), cols.to_vec());
    rows.sort_unstable();
    cols.sort_unstable();
    if rows.iter().chain(&cols).any(|&x| x == 0 || x > n) {
        return Err(Error::Dimension(format!("index sets must lie in 1..={n}")));
    }
    let (rc, cc) = (complement(&rows, n), complement(&cols, n));
    let basis = tl_basis(n);
    let index: HashMap<&TLDiagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let images = project_all(n);
    let mut system = SparseSystem::new(basis.len());
    for w in Permutation::all(n) {
        let target = if rows.iter().all(|&i| cols.contains(&w.apply(i))) {
            restricted_sign(&w, &rows, &cols) * restricted_sign(&w, &rc, &cc)
        } else {
            0
        };
        let row: SparseRow = images[&w]
            .terms()
            .map(|(d, c)| (index[d], BigRational::from_integer(c.clone())))
            .collect();
        system.push(row, BigRational::from_integer(target.into()))?;
    }
    let mut out = Vec::new();
    for (i, x) in system.solve()?.iter().enumerate() {
        match to_int(x).and_then(|v| v.to_i64()) {
            Some(0) => {}
            Some(1) => out.push(basis[i].clone()),
            _ => return Err(Error::Inconsistent),
        }
    }
    Ok(out)
}
