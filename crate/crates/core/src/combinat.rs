//! Partitions, compositions, flags and permutations of type A.
//!
//! Permutations act on *positions*: `apply_perm(w, v)` puts `v[i]` at
//! position `w(i)`, so `s_i` swaps entries `i` and `i+1` and
//! `apply_perm(u * w, v) == apply_perm(u, apply_perm(w, v))`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parse a comma separated list of nonnegative integers; blank input is empty.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

fn join(parts: &[u32]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of positive parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// Parts padded with zeros to length `n` (never truncates).
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        v
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// All partitions of `size` with at most `max_rows` parts, each at most `max_part`.
    pub fn all_of_size(size: u32, max_rows: usize, max_part: u32) -> Vec<Partition> {
        fn rec(rem: u32, cap: u32, rows: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows == 0 {
                return;
            }
            for p in (1..=cap.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, rows - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, max_part, max_rows, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions contained in `self` (including the empty one and `self`).
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(outer: &[u32], i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == outer.len() {
                out.push(Partition::new(cur.clone()).expect("weakly decreasing by construction"));
                return;
            }
            for p in 0..=outer[i].min(cap) {
                cur.push(p);
                rec(outer, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.0, 0, u32::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// A weak composition. Length is significant (weights carry one slot per letter);
/// use [`Composition::trimmed`] when trailing zeros should not matter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn trimmed(&self) -> Composition {
        let mut v = self.0.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        Composition(v)
    }

    pub fn padded(&self, n: usize) -> Composition {
        let mut v = self.0.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        Composition(v)
    }

    /// Parts sorted into a partition.
    pub fn sorted_partition(&self) -> Partition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).expect("sorted")
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// All weak compositions of `size` into exactly `len` parts, each at most `max_part`,
    /// in lexicographic order.
    pub fn all_of_size(size: u32, len: usize, max_part: u32) -> Vec<Composition> {
        fn rec(rem: u32, slots: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if slots == 0 {
                if rem == 0 {
                    out.push(Composition(cur.clone()));
                }
                return;
            }
            if (slots as u64) * (cap as u64) < rem as u64 {
                return;
            }
            for p in 0..=cap.min(rem) {
                cur.push(p);
                rec(rem - p, slots - 1, cap, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, len, max_part, &mut Vec::new(), &mut out);
        out
    }
}

impl From<Vec<u32>> for Composition {
    fn from(v: Vec<u32>) -> Self {
        Composition(v)
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition(p.0.clone())
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Composition(parse_list(s)?))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// Row bounds `b_1 <= b_2 <= ...`, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Flag(Vec<u32>);

impl Flag {
    pub fn new(bounds: Vec<u32>) -> Result<Self> {
        if bounds.iter().any(|&b| b == 0) || bounds.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidFlag(bounds));
        }
        Ok(Flag(bounds))
    }

    /// The constant flag `(n, ..., n)` with `len` entries.
    pub fn constant(n: u32, len: usize) -> Self {
        Flag(vec![n.max(1); len])
    }

    pub fn bounds(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bound on row `i` (0-based); rows past the end inherit the last bound.
    pub fn bound(&self, i: usize) -> u32 {
        self.0
            .get(i)
            .or(self.0.last())
            .copied()
            .unwrap_or(u32::MAX)
    }

    pub fn max_bound(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// `(b1, b1, b2, b2, ...)`.
    pub fn doubled(&self) -> Flag {
        Flag(self.0.iter().flat_map(|&b| [b, b]).collect())
    }

    /// Every nondecreasing flag of length `len` with `1 <= b_i <= cap(i)`.
    pub fn all_bounded(len: usize, cap: impl Fn(usize) -> u32) -> Vec<Flag> {
        fn rec(i: usize, len: usize, lo: u32, cap: &dyn Fn(usize) -> u32, cur: &mut Vec<u32>, out: &mut Vec<Flag>) {
            if i == len {
                out.push(Flag(cur.clone()));
                return;
            }
            for b in lo..=cap(i) {
                cur.push(b);
                rec(i + 1, len, b, cap, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, len, 1, &cap, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Flag {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Flag::new(v)
    }
}

impl From<Flag> for Vec<u32> {
    fn from(f: Flag) -> Self {
        f.0
    }
}

impl FromStr for Flag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Flag::new(parse_list(s)?)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The simple transposition `s_i` in `S_n` (1-based `i < n`).
    pub fn simple(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not in S_{n}");
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(i - 1, i);
        Permutation(v)
    }

    pub fn longest(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    /// `s_{i_1} s_{i_2} ... s_{i_k}` in `S_n`.
    pub fn from_word(word: &[usize], n: usize) -> Self {
        let mut p = Permutation::identity(n);
        for &i in word {
            p = p.mul_simple_right(i);
        }
        p
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `self * other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation(other.0.iter().map(|&x| self.0[x - 1]).collect())
    }

    /// `self * s_i`: swaps positions `i`, `i+1` of the one-line notation.
    pub fn mul_simple_right(&self, i: usize) -> Permutation {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Permutation(v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x - 1] = i + 1;
        }
        Permutation(v)
    }

    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Positions `i` with `w(i) > w(i+1)`; exactly the `i` with `l(w s_i) < l(w)`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.0[i - 1] > self.0[i]).collect()
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation(cur.clone())];
        // next lexicographic permutation
        loop {
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_list(s)?.into_iter().map(|x| x as usize).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Canonical reduced word: bubble the largest misplaced value to its slot,
/// repeatedly, and read the swaps backwards.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut v = w.0.clone();
    let mut swaps = Vec::new();
    for value in (1..=v.len()).rev() {
        let mut pos = v.iter().position(|&x| x == value).expect("bijection") + 1;
        while pos < value {
            v.swap(pos - 1, pos);
            swaps.push(pos);
            pos += 1;
        }
    }
    swaps.reverse();
    swaps
}

/// Every reduced word of `w`. Exponential; intended for `n <= 6`.
pub fn all_reduced_words(w: &Permutation) -> BTreeSet<Vec<usize>> {
    fn rec(w: &Permutation, suffix: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let descents = w.right_descents();
        if descents.is_empty() {
            out.insert(suffix.iter().rev().copied().collect());
            return;
        }
        for i in descents {
            suffix.push(i);
            rec(&w.mul_simple_right(i), suffix, out);
            suffix.pop();
        }
    }
    let mut out = BTreeSet::new();
    rec(w, &mut Vec::new(), &mut out);
    out
}

pub fn is_reduced(word: &[usize], n: usize) -> bool {
    word.iter().all(|&i| i >= 1 && i < n) && Permutation::from_word(word, n).length() == word.len()
}

/// Bruhat order via the subword property against the canonical reduced word of `w`.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> bool {
    assert_eq!(u.n(), w.n(), "permutations of different sizes");
    let mut reachable: BTreeSet<Permutation> = BTreeSet::new();
    reachable.insert(Permutation::identity(u.n()));
    for i in reduced_word(w) {
        let grown: Vec<Permutation> = reachable
            .iter()
            .filter(|p| p.0[i - 1] < p.0[i])
            .map(|p| p.mul_simple_right(i))
            .collect();
        reachable.extend(grown);
    }
    reachable.contains(u)
}

/// Prefix-sum comparison; vectors of different total are incomparable.
pub fn dominance_leq(v: &Composition, w: &Composition) -> bool {
    if v.size() != w.size() {
        return false;
    }
    let n = v.len().max(w.len());
    let (v, w) = (v.padded(n), w.padded(n));
    let (mut sv, mut sw) = (0u64, 0u64);
    for (a, b) in v.0.iter().zip(&w.0) {
        sv += *a as u64;
        sw += *b as u64;
        if sv > sw {
            return false;
        }
    }
    true
}

/// `output[w(i)] = v[i]`; entries of `v` past `n` are left in place.
pub fn apply_perm(w: &Permutation, v: &Composition) -> Composition {
    let n = w.n();
    assert!(v.len() >= n, "vector shorter than permutation");
    let mut out = v.0.clone();
    for i in 0..n {
        out[w.0[i] - 1] = v.0[i];
    }
    Composition(out)
}

/// A permutation of minimal length carrying the sorted version of `alpha` to `alpha`.
pub fn minimal_permutation_for(alpha: &Composition) -> Permutation {
    let n = alpha.len();
    let lambda = alpha.sorted_partition().padded(n);
    // stable matching of equal values keeps the permutation minimal
    let mut used = vec![false; n];
    let mut images = vec![0; n];
    for (i, &val) in lambda.iter().enumerate() {
        let j = (0..n).find(|&j| !used[j] && alpha.0[j] == val).expect("same multiset");
        used[j] = true;
        images[i] = j + 1;
    }
    Permutation(images)
}
