//! Demazure subsets of crystals and checkers for the axioms characterising them.
//!
//! Every checker is generic over [`Crystal`], works only with the subset `X`
//! and the crystal operators, and enumerates its parameter ranges
//! exhaustively. A failing check carries a concrete witness.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::combinat::{dominance_leq, is_reduced, Composition, Partition};
use crate::crystal::{Crystal, CrystalGraph, OperatorChain, TableauCrystal};
use crate::error::{Error, Result};
use crate::keys::KeyCache;
use crate::poly::Polynomial;
use crate::tableau::{Shape, Tableau};

/// JSON rendering of crystal elements for witness payloads.
pub trait Describe {
    fn describe(&self) -> Value;
}

impl Describe for Tableau {
    fn describe(&self) -> Value {
        self.to_json()
    }
}

pub type Members<T> = BTreeSet<T>;

/// The highest weight filling of a straight shape: row `r` holds `r`.
pub fn superstandard(shape: &Arc<Shape>) -> Tableau {
    let entries = shape.cells().iter().map(|c| c.orig_row as u32 + 1).collect();
    Tableau::new(Arc::clone(shape), entries).expect("superstandard filling is semistandard")
}

/// `B_w` from `top` along `word` (`w = s_{i_1} ... s_{i_k}`): the union of
/// `f_{i_1}^{m_1} ... f_{i_k}^{m_k}(top)`.
pub fn demazure_closure<K: Crystal>(crystal: &K, top: &K::Elem, word: &[usize]) -> Result<Members<K::Elem>> {
    if !is_reduced(word, crystal.rank()) {
        return Err(Error::NotReduced(word.to_vec()));
    }
    let mut set: Members<K::Elem> = BTreeSet::from([top.clone()]);
    for &i in word.iter().rev() {
        let mut grown = set.clone();
        for x in &set {
            let mut cur = x.clone();
            while let Some(next) = crystal.lower(&cur, i) {
                grown.insert(next.clone());
                cur = next;
            }
        }
        set = grown;
    }
    Ok(set)
}

/// `B_w(lambda)` inside `SSYT(lambda)` with entries at most `n`.
pub fn demazure_subset(lambda: &Partition, word: &[usize], n: u32) -> Result<Members<Tableau>> {
    if lambda.len() > n as usize {
        return Err(Error::Dimension(format!("{} rows need at least that many letters", lambda.len())));
    }
    let top = superstandard(&Shape::straight(lambda.clone()));
    demazure_closure(&TableauCrystal::new(n), &top, word)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<T> {
    /// An `i`-string meeting `X` in something other than nothing, everything or its top.
    Extremal { i: usize, string: Vec<T>, inside: Vec<bool> },
    /// `x = e_j^*(...)(y)` but replaying the other steps downward from `x` leaves `X`.
    Ideal { y: T, x: T, raising: Vec<usize>, result: T },
    /// A failed instance of one of the two ideal sub-properties; `from` is the start,
    /// `order` the `f^*` indices of the hypothesis in application order.
    IdealPart { property: &'static str, from: T, order: Vec<usize> },
    /// A component whose extremal weights have no dominance minimum.
    Principal { top: T, minimal: Vec<T> },
    Extension { x: T, n: usize, a: usize, b: usize },
    Gluing { x: T, a: usize, k: usize, m: usize },
}

impl<T: Describe> Witness<T> {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Extremal { i, string, inside } => json!({
                "kind": "extremal", "i": i,
                "string": string.iter().map(Describe::describe).collect::<Vec<_>>(),
                "in_subset": inside,
            }),
            Witness::Ideal { y, x, raising, result } => json!({
                "kind": "ideal", "y": y.describe(), "x": x.describe(),
                "raising": raising, "result": result.describe(),
            }),
            Witness::IdealPart { property, from, order } => json!({
                "kind": property, "x": from.describe(), "lowering": order,
            }),
            Witness::Principal { top, minimal } => json!({
                "kind": "principal", "top": top.describe(),
                "minimal": minimal.iter().map(Describe::describe).collect::<Vec<_>>(),
            }),
            Witness::Extension { x, n, a, b } => json!({
                "kind": "extension", "x": x.describe(), "n": n, "a": a, "b": b,
                "hypothesis": [[n, a], [n + 1, b]], "conclusion": [[n, a], [n + 1, b - 1]],
            }),
            Witness::Gluing { x, a, k, m } => json!({
                "kind": "gluing", "x": x.describe(), "a": a, "k": k, "m": m,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check<T> {
    pub passed: bool,
    /// Number of hypothesis instances examined.
    pub cases: usize,
    pub witness: Option<Witness<T>>,
}

impl<T> Check<T> {
    fn pass(cases: usize) -> Self {
        Check {
            passed: true,
            cases,
            witness: None,
        }
    }

    fn fail(cases: usize, w: Witness<T>) -> Self {
        Check {
            passed: false,
            cases,
            witness: Some(w),
        }
    }
}

impl<T: Describe> Check<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed,
            "cases": self.cases,
            "witness": self.witness.as_ref().map_or(Value::Null, Witness::to_json),
        })
    }
}

fn extremal_members<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Vec<K::Elem> {
    x.iter().filter(|e| crystal.is_extremal(e)).cloned().collect()
}

/// Every `i`-string `S` through `X` has `S ∩ X` equal to `S` or to the top of `S`.
pub fn check_extremal<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Check<K::Elem> {
    let mut seen: BTreeSet<(usize, K::Elem)> = BTreeSet::new();
    let mut cases = 0;
    for e in x {
        for i in 1..crystal.rank() {
            let top = crystal.raise_star(e, i);
            if !seen.insert((i, top.clone())) {
                continue;
            }
            cases += 1;
            let mut string = vec![top.clone()];
            while let Some(next) = crystal.lower(string.last().expect("nonempty"), i) {
                string.push(next);
            }
            let inside: Vec<bool> = string.iter().map(|s| x.contains(s)).collect();
            let all = inside.iter().all(|&b| b);
            let top_only = inside[0] && inside[1..].iter().all(|&b| !b);
            if !(all || top_only) {
                return Check::fail(cases, Witness::Extremal { i, string, inside });
            }
        }
    }
    Check::pass(cases)
}

/// The ideal axiom checked directly: for extremal `y ∈ X` and every sequence of
/// nontrivial `e^*` steps ending at an extremal `x ∈ X` with last step `e_j^*`,
/// applying the other steps' `f^*` to `x` (in reverse) must stay in `X`.
/// Paths are bounded by the ambient crystal, whose extremal elements form a
/// finite poset.
pub fn check_ideal_direct<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Check<K::Elem> {
    let mut cases = 0;
    for y in extremal_members(crystal, x) {
        let mut path: Vec<usize> = Vec::new();
        if let Some(w) = ideal_dfs(crystal, x, &y, &y, &mut path, &mut cases) {
            return Check::fail(cases, w);
        }
    }
    Check::pass(cases)
}

fn ideal_dfs<K: Crystal>(
    crystal: &K,
    x: &Members<K::Elem>,
    y: &K::Elem,
    cur: &K::Elem,
    path: &mut Vec<usize>,
    cases: &mut usize,
) -> Option<Witness<K::Elem>> {
    for i in 1..crystal.rank() {
        if path.last() == Some(&i) {
            continue;
        }
        let up = crystal.raise_star(cur, i);
        if up == *cur {
            continue;
        }
        if x.contains(&up) {
            *cases += 1;
            // steps before the last one, replayed downward from `up` in reverse
            let replay: Vec<usize> = path.iter().rev().copied().collect();
            let result = crystal.apply_stars(&up, &replay);
            if !x.contains(&result) {
                let mut raising = path.clone();
                raising.push(i);
                return Some(Witness::Ideal {
                    y: y.clone(),
                    x: up,
                    raising,
                    result,
                });
            }
        }
        path.push(i);
        let found = ideal_dfs(crystal, x, y, &up, path, cases);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Ideal sub-properties:
/// (ii) `f_n^* ... f_{n-k}^*(x) ∈ X ⇒ f_n^* ... f_{n-k+1}^*(x) ∈ X`;
/// (iii) `f_n^* f_{n+1}^* ... f_{n+k}^*(x) ∈ X ⇒ f_n^* ... f_{n+k-1}^*(x) ∈ X`;
/// for all `x ∈ X` and `k >= 1`.
pub fn check_ideal_parts<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Check<K::Elem> {
    let r = crystal.rank();
    let mut cases = 0;
    for e in x {
        for n in 1..r {
            for k in 1..n {
                // (ii): applied n-k, n-k+1, ..., n
                let order: Vec<usize> = (n - k..=n).collect();
                if x.contains(&crystal.apply_stars(e, &order)) {
                    cases += 1;
                    if !x.contains(&crystal.apply_stars(e, &order[1..])) {
                        return Check::fail(cases, Witness::IdealPart { property: "ideal-ii", from: e.clone(), order });
                    }
                }
            }
            for k in 1..(r - n) {
                // (iii): applied n+k, n+k-1, ..., n
                let order: Vec<usize> = (n..=n + k).rev().collect();
                if x.contains(&crystal.apply_stars(e, &order)) {
                    cases += 1;
                    if !x.contains(&crystal.apply_stars(e, &order[1..])) {
                        return Check::fail(cases, Witness::IdealPart { property: "ideal-iii", from: e.clone(), order });
                    }
                }
            }
        }
    }
    Check::pass(cases)
}

/// Gluing together with ideal sub-properties (ii) and (iii).
pub fn check_ideal_decomposed<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Check<K::Elem> {
    let parts = check_ideal_parts(crystal, x);
    if !parts.passed {
        return parts;
    }
    let glue = check_gluing(crystal, x);
    Check {
        passed: glue.passed,
        cases: parts.cases + glue.cases,
        witness: glue.witness,
    }
}

fn kills_raising<K: Crystal>(crystal: &K, e: &K::Elem, range: std::ops::RangeInclusive<usize>) -> bool {
    range.into_iter().all(|i| crystal.raise(e, i).is_none())
}

/// Application order of `F_{i,a}`: `a, a+1, ..., i` (empty when `a = 0`).
fn block(i: usize, a: usize) -> Vec<usize> {
    if a == 0 {
        Vec::new()
    } else {
        (a..=i).collect()
    }
}

/// Extension: for extremal `x ∈ X` with `e_i(x) = 0` for `i <= n+1`, and
/// `1 <= b <= a <= n`: `F_{n,a}F_{n+1,b}x ∈ X` and `F_{n+1,b-1}x ∈ X` imply
/// `F_{n,a}F_{n+1,b-1}x ∈ X`.
pub fn check_extension<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Check<K::Elem> {
    let r = crystal.rank();
    let mut cases = 0;
    for e in extremal_members(crystal, x) {
        for n in 1..r.saturating_sub(1) {
            if !kills_raising(crystal, &e, 1..=n + 1) {
                continue;
            }
            for a in 1..=n {
                for b in 1..=a {
                    let h1 = [block(n + 1, b), block(n, a)].concat();
                    let h2 = block(n + 1, b - 1);
                    if !x.contains(&crystal.apply_stars(&e, &h1)) || !x.contains(&crystal.apply_stars(&e, &h2)) {
                        continue;
                    }
                    cases += 1;
                    let concl = [block(n + 1, b - 1), block(n, a)].concat();
                    if !x.contains(&crystal.apply_stars(&e, &concl)) {
                        return Check::fail(cases, Witness::Extension { x: e, n, a, b });
                    }
                }
            }
        }
    }
    Check::pass(cases)
}

/// Gluing: for extremal `x ∈ X` with `e_i(x) = 0` for `a-m <= i <= a+k`, if
/// `f_{a+k}^*...f_a^*(x)` and `f_{a-m}^*...f_{a-1}^*(x)` lie in `X` then so does
/// `f_{a+k}^*...f_a^*f_{a-1}^*(x)` or `f_{a-m}^*...f_{a-1}^*f_a^*(x)`.
pub fn check_gluing<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Check<K::Elem> {
    let r = crystal.rank();
    let mut cases = 0;
    for e in extremal_members(crystal, x) {
        for a in 2..r {
            for k in 0..(r - a) {
                for m in 1..a {
                    if !kills_raising(crystal, &e, a - m..=a + k) {
                        continue;
                    }
                    let up: Vec<usize> = (a..=a + k).collect();
                    let down: Vec<usize> = (a - m..=a - 1).rev().collect();
                    if !x.contains(&crystal.apply_stars(&e, &up)) || !x.contains(&crystal.apply_stars(&e, &down)) {
                        continue;
                    }
                    cases += 1;
                    let left: Vec<usize> = (a - 1..=a + k).collect();
                    let right: Vec<usize> = (a - m..=a).rev().collect();
                    if !x.contains(&crystal.apply_stars(&e, &left)) && !x.contains(&crystal.apply_stars(&e, &right)) {
                        return Check::fail(cases, Witness::Gluing { x: e, a, k, m });
                    }
                }
            }
        }
    }
    Check::pass(cases)
}

/// Components of `X` under edges inside `X`.
pub fn components<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Vec<Vec<K::Elem>> {
    CrystalGraph::induced(crystal, x.iter().cloned()).components()
}

/// Each component has an extremal element whose weight is dominated by the
/// weight of every extremal element of the component.
pub fn check_principal<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Check<K::Elem> {
    let mut cases = 0;
    for comp in components(crystal, x) {
        cases += 1;
        let ext: Vec<(K::Elem, Composition)> = comp
            .iter()
            .filter(|e| crystal.is_extremal(e))
            .map(|e| (e.clone(), crystal.weight(e)))
            .collect();
        let lowest = ext
            .iter()
            .any(|(_, w)| ext.iter().all(|(_, v)| dominance_leq(w, v)));
        if !lowest {
            let minimal = ext
                .iter()
                .filter(|(_, w)| !ext.iter().any(|(_, v)| v != w && dominance_leq(v, w)))
                .map(|(e, _)| e.clone())
                .collect();
            let top = crystal.highest_weight_of(&comp[0]);
            return Check::fail(cases, Witness::Principal { top, minimal });
        }
    }
    Check::pass(cases)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport<T> {
    pub extremal: Check<T>,
    pub ideal: Check<T>,
    pub ideal_decomposed: Check<T>,
    pub principal: Check<T>,
    pub extension: Check<T>,
    pub gluing: Check<T>,
}

impl<T> AxiomReport<T> {
    pub fn all_passed(&self) -> bool {
        [
            &self.extremal,
            &self.ideal,
            &self.ideal_decomposed,
            &self.principal,
            &self.extension,
            &self.gluing,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

impl<T: Describe> AxiomReport<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "extremal": self.extremal.to_json(),
            "ideal": self.ideal.to_json(),
            "ideal_decomposed": self.ideal_decomposed.to_json(),
            "principal": self.principal.to_json(),
            "extension": self.extension.to_json(),
            "gluing": self.gluing.to_json(),
            "all_passed": self.all_passed(),
        })
    }
}

/// Runs every check. `direct_ideal` toggles the exhaustive path search, which is
/// only practical for small ambient crystals; when off, that entry mirrors the
/// decomposed check.
pub fn axiom_report<K: Crystal>(crystal: &K, x: &Members<K::Elem>, direct_ideal: bool) -> AxiomReport<K::Elem> {
    let ideal_decomposed = check_ideal_decomposed(crystal, x);
    let ideal = if direct_ideal {
        check_ideal_direct(crystal, x)
    } else {
        ideal_decomposed.clone()
    };
    AxiomReport {
        extremal: check_extremal(crystal, x),
        ideal,
        ideal_decomposed,
        principal: check_principal(crystal, x),
        extension: check_extension(crystal, x),
        gluing: check_gluing(crystal, x),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyStep<T> {
    pub index: usize,
    pub a: usize,
    pub element: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyResult<T> {
    pub lowest: T,
    /// Blocks `(i, a_i)` for `i = N-1, ..., 1` in application order (`a_i = 0` when skipped).
    pub chain: OperatorChain,
    pub steps: Vec<GreedyStep<T>>,
}

/// Greedy search for the lowest weight element of a connected `X` from its top:
/// for `i = N-1` down to `1`, take the smallest `a` with `F_{i,a}(cur) ∈ X`.
/// If that leaves `cur` unchanged, `a_i = 0`. Leading operators that act
/// trivially on `cur` are dropped from the block, so `a_i` names the first
/// operator that actually moves `cur`.
pub fn greedy_lowest<K: Crystal>(crystal: &K, x: &Members<K::Elem>, top: &K::Elem) -> GreedyResult<K::Elem> {
    let mut cur = top.clone();
    let mut chain = OperatorChain::new();
    let mut steps = Vec::new();
    for idx in (1..crystal.rank()).rev() {
        let hit = (1..=idx).find_map(|a| {
            let y = crystal.apply_stars(&cur, &block(idx, a));
            x.contains(&y).then_some((a, y))
        });
        let (mut a, y) = match hit {
            Some((a, y)) if y != cur => (a, y),
            _ => (0, cur.clone()),
        };
        while a > 0 && a < idx && crystal.lower_star(&cur, a) == cur {
            a += 1;
        }
        chain.then(idx, a);
        cur = y;
        steps.push(GreedyStep {
            index: idx,
            a,
            element: cur.clone(),
        });
    }
    GreedyResult {
        lowest: cur,
        chain,
        steps,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentKey<T> {
    pub top: T,
    /// Weight of the top element.
    pub lambda: Composition,
    /// Weight of the greedy lowest element.
    pub alpha: Composition,
    pub greedy: GreedyResult<T>,
    pub size: usize,
    /// The top is a highest weight element lying in the component.
    pub has_top: bool,
    pub principal: bool,
    /// The component's character equals `kappa_alpha`.
    pub character_matches: bool,
}

impl<T> ComponentKey<T> {
    pub fn valid(&self) -> bool {
        self.has_top && self.principal && self.character_matches
    }
}

/// `sum x^wt` over elements, in `rank` variables.
pub fn crystal_character<K: Crystal>(crystal: &K, elems: impl IntoIterator<Item = K::Elem>) -> Polynomial<BigInt> {
    let mut p = Polynomial::zero(crystal.rank());
    for e in elems {
        p.add_term(crystal.weight(&e).0, BigInt::from(1));
    }
    p
}

/// Splits `X` into components and attaches to each a candidate key index.
pub fn decompose<K: Crystal>(crystal: &K, x: &Members<K::Elem>) -> Vec<ComponentKey<K::Elem>> {
    let mut keys: KeyCache<BigInt> = KeyCache::new(crystal.rank());
    components(crystal, x)
        .into_iter()
        .map(|comp| {
            let set: Members<K::Elem> = comp.iter().cloned().collect();
            let top = crystal.highest_weight_of(&comp[0]);
            let has_top = set.contains(&top);
            let greedy = greedy_lowest(crystal, &set, &top);
            let alpha = crystal.weight(&greedy.lowest);
            let principal = check_principal(crystal, &set).passed;
            let character_matches = keys
                .get(&alpha)
                .map(|k| k == crystal_character(crystal, comp.iter().cloned()))
                .unwrap_or(false);
            ComponentKey {
                lambda: crystal.weight(&top),
                top,
                alpha,
                greedy,
                size: comp.len(),
                has_top,
                principal,
                character_matches,
            }
        })
        .collect()
}
