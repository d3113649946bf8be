//! Crystal operators on skew and shuffle tableaux.
//!
//! On a shuffle tableau, an `i` sitting directly above an `i+1` in the same
//! constituent shape is *column paired* with it; such pairs are removed from
//! the reading word before the usual bracket matching (`i+1` opens, `i`
//! closes). Skew tableaux use plain bracket matching.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::combinat::{Composition, Flag};
use crate::error::{Error, Result};
use crate::tableau::{enumerate_tableaux, Shape, Tableau};

/// A finite `gl_N` crystal: letters `1..=rank`, operators `1..rank`.
pub trait Crystal {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn rank(&self) -> usize;

    /// `e_i`, or `None` when it vanishes.
    fn raise(&self, x: &Self::Elem, i: usize) -> Option<Self::Elem>;

    /// `f_i`, or `None`.
    fn lower(&self, x: &Self::Elem, i: usize) -> Option<Self::Elem>;

    fn weight(&self, x: &Self::Elem) -> Composition;

    /// `f_i^*`: lower as long as possible.
    fn lower_star(&self, x: &Self::Elem, i: usize) -> Self::Elem {
        let mut cur = x.clone();
        while let Some(next) = self.lower(&cur, i) {
            cur = next;
        }
        cur
    }

    /// `e_i^*`: raise as long as possible.
    fn raise_star(&self, x: &Self::Elem, i: usize) -> Self::Elem {
        let mut cur = x.clone();
        while let Some(next) = self.raise(&cur, i) {
            cur = next;
        }
        cur
    }

    /// Number of times `f_i` applies.
    fn phi(&self, x: &Self::Elem, i: usize) -> usize {
        let mut n = 0;
        let mut cur = x.clone();
        while let Some(next) = self.lower(&cur, i) {
            cur = next;
            n += 1;
        }
        n
    }

    /// Number of times `e_i` applies.
    fn epsilon(&self, x: &Self::Elem, i: usize) -> usize {
        let mut n = 0;
        let mut cur = x.clone();
        while let Some(next) = self.raise(&cur, i) {
            cur = next;
            n += 1;
        }
        n
    }

    fn is_highest_weight(&self, x: &Self::Elem) -> bool {
        (1..self.rank()).all(|i| self.raise(x, i).is_none())
    }

    /// The highest weight element of the component of `x`.
    fn highest_weight_of(&self, x: &Self::Elem) -> Self::Elem {
        let mut cur = x.clone();
        'outer: loop {
            for i in 1..self.rank() {
                if let Some(next) = self.raise(&cur, i) {
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Weight is a rearrangement of the weight of its component's highest weight element.
    fn is_extremal(&self, x: &Self::Elem) -> bool {
        let mut w = self.weight(x).0;
        let mut h = self.weight(&self.highest_weight_of(x)).0;
        w.sort_unstable();
        h.sort_unstable();
        w == h
    }

    /// Applies `f_{i_1}^*` first, then `f_{i_2}^*`, and so on.
    fn apply_stars(&self, x: &Self::Elem, order: &[usize]) -> Self::Elem {
        order.iter().fold(x.clone(), |cur, &i| self.lower_star(&cur, i))
    }

    fn apply_chain(&self, x: &Self::Elem, chain: &OperatorChain) -> Result<Self::Elem> {
        let order = chain.application_order()?;
        if let Some(&bad) = order.iter().find(|&&i| i == 0 || i >= self.rank()) {
            return Err(Error::InvalidChainBlock(bad, self.rank()));
        }
        Ok(self.apply_stars(x, &order))
    }
}

/// A sequence of blocks `F_{i,a} = f_i^* f_{i-1}^* ... f_a^*`, stored in the order
/// they are applied. `F_{i,0}` is the empty block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OperatorChain(Vec<(usize, usize)>);

impl OperatorChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, a) in &blocks {
            if a > i || i == 0 {
                return Err(Error::InvalidChainBlock(i, a));
            }
        }
        Ok(OperatorChain(blocks))
    }

    /// Appends a block applied after the existing ones.
    pub fn then(&mut self, i: usize, a: usize) {
        self.0.push((i, a));
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Blocks with `a > 0`.
    pub fn nonempty_blocks(&self) -> Vec<(usize, usize)> {
        self.0.iter().copied().filter(|&(_, a)| a > 0).collect()
    }

    /// The indices of the `f^*` operators in the order they act. Two equal
    /// consecutive indices are rejected.
    pub fn application_order(&self) -> Result<Vec<usize>> {
        let order: Vec<usize> = self
            .0
            .iter()
            .filter(|&&(_, a)| a > 0)
            .flat_map(|&(i, a)| a..=i)
            .collect();
        if let Some(w) = order.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedIndex(w[0]));
        }
        Ok(order)
    }

    /// Operator notation, last applied first: `f_1^* f_4^* f_3^*`.
    pub fn notation(&self) -> String {
        let order = self
            .0
            .iter()
            .filter(|&&(_, a)| a > 0)
            .flat_map(|&(i, a)| a..=i)
            .collect::<Vec<_>>();
        if order.is_empty() {
            return "id".into();
        }
        order
            .iter()
            .rev()
            .map(|i| format!("f_{i}^*"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self) -> Value {
        json!(self.0.iter().map(|&(i, a)| [i, a]).collect::<Vec<_>>())
    }
}

impl fmt::Display for OperatorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Cells of `t` carrying unmatched `i`s and unmatched `i+1`s, each list in reading order.
pub fn unpaired(t: &Tableau, i: u32) -> (Vec<usize>, Vec<usize>) {
    let shape = t.shape();
    let shuffle = shape.is_shuffle();
    let column_paired = |k: usize| -> bool {
        if !shuffle {
            return false;
        }
        let v = t.entry(k);
        (v == i && shape.below(k).is_some_and(|b| t.entry(b) == i + 1))
            || (v == i + 1 && shape.above(k).is_some_and(|a| t.entry(a) == i))
    };
    let mut open: Vec<usize> = Vec::new();
    let mut closed: Vec<usize> = Vec::new();
    for &k in shape.reading_order() {
        let v = t.entry(k);
        if (v != i && v != i + 1) || column_paired(k) {
            continue;
        }
        if v == i + 1 {
            open.push(k);
        } else if open.pop().is_none() {
            closed.push(k);
        }
    }
    (closed, open)
}

/// The tableau crystal on all fillings of a shape with entries at most `max_entry`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableauCrystal {
    pub max_entry: u32,
}

impl TableauCrystal {
    pub fn new(max_entry: u32) -> Self {
        TableauCrystal { max_entry }
    }
}

impl Crystal for TableauCrystal {
    type Elem = Tableau;

    fn rank(&self) -> usize {
        self.max_entry as usize
    }

    fn raise(&self, x: &Tableau, i: usize) -> Option<Tableau> {
        if i == 0 || i >= self.rank() {
            return None;
        }
        let i = i as u32;
        let (_, opens) = unpaired(x, i);
        let &k = opens.first()?;
        let out = x.with_entry(k, i);
        debug_assert!(out.is_semistandard(), "e_{i} broke semistandardness");
        Some(out)
    }

    fn lower(&self, x: &Tableau, i: usize) -> Option<Tableau> {
        if i == 0 || i >= self.rank() {
            return None;
        }
        let i = i as u32;
        let (closes, _) = unpaired(x, i);
        let &k = closes.last()?;
        let out = x.with_entry(k, i + 1);
        debug_assert!(out.is_semistandard(), "f_{i} broke semistandardness");
        Some(out)
    }

    fn weight(&self, x: &Tableau) -> Composition {
        x.weight_len(self.rank())
    }
}

/// A set of crystal elements with the `f_i` edges among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph<T> {
    /// Sorted, duplicate-free.
    pub elements: Vec<T>,
    /// `(from, i, to)` meaning `f_i(elements[from]) = elements[to]`, sorted.
    pub edges: Vec<(usize, usize, usize)>,
}

impl<T: Clone + Ord> CrystalGraph<T> {
    /// The subgraph induced by `elements`.
    pub fn induced<K: Crystal<Elem = T>>(crystal: &K, elements: impl IntoIterator<Item = T>) -> Self {
        let set: BTreeSet<T> = elements.into_iter().collect();
        let elements: Vec<T> = set.into_iter().collect();
        let index: BTreeMap<&T, usize> = elements.iter().enumerate().map(|(k, x)| (x, k)).collect();
        let mut edges = Vec::new();
        for (k, x) in elements.iter().enumerate() {
            for i in 1..crystal.rank() {
                if let Some(y) = crystal.lower(x, i) {
                    if let Some(&j) = index.get(&y) {
                        edges.push((k, i, j));
                    }
                }
            }
        }
        edges.sort_unstable();
        CrystalGraph { elements, edges }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    /// Connected components (undirected), each sorted, ordered by smallest element.
    pub fn components(&self) -> Vec<Vec<T>> {
        let n = self.elements.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, _, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp.into_iter().map(|k| self.elements[k].clone()).collect());
        }
        out
    }
}

/// Closure of `{x}` under all `e_i` and `f_i`.
pub fn component<K: Crystal>(crystal: &K, x: &K::Elem) -> CrystalGraph<K::Elem> {
    let mut seen: BTreeSet<K::Elem> = BTreeSet::new();
    let mut queue = VecDeque::from([x.clone()]);
    seen.insert(x.clone());
    while let Some(u) = queue.pop_front() {
        for i in 1..crystal.rank() {
            for v in [crystal.raise(&u, i), crystal.lower(&u, i)].into_iter().flatten() {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    CrystalGraph::induced(crystal, seen)
}

/// Highest weight tableaux among the (optionally flagged) fillings of `shape`.
pub fn highest_weights(shape: &Arc<Shape>, max_entry: u32, flag: Option<&Flag>) -> Result<Vec<Tableau>> {
    let crystal = TableauCrystal::new(max_entry);
    Ok(enumerate_tableaux(shape, max_entry, flag)?
        .into_iter()
        .filter(|t| crystal.is_highest_weight(t))
        .collect())
}

impl CrystalGraph<Tableau> {
    pub fn to_json(&self, crystal: &TableauCrystal) -> Value {
        let nodes: Vec<Value> = self
            .elements
            .iter()
            .enumerate()
            .map(|(k, t)| {
                json!({
                    "id": k,
                    "weight": crystal.weight(t).0,
                    "tableau": t.to_json()["rows"],
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|&(a, i, b)| json!({"from": a, "to": b, "i": i}))
            .collect();
        let shape = self
            .elements
            .first()
            .map_or(Value::Null, |t| t.shape().descriptor());
        json!({"shape": shape, "nodes": nodes, "edges": edges})
    }

    /// Graphviz description: one node per tableau (rows separated by `/`),
    /// one edge per `f_i`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n  node [shape=box];\n");
        for (k, t) in self.elements.iter().enumerate() {
            let label = t.to_string().replace('\n', " / ");
            s.push_str(&format!("  n{k} [label=\"{label}\"];\n"));
        }
        for &(a, i, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b} [label=\"f{i}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}
