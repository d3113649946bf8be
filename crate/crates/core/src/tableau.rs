//! Skew and shuffle shapes, semistandard fillings, flags and enumeration.
//!
//! A shape is flattened into a *layout*: a list of rows of cells, each cell
//! knowing its absolute column and the cell directly above it in its own
//! constituent skew shape. Skew shapes use their own rows and columns. For a
//! shuffle shape `(l/m) * (n/r)`, row `k` of the first shape sits on layout
//! row `2k` with original column `c` at absolute column `2c - 1`, and row `k`
//! of the second shape sits on layout row `2k + 1` at absolute column `2c`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::combinat::{Composition, Flag, Partition};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        let ok = inner.len() <= outer.len()
            && (0..inner.len()).all(|i| inner.part(i) <= outer.part(i));
        if !ok {
            return Err(Error::BadSkew {
                outer: outer.parts().to_vec(),
                inner: inner.parts().to_vec(),
            });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    /// Original columns (1-based) of row `i` (0-based).
    fn row_columns(&self, i: usize) -> std::ops::RangeInclusive<u32> {
        self.inner.part(i) + 1..=self.outer.part(i)
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "({})", self.outer)
        } else {
            write!(f, "({})/({})", self.outer, self.inner)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Skew(SkewShape),
    Shuffle(SkewShape, SkewShape),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    /// Layout row (0-based).
    pub row: usize,
    /// Absolute column (1-based).
    pub col: u32,
    /// 0 for a skew shape or the first shuffle factor, 1 for the second factor.
    pub constituent: usize,
    /// Row within the constituent shape (0-based).
    pub orig_row: usize,
    /// Column within the constituent shape (1-based).
    pub orig_col: u32,
}

#[derive(Clone, Debug)]
pub struct Shape {
    kind: ShapeKind,
    cells: Vec<Cell>,
    row_starts: Vec<usize>,
    above: Vec<Option<usize>>,
    below: Vec<Option<usize>>,
    reading: Vec<usize>,
}

impl PartialEq for Shape {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Shape {}

impl Hash for Shape {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state)
    }
}

impl Shape {
    pub fn skew(s: SkewShape) -> Arc<Shape> {
        let rows: Vec<Vec<(u32, u32)>> = (0..s.rows())
            .map(|i| s.row_columns(i).map(|c| (c, c)).collect())
            .collect();
        let layout = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| (0, i, r))
            .collect();
        Arc::new(Self::build(ShapeKind::Skew(s), layout))
    }

    pub fn straight(lambda: Partition) -> Arc<Shape> {
        Self::skew(SkewShape::straight(lambda))
    }

    pub fn shuffle(first: SkewShape, second: SkewShape) -> Arc<Shape> {
        let n = first.rows().max(second.rows());
        let mut layout = Vec::with_capacity(2 * n);
        for i in 0..n {
            let a: Vec<(u32, u32)> = if i < first.rows() {
                first.row_columns(i).map(|c| (c, 2 * c - 1)).collect()
            } else {
                Vec::new()
            };
            let b: Vec<(u32, u32)> = if i < second.rows() {
                second.row_columns(i).map(|c| (c, 2 * c)).collect()
            } else {
                Vec::new()
            };
            layout.push((0, i, a));
            layout.push((1, i, b));
        }
        Arc::new(Self::build(ShapeKind::Shuffle(first, second), layout))
    }

    fn build(kind: ShapeKind, layout: Vec<(usize, usize, Vec<(u32, u32)>)>) -> Shape {
        let mut cells = Vec::new();
        let mut row_starts = Vec::with_capacity(layout.len() + 1);
        for (row, (constituent, orig_row, cols)) in layout.into_iter().enumerate() {
            row_starts.push(cells.len());
            for (orig_col, col) in cols {
                cells.push(Cell {
                    row,
                    col,
                    constituent,
                    orig_row,
                    orig_col,
                });
            }
        }
        row_starts.push(cells.len());
        let find = |constituent: usize, orig_row: usize, orig_col: u32| {
            cells.iter().position(|c| {
                c.constituent == constituent && c.orig_row == orig_row && c.orig_col == orig_col
            })
        };
        let above: Vec<Option<usize>> = cells
            .iter()
            .map(|c| {
                c.orig_row
                    .checked_sub(1)
                    .and_then(|r| find(c.constituent, r, c.orig_col))
            })
            .collect();
        let below: Vec<Option<usize>> = cells
            .iter()
            .map(|c| find(c.constituent, c.orig_row + 1, c.orig_col))
            .collect();
        let nrows = row_starts.len() - 1;
        let reading = (0..nrows)
            .rev()
            .flat_map(|r| row_starts[r]..row_starts[r + 1])
            .collect();
        Shape {
            kind,
            cells,
            row_starts,
            above,
            below,
            reading,
        }
    }

    pub fn kind(&self) -> &ShapeKind {
        &self.kind
    }

    pub fn is_shuffle(&self) -> bool {
        matches!(self.kind, ShapeKind::Shuffle(..))
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn layout_rows(&self) -> usize {
        self.row_starts.len() - 1
    }

    /// Flat cell indices of layout row `r`.
    pub fn row(&self, r: usize) -> std::ops::Range<usize> {
        self.row_starts[r]..self.row_starts[r + 1]
    }

    /// The cell directly above `k` in its own constituent shape.
    pub fn above(&self, k: usize) -> Option<usize> {
        self.above[k]
    }

    /// The cell directly below `k` in its own constituent shape.
    pub fn below(&self, k: usize) -> Option<usize> {
        self.below[k]
    }

    /// Cells in reading order: layout rows bottom to top, each left to right.
    pub fn reading_order(&self) -> &[usize] {
        &self.reading
    }

    fn left(&self, k: usize) -> Option<usize> {
        (k > 0 && self.cells[k - 1].row == self.cells[k].row).then(|| k - 1)
    }

    /// Number of constituent rows; a flag must have at least this many bounds.
    pub fn flag_rows(&self) -> usize {
        match &self.kind {
            ShapeKind::Skew(s) => s.rows(),
            ShapeKind::Shuffle(a, b) => a.rows().max(b.rows()),
        }
    }

    pub fn descriptor(&self) -> Value {
        fn skew(s: &SkewShape) -> Value {
            json!({"outer": s.outer.parts(), "inner": s.inner.parts()})
        }
        match &self.kind {
            ShapeKind::Skew(s) => {
                let mut v = skew(s);
                v["kind"] = json!("skew");
                v
            }
            ShapeKind::Shuffle(a, b) => json!({"kind": "shuffle", "first": skew(a), "second": skew(b)}),
        }
    }

    pub fn from_descriptor(v: &Value) -> Result<Arc<Shape>> {
        fn part(v: &Value, key: &str) -> Result<Partition> {
            let parts: Vec<u32> = match v.get(key) {
                None | Some(Value::Null) => Vec::new(),
                Some(x) => serde_json::from_value(x.clone())
                    .map_err(|e| Error::Parse(format!("{key}: {e}")))?,
            };
            Partition::new(parts)
        }
        fn skew(v: &Value) -> Result<SkewShape> {
            SkewShape::new(part(v, "outer")?, part(v, "inner")?)
        }
        match v.get("kind").and_then(Value::as_str) {
            Some("skew") | None => Ok(Shape::skew(skew(v)?)),
            Some("shuffle") => {
                let a = v.get("first").ok_or_else(|| Error::Parse("missing first".into()))?;
                let b = v.get("second").ok_or_else(|| Error::Parse("missing second".into()))?;
                Ok(Shape::shuffle(skew(a)?, skew(b)?))
            }
            Some(k) => Err(Error::Parse(format!("unknown shape kind {k:?}"))),
        }
    }
}

/// Per-layout-row upper bounds on entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowBounds(Vec<u32>);

impl RowBounds {
    pub fn unbounded(shape: &Shape) -> Self {
        RowBounds(vec![u32::MAX; shape.layout_rows()])
    }

    /// Row `i` of a skew shape gets `b_i`; shuffle rows get the doubled flag.
    pub fn from_flag(shape: &Shape, flag: &Flag) -> Result<Self> {
        if flag.len() < shape.flag_rows() {
            return Err(Error::InvalidFlag(flag.bounds().to_vec()));
        }
        let v = match shape.kind() {
            ShapeKind::Skew(_) => (0..shape.layout_rows()).map(|r| flag.bound(r)).collect(),
            ShapeKind::Shuffle(..) => (0..shape.layout_rows()).map(|r| flag.bound(r / 2)).collect(),
        };
        Ok(RowBounds(v))
    }

    /// Shuffle shapes only: the first factor's rows use `b`, the second's use `b2`.
    /// The flags must interlace: `b_i <= b2_{i+1}` and `b2_i <= b_{i+1}`.
    pub fn interlaced(shape: &Shape, b: &Flag, b2: &Flag) -> Result<Self> {
        if !shape.is_shuffle() {
            return Err(Error::Dimension("interlaced flags need a shuffle shape".into()));
        }
        let n = shape.flag_rows();
        if b.len() < n || b2.len() < n {
            return Err(Error::InvalidFlag(b.bounds().to_vec()));
        }
        for i in 0..n.saturating_sub(1) {
            if b.bound(i) > b2.bound(i + 1) || b2.bound(i) > b.bound(i + 1) {
                return Err(Error::InvalidFlag(b2.bounds().to_vec()));
            }
        }
        let v = (0..shape.layout_rows())
            .map(|r| if r % 2 == 0 { b.bound(r / 2) } else { b2.bound(r / 2) })
            .collect();
        Ok(RowBounds(v))
    }

    pub fn bound(&self, row: usize) -> u32 {
        self.0[row]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct Tableau {
    shape: Arc<Shape>,
    entries: Vec<u32>,
}

impl PartialEq for Tableau {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
            && (Arc::ptr_eq(&self.shape, &other.shape) || self.shape == other.shape)
    }
}

impl Eq for Tableau {}

impl Hash for Tableau {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state)
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Tableaux compare by their entries in row-major layout order.
impl Ord for Tableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl Tableau {
    /// Wraps raw row-major entries, checking the semistandard conditions.
    pub fn new(shape: Arc<Shape>, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != shape.size() {
            return Err(Error::Dimension(format!(
                "{} entries for {} cells",
                entries.len(),
                shape.size()
            )));
        }
        let t = Tableau { shape, entries };
        if !t.is_semistandard() {
            return Err(Error::Parse(format!("not semistandard: {:?}", t.entries)));
        }
        Ok(t)
    }

    /// Per layout row, the entries of its cells (no placeholders for gaps).
    pub fn from_rows(shape: Arc<Shape>, rows: &[Vec<u32>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(shape.size());
        for r in 0..shape.layout_rows() {
            let want = shape.row(r).len();
            let got = rows.get(r).map(Vec::as_slice).unwrap_or(&[]);
            if got.len() != want {
                return Err(Error::Dimension(format!("row {} needs {want} entries", r + 1)));
            }
            entries.extend_from_slice(got);
        }
        if rows.len() > shape.layout_rows() && rows[shape.layout_rows()..].iter().any(|r| !r.is_empty()) {
            return Err(Error::Dimension("too many rows".into()));
        }
        Tableau::new(shape, entries)
    }

    pub(crate) fn from_raw(shape: Arc<Shape>, entries: Vec<u32>) -> Self {
        Tableau { shape, entries }
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, k: usize) -> u32 {
        self.entries[k]
    }

    pub(crate) fn with_entry(&self, k: usize, v: u32) -> Tableau {
        let mut entries = self.entries.clone();
        entries[k] = v;
        Tableau {
            shape: Arc::clone(&self.shape),
            entries,
        }
    }

    pub fn is_semistandard(&self) -> bool {
        let s = &self.shape;
        (0..s.size()).all(|k| {
            self.entries[k] >= 1
                && s.left(k).map_or(true, |l| self.entries[l] <= self.entries[k])
                && s.above(k).map_or(true, |a| self.entries[a] < self.entries[k])
        })
    }

    pub fn respects(&self, bounds: &RowBounds) -> bool {
        self.shape
            .cells()
            .iter()
            .zip(&self.entries)
            .all(|(c, &v)| v <= bounds.bound(c.row))
    }

    /// Rows per layout row (cell entries only).
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.shape.layout_rows())
            .map(|r| self.shape.row(r).map(|k| self.entries[k]).collect())
            .collect()
    }

    pub fn reading_word(&self) -> Vec<u32> {
        self.shape
            .reading_order()
            .iter()
            .map(|&k| self.entries[k])
            .collect()
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Multiplicities of `1..=max_entry`.
    pub fn weight(&self) -> Composition {
        self.weight_len(self.max_entry() as usize)
    }

    /// Multiplicities of `1..=len` (entries above `len` are ignored).
    pub fn weight_len(&self, len: usize) -> Composition {
        let mut w = vec![0; len];
        for &v in &self.entries {
            if (v as usize) <= len {
                w[v as usize - 1] += 1;
            }
        }
        Composition::new(w)
    }

    /// Rows over absolute columns with `null` in the gaps.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.shape.layout_rows())
            .map(|r| {
                let cells = self.shape.row(r);
                let last = cells.clone().map(|k| self.shape.cells()[k].col).max().unwrap_or(0);
                let mut out = vec![Value::Null; last as usize];
                for k in cells {
                    out[self.shape.cells()[k].col as usize - 1] = json!(self.entries[k]);
                }
                Value::Array(out)
            })
            .collect();
        json!({"shape": self.shape.descriptor(), "rows": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let shape = Shape::from_descriptor(v.get("shape").ok_or_else(|| Error::Parse("missing shape".into()))?)?;
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing rows".into()))?;
        let mut entries = vec![0; shape.size()];
        for (k, c) in shape.cells().iter().enumerate() {
            let x = rows
                .get(c.row)
                .and_then(|r| r.get(c.col as usize - 1))
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("missing entry at row {}, column {}", c.row + 1, c.col)))?;
            entries[k] = x as u32;
        }
        Tableau::new(shape, entries)
    }
}

impl fmt::Display for Tableau {
    /// One line per layout row; gaps in the absolute grid are shown as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.max_entry().to_string().len();
        let lines: Vec<String> = (0..self.shape.layout_rows())
            .map(|r| {
                let mut slots: Vec<String> = Vec::new();
                for k in self.shape.row(r) {
                    let col = self.shape.cells()[k].col as usize;
                    while slots.len() + 1 < col {
                        slots.push(format!("{:>width$}", "."));
                    }
                    slots.push(format!("{:>width$}", self.entries[k]));
                }
                slots.join(" ")
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// All semistandard fillings with entries in `1..=max_entry` within `bounds`,
/// in lexicographic order of the row-major entry vector.
pub fn enumerate_with_bounds(shape: &Arc<Shape>, max_entry: u32, bounds: &RowBounds) -> Vec<Tableau> {
    let n = shape.size();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(
        k: usize,
        shape: &Arc<Shape>,
        max_entry: u32,
        bounds: &RowBounds,
        cur: &mut Vec<u32>,
        out: &mut Vec<Tableau>,
    ) {
        if k == shape.size() {
            out.push(Tableau::from_raw(Arc::clone(shape), cur.clone()));
            return;
        }
        let lo = shape
            .left(k)
            .map_or(1, |l| cur[l])
            .max(shape.above(k).map_or(1, |a| cur[a] + 1));
        let hi = max_entry.min(bounds.bound(shape.cells()[k].row));
        for v in lo..=hi {
            cur[k] = v;
            rec(k + 1, shape, max_entry, bounds, cur, out);
        }
    }
    rec(0, shape, max_entry, bounds, &mut cur, &mut out);
    out
}

/// `SSYT` of `shape` with entries at most `max_entry`, optionally flagged
/// (doubled flag on shuffle shapes).
pub fn enumerate_tableaux(shape: &Arc<Shape>, max_entry: u32, flag: Option<&Flag>) -> Result<Vec<Tableau>> {
    let bounds = match flag {
        Some(f) => RowBounds::from_flag(shape, f)?,
        None => RowBounds::unbounded(shape),
    };
    Ok(enumerate_with_bounds(shape, max_entry, &bounds))
}

/// A shape with a flag and an entry bound: the ambient data of a flagged set.
#[derive(Clone, Debug)]
pub struct FlaggedSet {
    pub shape: Arc<Shape>,
    pub bounds: RowBounds,
    pub max_entry: u32,
}

impl FlaggedSet {
    pub fn new(shape: Arc<Shape>, flag: &Flag, max_entry: u32) -> Result<Self> {
        let bounds = RowBounds::from_flag(&shape, flag)?;
        Ok(FlaggedSet {
            shape,
            bounds,
            max_entry,
        })
    }

    pub fn contains(&self, t: &Tableau) -> bool {
        **t.shape() == *self.shape && t.max_entry() <= self.max_entry && t.respects(&self.bounds)
    }

    pub fn elements(&self) -> Vec<Tableau> {
        enumerate_with_bounds(&self.shape, self.max_entry, &self.bounds)
    }
}

/// `sum x^wt(T)` over a set of tableaux.
pub fn character<'a, C: Coefficient>(
    tableaux: impl IntoIterator<Item = &'a Tableau>,
    total_vars: usize,
) -> Result<Polynomial<C>> {
    let mut p = Polynomial::zero(total_vars);
    for t in tableaux {
        if t.max_entry() as usize > total_vars {
            return Err(Error::VariableMismatch(t.max_entry() as usize, total_vars));
        }
        p.add_term(t.weight_len(total_vars).0, C::one());
    }
    Ok(p)
}

/// Flagged (skew or shuffle) Schur polynomial by tableau enumeration.
pub fn flagged_schur<C: Coefficient>(shape: &Arc<Shape>, flag: &Flag, total_vars: usize) -> Result<Polynomial<C>> {
    let bounds = RowBounds::from_flag(shape, flag)?;
    let max = flag.max_bound().min(total_vars as u32);
    let ts = enumerate_with_bounds(shape, max, &bounds);
    character(&ts, total_vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn skew(o: &[u32], i: &[u32]) -> SkewShape {
        SkewShape::new(part(o), part(i)).unwrap()
    }

    #[test]
    fn straight_21_counts() {
        let s = Shape::straight(part(&[2, 1]));
        assert_eq!(enumerate_tableaux(&s, 3, None).unwrap().len(), 8);
        let flag = Flag::new(vec![2, 3]).unwrap();
        assert_eq!(enumerate_tableaux(&s, 3, Some(&flag)).unwrap().len(), 5);
        assert_eq!(enumerate_tableaux(&Shape::straight(part(&[1])), 1, None).unwrap().len(), 1);
    }

    #[test]
    fn skew_weight_and_reading_word() {
        let s = Shape::skew(skew(&[4, 2, 2], &[2, 1]));
        let t = Tableau::from_rows(s, &[vec![1, 2], vec![2], vec![2, 3]]).unwrap();
        assert_eq!(t.weight(), Composition::new(vec![1, 3, 1]));
        assert_eq!(t.reading_word(), vec![2, 3, 2, 1, 2]);
        let u = Tableau::from_rows(Shape::straight(part(&[2, 1])), &[vec![1, 1], vec![2]]).unwrap();
        assert_eq!(u.reading_word(), vec![2, 1, 1]);
    }

    #[test]
    fn shuffle_layout_and_reading_word() {
        let s = Shape::shuffle(skew(&[3, 2], &[]), skew(&[2, 1], &[]));
        let cols: Vec<u32> = s.cells().iter().map(|c| c.col).collect();
        assert_eq!(cols, vec![1, 3, 5, 2, 4, 1, 3, 2]);
        let t = Tableau::from_rows(s, &[vec![1, 1, 1], vec![1, 2], vec![2, 2], vec![3]]).unwrap();
        assert_eq!(t.reading_word(), vec![3, 2, 2, 1, 2, 1, 1, 1]);
        assert_eq!(t.to_string(), "1 . 1 . 1\n. 1 . 2\n2 . 2\n. 3");
    }

    #[test]
    fn json_round_trip() {
        let s = Shape::shuffle(skew(&[3, 2], &[1]), skew(&[2, 1], &[]));
        for t in enumerate_tableaux(&s, 3, None).unwrap().into_iter().take(20) {
            let back = Tableau::from_json(&t.to_json()).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn rejects_non_semistandard() {
        let s = Shape::straight(part(&[2, 1]));
        assert!(Tableau::from_rows(s.clone(), &[vec![2, 1], vec![3]]).is_err());
        assert!(Tableau::from_rows(s, &[vec![1, 1], vec![1]]).is_err());
    }

    #[test]
    fn unflagged_character_is_schur() {
        let s = Shape::straight(part(&[2, 1]));
        let p: Polynomial<BigInt> = flagged_schur(&s, &Flag::new(vec![3, 3]).unwrap(), 3).unwrap();
        let k: Polynomial<BigInt> =
            crate::keys::key_polynomial(&Composition::new(vec![0, 1, 2]), 3).unwrap();
        assert_eq!(p, k);
    }
}
