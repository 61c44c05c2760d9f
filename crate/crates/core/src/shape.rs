//! Partitions, tabloids, tableaux and regions.
//!
//! Locations are 1-based `(row, column)` pairs. Tabloids are stored column-major:
//! column `c` lists its `ζ_c` values top to bottom.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `n`-partition `λ_1 ≥ … ≥ λ_n ≥ 0`, viewed as a shape with `n` rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    column_lengths: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "need n >= 2 parts, got {}",
                parts.len()
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        let width = parts[0];
        let column_lengths = (1..=width)
            .map(|c| parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Ok(Partition {
            parts,
            column_lengths,
        })
    }

    /// Builds the shape whose columns have the given lengths, left to right.
    pub fn from_column_lengths(n: usize, lengths: &[usize]) -> Result<Self> {
        if lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "column lengths {lengths:?} are not weakly decreasing"
            )));
        }
        if let Some(&l) = lengths.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::InvalidPartition(format!(
                "column length {l} outside [1, {n}]"
            )));
        }
        let parts = (1..=n)
            .map(|r| lengths.iter().filter(|&&l| l >= r).count())
            .collect();
        Partition::new(parts)
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of columns, `λ_1`.
    pub fn width(&self) -> usize {
        self.column_lengths.len()
    }

    pub fn column_lengths(&self) -> &[usize] {
        &self.column_lengths
    }

    /// `ζ_c` for a 1-based column index.
    pub fn column_length(&self, c: usize) -> usize {
        self.column_lengths[c - 1]
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.width() == 0
    }

    /// `Q(λ)`: the distinct column lengths smaller than `n`, ascending.
    pub fn column_length_set(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .column_lengths
            .iter()
            .copied()
            .filter(|&l| l < self.n())
            .collect();
        set.into_iter().collect()
    }

    /// `λ'`: the shape with its rightmost column removed.
    pub fn without_last_column(&self) -> Partition {
        let mut lengths = self.column_lengths.clone();
        lengths.pop();
        Partition::from_column_lengths(self.n(), &lengths).expect("sub-shape of a valid shape")
    }

    pub fn contains(&self, loc: Location) -> bool {
        loc.col >= 1 && loc.col <= self.width() && loc.row >= 1 && loc.row <= self.column_length(loc.col)
    }

    /// All locations, column by column, top to bottom.
    pub fn locations(&self) -> impl Iterator<Item = Location> + '_ {
        self.column_lengths
            .iter()
            .enumerate()
            .flat_map(|(c, &len)| (1..=len).map(move |r| Location::new(r, c + 1)))
    }

    /// Every `n`-partition of size at most `max_size`, ordered by size then reverse-lex.
    pub fn all_up_to(n: usize, max_size: usize) -> Vec<Partition> {
        fn rec(n: usize, remaining: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if acc.len() == n {
                if remaining == 0 {
                    out.push(acc.clone());
                }
                return;
            }
            for p in (0..=max_part.min(remaining)).rev() {
                acc.push(p);
                rec(n, remaining - p, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        for size in 0..=max_size {
            let mut parts = Vec::new();
            rec(n, size, size, &mut Vec::new(), &mut parts);
            out.extend(parts.into_iter().map(|p| Partition::new(p).expect("generated partition")));
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A 1-based `(row, column)` location in a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Location {
    pub row: usize,
    pub col: usize,
}

impl Location {
    pub const fn new(row: usize, col: usize) -> Self {
        Location { row, col }
    }
}

// Column-major order, matching the storage layout of tabloids.
impl Ord for Location {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.col, self.row).cmp(&(other.col, other.row))
    }
}

impl PartialOrd for Location {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Location> for [usize; 2] {
    fn from(l: Location) -> Self {
        [l.row, l.col]
    }
}

impl From<[usize; 2]> for Location {
    fn from([row, col]: [usize; 2]) -> Self {
        Location { row, col }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A set of locations inside a shape.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Region {
    locations: BTreeSet<Location>,
}

impl Region {
    pub fn new(locations: impl IntoIterator<Item = Location>) -> Self {
        Region {
            locations: locations.into_iter().collect(),
        }
    }

    pub fn check_within(&self, shape: &Partition) -> Result<()> {
        match self.locations.iter().find(|&&l| !shape.contains(l)) {
            Some(&l) => Err(Error::RegionOutsideShape(l)),
            None => Ok(()),
        }
    }

    pub fn contains(&self, loc: Location) -> bool {
        self.locations.contains(&loc)
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    /// Locations in column-major order.
    pub fn iter(&self) -> impl Iterator<Item = Location> + '_ {
        self.locations.iter().copied()
    }

    /// The complementary region inside `shape`.
    pub fn complement(&self, shape: &Partition) -> Region {
        Region::new(shape.locations().filter(|l| !self.contains(*l)))
    }
}

impl FromIterator<Location> for Region {
    fn from_iter<I: IntoIterator<Item = Location>>(iter: I) -> Self {
        Region::new(iter)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.locations.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A column-strict filling of a shape with values from `[n]`.
///
/// The `Ord` implementation is the total order `≤`: columns are compared
/// left to right, each column as its top-to-bottom value string. For
/// tabloids of one shape it extends the dominance order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tabloid {
    shape: Partition,
    columns: Vec<Vec<usize>>,
}

impl Tabloid {
    pub fn new(shape: Partition, columns: Vec<Vec<usize>>) -> Result<Self> {
        if columns.len() != shape.width() {
            return Err(Error::InvalidTabloid(format!(
                "shape {shape} has {} columns, got {}",
                shape.width(),
                columns.len()
            )));
        }
        let n = shape.n();
        for (c, column) in columns.iter().enumerate() {
            if column.len() != shape.column_length(c + 1) {
                return Err(Error::InvalidTabloid(format!(
                    "column {} has length {}, shape requires {}",
                    c + 1,
                    column.len(),
                    shape.column_length(c + 1)
                )));
            }
            if let Some(&v) = column.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::ValueOutOfRange { value: v, n });
            }
            if column.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NotColumnStrict { column: c + 1 });
            }
        }
        Ok(Tabloid { shape, columns })
    }

    /// Infers the shape from the column lengths.
    pub fn from_columns(n: usize, columns: Vec<Vec<usize>>) -> Result<Self> {
        let lengths: Vec<usize> = columns.iter().map(Vec::len).collect();
        let shape = Partition::from_column_lengths(n, &lengths)?;
        Tabloid::new(shape, columns)
    }

    /// The unique tabloid of the empty shape.
    pub fn empty(n: usize) -> Result<Self> {
        Tabloid::new(Partition::new(vec![0; n])?, Vec::new())
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<usize>> {
        self.columns
    }

    /// Column `c` (1-based).
    pub fn column(&self, c: usize) -> &[usize] {
        &self.columns[c - 1]
    }

    pub fn get(&self, loc: Location) -> usize {
        self.columns[loc.col - 1][loc.row - 1]
    }

    pub fn try_get(&self, loc: Location) -> Option<usize> {
        self.columns.get(loc.col.checked_sub(1)?)?.get(loc.row.checked_sub(1)?).copied()
    }

    /// Row `r` (1-based), left to right.
    pub fn row(&self, r: usize) -> Vec<usize> {
        self.columns.iter().filter_map(|col| col.get(r - 1).copied()).collect()
    }

    pub fn is_tableau(&self) -> bool {
        self.columns
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(right, left)| left <= right))
    }

    fn check_same_shape(&self, other: &Tabloid) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.shape, other.shape)));
        }
        Ok(())
    }

    /// Dominance: `self(r,c) ≤ other(r,c)` at every location.
    pub fn dominated_by(&self, other: &Tabloid) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self
            .columns
            .iter()
            .zip(&other.columns)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x <= y)))
    }

    /// Strict total order `self < other`.
    pub fn total_less(&self, other: &Tabloid) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self.columns < other.columns)
    }

    /// `T'`: the tabloid with its rightmost column removed.
    pub fn without_last_column(&self) -> Tabloid {
        let mut columns = self.columns.clone();
        columns.pop();
        Tabloid {
            shape: self.shape.without_last_column(),
            columns,
        }
    }

    /// Sorts each block of equal-length columns ascending in the total order.
    pub fn with_sorted_columns(&self) -> Tabloid {
        let mut columns = self.columns.clone();
        let mut start = 0;
        while start < columns.len() {
            let len = columns[start].len();
            let end = start + columns[start..].iter().take_while(|c| c.len() == len).count();
            columns[start..end].sort();
            start = end;
        }
        Tabloid {
            shape: self.shape.clone(),
            columns,
        }
    }

    pub fn has_sorted_columns(&self) -> bool {
        self.columns
            .windows(2)
            .all(|w| w[0].len() != w[1].len() || w[0] <= w[1])
    }

    /// All column-strict fillings of `shape`, in total order.
    pub fn enumerate_all(shape: &Partition) -> Vec<Tabloid> {
        enumerate(shape, false)
    }

    /// All semistandard tableaux of `shape` with entries in `[n]`, in total order.
    pub fn enumerate_tableaux(shape: &Partition) -> Vec<Tabloid> {
        enumerate(shape, true)
    }
}

impl Ord for Tabloid {
    fn cmp(&self, other: &Self) -> Ordering {
        self.columns
            .cmp(&other.columns)
            .then_with(|| self.shape.cmp(&other.shape))
    }
}

impl PartialOrd for Tabloid {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, col) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in col.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Strictly increasing `len`-subsets of `[n]` in lexicographic order.
pub(crate) fn increasing_columns(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, len: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == len {
            out.push(acc.clone());
            return;
        }
        let need = len - acc.len();
        for v in start..=n {
            if n - v + 1 < need {
                break;
            }
            acc.push(v);
            rec(v + 1, n, len, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, len, &mut Vec::new(), &mut out);
    out
}

fn enumerate(shape: &Partition, row_weak: bool) -> Vec<Tabloid> {
    let candidates: Vec<Vec<Vec<usize>>> = shape
        .column_lengths()
        .iter()
        .map(|&len| increasing_columns(shape.n(), len))
        .collect();
    let mut out = Vec::new();
    let mut acc: Vec<Vec<usize>> = Vec::with_capacity(shape.width());
    fn rec(
        shape: &Partition,
        candidates: &[Vec<Vec<usize>>],
        row_weak: bool,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Tabloid>,
    ) {
        let c = acc.len();
        if c == candidates.len() {
            out.push(Tabloid {
                shape: shape.clone(),
                columns: acc.clone(),
            });
            return;
        }
        for col in &candidates[c] {
            if row_weak {
                if let Some(prev) = acc.last() {
                    if col.iter().zip(prev).any(|(v, p)| v < p) {
                        continue;
                    }
                }
            }
            acc.push(col.clone());
            rec(shape, candidates, row_weak, acc, out);
            acc.pop();
        }
    }
    rec(shape, &candidates, row_weak, &mut acc, &mut out);
    out
}

/// JSON wire form: `{"n":3,"shape":[2,1,0],"columns":[[1,3],[2]]}`.
///
/// `n` and `shape` may be omitted on input; the shape is then inferred from
/// the column lengths and `n` from the largest value or column length.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TabloidJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Vec<usize>>,
    pub columns: Vec<Vec<usize>>,
}

impl From<&Tabloid> for TabloidJson {
    fn from(t: &Tabloid) -> Self {
        TabloidJson {
            n: Some(t.n()),
            shape: Some(t.shape.parts.clone()),
            columns: t.columns.clone(),
        }
    }
}

impl TryFrom<TabloidJson> for Tabloid {
    type Error = Error;

    fn try_from(json: TabloidJson) -> Result<Self> {
        let inferred_n = || {
            let max_value = json.columns.iter().flatten().copied().max().unwrap_or(0);
            let max_len = json.columns.iter().map(Vec::len).max().unwrap_or(0);
            max_value.max(max_len).max(2)
        };
        match (json.n, json.shape) {
            (n, Some(parts)) => {
                if let Some(n) = n {
                    if n != parts.len() {
                        return Err(Error::InvalidTabloid(format!(
                            "n = {n} but shape has {} parts",
                            parts.len()
                        )));
                    }
                }
                Tabloid::new(Partition::new(parts)?, json.columns)
            }
            (n, None) => Tabloid::from_columns(n.unwrap_or_else(inferred_n), json.columns),
        }
    }
}

impl Serialize for Tabloid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TabloidJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tabloid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = TabloidJson::deserialize(d)?;
        Tabloid::try_from(json).map_err(serde::de::Error::custom)
    }
}
