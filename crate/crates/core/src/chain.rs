//! Q-sets, Q-chains, keys, Q-permutations, reflections and the Bruhat order.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::{increasing_columns, Partition, Tabloid};

/// A nonempty set `Q = {q_1 < … < q_k} ⊆ [n-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSet {
    n: usize,
    q: Vec<usize>,
}

impl QSet {
    pub fn new(n: usize, q: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidQSet(format!("n = {n} must be at least 2")));
        }
        if q.is_empty() {
            return Err(Error::InvalidQSet("Q must be nonempty".into()));
        }
        if q.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidQSet(format!("{q:?} is not strictly increasing")));
        }
        if q[0] == 0 || q[q.len() - 1] >= n {
            return Err(Error::InvalidQSet(format!("{q:?} not inside [1, {}]", n - 1)));
        }
        Ok(QSet { n, q })
    }

    /// `Q = [n-1]`, the complete flag case.
    pub fn full(n: usize) -> Result<Self> {
        QSet::new(n, (1..n).collect())
    }

    /// Every nonempty `Q ⊆ [n-1]`.
    pub fn all(n: usize) -> Vec<QSet> {
        (1u32..(1 << (n - 1)))
            .map(|mask| {
                let q = (1..n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
                QSet { n, q }
            })
            .collect()
    }

    /// The smallest `Q` containing `Q(λ)`; falls back to `{1}` when `Q(λ)` is empty.
    pub fn for_shape(shape: &Partition) -> QSet {
        let q = shape.column_length_set();
        if q.is_empty() {
            QSet { n: shape.n(), q: vec![1] }
        } else {
            QSet { n: shape.n(), q }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.q
    }

    pub fn k(&self) -> usize {
        self.q.len()
    }

    /// The `k+1` carrels as 0-based position ranges.
    pub fn carrels(&self) -> Vec<Range<usize>> {
        let mut bounds = vec![0];
        bounds.extend(&self.q);
        bounds.push(self.n);
        bounds.windows(2).map(|w| w[0]..w[1]).collect()
    }

    /// Carrel index of a 0-based position.
    pub fn carrel_of(&self, position: usize) -> usize {
        self.q.iter().take_while(|&&q| q <= position).count()
    }

    /// Checks `Q(λ) ⊆ Q` for a shape on the same `n`.
    pub fn check_shape(&self, shape: &Partition) -> Result<()> {
        if shape.n() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "shape has n = {}, Q-set has n = {}",
                shape.n(),
                self.n
            )));
        }
        let shape_q = shape.column_length_set();
        if shape_q.iter().all(|l| self.q.contains(l)) {
            Ok(())
        } else {
            Err(Error::ColumnLengthsNotInQ {
                shape_q,
                q: self.q.clone(),
            })
        }
    }
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (n={})", self.q, self.n)
    }
}

/// A Q-chain `P_1 ⊂ … ⊂ P_k ⊆ [n]` with `|P_j| = q_j`; each set is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QChain {
    qset: QSet,
    sets: Vec<Vec<usize>>,
}

impl QChain {
    pub fn new(qset: QSet, mut sets: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != qset.k() {
            return Err(Error::InvalidChain(format!(
                "expected {} sets, got {}",
                qset.k(),
                sets.len()
            )));
        }
        for (j, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidChain(format!("set {} has repeated elements", j + 1)));
            }
            if set.len() != qset.q[j] {
                return Err(Error::InvalidChain(format!(
                    "set {} has {} elements, expected {}",
                    j + 1,
                    set.len(),
                    qset.q[j]
                )));
            }
            if let Some(&v) = set.iter().find(|&&v| v == 0 || v > qset.n) {
                return Err(Error::ValueOutOfRange { value: v, n: qset.n });
            }
        }
        for j in 1..sets.len() {
            if !sets[j - 1].iter().all(|v| sets[j].binary_search(v).is_ok()) {
                return Err(Error::InvalidChain(format!("set {j} is not contained in set {}", j + 1)));
            }
        }
        Ok(QChain { qset, sets })
    }

    /// Infers `Q` from the cardinalities of the sets.
    pub fn from_sets(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let q = sets.iter().map(Vec::len).collect();
        QChain::new(QSet::new(n, q)?, sets)
    }

    /// `P_j = {1, …, q_j}`.
    pub fn minimal(qset: &QSet) -> QChain {
        let sets = qset.q.iter().map(|&q| (1..=q).collect()).collect();
        QChain {
            qset: qset.clone(),
            sets,
        }
    }

    /// `P_j = {n-q_j+1, …, n}`.
    pub fn maximal(qset: &QSet) -> QChain {
        let n = qset.n;
        let sets = qset.q.iter().map(|&q| (n - q + 1..=n).collect()).collect();
        QChain {
            qset: qset.clone(),
            sets,
        }
    }

    /// Every Q-chain, ordered by the total order of their keys.
    pub fn all(qset: &QSet) -> Vec<QChain> {
        let mut out = Vec::new();
        let mut sets = Vec::with_capacity(qset.k());
        fn rec(qset: &QSet, sets: &mut Vec<Vec<usize>>, out: &mut Vec<QChain>) {
            let j = sets.len();
            if j == qset.k() {
                out.push(QChain {
                    qset: qset.clone(),
                    sets: sets.clone(),
                });
                return;
            }
            let prev: Vec<usize> = sets.last().cloned().unwrap_or_default();
            let rest: Vec<usize> = (1..=qset.n).filter(|v| !prev.contains(v)).collect();
            for extra in increasing_columns(rest.len(), qset.q[j] - prev.len()) {
                let mut set = prev.clone();
                set.extend(extra.iter().map(|&i| rest[i - 1]));
                set.sort_unstable();
                sets.push(set);
                rec(qset, sets, out);
                sets.pop();
            }
        }
        rec(qset, &mut sets, &mut out);
        out.sort_by_cached_key(QChain::key);
        out
    }

    pub fn qset(&self) -> &QSet {
        &self.qset
    }

    pub fn n(&self) -> usize {
        self.qset.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// `P_j` for 1-based `j`.
    pub fn set(&self, j: usize) -> &[usize] {
        &self.sets[j - 1]
    }

    /// The key `Y(π)`: columns `Y(P_k), …, Y(P_1)`. Always a tableau.
    pub fn key(&self) -> Tabloid {
        let columns: Vec<Vec<usize>> = self.sets.iter().rev().cloned().collect();
        Tabloid::from_columns(self.n(), columns).expect("keys of chains are column-strict")
    }

    /// The λ-key `Y_λ(π)`: every column of length `q_j` is `Y(P_j)`, every
    /// column of length `n` is `Y([n])`.
    pub fn lambda_key(&self, shape: &Partition) -> Result<Tabloid> {
        self.qset.check_shape(shape)?;
        let n = self.n();
        let columns = shape
            .column_lengths()
            .iter()
            .map(|&len| {
                if len == n {
                    (1..=n).collect()
                } else {
                    let j = self.qset.q.iter().position(|&q| q == len).expect("checked Q(λ) ⊆ Q");
                    self.sets[j].clone()
                }
            })
            .collect();
        Tabloid::new(shape.clone(), columns)
    }

    /// The Q-permutation `π̄`: carrels list `P_1, P_2∖P_1, …, [n]∖P_k`, each increasing.
    pub fn to_qperm(&self) -> Vec<usize> {
        let mut perm = Vec::with_capacity(self.n());
        let mut prev: &[usize] = &[];
        for set in &self.sets {
            perm.extend(set.iter().filter(|v| !prev.contains(v)));
            prev = set;
        }
        perm.extend((1..=self.n()).filter(|v| !prev.contains(v)));
        perm
    }

    /// Inverse of [`QChain::to_qperm`].
    pub fn from_qperm(qset: &QSet, perm: &[usize]) -> Result<Self> {
        let n = qset.n;
        if perm.len() != n {
            return Err(Error::InvalidPermutation(format!("expected length {n}, got {}", perm.len())));
        }
        let mut seen = vec![false; n + 1];
        for &v in perm {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation of [{n}]")));
            }
            seen[v] = true;
        }
        for carrel in qset.carrels() {
            if perm[carrel.clone()].windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidPermutation(format!(
                    "{perm:?} is not increasing within carrel {}..{}",
                    carrel.start + 1,
                    carrel.end
                )));
            }
        }
        let sets = qset.q.iter().map(|&q| perm[..q].to_vec()).collect();
        QChain::new(qset.clone(), sets)
    }

    /// The reflection `σ_ij`: swaps `i` and `j` in every set containing exactly one of them.
    pub fn reflect(&self, i: usize, j: usize) -> Result<QChain> {
        if !(1 <= i && i < j && j <= self.n()) {
            return Err(Error::InvalidReflection { i, j });
        }
        let sets = self
            .sets
            .iter()
            .map(|set| {
                let has_i = set.contains(&i);
                let has_j = set.contains(&j);
                let mut out: Vec<usize> = set.clone();
                if has_i != has_j {
                    let (from, to) = if has_i { (i, j) } else { (j, i) };
                    out.retain(|&v| v != from);
                    out.push(to);
                    out.sort_unstable();
                }
                out
            })
            .collect();
        Ok(QChain {
            qset: self.qset.clone(),
            sets,
        })
    }

    fn check_same_qset(&self, other: &QChain) -> Result<()> {
        if self.qset != other.qset {
            return Err(Error::QSetMismatch(format!("{} vs {}", self.qset, other.qset)));
        }
        Ok(())
    }

    /// Bruhat order `self ⪯ other`, by dominance of keys.
    pub fn bruhat_leq(&self, other: &QChain) -> Result<bool> {
        self.check_same_qset(other)?;
        Ok(self
            .sets
            .iter()
            .zip(&other.sets)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x <= y)))
    }

    pub fn bruhat_less(&self, other: &QChain) -> Result<bool> {
        Ok(self != other && self.bruhat_leq(other)?)
    }

    /// All chains `ρ ⪯ self`.
    pub fn lower_interval(&self) -> Vec<QChain> {
        QChain::all(&self.qset)
            .into_iter()
            .filter(|rho| rho.bruhat_leq(self).expect("same Q-set"))
            .collect()
    }
}

/// Finds a reflection stepping from `from` toward `target` in Bruhat order,
/// so that `target ⪯ σ_ij from ≺ from`.
///
/// First tries the classical witness: the rightmost key column `h` where the
/// keys differ, with `i = min R_h ∖ P_h` and `j = min P_h ∖ R_h`. That pair
/// does not always satisfy the postcondition (e.g. `({1},{1,3}) ≺ ({3},{2,3})`
/// gives `σ_13`), so otherwise the lexicographically first valid `(i, j)` is used.
pub fn step_down(target: &QChain, from: &QChain) -> Result<(usize, usize)> {
    if !target.bruhat_less(from)? {
        return Err(Error::NotStrictlyBelow);
    }
    let valid = |i: usize, j: usize| -> Result<bool> {
        let next = from.reflect(i, j)?;
        Ok(target.bruhat_leq(&next)? && next.bruhat_less(from)?)
    };
    // Key columns run P_k … P_1, so the rightmost differing column is the smallest index.
    let h = (0..target.sets.len())
        .find(|&h| target.sets[h] != from.sets[h])
        .expect("distinct chains differ somewhere");
    let (r, p) = (&target.sets[h], &from.sets[h]);
    let i = *r.iter().find(|v| !p.contains(v)).expect("equal-size distinct sets");
    let j = *p.iter().find(|v| !r.contains(v)).expect("equal-size distinct sets");
    if i < j && valid(i, j)? {
        return Ok((i, j));
    }
    let n = from.n();
    for i in 1..=n {
        for j in i + 1..=n {
            if valid(i, j)? {
                return Ok((i, j));
            }
        }
    }
    unreachable!("a step-down reflection exists whenever target ≺ from")
}

impl fmt::Display for QChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, set) in self.sets.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (i, v) in set.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// JSON wire form: `{"n":3,"q":[1,2],"sets":[[2],[2,3]]}`. `q` is optional on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<usize>>,
    pub sets: Vec<Vec<usize>>,
}

impl TryFrom<ChainJson> for QChain {
    type Error = Error;

    fn try_from(json: ChainJson) -> Result<Self> {
        let chain = QChain::from_sets(json.n, json.sets)?;
        if let Some(q) = json.q {
            if q != chain.qset.q {
                return Err(Error::QSetMismatch(format!(
                    "declared q {q:?} but set sizes give {:?}",
                    chain.qset.q
                )));
            }
        }
        Ok(chain)
    }
}

impl From<&QChain> for ChainJson {
    fn from(c: &QChain) -> Self {
        ChainJson {
            n: c.n(),
            q: Some(c.qset.q.clone()),
            sets: c.sets.clone(),
        }
    }
}

impl Serialize for QChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChainJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        QChain::try_from(ChainJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
