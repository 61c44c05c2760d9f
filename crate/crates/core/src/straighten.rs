//! Linear combinations of tabloids, μ-shuffles, the master determinantal
//! identity, and straightening into tableau and Demazure bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::QChain;
use crate::error::{Error, Result};
use crate::linalg::{MonomialEvaluator, Rational, RationalMatrix};
use crate::scan::scan;
use crate::shape::{Location, Partition, Region, Tabloid, TabloidJson};

/// A finite rational combination of tabloids of one shape. Zero coefficients
/// are never stored; iteration follows the total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCombination {
    shape: Partition,
    terms: BTreeMap<Tabloid, Rational>,
}

impl LinearCombination {
    pub fn zero(shape: Partition) -> Self {
        LinearCombination {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_tabloid(t: Tabloid) -> Self {
        let mut c = LinearCombination::zero(t.shape().clone());
        c.terms.insert(t, Rational::one());
        c
    }

    pub fn from_terms(shape: Partition, terms: impl IntoIterator<Item = (Tabloid, Rational)>) -> Result<Self> {
        let mut c = LinearCombination::zero(shape);
        for (t, a) in terms {
            c.add_term(t, a)?;
        }
        Ok(c)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as `is_zero`.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Tabloid, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Tabloid) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, t: Tabloid, a: Rational) -> Result<()> {
        if t.shape() != &self.shape {
            return Err(Error::ShapeMismatch(format!(
                "term of shape {} added to a combination of shape {}",
                t.shape(),
                self.shape
            )));
        }
        if a.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(t);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(a);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += a;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &LinearCombination, factor: &Rational) -> Result<()> {
        for (t, a) in &other.terms {
            self.add_term(t.clone(), a * factor)?;
        }
        Ok(())
    }

    pub fn scaled(&self, factor: &Rational) -> LinearCombination {
        let mut out = LinearCombination::zero(self.shape.clone());
        out.add_scaled(self, factor).expect("same shape");
        out
    }

    fn pop_largest(&mut self) -> Option<(Tabloid, Rational)> {
        self.terms.pop_last()
    }

    /// Value of the combination of monomials at `f`.
    pub fn evaluate(&self, f: &RationalMatrix) -> Result<Rational> {
        self.evaluate_with(&MonomialEvaluator::new(f)?)
    }

    pub fn evaluate_with(&self, ev: &MonomialEvaluator<'_>) -> Result<Rational> {
        let mut sum = Rational::zero();
        for (t, a) in &self.terms {
            let v = ev.eval(t)?;
            if !v.is_zero() {
                sum += a * v;
            }
        }
        Ok(sum)
    }

    /// Builds a combination from its JSON term list; `shape` is required only
    /// when the list is empty.
    pub fn from_json(terms: Vec<TermJson>, shape: Option<Partition>) -> Result<Self> {
        let mut parsed = Vec::with_capacity(terms.len());
        for term in terms {
            let t = Tabloid::try_from(term.tabloid)?;
            let a = crate::linalg::parse_rational(&term.coefficient)?;
            parsed.push((t, a));
        }
        let shape = match (shape, parsed.first()) {
            (Some(s), _) => s,
            (None, Some((t, _))) => t.shape().clone(),
            (None, None) => return Err(Error::Parse("empty combination needs a shape".into())),
        };
        LinearCombination::from_terms(shape, parsed)
    }
}

/// One serialized term: `{"tabloid": …, "coefficient": "p/q"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub tabloid: TabloidJson,
    pub coefficient: String,
}

impl Serialize for LinearCombination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(t, a)| TermJson {
                tabloid: TabloidJson::from(t),
                coefficient: a.to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, a)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({a})*{t}")?;
        }
        Ok(())
    }
}

/// One μ-shuffle `σ`: its sign `ε(σ)` and the resulting tabloid `T_σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleTerm {
    pub sign: i32,
    pub result: Tabloid,
}

/// All μ-shuffles of `t`, identity first.
///
/// A shuffle redistributes the values at the locations of `mu` among the
/// columns (each column keeping its number of μ-locations and staying
/// duplicate-free), then sorts each column. The sign is the parity of the
/// induced permutation of locations.
pub fn mu_shuffles(t: &Tabloid, mu: &Region) -> Result<Vec<ShuffleTerm>> {
    mu.check_within(t.shape())?;
    let shape = t.shape();
    let width = shape.width();
    let mu_locs: Vec<Location> = mu.iter().collect();
    let mut capacity = vec![0usize; width];
    for loc in &mu_locs {
        capacity[loc.col - 1] += 1;
    }
    let fixed: Vec<Vec<Location>> = (1..=width)
        .map(|c| {
            (1..=shape.column_length(c))
                .map(|r| Location::new(r, c))
                .filter(|l| !mu.contains(*l))
                .collect()
        })
        .collect();

    let index: HashMap<Location, usize> = shape.locations().enumerate().map(|(i, l)| (l, i)).collect();
    let mut groups: Vec<Vec<Location>> = vec![Vec::new(); width];
    let mut out = Vec::new();
    let mut ctx = ShuffleCtx {
        t,
        mu_locs: &mu_locs,
        capacity: &capacity,
        fixed: &fixed,
        index: &index,
    };
    ctx.assign(0, &mut groups, &mut out)?;
    if let Some(pos) = out.iter().position(|(identity, _)| *identity) {
        let id = out.remove(pos);
        out.insert(0, id);
    }
    Ok(out.into_iter().map(|(_, term)| term).collect())
}

struct ShuffleCtx<'a> {
    t: &'a Tabloid,
    mu_locs: &'a [Location],
    capacity: &'a [usize],
    fixed: &'a [Vec<Location>],
    index: &'a HashMap<Location, usize>,
}

impl ShuffleCtx<'_> {
    fn column_has(&self, groups: &[Vec<Location>], j: usize, v: usize) -> bool {
        self.fixed[j].iter().chain(&groups[j]).any(|&l| self.t.get(l) == v)
    }

    fn assign(
        &mut self,
        k: usize,
        groups: &mut Vec<Vec<Location>>,
        out: &mut Vec<(bool, ShuffleTerm)>,
    ) -> Result<()> {
        if k == self.mu_locs.len() {
            out.push(self.finish(groups)?);
            return Ok(());
        }
        let loc = self.mu_locs[k];
        let v = self.t.get(loc);
        for j in 0..groups.len() {
            if groups[j].len() < self.capacity[j] && !self.column_has(groups, j, v) {
                groups[j].push(loc);
                self.assign(k + 1, groups, out)?;
                groups[j].pop();
            }
        }
        Ok(())
    }

    fn finish(&self, groups: &[Vec<Location>]) -> Result<(bool, ShuffleTerm)> {
        let n_locs = self.index.len();
        let mut target = vec![0usize; n_locs];
        let mut columns = Vec::with_capacity(groups.len());
        let mut identity = true;
        for (j, group) in groups.iter().enumerate() {
            identity &= group.iter().all(|l| l.col == j + 1);
            let mut members: Vec<Location> = self.fixed[j].iter().chain(group).copied().collect();
            members.sort_by_key(|&l| self.t.get(l));
            for (row, l) in members.iter().enumerate() {
                target[self.index[l]] = self.index[&Location::new(row + 1, j + 1)];
            }
            columns.push(members.iter().map(|&l| self.t.get(l)).collect());
        }
        let result = Tabloid::new(self.t.shape().clone(), columns)?;
        Ok((
            identity,
            ShuffleTerm {
                sign: permutation_sign(&target),
                result,
            },
        ))
    }
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `Σ ε(σ) T_σ` with equal tabloids merged.
pub fn shuffle_sum(t: &Tabloid, mu: &Region) -> Result<LinearCombination> {
    let mut sum = LinearCombination::zero(t.shape().clone());
    for term in mu_shuffles(t, mu)? {
        sum.add_term(term.result, Rational::from_integer(term.sign.into()))?;
    }
    Ok(sum)
}

/// Result of comparing `|M_μ(T)|` with `Σ ε(σ)τ_σ` at one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterCheck {
    pub holds: bool,
    /// The global sign relating the two sides; `None` when both vanish.
    pub sign: Option<i32>,
    pub determinant: Rational,
    pub shuffle_sum: Rational,
}

/// The compound matrix `M_μ(T)` evaluated at `f`.
///
/// Block row `i` has one row per initial column `a ≤ ζ_i`; block column `j`
/// lists the μ-values of column `j` and then its remaining values. A μ-value
/// `v` contributes `f[v][a]` to every block row, a non-μ value only to its own.
pub fn master_matrix(t: &Tabloid, mu: &Region, f: &RationalMatrix) -> Result<RationalMatrix> {
    mu.check_within(t.shape())?;
    check_square(t, f)?;
    let shape = t.shape();
    let width = shape.width();
    let size = shape.size();
    // (value, is μ, home block) for each matrix column
    let mut cols = Vec::with_capacity(size);
    for c in 1..=width {
        let locs: Vec<Location> = (1..=shape.column_length(c)).map(|r| Location::new(r, c)).collect();
        for &l in locs.iter().filter(|l| mu.contains(**l)) {
            cols.push((t.get(l), true, c));
        }
        for &l in locs.iter().filter(|l| !mu.contains(**l)) {
            cols.push((t.get(l), false, c));
        }
    }
    let mut m = RationalMatrix::zeros(size, size);
    let mut row = 0;
    for i in 1..=width {
        for a in 0..shape.column_length(i) {
            for (k, &(v, in_mu, home)) in cols.iter().enumerate() {
                if in_mu || home == i {
                    m.set(row, k, f.get(v - 1, a).clone());
                }
            }
            row += 1;
        }
    }
    Ok(m)
}

fn check_square(t: &Tabloid, f: &RationalMatrix) -> Result<()> {
    if f.rows() != t.n() || f.cols() != t.n() {
        return Err(Error::DimensionMismatch(format!(
            "tabloid on n = {} with a {}x{} matrix",
            t.n(),
            f.rows(),
            f.cols()
        )));
    }
    Ok(())
}

/// Checks `|M_μ(T)| = ±Σ ε(σ)τ_σ` at `f`.
pub fn verify_master_identity(t: &Tabloid, mu: &Region, f: &RationalMatrix) -> Result<MasterCheck> {
    let det = master_matrix(t, mu, f)?.determinant()?;
    let sum = shuffle_sum(t, mu)?.evaluate(f)?;
    let (holds, sign) = if sum.is_zero() {
        (det.is_zero(), None)
    } else if det == sum {
        (true, Some(1))
    } else if det == -sum.clone() {
        (true, Some(-1))
    } else {
        (false, None)
    };
    Ok(MasterCheck {
        holds,
        sign,
        determinant: det,
        shuffle_sum: sum,
    })
}

/// `{(i,c) | r ≤ i ≤ ζ_c} ∪ {(j,c+1) | 1 ≤ j ≤ r}`.
pub fn snake_region(shape: &Partition, r: usize, c: usize) -> Result<Region> {
    if c == 0 || c + 1 > shape.width() || r == 0 || r > shape.column_length(c + 1) {
        return Err(Error::IndexOutOfRange(format!(
            "snake at row {r}, column {c} of shape {shape}"
        )));
    }
    Ok((r..=shape.column_length(c))
        .map(|i| Location::new(i, c))
        .chain((1..=r).map(|j| Location::new(j, c + 1)))
        .collect())
}

/// The first row violation `T(r,c) > T(r,c+1)`, smallest column then smallest row.
pub fn first_row_violation(t: &Tabloid) -> Option<Location> {
    let shape = t.shape();
    (1..shape.width()).find_map(|c| {
        (1..=shape.column_length(c + 1))
            .find(|&r| t.get(Location::new(r, c)) > t.get(Location::new(r, c + 1)))
            .map(|r| Location::new(r, c))
    })
}

/// Solves `Σ ε(σ)τ_σ = 0` for `τ = τ_T`.
fn solve_for(t: &Tabloid, relation: LinearCombination) -> Result<LinearCombination> {
    let lead = relation.coefficient(t);
    if lead.is_zero() {
        return Err(Error::InvalidTabloid(format!("relation does not involve {t}")));
    }
    let factor = -Rational::one() / lead;
    let mut out = LinearCombination::zero(t.shape().clone());
    for (u, a) in relation.terms() {
        if u != t {
            out.add_term(u.clone(), a * &factor)?;
        }
    }
    debug_assert!(out.terms().all(|(u, _)| u < t));
    Ok(out)
}

/// One straightening step for a non-tableau: either sorts equal-length
/// columns, or rewrites `τ` through the snake relation at the first row
/// violation. Every output term strictly precedes `t`.
pub fn straighten_step(t: &Tabloid) -> Result<LinearCombination> {
    if t.is_tableau() {
        return Err(Error::AlreadyTableau);
    }
    if !t.has_sorted_columns() {
        return Ok(LinearCombination::from_tabloid(t.with_sorted_columns()));
    }
    let v = first_row_violation(t).expect("non-tableau has a row violation");
    let mu = snake_region(t.shape(), v.row, v.col)?;
    solve_for(t, shuffle_sum(t, &mu)?)
}

/// Locations `(r,c)` where the scanning tableau exceeds the λ-key.
pub fn demazure_violations(t: &Tabloid, chain: &QChain) -> Result<Vec<Location>> {
    let key = chain.lambda_key(t.shape())?;
    let s = scan(t)?.scan_tableau;
    Ok(t.shape().locations().filter(|&l| s.get(l) > key.get(l)).collect())
}

/// The Demazure region of a non-Demazure tableau, built at the violation
/// with the largest column, then the largest row.
pub fn demazure_region(t: &Tabloid, chain: &QChain) -> Result<Region> {
    let v = demazure_violations(t, chain)?
        .into_iter()
        .max_by_key(|l| (l.col, l.row))
        .ok_or(Error::AlreadyDemazure)?;
    demazure_region_at(t, chain, v.row, v.col)
}

/// The Demazure region built from a given violation `(r,c)`.
pub fn demazure_region_at(t: &Tabloid, chain: &QChain, r: usize, c: usize) -> Result<Region> {
    let key = chain.lambda_key(t.shape())?;
    let scanned = scan(t)?;
    let start = Location::new(r, c);
    if !t.shape().contains(start) {
        return Err(Error::RegionOutsideShape(start));
    }
    if scanned.scan_tableau.get(start) <= key.get(start) {
        return Err(Error::IndexOutOfRange(format!("{start} is not a Demazure violation")));
    }
    let bound = key.get(start);
    let mut current = *scanned
        .path(start)
        .iter()
        .find(|&&l| t.get(l) > bound)
        .expect("path ends at the scanned value");
    let mut region = vec![current];
    for row in r + 1..=t.shape().column_length(c) {
        let prev = t.get(current);
        current = *scanned
            .path(Location::new(row, c))
            .iter()
            .find(|l| l.col <= current.col && t.get(**l) > prev)
            .ok_or_else(|| Error::IndexOutOfRange(format!("no continuation of the region in row {row}")))?;
        region.push(current);
    }
    Ok(region.into_iter().collect())
}

/// One reduction step for a tableau that is not π-Demazure, modulo `Z_λ(π)`.
/// Returns zero when the identity is the only shuffle.
pub fn straighten_step_mod(t: &Tabloid, chain: &QChain) -> Result<LinearCombination> {
    if !t.is_tableau() {
        return Err(Error::NotATableau);
    }
    let mu = demazure_region(t, chain)?;
    solve_for(t, shuffle_sum(t, &mu)?)
}

/// Straightening and quotient reduction with memoized steps.
#[derive(Debug, Default)]
pub struct Straightener {
    steps: HashMap<Tabloid, LinearCombination>,
    mod_steps: HashMap<(Tabloid, QChain), Option<LinearCombination>>,
}

impl Straightener {
    pub fn new() -> Self {
        Straightener::default()
    }

    fn step(&mut self, t: &Tabloid) -> Result<&LinearCombination> {
        if !self.steps.contains_key(t) {
            let s = straighten_step(t)?;
            self.steps.insert(t.clone(), s);
        }
        Ok(&self.steps[t])
    }

    /// `None` when `t` is π-Demazure.
    fn mod_step(&mut self, t: &Tabloid, chain: &QChain) -> Result<Option<&LinearCombination>> {
        let key = (t.clone(), chain.clone());
        if !self.mod_steps.contains_key(&key) {
            let s = if crate::scan::is_demazure(t, chain)? {
                None
            } else {
                Some(straighten_step_mod(t, chain)?)
            };
            self.mod_steps.insert(key.clone(), s);
        }
        Ok(self.mod_steps[&key].as_ref())
    }

    /// Rewrites `combo` in the tableau basis.
    pub fn straighten(&mut self, combo: &LinearCombination) -> Result<LinearCombination> {
        let mut work = combo.clone();
        let mut done = LinearCombination::zero(combo.shape().clone());
        while let Some((t, a)) = work.pop_largest() {
            if t.is_tableau() {
                done.add_term(t, a)?;
            } else {
                let step = self.step(&t)?;
                work.add_scaled(step, &a)?;
            }
        }
        Ok(done)
    }

    /// Rewrites `combo` modulo `Z_λ(π)` in the π-Demazure basis.
    pub fn reduce_mod(&mut self, combo: &LinearCombination, chain: &QChain) -> Result<LinearCombination> {
        let key = chain.lambda_key(combo.shape())?;
        let mut work = combo.clone();
        let mut done = LinearCombination::zero(combo.shape().clone());
        while let Some((t, a)) = work.pop_largest() {
            if !t.dominated_by(&key)? {
                continue;
            }
            if !t.is_tableau() {
                let step = self.step(&t)?;
                work.add_scaled(step, &a)?;
                continue;
            }
            match self.mod_step(&t, chain)? {
                None => done.add_term(t, a)?,
                Some(step) => work.add_scaled(step, &a)?,
            }
        }
        Ok(done)
    }
}

/// Rewrites `combo` in the tableau basis.
pub fn straighten(combo: &LinearCombination) -> Result<LinearCombination> {
    Straightener::new().straighten(combo)
}

/// Rewrites `combo` modulo `Z_λ(π)` in the π-Demazure basis.
pub fn reduce_mod(combo: &LinearCombination, chain: &QChain) -> Result<LinearCombination> {
    Straightener::new().reduce_mod(combo, chain)
}
