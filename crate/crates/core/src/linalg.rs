//! Exact rational matrices: determinants, rank, initial minors and tabloid monomials.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::Tabloid;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let r = Rational::from_str(s).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
    if r.denom().is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(r)
}

/// Dense row-major matrix of rationals. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        RationalMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|row| row.as_ref().iter().map(|&v| rational(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Entries drawn uniformly from the integers in `[-9, 9]`.
    pub fn random_integer<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let entries = (0..rows * cols).map(|_| rational(rng.gen_range(-9..=9))).collect();
        RationalMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        RationalMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| self.get(r, c).clone()))
            .collect();
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn scale_column(&mut self, c: usize, factor: &Rational) {
        for r in 0..self.rows {
            let idx = r * self.cols + c;
            self.entries[idx] = &self.entries[idx] * factor;
        }
    }

    /// Column `target += factor * column source`.
    pub fn add_column_multiple(&mut self, source: usize, target: usize, factor: &Rational) {
        for r in 0..self.rows {
            let add = self.get(r, source) * factor;
            let idx = r * self.cols + target;
            self.entries[idx] += add;
        }
    }

    /// Rows scaled by the lcm of their denominators, with the product of the scales.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale_product = BigInt::one();
        let rows = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                scale_product *= &lcm;
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect();
        (rows, scale_product)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (mut a, scale) = self.integer_rows();
        let det = bareiss_determinant(&mut a);
        Ok(Rational::new(det, scale))
    }

    /// Determinant by cofactor expansion along the first row; exponential, for cross-checks.
    pub fn cofactor_determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        fn rec(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Rational {
            if rows.is_empty() {
                return Rational::one();
            }
            let mut sum = Rational::zero();
            for (k, &c) in cols.iter().enumerate() {
                let a = m.get(rows[0], c);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = a * rec(m, &rows[1..], &rest);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            sum
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(rec(self, &idx, &idx))
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let v = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                    debug_assert!((&v % &prev).is_zero());
                    a[i][j] = v / &prev;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }
}

fn bareiss_determinant(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|v| v.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RationalMatrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

/// Determinant of the `q × q` submatrix of `f` with the given 1-based rows
/// (ascending) and the first `q` columns.
pub fn initial_minor(f: &RationalMatrix, q: usize, rows: &[usize]) -> Result<Rational> {
    if !f.is_square() {
        return Err(Error::NonSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let n = f.rows();
    if rows.len() != q || q > n {
        return Err(Error::InvalidRows(format!("{q}-initial minor of an {n}x{n} matrix with rows {rows:?}")));
    }
    if rows.windows(2).any(|w| w[0] >= w[1]) || rows.iter().any(|&r| r == 0 || r > n) {
        return Err(Error::InvalidRows(format!("rows {rows:?} must ascend inside [1, {n}]")));
    }
    let r: Vec<usize> = rows.iter().map(|&r| r - 1).collect();
    let c: Vec<usize> = (0..q).collect();
    f.submatrix(&r, &c).determinant()
}

/// The tabloid monomial `τ(f)`: product over columns of the initial minors
/// selected by each column's values. The empty tabloid evaluates to 1.
pub fn eval_monomial(t: &Tabloid, f: &RationalMatrix) -> Result<Rational> {
    check_dimension(t, f)?;
    let mut product = Rational::one();
    for col in t.columns() {
        let m = initial_minor(f, col.len(), col)?;
        if m.is_zero() {
            return Ok(m);
        }
        product *= m;
    }
    Ok(product)
}

fn check_dimension(t: &Tabloid, f: &RationalMatrix) -> Result<()> {
    if f.rows() != t.n() || f.cols() != t.n() {
        return Err(Error::DimensionMismatch(format!(
            "tabloid on n = {} evaluated at a {}x{} matrix",
            t.n(),
            f.rows(),
            f.cols()
        )));
    }
    Ok(())
}

/// Evaluates many monomials at one matrix, computing each initial minor once.
pub struct MonomialEvaluator<'a> {
    f: &'a RationalMatrix,
    minors: Vec<OnceCell<Rational>>,
}

impl<'a> MonomialEvaluator<'a> {
    pub fn new(f: &'a RationalMatrix) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::NonSquare {
                rows: f.rows(),
                cols: f.cols(),
            });
        }
        if f.rows() > 20 {
            return Err(Error::DimensionMismatch("minor cache supports n <= 20".into()));
        }
        Ok(MonomialEvaluator {
            f,
            minors: (0..1usize << f.rows()).map(|_| OnceCell::new()).collect(),
        })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        self.f
    }

    fn minor(&self, column: &[usize]) -> &Rational {
        let mask = column.iter().fold(0usize, |m, &v| m | 1 << (v - 1));
        self.minors[mask].get_or_init(|| {
            initial_minor(self.f, column.len(), column).expect("column of a valid tabloid")
        })
    }

    pub fn eval(&self, t: &Tabloid) -> Result<Rational> {
        check_dimension(t, self.f)?;
        let mut product = Rational::one();
        for col in t.columns() {
            let m = self.minor(col);
            if m.is_zero() {
                return Ok(Rational::zero());
            }
            product *= m;
        }
        Ok(product)
    }
}

/// Whether two vectors are proportional (including either being zero).
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let m = RationalMatrix::from_rows(vec![a.to_vec(), b.to_vec()]).expect("equal lengths");
    m.rank() < 2
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_integers(rows).unwrap()
    }

    fn tab(n: usize, cols: &[&[usize]]) -> Tabloid {
        Tabloid::from_columns(n, cols.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(RationalMatrix::identity(3).determinant().unwrap(), rational(1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), rational(-1));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant().unwrap(), rational(-2));
        assert_eq!(RationalMatrix::zeros(0, 0).determinant().unwrap(), rational(1));
        assert_eq!(
            RationalMatrix::zeros(2, 3).determinant(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        );
        let half = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(2, 5), rational(1)],
        ])
        .unwrap();
        assert_eq!(half.determinant().unwrap(), ratio(1, 2) - ratio(2, 15));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=4 {
            for _ in 0..50 {
                let a = RationalMatrix::random_integer(n, n, &mut rng);
                assert_eq!(a.determinant().unwrap(), a.cofactor_determinant().unwrap());
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..100 {
            let n = 1 + i % 5;
            let a = RationalMatrix::random_integer(n, n, &mut rng);
            let b = RationalMatrix::random_integer(n, n, &mut rng);
            let ab = a.mul(&b).unwrap();
            assert_eq!(
                ab.determinant().unwrap(),
                a.determinant().unwrap() * b.determinant().unwrap()
            );
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 0, 1], &[0, 0, 2], &[1, 0, 0]]).rank(), 2);
        assert_eq!(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
    }

    #[test]
    fn rank_agrees_with_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let mut a = RationalMatrix::random_integer(4, 4, &mut rng);
            // force a dependency half the time
            if rng.gen_bool(0.5) {
                let c0 = a.column(0);
                for (r, v) in c0.into_iter().enumerate() {
                    let w = v * rational(2) + a.get(r, 1);
                    a.set(r, 3, w);
                }
            }
            let full = !a.determinant().unwrap().is_zero();
            assert_eq!(a.rank() == 4, full);
        }
    }

    #[test]
    fn initial_minor_examples() {
        for q in 1..=3 {
            let rows: Vec<usize> = (1..=q).collect();
            assert_eq!(initial_minor(&RationalMatrix::identity(3), q, &rows).unwrap(), rational(1));
        }
        assert_eq!(initial_minor(&RationalMatrix::identity(3), 2, &[1, 3]).unwrap(), rational(0));
        let s = m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(initial_minor(&s, 2, &[2, 3]).unwrap().abs(), rational(1));
        assert!(initial_minor(&s, 2, &[3, 2]).is_err());
        assert!(initial_minor(&s, 2, &[1]).is_err());
        assert!(initial_minor(&s, 1, &[4]).is_err());
    }

    #[test]
    fn monomial_examples() {
        let id = RationalMatrix::identity(3);
        assert_eq!(eval_monomial(&tab(3, &[&[1, 2], &[1]]), &id).unwrap(), rational(1));
        assert_eq!(eval_monomial(&tab(3, &[&[1, 3], &[2]]), &id).unwrap(), rational(0));
        assert_eq!(eval_monomial(&Tabloid::empty(3).unwrap(), &id).unwrap(), rational(1));
        assert!(eval_monomial(&tab(3, &[&[1]]), &RationalMatrix::identity(4)).is_err());
    }

    #[test]
    fn first_column_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = RationalMatrix::random_integer(3, 3, &mut rng);
        let mut d = RationalMatrix::identity(3);
        d.set(0, 0, rational(2));
        let fd = f.mul(&d).unwrap();
        for shape in crate::shape::Partition::all_up_to(3, 4) {
            let factor = (0..shape.width()).fold(rational(1), |acc, _| acc * rational(2));
            for t in Tabloid::enumerate_all(&shape) {
                assert_eq!(eval_monomial(&t, &fd).unwrap(), factor.clone() * eval_monomial(&t, &f).unwrap());
            }
        }
    }

    #[test]
    fn full_column_is_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let f = RationalMatrix::random_integer(4, 4, &mut rng);
            let t = tab(4, &[&[1, 2, 3, 4]]);
            assert_eq!(eval_monomial(&t, &f).unwrap(), f.determinant().unwrap());
        }
    }

    #[test]
    fn evaluator_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = RationalMatrix::random_integer(4, 4, &mut rng);
        let ev = MonomialEvaluator::new(&f).unwrap();
        for shape in crate::shape::Partition::all_up_to(4, 3) {
            for t in Tabloid::enumerate_all(&shape) {
                assert_eq!(ev.eval(&t).unwrap(), eval_monomial(&t, &f).unwrap());
            }
        }
    }

    #[test]
    fn json_encoding() {
        let a = RationalMatrix::from_rows(vec![
            vec![rational(1), rational(0), ratio(1, 2)],
            vec![rational(0), rational(1), rational(0)],
            vec![rational(0), rational(0), rational(-1)],
        ])
        .unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1","0","1/2"],["0","1","0"],["0","0","-1"]]"#);
        assert_eq!(serde_json::from_str::<RationalMatrix>(&s).unwrap(), a);
        assert!(serde_json::from_str::<RationalMatrix>(r#"[["1","x"]]"#).is_err());
        assert!(serde_json::from_str::<RationalMatrix>(r#"[["1","2"],["3"]]"#).is_err());
        assert!(serde_json::from_str::<RationalMatrix>(r#"[["1/0"]]"#).is_err());
    }

    #[test]
    fn proportionality() {
        let a = vec![rational(1), rational(2)];
        let b = vec![rational(-2), rational(-4)];
        let c = vec![rational(1), rational(3)];
        assert!(proportional(&a, &b));
        assert!(!proportional(&a, &c));
    }
}
