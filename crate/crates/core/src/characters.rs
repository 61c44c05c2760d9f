//! Weights of tableaux, key polynomials as tableau sums, and an independent
//! divided-difference computation of the same polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chain::QChain;
use crate::error::{Error, Result};
use crate::scan::enumerate_demazure;
use crate::shape::{Partition, Tabloid};

/// Content vector `(c_1, …, c_n)` of a tabloid: `c_i` counts the values equal to `i`.
pub fn weight(t: &Tabloid) -> Vec<u32> {
    let mut w = vec![0; t.n()];
    for &v in t.columns().iter().flatten() {
        w[v - 1] += 1;
    }
    w
}

/// Sparse polynomial in `y_1, …, y_n` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponents: Vec<u32>) -> Self {
        let mut p = Polynomial::zero(exponents.len());
        p.terms.insert(exponents, BigInt::one());
        p
    }

    /// `y_i` (1-based).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Polynomial::monomial(e)
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

    /// Same as `is_zero`.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: BigInt) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Value at `y = (1, …, 1)`.
    pub fn at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `s_i`: exchanges `y_i` and `y_{i+1}`.
    pub fn swap_variables(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i - 1, i);
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (1..self.nvars).all(|i| &self.swap_variables(i) == self)
    }

    /// The isobaric divided difference `π_i p = (y_i p − y_{i+1} s_i p) / (y_i − y_{i+1})`,
    /// computed monomial by monomial.
    pub fn isobaric(&self, i: usize) -> Polynomial {
        let (a, b) = (i - 1, i);
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let (p, q) = (e[a], e[b]);
            let mut put = |x: u32, y: u32, c: BigInt| {
                let mut f = e.clone();
                f[a] = x;
                f[b] = y;
                out.add_term(f, c);
            };
            if p >= q {
                for k in 0..=p - q {
                    put(p - k, q + k, c.clone());
                }
            } else if p + 1 < q {
                let d = q - p - 1;
                for k in 0..d {
                    put(p + d - k, p + 1 + k, -c.clone());
                }
            }
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

// exponents add under multiplication
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let g = e.iter().zip(f).map(|(x, y)| x + y).collect();
                out.add_term(g, c * d);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Terms in descending lexicographic order of exponents, e.g. `y1*y2 + 2*y3^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("y{}", i + 1) } else { format!("y{}^{x}", i + 1) })
                .collect();
            match (vars.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `Σ y^T` over the π-Demazure tableaux of `shape`.
pub fn key_polynomial(shape: &Partition, chain: &QChain) -> Result<Polynomial> {
    let mut p = Polynomial::zero(shape.n());
    for t in enumerate_demazure(shape, chain)? {
        p.add_term(weight(&t), BigInt::one());
    }
    Ok(p)
}

/// Number of π-Demazure tableaux of `shape`.
pub fn demazure_dimension(shape: &Partition, chain: &QChain) -> Result<usize> {
    Ok(enumerate_demazure(shape, chain)?.len())
}

fn check_permutation(w: &[usize]) -> Result<()> {
    let n = w.len();
    let mut seen = vec![false; n + 1];
    for &v in w {
        if v == 0 || v > n || seen[v] {
            return Err(Error::InvalidPermutation(format!("{w:?} is not a permutation of [{n}]")));
        }
        seen[v] = true;
    }
    Ok(())
}

/// A reduced word `(i_1, …, i_l)` with `w = s_{i_1} ⋯ s_{i_l}` (one-line notation,
/// `s_i` acting on positions from the right). Sorting removes the smallest
/// descent first, or the largest when `largest` is set.
pub fn reduced_word(w: &[usize], largest: bool) -> Result<Vec<usize>> {
    check_permutation(w)?;
    let mut w = w.to_vec();
    let mut removed = Vec::new();
    loop {
        let mut descents = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
        let next = if largest { descents.next_back() } else { descents.next() };
        let Some(i) = next else { break };
        w.swap(i, i + 1);
        removed.push(i + 1);
    }
    removed.reverse();
    Ok(removed)
}

/// Applies `π_{i_1} ⋯ π_{i_l}` (rightmost first) to `p`.
pub fn apply_word(p: &Polynomial, word: &[usize]) -> Polynomial {
    word.iter().rev().fold(p.clone(), |acc, &i| acc.isobaric(i))
}

/// The Demazure polynomial `π_w(y^λ)` along the reduced word from [`reduced_word`].
pub fn demazure_oracle(shape: &Partition, w: &[usize]) -> Result<Polynomial> {
    if w.len() != shape.n() {
        return Err(Error::InvalidPermutation(format!(
            "permutation of length {} for n = {}",
            w.len(),
            shape.n()
        )));
    }
    let word = reduced_word(w, false)?;
    let start = Polynomial::monomial(shape.parts().iter().map(|&p| p as u32).collect());
    Ok(apply_word(&start, &word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::QSet;

    fn chain(n: usize, sets: &[&[usize]]) -> QChain {
        QChain::from_sets(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn weights() {
        let t = Tabloid::from_columns(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(weight(&t), vec![1, 1, 1]);
        let t = Tabloid::from_columns(3, vec![vec![1, 3], vec![2]]).unwrap();
        assert_eq!(weight(&t), vec![1, 1, 1]);
        assert!(Tabloid::from_columns(3, vec![vec![1, 1], vec![1]]).is_err());
    }

    #[test]
    fn key_polynomial_examples() {
        let k = key_polynomial(&p(&[1, 0, 0]), &chain(3, &[&[2]])).unwrap();
        assert_eq!(k.to_string(), "y1 + y2");
        let k = key_polynomial(&p(&[1, 0, 0]), &chain(3, &[&[1]])).unwrap();
        assert_eq!(k.to_string(), "y1");
        let k = key_polynomial(&p(&[1, 1, 0]), &chain(3, &[&[2], &[2, 3]])).unwrap();
        assert_eq!(k.to_string(), "y1*y2 + y1*y3 + y2*y3");
    }

    #[test]
    fn oracle_examples() {
        let lambda = p(&[2, 1, 0]);
        assert_eq!(demazure_oracle(&lambda, &[1, 2, 3]).unwrap(), Polynomial::monomial(vec![2, 1, 0]));
        assert_eq!(demazure_oracle(&p(&[1, 0, 0]), &[2, 1, 3]).unwrap().to_string(), "y1 + y2");
        let lhs = demazure_oracle(&p(&[1, 1, 0]), &[2, 3, 1]).unwrap();
        let rhs = key_polynomial(&p(&[1, 1, 0]), &chain(3, &[&[2], &[2, 3]])).unwrap();
        assert_eq!(lhs, rhs);
        assert!(demazure_oracle(&lambda, &[1, 1, 3]).is_err());
        assert!(demazure_oracle(&lambda, &[1, 2]).is_err());
    }

    #[test]
    fn reduced_words() {
        assert_eq!(reduced_word(&[1, 2, 3], false).unwrap(), Vec::<usize>::new());
        assert_eq!(reduced_word(&[2, 1, 3], false).unwrap(), vec![1]);
        assert_eq!(reduced_word(&[2, 3, 1], false).unwrap(), vec![1, 2]);
        assert_eq!(reduced_word(&[3, 2, 1], false).unwrap().len(), 3);
        assert_ne!(reduced_word(&[3, 2, 1], false).unwrap(), reduced_word(&[3, 2, 1], true).unwrap());
    }

    #[test]
    fn isobaric_defining_relation() {
        // (y_i − y_{i+1}) π_i f = y_i f − y_{i+1} s_i f
        let mut f = Polynomial::zero(3);
        f.add_term(vec![3, 0, 1], BigInt::from(2));
        f.add_term(vec![0, 4, 0], BigInt::from(-1));
        f.add_term(vec![1, 2, 2], BigInt::from(5));
        f.add_term(vec![0, 0, 0], BigInt::from(7));
        for i in 1..3 {
            let yi = Polynomial::variable(3, i);
            let yj = Polynomial::variable(3, i + 1);
            let lhs = &(&yi - &yj) * &f.isobaric(i);
            let rhs = &(&yi * &f) - &(&yj * &f.swap_variables(i));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dimensions() {
        for q in QSet::all(3) {
            if q.check_shape(&p(&[1, 1, 1])).is_ok() {
                for pi in QChain::all(&q) {
                    assert_eq!(demazure_dimension(&p(&[1, 1, 1]), &pi).unwrap(), 1);
                }
            }
        }
        assert_eq!(demazure_dimension(&p(&[1, 1, 0]), &chain(3, &[&[2], &[2, 3]])).unwrap(), 3);
        let full = QSet::full(3).unwrap();
        assert_eq!(demazure_dimension(&p(&[2, 1, 0]), &QChain::maximal(&full)).unwrap(), 8);
        let k = key_polynomial(&p(&[2, 1, 0]), &QChain::maximal(&full)).unwrap();
        assert_eq!(k.at_ones(), BigInt::from(8));
        assert!(k.is_symmetric());
    }

    #[test]
    fn display() {
        let mut f = Polynomial::zero(2);
        assert_eq!(f.to_string(), "0");
        f.add_term(vec![0, 0], BigInt::one());
        f.add_term(vec![2, 1], BigInt::from(2));
        f.add_term(vec![0, 1], BigInt::from(-3));
        assert_eq!(f.to_string(), "2*y1^2*y2 - 3*y2 + 1");
    }
}
