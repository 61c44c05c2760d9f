//! Flags as ordered bases: Q-preferred reduction, Bruhat cells, sampling of
//! cells and Schubert varieties, and the degeneration path between cells.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{QChain, QSet};
use crate::error::{Error, Result};
use crate::linalg::{rational, Rational, RationalMatrix};

/// A Q-preferred ordered basis with its pivots and the chain they determine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPreferredBasis {
    pub matrix: RationalMatrix,
    /// 1-based pivot row of each column.
    pub pivots: Vec<usize>,
    pub chain: QChain,
}

/// Lowest nonzero row (0-based) of column `c`.
fn lowest_nonzero(m: &RationalMatrix, c: usize) -> Option<usize> {
    (0..m.rows()).rev().find(|&r| !m.get(r, c).is_zero())
}

fn check_invertible_shape(f: &RationalMatrix, q: &QSet) -> Result<()> {
    if !f.is_square() {
        return Err(Error::NonSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    if f.rows() != q.n() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix with a Q-set on n = {}",
            f.rows(),
            f.cols(),
            q.n()
        )));
    }
    Ok(())
}

/// Clears row `p` of every column in `targets` using column `source`, whose
/// entry at `p` is 1.
fn clear_row(m: &mut RationalMatrix, source: usize, p: usize, targets: impl Iterator<Item = usize>) {
    for k in targets {
        if k == source {
            continue;
        }
        let a = m.get(p, k).clone();
        if !a.is_zero() {
            m.add_column_multiple(source, k, &-a);
        }
    }
}

fn finish(m: RationalMatrix, q: &QSet) -> Result<QPreferredBasis> {
    let pivots: Vec<usize> = (0..m.cols())
        .map(|c| lowest_nonzero(&m, c).map(|r| r + 1).ok_or(Error::Singular))
        .collect::<Result<_>>()?;
    let sets = q.values().iter().map(|&qj| pivots[..qj].to_vec()).collect();
    let chain = QChain::new(q.clone(), sets)?;
    Ok(QPreferredBasis {
        matrix: m,
        pivots,
        chain,
    })
}

/// Reduces `f` to its Q-preferred form using only scaling of columns,
/// permutations within a carrel, and adding multiples of a column to columns
/// of the same or a later carrel.
///
/// Carrels are processed left to right. Inside a carrel the column with the
/// lowest pivot is taken first, normalized, used to clear its pivot row in
/// every other column of this and later carrels, and moved to the rightmost
/// free position, so pivots descend from left to right.
pub fn q_preferred_reduce(f: &RationalMatrix, q: &QSet) -> Result<QPreferredBasis> {
    check_invertible_shape(f, q)?;
    let n = f.rows();
    let mut m = f.clone();
    for carrel in q.carrels() {
        let mut free_end = carrel.end;
        while free_end > carrel.start {
            let mut best: Option<(usize, usize)> = None;
            for c in carrel.start..free_end {
                let p = lowest_nonzero(&m, c).ok_or(Error::Singular)?;
                if best.is_none_or(|(_, bp)| p > bp) {
                    best = Some((c, p));
                }
            }
            let (c, p) = best.expect("nonempty carrel range");
            let inv = Rational::one() / m.get(p, c);
            m.scale_column(c, &inv);
            clear_row(&mut m, c, p, carrel.start..n);
            free_end -= 1;
            m.swap_columns(c, free_end);
        }
    }
    finish(m, q)
}

/// A second elimination order used to cross-check uniqueness of the
/// Q-preferred form: pivots inside a carrel are first made distinct by
/// eliminating equal pivots bottom-up, then columns are sorted and cleared in
/// ascending pivot order.
pub fn q_preferred_reduce_alt(f: &RationalMatrix, q: &QSet) -> Result<QPreferredBasis> {
    check_invertible_shape(f, q)?;
    let n = f.rows();
    let mut m = f.clone();
    for carrel in q.carrels() {
        loop {
            let pivots: Vec<usize> = carrel
                .clone()
                .map(|c| lowest_nonzero(&m, c).ok_or(Error::Singular))
                .collect::<Result<_>>()?;
            let clash = (0..pivots.len())
                .flat_map(|a| (a + 1..pivots.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| pivots[a] == pivots[b])
                .max_by_key(|&(a, _)| pivots[a]);
            let Some((a, b)) = clash else { break };
            let (ca, cb) = (carrel.start + a, carrel.start + b);
            let p = pivots[a];
            let factor = -(m.get(p, cb) / m.get(p, ca));
            m.add_column_multiple(ca, cb, &factor);
        }
        let mut order: Vec<(usize, usize)> = carrel
            .clone()
            .map(|c| (lowest_nonzero(&m, c).expect("nonzero after elimination"), c))
            .collect();
        order.sort();
        let sorted_cols: Vec<Vec<Rational>> = order.iter().map(|&(_, c)| m.column(c)).collect();
        for (offset, col) in sorted_cols.into_iter().enumerate() {
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, carrel.start + offset, v);
            }
        }
        for (offset, &(p, _)) in order.iter().enumerate() {
            let c = carrel.start + offset;
            let inv = Rational::one() / m.get(p, c);
            m.scale_column(c, &inv);
            clear_row(&mut m, c, p, carrel.start..n);
        }
    }
    finish(m, q)
}

/// The chain `π` with `f ∈ C(π)`.
pub fn cell_of(f: &RationalMatrix, q: &QSet) -> Result<QChain> {
    Ok(q_preferred_reduce(f, q)?.chain)
}

/// `s_π`: the permutation matrix with a 1 at `(π̄_j, j)`.
pub fn perm_matrix(chain: &QChain) -> RationalMatrix {
    let perm = chain.to_qperm();
    let mut m = RationalMatrix::zeros(perm.len(), perm.len());
    for (j, &v) in perm.iter().enumerate() {
        m.set(v - 1, j, Rational::one());
    }
    m
}

/// Random invertible upper-triangular matrix, entries in `[-9, 9]`, nonzero diagonal.
pub fn random_upper_triangular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RationalMatrix {
    let mut b = RationalMatrix::zeros(n, n);
    for i in 0..n {
        let mut d = 0;
        while d == 0 {
            d = rng.gen_range(-9..=9);
        }
        b.set(i, i, rational(d));
        for j in i + 1..n {
            b.set(i, j, rational(rng.gen_range(-9..=9)));
        }
    }
    b
}

/// `b · s_π` for a random upper-triangular `b`.
pub fn sample_cell_with<R: Rng + ?Sized>(chain: &QChain, rng: &mut R) -> RationalMatrix {
    let b = random_upper_triangular(chain.n(), rng);
    b.mul(&perm_matrix(chain)).expect("square of equal size")
}

pub fn sample_cell(chain: &QChain, seed: u64) -> RationalMatrix {
    sample_cell_with(chain, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A point of `C(ρ)` for `ρ` drawn uniformly from the chains below `chain`.
pub fn sample_schubert_with<R: Rng + ?Sized>(chain: &QChain, rng: &mut R) -> RationalMatrix {
    let below = chain.lower_interval();
    let rho = below.choose(rng).expect("chain lies below itself");
    sample_cell_with(rho, rng)
}

pub fn sample_schubert(chain: &QChain, seed: u64) -> RationalMatrix {
    sample_schubert_with(chain, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The path `γ(t)` from `C(π)` down to `C(σ_ij π)`: `s_π` with the entries in
/// rows `i, j` and the columns holding `j, i` replaced by
/// `[[1-t, t], [t, 1-t]]`.
pub fn gamma_path(chain: &QChain, i: usize, j: usize, t: &Rational) -> Result<RationalMatrix> {
    let lower = chain.reflect(i, j)?;
    if !lower.bruhat_less(chain)? {
        return Err(Error::NotStrictlyBelow);
    }
    let half = Rational::new(1.into(), 2.into());
    if t < &Rational::zero() || t >= &half {
        return Err(Error::ParameterOutOfRange(format!("t = {t} outside [0, 1/2)")));
    }
    let perm = chain.to_qperm();
    let col = |v: usize| perm.iter().position(|&x| x == v).expect("permutation");
    let (ci, cj) = (col(i), col(j));
    let one_minus = Rational::one() - t;
    let mut m = perm_matrix(chain);
    m.set(i - 1, cj, one_minus.clone());
    m.set(i - 1, ci, t.clone());
    m.set(j - 1, cj, t.clone());
    m.set(j - 1, ci, one_minus);
    Ok(m)
}
