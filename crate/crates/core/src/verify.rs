//! Sampling-based certificates: linear independence of the Demazure basis,
//! vanishing of `Z_λ(π)`, and the master identity at random matrices.

use num_traits::Zero;
use rand::Rng;

use crate::chain::QChain;
use crate::error::Result;
use crate::geometry::{sample_cell_with, sample_schubert_with};
use crate::linalg::{MonomialEvaluator, RationalMatrix};
use crate::scan::enumerate_demazure;
use crate::shape::{Partition, Region, Tabloid};
use crate::straighten::{verify_master_identity, MasterCheck};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub basis_size: usize,
    pub samples: usize,
    pub rank: usize,
}

impl IndependenceReport {
    pub fn ok(&self) -> bool {
        self.rank == self.basis_size
    }
}

/// Rank of the matrix `M[s, T] = τ_T(f_s)` over the π-Demazure tableaux `T`
/// and points `f_s` sampled from `C(π)`. Defaults to twice the basis size.
pub fn verify_independence<R: Rng + ?Sized>(
    shape: &Partition,
    chain: &QChain,
    samples: Option<usize>,
    rng: &mut R,
) -> Result<IndependenceReport> {
    let basis = enumerate_demazure(shape, chain)?;
    let samples = samples.unwrap_or(2 * basis.len());
    let mut m = RationalMatrix::zeros(samples, basis.len());
    for s in 0..samples {
        let f = sample_cell_with(chain, rng);
        let ev = MonomialEvaluator::new(&f)?;
        for (k, t) in basis.iter().enumerate() {
            m.set(s, k, ev.eval(t)?);
        }
    }
    Ok(IndependenceReport {
        basis_size: basis.len(),
        samples,
        rank: m.rank(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingReport {
    pub samples: usize,
    /// Samples of `C(π)` where the λ-key monomial was nonzero.
    pub key_nonzero: usize,
    /// Tabloids `T ⋠ Y_λ(π)`.
    pub excluded: usize,
    /// Evaluations of those tabloids at samples of `X(π)` that were nonzero.
    pub excluded_nonzero: usize,
}

impl VanishingReport {
    pub fn ok(&self) -> bool {
        self.key_nonzero == self.samples && self.excluded_nonzero == 0
    }
}

/// The λ-key monomial at samples of `C(π)`, and every monomial outside the
/// λ-key's lower set at samples of `X(π)`.
pub fn verify_vanishing<R: Rng + ?Sized>(
    shape: &Partition,
    chain: &QChain,
    samples: usize,
    rng: &mut R,
) -> Result<VanishingReport> {
    let key = chain.lambda_key(shape)?;
    let mut excluded = Vec::new();
    for t in Tabloid::enumerate_all(shape) {
        if !t.dominated_by(&key)? {
            excluded.push(t);
        }
    }
    let mut key_nonzero = 0;
    let mut excluded_nonzero = 0;
    for _ in 0..samples {
        let f = sample_cell_with(chain, rng);
        if !MonomialEvaluator::new(&f)?.eval(&key)?.is_zero() {
            key_nonzero += 1;
        }
        let g = sample_schubert_with(chain, rng);
        let ev = MonomialEvaluator::new(&g)?;
        for t in &excluded {
            if !ev.eval(t)?.is_zero() {
                excluded_nonzero += 1;
            }
        }
    }
    Ok(VanishingReport {
        samples,
        key_nonzero,
        excluded: excluded.len(),
        excluded_nonzero,
    })
}

/// The master identity at `samples` random integer matrices.
pub fn verify_master<R: Rng + ?Sized>(
    t: &Tabloid,
    mu: &Region,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<MasterCheck>> {
    (0..samples)
        .map(|_| {
            let f = RationalMatrix::random_integer(t.n(), t.n(), rng);
            verify_master_identity(t, mu, &f)
        })
        .collect()
}
