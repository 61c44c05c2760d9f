//! Scanning tableaux: earliest weakly increasing subsequences, scanning paths
//! and the π-Demazure test.

use std::collections::BTreeMap;

use crate::chain::QChain;
use crate::error::{Error, Result};
use crate::shape::{Location, Partition, Tabloid};

/// Output of the scanning algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    /// `S(T)`, same shape as the input.
    pub scan_tableau: Tabloid,
    /// `P(T;r,c)` for every location, in the order the path was marked.
    pub paths: BTreeMap<Location, Vec<Location>>,
}

impl ScanResult {
    pub fn path(&self, loc: Location) -> &[Location] {
        &self.paths[&loc]
    }
}

/// 0-based indices of the earliest weakly increasing subsequence.
pub fn ewis<T: Ord>(seq: &[T]) -> Result<Vec<usize>> {
    let first = seq.first().ok_or(Error::EmptySequence)?;
    let mut indices = vec![0];
    let mut last = first;
    for (i, v) in seq.iter().enumerate().skip(1) {
        if v >= last {
            indices.push(i);
            last = v;
        }
    }
    Ok(indices)
}

/// Runs the scanning algorithm on a tableau.
pub fn scan(t: &Tabloid) -> Result<ScanResult> {
    if !t.is_tableau() {
        return Err(Error::NotATableau);
    }
    let shape = t.shape();
    let width = shape.width();
    let mut out_columns: Vec<Vec<usize>> = shape.column_lengths().iter().map(|&l| vec![0; l]).collect();
    let mut paths = BTreeMap::new();

    for c in 1..=width {
        // unmarked heights of columns c..=width; marks always take column bottoms
        let mut heights: Vec<usize> = (c..=width).map(|col| shape.column_length(col)).collect();
        for row in (1..=shape.column_length(c)).rev() {
            let bottoms: Vec<Location> = heights
                .iter()
                .enumerate()
                .filter(|(_, &h)| h > 0)
                .map(|(offset, &h)| Location::new(h, c + offset))
                .collect();
            let values: Vec<usize> = bottoms.iter().map(|&l| t.get(l)).collect();
            let chosen = ewis(&values)?;
            let path: Vec<Location> = chosen.iter().map(|&i| bottoms[i]).collect();
            for loc in &path {
                heights[loc.col - c] -= 1;
            }
            out_columns[c - 1][row - 1] = values[*chosen.last().expect("nonempty EWIS")];
            paths.insert(Location::new(row, c), path);
        }
    }

    let scan_tableau = Tabloid::new(shape.clone(), out_columns)?;
    Ok(ScanResult { scan_tableau, paths })
}

/// `S(T) ⪯ Y_λ(π)`.
pub fn is_demazure(t: &Tabloid, chain: &QChain) -> Result<bool> {
    let key = chain.lambda_key(t.shape())?;
    let s = scan(t)?;
    s.scan_tableau.dominated_by(&key)
}

/// All π-Demazure tableaux of `shape`, in total order.
pub fn enumerate_demazure(shape: &Partition, chain: &QChain) -> Result<Vec<Tabloid>> {
    let key = chain.lambda_key(shape)?;
    let mut out = Vec::new();
    for t in Tabloid::enumerate_tableaux(shape) {
        if scan(&t)?.scan_tableau.dominated_by(&key)? {
            out.push(t);
        }
    }
    Ok(out)
}
