//! A path that stays in C(π) for t > 0 and lands in C(σ_ij π) at t = 0.

use schubert_smt::chain::QSet;
use schubert_smt::linalg::ratio;
use schubert_smt::{cell_of, gamma_path, QChain};

fn main() -> schubert_smt::Result<()> {
    let q = QSet::new(3, vec![1, 2])?;
    let pi = QChain::from_sets(3, vec![vec![3], vec![2, 3]])?;
    let (i, j) = (1, 3);
    println!("π = {pi}, σ_{i}{j} π = {}", pi.reflect(i, j)?);
    for (num, den) in [(1, 3), (1, 4), (1, 100), (0, 1)] {
        let t = ratio(num, den);
        let f = gamma_path(&pi, i, j, &t)?;
        println!("t = {t}: cell {}", cell_of(&f, &q)?);
    }
    Ok(())
}
