//! Bruhat cells: Q-preferred bases, cells of random points, and the order.

use schubert_smt::{cell_of, perm_matrix, q_preferred_reduce, sample_cell, step_down, QChain};
use schubert_smt::chain::QSet;

fn main() -> schubert_smt::Result<()> {
    let q = QSet::new(4, vec![1, 3])?;
    let chains = QChain::all(&q);
    println!("{} chains for Q = {q}", chains.len());
    let pi = chains.last().unwrap().clone();
    let f = sample_cell(&pi, 42);
    let basis = q_preferred_reduce(&f, &q)?;
    println!("random point of C({pi}):\n{f}");
    println!("Q-preferred form, pivots {:?}:\n{}", basis.pivots, basis.matrix);
    assert_eq!(cell_of(&f, &q)?, pi);
    println!("permutation matrix of {pi}:\n{}", perm_matrix(&pi));

    // walk down from the top chain to the bottom one, one reflection at a time
    let bottom = chains[0].clone();
    let mut current = pi;
    while current != bottom {
        let (i, j) = step_down(&bottom, &current)?;
        let next = current.reflect(i, j)?;
        println!("{current} --σ_{i}{j}--> {next}");
        current = next;
    }
    Ok(())
}
