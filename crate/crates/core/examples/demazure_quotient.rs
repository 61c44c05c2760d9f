//! Reduction modulo the monomials that vanish on a Schubert variety.

use schubert_smt::{demazure_region, reduce_mod, sample_schubert, LinearCombination, QChain, Straightener, Tabloid};

fn main() -> schubert_smt::Result<()> {
    let pi = QChain::from_sets(3, vec![vec![2], vec![1, 2]])?;
    let t = Tabloid::from_columns(3, vec![vec![1, 3], vec![3]])?;
    println!("π = {pi}, Y_λ(π) = {}", pi.lambda_key(t.shape())?);
    println!("T = {t}, region {}", demazure_region(&t, &pi)?);
    let input = LinearCombination::from_tabloid(t.clone());
    let reduced = reduce_mod(&input, &pi)?;
    println!("T ≡ {reduced} on X(π)");
    for seed in 0..3 {
        let f = sample_schubert(&pi, seed);
        println!("  sample {seed}: {} = {}", input.evaluate(&f)?, reduced.evaluate(&f)?);
    }

    // a memoizing straightener amortizes work across many inputs
    let mut s = Straightener::new();
    for t in Tabloid::enumerate_all(t.shape()).into_iter().take(6) {
        let c = LinearCombination::from_tabloid(t.clone());
        println!("{t} -> {}", s.reduce_mod(&c, &pi)?);
    }
    Ok(())
}
