//! Scanning a tableau and testing it against Demazure bounds.

use schubert_smt::{enumerate_demazure, is_demazure, scan, Partition, QChain, Tabloid};

fn main() -> schubert_smt::Result<()> {
    let t = Tabloid::from_columns(3, vec![vec![1, 3], vec![2]])?;
    let result = scan(&t)?;
    println!("T    = {t}");
    println!("S(T) = {}", result.scan_tableau);
    for (loc, path) in &result.paths {
        let steps: Vec<String> = path.iter().map(ToString::to_string).collect();
        println!("  path from {loc}: {}", steps.join(" -> "));
    }

    // T is π-Demazure exactly when S(T) ⪯ Y_λ(π)
    let shape = t.shape().clone();
    for sets in [vec![vec![2], vec![2, 3]], vec![vec![3], vec![2, 3]], vec![vec![1], vec![1, 2]]] {
        let pi = QChain::from_sets(3, sets)?;
        println!("{pi}: Y_λ = {}, demazure = {}", pi.lambda_key(&shape)?, is_demazure(&t, &pi)?);
    }

    let shape = Partition::new(vec![2, 1, 0])?;
    let pi = QChain::from_sets(3, vec![vec![2], vec![1, 2]])?;
    let basis = enumerate_demazure(&shape, &pi)?;
    println!("{} π-Demazure tableaux of shape {shape} for {pi}:", basis.len());
    for t in basis {
        println!("  {t}");
    }
    Ok(())
}
