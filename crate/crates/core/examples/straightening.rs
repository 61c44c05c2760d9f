//! Rewriting tabloid monomials in the tableau basis, checked numerically.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schubert_smt::{straighten, LinearCombination, RationalMatrix, Tabloid};

fn main() -> schubert_smt::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for columns in [
        vec![vec![1, 4], vec![2, 3]],
        vec![vec![2, 3, 4], vec![1, 4], vec![1]],
        vec![vec![3, 4], vec![1, 2]],
    ] {
        let t = Tabloid::from_columns(4, columns)?;
        let input = LinearCombination::from_tabloid(t);
        let output = straighten(&input)?;
        println!("{input}\n  = {output}");
        let f = RationalMatrix::random_integer(4, 4, &mut rng);
        println!("  at a random matrix: {} = {}", input.evaluate(&f)?, output.evaluate(&f)?);
    }
    Ok(())
}
