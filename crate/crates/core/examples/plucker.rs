//! The three-term Plücker relation from shuffles of a snake region, and the
//! determinant that certifies it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schubert_smt::straighten::{first_row_violation, master_matrix};
use schubert_smt::shape::{Location, Region};
use schubert_smt::{mu_shuffles, snake_region, straighten_step, verify_master_identity, RationalMatrix, Tabloid};

fn main() -> schubert_smt::Result<()> {
    let t = Tabloid::from_columns(4, vec![vec![1, 4], vec![2, 3]])?;
    let v = first_row_violation(&t).expect("not a tableau");
    let mu = snake_region(t.shape(), v.row, v.col)?;
    println!("violation at {v}, snake region {mu}");
    for term in mu_shuffles(&t, &mu)? {
        println!("  {:+} {}", term.sign, term.result);
    }
    println!("[1,4][2,3] = {}", straighten_step(&t)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = RationalMatrix::random_integer(4, 4, &mut rng);
    println!("compound matrix:\n{}", master_matrix(&t, &mu, &f)?);
    let check = verify_master_identity(&t, &mu, &f)?;
    println!("det = {}, shuffle sum = {}, holds = {}", check.determinant, check.shuffle_sum, check.holds);

    // a smaller region is not a relation, but the identity still holds up to sign
    let small = Region::new([Location::new(2, 1), Location::new(1, 2)]);
    let check = verify_master_identity(&t, &small, &f)?;
    println!("region {small}: det = {}, shuffle sum = {}, sign {:?}", check.determinant, check.shuffle_sum, check.sign);
    Ok(())
}
