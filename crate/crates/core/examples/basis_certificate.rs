//! Certifies the π-Demazure basis by exact rank at random cell points, and the
//! vanishing pattern of monomials on the Schubert variety.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schubert_smt::verify::{verify_independence, verify_vanishing};
use schubert_smt::{Partition, QChain};
use schubert_smt::chain::QSet;

fn main() -> schubert_smt::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let shape = Partition::new(vec![2, 1, 0, 0])?;
    let q = QSet::for_shape(&shape);
    for pi in QChain::all(&q).into_iter().step_by(4) {
        let ind = verify_independence(&shape, &pi, None, &mut rng)?;
        let van = verify_vanishing(&shape, &pi, 10, &mut rng)?;
        println!(
            "{pi}: rank {} of {} over {} points; {} monomials vanish on X(π): {}",
            ind.rank,
            ind.basis_size,
            ind.samples,
            van.excluded,
            van.ok()
        );
    }
    Ok(())
}
