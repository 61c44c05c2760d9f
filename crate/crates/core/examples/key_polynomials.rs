//! Key polynomials from Demazure tableaux against isobaric divided differences.

use schubert_smt::characters::reduced_word;
use schubert_smt::chain::QSet;
use schubert_smt::{demazure_dimension, demazure_oracle, key_polynomial, Partition, QChain};

fn main() -> schubert_smt::Result<()> {
    let shape = Partition::new(vec![2, 1, 0])?;
    let q = QSet::for_shape(&shape);
    for pi in QChain::all(&q) {
        let w = pi.to_qperm();
        let kp = key_polynomial(&shape, &pi)?;
        assert_eq!(kp, demazure_oracle(&shape, &w)?);
        println!(
            "{pi}  word {:?}  dim {}  {kp}",
            reduced_word(&w, false)?,
            demazure_dimension(&shape, &pi)?
        );
    }
    Ok(())
}
