//! Invariants checked exhaustively at small sizes or by randomized search.

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schubert_smt::chain::{step_down, QChain, QSet};
use schubert_smt::characters::{apply_word, demazure_oracle, key_polynomial, reduced_word, Polynomial};
use schubert_smt::geometry::{
    cell_of, perm_matrix, q_preferred_reduce, q_preferred_reduce_alt, sample_cell_with, sample_schubert_with,
};
use schubert_smt::linalg::{proportional, rational, MonomialEvaluator, Rational, RationalMatrix};
use schubert_smt::scan::{enumerate_demazure, is_demazure, scan};
use schubert_smt::shape::{Partition, Tabloid};
use schubert_smt::straighten::{
    demazure_region, demazure_violations, demazure_region_at, first_row_violation, shuffle_sum, snake_region,
    straighten_step, straighten_step_mod, verify_master_identity, LinearCombination, Straightener,
};

fn chains_and_shapes(n_max: usize, size: usize) -> Vec<(QChain, Partition)> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let shapes = Partition::all_up_to(n, size);
        for q in QSet::all(n) {
            for shape in shapes.iter().filter(|s| q.check_shape(s).is_ok()) {
                for pi in QChain::all(&q) {
                    out.push((pi, shape.clone()));
                }
            }
        }
    }
    out
}

#[test]
fn step_down_reaches_every_lower_chain() {
    for n in 2..=4 {
        for q in QSet::all(n) {
            let chains = QChain::all(&q);
            for pi in &chains {
                for rho in &chains {
                    if !rho.bruhat_less(pi).unwrap() {
                        continue;
                    }
                    let mut current = pi.clone();
                    let mut steps = 0;
                    while &current != rho {
                        let (i, j) = step_down(rho, &current).unwrap();
                        let next = current.reflect(i, j).unwrap();
                        assert!(next.bruhat_less(&current).unwrap());
                        assert!(rho.bruhat_leq(&next).unwrap());
                        current = next;
                        steps += 1;
                        assert!(steps <= chains.len());
                    }
                }
            }
        }
    }
}

#[test]
fn bruhat_order_matches_lambda_keys() {
    for n in 2..=4 {
        let shapes = Partition::all_up_to(n, 5);
        for q in QSet::all(n) {
            let chains = QChain::all(&q);
            for shape in shapes.iter().filter(|s| q.check_shape(s).is_ok()) {
                let exact = shape.column_length_set() == q.values();
                for rho in &chains {
                    for pi in &chains {
                        let keys = rho.lambda_key(shape).unwrap().dominated_by(&pi.lambda_key(shape).unwrap()).unwrap();
                        let order = rho.bruhat_leq(pi).unwrap();
                        if order {
                            assert!(keys);
                        }
                        if exact {
                            assert_eq!(keys, order);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn qperms_are_exactly_carrel_increasing_tuples() {
    for n in 2..=4 {
        for q in QSet::all(n) {
            let mut images: Vec<Vec<usize>> = QChain::all(&q).iter().map(QChain::to_qperm).collect();
            images.sort();
            let mut expected = Vec::new();
            let mut perm: Vec<usize> = (1..=n).collect();
            permutations(&mut perm, 0, &mut |p| {
                if q.carrels().iter().all(|c| p[c.clone()].windows(2).all(|w| w[0] < w[1])) {
                    expected.push(p.to_vec());
                }
            });
            expected.sort();
            assert_eq!(images, expected);
        }
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[test]
fn keys_and_maximal_chains() {
    for (pi, shape) in chains_and_shapes(4, 5) {
        let key = pi.lambda_key(&shape).unwrap();
        assert!(key.is_tableau());
        assert_eq!(scan(&key).unwrap().scan_tableau, key);
        assert!(is_demazure(&key, &pi).unwrap());
        if pi == QChain::maximal(pi.qset()) {
            assert_eq!(enumerate_demazure(&shape, &pi).unwrap(), Tabloid::enumerate_tableaux(&shape));
        }
    }
}

#[test]
fn snake_relations_vanish_and_satisfy_the_master_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 2..=4 {
        let mats: Vec<RationalMatrix> = (0..3).map(|_| RationalMatrix::random_integer(n, n, &mut rng)).collect();
        let evs: Vec<MonomialEvaluator> = mats.iter().map(|f| MonomialEvaluator::new(f).unwrap()).collect();
        for shape in Partition::all_up_to(n, 6) {
            for t in Tabloid::enumerate_all(&shape) {
                if !t.has_sorted_columns() {
                    continue;
                }
                let Some(v) = first_row_violation(&t) else { continue };
                let mu = snake_region(&shape, v.row, v.col).unwrap();
                let relation = shuffle_sum(&t, &mu).unwrap();
                assert_eq!(relation.coefficient(&t), rational(1), "{t}");
                for ev in &evs {
                    assert!(relation.evaluate_with(ev).unwrap().is_zero(), "{t}");
                }
                if shape.size() <= 4 {
                    let check = verify_master_identity(&t, &mu, &mats[0]).unwrap();
                    assert!(check.holds, "{t}");
                }
            }
        }
    }
}

#[test]
fn master_identity_on_arbitrary_regions() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for shape in Partition::all_up_to(4, 5) {
        let locs: Vec<_> = shape.locations().collect();
        for t in Tabloid::enumerate_all(&shape).into_iter().step_by(7) {
            let mask: u32 = rng.gen_range(0..(1u32 << locs.len()));
            let mu = locs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &l)| l).collect();
            for _ in 0..3 {
                let f = RationalMatrix::random_integer(4, 4, &mut rng);
                assert!(verify_master_identity(&t, &mu, &f).unwrap().holds, "{t} {mu}");
            }
        }
    }
}

#[test]
fn demazure_relations_vanish_on_schubert_varieties() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (pi, shape) in chains_and_shapes(4, 4) {
        let bad: Vec<Tabloid> = Tabloid::enumerate_tableaux(&shape)
            .into_iter()
            .filter(|t| !is_demazure(t, &pi).unwrap())
            .collect();
        if bad.is_empty() {
            continue;
        }
        let mats: Vec<RationalMatrix> = (0..5).map(|_| sample_schubert_with(&pi, &mut rng)).collect();
        let evs: Vec<MonomialEvaluator> = mats.iter().map(|f| MonomialEvaluator::new(f).unwrap()).collect();
        for t in &bad {
            // every violation gives a valid region, not only the chosen one
            for v in demazure_violations(t, &pi).unwrap() {
                let mu = demazure_region_at(t, &pi, v.row, v.col).unwrap();
                let mut cols: Vec<usize> = mu.iter().map(|l| l.col).collect();
                cols.dedup();
                assert!(cols.iter().all(|&b| b >= v.col), "{t} {mu}");
                let relation = shuffle_sum(t, &mu).unwrap();
                for ev in &evs {
                    assert!(relation.evaluate_with(ev).unwrap().is_zero(), "{t} {pi} {mu}");
                }
            }
            let mu = demazure_region(t, &pi).unwrap();
            let f = RationalMatrix::random_integer(shape.n(), shape.n(), &mut rng);
            assert!(verify_master_identity(t, &mu, &f).unwrap().holds);
        }
    }
}

#[test]
fn steps_strictly_descend() {
    for (pi, shape) in chains_and_shapes(4, 4) {
        for t in Tabloid::enumerate_all(&shape) {
            if !t.is_tableau() {
                if pi == QChain::maximal(pi.qset()) {
                    for (u, _) in straighten_step(&t).unwrap().terms() {
                        assert!(u.total_less(&t).unwrap());
                    }
                }
            } else if !is_demazure(&t, &pi).unwrap() {
                for (u, _) in straighten_step_mod(&t, &pi).unwrap().terms() {
                    assert!(u.total_less(&t).unwrap(), "{t} {pi} -> {u}");
                }
            }
        }
    }
}

#[test]
fn maximal_chain_reduction_is_straightening() {
    let mut s = Straightener::new();
    for n in 2..=4 {
        for shape in Partition::all_up_to(n, 4) {
            let q = QSet::for_shape(&shape);
            let max = QChain::maximal(&q);
            for t in Tabloid::enumerate_all(&shape) {
                let c = LinearCombination::from_tabloid(t);
                assert_eq!(s.reduce_mod(&c, &max).unwrap(), s.straighten(&c).unwrap());
            }
        }
    }
}

#[test]
fn demazure_basis_reduction_is_identity() {
    let mut s = Straightener::new();
    for (pi, shape) in chains_and_shapes(3, 4) {
        for t in enumerate_demazure(&shape, &pi).unwrap() {
            let c = LinearCombination::from_tabloid(t);
            assert_eq!(s.reduce_mod(&c, &pi).unwrap(), c);
        }
    }
}

/// Random product of the carrel-preserving column operations.
fn random_carrel_operation<R: Rng>(q: &QSet, rng: &mut R) -> RationalMatrix {
    let n = q.n();
    let carrels = q.carrels();
    let mut p = RationalMatrix::identity(n);
    for _ in 0..6 {
        let c = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 => {
                let mut s = 0;
                while s == 0 {
                    s = rng.gen_range(-5..=5);
                }
                p.scale_column(c, &rational(s));
            }
            1 => {
                let carrel = &carrels[q.carrel_of(c)];
                let d = rng.gen_range(carrel.clone());
                p.swap_columns(c, d);
            }
            _ => {
                let start = carrels[q.carrel_of(c)].start;
                let target = rng.gen_range(start..n);
                if target != c {
                    p.add_column_multiple(c, target, &rational(rng.gen_range(-5..=5)));
                }
            }
        }
    }
    p
}

#[test]
fn carrel_operations_preserve_the_preferred_form_and_scale_monomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for n in 2..=4 {
        for q in QSet::all(n) {
            let shapes: Vec<Partition> = Partition::all_up_to(n, 4)
                .into_iter()
                .filter(|s| q.check_shape(s).is_ok() && !s.is_empty())
                .collect();
            for _ in 0..10 {
                let f = loop {
                    let f = RationalMatrix::random_integer(n, n, &mut rng);
                    if !f.determinant().unwrap().is_zero() {
                        break f;
                    }
                };
                let p = random_carrel_operation(&q, &mut rng);
                if p.determinant().unwrap().is_zero() {
                    continue;
                }
                let h = f.mul(&p).unwrap();
                let rf = q_preferred_reduce(&f, &q).unwrap();
                assert_eq!(q_preferred_reduce(&h, &q).unwrap(), rf);
                assert_eq!(q_preferred_reduce_alt(&h, &q).unwrap(), rf);

                let (ef, eh) = (MonomialEvaluator::new(&f).unwrap(), MonomialEvaluator::new(&h).unwrap());
                for shape in &shapes {
                    let mut alpha: Option<Rational> = None;
                    for t in Tabloid::enumerate_all(shape) {
                        let (a, b) = (ef.eval(&t).unwrap(), eh.eval(&t).unwrap());
                        if a.is_zero() {
                            assert!(b.is_zero());
                            continue;
                        }
                        let ratio = b / a;
                        match &alpha {
                            None => alpha = Some(ratio),
                            Some(x) => assert_eq!(x, &ratio),
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn free_entries_of_a_preferred_basis_pin_the_flag() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for q in QSet::all(4) {
        let carrels = q.carrels();
        for pi in QChain::all(&q) {
            let r = q_preferred_reduce(&sample_cell_with(&pi, &mut rng), &q).unwrap();
            let piv = &r.pivots;
            for c in 0..4 {
                let carrel = q.carrel_of(c);
                for row in 1..piv[c] {
                    let forced = (0..4).any(|d| {
                        d != c && piv[d] == row && (q.carrel_of(d) < carrel || carrels[carrel].contains(&d))
                    });
                    if forced {
                        continue;
                    }
                    let mut g = r.matrix.clone();
                    let v = g.get(row - 1, c) + Rational::one();
                    g.set(row - 1, c, v);
                    let rg = q_preferred_reduce(&g, &q).unwrap();
                    assert_eq!(rg.matrix, g, "perturbed entry ({row},{}) left the preferred form", c + 1);
                    assert_ne!(rg.matrix, r.matrix);
                    assert_eq!(rg.chain, pi);
                }
            }
        }
    }
}

fn evaluation_vector(ev: &MonomialEvaluator, tabloids: &[Tabloid]) -> Vec<Rational> {
    tabloids.iter().map(|t| ev.eval(t).unwrap()).collect()
}

#[test]
fn monomial_evaluations_separate_flags() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for n in 2..=4 {
        for q in QSet::all(n) {
            let lengths: Vec<usize> = q.values().iter().rev().copied().collect();
            let shape = Partition::from_column_lengths(n, &lengths).unwrap();
            let tabloids = Tabloid::enumerate_all(&shape);
            let mut points = Vec::new();
            for pi in QChain::all(&q) {
                for f in [perm_matrix(&pi), sample_cell_with(&pi, &mut rng), sample_cell_with(&pi, &mut rng)] {
                    let flag = q_preferred_reduce(&f, &q).unwrap().matrix;
                    points.push((flag, evaluation_vector(&MonomialEvaluator::new(&f).unwrap(), &tabloids)));
                }
            }
            // small cells are single points, so equal flags do occur
            for a in 0..points.len() {
                for b in a + 1..points.len() {
                    let same_flag = points[a].0 == points[b].0;
                    assert_eq!(proportional(&points[a].1, &points[b].1), same_flag, "{q}: samples {a} and {b}");
                }
            }
        }
    }
}

#[test]
fn vanishing_on_a_cell_extends_to_its_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for (pi, shape) in chains_and_shapes(3, 4) {
        let cell: Vec<RationalMatrix> = (0..20).map(|_| sample_cell_with(&pi, &mut rng)).collect();
        let cell_evs: Vec<MonomialEvaluator> = cell.iter().map(|f| MonomialEvaluator::new(f).unwrap()).collect();
        let mut combos: Vec<LinearCombination> = Vec::new();
        for t in Tabloid::enumerate_tableaux(&shape) {
            if !is_demazure(&t, &pi).unwrap() {
                combos.push(shuffle_sum(&t, &demazure_region(&t, &pi).unwrap()).unwrap());
            }
        }
        let key = pi.lambda_key(&shape).unwrap();
        combos.extend(
            Tabloid::enumerate_all(&shape)
                .into_iter()
                .filter(|t| !t.dominated_by(&key).unwrap())
                .map(LinearCombination::from_tabloid),
        );
        for combo in combos {
            if !cell_evs.iter().all(|ev| combo.evaluate_with(ev).unwrap().is_zero()) {
                continue;
            }
            for rho in pi.lower_interval() {
                for _ in 0..5 {
                    let f = sample_cell_with(&rho, &mut rng);
                    assert!(combo.evaluate(&f).unwrap().is_zero(), "{pi} {rho} {combo}");
                }
            }
        }
    }
}

#[test]
fn key_polynomials_grow_along_bruhat_order() {
    for (pi, shape) in chains_and_shapes(4, 4) {
        let kp = key_polynomial(&shape, &pi).unwrap();
        assert_eq!(kp.at_ones(), (enumerate_demazure(&shape, &pi).unwrap().len() as u64).into());
        for rho in pi.lower_interval() {
            let kr = key_polynomial(&shape, &rho).unwrap();
            for (e, c) in kr.terms() {
                assert!(c <= &kp.coefficient(e), "{shape} {rho} ⪯ {pi}");
            }
        }
    }
}

#[test]
fn cells_of_samples_lie_below() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for n in 2..=4 {
        for q in QSet::all(n) {
            for pi in QChain::all(&q) {
                for _ in 0..5 {
                    let f = sample_schubert_with(&pi, &mut rng);
                    assert!(cell_of(&f, &q).unwrap().bruhat_leq(&pi).unwrap());
                }
            }
        }
    }
}

fn arb_permutation(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (2..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
}

fn arb_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
        RationalMatrix::new(n, n, v.into_iter().map(rational).collect()).unwrap()
    })
}

fn arb_tabloid(n: usize, max_width: usize) -> impl Strategy<Value = Tabloid> {
    proptest::collection::vec((1..=n, any::<u64>()), 1..=max_width).prop_map(move |cols| {
        let mut cols: Vec<(usize, u64)> = cols;
        cols.sort_by_key(|c| std::cmp::Reverse(c.0));
        let columns = cols
            .into_iter()
            .map(|(len, seed)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut values: Vec<usize> = (1..=n).collect();
                rand::seq::SliceRandom::shuffle(values.as_mut_slice(), &mut rng);
                let mut col: Vec<usize> = values[..len].to_vec();
                col.sort_unstable();
                col
            })
            .collect();
        Tabloid::from_columns(n, columns).unwrap()
    })
}

fn arb_polynomial(n: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::collection::vec(0u32..4, n), -5i64..=5), 0..6).prop_map(move |terms| {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    })
}

proptest! {
    #[test]
    fn determinant_is_multiplicative(a in arb_matrix(4), b in arb_matrix(4)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
        prop_assert_eq!(a.determinant().unwrap(), a.cofactor_determinant().unwrap());
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn straightening_preserves_values(t in arb_tabloid(5, 4), f in arb_matrix(5)) {
        let c = LinearCombination::from_tabloid(t.clone());
        let out = Straightener::new().straighten(&c).unwrap();
        prop_assert!(out.terms().all(|(u, _)| u.is_tableau()));
        prop_assert_eq!(out.evaluate(&f).unwrap(), c.evaluate(&f).unwrap());
    }

    #[test]
    fn reduced_words_agree(w in arb_permutation(5)) {
        let a = reduced_word(&w, false).unwrap();
        let b = reduced_word(&w, true).unwrap();
        prop_assert_eq!(a.len(), b.len());
        let n = w.len();
        let lambda: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        let start = Polynomial::monomial(lambda.iter().map(|&p| p as u32).collect());
        prop_assert_eq!(apply_word(&start, &a), apply_word(&start, &b));
        let shape = Partition::new(lambda).unwrap();
        prop_assert_eq!(demazure_oracle(&shape, &w).unwrap(), apply_word(&start, &b));
    }

    #[test]
    fn isobaric_operator_relation(f in arb_polynomial(4), i in 1usize..4) {
        let yi = Polynomial::variable(4, i);
        let yj = Polynomial::variable(4, i + 1);
        let lhs = &(&yi - &yj) * &f.isobaric(i);
        let rhs = &(&yi * &f) - &(&yj * &f.swap_variables(i));
        prop_assert_eq!(lhs, rhs);
        // π_i is idempotent
        prop_assert_eq!(f.isobaric(i).isobaric(i), f.isobaric(i));
    }

    #[test]
    fn reflections_are_involutions(w in arb_permutation(5), a in 1usize..=5, b in 1usize..=5) {
        let n = w.len();
        let q = QSet::full(n).unwrap();
        let pi = QChain::from_qperm(&q, &w).unwrap();
        prop_assert_eq!(QChain::from_qperm(&q, &pi.to_qperm()).unwrap(), pi.clone());
        let (i, j) = (a.min(b), a.max(b));
        if i < j && j <= n {
            prop_assert_eq!(pi.reflect(i, j).unwrap().reflect(i, j).unwrap(), pi);
        }
    }
}
