use std::collections::HashSet;

use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fqk::monomial::{MonomialMatrix, Phase};
use fqk::pauli::{expand_in_basis, p_matrix, q_matrix, wh_elements, WhGroupElement};

#[test]
fn normal_forms_are_injective() {
    for n in 1..=8 {
        let mats: HashSet<MonomialMatrix> = wh_elements(n).map(|g| g.to_matrix()).collect();
        assert_eq!(mats.len() as u64, n.pow(3));
    }
}

#[test]
fn exact_commutation_for_all_powers() {
    for n in 1..=12u64 {
        let (q, p) = (q_matrix(n as usize), p_matrix(n as usize));
        for k in 0..n as i64 {
            for l in 0..n as i64 {
                let lhs = p.pow(l).mul(&q.pow(k)).unwrap();
                let rhs = q
                    .pow(k)
                    .mul(&p.pow(l))
                    .unwrap()
                    .scale(Phase::root(n, k * l));
                assert_eq!(lhs, rhs, "N = {n}, k = {k}, l = {l}");
            }
        }
    }
}

#[test]
fn generated_monomials_are_unitary() {
    for n in 1..=8 {
        for g in wh_elements(n) {
            let m = g.to_matrix();
            assert!(m.mul(&m.adjoint()).unwrap().is_identity(), "{g:?}");
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(n, n, |_, _| {
        Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

#[test]
fn random_expansions_reconstruct() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3, 4] {
        for _ in 0..50 {
            let x = random_matrix(&mut rng, n);
            let e = expand_in_basis(&x, n).unwrap();
            let err = (e.reconstruct() - &x).norm();
            assert!(
                err <= (n * n) as f64 * f64::EPSILON * 16.0 * x.norm().max(1.0),
                "N = {n}: {err}"
            );
        }
    }
}

#[test]
fn group_elements_expand_to_a_single_coefficient() {
    for n in 2..=6u64 {
        for g in wh_elements(n) {
            let e = expand_in_basis(&g.to_matrix().to_dense(), n as usize).unwrap();
            assert_eq!(e.support(1e-9), vec![(g.q as usize, g.p as usize)]);
            let c = e.coefficients[(g.q as usize, g.p as usize)];
            assert!((c.norm() - (n as f64).sqrt()).abs() < 1e-9);
        }
    }
}

proptest! {
    #[test]
    fn product_law_matches_matrices(n in 1u64..9, a in any::<(i64, i64, i64)>(), b in any::<(i64, i64, i64)>()) {
        let m = n as i64;
        let x = WhGroupElement::new(n, a.0 % m, a.1 % m, a.2 % m);
        let y = WhGroupElement::new(n, b.0 % m, b.1 % m, b.2 % m);
        prop_assert_eq!(x.mul(&y).unwrap().to_matrix(), x.to_matrix().mul(&y.to_matrix()).unwrap());
        prop_assert_eq!(x.inverse().to_matrix(), x.to_matrix().adjoint());
    }
}
