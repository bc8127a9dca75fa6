mod common;

use common::rng;
use elemstate::gns::{build_gns, check_faithfulness, cyclicity_check, verify_cyclic_expectation};
use elemstate::linalg::{self, HermitianEigen};
use elemstate::{random, DynamicalVariable};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_product_reproduces_the_state(seed in any::<u64>(), n in 1usize..5, rank in 1usize..5) {
        let mut r = rng(seed);
        let s = random::density(n, rank, &mut r);
        let g = build_gns(n, &s).unwrap();
        let u = random::matrix(n, &mut r);
        let v = random::matrix(n, &mut r);
        // Direct trace oracle for Psi(U* V).
        let want = (s.rho() * u.matrix().adjoint() * v.matrix()).trace();
        let got = g.inner(&u, &v).unwrap();
        prop_assert!((got - want).norm() <= 1e-9 * (1.0 + u.frobenius() * v.frobenius()));
    }

    #[test]
    fn representation_acts_by_left_multiplication(seed in any::<u64>(), n in 1usize..5, rank in 1usize..5) {
        let mut r = rng(seed);
        let s = random::density(n, rank, &mut r);
        let g = build_gns(n, &s).unwrap();
        let u = random::matrix(n, &mut r);
        let v = random::matrix(n, &mut r);
        let lhs = g.represent(&v).unwrap() * g.embed(&u).unwrap();
        let rhs = g.embed(&v.try_mul(&u).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + u.frobenius() * v.frobenius()));
        let b = random::matrix(n, &mut r);
        let res = verify_cyclic_expectation(&g, &s, &b).unwrap();
        prop_assert!(res <= 1e-9 * (1.0 + b.cstar_norm().unwrap()));
    }

    #[test]
    fn dimension_is_n_times_rank(seed in any::<u64>(), n in 1usize..5, rank in 1usize..5) {
        let s = random::density(n, rank, &mut rng(seed));
        let g = build_gns(n, &s).unwrap();
        prop_assert_eq!(g.rep_dim(), n * rank.min(n));
        prop_assert!(check_faithfulness(&g).unwrap());
        prop_assert!(cyclicity_check(&g).unwrap());
    }

    #[test]
    fn gram_spectrum_is_the_state_spectrum_repeated(seed in any::<u64>(), n in 1usize..5) {
        let s = random::density(n, n, &mut rng(seed));
        let g = build_gns(n, &s).unwrap();
        let rho_eigs = HermitianEigen::new(s.rho()).unwrap().values;
        let mut want: Vec<f64> = rho_eigs.iter().flat_map(|&l| std::iter::repeat_n(l, n)).collect();
        want.sort_by(f64::total_cmp);
        for (x, y) in g.gram_eigenvalues().iter().zip(&want) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }
}

#[test]
fn representation_is_a_star_homomorphism() {
    let mut r = rng(99);
    let s = random::density(3, 2, &mut r);
    let g = build_gns(3, &s).unwrap();
    let u = random::matrix(3, &mut r);
    let v = random::matrix(3, &mut r);
    let pu = g.represent(&u).unwrap();
    let pv = g.represent(&v).unwrap();
    let puv = g.represent(&u.try_mul(&v).unwrap()).unwrap();
    assert!(linalg::frobenius(&(puv - &pu * &pv)) <= 1e-8);
    let pstar = g.represent(&u.adjoint()).unwrap();
    assert!(linalg::frobenius(&(pstar - pu.adjoint())) <= 1e-8);
    let id = g.represent(&DynamicalVariable::identity(3)).unwrap();
    assert!(linalg::frobenius(&(id - linalg::CMatrix::identity(6, 6))) <= 1e-10);
}
