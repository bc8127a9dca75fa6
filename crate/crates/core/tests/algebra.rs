mod common;

use common::{c, eig2, power_norm, rng};
use elemstate::algebra::{
    adjoint, check_hypothesis, commutes, cstar_norm, hermitian_parts, jordan_product, spectrum,
};
use elemstate::linalg::{self, CMatrix};
use elemstate::{random, DynamicalVariable, Observable, C64};
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = usize> {
    prop_oneof![Just(1usize), Just(2), Just(3), Just(4), Just(6)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cstar_identity(seed in any::<u64>(), n in dims(), exp in -6.0f64..6.0) {
        let u = random::matrix(n, &mut rng(seed)).scale(c(10f64.powf(exp)));
        let lhs = cstar_norm(&adjoint(&u).try_mul(&u).unwrap()).unwrap();
        let norm = cstar_norm(&u).unwrap();
        prop_assert!((lhs - norm * norm).abs() <= 1e-10 * norm * norm);
    }

    #[test]
    fn norm_matches_power_iteration(seed in any::<u64>(), n in dims()) {
        let u = random::matrix(n, &mut rng(seed));
        let norm = cstar_norm(&u).unwrap();
        prop_assert!((norm - power_norm(u.matrix())).abs() <= 1e-8 * (1.0 + norm));
    }

    #[test]
    fn jordan_product_is_symmetric_and_hermitian(seed in any::<u64>(), n in dims()) {
        let mut r = rng(seed);
        let a = random::hermitian(n, &mut r);
        let b = random::hermitian(n, &mut r);
        let ab = jordan_product(&a, &b).unwrap();
        let ba = jordan_product(&b, &a).unwrap();
        let scale = 1.0 + a.norm().unwrap() * b.norm().unwrap();
        prop_assert!(linalg::frobenius(&(ab.matrix() - ba.matrix())) <= 1e-12 * scale);
        // Against the plain anticommutator.
        let anti = (a.matrix() * b.matrix() + b.matrix() * a.matrix()) * c(0.5);
        prop_assert!(linalg::frobenius(&(ab.matrix() - anti)) <= 1e-12 * scale);
        prop_assert!(ab.value().is_hermitian().unwrap());
    }

    #[test]
    fn spectrum_invariant_under_unitary_conjugation(seed in any::<u64>(), n in dims()) {
        let mut r = rng(seed);
        let a = random::hermitian(n, &mut r);
        let u = random::unitary(n, &mut r);
        let conj = Observable::from_matrix(&u * a.matrix() * u.adjoint()).unwrap();
        let (s1, s2) = (spectrum(&a).unwrap(), spectrum(&conj).unwrap());
        let scale = 1.0 + a.norm().unwrap();
        for (x, y) in s1.iter().zip(&s2) {
            prop_assert!((x - y).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn two_by_two_spectrum_matches_closed_form(
        a in -5.0f64..5.0, d in -5.0f64..5.0, br in -5.0f64..5.0, bi in -5.0f64..5.0,
    ) {
        let m = CMatrix::from_row_slice(2, 2, &[c(a), C64::new(br, bi), C64::new(br, -bi), c(d)]);
        let s = spectrum(&Observable::from_matrix(m.clone()).unwrap()).unwrap();
        let want = eig2(&m);
        prop_assert!((s[0] - want[0]).abs() <= 1e-12 * 10.0);
        prop_assert!((s[1] - want[1]).abs() <= 1e-12 * 10.0);
    }

    #[test]
    fn hermitian_parts_recompose(seed in any::<u64>(), n in dims()) {
        let u = random::matrix(n, &mut rng(seed));
        let (a, b) = hermitian_parts(&u);
        let back = a.matrix() + b.matrix() * C64::new(0.0, 1.0);
        prop_assert!(linalg::frobenius(&(back - u.matrix())) <= 1e-15 * u.frobenius().max(1.0) * 4.0);
        prop_assert!(a.value().is_hermitian().unwrap());
        prop_assert!(b.value().is_hermitian().unwrap());
    }

    #[test]
    fn spectrum_bounded_by_norm(seed in any::<u64>(), n in dims()) {
        let a = random::hermitian(n, &mut rng(seed));
        let norm = a.norm().unwrap();
        let s = spectrum(&a).unwrap();
        prop_assert!(s.iter().all(|x| x.abs() <= norm * (1.0 + 1e-12)));
        prop_assert!((s.iter().fold(0.0f64, |m, x| m.max(x.abs())) - norm).abs() <= 1e-12 * (1.0 + norm));
    }

    #[test]
    fn hypothesis_holds_for_every_element(seed in any::<u64>(), n in dims()) {
        let u = random::matrix(n, &mut rng(seed));
        prop_assert!(check_hypothesis(&u).unwrap().passed());
    }
}

#[test]
fn commuting_functions_of_one_observable() {
    let mut r = rng(3);
    let a = random::hermitian(4, &mut r);
    let a2 = a.compatible_product(&a).unwrap();
    let a3 = a2.compatible_product(&a).unwrap();
    assert!(commutes(&a2, &a3, 1e-10).unwrap());
    let b = random::hermitian(4, &mut r);
    assert!(!commutes(&a, &b, 1e-10).unwrap());
    let plain = a.matrix() * a2.matrix();
    assert!(linalg::frobenius(&(a3.matrix() - plain)) <= 1e-12 * (1.0 + a.norm().unwrap().powi(3)));
}

#[test]
fn non_hermitian_input_is_rejected() {
    let u = DynamicalVariable::unit(2, 0, 1);
    assert!(Observable::new(u).is_err());
}
