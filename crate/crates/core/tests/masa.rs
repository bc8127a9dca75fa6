mod common;

use common::rng;
use elemstate::linalg::{self, CMatrix};
use elemstate::masa::{masa_from_family, CommutingFamily};
use elemstate::{random, DeviceType, Observable, Registry};
use proptest::prelude::*;

fn random_device(n: usize, seed: u64) -> DeviceType {
    DeviceType::from_basis("d", random::unitary(n, &mut rng(seed))).unwrap()
}

fn values(n: usize, seed: u64) -> Vec<f64> {
    use rand::Rng;
    let mut r = rng(seed ^ 0xabc);
    (0..n).map(|_| r.random_range(-3.0..3.0)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn characters_are_homomorphisms(seed in any::<u64>(), n in 1usize..6) {
        let d = random_device(n, seed);
        let a = d.span_element(&values(n, seed));
        let b = d.span_element(&values(n, seed.wrapping_add(1)));
        let sum = a.combine(0.7, &b, -1.3).unwrap();
        let prod = a.compatible_product(&b).unwrap();
        for ch in d.characters() {
            let (x, y) = (d.evaluate(&ch, &a).unwrap(), d.evaluate(&ch, &b).unwrap());
            prop_assert!((d.evaluate(&ch, &sum).unwrap() - (0.7 * x - 1.3 * y)).abs() <= 1e-9);
            prop_assert!((d.evaluate(&ch, &prod).unwrap() - x * y).abs() <= 1e-9);
            prop_assert_eq!(d.evaluate(&ch, &Observable::identity(n)).unwrap(), 1.0);
        }
    }

    #[test]
    fn character_values_exhaust_the_spectrum(seed in any::<u64>(), n in 1usize..6) {
        let d = random_device(n, seed);
        let mut vals = values(n, seed);
        if n > 2 {
            vals[1] = vals[0]; // a degenerate eigenvalue
        }
        let a = d.span_element(&vals);
        let mut from_chars = d.character_values(&a).unwrap();
        from_chars.sort_by(f64::total_cmp);
        let spec = a.spectrum().unwrap();
        for (x, y) in from_chars.iter().zip(&spec) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn projectors_resolve_identity(seed in any::<u64>(), n in 1usize..7) {
        let d = random_device(n, seed);
        let mut sum = CMatrix::zeros(n, n);
        for p in d.projectors() {
            sum += p.matrix();
            prop_assert_eq!(p.rank(), 1);
        }
        prop_assert!(linalg::frobenius(&(sum - CMatrix::identity(n, n))) <= 1e-10);
    }

    #[test]
    fn completed_family_contains_its_members(seed in any::<u64>(), n in 2usize..6) {
        // A degenerate observable forces the completion to split a block.
        let mut r = rng(seed);
        let u = random::unitary(n, &mut r);
        let mut vals = vec![1.0; n];
        vals[0] = -2.0;
        let a = random::observable_in_basis(&u, &vals);
        let fam = CommutingFamily::new(vec![a.clone()], 1e-9).unwrap();
        let d = masa_from_family("m", &fam, seed).unwrap();
        prop_assert_eq!(d.projectors().len(), n);
        prop_assert!(d.contains(&a).unwrap());
        let again = masa_from_family("m", &fam, seed).unwrap();
        prop_assert_eq!(d.basis(), again.basis());
    }
}

#[test]
fn observable_outside_the_masa_is_rejected() {
    let d = DeviceType::from_basis("z", CMatrix::identity(2, 2)).unwrap();
    let x = elemstate::operators::pauli_x();
    assert!(!d.contains(&x).unwrap());
    assert!(d.character_values(&x).is_err());
}

#[test]
fn non_commuting_family_is_rejected() {
    let z = elemstate::operators::pauli_z();
    let x = elemstate::operators::pauli_x();
    assert!(CommutingFamily::new(vec![z, x], 1e-9).is_err());
}

#[test]
fn registry_rules() {
    let a = DeviceType::from_basis("a", CMatrix::identity(2, 2)).unwrap();
    let b = DeviceType::from_basis("a", CMatrix::identity(2, 2)).unwrap();
    assert!(Registry::new(vec![a.clone(), b]).is_err());
    let three = DeviceType::from_basis("c", CMatrix::identity(3, 3)).unwrap();
    assert!(Registry::new(vec![a.clone(), three]).is_err());
    let r = Registry::new(vec![a]).unwrap();
    assert!(r.get("missing").is_err());
}
