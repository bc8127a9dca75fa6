//! Named operators, vectors and device bases used by fixtures and the CLI.

use crate::algebra::{DynamicalVariable, Observable};
use crate::linalg::{CMatrix, CVector};
use crate::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn pauli_x() -> Observable {
    Observable::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_y() -> Observable {
    let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    Observable::from_matrix(m).unwrap()
}

pub fn pauli_z() -> Observable {
    Observable::diagonal(&[1.0, -1.0]).unwrap()
}

/// `cos(theta) Z + sin(theta) X`: a spin measurement in the x-z plane.
pub fn spin_xz(theta: f64) -> Observable {
    pauli_z().combine(theta.cos(), &pauli_x(), theta.sin()).unwrap()
}

/// `|i><j|` in dimension `n`.
pub fn ket_bra(n: usize, i: usize, j: usize) -> DynamicalVariable {
    DynamicalVariable::unit(n, i, j)
}

/// Computational basis vector `|k>`.
pub fn ket(n: usize, k: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[k] = c(1.0, 0.0);
    v
}

/// `(|0> + |1>) / sqrt 2`.
pub fn plus() -> CVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)])
}

/// `(|01> - |10>) / sqrt 2`.
pub fn singlet() -> CVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVector::from_vec(vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)])
}

/// The four Bell vectors `Φ+, Φ-, Ψ+, Ψ-`.
pub fn bell_basis() -> Vec<CVector> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    vec![
        CVector::from_vec(vec![c(s, 0.0), z, z, c(s, 0.0)]),
        CVector::from_vec(vec![c(s, 0.0), z, z, c(-s, 0.0)]),
        CVector::from_vec(vec![z, c(s, 0.0), c(s, 0.0), z]),
        CVector::from_vec(vec![z, c(s, 0.0), c(-s, 0.0), z]),
    ]
}

/// Settings `(A1, A2, B1, B2)` on two qubits reaching `2 sqrt 2` on the singlet.
pub fn chsh_optimal_settings() -> [Observable; 4] {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    chsh_settings_from_angles([0.0, FRAC_PI_2, 5.0 * FRAC_PI_4, 3.0 * FRAC_PI_4])
}

/// Two-qubit settings `A_i ⊗ I`, `I ⊗ B_j` from x-z plane angles `[a1, a2, b1, b2]`.
pub fn chsh_settings_from_angles(angles: [f64; 4]) -> [Observable; 4] {
    let id = Observable::identity(2);
    let a = |t: f64| spin_xz(t).kron(&id).unwrap();
    let b = |t: f64| id.kron(&spin_xz(t)).unwrap();
    [a(angles[0]), a(angles[1]), b(angles[2]), b(angles[3])]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_basis_is_orthonormal() {
        let b = bell_basis();
        for (i, u) in b.iter().enumerate() {
            for (j, v) in b.iter().enumerate() {
                let ip = u.dotc(v);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c(want, 0.0)).norm() < 1e-15);
            }
        }
        assert_eq!(b[3], singlet());
    }

    #[test]
    fn spin_axes() {
        assert_eq!(spin_xz(0.0), pauli_z());
        let x = spin_xz(std::f64::consts::FRAC_PI_2);
        assert!((x.matrix() - pauli_x().matrix()).norm() < 1e-15);
    }
}
