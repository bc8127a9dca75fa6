//! Seeded random matrices, states and device bases.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{DynamicalVariable, Observable, Projector};
use crate::linalg::{CMatrix, CVector};
use crate::states::QuantumState;
use crate::C64;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Gaussian (Ginibre) matrix with `rows x cols` entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DynamicalVariable {
    DynamicalVariable::new(ginibre(n, n, rng)).unwrap()
}

pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Observable {
    let g = ginibre(n, n, rng);
    Observable::from_matrix_unchecked((&g + g.adjoint()) * C64::new(0.5, 0.0))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for k in 0..n {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, k)] *= phase;
            }
        }
    }
    q
}

pub fn unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    let v = CVector::from_fn(n, |_, _| gaussian(rng));
    let norm = v.norm();
    v / C64::new(norm, 0.0)
}

/// Density matrix of rank `rank` (`W W* / trace` for a Ginibre `W`).
pub fn density<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> QuantumState {
    let w = ginibre(n, rank.clamp(1, n), rng);
    let rho = &w * w.adjoint();
    let t = rho.trace().re;
    QuantumState::new(rho / C64::new(t, 0.0)).unwrap()
}

pub fn pure<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QuantumState {
    QuantumState::pure(&unit_vector(n, rng)).unwrap()
}

/// Orthogonal projector of the given rank onto a random subspace.
pub fn projector<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Projector {
    let u = unitary(n, rng);
    let cols = u.columns(0, rank.min(n));
    Projector::from_matrix_unchecked(cols * cols.adjoint())
}

/// Observable diagonal in the columns of `basis`, with the given eigenvalues.
pub fn observable_in_basis(basis: &CMatrix, values: &[f64]) -> Observable {
    let n = basis.nrows();
    let mut d = CMatrix::zeros(n, n);
    for (k, &v) in values.iter().enumerate() {
        d[(k, k)] = C64::new(v, 0.0);
    }
    Observable::from_matrix_unchecked(basis * d * basis.adjoint())
}
