//! Numerical GNS construction for a state on `M_n(C)`.
//!
//! The algebra is spanned by the matrix units `E_ij`, indexed row-major as
//! `i * n + j`. The Gram matrix `G[(ij),(kl)] = Psi(E_ij* E_kl)` defines the
//! semi-inner product; its eigenvectors above the rank cutoff, scaled by the
//! square roots of their eigenvalues, give orthonormal coordinates on the
//! quotient by the null space. Left multiplication then descends to `d x d`
//! matrices `Pi(V)`, and `Omega` is the class of the identity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::DynamicalVariable;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, HermitianEigen};
use crate::random;
use crate::states::QuantumState;
use crate::tol;
use crate::C64;

/// Random probes used by [`check_faithfulness`] on top of the matrix units.
pub const FAITHFULNESS_PROBES: usize = 32;
const FAITHFULNESS_SEED: u64 = 0x6e5f_f417;
const FAITHFULNESS_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct GnsRepresentation {
    source_dim: usize,
    rep_dim: usize,
    /// `d x n^2`: column `(ij)` holds the quotient coordinates of `E_ij`.
    embedding: CMatrix,
    /// `Pi(E_ij)` for every matrix unit, row-major.
    unit_images: Vec<CMatrix>,
    cyclic: CVector,
    gram_eigenvalues: Vec<f64>,
    rank_cutoff: f64,
}

/// Builds the representation with the default relative rank cutoff.
pub fn build_gns(n: usize, psi: &QuantumState) -> Result<GnsRepresentation> {
    build_gns_with_cutoff(n, psi, tol::GNS_RANK)
}

pub fn build_gns_with_cutoff(n: usize, psi: &QuantumState, rank_cutoff: f64) -> Result<GnsRepresentation> {
    if psi.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: psi.dim() });
    }
    let trace = psi.rho().trace();
    if (trace.re - 1.0).abs() > tol::PROB_SUM || trace.im.abs() > tol::PROB_SUM {
        return Err(Error::NotAState(format!("trace {trace}")));
    }
    let units: Vec<CMatrix> =
        (0..n * n).map(|ij| DynamicalVariable::unit(n, ij / n, ij % n).into_matrix()).collect();

    let nn = n * n;
    let mut gram = CMatrix::zeros(nn, nn);
    for a in 0..nn {
        let left = units[a].adjoint();
        for b in a..nn {
            let g = linalg::trace_product(psi.rho(), &(&left * &units[b]));
            gram[(a, b)] = g;
            gram[(b, a)] = g.conj();
        }
    }

    let eig = HermitianEigen::new(&gram)?;
    if eig.values[0] < -tol::STATE_EIG * eig.values[nn - 1].max(1.0) {
        return Err(Error::NotAState(format!("Gram matrix has negative eigenvalue {:.3e}", eig.values[0])));
    }
    let top = eig.values[nn - 1];
    let kept: Vec<usize> = (0..nn).filter(|&k| eig.values[k] > rank_cutoff * top).collect();
    let d = kept.len();
    if d == 0 {
        return Err(Error::NotAState("Gram matrix vanishes".into()));
    }

    // embedding = Λ^{1/2} W*, pullback = W Λ^{-1/2}
    let mut embedding = CMatrix::zeros(d, nn);
    let mut pullback = CMatrix::zeros(nn, d);
    for (row, &k) in kept.iter().enumerate() {
        let s = eig.values[k].sqrt();
        for c in 0..nn {
            let w = eig.vectors[(c, k)];
            embedding[(row, c)] = w.conj() * s;
            pullback[(c, row)] = w / s;
        }
    }

    // Left multiplication by E_ij on row-major coefficient vectors maps
    // coefficient (j, l) to (i, l).
    let unit_images = (0..nn)
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let mut left = CMatrix::zeros(nn, nn);
            for l in 0..n {
                left[(i * n + l, j * n + l)] = C64::new(1.0, 0.0);
            }
            &embedding * left * &pullback
        })
        .collect();

    let identity_coeffs =
        CVector::from_fn(nn, |ij, _| if ij / n == ij % n { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
    let cyclic = &embedding * identity_coeffs;

    Ok(GnsRepresentation {
        source_dim: n,
        rep_dim: d,
        embedding,
        unit_images,
        cyclic,
        gram_eigenvalues: eig.values,
        rank_cutoff,
    })
}

fn coefficients(u: &DynamicalVariable) -> CVector {
    let n = u.dim();
    let m = u.matrix();
    CVector::from_fn(n * n, |ij, _| m[(ij / n, ij % n)])
}

impl GnsRepresentation {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    /// `Omega`, the class of the identity.
    pub fn cyclic(&self) -> &CVector {
        &self.cyclic
    }

    pub fn gram_eigenvalues(&self) -> &[f64] {
        &self.gram_eigenvalues
    }

    pub fn rank_cutoff(&self) -> f64 {
        self.rank_cutoff
    }

    fn check_dim(&self, u: &DynamicalVariable) -> Result<()> {
        if u.dim() != self.source_dim {
            return Err(Error::DimensionMismatch { expected: self.source_dim, found: u.dim() });
        }
        Ok(())
    }

    /// Quotient coordinates of the class `Phi(U)`.
    pub fn embed(&self, u: &DynamicalVariable) -> Result<CVector> {
        self.check_dim(u)?;
        Ok(&self.embedding * coefficients(u))
    }

    /// `(Phi(U), Phi(V))`.
    pub fn inner(&self, u: &DynamicalVariable, v: &DynamicalVariable) -> Result<C64> {
        Ok(self.embed(u)?.dotc(&self.embed(v)?))
    }

    /// `Pi(V) = sum_ij V_ij Pi(E_ij)`.
    pub fn represent(&self, v: &DynamicalVariable) -> Result<CMatrix> {
        self.check_dim(v)?;
        let d = self.rep_dim;
        let mut out = CMatrix::zeros(d, d);
        for (ij, c) in coefficients(v).iter().enumerate() {
            if *c != C64::new(0.0, 0.0) {
                out += &self.unit_images[ij] * *c;
            }
        }
        Ok(out)
    }

    /// `(Omega, Pi(b) Omega)`.
    pub fn expectation(&self, b: &DynamicalVariable) -> Result<C64> {
        let pi = self.represent(b)?;
        Ok(self.cyclic.dotc(&(pi * &self.cyclic)))
    }
}

/// `|(Omega, Pi(b) Omega) - Psi(b)|`.
pub fn verify_cyclic_expectation(
    g: &GnsRepresentation,
    psi: &QuantumState,
    b: &DynamicalVariable,
) -> Result<f64> {
    Ok((g.expectation(b)? - psi.extend(b)?).norm())
}

/// Probes injectivity of `Pi` on every matrix unit and on random unit-norm
/// elements: every probe must satisfy `|Pi(U)| > 1e-6`.
pub fn check_faithfulness(g: &GnsRepresentation) -> Result<bool> {
    check_faithfulness_with(g, FAITHFULNESS_PROBES, FAITHFULNESS_SEED)
}

pub fn check_faithfulness_with(g: &GnsRepresentation, probes: usize, seed: u64) -> Result<bool> {
    let n = g.source_dim;
    for ij in 0..n * n {
        let u = DynamicalVariable::unit(n, ij / n, ij % n);
        if linalg::operator_norm(&g.represent(&u)?)? <= FAITHFULNESS_FLOOR {
            return Ok(false);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..probes {
        let u = random::matrix(n, &mut rng);
        let u = u.scale(C64::new(1.0 / u.cstar_norm()?, 0.0));
        if linalg::operator_norm(&g.represent(&u)?)? <= FAITHFULNESS_FLOOR {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `{Pi(E_ij) Omega}` spans the whole representation space.
pub fn cyclicity_check(g: &GnsRepresentation) -> Result<bool> {
    let d = g.rep_dim;
    let nn = g.unit_images.len();
    let mut span = CMatrix::zeros(d, nn);
    for (ij, pi) in g.unit_images.iter().enumerate() {
        span.set_column(ij, &(pi * &g.cyclic));
    }
    let gram = &span * span.adjoint();
    if linalg::frobenius(&gram) == 0.0 {
        return Ok(false);
    }
    Ok(linalg::psd_rank(&gram, g.rank_cutoff)? == d)
}
