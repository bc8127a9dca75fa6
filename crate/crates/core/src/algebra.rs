//! The full matrix algebra `M_n(C)` with its involution, C*-norm, Jordan
//! product and the observable/projector subsets.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, HermitianEigen};
use crate::tol;
use crate::C64;

/// Default cap on the matrix dimension.
pub const MAX_DIM: usize = 64;

/// An element of the algebra: a square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalVariable {
    m: CMatrix,
}

impl DynamicalVariable {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidShape(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidShape("dimension must be at least 1".into()));
        }
        if m.nrows() > MAX_DIM {
            return Err(Error::InvalidShape(format!("dimension {} exceeds cap {}", m.nrows(), MAX_DIM)));
        }
        Ok(Self { m })
    }

    /// Builds from row-major entries.
    pub fn from_rows(n: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidShape(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        Self::new(DMatrix::from_row_slice(n, n, entries))
    }

    /// Builds from real row-major entries.
    pub fn from_real_rows(n: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_rows(n, &c)
    }

    pub fn identity(n: usize) -> Self {
        Self { m: CMatrix::identity(n, n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { m: CMatrix::zeros(n, n) }
    }

    /// Matrix unit `E_ij` (one at row `i`, column `j`).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        m[(i, j)] = C64::new(1.0, 0.0);
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.adjoint() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self { m: &self.m * &other.m })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self { m: &self.m + &other.m })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self { m: &self.m - &other.m })
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { m: &self.m * z }
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        Self::new(linalg::kron(&self.m, &other.m))
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn frobenius(&self) -> f64 {
        linalg::frobenius(&self.m)
    }

    pub fn cstar_norm(&self) -> Result<f64> {
        linalg::operator_norm(&self.m)
    }

    pub fn is_hermitian(&self) -> Result<bool> {
        Ok(hermiticity_defect(&self.m)? <= 0.0)
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

/// `deviation - allowed` for the Hermiticity test; non-positive means Hermitian.
fn hermiticity_defect(m: &CMatrix) -> Result<f64> {
    let deviation = linalg::max_abs(&(m - m.adjoint()));
    if deviation == 0.0 {
        return Ok(0.0);
    }
    let allowed = tol::HERMITIAN * linalg::operator_norm(m)?;
    Ok(deviation - allowed)
}

/// A Hermitian element of the algebra.
///
/// The stored matrix is symmetrized on construction, so `adjoint` of the
/// inner value equals it exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    value: DynamicalVariable,
}

impl Observable {
    pub fn new(value: DynamicalVariable) -> Result<Self> {
        let excess = hermiticity_defect(&value.m)?;
        if excess > 0.0 {
            let deviation = linalg::max_abs(&(&value.m - value.m.adjoint()));
            return Err(Error::NotHermitian { deviation, allowed: deviation - excess });
        }
        Ok(Self::from_hermitian_part(&value))
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(DynamicalVariable::new(m)?)
    }

    pub fn from_real_rows(n: usize, entries: &[f64]) -> Result<Self> {
        Self::new(DynamicalVariable::from_real_rows(n, entries)?)
    }

    /// Real diagonal observable.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        Self::from_matrix(m)
    }

    /// Takes `(u + u*) / 2` without a tolerance check. Used internally where
    /// the input is Hermitian up to rounding by construction.
    pub(crate) fn from_hermitian_part(u: &DynamicalVariable) -> Self {
        Self { value: DynamicalVariable { m: linalg::hermitize(&u.m) } }
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self { value: DynamicalVariable { m: linalg::hermitize(&m) } }
    }

    pub fn identity(n: usize) -> Self {
        Self { value: DynamicalVariable::identity(n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { value: DynamicalVariable::zeros(n) }
    }

    pub fn dim(&self) -> usize {
        self.value.dim()
    }

    pub fn value(&self) -> &DynamicalVariable {
        &self.value
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.value.m
    }

    pub fn into_value(self) -> DynamicalVariable {
        self.value
    }

    /// Real linear combination with another observable.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self::from_matrix_unchecked(
            self.matrix() * C64::new(alpha, 0.0) + other.matrix() * C64::new(beta, 0.0),
        ))
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self::from_matrix_unchecked(self.matrix() * C64::new(alpha, 0.0))
    }

    /// Product of two commuting observables, symmetrized.
    pub fn compatible_product(&self, other: &Self) -> Result<Self> {
        let p = self.value.try_mul(&other.value)?;
        Ok(Self::from_hermitian_part(&p))
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_hermitian_part(&self.value.kron(&other.value)?))
    }

    /// Operator norm: largest eigenvalue modulus.
    pub fn norm(&self) -> Result<f64> {
        linalg::hermitian_norm(self.matrix())
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        HermitianEigen::new(self.matrix())
    }

    pub fn spectrum(&self) -> Result<Vec<f64>> {
        spectrum(self)
    }
}

/// A Hermitian idempotent.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    value: Observable,
}

impl Projector {
    pub fn new(value: Observable) -> Result<Self> {
        let m = value.matrix();
        let defect = linalg::frobenius(&(m * m - m));
        if defect > tol::IDEMPOTENT {
            return Err(Error::NotProjector(format!("|p^2 - p| = {defect:.3e}")));
        }
        let spec = value.spectrum()?;
        if let Some(bad) = spec.iter().find(|&&l| l.abs() > tol::EIGEN && (l - 1.0).abs() > tol::EIGEN) {
            return Err(Error::NotProjector(format!("eigenvalue {bad} not in {{0, 1}}")));
        }
        Ok(Self { value })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(Observable::from_matrix(m)?)
    }

    /// `v v*` for a unit vector (normalized here).
    pub fn rank_one(v: &linalg::CVector) -> Result<Self> {
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::NotProjector("zero vector".into()));
        }
        let u = v / C64::new(norm, 0.0);
        Ok(Self::from_matrix_unchecked(&u * u.adjoint()))
    }

    /// Skips the idempotency check; for matrices built as sums of `v v*`
    /// over orthonormal vectors.
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self { value: Observable::from_matrix_unchecked(m) }
    }

    pub fn identity(n: usize) -> Self {
        Self { value: Observable::identity(n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { value: Observable::zeros(n) }
    }

    pub fn complement(&self) -> Self {
        let n = self.dim();
        Self::from_matrix_unchecked(CMatrix::identity(n, n) - self.matrix())
    }

    pub fn dim(&self) -> usize {
        self.value.dim()
    }

    pub fn observable(&self) -> &Observable {
        &self.value
    }

    pub fn matrix(&self) -> &CMatrix {
        self.value.matrix()
    }

    pub fn rank(&self) -> usize {
        self.matrix().trace().re.round() as usize
    }
}

pub fn adjoint(u: &DynamicalVariable) -> DynamicalVariable {
    u.adjoint()
}

pub fn mul(u: &DynamicalVariable, v: &DynamicalVariable) -> Result<DynamicalVariable> {
    u.try_mul(v)
}

/// `a ∘ b = ((a + b)^2 - a^2 - b^2) / 2`.
pub fn jordan_product(a: &Observable, b: &Observable) -> Result<Observable> {
    same_dim(a.dim(), b.dim())?;
    let s = a.matrix() + b.matrix();
    let m = (&s * &s - a.matrix() * a.matrix() - b.matrix() * b.matrix()) * C64::new(0.5, 0.0);
    Ok(Observable::from_matrix_unchecked(m))
}

/// Eigenvalues in ascending order, with multiplicity.
pub fn spectrum(a: &Observable) -> Result<Vec<f64>> {
    Ok(a.eigen()?.values)
}

pub fn cstar_norm(u: &DynamicalVariable) -> Result<f64> {
    u.cstar_norm()
}

/// `|ab - ba| <= tol (1 + |a| |b|)` in operator norm.
pub fn commutes(a: &Observable, b: &Observable, tol: f64) -> Result<bool> {
    same_dim(a.dim(), b.dim())?;
    let comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    let fro = linalg::frobenius(&comm);
    if fro == 0.0 {
        return Ok(true);
    }
    let bound = tol * (1.0 + a.norm()? * b.norm()?);
    // Frobenius bounds the operator norm from above, so a small Frobenius
    // value settles it without an eigendecomposition.
    if fro <= bound {
        return Ok(true);
    }
    Ok(linalg::operator_norm(&comm)? <= bound)
}

/// Splits `u = A + iB` with `A = (u + u*)/2`, `B = (u - u*)/(2i)`.
pub fn hermitian_parts(u: &DynamicalVariable) -> (Observable, Observable) {
    let m = &u.m;
    let adj = m.adjoint();
    let re = (m + &adj) * C64::new(0.5, 0.0);
    // (u - u*) / (2i) = -i (u - u*) / 2
    let im = (m - &adj) * C64::new(0.0, -0.5);
    (Observable::from_matrix_unchecked(re), Observable::from_matrix_unchecked(im))
}

/// Outcome of [`check_hypothesis`].
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    /// `u* u` is PSD and has a Hermitian square root.
    pub square_root_exists: bool,
    pub min_eigenvalue: f64,
    pub square_root_residual: f64,
    pub square_root: Observable,
    /// `|u* u| ~ 0` implies `|u| ~ 0`.
    pub faithful: bool,
    pub norm_star_product: f64,
    pub norm: f64,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.square_root_exists && self.faithful
    }
}

/// Checks that `u* u` is positive with a principal square root, and that the
/// involution is faithful at numerical scale.
pub fn check_hypothesis(u: &DynamicalVariable) -> Result<HypothesisReport> {
    let h = Observable::from_matrix_unchecked(u.m.adjoint() * &u.m);
    let eig = h.eigen()?;
    let n = h.dim();
    let top = eig.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let min_eigenvalue = eig.values.first().copied().unwrap_or(0.0);

    let mut root = CMatrix::zeros(n, n);
    for (k, &l) in eig.values.iter().enumerate() {
        let v = eig.vectors.column(k);
        root += (v * v.adjoint()) * C64::new(l.max(0.0).sqrt(), 0.0);
    }
    let square_root = Observable::from_matrix_unchecked(root);
    let sq = square_root.matrix() * square_root.matrix();
    let square_root_residual = linalg::frobenius(&(sq - h.matrix()));

    let square_root_exists =
        min_eigenvalue >= -tol::EIGEN * top.max(1.0) && square_root_residual <= tol::EIGEN * top.max(1.0);

    let norm = u.cstar_norm()?;
    let faithful = top > 1e-12 || norm <= 1e-6;

    Ok(HypothesisReport {
        square_root_exists,
        min_eigenvalue,
        square_root_residual,
        square_root,
        faithful,
        norm_star_product: top,
        norm,
    })
}
