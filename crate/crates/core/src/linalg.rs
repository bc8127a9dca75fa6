//! Dense complex helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::C64;

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;
/// Eigenvalues closer than this many ulps of the spectral radius count as tied.
const TIE_ULPS: f64 = 64.0;

/// Sorted Hermitian eigendecomposition.
///
/// Eigenvalues ascend. Each eigenvector has its first non-negligible component
/// rotated to be real positive, and eigenvectors of numerically tied
/// eigenvalues are ordered lexicographically.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(h: &CMatrix) -> Result<Self> {
        let n = h.nrows();
        if n != h.ncols() {
            return Err(Error::InvalidShape(format!("{}x{} is not square", n, h.ncols())));
        }
        let sym = hermitize(h);
        let eig = sym.try_symmetric_eigen(EIGEN_EPS, EIGEN_MAX_ITER).ok_or(Error::EigenFailure(n))?;

        let mut cols: Vec<(f64, CVector)> = (0..n)
            .map(|k| {
                let mut v = eig.eigenvectors.column(k).into_owned();
                fix_phase(&mut v);
                (eig.eigenvalues[k], v)
            })
            .collect();
        cols.sort_by(|a, b| a.0.total_cmp(&b.0));

        // Numerically degenerate eigenvalues: reorder their eigenvectors
        // canonically, keeping the values themselves ascending.
        let scale = cols.iter().map(|c| c.0.abs()).fold(0.0, f64::max);
        let tie = TIE_ULPS * f64::EPSILON * scale;
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && cols[end].0 - cols[end - 1].0 <= tie {
                end += 1;
            }
            if end - start > 1 {
                let values: Vec<f64> = cols[start..end].iter().map(|c| c.0).collect();
                cols[start..end].sort_by(|a, b| lex_cmp(&a.1, &b.1));
                for (c, v) in cols[start..end].iter_mut().zip(values) {
                    c.0 = v;
                }
            }
            start = end;
        }

        let values = cols.iter().map(|c| c.0).collect();
        let mut vectors = CMatrix::zeros(n, n);
        for (k, (_, v)) in cols.iter().enumerate() {
            vectors.set_column(k, v);
        }
        Ok(Self { values, vectors })
    }

    /// Groups of indices whose eigenvalues agree within `tol`.
    pub fn clusters(&self, tol: f64) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (k, &v) in self.values.iter().enumerate() {
            match out.last_mut() {
                Some(last) if v - self.values[*last.last().unwrap()] <= tol => last.push(k),
                _ => out.push(vec![k]),
            }
        }
        out
    }
}

fn lex_cmp(a: &CVector, b: &CVector) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let ord = y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Rotates `v` so that its first component with modulus above 1e-12 is real positive.
pub fn fix_phase(v: &mut CVector) {
    if let Some(c) = v.iter().copied().find(|c| c.norm() > 1e-12) {
        let phase = c.conj() / c.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

/// `(h + h*) / 2`, which is exactly Hermitian entrywise.
pub fn hermitize(h: &CMatrix) -> CMatrix {
    let n = h.nrows();
    let mut out = h.clone();
    for i in 0..n {
        out[(i, i)] = C64::new(h[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    out
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest modulus of an eigenvalue of a Hermitian matrix.
pub fn hermitian_norm(h: &CMatrix) -> Result<f64> {
    let e = HermitianEigen::new(h)?;
    Ok(e.values.iter().map(|v| v.abs()).fold(0.0, f64::max))
}

/// Operator (spectral) norm: square root of the largest eigenvalue of `u* u`.
pub fn operator_norm(u: &CMatrix) -> Result<f64> {
    let gram = u.adjoint() * u;
    let top = HermitianEigen::new(&gram)?.values.last().copied().unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}

/// `trace(a b)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// `v* m v` and `v* v`, accumulated in the same order so that `m = I`
/// yields a ratio of exactly one.
pub fn rayleigh_parts(v: &CVector, m: &CMatrix) -> (C64, f64) {
    let n = v.len();
    let mut num = C64::new(0.0, 0.0);
    let mut den = 0.0;
    for i in 0..n {
        let mut mv = C64::new(0.0, 0.0);
        for j in 0..n {
            mv += m[(i, j)] * v[j];
        }
        num += v[i].conj() * mv;
        den += (v[i].conj() * v[i]).re;
    }
    (num, den)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Numerical rank of a Hermitian PSD matrix, relative to its largest eigenvalue.
pub fn psd_rank(h: &CMatrix, rel_cutoff: f64) -> Result<usize> {
    let e = HermitianEigen::new(h)?;
    let top = e.values.last().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return Ok(0);
    }
    Ok(e.values.iter().filter(|&&v| v > rel_cutoff * top).count())
}
