//! Device types as maximal abelian subalgebras of `M_n(C)`, and their characters.
//!
//! A maximal abelian subalgebra of `M_n(C)` is the span of `n` mutually
//! orthogonal rank-one projectors, so a device type is stored as an
//! orthonormal basis. The `k`-th character sends every contained observable
//! `A = sum_j c_j P_j` to `c_k`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{commutes, Observable, Projector};
use crate::error::{Error, Result};
use crate::json::MatrixJson;
use crate::linalg::{self, CMatrix, CVector, HermitianEigen};
use crate::random;
use crate::tol;
use crate::C64;

/// Pairwise commuting observables of a common dimension.
#[derive(Debug, Clone)]
pub struct CommutingFamily {
    members: Vec<Observable>,
    tol: f64,
}

impl CommutingFamily {
    pub fn new(members: Vec<Observable>, tol: f64) -> Result<Self> {
        let first = members.first().ok_or(Error::Empty("commuting family"))?;
        let n = first.dim();
        for m in &members {
            if m.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
            }
        }
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                if !commutes(&members[i], &members[j], tol)? {
                    return Err(Error::NotCommuting(i, j));
                }
            }
        }
        Ok(Self { members, tol })
    }

    pub fn members(&self) -> &[Observable] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// One joint outcome of a device type: the index of a rank-one projector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub device: String,
    pub index: usize,
}

/// A maximal abelian subalgebra, given by its joint eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceType {
    id: String,
    basis: CMatrix,
    projectors: Vec<Projector>,
}

impl DeviceType {
    /// Device type spanned by the columns of a unitary matrix.
    pub fn from_basis(id: impl Into<String>, basis: CMatrix) -> Result<Self> {
        let n = basis.nrows();
        if n == 0 || basis.ncols() != n {
            return Err(Error::InvalidShape("basis must be a square non-empty matrix".into()));
        }
        let defect = linalg::frobenius(&(basis.adjoint() * &basis - CMatrix::identity(n, n)));
        if defect > tol::RESOLUTION {
            return Err(Error::InvalidDeviceType(format!("basis is not orthonormal (defect {defect:.3e})")));
        }
        let mut basis = basis;
        for k in 0..n {
            let mut v = basis.column(k).into_owned();
            linalg::fix_phase(&mut v);
            basis.set_column(k, &v);
        }
        let projectors = (0..n)
            .map(|k| {
                let v = basis.column(k);
                Projector::from_matrix_unchecked(v * v.adjoint())
            })
            .collect();
        Ok(Self { id: id.into(), basis, projectors })
    }

    /// Device type from `n` rank-one projectors resolving the identity.
    pub fn from_projectors(id: impl Into<String>, projectors: Vec<Projector>) -> Result<Self> {
        let id = id.into();
        let n = projectors.first().ok_or(Error::Empty("projector list"))?.dim();
        if projectors.len() != n {
            return Err(Error::InvalidDeviceType(format!(
                "`{id}`: need {n} rank-one projectors, got {}",
                projectors.len()
            )));
        }
        let mut basis = CMatrix::zeros(n, n);
        for (k, p) in projectors.iter().enumerate() {
            if p.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
            }
            if (p.matrix().trace().re - 1.0).abs() > tol::RESOLUTION {
                return Err(Error::InvalidDeviceType(format!("`{id}`: projector {k} is not rank one")));
            }
            let m = p.matrix();
            let col = (0..n).max_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re)).unwrap();
            let v: CVector = m.column(col) / C64::new(m[(col, col)].re.sqrt(), 0.0);
            basis.set_column(k, &v);
        }
        let sum: CMatrix = projectors.iter().map(|p| p.matrix()).sum();
        let defect = linalg::frobenius(&(sum - CMatrix::identity(n, n)));
        if defect > tol::RESOLUTION {
            return Err(Error::InvalidDeviceType(format!(
                "`{id}`: projectors do not resolve the identity ({defect:.3e})"
            )));
        }
        Self::from_basis(id, basis)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    /// Joint eigenvectors as columns.
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn characters(&self) -> Vec<Character> {
        characters_of(self)
    }

    pub fn character(&self, index: usize) -> Option<Character> {
        (index < self.dim()).then(|| Character { device: self.id.clone(), index })
    }

    /// Coefficients `c_k = trace(P_k A) / trace(P_k)` and the Frobenius
    /// residual `|A - sum_k c_k P_k|`.
    pub fn decompose(&self, a: &Observable) -> Result<(Vec<f64>, f64)> {
        let n = self.dim();
        if a.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.dim() });
        }
        let coeffs: Vec<f64> = (0..n)
            .map(|k| {
                let (num, den) = linalg::rayleigh_parts(&self.basis.column(k).into_owned(), a.matrix());
                num.re / den
            })
            .collect();
        let recon = self.span_element(&coeffs);
        Ok((coeffs, linalg::frobenius(&(a.matrix() - recon.matrix()))))
    }

    /// `sum_k values[k] P_k`.
    pub fn span_element(&self, values: &[f64]) -> Observable {
        random::observable_in_basis(&self.basis, values)
    }

    pub fn contains(&self, a: &Observable) -> Result<bool> {
        let (coeffs, residual) = self.decompose(a)?;
        Ok(residual <= contain_tol(&coeffs))
    }

    /// Values of every character on `a`, in index order.
    pub fn character_values(&self, a: &Observable) -> Result<Vec<f64>> {
        let (coeffs, residual) = self.decompose(a)?;
        if residual > contain_tol(&coeffs) {
            return Err(Error::NotInSubalgebra(self.id.clone()));
        }
        Ok(coeffs)
    }

    pub fn evaluate(&self, ch: &Character, a: &Observable) -> Result<f64> {
        if ch.device != self.id || ch.index >= self.dim() {
            return Err(Error::UnknownDeviceType(ch.device.clone()));
        }
        Ok(self.character_values(a)?[ch.index])
    }
}

fn contain_tol(coeffs: &[f64]) -> f64 {
    let scale = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
    tol::scaled(tol::EIGEN, scale)
}

/// Builds a device type containing every member of the family.
///
/// Joint eigenspaces are found by successive refinement; any eigenspace that
/// is still degenerate afterwards is split by diagonalizing a random
/// Hermitian matrix drawn from `seed`.
pub fn masa_from_family(id: impl Into<String>, family: &CommutingFamily, seed: u64) -> Result<DeviceType> {
    let n = family.dim();
    let mut blocks = vec![CMatrix::identity(n, n)];
    for a in family.members() {
        let cluster_tol = tol::scaled(tol::EIGEN, a.norm()?);
        let mut next = Vec::with_capacity(blocks.len());
        for v in blocks {
            if v.ncols() == 1 {
                next.push(v);
                continue;
            }
            let restricted = v.adjoint() * a.matrix() * &v;
            let eig = HermitianEigen::new(&restricted)?;
            for cluster in eig.clusters(cluster_tol) {
                let w = eig.vectors.select_columns(&cluster);
                next.push(&v * w);
            }
        }
        blocks = next;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = CMatrix::zeros(n, n);
    let mut col = 0;
    for v in blocks {
        let m = v.ncols();
        let vectors = if m == 1 {
            v
        } else {
            let r = random::hermitian(m, &mut rng);
            let eig = HermitianEigen::new(r.matrix())?;
            &v * eig.vectors
        };
        for k in 0..m {
            basis.set_column(col, &vectors.column(k));
            col += 1;
        }
    }
    DeviceType::from_basis(id, basis)
}

pub fn contains(d: &DeviceType, a: &Observable) -> Result<bool> {
    d.contains(a)
}

pub fn characters_of(d: &DeviceType) -> Vec<Character> {
    (0..d.dim()).map(|index| Character { device: d.id.clone(), index }).collect()
}

pub fn evaluate(d: &DeviceType, ch: &Character, a: &Observable) -> Result<f64> {
    d.evaluate(ch, a)
}

#[derive(Serialize, Deserialize)]
struct DeviceTypeJson {
    id: String,
    projectors: Vec<MatrixJson>,
}

impl Serialize for DeviceType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DeviceTypeJson {
            id: self.id.clone(),
            projectors: self.projectors.iter().map(|p| MatrixJson::from_matrix(p.matrix())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DeviceType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DeviceTypeJson::deserialize(d)?;
        let projectors = j
            .projectors
            .iter()
            .map(MatrixJson::to_projector)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        DeviceType::from_projectors(j.id, projectors).map_err(serde::de::Error::custom)
    }
}

/// A finite set of device types over a common dimension, in registration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Registry {
    devices: Vec<DeviceType>,
}

impl Registry {
    pub fn new(devices: Vec<DeviceType>) -> Result<Self> {
        let n = devices.first().ok_or(Error::Empty("registry"))?.dim();
        for (i, d) in devices.iter().enumerate() {
            if d.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: d.dim() });
            }
            if devices[..i].iter().any(|o| o.id == d.id) {
                return Err(Error::DuplicateDeviceType(d.id.clone()));
            }
        }
        Ok(Self { devices })
    }

    pub fn dim(&self) -> usize {
        self.devices[0].dim()
    }

    pub fn len(&self) -> usize {
        self.devices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.devices.is_empty()
    }

    pub fn devices(&self) -> &[DeviceType] {
        &self.devices
    }

    pub fn ids(&self) -> Vec<String> {
        self.devices.iter().map(|d| d.id.clone()).collect()
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.devices.iter().position(|d| d.id == id).ok_or_else(|| Error::UnknownDeviceType(id.to_string()))
    }

    pub fn get(&self, id: &str) -> Result<&DeviceType> {
        Ok(&self.devices[self.position(id)?])
    }

    /// Device types whose subalgebra contains `a`.
    pub fn containing(&self, a: &Observable) -> Result<Vec<&DeviceType>> {
        let mut out = Vec::new();
        for d in &self.devices {
            if d.contains(a)? {
                out.push(d);
            }
        }
        Ok(out)
    }
}

impl<'de> Deserialize<'de> for Registry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let devices = Vec::<DeviceType>::deserialize(d)?;
        Registry::new(devices).map_err(serde::de::Error::custom)
    }
}
