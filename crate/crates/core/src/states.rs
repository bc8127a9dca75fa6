//! Elementary states, their equivalence classes, and quantum states as
//! positive normalized functionals `A -> trace(rho A)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{hermitian_parts, DynamicalVariable, Observable};
use crate::error::{Error, Result};
use crate::json::MatrixJson;
use crate::linalg::{self, CMatrix, CVector, HermitianEigen};
use crate::masa::{Character, Registry};
use crate::tol;
use crate::C64;

/// One character per registered device type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryState {
    assignment: BTreeMap<String, usize>,
}

impl ElementaryState {
    pub fn new(registry: &Registry, assignment: BTreeMap<String, usize>) -> Result<Self> {
        for d in registry.devices() {
            match assignment.get(d.id()) {
                None => {
                    return Err(Error::InvalidElementaryState(format!(
                        "device type `{}` is not assigned",
                        d.id()
                    )))
                }
                Some(&k) if k >= d.dim() => {
                    return Err(Error::InvalidElementaryState(format!(
                        "character {k} out of range for `{}`",
                        d.id()
                    )))
                }
                _ => {}
            }
        }
        if let Some(extra) = assignment.keys().find(|id| registry.position(id).is_err()) {
            return Err(Error::UnknownDeviceType(extra.clone()));
        }
        Ok(Self { assignment })
    }

    pub(crate) fn from_indices(ids: &[String], indices: &[u32]) -> Self {
        let assignment = ids.iter().zip(indices).map(|(id, &k)| (id.clone(), k as usize)).collect();
        Self { assignment }
    }

    pub fn assignment(&self) -> &BTreeMap<String, usize> {
        &self.assignment
    }

    pub fn character(&self, device: &str) -> Option<Character> {
        self.assignment.get(device).map(|&index| Character { device: device.to_string(), index })
    }
}

/// Stability: the values assigned to `a` agree across every registered device
/// type containing it. Vacuously true with fewer than two such device types.
pub fn is_stable(e: &ElementaryState, a: &Observable, registry: &Registry) -> bool {
    let mut values = Vec::new();
    for d in registry.devices() {
        let Ok(vals) = d.character_values(a) else {
            continue;
        };
        if let Some(&k) = e.assignment.get(d.id()) {
            if let Some(&v) = vals.get(k) {
                values.push(v);
            }
        }
    }
    let scale = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let tol = tol::scaled(tol::EIGEN, scale);
    let (lo, hi) =
        values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    values.len() < 2 || hi - lo <= tol
}

/// The set of elementary states sharing one character of one device type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquivalenceClass {
    pub device: String,
    pub character: Character,
}

pub fn equivalence_class(e: &ElementaryState, device: &str) -> Result<EquivalenceClass> {
    let character = e.character(device).ok_or_else(|| Error::UnknownDeviceType(device.to_string()))?;
    Ok(EquivalenceClass { device: device.to_string(), character })
}

/// Density matrix with unit trace and non-negative spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    rho: CMatrix,
}

impl QuantumState {
    pub fn new(rho: CMatrix) -> Result<Self> {
        let n = rho.nrows();
        if n == 0 || rho.ncols() != n {
            return Err(Error::InvalidShape("density matrix must be square and non-empty".into()));
        }
        let deviation = linalg::max_abs(&(&rho - rho.adjoint()));
        let scale = linalg::frobenius(&rho).max(1.0);
        if deviation > tol::HERMITIAN * scale {
            return Err(Error::NotAState(format!("not Hermitian (deviation {deviation:.3e})")));
        }
        let rho = linalg::hermitize(&rho);
        let trace = rho.trace().re;
        if (trace - 1.0).abs() > tol::PROB_SUM {
            return Err(Error::NotAState(format!("trace is {trace}")));
        }
        let min = HermitianEigen::new(&rho)?.values[0];
        if min < -tol::STATE_EIG {
            return Err(Error::NotAState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self { rho })
    }

    /// `|psi><psi|` for a non-zero vector, normalized here.
    pub fn pure(psi: &CVector) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(Error::NotAState("zero vector".into()));
        }
        let v = psi / C64::new(norm, 0.0);
        Self::new(&v * v.adjoint())
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self { rho: CMatrix::identity(n, n) / C64::new(n as f64, 0.0) }
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: n });
        }
        Ok(())
    }

    /// `trace(rho A)`.
    pub fn mean(&self, a: &Observable) -> Result<f64> {
        self.check_dim(a.dim())?;
        Ok(linalg::trace_product(&self.rho, a.matrix()).re)
    }

    /// `Psi(A) + i Psi(B)` for `u = A + iB`.
    pub fn extend(&self, u: &DynamicalVariable) -> Result<C64> {
        self.check_dim(u.dim())?;
        let (a, b) = hermitian_parts(u);
        Ok(C64::new(self.mean(&a)?, self.mean(&b)?))
    }
}

pub fn quantum_mean(s: &QuantumState, a: &Observable) -> Result<f64> {
    s.mean(a)
}

pub fn extend_to_dynamical(s: &QuantumState, u: &DynamicalVariable) -> Result<C64> {
    s.extend(u)
}

/// The pure state prepared by selecting the class's character: `P_k / trace(P_k)`.
pub fn state_from_class(class: &EquivalenceClass, registry: &Registry) -> Result<QuantumState> {
    let d = registry.get(&class.device)?;
    let p = d
        .projectors()
        .get(class.character.index)
        .ok_or_else(|| Error::InvalidElementaryState(format!("no character {}", class.character.index)))?;
    let t = p.matrix().trace().re;
    QuantumState::new(p.matrix() / C64::new(t, 0.0))
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    rho: MatrixJson,
}

impl Serialize for QuantumState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateJson { rho: MatrixJson::from_matrix(&self.rho) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuantumState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = StateJson::deserialize(d)?;
        let m = j.rho.to_matrix().map_err(serde::de::Error::custom)?;
        QuantumState::new(m).map_err(serde::de::Error::custom)
    }
}
