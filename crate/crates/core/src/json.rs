//! Matrix JSON: `{"dim": n, "re": [[..]], "im": [[..]]}` with rows in order.
//!
//! An optional `"hermitian": true` flag makes the decoder reject matrices that
//! fail the Hermiticity test. Decoding into [`Observable`] always enforces it.

use serde::{Deserialize, Serialize};

use crate::algebra::{DynamicalVariable, Observable, Projector};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<bool>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        let re = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect();
        let im = (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect();
        Self { dim: n, re, im: Some(im), hermitian: None }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.dim;
        check_rows(&self.re, n, "re")?;
        if let Some(im) = &self.im {
            check_rows(im, n, "im")?;
        }
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let im = self.im.as_ref().map_or(0.0, |im| im[i][j]);
                m[(i, j)] = C64::new(self.re[i][j], im);
            }
        }
        Ok(m)
    }

    pub fn to_dynamical(&self) -> Result<DynamicalVariable> {
        let u = DynamicalVariable::new(self.to_matrix()?)?;
        if self.hermitian == Some(true) {
            Observable::new(u.clone())?;
        }
        Ok(u)
    }

    pub fn to_observable(&self) -> Result<Observable> {
        Observable::new(DynamicalVariable::new(self.to_matrix()?)?)
    }

    pub fn to_projector(&self) -> Result<Projector> {
        Projector::new(self.to_observable()?)
    }
}

fn check_rows(rows: &[Vec<f64>], n: usize, what: &str) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidShape(format!("`{what}` must be {n}x{n}")));
    }
    Ok(())
}

impl Serialize for DynamicalVariable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(self.matrix()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DynamicalVariable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixJson::deserialize(d)?.to_dynamical().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Observable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut j = MatrixJson::from_matrix(self.matrix());
        j.hermitian = Some(true);
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Observable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixJson::deserialize(d)?.to_observable().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Projector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.observable().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Projector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixJson::deserialize(d)?.to_projector().map_err(serde::de::Error::custom)
    }
}
