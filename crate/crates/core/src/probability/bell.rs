//! Two parties, two dichotomic settings each: correlations, the CHSH value,
//! and whether a joint probability measure over all four observables exists.
//!
//! A joint measure is a distribution over the 16 deterministic assignments
//! `(a1, a2, b1, b2) in {-1, 1}^4`. Given `|E_ij| <= 1`, one exists iff all
//! eight CHSH facet inequalities hold.

use serde::Serialize;

use crate::algebra::{commutes, Observable};
use crate::error::{Error, Result};
use crate::states::QuantumState;
use crate::tol;

/// Slack allowed on facet and correlator bounds.
const FACET_TOL: f64 = 1e-9;

/// `sign * (E11 + E12 + E21 + E22 - 2 E_minus) <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChshFacet {
    /// Setting pair `(i, j)` carrying the minus sign, zero-based.
    pub minus: (usize, usize),
    pub sign: i8,
}

impl ChshFacet {
    pub fn all() -> [ChshFacet; 8] {
        let mut out = [ChshFacet { minus: (0, 0), sign: 1 }; 8];
        let mut k = 0;
        for sign in [1i8, -1] {
            for i in 0..2 {
                for j in 0..2 {
                    out[k] = ChshFacet { minus: (i, j), sign };
                    k += 1;
                }
            }
        }
        out
    }

    pub fn value(&self, e: &[[f64; 2]; 2]) -> f64 {
        let total: f64 = e.iter().flatten().sum();
        f64::from(self.sign) * (total - 2.0 * e[self.minus.0][self.minus.1])
    }

    /// Human-readable form, e.g. `E11+E12+E21-E22`.
    pub fn expression(&self) -> String {
        let mut s = String::new();
        for i in 0..2 {
            for j in 0..2 {
                let neg = ((i, j) == self.minus) == (self.sign > 0);
                if neg {
                    s.push('-');
                } else if !s.is_empty() {
                    s.push('+');
                }
                s.push_str(&format!("E{}{}", i + 1, j + 1));
            }
        }
        s
    }
}

/// The violated facet reported for an infeasible scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FacetWitness {
    pub facet: ChshFacet,
    pub expression: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible,
    Infeasible(FacetWitness),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// Correlators `E_ij = <A_i B_j>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioCorrelations {
    e: [[f64; 2]; 2],
}

impl ScenarioCorrelations {
    pub fn new(e: [[f64; 2]; 2]) -> Result<Self> {
        if let Some(bad) = e.iter().flatten().find(|x| !x.is_finite() || x.abs() > 1.0 + FACET_TOL) {
            return Err(Error::InvalidCorrelations(format!("|E| = {bad} exceeds 1")));
        }
        Ok(Self { e })
    }

    /// Correlations of `settings = [A1, A2, B1, B2]` in state `s`.
    pub fn from_state(s: &QuantumState, settings: &[Observable; 4]) -> Result<Self> {
        for o in settings {
            if !is_dichotomic(o)? {
                return Err(Error::NotDichotomic);
            }
        }
        let mut e = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let (a, b) = (&settings[i], &settings[2 + j]);
                if !commutes(a, b, tol::EIGEN)? {
                    return Err(Error::NotCommuting(i, 2 + j));
                }
                e[i][j] = s.mean(&a.compatible_product(b)?)?;
            }
        }
        Self::new(e)
    }

    /// Correlations of a mixture of deterministic assignments. `weights[v]`
    /// belongs to the assignment whose bits `(a1, a2, b1, b2)` are those of
    /// `v` (bit set means `-1`, `a1` is the high bit).
    pub fn from_local_model(weights: &[f64; 16]) -> Result<Self> {
        let mut e = [[0.0; 2]; 2];
        for (v, w) in weights.iter().enumerate() {
            let a = deterministic_vertex(v);
            for i in 0..2 {
                for j in 0..2 {
                    e[i][j] += w * a[i][j];
                }
            }
        }
        Self::new(e)
    }

    pub fn e(&self) -> [[f64; 2]; 2] {
        self.e
    }

    /// `E11 + E12 + E21 - E22`.
    pub fn chsh(&self) -> f64 {
        self.e[0][0] + self.e[0][1] + self.e[1][0] - self.e[1][1]
    }

    /// Largest facet value and the facet attaining it.
    pub fn max_facet(&self) -> (ChshFacet, f64) {
        ChshFacet::all().into_iter().map(|f| (f, f.value(&self.e))).fold(
            (ChshFacet { minus: (1, 1), sign: 1 }, f64::NEG_INFINITY),
            |best, x| {
                if x.1 > best.1 {
                    x
                } else {
                    best
                }
            },
        )
    }
}

/// Correlator table `a_i * b_j` of deterministic assignment `v` (see
/// [`ScenarioCorrelations::from_local_model`]).
pub fn deterministic_vertex(v: usize) -> [[f64; 2]; 2] {
    let bit = |k: usize| if v >> (3 - k) & 1 == 1 { -1.0 } else { 1.0 };
    let (a, b) = ([bit(0), bit(1)], [bit(2), bit(3)]);
    [[a[0] * b[0], a[0] * b[1]], [a[1] * b[0], a[1] * b[1]]]
}

/// Spectrum within `{-1, 1}`.
pub fn is_dichotomic(a: &Observable) -> Result<bool> {
    Ok(a.spectrum()?.iter().all(|l| (l.abs() - 1.0).abs() <= tol::EIGEN))
}

pub fn chsh_value(
    s: &QuantumState,
    a1: &Observable,
    a2: &Observable,
    b1: &Observable,
    b2: &Observable,
) -> Result<f64> {
    let settings = [a1.clone(), a2.clone(), b1.clone(), b2.clone()];
    Ok(ScenarioCorrelations::from_state(s, &settings)?.chsh())
}

pub fn joint_measure_feasibility(c: &ScenarioCorrelations) -> Feasibility {
    let (facet, value) = c.max_facet();
    if value <= 2.0 + FACET_TOL {
        Feasibility::Feasible
    } else {
        Feasibility::Infeasible(FacetWitness { facet, expression: facet.expression(), value })
    }
}

/// The correlations report written by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    #[serde(rename = "E")]
    pub e: [[f64; 2]; 2],
    pub chsh: f64,
    pub joint_measure: &'static str,
    pub witness: Option<FacetWitness>,
}

impl CorrelationReport {
    pub fn new(c: &ScenarioCorrelations) -> Self {
        let feas = joint_measure_feasibility(c);
        let (joint_measure, witness) = match feas {
            Feasibility::Feasible => ("feasible", None),
            Feasibility::Infeasible(w) => ("infeasible", Some(w)),
        };
        Self { e: c.e(), chsh: c.chsh(), joint_measure, witness }
    }
}
