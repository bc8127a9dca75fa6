//! Classical probability over elementary states.
//!
//! Each device type carries its own Born distribution over characters.
//! Ensembles draw one character per device type, independently across device
//! types; only the per-device marginals are constrained, so this is one
//! admissible coupling among many.

mod bell;
mod ensemble;

pub use bell::{
    chsh_value, deterministic_vertex, is_dichotomic, joint_measure_feasibility, ChshFacet, CorrelationReport,
    FacetWitness, Feasibility, ScenarioCorrelations,
};
pub use ensemble::{
    check_marginal_agreement, ensemble_mean, sample_elementary_state, EnsembleSample, MarginalReport,
    MeanEstimate,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::masa::DeviceType;
use crate::states::QuantumState;
use crate::tol;

/// Outcome probabilities `trace(rho P_k)` for one device type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BornDistribution {
    pub device: String,
    pub probs: Vec<f64>,
}

impl BornDistribution {
    /// Cumulative sums, with the last entry pinned to one.
    pub(crate) fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out: Vec<f64> = self
            .probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        if let Some(last) = out.last_mut() {
            *last = 1.0;
        }
        out
    }
}

pub fn born_distribution(s: &QuantumState, d: &DeviceType) -> Result<BornDistribution> {
    if s.dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), found: s.dim() });
    }
    let mut probs = Vec::with_capacity(d.dim());
    for k in 0..d.dim() {
        let (num, den) = linalg::rayleigh_parts(&d.basis().column(k).into_owned(), s.rho());
        let p = num.re / den;
        if p < -tol::PROB_CLIP {
            return Err(Error::NotAState(format!("negative probability {p:.3e}")));
        }
        probs.push(p.max(0.0));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > tol::PROB_SUM {
        return Err(Error::NotAState(format!("probabilities sum to {sum}")));
    }
    if sum != 1.0 {
        for p in &mut probs {
            *p /= sum;
        }
    }
    Ok(BornDistribution { device: d.id().to_string(), probs })
}
