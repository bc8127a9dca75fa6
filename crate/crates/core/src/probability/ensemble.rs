use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{born_distribution, BornDistribution};
use crate::algebra::Observable;
use crate::error::{Error, Result};
use crate::exec;
use crate::masa::{DeviceType, Registry};
use crate::states::{ElementaryState, QuantumState};
use crate::tol;

/// Inverse-CDF draw: first index whose cumulative probability exceeds `u`.
fn pick(cdf: &[f64], probs: &[f64], u: f64) -> usize {
    match cdf.iter().position(|&c| u < c) {
        Some(k) if probs[k] > 0.0 => k,
        // u landed on a zero-width step; take the next index with mass
        Some(k) => (k..probs.len())
            .find(|&j| probs[j] > 0.0)
            .or_else(|| (0..k).rev().find(|&j| probs[j] > 0.0))
            .unwrap_or(k),
        None => probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1),
    }
}

struct Sampler {
    dists: Vec<BornDistribution>,
    cdfs: Vec<Vec<f64>>,
}

impl Sampler {
    fn new(s: &QuantumState, registry: &Registry) -> Result<Self> {
        let dists = registry.devices().iter().map(|d| born_distribution(s, d)).collect::<Result<Vec<_>>>()?;
        let cdfs = dists.iter().map(BornDistribution::cdf).collect();
        Ok(Self { dists, cdfs })
    }

    fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [u32]) {
        for ((slot, cdf), dist) in out.iter_mut().zip(&self.cdfs).zip(&self.dists) {
            let u: f64 = rng.random();
            *slot = pick(cdf, &dist.probs, u) as u32;
        }
    }
}

/// Draws one elementary state: for each registered device type, a character
/// index from its Born distribution.
pub fn sample_elementary_state<R: Rng + ?Sized>(
    s: &QuantumState,
    registry: &Registry,
    rng: &mut R,
) -> Result<ElementaryState> {
    let sampler = Sampler::new(s, registry)?;
    let mut idx = vec![0u32; registry.len()];
    sampler.fill(rng, &mut idx);
    Ok(ElementaryState::from_indices(&registry.ids(), &idx))
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
}

impl MeanEstimate {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        let n = values.len();
        if n == 0 {
            return None;
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Some(Self { mean, stderr, n })
    }

    /// `|mean - target| <= sigmas * stderr + floor`.
    pub fn agrees_with(&self, target: f64, sigmas: f64, floor: f64) -> bool {
        (self.mean - target).abs() <= sigmas * self.stderr + floor
    }
}

/// `N` elementary states drawn from a quantum state over a registry.
///
/// Draw `i` uses ChaCha8 keyed by `seed` on stream `i`, consuming one uniform
/// `f64` per device type in registry order. Results do not depend on the
/// order in which draws are computed.
#[derive(Debug, Clone)]
pub struct EnsembleSample {
    state: QuantumState,
    ids: Vec<String>,
    seed: u64,
    draws: Vec<u32>,
}

impl EnsembleSample {
    pub fn generate(state: &QuantumState, registry: &Registry, seed: u64, n: usize) -> Result<Self> {
        Self::generate_with(state, registry, seed, n, true)
    }

    /// Same output as [`generate`](Self::generate), computed on one thread.
    pub fn generate_sequential(
        state: &QuantumState,
        registry: &Registry,
        seed: u64,
        n: usize,
    ) -> Result<Self> {
        Self::generate_with(state, registry, seed, n, false)
    }

    fn generate_with(
        state: &QuantumState,
        registry: &Registry,
        seed: u64,
        n: usize,
        parallel: bool,
    ) -> Result<Self> {
        let sampler = Sampler::new(state, registry)?;
        let width = registry.len();
        let base = ChaCha8Rng::seed_from_u64(seed);
        let one = |i: usize, row: &mut [u32]| {
            let mut rng = base.clone();
            rng.set_stream(i as u64);
            sampler.fill(&mut rng, row);
        };
        let mut draws = vec![0u32; n * width];
        if parallel {
            exec::for_each_chunk(&mut draws, width, one);
        } else {
            exec::for_each_chunk_sequential(&mut draws, width, one);
        }
        Ok(Self { state: state.clone(), ids: registry.ids(), seed, draws })
    }

    pub fn len(&self) -> usize {
        if self.ids.is_empty() {
            0
        } else {
            self.draws.len() / self.ids.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn state(&self) -> &QuantumState {
        &self.state
    }

    pub fn device_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn draw(&self, i: usize) -> ElementaryState {
        let w = self.ids.len();
        ElementaryState::from_indices(&self.ids, &self.draws[i * w..(i + 1) * w])
    }

    /// Character indices drawn for one device type, in draw order.
    pub fn column(&self, device: &str) -> Result<Vec<usize>> {
        let j = self
            .ids
            .iter()
            .position(|id| id == device)
            .ok_or_else(|| Error::UnknownDeviceType(device.to_string()))?;
        let w = self.ids.len();
        Ok(self.draws.iter().skip(j).step_by(w).map(|&k| k as usize).collect())
    }

    /// Values `evaluate(draw[device], a)` for every draw.
    pub fn values(&self, device: &DeviceType, a: &Observable) -> Result<Vec<f64>> {
        let table = device.character_values(a)?;
        Ok(self.column(device.id())?.into_iter().map(|k| table[k]).collect())
    }

    pub fn mean(&self, device: &DeviceType, a: &Observable) -> Result<MeanEstimate> {
        let values = self.values(device, a)?;
        MeanEstimate::from_values(&values).ok_or(Error::Empty("ensemble"))
    }

    /// CSV with header `draw,xi,character_index`, one row per draw and device type.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["draw", "xi", "character_index"])?;
        let width = self.ids.len();
        for (i, row) in self.draws.chunks(width.max(1)).enumerate() {
            for (id, k) in self.ids.iter().zip(row) {
                out.write_record([i.to_string(), id.clone(), k.to_string()])?;
            }
        }
        out.flush().map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }
}

pub fn ensemble_mean(samples: &EnsembleSample, device: &DeviceType, a: &Observable) -> Result<MeanEstimate> {
    samples.mean(device, a)
}

/// Distribution of one observable's value as seen through two device types.
#[derive(Debug, Clone, Serialize)]
pub struct MarginalReport {
    pub devices: [String; 2],
    /// Distinct outcome values, ascending.
    pub values: Vec<f64>,
    pub analytic: [Vec<f64>; 2],
    /// Largest gap between the two cumulative distributions.
    pub analytic_cdf_gap: f64,
    pub empirical: [Vec<f64>; 2],
    /// Largest `|f1 - f2|` in units of the combined standard error.
    pub empirical_max_z: f64,
    pub n: usize,
    pub seed: u64,
    pub analytic_pass: bool,
    pub empirical_pass: bool,
}

impl MarginalReport {
    pub fn passed(&self) -> bool {
        self.analytic_pass && self.empirical_pass
    }
}

/// Compares the distribution of `a` under two device types that both contain
/// it: exactly from the Born probabilities, and empirically from `n` draws.
pub fn check_marginal_agreement(
    s: &QuantumState,
    a: &Observable,
    first: &DeviceType,
    second: &DeviceType,
    n: usize,
    seed: u64,
) -> Result<MarginalReport> {
    let vals = [first.character_values(a)?, second.character_values(a)?];
    let born = [born_distribution(s, first)?, born_distribution(s, second)?];

    // Cluster outcome values shared by both devices.
    let mut tagged: Vec<(f64, usize, usize)> = Vec::new();
    for (side, v) in vals.iter().enumerate() {
        tagged.extend(v.iter().enumerate().map(|(k, &x)| (x, side, k)));
    }
    tagged.sort_by(|x, y| x.0.total_cmp(&y.0));
    let scale = tagged.iter().map(|t| t.0.abs()).fold(0.0, f64::max);
    let cluster_tol = tol::scaled(tol::EIGEN, scale);
    let mut values: Vec<f64> = Vec::new();
    let mut cluster_of = [vec![0usize; vals[0].len()], vec![0usize; vals[1].len()]];
    let mut prev = f64::NEG_INFINITY;
    for &(x, side, k) in &tagged {
        if values.is_empty() || x - prev > cluster_tol {
            values.push(x);
        }
        prev = x;
        cluster_of[side][k] = values.len() - 1;
    }
    let m = values.len();

    let mut analytic = [vec![0.0; m], vec![0.0; m]];
    for side in 0..2 {
        for (k, &p) in born[side].probs.iter().enumerate() {
            analytic[side][cluster_of[side][k]] += p;
        }
    }
    let mut gap: f64 = 0.0;
    let (mut c0, mut c1) = (0.0, 0.0);
    for (a0, a1) in analytic[0].iter().zip(&analytic[1]) {
        c0 += a0;
        c1 += a1;
        gap = gap.max((c0 - c1).abs());
    }

    let same = first.id() == second.id();
    let registry = if same {
        Registry::new(vec![first.clone()])?
    } else {
        Registry::new(vec![first.clone(), second.clone()])?
    };
    let sample = EnsembleSample::generate(s, &registry, seed, n)?;
    let cols = [sample.column(first.id())?, sample.column(second.id())?];
    let mut empirical = [vec![0.0; m], vec![0.0; m]];
    for side in 0..2 {
        for &k in &cols[side] {
            empirical[side][cluster_of[side][k]] += 1.0;
        }
        for f in &mut empirical[side] {
            *f /= n.max(1) as f64;
        }
    }
    let nf = n.max(1) as f64;
    let mut max_z: f64 = 0.0;
    for (&f0, &f1) in empirical[0].iter().zip(&empirical[1]) {
        let se = (f0 * (1.0 - f0) / nf + f1 * (1.0 - f1) / nf).sqrt();
        let diff = (f0 - f1).abs();
        let z = if diff == 0.0 {
            0.0
        } else if se == 0.0 {
            f64::INFINITY
        } else {
            diff / se
        };
        max_z = max_z.max(z);
    }

    Ok(MarginalReport {
        devices: [first.id().to_string(), second.id().to_string()],
        values,
        analytic,
        analytic_cdf_gap: gap,
        empirical,
        empirical_max_z: max_z,
        n,
        seed,
        analytic_pass: gap <= 1e-12,
        empirical_pass: max_z <= 3.0,
    })
}
